"""Verification suites behind ``springer-lab verify``.

Each suite produces a SuiteReport.  Per-prime work is split into jobs that
may run in a process pool; results are assembled in prime order so the
report does not depend on scheduling.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Callable, Sequence

from . import bs, flags_a, flags_d, gf, pointcount, weyl
from .combinat import (
    enumerate_two_column_tableaux,
    second_column_labels,
    two_column_domino_check,
)
from .report import Check, SuiteReport, Timer, check, finding

ANCHORS = {
    "coro-comp": "components are the closures of X⁰: dim(Im N ∩ V_i) = k for i in [p_k, p_{k+1})",
    "descrip": "U_i = V_i ∩ N(U_{i-1}^⊥) is the unique maximal flag with U_i ⊆ N(U_i^⊥); dim U_i = #({p_1..p_r} ∩ [1, i])",
    "fibration": "X̂ → flags of Im N is a locally trivial fibration with Schubert fiber F_w",
    "birational": "X̂ → X is birational: deg(|X̂| - |X⁰|) < deg |X̂|, dim X⁰ = dim F_N",
    "vertical-tiles": "admissible two-column domino tableaux contain only vertical tiles",
    "subword": "Bott–Samelson towers are P¹-bundles; a reduced word of v ends with a reduced word of w",
}

SUITE_TYPES = {
    "coro-comp": ("A", "D"),
    "descrip": ("D",),
    "fibration": ("A", "D"),
    "birational": ("A", "D"),
    "vertical-tiles": ("D",),
    "subword": ("A",),
}


class SuiteUsageError(ValueError):
    pass


def _map(fn: Callable, args: Sequence, jobs: int) -> list:
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, args))
    return [fn(a) for a in args]


def _witness_flag(f) -> list:
    return f.to_json()


# ---------------------------------------------------------------------------
# coro-comp


def _coro_comp_a(args) -> list[Check]:
    n, r, p = args
    N = flags_a.make_nilpotent(n, r, p)
    tabs = enumerate_two_column_tableaux(n, r)
    counts: Counter = Counter()
    mismatch = None
    total = 0
    for f in flags_a.enumerate_fiber(N):
        total += 1
        jt = flags_a.jump_tableau(N, f)
        st = flags_a.spaltenstein_tableau(N, f)
        if st != jt and mismatch is None:
            mismatch = {"flag": _witness_flag(f), "spaltenstein": st.to_json(), "jump": jt.to_json()}
        counts[jt] += 1
    structural = flags_a.structural_class_counts(N)
    class_counts = {str(i): counts[t] for i, t in enumerate(tabs)}
    return [
        check(f"p={p}: classes partition the fiber", sum(counts.values()) == total and set(counts) <= set(tabs),
              fiber_count=total, class_counts=class_counts),
        check(f"p={p}: spaltenstein tableau equals jump tableau", mismatch is None, witness=mismatch),
        check(f"p={p}: orbit counts agree with enumeration", all(structural[t] == counts[t] for t in tabs),
              orbit_counts={str(i): structural[t] for i, t in enumerate(tabs)}),
        finding(f"p={p}: every class is nonempty", nonempty=all(counts[t] > 0 for t in tabs)),
    ]


def _coro_comp_d(args) -> list[Check]:
    n, r, p = args
    _, N = flags_d.make_orth_nilpotent(n, r, p)
    tabs = flags_d.admissible_tableaux_d(N)
    counts: Counter = Counter()
    bad = None
    total = 0
    for f in flags_d.enumerate_fiber_d(N):
        total += 1
        t = flags_d.domino_tableau_of_flag(N, f)
        if (t not in tabs or t != flags_d.jump_domino_tableau(N, f)) and bad is None:
            bad = {"flag": _witness_flag(f), "tableau": t.to_json()}
        counts[t] += 1
    return [
        check(f"p={p}: admissible domino classes partition the fiber",
              bad is None and sum(counts.values()) == total,
              fiber_count=total, class_counts={str(i): counts[t] for i, t in enumerate(tabs)}, witness=bad),
        finding(f"p={p}: every class is nonempty", nonempty=all(counts[t] > 0 for t in tabs)),
    ]


# ---------------------------------------------------------------------------
# descrip (type D)


def alpha_checks(N: flags_d.NilpotentD) -> dict[str, bool]:
    """Well-definedness over every preimage, skewness and nondegeneracy of α."""
    im = list(N.im.vectors())
    ker = list(N.ker.vectors())
    p = N.p
    well_defined = True
    skew = True
    for u in im:
        for v in im:
            v0 = gf.solve(N.matrix, v)
            vals = {gf.bilinear(N.space.omega, u, tuple((a + b) % p for a, b in zip(v0, k))) for k in ker}
            well_defined &= len(vals) == 1
            skew &= (flags_d.alpha(N, u, v) + flags_d.alpha(N, v, u)) % p == 0
    form = flags_d.alpha_form(N)
    return {"well_defined": well_defined, "skew": skew and form.is_skew(), "nondegenerate": form.is_nondegenerate()}


def descrip_flag_checks(N: flags_d.NilpotentD, f: flags_d.IsotropicFlag) -> dict[str, bool]:
    us = flags_d.u_sequence(N, f)
    out = {}
    out["maximal"] = flags_d.maximal_flag_oracle(N, f) == [us]
    out["fixed_point"] = all(
        w == gf.intersect(f[i], N.image_of(N.space.perp(w)))
        for i in range(1, N.n) for w in flags_d.maximal_subspace_oracle(N, f[i])
    )
    out["alpha_isotropic"] = all(flags_d.is_alpha_isotropic(N, u) for u in us)
    out["step"] = all(us[i].dim - us[i - 1].dim in (0, 1) for i in range(1, len(us)))
    L = us[-1]
    out["lagrangian"] = L.dim == N.r and flags_d.is_alpha_isotropic(N, L)
    t = flags_d.domino_tableau_of_flag(N, f)
    out["jump_criterion"] = t == flags_d.jump_domino_tableau(N, f)
    labels = second_column_labels(t)
    out["jump_dims"] = all(us[i].dim == sum(1 for q in labels if q <= i) for i in range(len(us)))
    acc = N.space.zero
    sums = [acc]
    for i in range(1, N.n):
        acc = gf.subspace_sum(acc, gf.intersect(f[i], N.image_of(N.space.perp(f[i]))))
        sums.append(acc)
    out["sum_formula"] = sums == us
    out["y_equality"] = flags_d.y_membership_d(N, f, L, t) and all(
        gf.intersect(L, f[q]).dim == k for k, q in enumerate(labels, 1)
    )
    return out


def _descrip_d(args) -> list[Check]:
    n, r, p = args
    _, N = flags_d.make_orth_nilpotent(n, r, p)
    a = alpha_checks(N)
    agg = Counter()
    total = 0
    witness = None
    for f in flags_d.enumerate_fiber_d(N):
        total += 1
        res = descrip_flag_checks(N, f)
        for k, v in res.items():
            agg[k] += v
            if not v and witness is None:
                witness = {"check": k, "flag": _witness_flag(f)}
    names = {
        "maximal": "u_sequence is the unique nested flag of maximal subspaces (brute force)",
        "fixed_point": "maximal W ⊆ V_i satisfy W = V_i ∩ N(W^⊥)",
        "alpha_isotropic": "every U_i is α-isotropic",
        "step": "dim U_i - dim U_{i-1} ∈ {0, 1}",
        "lagrangian": "U_{n-1} is α-Lagrangian",
        "jump_criterion": "U-jump tableau equals the quotient Jordan-type tableau",
        "jump_dims": "dim U_i = #({p_k} ∩ [1, i])",
        "sum_formula": "U_i = Σ_{j≤i} V_j ∩ N(V_j^⊥)",
        "y_equality": "dim(U_{n-1} ∩ V_{p_k}) = k",
    }
    out = [check(f"p={p}: α {k.replace('_', '-')}", v) for k, v in a.items()]
    for k, label in names.items():
        out.append(check(f"p={p}: {label}", agg[k] == total, flags=total, holds=agg[k],
                         witness=witness if witness and witness["check"] == k else None))
    return out


# ---------------------------------------------------------------------------
# fibration


def fibration_a(N: flags_a.NilpotentA, t) -> dict:
    groups: Counter = Counter()
    for pt in flags_a.enumerate_xhat(N, t):
        groups[pt.small_flag] += 1
    small = sum(1 for _ in flags_a.enumerate_small_flags(N))
    ref_small = tuple(flags_a.reference_flag(N)[k] for k in range(N.r + 1))
    fw = sum(1 for _ in flags_a.enumerate_schubert_w(N, t, ref_small))
    return {"xhat": sum(groups.values()), "small_flags": small, "groups": len(groups),
            "group_sizes": sorted(set(groups.values())), "fw": fw}


def fibration_d(N: flags_d.NilpotentD, t) -> dict:
    groups: Counter = Counter()
    for pt in flags_d.enumerate_xhat_d(N, t):
        groups[pt.small_flag] += 1
    small = list(flags_d.enumerate_sp_flags(N))
    fw = sum(1 for _ in flags_d.enumerate_schubert_w_d(N, t, small[0]))
    return {"xhat": sum(groups.values()), "small_flags": len(small), "groups": len(groups),
            "group_sizes": sorted(set(groups.values())), "fw": fw}


def _fibration(args) -> list[Check]:
    type_tag, n, r, p = args
    out = []
    if type_tag == "A":
        N = flags_a.make_nilpotent(n, r, p)
        tabs = enumerate_two_column_tableaux(n, r)
        data = [fibration_a(N, t) for t in tabs]
    else:
        _, N = flags_d.make_orth_nilpotent(n, r, p)
        tabs = flags_d.admissible_tableaux_d(N)
        data = [fibration_d(N, t) for t in tabs]
    for i, d in enumerate(data):
        ok = (d["groups"] == d["small_flags"] and d["group_sizes"] == [d["fw"]]
              and d["xhat"] == d["small_flags"] * d["fw"])
        out.append(check(f"p={p}: tableau {i}: |X̂| = |small flags| · |F_w|, equal groups", ok, **d))
    return out


# ---------------------------------------------------------------------------
# subword (type A)


def subword_case(N: flags_a.NilpotentA, t) -> dict:
    w, v = weyl.component_words(N, t)
    ww = weyl.reduced_word(w)
    vv = weyl.suffix_extend(ww, v)
    small = tuple(flags_a.reference_flag(N)[k] for k in range(N.r + 1))
    ref = flags_a.reference_flag(N, small)
    fw = set(flags_a.enumerate_schubert_w(N, t, small))
    bw, bv = bs.BSWord(ref, ww), bs.BSWord(ref, vv)
    pts_w = list(bs.enumerate_bs_points(bw))
    pts_v = list(bs.enumerate_bs_points(bv))
    prefix = range(1, len(vv) - len(ww) + 1)
    ends = {x.end_flag for x in pts_w}
    commutes = all(
        bs.embed_subword_point(bv, prefix, x).end_flag == x.end_flag for x in pts_w
    )
    embedded = {bs.embed_subword_point(bv, prefix, x) for x in pts_w}
    divisor_match = embedded == {x for x in pts_v if bs.in_divisor(bv, x, prefix)}
    lattice = True
    L = len(vv)
    for a, b in combinations(range(1, L + 1), 2):
        both = {x for x in pts_v if bs.in_divisor(bv, x, [a]) and bs.in_divisor(bv, x, [b])}
        union = {x for x in pts_v if bs.in_divisor(bv, x, [a, b])}
        lattice &= both == union and len(union) == (N.p + 1) ** (L - 2)
    return {
        "w": list(w.data), "v": list(v.data), "w_word": ww.to_json(), "v_word": vv.to_json(),
        "bs_counts_ok": len(pts_w) == (N.p + 1) ** len(ww) and len(pts_v) == (N.p + 1) ** len(vv),
        "image_in_fw": ends <= fw, "surjective": ends == fw,
        "commutes": commutes, "divisor_match": divisor_match, "lattice": lattice,
    }


def _subword(args) -> list[Check]:
    n, r, p = args
    N = flags_a.make_nilpotent(n, r, p)
    out = []
    for i, t in enumerate(enumerate_two_column_tableaux(n, r)):
        try:
            d = subword_case(N, t)
        except (weyl.BruhatMaximumError, weyl.SuffixExtensionError) as exc:
            out.append(check(f"p={p}: tableau {i}: words extracted and suffix-extended", False, error=str(exc)))
            continue
        words = {k: d[k] for k in ("w", "v", "w_word", "v_word")}
        out.append(check(f"p={p}: tableau {i}: words extracted and suffix-extended", True, **words))
        out.append(check(f"p={p}: tableau {i}: BS counts are (p+1)^len", d["bs_counts_ok"]))
        out.append(check(f"p={p}: tableau {i}: BS end flags lie in F_w", d["image_in_fw"]))
        out.append(check(f"p={p}: tableau {i}: subword embedding commutes with end flags",
                         d["commutes"] and d["divisor_match"]))
        out.append(check(f"p={p}: tableau {i}: D_a ∩ D_b = D_{{a,b}}", d["lattice"]))
        out.append(finding(f"p={p}: tableau {i}: BS end flags cover F_w", surjective=d["surjective"]))
    return out


# ---------------------------------------------------------------------------
# birational


def birational_checks(type_tag: str, n: int, r: int, primes: Sequence[int] | None, holdout: int | None) -> list[Check]:
    from math import comb

    if primes is None:
        bound = pointcount.degree_bound(type_tag, n)
        kwargs = {"odd_only": type_tag == "D"}
    else:
        primes = list(primes)
        if holdout is None:
            primes, holdout = primes[:-1], primes[-1]
        bound = min(pointcount.degree_bound(type_tag, n), len(primes) - 1)
        kwargs = {"primes": primes, "holdout": holdout}
    tabs = (enumerate_two_column_tableaux(n, r) if type_tag == "A"
            else flags_d.admissible_tableaux_d(flags_d.make_orth_nilpotent(n, r, 3)[1]))

    def counter(target):
        return lambda p: pointcount.count_target(type_tag, n, r, target, p)

    out = []
    try:
        fiber = pointcount.fit_series("fiber", counter(pointcount.Target("fiber")), bound, **kwargs)
    except pointcount.NonPolynomialSeriesError as exc:
        return [check("fiber count is polynomial", False, error=str(exc))]
    out.append(check("fiber: holdout prime exact", bool(fiber.holdout), **fiber.to_json()))
    if type_tag == "A":
        expected = comb(n - r, 2) + comb(r, 2)
        out.append(check("deg |F_N| = C(n-r,2) + C(r,2)", fiber.poly.degree == expected,
                         degree=fiber.poly.degree, expected=expected))
    for i, t in enumerate(tabs):
        try:
            comp = pointcount.fit_series(f"component:{i}", counter(pointcount.Target("component", i)), bound, **kwargs)
            xhat = pointcount.fit_series(f"xhat:{i}", counter(pointcount.Target("xhat", i)), bound, **kwargs)
        except pointcount.NonPolynomialSeriesError as exc:
            out.append(check(f"tableau {i}: counts are polynomial", False, error=str(exc)))
            continue
        out.append(check(f"tableau {i}: holdout primes exact", bool(comp.holdout) and bool(xhat.holdout),
                         component=comp.to_json(), xhat=xhat.to_json()))
        out.append(check(f"tableau {i}: dim X⁰ = dim F_N", comp.poly.degree == fiber.poly.degree,
                         degree=comp.poly.degree, fiber_degree=fiber.poly.degree))
        diff = xhat.poly - comp.poly
        out.append(check(f"tableau {i}: deg(|X̂| - |X⁰|) < deg |X̂|", diff.degree < xhat.poly.degree,
                         difference=diff.to_list(), labels=second_column_labels(t)))
    return out


# ---------------------------------------------------------------------------


def run_suite(suite: str, type_tag: str, n: int, r: int, primes: Sequence[int] | None,
              holdout: int | None = None, jobs: int = 1) -> SuiteReport:
    if suite not in ANCHORS:
        raise SuiteUsageError(f"unknown suite {suite!r}")
    if type_tag not in SUITE_TYPES[suite]:
        raise SuiteUsageError(f"suite {suite} supports types {SUITE_TYPES[suite]}")
    if not 0 <= 2 * r <= n:
        raise SuiteUsageError(f"need 0 <= 2r <= n, got n={n}, r={r}")
    default_primes = [3, 5] if type_tag == "D" else [2, 3]
    plist = list(primes) if primes else None
    for p in plist or []:
        gf.PrimeField(p)
        if type_tag == "D" and p == 2:
            raise SuiteUsageError("type D requires odd primes")
    report = SuiteReport(suite, ANCHORS[suite], {
        "type": type_tag, "n": n, "r": r,
        "primes": plist if plist is not None else (None if suite in ("birational", "vertical-tiles") else default_primes),
        "holdout": holdout,
    })
    per_prime = plist or default_primes
    with Timer(report, "total"):
        if suite == "vertical-tiles":
            rep = two_column_domino_check(n, r)
            report.checks.append(check("all admissible tableaux have only vertical tiles", rep.all_vertical,
                                       admissible=len(rep.admissible), total=rep.total))
        elif suite == "birational":
            report.checks.extend(birational_checks(type_tag, n, r, plist, holdout))
        elif suite == "coro-comp":
            fn = _coro_comp_a if type_tag == "A" else _coro_comp_d
            for chunk in _map(fn, [(n, r, p) for p in per_prime], jobs):
                report.checks.extend(chunk)
        elif suite == "descrip":
            for chunk in _map(_descrip_d, [(n, r, p) for p in per_prime], jobs):
                report.checks.extend(chunk)
        elif suite == "fibration":
            for chunk in _map(_fibration, [(type_tag, n, r, p) for p in per_prime], jobs):
                report.checks.extend(chunk)
        elif suite == "subword":
            chunks = _map(_subword, [(n, r, p) for p in per_prime], jobs)
            for chunk in chunks:
                report.checks.extend(chunk)
            report.checks.extend(_agreement(chunks, per_prime))
    return report


def _agreement(chunks: list[list[Check]], primes: Sequence[int]) -> list[Check]:
    """(w, v) must not depend on the prime."""
    per_tableau: dict[str, list] = {}
    for chunk in chunks:
        for c in chunk:
            if c.name.endswith("words extracted and suffix-extended") and c.status == "pass":
                key = c.name.split(": ", 1)[1]
                per_tableau.setdefault(key, []).append((c.detail["w"], c.detail["v"]))
    out = []
    for key, vals in sorted(per_tableau.items()):
        out.append(check(f"{key.replace(': words extracted and suffix-extended', '')}: (w, v) agree across primes",
                         len(vals) == len(primes) and all(x == vals[0] for x in vals), primes=list(primes)))
    return out
