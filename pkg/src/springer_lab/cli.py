"""Command-line interface: ``springer-lab <subcommand> ...``.

The exit code is 0 when every asserted check passes and 1 on an assertion
failure.  Usage errors exit with 2.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import flags_a, flags_d, pointcount, suites, weyl
from .combinat import (
    domino_two_column_shape,
    enumerate_domino_tableaux,
    enumerate_two_column_tableaux,
    is_admissible,
    second_column_labels,
)
from .gf import PrimeField
from .report import SuiteReport, check, finding

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _primes(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad prime list {text!r}") from exc
    for p in out:
        PrimeField(p)
    if len(set(out)) != len(out):
        raise UsageError("repeated prime in --primes")
    return out


def _common(parser: argparse.ArgumentParser, types=("A", "D")):
    parser.add_argument("--type", choices=types, default=types[0])
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--r", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="springer-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, help="directory for JSON/CSV reports")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for per-prime jobs")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tableaux", help="list the tableaux labelling components")
    _common(p)

    p = sub.add_parser("fiber", help="enumerate (and classify) a Springer fiber over F_p")
    _common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--classify", action="store_true")
    p.add_argument("--samples", type=int, default=0, help="sample flags per class to include")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(suites.ANCHORS), required=True)
    _common(p)
    p.add_argument("--primes")
    p.add_argument("--holdout", type=int)

    p = sub.add_parser("pointcount", help="fit a point-count polynomial")
    p.add_argument("--target", required=True,
                   help="fiber | component:<id> | schubert:<word> | xhat[:<id>] | smallflags")
    _common(p)
    p.add_argument("--primes")
    p.add_argument("--holdout", type=int)
    p.add_argument("--bound", type=int, help="degree bound (default: dimension of the flag variety)")
    p.add_argument("--backend", choices=["auto", "enumerate", "orbit", "cells"], default="auto")

    p = sub.add_parser("words", help="component words w, v and a suffix-compatible word for v")
    _common(p, types=("A",))
    p.add_argument("--tableau", type=int, required=True)
    p.add_argument("--primes", default="2,3")
    p.add_argument("--holdout", type=int, default=5)
    return ap


def _tableaux(type_tag: str, n: int, r: int):
    if not 0 <= 2 * r <= n:
        raise UsageError(f"need 0 <= 2r <= n, got n={n}, r={r}")
    if type_tag == "A":
        return enumerate_two_column_tableaux(n, r)
    return [t for t in enumerate_domino_tableaux(domino_two_column_shape(n, r)) if is_admissible(t)]


def _emit(report: SuiteReport, out: Path | None, stem: str):
    print("\n".join(report.summary_lines()))
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{stem}.json"
        path.write_text(report.dumps() + "\n")
        print(f"report written to {path}")


def cmd_tableaux(args) -> SuiteReport:
    tabs = _tableaux(args.type, args.n, args.r)
    rep = SuiteReport("tableaux", "components ↔ two-column (domino) tableaux",
                      {"type": args.type, "n": args.n, "r": args.r})
    for i, t in enumerate(tabs):
        rep.checks.append(finding(f"tableau {i}", rows=t.to_json(), labels=second_column_labels(t)))
        print(f"{i}: {t}   second column {second_column_labels(t)}")
    return rep


def cmd_fiber(args) -> SuiteReport:
    tabs = _tableaux(args.type, args.n, args.r)
    rep = SuiteReport("fiber", "Springer fiber: flags with N(V_i) ⊆ V_{i-1}",
                      {"type": args.type, "n": args.n, "r": args.r, "p": args.p, "classify": args.classify})
    if args.type == "A":
        N = flags_a.make_nilpotent(args.n, args.r, args.p)
        rep.parameters["matrix"] = N.matrix.to_list()
        if args.classify:
            classes = flags_a.classify_fiber(N, args.samples)
            counts = [classes[t]["count"] for t in tabs]
            samples = [[f.to_json() for f in classes[t]["sample_flags"]] for t in tabs]
        else:
            counts = [sum(1 for _ in flags_a.enumerate_fiber(N))]
    else:
        _, N = flags_d.make_orth_nilpotent(args.n, args.r, args.p)
        rep.parameters.update({"matrix": N.matrix.to_list(), "omega": N.space.omega.to_list()})
        if args.classify:
            by = {t: [] for t in tabs}
            tally = {t: 0 for t in tabs}
            for f in flags_d.enumerate_fiber_d(N):
                t = flags_d.domino_tableau_of_flag(N, f)
                tally[t] += 1
                if len(by[t]) < args.samples:
                    by[t].append(f)
            counts = [tally[t] for t in tabs]
            samples = [[f.to_json() for f in by[t]] for t in tabs]
        else:
            counts = [sum(1 for _ in flags_d.enumerate_fiber_d(N))]
    if args.classify:
        for i, t in enumerate(tabs):
            rep.checks.append(finding(f"class {i}", tableau=t.to_json(), count=counts[i], sample_flags=samples[i]))
            print(f"class {i} [{t}]: {counts[i]} flags")
        rep.checks.append(finding("fiber count", count=sum(counts)))
    else:
        rep.checks.append(finding("fiber count", count=counts[0]))
    print(f"fiber count: {sum(counts)}")
    return rep


def cmd_verify(args) -> SuiteReport:
    try:
        rep = suites.run_suite(args.suite, args.type, args.n, args.r, _primes(args.primes), args.holdout, args.jobs)
    except suites.SuiteUsageError as exc:
        raise UsageError(str(exc)) from exc
    return rep


def cmd_pointcount(args) -> SuiteReport:
    target = pointcount.parse_target(args.target)
    _tableaux(args.type, args.n, args.r)
    if target.kind == "xhat" and target.tableau_id is None:
        ids = range(len(_tableaux(args.type, args.n, args.r)))
        targets = [pointcount.Target("xhat", tableau_id=i) for i in ids]
    else:
        targets = [target]
    for t in targets:
        if t.tableau_id is not None and not 0 <= t.tableau_id < len(_tableaux(args.type, args.n, args.r)):
            raise UsageError(f"tableau id {t.tableau_id} out of range")
    if args.type == "D" and args.backend not in ("auto", "enumerate"):
        raise UsageError("type D supports only the enumerate backend")
    primes = _primes(args.primes)
    bound = args.bound if args.bound is not None else pointcount.degree_bound(args.type, args.n)
    if primes is not None:
        bound = min(bound, len(primes) - 1)
    rep = SuiteReport("pointcount", "point counts are polynomial in q; degree = dimension",
                      {"type": args.type, "n": args.n, "r": args.r, "targets": [t.label() for t in targets],
                       "primes": primes, "holdout": args.holdout, "bound": bound, "backend": args.backend})
    fits = []
    for t in targets:
        def counter(p, t=t):
            return pointcount.count_target(args.type, args.n, args.r, t, p, args.backend)

        try:
            fit = pointcount.fit_series(t.label(), counter, bound, primes=primes, holdout=args.holdout,
                                        odd_only=args.type == "D")
        except pointcount.NonPolynomialSeriesError as exc:
            # polynomiality is expected, not guaranteed: surface it without failing the run
            rep.checks.append(finding(f"{t.label()}: integral fit", error=str(exc)))
            print(f"{t.label()}: no integer polynomial fit ({exc})")
            continue
        fits.append(fit)
        rep.checks.append(check(f"{t.label()}: integral fit", True, **fit.to_json()))
        if fit.holdout is not None:
            rep.checks.append(check(f"{t.label()}: holdout", fit.holdout.ok, diagnostic=fit.holdout.diagnostic()))
        print(f"{t.label()}: {fit.poly}   (degree {fit.poly.degree})")
        if fit.holdout is not None:
            print(f"  {fit.holdout.diagnostic()}")
    if args.out is not None and fits:
        args.out.mkdir(parents=True, exist_ok=True)
        pointcount.write_csv([f.series for f in fits], args.out / "pointcount.csv")
    return rep


def cmd_words(args) -> SuiteReport:
    tabs = _tableaux("A", args.n, args.r)
    if not 0 <= args.tableau < len(tabs):
        raise UsageError(f"tableau id {args.tableau} out of range")
    t = tabs[args.tableau]
    primes = _primes(args.primes)
    if args.holdout in primes:
        raise UsageError("holdout prime is among the extraction primes")
    rep = SuiteReport("words", "reduced expression for v with suffix a reduced expression for w",
                      {"n": args.n, "r": args.r, "tableau": args.tableau, "primes": primes, "holdout": args.holdout})
    found = []
    for p in primes:
        try:
            found.append(weyl.component_words(flags_a.make_nilpotent(args.n, args.r, p), t))
        except weyl.BruhatMaximumError as exc:
            rep.checks.append(check(f"p={p}: Bruhat maximum extracted", False, error=str(exc)))
            return rep
    agree = all(x == found[0] for x in found)
    rep.checks.append(check("(w, v) agree across primes", agree,
                            values=[[list(w.data), list(v.data)] for w, v in found]))
    w, v = found[0]
    hp = args.holdout
    Nh = flags_a.make_nilpotent(args.n, args.r, hp)
    small = tuple(flags_a.reference_flag(Nh)[k] for k in range(args.r + 1))
    cw = sum(1 for _ in flags_a.enumerate_schubert_w(Nh, t, small))
    cv = sum(1 for _ in flags_a.enumerate_schubert_v(Nh, t, small))
    rep.checks.append(check(f"holdout p={hp}: Schubert counts match", cw == weyl.schubert_point_count(w)(hp)
                            and cv == weyl.schubert_point_count(v)(hp), fw=cw, fv=cv))
    ww = weyl.reduced_word(w)
    try:
        vv = weyl.suffix_extend(ww, v)
        rep.checks.append(check("suffix extension", True, w=list(w.data), v=list(v.data),
                                w_word=ww.to_json(), v_word=vv.to_json()))
        print(f"w = {list(w.data)}  word {ww}\nv = {list(v.data)}  word {vv}")
    except weyl.SuffixExtensionError as exc:
        rep.checks.append(check("suffix extension", False, error=str(exc)))
    return rep


COMMANDS = {
    "tableaux": cmd_tableaux,
    "fiber": cmd_fiber,
    "verify": cmd_verify,
    "pointcount": cmd_pointcount,
    "words": cmd_words,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with code 2 on bad syntax
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        rep = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stem = args.command if args.command != "verify" else f"verify-{args.suite}"
    _emit(rep, args.out, stem)
    return EXIT_OK if rep.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
