"""Exact point counts over F_p, polynomial interpolation and holdout checks.

Counts come from one of several backends:

* ``enumerate``: list the F_p-points and count them;
* ``orbit``: type A fiber and component counts by memoized orbit counting;
* ``cells``: Schubert-type sets as sums of q^{ℓ(u)} over allowed cells.

``auto`` enumerates when the ambient flag variety is small at p and uses
the faster backend otherwise.  Tests cross-check the backends on the primes
where both run.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

from sympy import nextprime

from . import flags_a, flags_d, weyl
from .combinat import second_column_labels
from .poly import QPolynomial, q_factorial

__all__ = [
    "CountSeries",
    "HoldoutResult",
    "FitResult",
    "NonPolynomialSeriesError",
    "interpolate",
    "validate_holdout",
    "prime_schedule",
    "fit_series",
    "Target",
    "parse_target",
    "count_target",
    "degree_bound",
    "write_csv",
    "fits_to_json",
]

ENUMERATION_LIMIT = 200_000  # p^{dim of flag variety} at or below this: enumerate


class NonPolynomialSeriesError(ArithmeticError):
    """The samples are not interpolated by an integer polynomial of bounded degree."""


@dataclass(frozen=True)
class CountSeries:
    label: str
    samples: tuple[tuple[int, int], ...]

    def __post_init__(self):
        samples = tuple((int(p), int(c)) for p, c in self.samples)
        object.__setattr__(self, "samples", samples)
        primes = [p for p, _ in samples]
        if len(set(primes)) != len(primes):
            raise ValueError(f"repeated prime in series {self.label!r}")
        if any(c < 0 for _, c in samples):
            raise ValueError(f"negative count in series {self.label!r}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.samples]

    def to_rows(self) -> list[tuple[str, int, int]]:
        return [(self.label, p, c) for p, c in self.samples]


def interpolate(series: CountSeries, expected_degree_bound: int) -> QPolynomial:
    """Newton interpolation in exact rationals; integrality is asserted."""
    pts = series.samples
    if len(pts) < expected_degree_bound + 1:
        raise ValueError(
            f"{series.label!r}: need {expected_degree_bound + 1} samples, have {len(pts)}"
        )
    xs = [Fraction(p) for p, _ in pts]
    coef = [Fraction(c) for _, c in pts]
    m = len(pts)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form into monomial coefficients
    poly = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        # poly = poly * (q - xs[i]) + coef[i]
        new = [Fraction(0)] * m
        for d in range(m - 1):
            new[d + 1] += poly[d]
            new[d] -= poly[d] * xs[i]
        new[0] += coef[i]
        poly = new
    if any(c.denominator != 1 for c in poly):
        raise NonPolynomialSeriesError(
            f"{series.label!r}: non-integral coefficients {[str(c) for c in poly]}"
        )
    out = QPolynomial(tuple(int(c) for c in poly))
    if out.degree > expected_degree_bound:
        raise NonPolynomialSeriesError(
            f"{series.label!r}: fitted degree {out.degree} exceeds bound {expected_degree_bound}"
        )
    return out


@dataclass(frozen=True)
class HoldoutResult:
    prime: int
    observed: int
    predicted: int

    @property
    def ok(self) -> bool:
        return self.observed == self.predicted

    def __bool__(self):
        return self.ok

    def diagnostic(self) -> str:
        status = "match" if self.ok else "MISMATCH"
        return f"holdout p={self.prime}: predicted {self.predicted}, observed {self.observed} ({status})"

    def to_json(self) -> dict:
        return {"prime": self.prime, "observed": self.observed, "predicted": self.predicted, "ok": self.ok}


def validate_holdout(poly: QPolynomial, holdout: tuple[int, int]) -> HoldoutResult:
    p, count = holdout
    return HoldoutResult(int(p), int(count), poly(int(p)))


def prime_schedule(count: int, odd_only: bool = False, start: int = 2) -> list[int]:
    """The ``count`` smallest primes >= start (odd ones only if asked)."""
    out = []
    p = start - 1
    while len(out) < count:
        p = nextprime(p)
        if odd_only and p == 2:
            continue
        out.append(int(p))
    return out


@dataclass
class FitResult:
    label: str
    series: CountSeries
    poly: QPolynomial
    holdout: HoldoutResult | None
    backends: dict[int, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "samples": [list(s) for s in self.series.samples],
            "backends": {str(p): b for p, b in sorted(self.backends.items())},
            "coefficients": self.poly.to_list(),
            "degree": self.poly.degree,
            "leading_coefficient": self.poly.leading_coefficient,
            "holdout": self.holdout.to_json() if self.holdout else None,
        }


def fit_series(
    label: str,
    counter: Callable[[int], tuple[int, str]],
    bound: int,
    primes: Sequence[int] | None = None,
    holdout: int | None = None,
    odd_only: bool = False,
) -> FitResult:
    """Count at each prime, interpolate, then check the holdout prime.

    By default the bound + 2 smallest admissible primes are used, the last
    one held out.  ``counter`` returns (count, backend name).
    """
    if primes is None:
        sched = prime_schedule(bound + 2, odd_only=odd_only)
        primes, holdout = (sched[:-1], sched[-1]) if holdout is None else (sched[:-1], holdout)
    primes = list(primes)
    if holdout is not None and holdout in primes:
        raise ValueError("holdout prime is among the interpolation primes")
    backends = {}
    samples = []
    for p in primes:
        c, b = counter(p)
        samples.append((p, c))
        backends[p] = b
    series = CountSeries(label, tuple(samples))
    poly = interpolate(series, bound)
    check = None
    if holdout is not None:
        c, b = counter(holdout)
        backends[holdout] = b
        check = validate_holdout(poly, (holdout, c))
    return FitResult(label, series, poly, check, backends)


# ---------------------------------------------------------------------------
# count targets


@dataclass(frozen=True)
class Target:
    kind: str  # fiber | component | schubert | xhat | smallflags
    tableau_id: int | None = None
    word: weyl.Word | None = None

    def label(self) -> str:
        if self.kind in ("component", "xhat") and self.tableau_id is not None:
            return f"{self.kind}:{self.tableau_id}"
        if self.kind == "schubert":
            return f"schubert:{''.join(map(str, self.word.letters))}"
        return self.kind


def parse_target(text: str) -> Target:
    head, _, arg = text.partition(":")
    if head in ("fiber", "smallflags") and not arg:
        return Target(head)
    if head == "component" and arg:
        return Target("component", tableau_id=int(arg))
    if head == "xhat":
        return Target("xhat", tableau_id=int(arg) if arg else None)
    if head == "schubert":
        return Target("schubert", word=weyl.Word.parse(arg))
    raise ValueError(f"unknown target {text!r}")


def degree_bound(type_tag: str, n: int) -> int:
    """Dimension of the ambient flag variety, an a priori degree bound."""
    if type_tag == "A":
        return n * (n - 1) // 2
    return n * (n - 1)  # dim of the type D_n flag variety


def _small(type_tag: str, n: int, p: int) -> bool:
    return p ** degree_bound(type_tag, n) <= ENUMERATION_LIMIT


def _tableaux(type_tag: str, n: int, r: int):
    from .combinat import enumerate_domino_tableaux, enumerate_two_column_tableaux, domino_two_column_shape, is_admissible

    if type_tag == "A":
        return enumerate_two_column_tableaux(n, r)
    return [t for t in enumerate_domino_tableaux(domino_two_column_shape(n, r)) if is_admissible(t)]


def count_target(type_tag: str, n: int, r: int, target: Target, p: int, backend: str = "auto") -> tuple[int, str]:
    """(|target(F_p)|, backend used)."""
    if backend == "auto":
        if type_tag == "D":
            backend = "enumerate"
        elif target.kind == "schubert":
            backend = "enumerate" if _small("A", n, p) else "cells"
        elif target.kind == "xhat":
            backend = "enumerate" if _small("A", n, p) else "cells"
        elif target.kind == "smallflags":
            backend = "enumerate"
        else:
            backend = "enumerate" if _small("A", n, p) else "orbit"
    if type_tag == "A":
        return _count_a(n, r, target, p, backend), backend
    if type_tag == "D":
        if backend != "enumerate":
            raise ValueError("type D counts use the enumerate backend")
        return _count_d(n, r, target, p), backend
    raise ValueError(f"unknown type {type_tag!r}")


def _count_a(n: int, r: int, target: Target, p: int, backend: str) -> int:
    if target.kind == "schubert":
        w = weyl.word_product(target.word.validate(n - 1), "A", n - 1)
        if backend == "cells":
            return weyl.schubert_point_count(w)(p)
        N0 = flags_a.make_nilpotent(n, 0, p)
        ref = flags_a.CompleteFlag(tuple(
            flags_a.gf.span([[int(j == i) for j in range(n)] for i in range(k)], p, n) for k in range(n + 1)
        ))
        return sum(
            1 for f in flags_a.enumerate_flags(N0.full)
            if weyl.bruhat_leq(weyl.WeylElement("A", flags_a.relative_position(flags_a.CompleteFlag(f), ref)), w)
        )
    N = flags_a.make_nilpotent(n, r, p)
    tabs = _tableaux("A", n, r)
    if target.kind == "smallflags":
        return sum(1 for _ in flags_a.enumerate_small_flags(N))
    if target.kind == "fiber":
        if backend == "orbit":
            return sum(flags_a.structural_class_counts(N).values())
        return sum(1 for _ in flags_a.enumerate_fiber(N))
    t = tabs[target.tableau_id]
    if target.kind == "component":
        if backend == "orbit":
            return flags_a.structural_class_counts(N)[t]
        return flags_a.classify_fiber(N)[t]["count"]
    if target.kind == "xhat":
        if backend == "cells":
            return (q_factorial(r) * weyl.incidence_cell_polynomial(n, r, second_column_labels(t), "w"))(p)
        return sum(1 for _ in flags_a.enumerate_xhat(N, t))
    raise ValueError(f"target {target.kind} not available in type A")


def _count_d(n: int, r: int, target: Target, p: int) -> int:
    _, N = flags_d.make_orth_nilpotent(n, r, p)
    if target.kind == "fiber":
        return sum(1 for _ in flags_d.enumerate_fiber_d(N))
    if target.kind == "smallflags":
        return sum(1 for _ in flags_d.enumerate_sp_flags(N))
    tabs = _tableaux("D", n, r)
    t = tabs[target.tableau_id]
    if target.kind == "component":
        return sum(1 for f in flags_d.enumerate_fiber_d(N) if flags_d.in_open_part_d(N, f, t))
    if target.kind == "xhat":
        return sum(1 for _ in flags_d.enumerate_xhat_d(N, t))
    raise ValueError(f"target {target.kind} not available in type D")


def write_csv(series: Iterable[CountSeries], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "prime", "count"])
        for s in series:
            writer.writerows(s.to_rows())


def fits_to_json(fits: Iterable[FitResult]) -> str:
    return json.dumps([f.to_json() for f in fits], indent=2, sort_keys=True)
