"""Type A Springer fibers for nilpotents with N^2 = 0.

A complete flag is stored as the tuple (V_0, ..., V_n) of canonical
subspaces.  Fiber enumeration walks the quotient kernels: V_{i+1} ranges
over the (i+1)-dimensional spaces between V_i and N^{-1}(V_i), so the cost
is proportional to the size of the fiber rather than of the flag variety.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from . import gf
from .combinat import (
    StandardTableau,
    TableauError,
    YoungDiagram,
    chain_to_tableau,
    enumerate_two_column_tableaux,
    labels_with_sentinels,
    second_column_labels,
    tableau_from_second_column,
    two_column_shape,
)
from .gf import MatrixFp, PrimeField, Subspace

__all__ = [
    "NilpotentA",
    "CompleteFlag",
    "XhatPoint",
    "NotInFiberError",
    "NotInOpenPartError",
    "make_nilpotent",
    "enumerate_flags",
    "enumerate_fiber",
    "brute_force_fiber",
    "is_n_stable",
    "jordan_type",
    "spaltenstein_tableau",
    "jump_set",
    "jump_tableau",
    "in_open_part",
    "xhat_lift",
    "xhat_incidences_hold",
    "enumerate_small_flags",
    "enumerate_schubert_w",
    "enumerate_schubert_v",
    "enumerate_xhat",
    "y_membership",
    "relative_position",
    "reference_flag",
    "classify_fiber",
    "structural_class_counts",
]


class NotInFiberError(ValueError):
    pass


class NotInOpenPartError(ValueError):
    pass


@dataclass(frozen=True)
class NilpotentA:
    n: int
    r: int
    matrix: MatrixFp

    def __post_init__(self):
        N = self.matrix
        if N.shape != (self.n, self.n):
            raise ValueError("matrix has the wrong size")
        if not (N @ N).is_zero():
            raise ValueError("N^2 != 0")
        if N.rank() != self.r:
            raise ValueError(f"rank N = {N.rank()}, expected {self.r}")

    @property
    def p(self) -> int:
        return self.matrix.p

    @cached_property
    def im(self) -> Subspace:
        return gf.image(self.matrix)

    @cached_property
    def ker(self) -> Subspace:
        return gf.kernel(self.matrix)

    @cached_property
    def full(self) -> Subspace:
        return gf.full_space(self.p, self.n)

    @cached_property
    def zero(self) -> Subspace:
        return gf.zero_space(self.p, self.n)

    @cached_property
    def power_images(self) -> tuple[Subspace, ...]:
        """Im N^k for k = 1, 2, ... up to the first zero space."""
        out = []
        power = self.matrix
        while True:
            img = gf.image(power)
            out.append(img)
            if img.dim == 0:
                return tuple(out)
            power = power @ self.matrix

    @property
    def shape(self) -> YoungDiagram:
        return two_column_shape(self.n, self.r)

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "p": self.p, "matrix": self.matrix.to_list()}


def make_nilpotent(n: int, r: int, field: PrimeField | int) -> NilpotentA:
    """Jordan form: N e_{2j} = e_{2j-1} for j <= r (1-based), other e_i killed."""
    p = field.p if isinstance(field, PrimeField) else PrimeField(field).p
    if r < 0 or 2 * r > n:
        raise ValueError(f"need 0 <= 2r <= n, got n={n}, r={r}")
    rows = [[0] * n for _ in range(n)]
    for j in range(1, r + 1):
        rows[2 * j - 2][2 * j - 1] = 1
    return NilpotentA(n, r, MatrixFp.from_rows(rows, p))


@dataclass(frozen=True)
class CompleteFlag:
    subspaces: tuple[Subspace, ...]

    def __getitem__(self, i: int) -> Subspace:
        return self.subspaces[i]

    def __len__(self):
        return len(self.subspaces)

    @property
    def n(self) -> int:
        return len(self.subspaces) - 1

    def validate(self) -> "CompleteFlag":
        for i, (a, b) in enumerate(zip(self.subspaces, self.subspaces[1:])):
            if a.dim != i or b.dim != i + 1 or not a <= b:
                raise ValueError(f"not a complete flag at step {i}")
        return self

    def to_json(self) -> list[list[list[int]]]:
        return [v.to_list() for v in self.subspaces]

    @classmethod
    def from_json(cls, data, p: int) -> "CompleteFlag":
        m = len(data[-1][0]) if data[-1] else 0
        return cls(tuple(gf.span(rows, p, m) for rows in data)).validate()


def enumerate_flags(
    top: Subspace,
    lower: Mapping[int, Subspace] | None = None,
    upper: Mapping[int, Subspace] | None = None,
) -> Iterator[tuple[Subspace, ...]]:
    """Complete flags (V_0, ..., V_d) of ``top`` with lower[i] ⊆ V_i ⊆ upper[i]."""
    lower = lower or {}
    upper = upper or {}
    d, p, m = top.dim, top.p, top.ambient_dim
    zero = gf.zero_space(p, m)
    eff_lower = []
    acc = zero
    for i in range(d + 1):
        if i in lower:
            acc = gf.subspace_sum(acc, lower[i])
        eff_lower.append(acc)
    eff_upper = [top] * (d + 1)
    acc = top
    for i in range(d, -1, -1):
        if i in upper:
            acc = gf.intersect(acc, upper[i])
        eff_upper[i] = acc

    def rec(i: int, prefix: tuple[Subspace, ...]):
        if i == d:
            yield prefix
            return
        vi = prefix[-1]
        lo = gf.subspace_sum(vi, eff_lower[i + 1])
        hi = eff_upper[i + 1]
        if lo.dim > i + 1 or not lo <= hi:
            return
        if lo.dim == i + 1:
            yield from rec(i + 1, prefix + (lo,))
            return
        for nxt in gf.enumerate_subspaces(i + 1, vi, hi):
            yield from rec(i + 1, prefix + (nxt,))

    if eff_lower[0].dim == 0:
        yield from rec(0, (zero,))


def is_n_stable(N: NilpotentA | MatrixFp, f: CompleteFlag) -> bool:
    mat = N.matrix if isinstance(N, NilpotentA) else N
    return all(gf.image(mat, f[i]) <= f[i - 1] for i in range(1, len(f)))


def enumerate_fiber(N: NilpotentA) -> Iterator[CompleteFlag]:
    """All N-stable complete flags of F_p^n, each once, in canonical order."""
    mat, n = N.matrix, N.n

    def rec(prefix: tuple[Subspace, ...]):
        i = len(prefix) - 1
        if i == n:
            yield CompleteFlag(prefix)
            return
        vi = prefix[-1]
        for nxt in gf.enumerate_subspaces(i + 1, vi, gf.preimage(mat, vi)):
            yield from rec(prefix + (nxt,))

    yield from rec((N.zero,))


def brute_force_fiber(N: NilpotentA) -> Iterator[CompleteFlag]:
    """Test oracle: filter every complete flag by N-stability."""
    for flag in enumerate_flags(N.full):
        f = CompleteFlag(flag)
        if is_n_stable(N, f):
            yield f


@lru_cache(maxsize=1 << 16)
def jordan_type(power_images: tuple[Subspace, ...], sub: Subspace, top: Subspace) -> YoungDiagram:
    """Jordan type of the operator induced on top/sub, from the images of its powers.

    ``power_images[k-1]`` must be N^k(top); N must preserve both spaces.
    """
    ranks = [top.dim - sub.dim]
    for img in power_images:
        ranks.append(gf.subspace_sum(img, sub).dim - sub.dim)
        if ranks[-1] == 0:
            break
    ranks.append(0)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    rows: list[int] = []
    for size in range(len(at_least), 0, -1):
        exact = at_least[size - 1] - (at_least[size] if size < len(at_least) else 0)
        rows.extend([size] * exact)
    return YoungDiagram(tuple(rows))


def _require_stable(N: NilpotentA, f: CompleteFlag):
    if not is_n_stable(N, f):
        raise NotInFiberError("flag is not N-stable")


def spaltenstein_tableau(N: NilpotentA, f: CompleteFlag) -> StandardTableau:
    """Tableau of the chain of Jordan types of N on V/V_i."""
    _require_stable(N, f)
    chain = [jordan_type(N.power_images, f[i], N.full) for i in range(N.n + 1)]
    return chain_to_tableau(chain)


def jump_set(N: NilpotentA, f: CompleteFlag) -> list[int]:
    """Indices i with dim(Im N ∩ V_i) > dim(Im N ∩ V_{i-1})."""
    dims = [gf.intersect(N.im, v).dim for v in f.subspaces]
    return [i for i in range(1, len(dims)) if dims[i] > dims[i - 1]]


def jump_tableau(N: NilpotentA, f: CompleteFlag) -> StandardTableau:
    _require_stable(N, f)
    jumps = jump_set(N, f)
    if len(jumps) != N.r:
        raise RuntimeError(f"jump set {jumps} has size != r = {N.r}")
    return tableau_from_second_column(N.n, jumps)


def in_open_part(N: NilpotentA, f: CompleteFlag, t: StandardTableau) -> bool:
    return is_n_stable(N, f) and jump_set(N, f) == second_column_labels(t)


@dataclass(frozen=True)
class XhatPoint:
    small_flag: tuple[Subspace, ...]  # F_0 ⊂ ... ⊂ F_r = Im N
    big_flag: CompleteFlag

    def to_json(self) -> dict:
        return {"small_flag": [v.to_list() for v in self.small_flag], "big_flag": self.big_flag.to_json()}


def xhat_incidences_hold(N: NilpotentA, t: StandardTableau, small: Sequence[Subspace], big: CompleteFlag) -> bool:
    """F_k ⊆ V_{p_k} ⊆ N^{-1}(F_{k-1}) for k = 1..r."""
    labels = labels_with_sentinels(t)
    return all(
        small[k] <= big[labels[k]] <= gf.preimage(N.matrix, small[k - 1])
        for k in range(1, N.r + 1)
    )


def xhat_lift(N: NilpotentA, f: CompleteFlag, t: StandardTableau) -> XhatPoint:
    """The unique preimage of f ∈ X⁰_t: F_k = Im N ∩ V_{p_k}."""
    if not in_open_part(N, f, t):
        raise NotInOpenPartError(f"flag is not in the open part of component {t}")
    labels = labels_with_sentinels(t)
    small = tuple(gf.intersect(N.im, f[labels[k]]) for k in range(N.r + 1))
    if not xhat_incidences_hold(N, t, small, f):
        raise RuntimeError("lift violates the incidence conditions")
    return XhatPoint(small, f)


def enumerate_small_flags(N: NilpotentA) -> Iterator[tuple[Subspace, ...]]:
    """Complete flags of Im N."""
    return enumerate_flags(N.im)


def _w_bounds(N: NilpotentA, t: StandardTableau, small: Sequence[Subspace]):
    labels = labels_with_sentinels(t)
    lower = {labels[k]: small[k] for k in range(1, N.r + 1)}
    upper = {labels[k]: gf.preimage(N.matrix, small[k - 1]) for k in range(1, N.r + 1)}
    return lower, upper


def enumerate_schubert_w(N: NilpotentA, t: StandardTableau, small: Sequence[Subspace]) -> Iterator[CompleteFlag]:
    """Flags with F_k ⊆ V_{p_k} ⊆ N^{-1}(F_{k-1}) for the fixed small flag."""
    lower, upper = _w_bounds(N, t, small)
    for flag in enumerate_flags(N.full, lower, upper):
        yield CompleteFlag(flag)


def enumerate_schubert_v(N: NilpotentA, t: StandardTableau, small: Sequence[Subspace]) -> Iterator[CompleteFlag]:
    """Flags with F_k ⊆ V_{p_k} for the fixed small flag."""
    lower, _ = _w_bounds(N, t, small)
    for flag in enumerate_flags(N.full, lower):
        yield CompleteFlag(flag)


def enumerate_xhat(N: NilpotentA, t: StandardTableau) -> Iterator[XhatPoint]:
    _check_shape(N, t)
    for small in enumerate_small_flags(N):
        for big in enumerate_schubert_w(N, t, small):
            yield XhatPoint(small, big)


def y_membership(N: NilpotentA, f: CompleteFlag, t: StandardTableau) -> bool:
    """dim(Im N ∩ V_{p_k}) >= k for every k."""
    labels = labels_with_sentinels(t)
    return all(gf.intersect(N.im, f[labels[k]]).dim >= k for k in range(1, len(labels) - 1))


def _check_shape(N: NilpotentA, t: StandardTableau):
    if t.shape != N.shape:
        raise TableauError(f"tableau shape {t.shape.rows} differs from λ(N) = {N.shape.rows}")


def relative_position(f: CompleteFlag, ref: CompleteFlag) -> tuple[int, ...]:
    """One-line permutation u with dim(V_i ∩ Ref_j) = #{a <= i : u(a) <= j}."""
    n = f.n
    if ref.n != n:
        raise gf.AmbientMismatchError("flags of different length")
    dims = [[gf.intersect(f[i], ref[j]).dim for j in range(n + 1)] for i in range(n + 1)]
    u = []
    for a in range(1, n + 1):
        u.append(next(j for j in range(1, n + 1) if dims[a][j] - dims[a - 1][j] == 1))
    return tuple(u)


def reference_flag(N: NilpotentA, small: Sequence[Subspace] | None = None) -> CompleteFlag:
    """F_0 ⊂ .. ⊂ F_r = Im N ⊂ F_{r+1} ⊂ .. ⊂ Ker N = N^{-1}(F_0) ⊂ .. ⊂ N^{-1}(F_r).

    The middle part adds echelon basis vectors of Ker N in order.  ``small``
    defaults to the flag spanned by prefixes of the echelon basis of Im N
    (coordinate subspaces for the canonical N).
    """
    p, n = N.p, N.n
    if small is None:
        small = tuple(gf.span(N.im.basis[:k], p, n) for k in range(N.r + 1))
    out = list(small)
    acc = small[-1]
    for e in N.ker.basis:
        if e not in acc:
            acc = gf.subspace_sum(acc, gf.span([e], p, n))
            out.append(acc)
    out.extend(gf.preimage(N.matrix, small[k]) for k in range(1, N.r + 1))
    return CompleteFlag(tuple(out)).validate()


def classify_fiber(N: NilpotentA, samples: int = 0) -> dict[StandardTableau, dict]:
    """Partition the fiber by jump tableau: {tableau: {"count", "sample_flags"}}."""
    out = {t: {"count": 0, "sample_flags": []} for t in enumerate_two_column_tableaux(N.n, N.r)}
    for f in enumerate_fiber(N):
        entry = out[jump_tableau(N, f)]
        entry["count"] += 1
        if len(entry["sample_flags"]) < samples:
            entry["sample_flags"].append(f)
    return out


def structural_class_counts(N: NilpotentA) -> dict[StandardTableau, int]:
    """|X⁰_t(F_p)| for every t without listing flags.

    Extending a partial N-stable flag V_i by a line of Ker(N on V/V_i) either
    lands in (Im N + V_i)/V_i, which is a jump at i+1 and lowers the rank of the
    induced operator by one, or not, which keeps the rank.  The completions
    depend only on (i, rank), since nilpotents of equal Jordan type are
    conjugate, so each state is expanded once from a representative.
    """
    mat, n, p = N.matrix, N.n, N.p
    memo: dict[tuple[int, int], Counter] = {}

    def rec(vi: Subspace) -> Counter:
        i = vi.dim
        if i == n:
            return Counter({(): 1})
        imq = gf.subspace_sum(N.im, vi)
        key = (i, imq.dim - i)
        if key in memo:
            return memo[key]
        kq = gf.preimage(mat, vi)
        lines_im = gf.gaussian_binomial(imq.dim - i, 1, p)
        lines_other = gf.gaussian_binomial(kq.dim - i, 1, p) - lines_im
        out: Counter = Counter()
        if lines_im:
            v = next(v for v in imq.basis if v not in vi)
            for jumps, c in rec(gf.subspace_sum(vi, gf.span([v], p, n))).items():
                out[(i + 1,) + jumps] += c * lines_im
        if lines_other:
            v = next(v for v in kq.basis if v not in imq)
            for jumps, c in rec(gf.subspace_sum(vi, gf.span([v], p, n))).items():
                out[jumps] += c * lines_other
        memo[key] = out
        return out

    counts = rec(N.zero)
    result = {t: 0 for t in enumerate_two_column_tableaux(n, N.r)}
    for jumps, c in counts.items():
        result[tableau_from_second_column(n, jumps)] += c
    return result
