"""Type D Springer fibers for omega-skew nilpotents with N^2 = 0.

The ambient space is F_p^{2n} with the split symmetric form pairing the
basis vector x_i with x_{2n+1-i}; in hyperbolic terms the basis is
(e_1, ..., e_n, f_n, ..., f_1).  An isotropic flag is stored as
(V_0, ..., V_{n-1}); the upper half V_{2n-i} = V_i^⊥ is computed on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from . import gf
from .combinat import (
    DominoTableau,
    YoungDiagram,
    domino_chain_to_tableau,
    domino_two_column_shape,
    enumerate_domino_tableaux,
    is_admissible,
    labels_with_sentinels,
    second_column_labels,
    vertical_domino_tableau,
)
from .flags_a import NotInFiberError, NotInOpenPartError, jordan_type
from .gf import MatrixFp, PrimeField, Subspace, Vector

__all__ = [
    "OrthSpace",
    "NilpotentD",
    "IsotropicFlag",
    "AlphaForm",
    "LiftD",
    "NotLagrangianError",
    "make_split_form",
    "make_orth_nilpotent",
    "alpha",
    "alpha_form",
    "alpha_orth",
    "is_alpha_isotropic",
    "enumerate_isotropic_flags",
    "enumerate_fiber_d",
    "brute_force_fiber_d",
    "is_in_fiber_d",
    "u_sequence",
    "u_jump_set",
    "admissible_subspaces",
    "maximal_subspace_oracle",
    "maximal_flag_oracle",
    "domino_tableau_of_flag",
    "jump_domino_tableau",
    "in_open_part_d",
    "xhat_lift_d",
    "enumerate_sp_flags",
    "enumerate_schubert_w_d",
    "enumerate_schubert_v_d",
    "enumerate_xhat_d",
    "y_membership_d",
    "admissible_tableaux_d",
]


class NotLagrangianError(ValueError):
    pass


@dataclass(frozen=True)
class OrthSpace:
    n: int
    omega: MatrixFp

    def __post_init__(self):
        om = self.omega
        if om.shape != (2 * self.n, 2 * self.n):
            raise ValueError("form has the wrong size")
        if om.transpose() != om:
            raise ValueError("form is not symmetric")
        if om.p == 2:
            raise ValueError("characteristic 2 is not supported")
        if om.rank() != 2 * self.n:
            raise gf.DegenerateFormError("form is degenerate")

    @property
    def p(self) -> int:
        return self.omega.p

    @property
    def dim(self) -> int:
        return 2 * self.n

    def perp(self, w: Subspace) -> Subspace:
        return gf.orth_complement(w, self.omega)

    def is_isotropic(self, w: Subspace) -> bool:
        return w <= self.perp(w)

    @cached_property
    def full(self) -> Subspace:
        return gf.full_space(self.p, self.dim)

    @cached_property
    def zero(self) -> Subspace:
        return gf.zero_space(self.p, self.dim)


def make_split_form(n: int, field: PrimeField | int) -> OrthSpace:
    p = field.p if isinstance(field, PrimeField) else PrimeField(field).p
    m = 2 * n
    rows = [[int(i + j == m - 1) for j in range(m)] for i in range(m)]
    return OrthSpace(n, MatrixFp.from_rows(rows, p))


@dataclass(frozen=True)
class NilpotentD:
    space: OrthSpace
    r: int
    matrix: MatrixFp

    def __post_init__(self):
        N, om = self.matrix, self.space.omega
        if N.shape != om.shape:
            raise ValueError("matrix has the wrong size")
        if not (N @ N).is_zero():
            raise ValueError("N^2 != 0")
        if N.rank() != 2 * self.r:
            raise ValueError(f"rank N = {N.rank()}, expected {2 * self.r}")
        # omega(Nv, w) + omega(v, Nw) = 0  <=>  N^T Ω + Ω N = 0
        skew = N.transpose() @ om
        other = om @ N
        if any((a + b) % N.p for ra, rb in zip(skew.rows, other.rows) for a, b in zip(ra, rb)):
            raise ValueError("N is not omega-skew")

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def p(self) -> int:
        return self.matrix.p

    @cached_property
    def im(self) -> Subspace:
        return gf.image(self.matrix)

    @cached_property
    def ker(self) -> Subspace:
        return gf.kernel(self.matrix)

    @property
    def shape(self) -> YoungDiagram:
        return domino_two_column_shape(self.n, self.r)

    def image_of(self, w: Subspace) -> Subspace:
        return gf.image(self.matrix, w)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "p": self.p,
            "omega": self.space.omega.to_list(),
            "matrix": self.matrix.to_list(),
        }


def make_orth_nilpotent(n: int, r: int, field: PrimeField | int) -> tuple[OrthSpace, NilpotentD]:
    """N f_{2j-1} = e_{2j}, N f_{2j} = -e_{2j-1} for j <= r; zero elsewhere."""
    fld = field if isinstance(field, PrimeField) else PrimeField(field)
    fld.require_odd()
    if r < 0 or 2 * r > n:
        raise ValueError(f"need 0 <= 2r <= n, got n={n}, r={r}")
    space = make_split_form(n, fld)
    m = 2 * n

    def e(i):  # 0-based coordinate of e_i
        return i - 1

    def f(i):
        return m - i

    rows = [[0] * m for _ in range(m)]
    for j in range(1, r + 1):
        rows[e(2 * j)][f(2 * j - 1)] = 1
        rows[e(2 * j - 1)][f(2 * j)] = -1
    return space, NilpotentD(space, r, MatrixFp.from_rows(rows, fld.p))


def alpha(N: NilpotentD, u: Sequence[int], v: Sequence[int]) -> int:
    """omega(u, v') for any v' with N v' = v."""
    if u not in N.im:
        raise ValueError("u is not in Im N")
    v_pre = gf.solve(N.matrix, v)
    if v_pre is None:
        raise ValueError("v is not in Im N")
    return gf.bilinear(N.space.omega, u, v_pre)


@dataclass(frozen=True)
class AlphaForm:
    carrier: Subspace
    gram: MatrixFp  # in the echelon basis of the carrier

    def is_skew(self) -> bool:
        g, p = self.gram.rows, self.gram.p
        return all((g[i][j] + g[j][i]) % p == 0 for i in range(len(g)) for j in range(len(g)))

    def is_nondegenerate(self) -> bool:
        return self.gram.rank() == self.carrier.dim


def alpha_form(N: NilpotentD) -> AlphaForm:
    basis = N.im.basis
    gram = [[alpha(N, u, v) for v in basis] for u in basis]
    return AlphaForm(N.im, MatrixFp.from_rows(gram, N.p))


def alpha_orth(N: NilpotentD, w: Subspace) -> Subspace:
    """w^∠ inside Im N: u with alpha(x, u) = 0 for every x in w."""
    pre = [gf.solve(N.matrix, x) for x in w.basis]
    if any(x is None for x in pre):
        raise ValueError("subspace is not inside Im N")
    orth = N.space.perp(gf.span(pre, N.p, N.space.dim))
    return gf.intersect(N.im, orth)


def is_alpha_isotropic(N: NilpotentD, w: Subspace) -> bool:
    return w <= alpha_orth(N, w)


@dataclass(frozen=True)
class IsotropicFlag:
    subspaces: tuple[Subspace, ...]  # V_0, ..., V_{n-1}

    def __getitem__(self, i: int) -> Subspace:
        return self.subspaces[i]

    def __len__(self):
        return len(self.subspaces)

    def validate(self, space: OrthSpace) -> "IsotropicFlag":
        if len(self.subspaces) != space.n:
            raise ValueError("an isotropic flag has n members V_0..V_{n-1}")
        for i, v in enumerate(self.subspaces):
            if v.dim != i or not space.is_isotropic(v):
                raise ValueError(f"V_{i} is not an isotropic {i}-space")
            if i and not self.subspaces[i - 1] <= v:
                raise ValueError("flag is not nested")
        return self

    def to_json(self) -> list[list[list[int]]]:
        return [v.to_list() for v in self.subspaces]


def enumerate_isotropic_flags(
    space: OrthSpace,
    lower: Mapping[int, Subspace] | None = None,
    upper: Mapping[int, Subspace] | None = None,
) -> Iterator[tuple[Subspace, ...]]:
    """Isotropic (V_0, ..., V_{n-1}) with lower[i] ⊆ V_i ⊆ upper[i]."""
    lower = lower or {}
    upper = upper or {}
    n = space.n
    eff_lower, acc = [], space.zero
    for i in range(n):
        if i in lower:
            acc = gf.subspace_sum(acc, lower[i])
        eff_lower.append(acc)
    eff_upper, acc = [space.full] * n, space.full
    for i in range(n - 1, -1, -1):
        if i in upper:
            acc = gf.intersect(acc, upper[i])
        eff_upper[i] = acc

    def rec(prefix: tuple[Subspace, ...]):
        i = len(prefix) - 1
        if i == n - 1:
            yield prefix
            return
        vi = prefix[-1]
        lo = gf.subspace_sum(vi, eff_lower[i + 1])
        hi = gf.intersect(eff_upper[i + 1], space.perp(vi))
        if lo.dim > i + 1 or not lo <= hi:
            return
        cands = [lo] if lo.dim == i + 1 else gf.enumerate_subspaces(i + 1, vi, hi)
        for nxt in cands:
            if space.is_isotropic(nxt):
                yield from rec(prefix + (nxt,))

    if eff_lower[0].dim == 0:
        yield from rec((space.zero,))


def is_in_fiber_d(N: NilpotentD, f: IsotropicFlag) -> bool:
    n = N.n
    if not all(N.image_of(f[i]) <= f[i - 1] for i in range(1, n)):
        return False
    return N.image_of(N.space.perp(f[n - 1])) <= f[n - 1]


def enumerate_fiber_d(N: NilpotentD) -> Iterator[IsotropicFlag]:
    """Isotropic flags with N(V_i) ⊆ V_{i-1} and N(V_{n-1}^⊥) ⊆ V_{n-1}."""
    space, n = N.space, N.n

    def rec(prefix: tuple[Subspace, ...]):
        i = len(prefix) - 1
        vi = prefix[-1]
        if i == n - 1:
            if N.image_of(space.perp(vi)) <= vi:
                yield IsotropicFlag(prefix)
            return
        hi = gf.intersect(gf.preimage(N.matrix, vi), space.perp(vi))
        for nxt in gf.enumerate_subspaces(i + 1, vi, hi):
            if space.is_isotropic(nxt):
                yield from rec(prefix + (nxt,))

    yield from rec((space.zero,))


def brute_force_fiber_d(N: NilpotentD) -> Iterator[IsotropicFlag]:
    """Test oracle: every isotropic flag, filtered by the fiber conditions."""
    for flag in enumerate_isotropic_flags(N.space):
        f = IsotropicFlag(flag)
        if is_in_fiber_d(N, f):
            yield f


def _require_fiber(N: NilpotentD, f: IsotropicFlag):
    if not is_in_fiber_d(N, f):
        raise NotInFiberError("flag is not in the type D Springer fiber")


def u_sequence(N: NilpotentD, f: IsotropicFlag) -> list[Subspace]:
    """U_0 = 0, U_i = V_i ∩ N(U_{i-1}^⊥) for i = 1..n-1."""
    _require_fiber(N, f)
    out = [N.space.zero]
    for i in range(1, N.n):
        out.append(gf.intersect(f[i], N.image_of(N.space.perp(out[-1]))))
    return out


def u_jump_set(N: NilpotentD, f: IsotropicFlag) -> list[int]:
    us = u_sequence(N, f)
    return [i for i in range(1, len(us)) if us[i].dim > us[i - 1].dim]


def admissible_subspaces(N: NilpotentD, v: Subspace) -> list[Subspace]:
    """Brute force: every W ⊆ v with W ⊆ N(W^⊥)."""
    zero = N.space.zero
    out = []
    for k in range(v.dim + 1):
        for w in gf.enumerate_subspaces(k, zero, v):
            if w <= N.image_of(N.space.perp(w)):
                out.append(w)
    return out


def maximal_subspace_oracle(N: NilpotentD, v: Subspace) -> list[Subspace]:
    """Inclusion-maximal W ⊆ v with W ⊆ N(W^⊥); there may be several."""
    cands = admissible_subspaces(N, v)
    return [w for w in cands if not any(w != x and w <= x for x in cands)]


def maximal_flag_oracle(N: NilpotentD, f: IsotropicFlag) -> list[list[Subspace]]:
    """Every nested (W_0 ⊆ ... ⊆ W_{n-1}) with W_i inclusion-maximal in V_i."""
    levels = [[N.space.zero]] + [maximal_subspace_oracle(N, f[i]) for i in range(1, N.n)]
    chains: list[list[Subspace]] = [[]]
    for level in levels:
        chains = [c + [w] for c in chains for w in level if not c or c[-1] <= w]
    return chains


def domino_tableau_of_flag(N: NilpotentD, f: IsotropicFlag) -> DominoTableau:
    """Domino tableau whose suffix diagrams are the Jordan types of N on V_i^⊥/V_i."""
    _require_fiber(N, f)
    chain = []
    for i in range(N.n):
        top = N.space.perp(f[i])
        powers = []
        img = top
        while True:
            img = N.image_of(img)
            powers.append(img)
            if img.dim == 0:
                break
        chain.append(jordan_type(tuple(powers), f[i], top))
    chain.append(YoungDiagram(()))
    return domino_chain_to_tableau(chain)


def jump_domino_tableau(N: NilpotentD, f: IsotropicFlag) -> DominoTableau:
    jumps = u_jump_set(N, f)
    if len(jumps) != N.r:
        raise RuntimeError(f"U-jump set {jumps} has size != r = {N.r}")
    return vertical_domino_tableau(N.n, jumps)


def in_open_part_d(N: NilpotentD, f: IsotropicFlag, t: DominoTableau) -> bool:
    """dim U_i = #({p_1..p_r} ∩ [1, i]) for all i."""
    return is_in_fiber_d(N, f) and u_jump_set(N, f) == second_column_labels(t)


@dataclass(frozen=True)
class LiftD:
    small_flag: tuple[Subspace, ...]  # F_0 ⊂ ... ⊂ F_r, alpha-isotropic
    big_flag: IsotropicFlag

    def to_json(self) -> dict:
        return {"small_flag": [v.to_list() for v in self.small_flag], "big_flag": self.big_flag.to_json()}


def _sandwich_holds(N: NilpotentD, t: DominoTableau, small, big) -> bool:
    labels = labels_with_sentinels(t)
    return all(
        small[k] <= big[labels[k]] <= gf.preimage(N.matrix, small[k - 1])
        for k in range(1, N.r + 1)
    )


def xhat_lift_d(N: NilpotentD, f: IsotropicFlag, t: DominoTableau) -> LiftD:
    """F_k = U_{p_k} for f in the open part of the component of t."""
    if not in_open_part_d(N, f, t):
        raise NotInOpenPartError(f"flag is not in the open part of component {t}")
    us = u_sequence(N, f)
    labels = labels_with_sentinels(t)
    small = tuple(us[labels[k]] for k in range(N.r + 1))
    if not _sandwich_holds(N, t, small, f):
        raise RuntimeError("lift violates the incidence conditions")
    if not all(is_alpha_isotropic(N, x) for x in small):
        raise RuntimeError("lifted flag is not alpha-isotropic")
    return LiftD(small, f)


def enumerate_sp_flags(N: NilpotentD) -> Iterator[tuple[Subspace, ...]]:
    """alpha-isotropic flags F_0 ⊂ ... ⊂ F_r of Im N."""
    r = N.r

    def rec(prefix):
        k = len(prefix) - 1
        if k == r:
            yield prefix
            return
        fk = prefix[-1]
        for nxt in gf.enumerate_subspaces(k + 1, fk, alpha_orth(N, fk)):
            if is_alpha_isotropic(N, nxt):
                yield from rec(prefix + (nxt,))

    yield from rec((N.space.zero,))


def _bounds(N: NilpotentD, t: DominoTableau, small):
    labels = labels_with_sentinels(t)
    lower = {labels[k]: small[k] for k in range(1, N.r + 1)}
    upper = {labels[k]: gf.preimage(N.matrix, small[k - 1]) for k in range(1, N.r + 1)}
    return lower, upper


def enumerate_schubert_w_d(N: NilpotentD, t: DominoTableau, small) -> Iterator[IsotropicFlag]:
    lower, upper = _bounds(N, t, small)
    for flag in enumerate_isotropic_flags(N.space, lower, upper):
        yield IsotropicFlag(flag)


def enumerate_schubert_v_d(N: NilpotentD, t: DominoTableau, small) -> Iterator[IsotropicFlag]:
    lower, _ = _bounds(N, t, small)
    for flag in enumerate_isotropic_flags(N.space, lower):
        yield IsotropicFlag(flag)


def enumerate_xhat_d(N: NilpotentD, t: DominoTableau) -> Iterator[LiftD]:
    if t.shape != N.shape:
        raise ValueError("tableau shape differs from λ(N)")
    for small in enumerate_sp_flags(N):
        for big in enumerate_schubert_w_d(N, t, small):
            yield LiftD(small, big)


def y_membership_d(N: NilpotentD, f: IsotropicFlag, L: Subspace, t: DominoTableau) -> bool:
    """dim(L ∩ V_{p_k}) >= k for all k, L an alpha-Lagrangian of Im N."""
    if L.dim != N.r or not L <= N.im or not is_alpha_isotropic(N, L):
        raise NotLagrangianError("L is not an alpha-Lagrangian subspace of Im N")
    labels = labels_with_sentinels(t)
    return all(gf.intersect(L, f[labels[k]]).dim >= k for k in range(1, len(labels) - 1))


def admissible_tableaux_d(N: NilpotentD) -> list[DominoTableau]:
    return [t for t in enumerate_domino_tableaux(N.shape) if is_admissible(t)]
