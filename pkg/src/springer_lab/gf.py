"""Exact linear algebra over prime fields.

Vectors are tuples of residues in ``[0, p)``.  A :class:`Subspace` always
stores its reduced row-echelon basis, so two subspaces are equal exactly
when their representations are equal, and they can be used as dict keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from sympy import isprime

Vector = tuple[int, ...]

__all__ = [
    "PrimeField",
    "MatrixFp",
    "Subspace",
    "AmbientMismatchError",
    "DegenerateFormError",
    "ContainmentError",
    "rref",
    "span",
    "zero_space",
    "full_space",
    "subspace_sum",
    "intersect",
    "image",
    "kernel",
    "preimage",
    "solve",
    "orth_complement",
    "bilinear",
    "enumerate_subspaces",
    "gaussian_binomial",
    "all_vectors",
]


class AmbientMismatchError(ValueError):
    pass


class DegenerateFormError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise ValueError(f"{self.p!r} is not a prime")

    def require_odd(self) -> "PrimeField":
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported here")
        return self


@dataclass(frozen=True)
class MatrixFp:
    """A dense matrix over F_p acting on column vectors."""

    p: int
    rows: tuple[Vector, ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], p: int) -> "MatrixFp":
        return cls(p, tuple(tuple(x % p for x in row) for row in rows))

    @classmethod
    def zeros(cls, n: int, m: int, p: int) -> "MatrixFp":
        return cls(p, tuple((0,) * m for _ in range(n)))

    @classmethod
    def identity(cls, n: int, p: int) -> "MatrixFp":
        return cls(p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @cached_property
    def _hash(self) -> int:
        return hash((self.p, self.rows))

    def __hash__(self):
        return self._hash

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def apply(self, v: Sequence[int]) -> Vector:
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in self.rows)

    def transpose(self) -> "MatrixFp":
        return MatrixFp(self.p, tuple(zip(*self.rows)))

    def __matmul__(self, other: "MatrixFp") -> "MatrixFp":
        if self.shape[1] != other.shape[0]:
            raise AmbientMismatchError("inner dimensions differ")
        cols = other.transpose().rows
        p = self.p
        return MatrixFp(
            p,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols)
                for row in self.rows
            ),
        )

    def __neg__(self) -> "MatrixFp":
        return MatrixFp.from_rows(((-x for x in row) for row in self.rows), self.p)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.p, self.shape[1]))

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


class Subspace:
    """Row space of a reduced row-echelon basis in F_p^m."""

    __slots__ = ("p", "ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, p: int, ambient_dim: int, basis: tuple[Vector, ...]):
        # basis must already be canonical; use span() or rref() otherwise
        self.p = p
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(_pivot(row) for row in basis)
        self._hash = hash((p, ambient_dim, basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.basis == other.basis
            and self.ambient_dim == other.ambient_dim
            and self.p == other.p
        )

    def __lt__(self, other: "Subspace") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Subspace(p={self.p}, m={self.ambient_dim}, basis={list(map(list, self.basis))})"

    def sort_key(self) -> tuple[int, ...]:
        return tuple(x for row in self.basis for x in row)

    def contains_vector(self, v: Sequence[int]) -> bool:
        return not any(_reduce(tuple(x % self.p for x in v), self.basis, self.pivots, self.p))

    def __contains__(self, v) -> bool:
        return self.contains_vector(v)

    def __le__(self, other: "Subspace") -> bool:
        return _contained(self, other)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def vectors(self) -> Iterator[Vector]:
        """All p**dim vectors of the subspace (brute force helper)."""
        p, m = self.p, self.ambient_dim
        for coeffs in itertools.product(range(p), repeat=self.dim):
            v = [0] * m
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j, x in enumerate(row):
                        v[j] += c * x
            yield tuple(x % p for x in v)

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.basis]


@lru_cache(maxsize=1 << 18)
def _contained(a: Subspace, b: Subspace) -> bool:
    _check_same(a, b)
    if a.dim > b.dim:
        return False
    return all(b.contains_vector(v) for v in a.basis)


def _pivot(row: Vector) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    raise ValueError("zero row in echelon basis")


def _reduce(v: Vector, basis, pivots, p) -> list[int]:
    v = list(v)
    for row, c in zip(basis, pivots):
        a = v[c]
        if a:
            for j in range(c, len(v)):
                v[j] = (v[j] - a * row[j]) % p
    return v


def _rref_rows(rows: Iterable[Sequence[int]], p: int, m: int) -> tuple[Vector, ...]:
    work = [[x % p for x in row] for row in rows]
    work = [row for row in work if any(row)]
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = pow(work[r][col], -1, p)
        prow = [(x * inv) % p for x in work[r]]
        work[r] = prow
        for i in range(len(work)):
            if i != r and work[i][col]:
                a = work[i][col]
                work[i] = [(x - a * y) % p for x, y in zip(work[i], prow)]
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r])


def _nullspace_rows(rows: Sequence[Sequence[int]], p: int, m: int) -> tuple[Vector, ...]:
    """Basis (canonical) of {x : row . x = 0 for every row}."""
    red = _rref_rows(rows, p, m)
    pivots = [_pivot(row) for row in red]
    free = [j for j in range(m) if j not in set(pivots)]
    vecs = []
    for f in free:
        v = [0] * m
        v[f] = 1
        for row, c in zip(red, pivots):
            v[c] = (-row[f]) % p
        vecs.append(v)
    return _rref_rows(vecs, p, m)


def rref(m: MatrixFp | Sequence[Sequence[int]], p: int | None = None, ambient_dim: int | None = None) -> Subspace:
    """Row space of ``m`` in canonical form."""
    if isinstance(m, MatrixFp):
        p, rows = m.p, m.rows
        ambient_dim = m.shape[1] if ambient_dim is None else ambient_dim
    else:
        rows = m
        if p is None:
            raise TypeError("p is required for plain row lists")
        if ambient_dim is None:
            if not rows:
                raise TypeError("ambient_dim is required for an empty row list")
            ambient_dim = len(rows[0])
    for row in rows:
        if len(row) != ambient_dim:
            raise AmbientMismatchError("row width differs from ambient dimension")
    return Subspace(p, ambient_dim, _rref_rows(rows, p, ambient_dim))


def span(vectors: Iterable[Sequence[int]], p: int, ambient_dim: int) -> Subspace:
    return rref(list(vectors), p, ambient_dim)


def zero_space(p: int, m: int) -> Subspace:
    return Subspace(p, m, ())


def full_space(p: int, m: int) -> Subspace:
    return Subspace(p, m, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))


def _check_same(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim or a.p != b.p:
        raise AmbientMismatchError(f"ambient F_{a.p}^{a.ambient_dim} vs F_{b.p}^{b.ambient_dim}")


@lru_cache(maxsize=1 << 18)
def _annihilator(a: Subspace) -> tuple[Vector, ...]:
    return _nullspace_rows(a.basis, a.p, a.ambient_dim)


@lru_cache(maxsize=1 << 18)
def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if a.dim == 0 or a is b:
        return b
    if b.dim == 0:
        return a
    return Subspace(a.p, a.ambient_dim, _rref_rows(a.basis + b.basis, a.p, a.ambient_dim))


@lru_cache(maxsize=1 << 18)
def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if a is b:
        return a
    if a.dim == 0 or b.dim == 0:
        return zero_space(a.p, a.ambient_dim)
    rows = _annihilator(a) + _annihilator(b)
    return Subspace(a.p, a.ambient_dim, _nullspace_rows(rows, a.p, a.ambient_dim))


def _check_op(N: MatrixFp, w: Subspace | None = None):
    rows, cols = N.shape
    if rows != cols:
        raise AmbientMismatchError("operator must be square")
    if w is not None and (w.ambient_dim != cols or w.p != N.p):
        raise AmbientMismatchError("operator and subspace live in different spaces")


@lru_cache(maxsize=1 << 18)
def image(N: MatrixFp, w: Subspace | None = None) -> Subspace:
    """N(w); the whole image of N when ``w`` is omitted."""
    _check_op(N, w)
    m = N.shape[1]
    if w is None:
        return Subspace(N.p, m, _rref_rows(N.transpose().rows, N.p, m))
    return Subspace(N.p, m, _rref_rows([N.apply(v) for v in w.basis], N.p, m))


@lru_cache(maxsize=1 << 12)
def kernel(N: MatrixFp) -> Subspace:
    _check_op(N)
    m = N.shape[1]
    return Subspace(N.p, m, _nullspace_rows(N.rows, N.p, m))


@lru_cache(maxsize=1 << 18)
def preimage(N: MatrixFp, w: Subspace) -> Subspace:
    """N^{-1}(w) = {v : N v in w}."""
    _check_op(N, w)
    p, m = N.p, N.shape[1]
    ann = _annihilator(w)
    if not ann:
        return full_space(p, m)
    rows = [tuple(sum(y[i] * N.rows[i][j] for i in range(m)) % p for j in range(m)) for y in ann]
    return Subspace(p, m, _nullspace_rows(rows, p, m))


def solve(N: MatrixFp, v: Sequence[int]) -> Vector | None:
    """Some x with N x = v, or None when v is not in the image."""
    p = N.p
    rows, cols = N.shape
    aug = [list(N.rows[i]) + [v[i] % p] for i in range(rows)]
    red = _rref_rows(aug, p, cols + 1)
    x = [0] * cols
    for row in red:
        c = _pivot(row)
        if c == cols:
            return None
        x[c] = row[cols]
    return tuple(x)


def bilinear(form: MatrixFp, u: Sequence[int], v: Sequence[int]) -> int:
    """u^T G v."""
    p = form.p
    return sum(a * b for a, b in zip(u, form.apply(v))) % p


@lru_cache(maxsize=4096)
def _form_rank(form: MatrixFp) -> int:
    return form.rank()


@lru_cache(maxsize=1 << 18)
def orth_complement(w: Subspace, form: MatrixFp) -> Subspace:
    """{v : G(x, v) = 0 for all x in w} for a nondegenerate form G."""
    n, m = form.shape
    if n != m or m != w.ambient_dim or form.p != w.p:
        raise AmbientMismatchError("form and subspace live in different spaces")
    if _form_rank(form) != m:
        raise DegenerateFormError("bilinear form is degenerate")
    p = w.p
    rows = [tuple(sum(x[i] * form.rows[i][j] for i in range(m)) % p for j in range(m)) for x in w.basis]
    return Subspace(p, m, _nullspace_rows(rows, p, m))


def all_vectors(p: int, m: int) -> Iterator[Vector]:
    return itertools.product(range(p), repeat=m)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _echelon_forms(j: int, d: int, p: int) -> Iterator[list[list[int]]]:
    """All j x d reduced row-echelon matrices over F_p."""
    for pivots in itertools.combinations(range(d), j):
        pivot_set = set(pivots)
        slots = [(a, c) for a, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivot_set]
        for values in itertools.product(range(p), repeat=len(slots)):
            mat = [[0] * d for _ in range(j)]
            for a, pc in enumerate(pivots):
                mat[a][pc] = 1
            for (a, c), x in zip(slots, values):
                mat[a][c] = x
            yield mat


@lru_cache(maxsize=1 << 16)
def _subspaces_between(k: int, lower: Subspace, upper: Subspace) -> tuple[Subspace, ...]:
    p, m = lower.p, lower.ambient_dim
    # complement of lower inside upper
    comp: list[Vector] = []
    acc = lower
    for v in upper.basis:
        if not acc.contains_vector(v):
            comp.append(v)
            acc = Subspace(p, m, _rref_rows(acc.basis + (v,), p, m))
    j = k - lower.dim
    out = []
    for mat in _echelon_forms(j, len(comp), p):
        rows = [
            tuple(sum(c * vec[t] for c, vec in zip(coeffs, comp)) % p for t in range(m))
            for coeffs in mat
        ]
        out.append(Subspace(p, m, _rref_rows(lower.basis + tuple(rows), p, m)))
    out.sort(key=Subspace.sort_key)
    return tuple(out)


def enumerate_subspaces(k: int, lower: Subspace, upper: Subspace) -> Iterator[Subspace]:
    """Every k-dimensional S with lower <= S <= upper, once each, in lexicographic
    order of the flattened canonical basis."""
    _check_same(lower, upper)
    if not lower <= upper:
        raise ContainmentError("lower bound is not contained in upper bound")
    if not lower.dim <= k <= upper.dim:
        raise ContainmentError(f"k={k} outside [{lower.dim}, {upper.dim}]")
    return iter(_subspaces_between(k, lower, upper))
