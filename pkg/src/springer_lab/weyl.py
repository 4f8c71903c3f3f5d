"""Weyl groups of types A_{n-1}, D_n (and B_n = C_n for Poincaré polynomials).

Elements are stored in one-line notation: a permutation of 1..n for type A,
a signed permutation of 1..n for types C and D (an even number of negative
entries in type D).  Simple reflections follow Bourbaki numbering and act on
the right, so ``w * s_i`` permutes positions:

* s_i (i < n) swaps positions i and i+1;
* type D: s_n sends positions (n-1, n) from (a, b) to (-b, -a);
* type C: s_n negates position n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from .poly import QPolynomial

__all__ = [
    "WeylElement",
    "Word",
    "BruhatMaximumError",
    "SuffixExtensionError",
    "RankTooLargeError",
    "identity",
    "simple_reflection",
    "length",
    "reduced_word",
    "multiply",
    "inverse",
    "word_product",
    "is_reduced",
    "all_elements",
    "longest_element",
    "lower_ideal",
    "bruhat_leq",
    "bruhat_leq_rank_matrix",
    "bruhat_maximum",
    "poincare_polynomial",
    "schubert_point_count",
    "incidence_permutations",
    "incidence_cell_polynomial",
    "component_words",
    "suffix_extend",
]

TYPES = ("A", "C", "D")
MAX_ENUMERABLE = {"A": 8, "C": 5, "D": 5}  # largest n with W enumerated


class BruhatMaximumError(RuntimeError):
    pass


class SuffixExtensionError(ValueError):
    pass


class RankTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class WeylElement:
    type_tag: str
    data: tuple[int, ...]

    def __post_init__(self):
        if self.type_tag not in TYPES:
            raise ValueError(f"unknown type {self.type_tag!r}")
        data = tuple(int(x) for x in self.data)
        object.__setattr__(self, "data", data)
        n = len(data)
        if sorted(abs(x) for x in data) != list(range(1, n + 1)):
            raise ValueError(f"not a (signed) permutation: {data}")
        if self.type_tag == "A" and any(x < 0 for x in data):
            raise ValueError("type A elements are unsigned permutations")
        if self.type_tag == "D" and sum(x < 0 for x in data) % 2:
            raise ValueError("type D elements have an even number of sign changes")

    @property
    def n(self) -> int:
        return len(self.data)

    @property
    def rank(self) -> int:
        return self.n - 1 if self.type_tag == "A" else self.n

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return multiply(self, other)

    def __call__(self, i: int) -> int:
        return self.data[i - 1] if i > 0 else -self.data[-i - 1]

    def to_json(self) -> dict:
        return {"type": self.type_tag, "one_line": list(self.data)}

    def __str__(self):
        return f"{self.type_tag}{list(self.data)}"


@dataclass(frozen=True)
class Word:
    """Simple-reflection indices in Bourbaki numbering."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def validate(self, rank: int) -> "Word":
        if any(not 1 <= a <= rank for a in self.letters):
            raise ValueError(f"letters of {self.letters} outside [1, {rank}]")
        return self

    def without(self, positions: Iterable[int]) -> "Word":
        """Drop the letters at the given 1-based positions."""
        drop = set(positions)
        if any(not 1 <= j <= len(self) for j in drop):
            raise IndexError(f"positions {sorted(drop)} out of range for length {len(self)}")
        return Word(tuple(a for j, a in enumerate(self.letters, 1) if j not in drop))

    def to_json(self) -> list[int]:
        return list(self.letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if not text:
            return cls(())
        sep = "," if "," in text else None
        return cls(tuple(int(x) for x in (text.split(sep) if sep else list(text))))

    def __str__(self):
        return "(" + ",".join(map(str, self.letters)) + ")"


def _rank_to_n(type_tag: str, rank: int) -> int:
    return rank + 1 if type_tag == "A" else rank


def identity(type_tag: str, rank: int) -> WeylElement:
    return WeylElement(type_tag, tuple(range(1, _rank_to_n(type_tag, rank) + 1)))


def _right_simple(type_tag: str, data: tuple[int, ...], i: int) -> tuple[int, ...]:
    n = len(data)
    rank = n - 1 if type_tag == "A" else n
    if not 1 <= i <= rank:
        raise ValueError(f"simple reflection {i} outside [1, {rank}]")
    d = list(data)
    if i < n:
        d[i - 1], d[i] = d[i], d[i - 1]
    elif type_tag == "D":
        d[n - 2], d[n - 1] = -d[n - 1], -d[n - 2]
    else:
        d[n - 1] = -d[n - 1]
    return tuple(d)


def simple_reflection(type_tag: str, rank: int, i: int) -> WeylElement:
    e = identity(type_tag, rank)
    return WeylElement(type_tag, _right_simple(type_tag, e.data, i))


def multiply(u: WeylElement, w: WeylElement) -> WeylElement:
    """Composition u ∘ w, i.e. (uw)(i) = u(w(i))."""
    if u.type_tag != w.type_tag or u.n != w.n:
        raise TypeError("elements of different Weyl groups")
    return WeylElement(u.type_tag, tuple(u(x) for x in w.data))


def inverse(w: WeylElement) -> WeylElement:
    out = [0] * w.n
    for i, x in enumerate(w.data, 1):
        out[abs(x) - 1] = i if x > 0 else -i
    return WeylElement(w.type_tag, tuple(out))


@lru_cache(maxsize=None)
def _length(type_tag: str, data: tuple[int, ...]) -> int:
    """Number of positive roots sent to negative roots.

    w(ε_i) = sgn(w(i)) ε_{|w(i)|}, and a root is positive iff its
    lowest-index coefficient is positive.  Positive roots are ε_i - ε_j
    (all types), ε_i + ε_j (types C, D) with i < j, and 2ε_i (type C).
    """
    n = len(data)

    def lead(a: int, b: int, sign_b: int) -> int:
        # sign of the leading coefficient of sgn(a) ε_|a| + sign_b sgn(b) ε_|b|
        return (a > 0) * 2 - 1 if abs(a) < abs(b) else sign_b * ((b > 0) * 2 - 1)

    count = 0
    for i in range(n):
        a = data[i]
        if type_tag == "C" and a < 0:
            count += 1
        for j in range(i + 1, n):
            b = data[j]
            count += lead(a, b, -1) < 0
            if type_tag != "A":
                count += lead(a, b, 1) < 0
    return count


def length(w: WeylElement) -> int:
    return _length(w.type_tag, w.data)


@lru_cache(maxsize=None)
def _reduced_word(type_tag: str, data: tuple[int, ...]) -> tuple[int, ...]:
    rank = len(data) - 1 if type_tag == "A" else len(data)
    letters: list[int] = []
    cur = data
    while _length(type_tag, cur):
        for i in range(1, rank + 1):
            nxt = _right_simple(type_tag, cur, i)
            if _length(type_tag, nxt) < _length(type_tag, cur):
                letters.append(i)
                cur = nxt
                break
    return tuple(reversed(letters))


def reduced_word(w: WeylElement) -> Word:
    """Greedy removal of the smallest right descent; product equals w."""
    return Word(_reduced_word(w.type_tag, w.data))


def word_product(word: Word | Sequence[int], type_tag: str, rank: int) -> WeylElement:
    data = identity(type_tag, rank).data
    for i in word:
        data = _right_simple(type_tag, data, i)
    return WeylElement(type_tag, data)


def is_reduced(word: Word | Sequence[int], type_tag: str, rank: int) -> bool:
    return length(word_product(word, type_tag, rank)) == len(tuple(word))


@lru_cache(maxsize=None)
def _all_elements(type_tag: str, rank: int) -> tuple[WeylElement, ...]:
    n = _rank_to_n(type_tag, rank)
    if n > MAX_ENUMERABLE[type_tag]:
        raise RankTooLargeError(f"W({type_tag}{rank}) is too large to enumerate")
    out = []
    for perm in permutations(range(1, n + 1)):
        if type_tag == "A":
            out.append(WeylElement("A", perm))
            continue
        for signs in product((1, -1), repeat=n):
            if type_tag == "D" and signs.count(-1) % 2:
                continue
            out.append(WeylElement(type_tag, tuple(s * x for s, x in zip(signs, perm))))
    return tuple(sorted(out, key=lambda w: (length(w), w.data)))


def all_elements(type_tag: str, rank: int) -> tuple[WeylElement, ...]:
    """Every element, sorted by (length, one-line notation)."""
    return _all_elements(type_tag, rank)


def longest_element(type_tag: str, rank: int) -> WeylElement:
    return max(all_elements(type_tag, rank), key=length)


@lru_cache(maxsize=None)
def _lower_ideal(type_tag: str, data: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Products of all subwords of the fixed reduced word of w."""
    word = _reduced_word(type_tag, data)
    if not word:
        return frozenset([data])
    prefix = identity(type_tag, len(data) - 1 if type_tag == "A" else len(data)).data
    for i in word[:-1]:
        prefix = _right_simple(type_tag, prefix, i)
    below = _lower_ideal(type_tag, prefix)
    last = word[-1]
    return below | frozenset(_right_simple(type_tag, u, last) for u in below)


def lower_ideal(w: WeylElement) -> frozenset[WeylElement]:
    return frozenset(WeylElement(w.type_tag, d) for d in _lower_ideal(w.type_tag, w.data))


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Subword property on the greedy reduced word of w."""
    if u.type_tag != w.type_tag or u.n != w.n:
        raise TypeError("elements of different Weyl groups")
    return u.data in _lower_ideal(w.type_tag, w.data)


def _rank_matrix(w: WeylElement) -> list[list[int]]:
    n = w.n
    return [[sum(1 for a in range(i) if w.data[a] <= j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def bruhat_leq_rank_matrix(u: WeylElement, w: WeylElement) -> bool:
    """Type A oracle: u <= w iff #{a<=i : u(a)<=j} >= #{a<=i : w(a)<=j} for all i, j."""
    if u.type_tag != "A" or w.type_tag != "A":
        raise TypeError("rank-matrix criterion is type A only")
    ru, rw = _rank_matrix(u), _rank_matrix(w)
    return all(a >= b for row_u, row_w in zip(ru, rw) for a, b in zip(row_u, row_w))


def bruhat_maximum(elements: Iterable[WeylElement]) -> WeylElement:
    """The unique element above all others; raises if there is none."""
    elems = set(elements)
    if not elems:
        raise BruhatMaximumError("empty set has no maximum")
    top = max(elems, key=lambda w: (length(w), w.data))
    if not all(bruhat_leq(u, top) for u in elems):
        raise BruhatMaximumError(f"no Bruhat maximum among {len(elems)} elements")
    return top


def poincare_polynomial(type_tag: str, rank: int) -> QPolynomial:
    """Σ_{u ∈ W} q^{ℓ(u)}."""
    coeffs: dict[int, int] = {}
    for w in all_elements(type_tag, rank):
        coeffs[length(w)] = coeffs.get(length(w), 0) + 1
    return QPolynomial(tuple(coeffs.get(d, 0) for d in range(max(coeffs) + 1)))


def schubert_point_count(w: WeylElement) -> QPolynomial:
    """Σ_{u <= w} q^{ℓ(u)}."""
    if w.n > MAX_ENUMERABLE[w.type_tag]:
        raise RankTooLargeError(f"rank of {w} is too large")
    coeffs: dict[int, int] = {}
    for d in _lower_ideal(w.type_tag, w.data):
        ell = _length(w.type_tag, d)
        coeffs[ell] = coeffs.get(ell, 0) + 1
    return QPolynomial(tuple(coeffs.get(d, 0) for d in range(max(coeffs) + 1)))


def incidence_permutations(n: int, r: int, labels: Sequence[int], kind: str = "w") -> list[WeylElement]:
    """Relative positions u (to the reference flag) allowed by the incidences.

    On the reference flag F_k sits at index k and N^{-1}(F_{k-1}) at index
    n - r + k - 1.  F_k ⊆ V_{p_k} reads #{a <= p_k : u(a) <= k} >= k, and
    V_{p_k} ⊆ N^{-1}(F_{k-1}) reads #{a <= p_k : u(a) <= n - r + k - 1} = p_k.
    ``kind`` "w" imposes both, "v" only the first.
    """
    if kind not in ("w", "v"):
        raise ValueError("kind must be 'w' or 'v'")
    if len(labels) != r:
        raise ValueError("need r labels")
    out = []
    for u in all_elements("A", n - 1):
        ok = True
        for k, pk in enumerate(labels, 1):
            head = u.data[:pk]
            if sum(x <= k for x in head) < k:
                ok = False
            elif kind == "w" and max(head) > n - r + k - 1:
                ok = False
            if not ok:
                break
        if ok:
            out.append(u)
    return out


def incidence_cell_polynomial(n: int, r: int, labels: Sequence[int], kind: str = "w") -> QPolynomial:
    """Σ q^{ℓ(u)} over the cells allowed by the incidences."""
    out = QPolynomial()
    for u in incidence_permutations(n, r, labels, kind):
        out = out + QPolynomial.monomial(length(u))
    return out


def component_words(N, t) -> tuple[WeylElement, WeylElement]:
    """(w, v) from the F_p-points of F_w and F_v relative to the reference flag.

    Each is the Bruhat maximum of the relative positions of all enumerated
    points; the Schubert count of the result must match the enumeration.
    """
    from . import flags_a

    small = tuple(flags_a.reference_flag(N)[k] for k in range(N.r + 1))
    ref = flags_a.reference_flag(N, small)
    result = []
    for enum in (flags_a.enumerate_schubert_w, flags_a.enumerate_schubert_v):
        positions = set()
        count = 0
        for f in enum(N, t, small):
            positions.add(WeylElement("A", flags_a.relative_position(f, ref)))
            count += 1
        top = bruhat_maximum(positions)
        if schubert_point_count(top)(N.p) != count:
            raise BruhatMaximumError(
                f"Schubert count of {top} at p={N.p} differs from enumerated {count}"
            )
        result.append(top)
    w, v = result
    if not bruhat_leq(w, v):
        raise BruhatMaximumError(f"extracted w={w} is not below v={v}")
    return w, v


def suffix_extend(w_word: Word, v: WeylElement) -> Word:
    """A reduced word of v ending with w_word.

    Exists iff v = x w with ℓ(x) + ℓ(w) = ℓ(v); then the greedy reduced word
    of x is prepended.
    """
    tag, rank = v.type_tag, v.rank
    w_word.validate(rank)
    w = word_product(w_word, tag, rank)
    if length(w) != len(w_word):
        raise SuffixExtensionError(f"{w_word} is not reduced")
    if not bruhat_leq(w, v):
        raise SuffixExtensionError(f"product of {w_word} is not below {v} in Bruhat order")
    x = multiply(v, inverse(w))
    if length(x) + length(w) != length(v):
        raise SuffixExtensionError(f"no reduced word of {v} ends with {w_word}")
    out = reduced_word(x) + w_word
    assert word_product(out, tag, rank) == v and len(out) == length(v)
    return out
