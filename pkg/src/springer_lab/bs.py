"""Bott–Samelson varieties of type A as explicit choice sequences over F_p.

A point over the word (i_1, ..., i_k) and base flag F_• is a sequence of
flags f_0 = F_•, f_1, ..., f_k where f_j agrees with f_{j-1} except in
position i_j, whose new member W_j is any i_j-space with
V_{i_j - 1} ⊂ W_j ⊂ V_{i_j + 1}.  These choices form a P¹, and the section
choice is W_j = V_{i_j} (flag unchanged).  The map to the flag variety takes
the final flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import gf
from .flags_a import CompleteFlag, NilpotentA, enumerate_small_flags, reference_flag
from .poly import QPolynomial
from .weyl import Word, poincare_polynomial

__all__ = [
    "BSWord",
    "BSPoint",
    "bs_point_count",
    "enumerate_bs_points",
    "subword_divisor",
    "embed_subword_point",
    "in_divisor",
    "xtilde_point_count",
    "enumerate_xtilde",
    "group_sizes",
]


@dataclass(frozen=True)
class BSWord:
    base_flag: CompleteFlag
    letters: Word

    def __post_init__(self):
        self.letters.validate(self.base_flag.n - 1)

    def __len__(self):
        return len(self.letters)

    def to_json(self) -> dict:
        return {"letters": self.letters.to_json(), "base_flag": self.base_flag.to_json()}


@dataclass(frozen=True)
class BSPoint:
    choices: tuple[gf.Subspace, ...]  # W_j for j = 1..k
    flags: tuple[CompleteFlag, ...]  # f_0 = base flag, ..., f_k

    @property
    def end_flag(self) -> CompleteFlag:
        return self.flags[-1]


def bs_point_count(word: BSWord | Word) -> QPolynomial:
    """(1 + q)^k: an iterated P¹-bundle over a point."""
    return QPolynomial((1, 1)) ** len(word)


def _replace(f: CompleteFlag, i: int, w: gf.Subspace) -> CompleteFlag:
    subs = list(f.subspaces)
    subs[i] = w
    return CompleteFlag(tuple(subs))


def _step_choices(f: CompleteFlag, i: int) -> Iterator[gf.Subspace]:
    return gf.enumerate_subspaces(i, f[i - 1], f[i + 1])


def enumerate_bs_points(word: BSWord) -> Iterator[BSPoint]:
    """All F_p-points, in the order induced by subspace enumeration at each step."""
    letters = word.letters.letters

    def rec(choices: tuple, flags: tuple):
        j = len(choices)
        if j == len(letters):
            yield BSPoint(choices, flags)
            return
        i = letters[j]
        for w in _step_choices(flags[-1], i):
            yield from rec(choices + (w,), flags + (_replace(flags[-1], i, w),))

    yield from rec((), (word.base_flag,))


def _check_positions(word: BSWord, J: Iterable[int]) -> frozenset[int]:
    J = frozenset(J)
    if any(not 1 <= j <= len(word) for j in J):
        raise IndexError(f"positions {sorted(J)} out of range for a word of length {len(word)}")
    return J


def subword_divisor(word: BSWord, J: Iterable[int]) -> BSWord:
    """The word with the letters at positions J removed; its points form D_J."""
    J = _check_positions(word, J)
    return BSWord(word.base_flag, word.letters.without(J))


def in_divisor(word: BSWord, point: BSPoint, J: Iterable[int]) -> bool:
    """Point lies on D_J: each step j in J takes the section choice."""
    J = _check_positions(word, J)
    letters = word.letters.letters
    return all(point.choices[j - 1] == point.flags[j - 1][letters[j - 1]] for j in J)


def embed_subword_point(word: BSWord, J: Iterable[int], point: BSPoint) -> BSPoint:
    """Insert section choices at the positions J of the parent word."""
    J = _check_positions(word, J)
    letters = word.letters.letters
    choices, flags = [], [word.base_flag]
    sub_iter = iter(point.choices)
    for j, i in enumerate(letters, 1):
        cur = flags[-1]
        w = cur[i] if j in J else next(sub_iter)
        if not cur[i - 1] <= w <= cur[i + 1] or w.dim != i:
            raise ValueError("point does not belong to the subword variety")
        choices.append(w)
        flags.append(_replace(cur, i, w))
    return BSPoint(tuple(choices), tuple(flags))


def xtilde_point_count(word: BSWord | Word, inner_type: str, inner_rank: int) -> QPolynomial:
    """|G ×^B F̃_u| = |G/B| · (1 + q)^k for the inner group G."""
    return poincare_polynomial(inner_type, inner_rank) * bs_point_count(word)


def enumerate_xtilde(N: NilpotentA, word: Word) -> Iterator[tuple[tuple[gf.Subspace, ...], BSPoint]]:
    """Pairs (small flag of Im N, BS point over the reference flag it determines)."""
    for small in enumerate_small_flags(N):
        base = reference_flag(N, small)
        for pt in enumerate_bs_points(BSWord(base, word)):
            yield small, pt


def group_sizes(pairs: Iterable[tuple[Sequence, object]]) -> dict:
    out: dict = {}
    for key, _ in pairs:
        out[key] = out.get(key, 0) + 1
    return out
