"""Young diagrams, decreasing standard tableaux and standard domino tableaux.

All tableaux use the decreasing convention: labels decrease along rows
(left to right) and down columns, so the boxes carrying labels > i form a
Young diagram lambda^(i) for every i.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Box = tuple[int, int]

__all__ = [
    "YoungDiagram",
    "StandardTableau",
    "DominoTableau",
    "TableauError",
    "two_column_shape",
    "domino_two_column_shape",
    "enumerate_standard_tableaux",
    "enumerate_two_column_tableaux",
    "second_column_labels",
    "labels_with_sentinels",
    "tableau_to_chain",
    "chain_to_tableau",
    "tableau_from_second_column",
    "enumerate_domino_tableaux",
    "is_admissible",
    "is_admissible_partition",
    "vertical_domino_tableau",
    "domino_chain_to_tableau",
    "two_column_domino_check",
    "DominoCheckReport",
]


class TableauError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class YoungDiagram:
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(x) for x in self.rows)
        if any(x <= 0 for x in rows) or any(a < b for a, b in zip(rows, rows[1:])):
            raise TableauError(f"not a partition: {rows}")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def columns(self) -> tuple[int, ...]:
        """Column heights (the conjugate partition)."""
        if not self.rows:
            return ()
        return tuple(sum(1 for x in self.rows if x > j) for j in range(self.rows[0]))

    def boxes(self) -> list[Box]:
        return [(i, j) for i, length in enumerate(self.rows) for j in range(length)]

    def corners(self) -> list[Box]:
        """Boxes whose removal leaves a Young diagram, top to bottom."""
        rows = self.rows
        return [
            (i, rows[i] - 1)
            for i in range(len(rows))
            if i + 1 == len(rows) or rows[i + 1] < rows[i]
        ]

    def removable_dominoes(self) -> list[tuple[Box, Box]]:
        """Pairs of adjacent boxes whose removal leaves a Young diagram."""
        rows = list(self.rows) + [0, 0]
        out = []
        for i in range(len(self.rows)):
            # horizontal: last two boxes of row i
            if rows[i] >= 2 and rows[i] - 2 >= rows[i + 1]:
                out.append(((i, rows[i] - 2), (i, rows[i] - 1)))
            # vertical: last boxes of rows i and i+1 in the same column
            if i + 1 < len(self.rows) and rows[i] == rows[i + 1] and rows[i + 1] - 1 >= rows[i + 2]:
                out.append(((i, rows[i] - 1), (i + 1, rows[i] - 1)))
        return out

    def without(self, boxes: Iterable[Box]) -> "YoungDiagram":
        rows = list(self.rows)
        for i, _ in boxes:
            rows[i] -= 1
        out = YoungDiagram(tuple(x for x in rows if x))
        if set(out.boxes()) != set(self.boxes()) - set(boxes):
            raise TableauError("removal does not leave a Young diagram")
        return out

    def is_admissible(self) -> bool:
        return is_admissible_partition(self.rows)

    @classmethod
    def from_boxes(cls, boxes: Iterable[Box]) -> "YoungDiagram":
        boxes = set(boxes)
        counts = Counter(i for i, _ in boxes)
        rows = tuple(counts[i] for i in range(len(counts)))
        diagram = cls(rows) if all(counts[i] for i in range(len(counts))) else None
        if diagram is None or set(diagram.boxes()) != boxes:
            raise TableauError("box set is not a Young diagram")
        return diagram


def is_admissible_partition(parts: Sequence[int]) -> bool:
    """Every even part occurs with even multiplicity."""
    return all(m % 2 == 0 for part, m in Counter(parts).items() if part % 2 == 0)


def two_column_shape(n: int, r: int) -> YoungDiagram:
    """Shape of a nilpotent with N^2 = 0 and rank r on an n-dimensional space."""
    if r < 0 or 2 * r > n:
        raise ValueError(f"need 0 <= 2r <= n, got n={n}, r={r}")
    return YoungDiagram((2,) * r + (1,) * (n - 2 * r))


def domino_two_column_shape(n: int, r: int) -> YoungDiagram:
    """2n boxes, second column of height 2r (type D, rank 2r)."""
    if r < 0 or 2 * r > n:
        raise ValueError(f"need 0 <= 2r <= n, got n={n}, r={r}")
    return YoungDiagram((2,) * (2 * r) + (1,) * (2 * n - 4 * r))


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        shape = YoungDiagram(tuple(len(row) for row in rows))
        labels = sorted(x for row in rows for x in row)
        if labels != list(range(1, shape.size + 1)):
            raise TableauError(f"labels are not 1..{shape.size}: {rows}")
        for row in rows:
            if any(a <= b for a, b in zip(row, row[1:])):
                raise TableauError(f"row not decreasing: {row}")
        for upper, lower in zip(rows, rows[1:]):
            if any(a <= b for a, b in zip(upper, lower)):
                raise TableauError(f"column not decreasing in {rows}")

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(row) for row in self.rows))

    @property
    def n(self) -> int:
        return sum(len(row) for row in self.rows)

    def position(self, label: int) -> Box:
        for i, row in enumerate(self.rows):
            if label in row:
                return i, row.index(label)
        raise KeyError(label)

    def to_json(self) -> dict:
        return {"shape": list(self.shape.rows), "entries": [list(row) for row in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "StandardTableau":
        t = cls(tuple(tuple(row) for row in data["entries"]))
        if list(t.shape.rows) != list(data["shape"]):
            raise TableauError("shape does not match entries")
        return t

    def __str__(self):
        return " / ".join(" ".join(map(str, row)) for row in self.rows)


def tableau_to_chain(t: StandardTableau) -> list[YoungDiagram]:
    """lambda^(0) ⊃ lambda^(1) ⊃ ... ⊃ lambda^(n) = ∅, lambda^(i) = labels > i."""
    n = t.n
    return [
        YoungDiagram.from_boxes(
            (i, j) for i, row in enumerate(t.rows) for j, x in enumerate(row) if x > k
        )
        for k in range(n + 1)
    ]


def chain_to_tableau(chain: Sequence[YoungDiagram]) -> StandardTableau:
    return _chain_to_tableau(tuple(chain))


@lru_cache(maxsize=4096)
def _chain_to_tableau(chain: tuple[YoungDiagram, ...]) -> StandardTableau:
    if chain[-1].size != 0:
        raise TableauError("chain must end with the empty diagram")
    shape = chain[0]
    grid = [[0] * length for length in shape.rows]
    for k in range(1, len(chain)):
        diff = set(chain[k - 1].boxes()) - set(chain[k].boxes())
        if len(diff) != 1 or not set(chain[k].boxes()) <= set(chain[k - 1].boxes()):
            raise TableauError(f"step {k} does not remove exactly one box")
        (i, j), = diff
        grid[i][j] = k
    return StandardTableau(tuple(tuple(row) for row in grid))


def enumerate_standard_tableaux(shape: YoungDiagram) -> list[StandardTableau]:
    """All decreasing standard tableaux of ``shape``; label i sits on a corner
    of lambda^(i-1), corners tried top to bottom."""
    n = shape.size
    out = []

    def rec(current: YoungDiagram, label: int, placed: dict[Box, int]):
        if label > n:
            grid = [[placed[(i, j)] for j in range(length)] for i, length in enumerate(shape.rows)]
            out.append(StandardTableau(tuple(tuple(row) for row in grid)))
            return
        for box in current.corners():
            placed[box] = label
            rec(current.without([box]), label + 1, placed)
            del placed[box]

    rec(shape, 1, {})
    return out


def enumerate_two_column_tableaux(n: int, r: int) -> list[StandardTableau]:
    """Tableaux of shape with column heights (n - r, r)."""
    if r < 0 or 2 * r > n:
        raise ValueError(f"2r > n violates Im N ⊆ Ker N (n={n}, r={r})")
    return enumerate_standard_tableaux(two_column_shape(n, r))


def second_column_labels(t: "StandardTableau | DominoTableau") -> list[int]:
    """Increasing labels in the second column (for dominoes: tiles in it)."""
    if any(len(row) > 2 for row in t.rows):
        raise TableauError("tableau has more than two columns")
    return sorted({row[1] for row in t.rows if len(row) == 2})


def labels_with_sentinels(t: "StandardTableau | DominoTableau") -> list[int]:
    """[p_0 = 0, p_1, ..., p_r, p_{r+1}] with p_{r+1} = n + 1 (type A) or 2n + 1
    (domino tableaux with n tiles)."""
    labels = second_column_labels(t)
    end = 2 * t.n + 1 if isinstance(t, DominoTableau) else t.n + 1
    return [0, *labels, end]


def tableau_from_second_column(n: int, labels: Iterable[int]) -> StandardTableau:
    """The two-column tableau whose second column holds exactly ``labels``."""
    return _from_second_column(n, tuple(labels))


@lru_cache(maxsize=4096)
def _from_second_column(n: int, labels: tuple[int, ...]) -> StandardTableau:
    second = sorted(set(labels), reverse=True)
    first = sorted(set(range(1, n + 1)) - set(second), reverse=True)
    if len(second) > len(first) or any(x not in range(1, n + 1) for x in second):
        raise TableauError(f"invalid second-column labels {sorted(second)} for n={n}")
    rows = [(first[i], second[i]) if i < len(second) else (first[i],) for i in range(len(first))]
    return StandardTableau(tuple(rows))


@dataclass(frozen=True)
class DominoTableau:
    rows: tuple[tuple[int, ...], ...]
    tiles: dict = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        shape = YoungDiagram(tuple(len(row) for row in rows))
        if shape.size % 2:
            raise TableauError("odd number of boxes")
        n = shape.size // 2
        tiles: dict[int, list[Box]] = {}
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                tiles.setdefault(x, []).append((i, j))
        if sorted(tiles) != list(range(1, n + 1)) or any(len(b) != 2 for b in tiles.values()):
            raise TableauError(f"each label 1..{n} must occupy exactly two boxes")
        for label, ((i1, j1), (i2, j2)) in tiles.items():
            if abs(i1 - i2) + abs(j1 - j2) != 1:
                raise TableauError(f"tile {label} is not a domino")
        for k in range(n + 1):
            YoungDiagram.from_boxes(b for x, bs in tiles.items() if x > k for b in bs)
        object.__setattr__(self, "tiles", {x: tuple(b) for x, b in tiles.items()})

    @property
    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(row) for row in self.rows))

    @property
    def n(self) -> int:
        return len(self.tiles)

    def is_vertical(self, label: int) -> bool:
        (_, j1), (_, j2) = self.tiles[label]
        return j1 == j2

    def chain(self) -> list[YoungDiagram]:
        return [
            YoungDiagram.from_boxes(b for x, bs in self.tiles.items() if x > k for b in bs)
            for k in range(self.n + 1)
        ]

    def to_json(self) -> dict:
        return {"shape": list(self.shape.rows), "entries": [list(row) for row in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "DominoTableau":
        t = cls(tuple(tuple(row) for row in data["entries"]))
        if list(t.shape.rows) != list(data["shape"]):
            raise TableauError("shape does not match entries")
        return t

    def __str__(self):
        return " / ".join(" ".join(map(str, row)) for row in self.rows)


def enumerate_domino_tableaux(shape: YoungDiagram) -> list[DominoTableau]:
    if shape.size % 2:
        raise TableauError(f"shape {shape.rows} has an odd number of boxes")
    n = shape.size // 2
    out = []

    def rec(current: YoungDiagram, label: int, placed: dict[Box, int]):
        if label > n:
            grid = [[placed[(i, j)] for j in range(length)] for i, length in enumerate(shape.rows)]
            out.append(DominoTableau(tuple(tuple(row) for row in grid)))
            return
        for domino in current.removable_dominoes():
            for b in domino:
                placed[b] = label
            rec(current.without(domino), label + 1, placed)
            for b in domino:
                del placed[b]

    rec(shape, 1, {})
    return out


def is_admissible(t: DominoTableau) -> bool:
    """All suffix diagrams lambda^(i) are admissible partitions."""
    return all(d.is_admissible() for d in t.chain())


def domino_chain_to_tableau(chain: Sequence[YoungDiagram]) -> DominoTableau:
    """Inverse of DominoTableau.chain; raises if a step is not a domino."""
    if chain[-1].size != 0:
        raise TableauError("chain must end with the empty diagram")
    grid = [[0] * length for length in chain[0].rows]
    for k in range(1, len(chain)):
        diff = set(chain[k - 1].boxes()) - set(chain[k].boxes())
        if len(diff) != 2 or not set(chain[k].boxes()) <= set(chain[k - 1].boxes()):
            raise TableauError(f"step {k} does not remove exactly two boxes")
        for i, j in diff:
            grid[i][j] = k
    return DominoTableau(tuple(tuple(row) for row in grid))


def vertical_domino_tableau(n: int, labels: Iterable[int]) -> DominoTableau:
    """All-vertical two-column domino tableau, ``labels`` in the second column."""
    t = tableau_from_second_column(n, labels)
    rows = []
    for row in t.rows:
        rows.extend([row, row])
    return DominoTableau(tuple(rows))


@dataclass
class DominoCheckReport:
    n: int
    r: int
    shape: YoungDiagram
    total: int
    admissible: list[DominoTableau]
    all_vertical: bool


def two_column_domino_check(n: int, r: int) -> DominoCheckReport:
    shape = domino_two_column_shape(n, r)
    tableaux = enumerate_domino_tableaux(shape)
    admissible = [t for t in tableaux if is_admissible(t)]
    vertical = all(t.is_vertical(x) for t in admissible for x in t.tiles)
    return DominoCheckReport(n, r, shape, len(tableaux), admissible, vertical)


def two_column_shapes(max_boxes: int) -> Iterator[YoungDiagram]:
    """Every diagram with at most two columns and an even, positive box count."""
    for size in range(2, max_boxes + 1, 2):
        for second in range(0, size // 2 + 1):
            first = size - second
            yield YoungDiagram((2,) * second + (1,) * (first - second))
