"""Bipartite diagrams of the product-formula expansion.

A :class:`DiagDiagram` is a multiplicity matrix: rows are white spots,
columns are black spots, entry ``(w, b)`` is the number of lines joining
them.  White spots of degree ``m`` carry weight ``L_m``, black spots of
degree ``s`` carry ``V_s``.  Multiplicities are counts of labelled
configurations, i.e. pairs of set partitions of the line labels.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from pathlib import Path
from typing import Any, Iterator, Mapping, Sequence

from .combinatorics import (
    IntegerPartition,
    SetPartition,
    enumerate_integer_partitions,
    partition_type_multiplicity,
    restricted_growth_strings,
)
from .errors import BoundExceededError
from .exact_core import (
    BivariatePoly,
    EGFSeries,
    apply_diff_operator,
    series_exp,
    series_log,
    to_rational,
)

DEFAULT_DIAGRAM_BOUND = 7

Matrix = tuple[tuple[int, ...], ...]


def _lexmin_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Lexicographically least row-major flattening over row/column permutations.

    Rows are placed one at a time.  Columns that agree on every placed row
    form an ordered cell; a new row is laid out by sorting its entries
    within each cell, which splits the cells.  Only rows achieving the
    least laid-out vector are branched on.
    """
    ncols = len(rows[0]) if rows else 0
    best: list[Matrix | None] = [None]

    def search(remaining: list[tuple[int, ...]], cells: list[list[int]], placed: list[tuple[int, ...]]):
        if not remaining:
            cand = tuple(placed)
            if best[0] is None or cand < best[0]:
                best[0] = cand
            return
        options = []
        for r in sorted(set(remaining)):
            laid = tuple(v for cell in cells for v in sorted(r[c] for c in cell))
            options.append((laid, r))
        least = min(laid for laid, _ in options)
        if best[0] is not None:
            depth = len(placed)
            prefix = tuple(placed) + (least,)
            if prefix > best[0][: depth + 1]:
                return
        for laid, r in options:
            if laid != least:
                continue
            new_cells = []
            for cell in cells:
                groups: dict[int, list[int]] = {}
                for c in cell:
                    groups.setdefault(r[c], []).append(c)
                new_cells.extend(groups[v] for v in sorted(groups))
            rest = list(remaining)
            rest.remove(r)
            search(rest, new_cells, placed + [laid])

    search([tuple(r) for r in rows], [list(range(ncols))], [])
    return best[0] if best[0] is not None else ()


@lru_cache(maxsize=200_000)
def _cached_lexmin(rows: Matrix) -> Matrix:
    return _lexmin_form(rows)


def _validate(rows: Sequence[Sequence[int]]) -> Matrix:
    mat = tuple(tuple(int(v) for v in r) for r in rows)
    if not mat or not mat[0]:
        raise ValueError("a diagram needs at least one white and one black spot")
    width = len(mat[0])
    if any(len(r) != width for r in mat):
        raise ValueError("ragged multiplicity matrix")
    if any(v < 0 for r in mat for v in r):
        raise ValueError("multiplicities must be non-negative")
    if any(sum(r) == 0 for r in mat):
        raise ValueError("zero row: isolated white spot")
    if any(sum(col) == 0 for col in zip(*mat)):
        raise ValueError("zero column: isolated black spot")
    return mat


@dataclass(frozen=True)
class DiagDiagram:
    """Canonical bipartite multigraph; the constructor canonicalizes."""

    mult: Matrix

    def __post_init__(self):
        mat = _validate(self.mult)
        # sorting rows and columns first gives the cache an isomorphic, smaller key set
        key = tuple(sorted(mat))
        key = tuple(zip(*sorted(zip(*key))))
        object.__setattr__(self, "mult", _cached_lexmin(key))

    @property
    def grade(self) -> int:
        return sum(map(sum, self.mult))

    @property
    def n_white(self) -> int:
        return len(self.mult)

    @property
    def n_black(self) -> int:
        return len(self.mult[0])

    @property
    def white_degrees(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.mult)

    @property
    def black_degrees(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in zip(*self.mult))

    def sort_key(self):
        return (self.grade, self.n_white, self.n_black, self.mult)

    def __lt__(self, other: DiagDiagram) -> bool:
        return self.sort_key() < other.sort_key()

    def to_json(self) -> dict:
        return {"mult": [list(r) for r in self.mult]}

    @classmethod
    def from_json(cls, data: Mapping) -> DiagDiagram:
        return cls(tuple(tuple(r) for r in data["mult"]))


def canonicalize(mult: Sequence[Sequence[int]]) -> DiagDiagram:
    return DiagDiagram(tuple(tuple(r) for r in mult))


@dataclass(frozen=True)
class BellGenerator:
    """A black spot receiving ``k`` lines from ``k`` white spots of degree 1."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("BellGenerator needs k >= 1")

    @property
    def grade(self) -> int:
        return self.k

    def as_diagram(self) -> DiagDiagram:
        return DiagDiagram(((1,),) * self.k)


@dataclass(frozen=True)
class LabelledConfiguration:
    white: SetPartition
    black: SetPartition

    def __post_init__(self):
        if self.white.n != self.black.n:
            raise ValueError("white and black partitions must share the line set")


def configuration_to_diagram(c: LabelledConfiguration) -> DiagDiagram:
    mat = [[len(set(bw) & set(bb)) for bb in c.black.blocks] for bw in c.white.blocks]
    return canonicalize(mat)


def is_connected(d: DiagDiagram) -> bool:
    nw, nb = d.n_white, d.n_black
    seen_w, seen_b = {0}, set()
    frontier = [("w", 0)]
    while frontier:
        side, i = frontier.pop()
        if side == "w":
            for b in range(nb):
                if d.mult[i][b] and b not in seen_b:
                    seen_b.add(b)
                    frontier.append(("b", b))
        else:
            for w in range(nw):
                if d.mult[w][i] and w not in seen_w:
                    seen_w.add(w)
                    frontier.append(("w", w))
    return len(seen_w) == nw and len(seen_b) == nb


class WeightedDiagramSet(Mapping[DiagDiagram, int]):
    """Grade-n diagrams with their labelled-configuration multiplicities."""

    def __init__(self, grade: int, entries: Mapping[DiagDiagram, int]):
        self.grade = grade
        self._entries = dict(sorted(entries.items(), key=lambda kv: kv[0].sort_key()))

    def __getitem__(self, d: DiagDiagram) -> int:
        return self._entries[d]

    def __iter__(self) -> Iterator[DiagDiagram]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def total(self) -> int:
        """Sum of multiplicities; grade 0 holds only the empty diagram, counted once."""
        return sum(self._entries.values()) + (1 if self.grade == 0 else 0)

    def connected(self) -> WeightedDiagramSet:
        return WeightedDiagramSet(self.grade, {d: m for d, m in self._entries.items() if is_connected(d)})

    def __repr__(self):
        return f"WeightedDiagramSet(grade={self.grade}, diagrams={len(self)}, total={self.total()})"


def _check_bound(what: str, n: int, bound: int) -> None:
    if n < 0:
        raise ValueError(f"{what}: n must be non-negative")
    if n > bound:
        raise BoundExceededError(what, n, bound)


@lru_cache(maxsize=None)
def _diag_census(n: int) -> tuple[tuple[DiagDiagram, int], ...]:
    if n == 0:
        return ()
    parts = []
    for rgs in restricted_growth_strings(n):
        parts.append((max(rgs) + 1, rgs))
    raw: Counter = Counter()
    for kw, rw in parts:
        for kb, rb in parts:
            mat = [[0] * kb for _ in range(kw)]
            for i in range(n):
                mat[rw[i]][rb[i]] += 1
            raw[tuple(map(tuple, mat))] += 1
    census: Counter = Counter()
    for mat, count in raw.items():
        census[canonicalize(mat)] += count
    return tuple(sorted(census.items(), key=lambda kv: kv[0].sort_key()))


def enumerate_diag_diagrams(n: int, bound: int = DEFAULT_DIAGRAM_BOUND) -> WeightedDiagramSet:
    """All grade-n diagrams with multiplicities; the total is ``B(n)**2``."""
    _check_bound("enumerate_diag_diagrams", n, bound)
    return WeightedDiagramSet(n, dict(_diag_census(n)))


def connected_diagrams(n: int, bound: int = DEFAULT_DIAGRAM_BOUND) -> list[DiagDiagram]:
    return list(enumerate_diag_diagrams(n, bound).connected())


def diagram_weight(d: DiagDiagram, L: Sequence[Any], V: Sequence[Any]) -> Fraction:
    """``prod_w L[deg w] * prod_b V[deg b]``; ``L[0]`` is ``L_1``."""
    def pick(seq, deg, name):
        if deg > len(seq):
            raise ValueError(f"missing weight {name}_{deg} (only {len(seq)} given)")
        return to_rational(seq[deg - 1])

    return prod(
        (pick(L, m, "L") for m in d.white_degrees), start=Fraction(1)
    ) * prod((pick(V, s, "V") for s in d.black_degrees), start=Fraction(1))


def _pad(seq: Sequence[Any], N: int) -> list[Fraction]:
    vals = [to_rational(v) for v in seq][:N]
    return vals + [Fraction(0)] * (N - len(vals))


def pfi_by_diagrams(
    N: int, L: Sequence[Any], V: Sequence[Any], bound: int = DEFAULT_DIAGRAM_BOUND
) -> EGFSeries:
    """Integrand coefficients as weighted diagram sums.

    Weights beyond the supplied lists are zero.
    """
    _check_bound("pfi_by_diagrams", N, bound)
    L, V = _pad(L, N), _pad(V, N)
    coeffs = [Fraction(1)]
    for n in range(1, N + 1):
        coeffs.append(sum((m * diagram_weight(d, L, V) for d, m in _diag_census(n)), Fraction(0)))
    return EGFSeries(N, tuple(coeffs))


def pfi_by_series(N: int, L: Sequence[Any], V: Sequence[Any]) -> EGFSeries:
    """Integrand coefficients from the differential operator acting on ``exp(sum V_s y^s/s!)``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    black = series_exp(EGFSeries.from_coeffs([0, *_pad(V, N)], N))
    G = BivariatePoly.from_y_series(black, N)
    return apply_diff_operator(_pad(L, N), G, N)


def connected_sums(
    N: int, L: Sequence[Any], V: Sequence[Any], bound: int = DEFAULT_DIAGRAM_BOUND
) -> EGFSeries:
    """Weighted sums over connected diagrams only, grade by grade (constant term 0)."""
    _check_bound("connected_sums", N, bound)
    L, V = _pad(L, N), _pad(V, N)
    coeffs = [Fraction(0)]
    for n in range(1, N + 1):
        coeffs.append(
            sum(
                (m * diagram_weight(d, L, V) for d, m in _diag_census(n) if is_connected(d)),
                Fraction(0),
            )
        )
    return EGFSeries(N, tuple(coeffs))


def connected_generating_check(
    N: int, L: Sequence[Any], V: Sequence[Any], bound: int = DEFAULT_DIAGRAM_BOUND
) -> bool:
    """True iff ``log F`` equals the connected-diagram generating function up to ``N``."""
    return series_log(pfi_by_series(N, L, V)) == connected_sums(N, L, V, bound)


def enumerate_bell_diagrams(n: int, bound: int = 30) -> list[tuple[IntegerPartition, int]]:
    """Unlabelled single-white-degree shapes of grade n with their label counts."""
    return [(lam, partition_type_multiplicity(lam)) for lam in enumerate_integer_partitions(n, bound)]


def to_dot(d: DiagDiagram, name: str = "diagram") -> str:
    lines = [f"graph {name} {{"]
    for w in range(d.n_white):
        lines.append(f"  w{w} [shape=circle style=filled fillcolor=white label=\"\"];")
    for b in range(d.n_black):
        lines.append(f"  b{b} [shape=circle style=filled fillcolor=black label=\"\"];")
    for w, row in enumerate(d.mult):
        for b, m in enumerate(row):
            for _ in range(m):
                lines.append(f"  w{w} -- b{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot_files(diagrams: Sequence[DiagDiagram], grade: int, directory: str | Path) -> list[Path]:
    """Write ``diag_n{grade}_{idx}.dot`` for each diagram, in the given order."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for idx, d in enumerate(diagrams):
        name = f"diag_n{grade}_{idx}"
        path = out / f"{name}.dot"
        path.write_text(to_dot(d, name), encoding="utf-8")
        paths.append(path)
    return paths
