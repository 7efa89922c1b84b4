"""Stirling numbers, Bell numbers and polynomials, set and integer partitions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator

from .errors import BoundExceededError

DEFAULT_SET_PARTITION_BOUND = 9
DEFAULT_INTEGER_PARTITION_BOUND = 30


@dataclass(frozen=True, order=True)
class IntegerPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts) -> IntegerPartition:
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


@dataclass(frozen=True)
class SetPartition:
    """Blocks of ``{1..n}``, each a sorted tuple, ordered by minimum element."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if any(not b for b in blocks):
            raise ValueError("blocks must be non-empty")
        flat = [x for b in blocks for x in b]
        if sorted(flat) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks do not partition 1..{self.n}: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_rgs(cls, rgs) -> SetPartition:
        """Build from a restricted growth string (0-based block labels)."""
        blocks: dict[int, list[int]] = {}
        for i, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(i)
        return cls(len(rgs), tuple(tuple(b) for b in blocks.values()))

    def rgs(self) -> tuple[int, ...]:
        label = [0] * self.n
        for j, b in enumerate(self.blocks):
            for x in b:
                label[x - 1] = j
        return tuple(label)

    def block_type(self) -> IntegerPartition:
        return IntegerPartition.of(len(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Number of partitions of an n-set into exactly k non-empty blocks."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs non-negative arguments")
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def bell_number(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))


def bell_polynomial(n: int) -> list[Fraction]:
    """Coefficients ``[S(n,0), ..., S(n,n)]`` of ``B_n(y)`` in powers of y."""
    return [Fraction(stirling2(n, k)) for k in range(n + 1)]


def _check_bound(what: str, n: int, bound: int) -> None:
    if n < 0:
        raise ValueError(f"{what}: n must be non-negative")
    if n > bound:
        raise BoundExceededError(what, n, bound)


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All RGS of length n in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    yield from rec(1, 0)


def enumerate_set_partitions(n: int, bound: int = DEFAULT_SET_PARTITION_BOUND) -> list[SetPartition]:
    _check_bound("enumerate_set_partitions", n, bound)
    return [SetPartition.from_rgs(r) for r in restricted_growth_strings(n)]


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first, *rest)


def enumerate_integer_partitions(
    n: int, bound: int = DEFAULT_INTEGER_PARTITION_BOUND
) -> list[IntegerPartition]:
    """Partitions of n in reverse lexicographic order, ``[n]`` first."""
    _check_bound("enumerate_integer_partitions", n, bound)
    return [IntegerPartition(p) for p in _partitions(n, n)]


def partition_type_multiplicity(lam: IntegerPartition) -> int:
    """Number of set partitions of ``{1..n}`` with block sizes ``lam``."""
    denom = prod(factorial(p) for p in lam.parts) * prod(
        factorial(m) for m in lam.multiplicities().values()
    )
    return factorial(lam.n) // denom
