"""Exact rationals and truncated exponential generating functions.

Coefficients are :class:`fractions.Fraction` throughout.  A series of
order ``N`` stores ``a_0..a_N`` where ``f(x) = sum a_n x^n / n!``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Iterable, Sequence, TypeVar

from .errors import OrderMismatchError

Rational = Fraction
R = TypeVar("R")

__all__ = [
    "Rational",
    "to_rational",
    "rational_to_str",
    "EGFSeries",
    "BivariatePoly",
    "series_add",
    "series_mul",
    "series_exp",
    "series_log",
    "exp_recursion",
    "log_recursion",
    "apply_diff_operator",
]


def to_rational(value: Any) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: a float has already lost the exact value.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        return Fraction(text)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rational_to_str(value: Fraction) -> str:
    """Canonical ``"p/q"`` text; integers print without ``/1``."""
    return str(Fraction(value))


# Generic exponential-formula recursions.  They only need ring operations,
# so the same code serves rational series and polynomial-valued sequences.

def exp_recursion(f: Sequence[R], one: R) -> list[R]:
    """Return ``g`` with ``sum g_n x^n/n! = exp(sum f_n x^n/n!)``.

    ``f[0]`` is ignored (taken to be zero).  Uses
    ``g_{n+1} = sum_k C(n,k) f_{k+1} g_{n-k}``.
    """
    order = len(f) - 1
    g: list[R] = [one]
    for n in range(order):
        acc = f[1] * g[n]
        for k in range(1, n + 1):
            acc = acc + comb(n, k) * (f[k + 1] * g[n - k])
        g.append(acc)
    return g


def log_recursion(g: Sequence[R], zero: R) -> list[R]:
    """Inverse of :func:`exp_recursion`; ``g[0]`` is assumed to be one."""
    order = len(g) - 1
    f: list[R] = [zero]
    for n in range(order):
        acc = g[n + 1]
        for k in range(n):
            acc = acc - comb(n, k) * (f[k + 1] * g[n - k])
        f.append(acc)
    return f


@dataclass(frozen=True)
class EGFSeries:
    """Exponential generating function truncated at x-order ``order``."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        coeffs = tuple(to_rational(c) for c in self.coeffs)
        if len(coeffs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients for order {self.order}, "
                f"got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Any], order: int) -> EGFSeries:
        """Build a series of the given order, zero-padding or truncating."""
        vals = [to_rational(c) for c in coeffs][: order + 1]
        vals += [Fraction(0)] * (order + 1 - len(vals))
        return cls(order, tuple(vals))

    @classmethod
    def zero(cls, order: int) -> EGFSeries:
        return cls(order, (Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> EGFSeries:
        return cls.from_coeffs([1], order)

    @classmethod
    def monomial(cls, n: int, order: int, coeff: Any = 1) -> EGFSeries:
        """The series ``coeff * x^n / n!``."""
        vals = [0] * (order + 1)
        if n <= order:
            vals[n] = coeff
        return cls.from_coeffs(vals, order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: EGFSeries) -> EGFSeries:
        return series_add(self, other)

    def __sub__(self, other: EGFSeries) -> EGFSeries:
        return series_add(self, other.scale(-1))

    def __mul__(self, other: EGFSeries) -> EGFSeries:
        return series_mul(self, other)

    def __neg__(self) -> EGFSeries:
        return self.scale(-1)

    def scale(self, c: Any) -> EGFSeries:
        c = to_rational(c)
        return EGFSeries(self.order, tuple(c * a for a in self.coeffs))

    def truncate(self, order: int) -> EGFSeries:
        if order > self.order:
            raise OrderMismatchError(
                f"cannot truncate order {self.order} series up to order {order}"
            )
        return EGFSeries(order, self.coeffs[: order + 1])

    def ordinary_coeffs(self) -> list[Fraction]:
        """Coefficients of ``x^n`` (divided by ``n!``)."""
        out, fact = [], 1
        for n, a in enumerate(self.coeffs):
            if n:
                fact *= n
            out.append(a / fact)
        return out

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [rational_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict | str) -> EGFSeries:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["order"]), tuple(to_rational(c) for c in data["coeffs"]))


def _check_orders(f: EGFSeries, g: EGFSeries) -> None:
    if f.order != g.order:
        raise OrderMismatchError(f"series orders differ: {f.order} != {g.order}")


def series_add(f: EGFSeries, g: EGFSeries) -> EGFSeries:
    _check_orders(f, g)
    return EGFSeries(f.order, tuple(a + b for a, b in zip(f.coeffs, g.coeffs)))


def series_mul(f: EGFSeries, g: EGFSeries) -> EGFSeries:
    """Binomial convolution ``c_n = sum_k C(n,k) a_k b_{n-k}``."""
    _check_orders(f, g)
    a, b = f.coeffs, g.coeffs
    out = []
    for n in range(f.order + 1):
        out.append(sum((comb(n, k) * a[k] * b[n - k] for k in range(n + 1)), Fraction(0)))
    return EGFSeries(f.order, tuple(out))


def series_exp(f: EGFSeries) -> EGFSeries:
    if f.coeffs[0] != 0:
        raise ValueError("exp requires vanishing constant term")
    return EGFSeries(f.order, tuple(exp_recursion(f.coeffs, Fraction(1))))


def series_log(f: EGFSeries) -> EGFSeries:
    if f.coeffs[0] != 1:
        raise ValueError("log requires constant term equal to 1")
    return EGFSeries(f.order, tuple(log_recursion(f.coeffs, Fraction(0))))


@dataclass(frozen=True)
class BivariatePoly:
    """``G(x, y) = sum_s G_s(x) y^s / s!`` truncated at y-order ``yorder``.

    Every ``G_s`` is an :class:`EGFSeries` of the same x-order.
    """

    yorder: int
    coeffs: tuple[EGFSeries, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if len(coeffs) != self.yorder + 1:
            raise ValueError(
                f"expected {self.yorder + 1} x-series for y-order {self.yorder}, "
                f"got {len(coeffs)}"
            )
        if len({c.order for c in coeffs}) > 1:
            raise OrderMismatchError("all x-series of a BivariatePoly must share one order")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def xorder(self) -> int:
        return self.coeffs[0].order

    @classmethod
    def from_y_series(cls, f: EGFSeries, xorder: int) -> BivariatePoly:
        """Lift a series in y alone (constant in x)."""
        return cls(f.order, tuple(EGFSeries.monomial(0, xorder, c) for c in f.coeffs))

    @classmethod
    def from_table(cls, table: Sequence[Sequence[Any]], xorder: int, yorder: int) -> BivariatePoly:
        """``table[s][n]`` is the coefficient of ``y^s/s! x^n/n!``."""
        rows = list(table)[: yorder + 1]
        rows += [[]] * (yorder + 1 - len(rows))
        return cls(yorder, tuple(EGFSeries.from_coeffs(r, xorder) for r in rows))

    def __add__(self, other: BivariatePoly) -> BivariatePoly:
        if self.yorder != other.yorder:
            raise OrderMismatchError(f"y-orders differ: {self.yorder} != {other.yorder}")
        return BivariatePoly(self.yorder, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def d_dy(self) -> BivariatePoly:
        """Shift ``y^s/s! -> y^(s-1)/(s-1)!``; the top y-coefficient becomes zero."""
        zero = EGFSeries.zero(self.xorder)
        return BivariatePoly(self.yorder, self.coeffs[1:] + (zero,))

    def at_y_zero(self) -> EGFSeries:
        return self.coeffs[0]


def apply_diff_operator(
    L: Sequence[Any],
    G: BivariatePoly,
    order: int | None = None,
) -> EGFSeries:
    """Evaluate ``exp(sum_m L_m x^m/m! d^m/dy^m) G(x, y)`` at ``y = 0``.

    ``L[0]`` is ``L_1``.  Missing trailing weights are zero.  Since ``x``
    and ``d/dy`` commute, the operator equals ``sum_n c_n x^n/n! d^n/dy^n``
    with ``c = exp(sum L_m t^m/m!)``, and ``d^n G |_{y=0}`` is ``G_n(x)``.
    """
    N = G.xorder if order is None else order
    if N > G.xorder:
        raise OrderMismatchError(f"G has x-order {G.xorder}, cannot produce order {N}")
    if G.yorder < N:
        raise OrderMismatchError(
            f"G has y-order {G.yorder} but x-order {N} needs y-order >= {N}"
        )
    weights = EGFSeries.from_coeffs([0, *L], N)
    c = series_exp(weights)
    out = []
    for k in range(N + 1):
        acc = Fraction(0)
        for n in range(k + 1):
            if c[n]:
                acc += comb(k, n) * c[n] * G.coeffs[n][k - n]
        out.append(acc)
    return EGFSeries(N, tuple(out))

