"""Single-mode boson words, normal ordering and coherent-state moments.

Internally a word is a string over ``"A"`` (annihilation ``a``) and ``"D"``
(creation ``a†``).  The human text syntax accepted by :func:`parse_word`
is different: tokens ``a`` and ``A``/``a+`` (``A`` meaning ``a†``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, perm
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Sequence

from .errors import BoundExceededError, ParseError
from .exact_core import exp_recursion, log_recursion, rational_to_str, to_rational

DEFAULT_MOMENT_BOUND = 10

ANNIHILATE = "A"
CREATE = "D"


@dataclass(frozen=True)
class BosonWord:
    letters: str = ""

    def __post_init__(self):
        bad = set(self.letters) - {ANNIHILATE, CREATE}
        if bad:
            raise ValueError(f"boson words use only 'A' and 'D', got {sorted(bad)}")

    def __add__(self, other: BosonWord) -> BosonWord:
        return BosonWord(self.letters + other.letters)

    def __mul__(self, k: int) -> BosonWord:
        return BosonWord(self.letters * k)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join("A" if c == CREATE else "a" for c in self.letters)


def parse_word(text: str) -> BosonWord:
    """Parse ``"A a A a"`` style text (``A``, ``a+``, ``a†`` = creation).

    Whitespace-separated tokens, or a compact run of ``a``/``A``
    characters such as ``"AaAa"``.
    """
    letters = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "A":
            letters.append(CREATE)
            i += 1
        elif c == "a":
            if text.startswith("a+", i) or text.startswith("a†", i):
                letters.append(CREATE)
                i += 2
            else:
                letters.append(ANNIHILATE)
                i += 1
        else:
            raise ParseError(f"unexpected character {c!r} in boson word", i)
    return BosonWord("".join(letters))


class NormalForm:
    """Sum of ``c_ij (a†)^i a^j`` with integer coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("powers must be non-negative")
            if c:
                clean[(int(i), int(j))] = int(c)
        self._terms = MappingProxyType(dict(sorted(clean.items())))

    @property
    def terms(self) -> Mapping[tuple[int, int], int]:
        return self._terms

    @classmethod
    def identity(cls) -> NormalForm:
        return cls({(0, 0): 1})

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        return f"NormalForm({dict(self._terms)})"

    def __add__(self, other: NormalForm) -> NormalForm:
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return NormalForm(out)

    def __mul__(self, other: NormalForm) -> NormalForm:
        return normal_mul(self, other)

    def scale(self, c: int) -> NormalForm:
        return NormalForm({k: c * v for k, v in self._terms.items()})

    def to_json(self) -> dict:
        return {
            "terms": [
                {"create": i, "annihilate": j, "coeff": str(c)}
                for (i, j), c in self._terms.items()
            ]
        }


def normal_order(word: BosonWord | str) -> NormalForm:
    """Normal-order a word by repeatedly rewriting ``a a† -> a† a + 1``."""
    if isinstance(word, str):
        word = BosonWord(word)
    pending: dict[str, int] = {word.letters: 1}
    done: dict[tuple[int, int], int] = {}
    while pending:
        w, c = pending.popitem()
        pos = w.find(ANNIHILATE + CREATE)
        if pos < 0:
            key = (w.count(CREATE), w.count(ANNIHILATE))
            done[key] = done.get(key, 0) + c
            continue
        swapped = w[:pos] + CREATE + ANNIHILATE + w[pos + 2:]
        contracted = w[:pos] + w[pos + 2:]
        pending[swapped] = pending.get(swapped, 0) + c
        pending[contracted] = pending.get(contracted, 0) + c
    return NormalForm(done)


def forget_normal_order(expr: Any) -> NormalForm:
    """Move every ``a†`` left of every ``a`` without commutator terms.

    ``expr`` is a word, a mapping word -> coefficient, an iterable of
    ``(coeff, word)`` pairs, or a :class:`NormalForm` (returned unchanged).
    """
    if isinstance(expr, NormalForm):
        return expr
    if isinstance(expr, (BosonWord, str)):
        expr = {expr: 1}
    items = expr.items() if isinstance(expr, Mapping) else ((w, c) for c, w in expr)
    out: dict[tuple[int, int], int] = {}
    for w, c in items:
        letters = w.letters if isinstance(w, BosonWord) else BosonWord(w).letters
        key = (letters.count(CREATE), letters.count(ANNIHILATE))
        out[key] = out.get(key, 0) + int(c)
    return NormalForm(out)


def normal_mul(f: NormalForm, g: NormalForm) -> NormalForm:
    """Operator product of two normal forms, re-normal-ordered.

    ``(a†^i a^j)(a†^k a^l) = sum_m C(j,m) k!/(k-m)! a†^(i+k-m) a^(j+l-m)``.
    """
    out: dict[tuple[int, int], int] = {}
    for (i, j), c in f.terms.items():
        for (k, l), d in g.terms.items():
            for m in range(min(j, k) + 1):
                key = (i + k - m, j + l - m)
                out[key] = out.get(key, 0) + c * d * comb(j, m) * perm(k, m)
    return NormalForm(out)


def normal_power(f: NormalForm, n: int) -> NormalForm:
    result = NormalForm.identity()
    for _ in range(n):
        result = normal_mul(result, f)
    return result


class ZPolynomial:
    """Polynomial in commuting indeterminates ``zb`` (z̄) and ``z``.

    Keys are ``(p, q)`` for ``zb^p z^q``; values are Fractions.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Any] | None = None):
        clean = {}
        for (p, q), c in (terms or {}).items():
            c = to_rational(c)
            if c:
                clean[(int(p), int(q))] = c
        self._terms = MappingProxyType(dict(sorted(clean.items())))

    @property
    def terms(self) -> Mapping[tuple[int, int], Fraction]:
        return self._terms

    @classmethod
    def constant(cls, c: Any) -> ZPolynomial:
        return cls({(0, 0): c})

    @classmethod
    def zero(cls) -> ZPolynomial:
        return cls()

    @classmethod
    def one(cls) -> ZPolynomial:
        return cls.constant(1)

    @classmethod
    def from_y(cls, coeffs: Sequence[Any]) -> ZPolynomial:
        """``sum coeffs[k] y^k`` with ``y = zb z``."""
        return cls({(k, k): c for k, c in enumerate(coeffs)})

    def is_number_conserving(self) -> bool:
        return all(p == q for p, q in self._terms)

    def y_coeffs(self) -> list[Fraction]:
        """Coefficients in ``y = |z|^2``; only for number-conserving polynomials."""
        if not self.is_number_conserving():
            raise ValueError("polynomial is not a function of y = zb*z alone")
        if not self._terms:
            return [Fraction(0)]
        top = max(p for p, _ in self._terms)
        return [self._terms.get((k, k), Fraction(0)) for k in range(top + 1)]

    def evaluate(self, z: complex) -> complex:
        return sum(complex(c) * z.conjugate() ** p * z ** q for (p, q), c in self._terms.items())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ZPolynomial.constant(other)
        if not isinstance(other, ZPolynomial):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"ZPolynomial({format_zpoly(self)!r})"

    def __add__(self, other) -> ZPolynomial:
        if not isinstance(other, ZPolynomial):
            other = ZPolynomial.constant(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return ZPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> ZPolynomial:
        return ZPolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> ZPolynomial:
        if not isinstance(other, ZPolynomial):
            other = ZPolynomial.constant(other)
        return self + (-other)

    def __mul__(self, other) -> ZPolynomial:
        if isinstance(other, (int, Fraction)):
            return ZPolynomial({k: other * c for k, c in self._terms.items()})
        if not isinstance(other, ZPolynomial):
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (p, q), c in self._terms.items():
            for (r, s), d in other._terms.items():
                key = (p + r, q + s)
                out[key] = out.get(key, 0) + c * d
        return ZPolynomial(out)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {
            "terms": [
                {"zbar": p, "z": q, "coeff": rational_to_str(c)}
                for (p, q), c in self._terms.items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping | Any) -> ZPolynomial:
        """Accept the ``{"terms": [...]}`` schema or a bare rational."""
        if isinstance(data, Mapping):
            return cls({(int(t["zbar"]), int(t["z"])): to_rational(t["coeff"]) for t in data["terms"]})
        return cls.constant(to_rational(data))


def format_zpoly(poly: ZPolynomial) -> str:
    """Stable text rendering: ``y`` for ``zb z`` when number-conserving."""
    if not poly.terms:
        return "0"
    parts = []
    diag = poly.is_number_conserving()
    for (p, q), c in poly.terms.items():
        if diag:
            factors = [] if p == 0 else ["y" if p == 1 else f"y^{p}"]
        else:
            factors = []
            if p:
                factors.append("zb" if p == 1 else f"zb^{p}")
            if q:
                factors.append("z" if q == 1 else f"z^{q}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        elif c == -1:
            parts.append("-" + "*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts).replace("+ -", "- ")


def coherent_expectation(f: NormalForm) -> ZPolynomial:
    """``<z| f |z>``: replace ``a†^i a^j`` by ``zb^i z^j``."""
    return ZPolynomial({(i, j): c for (i, j), c in f.terms.items()})


def word_moments(
    w: BosonWord | str,
    N: int,
    bound: int = DEFAULT_MOMENT_BOUND,
) -> list[ZPolynomial]:
    """``W_n = <z| w^n |z>`` for ``n = 0..N``."""
    if isinstance(w, str):
        w = BosonWord(w)
    if N < 0:
        raise ValueError("N must be non-negative")
    if N > bound:
        raise BoundExceededError("word_moments", N, bound)
    base = normal_order(w)
    power = NormalForm.identity()
    out = [coherent_expectation(power)]
    for _ in range(N):
        power = normal_mul(power, base)
        out.append(coherent_expectation(power))
    return out


def _as_zpoly(x) -> ZPolynomial:
    return x if isinstance(x, ZPolynomial) else ZPolynomial.constant(x)


def moments_to_cumulants(W: Sequence[Any]) -> list[ZPolynomial]:
    """Cumulants ``[V_1, ..., V_N]`` from moments ``[W_0, ..., W_N]``.

    Entries may be ZPolynomials or plain rationals.  Requires ``W_0 == 1``.
    """
    W = [_as_zpoly(w) for w in W]
    if not W or W[0] != ZPolynomial.one():
        raise ValueError("moments must start with W_0 == 1")
    V = log_recursion(W, ZPolynomial.zero())
    return V[1:]


def cumulants_to_moments(V: Sequence[Any]) -> list[ZPolynomial]:
    """Moments ``[W_0, ..., W_N]`` from cumulants ``[V_1, ..., V_N]``."""
    f = [ZPolynomial.zero()] + [_as_zpoly(v) for v in V]
    return exp_recursion(f, ZPolynomial.one())


@dataclass(frozen=True)
class MomentCumulantPair:
    W: tuple[ZPolynomial, ...]
    V: tuple[ZPolynomial, ...]

    def __post_init__(self):
        if len(self.W) != len(self.V) + 1:
            raise ValueError("need len(W) == len(V) + 1")
        if tuple(cumulants_to_moments(self.V)) != tuple(self.W):
            raise ValueError("W and V are not related by the exponential formula")

    @classmethod
    def from_moments(cls, W: Sequence[Any]) -> MomentCumulantPair:
        W = tuple(_as_zpoly(w) for w in W)
        return cls(W, tuple(moments_to_cumulants(W)))


def free_boson_partition_function(beta_eps: float) -> float:
    """``Z = 1 / (1 - exp(-beta*eps))`` for ``H = eps a†a``."""
    if not beta_eps > 0:
        raise ValueError("beta_eps must be positive; the trace diverges otherwise")
    return -1.0 / math.expm1(-beta_eps)


def geometric_trace(beta_eps: float, tol: float = 1e-18) -> float:
    """``sum_n exp(-beta_eps n)`` over number states, summed until terms drop below tol."""
    if not beta_eps > 0:
        raise ValueError("beta_eps must be positive")
    total, n = 0.0, 0
    while True:
        term = math.exp(-beta_eps * n)
        total += term
        if term < tol:
            return total
        n += 1
