"""Free commutative, cocommutative Hopf algebras on connected diagrams.

Generators are primitive: ``Δ(g) = g⊗e + e⊗g``.  Two instances ship:
``BELL`` (generators ``b_k``, one per grade) and ``DIAG`` (connected
bipartite diagrams).  Axioms and morphisms are checked exactly on all
monomials up to a grade bound.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from math import comb
from typing import Any, Callable, Mapping, Sequence, Union

from .diagrams import (
    DEFAULT_DIAGRAM_BOUND,
    BellGenerator,
    DiagDiagram,
    connected_diagrams,
    is_connected,
)
from .errors import BoundExceededError
from .exact_core import rational_to_str, to_rational

Generator = Union[BellGenerator, DiagDiagram]


def generator_key(g: Generator) -> tuple:
    if isinstance(g, BellGenerator):
        return (0, g.k)
    return (1, *g.sort_key())


def generator_to_json(g: Generator) -> dict:
    if isinstance(g, BellGenerator):
        return {"bell": g.k}
    return {"diag": g.to_json()}


def generator_from_json(data: Mapping) -> Generator:
    if "bell" in data:
        return BellGenerator(int(data["bell"]))
    if "diag" in data:
        d = DiagDiagram.from_json(data["diag"])
        if not is_connected(d):
            raise ValueError(f"DIAG generators must be connected diagrams: {d.mult}")
        return d
    raise ValueError(f"unknown generator descriptor {dict(data)!r}")


@dataclass(frozen=True)
class Monomial:
    """Multiset of generators in canonical order; empty is the unit ``e``."""

    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=generator_key)))

    @property
    def grade(self) -> int:
        return sum(g.grade for g in self.factors)

    @property
    def degree(self) -> int:
        """Number of generator factors, counted with multiplicity."""
        return len(self.factors)

    def is_unit(self) -> bool:
        return not self.factors

    def counts(self) -> list[tuple[Generator, int]]:
        c = Counter(self.factors)
        return sorted(c.items(), key=lambda kv: generator_key(kv[0]))

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.factors + other.factors)

    def sort_key(self) -> tuple:
        return (self.grade, len(self.factors), tuple(generator_key(g) for g in self.factors))

    def to_json(self) -> list:
        return [generator_to_json(g) for g in self.factors]

    def __repr__(self):
        if not self.factors:
            return "e"
        parts = []
        for g, a in self.counts():
            name = f"b{g.k}" if isinstance(g, BellGenerator) else f"D{[list(r) for r in g.mult]}"
            parts.append(name if a == 1 else f"{name}^{a}")
        return "*".join(parts)


E = Monomial()


def _clean(terms: Mapping, keyfn) -> dict:
    out = {k: Fraction(v) for k, v in terms.items() if v}
    return dict(sorted(out.items(), key=lambda kv: keyfn(kv[0])))


class HopfElement:
    """Finite rational combination of monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Any] | None = None):
        self.terms = _clean(terms or {}, Monomial.sort_key)

    @classmethod
    def of(cls, *gens: Generator, coeff: Any = 1) -> HopfElement:
        return cls({Monomial(gens): to_rational(coeff)})

    @classmethod
    def monomial(cls, m: Monomial, coeff: Any = 1) -> HopfElement:
        return cls({m: to_rational(coeff)})

    @classmethod
    def zero(cls) -> HopfElement:
        return cls()

    def __eq__(self, other):
        if not isinstance(other, HopfElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: HopfElement) -> HopfElement:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return HopfElement(out)

    def __neg__(self) -> HopfElement:
        return HopfElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: HopfElement) -> HopfElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HopfElement):
            return product(self, other)
        return HopfElement({m: c * to_rational(other) for m, c in self.terms.items()})

    def __rmul__(self, other):
        return HopfElement({m: c * to_rational(other) for m, c in self.terms.items()})

    def __pow__(self, k: int) -> HopfElement:
        out = unit()
        for _ in range(k):
            out = product(out, self)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{m!r}" for m, c in self.terms.items())

    def to_json(self) -> dict:
        return {
            "terms": [
                {"monomial": m.to_json(), "coeff": rational_to_str(c)}
                for m, c in self.terms.items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> HopfElement:
        if isinstance(data, str):
            data = json.loads(data)
        out: dict[Monomial, Fraction] = {}
        for t in data["terms"]:
            m = Monomial(tuple(generator_from_json(g) for g in t["monomial"]))
            out[m] = out.get(m, 0) + to_rational(t["coeff"])
        return cls(out)


class TensorElement:
    """Rational combination of k-tuples of monomials (k = 2 for Δ)."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms: Mapping[tuple[Monomial, ...], Any] | None = None, arity: int = 2):
        self.arity = arity
        self.terms = _clean(terms or {}, lambda key: tuple(m.sort_key() for m in key))
        if any(len(k) != arity for k in self.terms):
            raise ValueError(f"tensor keys must have length {arity}")

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, tuple(self.terms.items())))

    def __add__(self, other: TensorElement) -> TensorElement:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElement(out, self.arity)

    def __mul__(self, other: TensorElement) -> TensorElement:
        """Componentwise product in the tensor power algebra."""
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a * b for a, b in zip(k1, k2))
                out[key] = out.get(key, 0) + c1 * c2
        return TensorElement(out, self.arity)

    def swap(self) -> TensorElement:
        return TensorElement({k[::-1]: c for k, c in self.terms.items()}, self.arity)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*" + "⊗".join(repr(m) for m in k) for k, c in self.terms.items())

    def to_json(self) -> dict:
        return {
            "terms": [
                {"factors": [m.to_json() for m in k], "coeff": rational_to_str(c)}
                for k, c in self.terms.items()
            ]
        }

    @classmethod
    def pure(cls, *elements: HopfElement) -> TensorElement:
        out: dict = {}
        for combo in cartesian(*(h.terms.items() for h in elements)):
            key = tuple(m for m, _ in combo)
            coeff = Fraction(1)
            for _, c in combo:
                coeff *= c
            out[key] = out.get(key, 0) + coeff
        return cls(out, len(elements))


def unit() -> HopfElement:
    return HopfElement({E: 1})


def product(h1: HopfElement, h2: HopfElement) -> HopfElement:
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in h1.terms.items():
        for m2, c2 in h2.terms.items():
            m = m1 * m2
            out[m] = out.get(m, 0) + c1 * c2
    return HopfElement(out)


def _coproduct_monomial(m: Monomial) -> dict[tuple[Monomial, Monomial], int]:
    counts = m.counts()
    out: dict[tuple[Monomial, Monomial], int] = {}
    for split in cartesian(*(range(a + 1) for _, a in counts)):
        left, right, coeff = [], [], 1
        for (g, a), s in zip(counts, split):
            left += [g] * s
            right += [g] * (a - s)
            coeff *= comb(a, s)
        key = (Monomial(tuple(left)), Monomial(tuple(right)))
        out[key] = out.get(key, 0) + coeff
    return out


def coproduct(h: HopfElement) -> TensorElement:
    """Multiplicative extension of ``Δ(g) = g⊗e + e⊗g``."""
    out: dict = {}
    for m, c in h.terms.items():
        for key, k in _coproduct_monomial(m).items():
            out[key] = out.get(key, 0) + c * k
    return TensorElement(out)


def counit(h: HopfElement) -> Fraction:
    return h.terms.get(E, Fraction(0))


def antipode(h: HopfElement) -> HopfElement:
    return HopfElement({m: c * (-1) ** m.degree for m, c in h.terms.items()})


def is_primitive(h: HopfElement) -> bool:
    expected = TensorElement.pure(h, unit()) + TensorElement.pure(unit(), h)
    return coproduct(h) == expected


# --- tensor-level maps used by the checkers -------------------------------

def _apply_on_slot(t: TensorElement, slot: int, f: Callable[[HopfElement], Any]) -> TensorElement:
    """Apply a linear map to one tensor factor.

    ``f`` returns a HopfElement (same arity), a scalar (arity drops by one)
    or a TensorElement (arity grows by one).
    """
    out: dict = {}
    arity = t.arity
    for key, c in t.terms.items():
        img = f(HopfElement.monomial(key[slot]))
        if isinstance(img, HopfElement):
            parts = [((m,), d) for m, d in img.terms.items()]
        elif isinstance(img, TensorElement):
            arity = t.arity - 1 + img.arity
            parts = list(img.terms.items())
        else:
            arity = t.arity - 1
            parts = [((), Fraction(img))] if img else []
        for sub, d in parts:
            new = key[:slot] + tuple(sub) + key[slot + 1:]
            out[new] = out.get(new, 0) + c * d
    return TensorElement(out, arity)


def _multiply(t: TensorElement) -> HopfElement:
    out: dict[Monomial, Fraction] = {}
    for (a, b), c in t.terms.items():
        m = a * b
        out[m] = out.get(m, 0) + c
    return HopfElement(out)


def _as_element(t: TensorElement) -> HopfElement:
    """Arity-1 tensor back to an element."""
    return HopfElement({k[0]: c for k, c in t.terms.items()})


# --- the two algebras ------------------------------------------------------

@dataclass(frozen=True)
class FreeCommutativeHopfAlgebra:
    name: str
    generator_source: Callable[[int], list]
    default_bound: int

    def generators(self, n: int) -> list[Generator]:
        """Generators of grade exactly n."""
        if n < 1:
            return []
        return sorted(self.generator_source(n), key=generator_key)

    def generators_up_to(self, N: int) -> list[Generator]:
        return [g for n in range(1, N + 1) for g in self.generators(n)]

    def monomials(self, n: int, bound: int | None = None) -> list[Monomial]:
        """Basis monomials of grade exactly n."""
        bound = self.default_bound if bound is None else bound
        if n < 0:
            raise ValueError("grade must be non-negative")
        if n > bound:
            raise BoundExceededError(f"{self.name} monomials", n, bound)
        gens = self.generators_up_to(n)
        out: list[Monomial] = []

        def rec(start: int, remaining: int, acc: list):
            if remaining == 0:
                out.append(Monomial(tuple(acc)))
                return
            for i in range(start, len(gens)):
                g = gens[i]
                if g.grade <= remaining:
                    acc.append(g)
                    rec(i, remaining - g.grade, acc)
                    acc.pop()

        rec(0, n, [])
        return sorted(out, key=Monomial.sort_key)

    def monomials_up_to(self, N: int, bound: int | None = None) -> list[Monomial]:
        return [m for n in range(N + 1) for m in self.monomials(n, bound)]

    def __repr__(self):
        return self.name


BELL = FreeCommutativeHopfAlgebra("BELL", lambda n: [BellGenerator(n)], 30)
DIAG = FreeCommutativeHopfAlgebra(
    "DIAG", lambda n: connected_diagrams(n, DEFAULT_DIAGRAM_BOUND), DEFAULT_DIAGRAM_BOUND
)

ALGEBRAS = {"bell": BELL, "diag": DIAG}


def graded_dimension(algebra: FreeCommutativeHopfAlgebra | str, n: int, bound: int | None = None) -> int:
    if isinstance(algebra, str):
        algebra = ALGEBRAS[algebra.lower()]
    return len(algebra.monomials(n, bound))


# --- reports ---------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: dict | None = None

    def record(self, ok: bool, payload: Callable[[], dict]) -> None:
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = payload()

    def to_json(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.passed else "fail", "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class CheckReport:
    subject: str
    grade: int
    results: list[CheckResult] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json(self) -> dict:
        out = {
            "subject": self.subject,
            "grade": self.grade,
            "passed": self.passed,
            "results": [r.to_json() for r in self.results],
        }
        out.update(self.info)
        return out


def check_hopf_axioms(
    algebra: FreeCommutativeHopfAlgebra | str, N: int, bound: int | None = None
) -> CheckReport:
    """Exact check of the Hopf axioms on every basis monomial of grade <= N."""
    if isinstance(algebra, str):
        algebra = ALGEBRAS[algebra.lower()]
    basis = algebra.monomials_up_to(N, bound)
    e = unit()

    coassoc = CheckResult("coassociativity")
    counit_law = CheckResult("counit")
    hom = CheckResult("bialgebra_homomorphism")
    anti = CheckResult("antipode")
    cocomm = CheckResult("cocommutativity")

    hom.record(coproduct(e) == TensorElement.pure(e, e), lambda: {"monomial": E.to_json()})
    hom.record(counit(e) == 1, lambda: {"monomial": E.to_json()})

    for m in basis:
        h = HopfElement.monomial(m)
        delta = coproduct(h)

        left = _apply_on_slot(delta, 0, coproduct)
        right = _apply_on_slot(delta, 1, coproduct)
        coassoc.record(left == right, lambda: {
            "monomial": m.to_json(), "lhs": left.to_json(), "rhs": right.to_json()})

        eps_left = _as_element(_apply_on_slot(delta, 0, counit))
        eps_right = _as_element(_apply_on_slot(delta, 1, counit))
        counit_law.record(eps_left == h and eps_right == h, lambda: {
            "monomial": m.to_json(), "lhs": eps_left.to_json(), "rhs": eps_right.to_json()})

        s_left = _multiply(_apply_on_slot(delta, 0, antipode))
        s_right = _multiply(_apply_on_slot(delta, 1, antipode))
        target = counit(h) * e
        anti.record(s_left == target and s_right == target, lambda: {
            "monomial": m.to_json(), "lhs": s_left.to_json(), "rhs": s_right.to_json(),
            "expected": target.to_json()})

        cocomm.record(delta.swap() == delta, lambda: {"monomial": m.to_json()})

    for i, m1 in enumerate(basis):
        for m2 in basis[i:]:
            if m1.grade + m2.grade > N:
                continue
            h1, h2 = HopfElement.monomial(m1), HopfElement.monomial(m2)
            lhs = coproduct(product(h1, h2))
            rhs = coproduct(h1) * coproduct(h2)
            ok = lhs == rhs and counit(product(h1, h2)) == counit(h1) * counit(h2)
            hom.record(ok, lambda: {"monomials": [m1.to_json(), m2.to_json()],
                                    "lhs": lhs.to_json(), "rhs": rhs.to_json()})

    return CheckReport(algebra.name, N, [coassoc, counit_law, hom, anti, cocomm],
                       {"basis_size": len(basis)})


# --- morphisms DIAG -> BELL ------------------------------------------------

def extend_multiplicatively(phi: Mapping[Generator, HopfElement]) -> Callable[[HopfElement], HopfElement]:
    cache: dict[Monomial, HopfElement] = {}

    def on_monomial(m: Monomial) -> HopfElement:
        if m not in cache:
            out = unit()
            for g in m.factors:
                out = product(out, phi[g])
            cache[m] = out
        return cache[m]

    def apply(h: HopfElement) -> HopfElement:
        out = HopfElement()
        for m, c in h.terms.items():
            out = out + c * on_monomial(m)
        return out

    return apply


def _in_span(vectors: Sequence[dict], target: dict) -> bool:
    """Exact membership of ``target`` in the span of sparse rational vectors."""
    pivots: list[tuple[Any, dict]] = []

    def reduce(v: dict) -> dict:
        v = dict(v)
        for key, p in pivots:
            c = v.get(key)
            if c:
                for k, x in p.items():
                    v[k] = v.get(k, 0) - c * x
                v = {k: x for k, x in v.items() if x}
        return v

    for vec in vectors:
        r = reduce(vec)
        if r:
            key = min(r, key=lambda k: k.sort_key())
            lead = r[key]
            pivots.append((key, {k: x / lead for k, x in r.items()}))
    return not reduce(target)


def check_hopf_morphism(
    phi: Mapping[Generator, HopfElement],
    N: int,
    source: FreeCommutativeHopfAlgebra = DIAG,
    target: FreeCommutativeHopfAlgebra = BELL,
    check_surjective: bool = True,
) -> CheckReport:
    """Check that the multiplicative extension of ``phi`` is a Hopf morphism up to grade N."""
    missing = [g for g in source.generators_up_to(N) if g not in phi]
    if missing:
        shown = ", ".join(repr(Monomial((g,))) for g in missing[:3])
        raise ValueError(f"map is not defined on {len(missing)} generator(s) of grade <= {N}: {shown}")
    f = extend_multiplicatively(phi)
    basis = source.monomials_up_to(N)

    coalg = CheckResult("coalgebra")
    eps = CheckResult("counit")
    anti = CheckResult("antipode")
    alg = CheckResult("algebra")

    for m in basis:
        h = HopfElement.monomial(m)
        img = f(h)
        lhs = _apply_on_slot(_apply_on_slot(coproduct(h), 0, f), 1, f)
        rhs = coproduct(img)
        coalg.record(lhs == rhs, lambda: {
            "monomial": m.to_json(), "image": img.to_json(),
            "phi_tensor_phi_delta": lhs.to_json(), "delta_phi": rhs.to_json()})
        eps.record(counit(img) == counit(h), lambda: {"monomial": m.to_json(), "image": img.to_json()})
        s1, s2 = antipode(img), f(antipode(h))
        anti.record(s1 == s2, lambda: {"monomial": m.to_json(), "S_phi": s1.to_json(), "phi_S": s2.to_json()})

    for i, m1 in enumerate(basis):
        for m2 in basis[i:]:
            if m1.grade + m2.grade > N:
                continue
            h1, h2 = HopfElement.monomial(m1), HopfElement.monomial(m2)
            lhs, rhs = f(product(h1, h2)), product(f(h1), f(h2))
            alg.record(lhs == rhs, lambda: {"monomials": [m1.to_json(), m2.to_json()]})

    info: dict = {}
    if check_surjective:
        images = [f(HopfElement.monomial(m)).terms for m in basis]
        missed = [g for g in target.generators_up_to(N)
                  if not _in_span(images, HopfElement.of(g).terms)]
        info["surjective"] = not missed
        info["unreached_generators"] = [generator_to_json(g) for g in missed]
    return CheckReport(f"{source.name}->{target.name}", N, [coalg, eps, anti, alg], info)


def phi_bell(N: int) -> dict[Generator, HopfElement]:
    """``D -> b_grade(D)`` when every white spot of D has degree 1, else 0."""
    return {
        d: HopfElement.of(BellGenerator(d.grade)) if set(d.white_degrees) == {1} else HopfElement()
        for d in DIAG.generators_up_to(N)
    }


def phi_contract(N: int) -> dict[Generator, HopfElement]:
    """``D -> prod over black spots b of b_{deg b}``."""
    return {d: HopfElement.of(*(BellGenerator(s) for s in d.black_degrees))
            for d in DIAG.generators_up_to(N)}


def phi_zero(N: int) -> dict[Generator, HopfElement]:
    return {d: HopfElement() for d in DIAG.generators_up_to(N)}


def load_morphism(data: Mapping | str, N: int) -> dict[Generator, HopfElement]:
    """Read a map from JSON.

    Schema: ``{"generators": [{"diag": {"mult": ...}, "image": <HopfElement>}],
    "default": <HopfElement>}``; ``default`` (optional) covers unlisted
    generators.  Raises ValueError on schema problems or if the map stays
    partial on generators of grade <= N.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, Mapping):
        raise ValueError("morphism file must hold a JSON object")
    phi: dict[Generator, HopfElement] = {}
    try:
        for entry in data.get("generators", []):
            g = generator_from_json({"diag": entry["diag"]})
            phi[g] = HopfElement.from_json(entry["image"])
        default = data.get("default")
        default = HopfElement.from_json(default) if default is not None else None
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad morphism schema: {exc!r}") from exc
    for g in DIAG.generators_up_to(N):
        if g not in phi:
            if default is None:
                raise ValueError(f"map is partial: no image for generator {Monomial((g,))!r}")
            phi[g] = default
    return phi
