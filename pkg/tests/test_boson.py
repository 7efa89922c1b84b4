import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfdiag.boson import (
    BosonWord,
    MomentCumulantPair,
    NormalForm,
    ZPolynomial,
    coherent_expectation,
    cumulants_to_moments,
    forget_normal_order,
    format_zpoly,
    free_boson_partition_function,
    geometric_trace,
    moments_to_cumulants,
    normal_mul,
    normal_order,
    normal_power,
    parse_word,
    word_moments,
)
from hopfdiag.combinatorics import bell_polynomial
from hopfdiag.errors import BoundExceededError, ParseError

words = st.text(alphabet="AD", max_size=4).map(BosonWord)


def bell_poly(n):
    return ZPolynomial.from_y(bell_polynomial(n))


def fock_matrices(dim):
    a = np.diag(np.sqrt(np.arange(1, dim)), k=1)
    return a, a.conj().T


def coherent_vector(z, dim):
    n = np.arange(dim)
    fact = np.array([math.factorial(k) for k in range(dim)], dtype=float)
    return np.exp(-abs(z) ** 2 / 2) * z**n / np.sqrt(fact)


def numeric_expectation(word, power, z, dim=60):
    """Oracle: <z| w^power |z> with truncated Fock-space matrices."""
    a, ad = fock_matrices(dim)
    op = np.eye(dim)
    for c in word.letters:
        op = op @ (a if c == "A" else ad)
    vec = coherent_vector(z, dim)
    return vec.conj() @ np.linalg.matrix_power(op, power) @ vec


# --- words and parsing ----------------------------------------------------

def test_parse_word_syntaxes():
    assert parse_word("A a A a") == BosonWord("DADA")
    assert parse_word("a A") == BosonWord("AD")
    assert parse_word("AaAa") == BosonWord("DADA")
    assert parse_word("a+ a") == BosonWord("DA")
    assert parse_word("") == BosonWord("")
    assert str(BosonWord("DADA")) == "A a A a"


def test_parse_word_error_position():
    with pytest.raises(ParseError) as err:
        parse_word("A a x")
    assert err.value.position == 4


def test_word_alphabet_is_enforced():
    with pytest.raises(ValueError):
        BosonWord("AXD")


# --- normal ordering ------------------------------------------------------

def test_normal_order_examples():
    assert normal_order("AD").terms == {(1, 1): 1, (0, 0): 1}
    assert normal_order("DADA").terms == {(2, 2): 1, (1, 1): 1}
    assert normal_order("") == NormalForm.identity()


def test_normal_order_longer_word_against_mul():
    # DDAADA = (a†^2 a^2)(a† a)
    expected = normal_mul(NormalForm({(2, 2): 1}), NormalForm({(1, 1): 1}))
    assert normal_order("DDAADA") == expected
    assert expected.terms == {(3, 3): 1, (2, 2): 2}


def test_normal_mul_examples():
    a, ad = NormalForm({(0, 1): 1}), NormalForm({(1, 0): 1})
    assert normal_mul(a, ad).terms == {(1, 1): 1, (0, 0): 1}
    n = NormalForm({(1, 1): 1})
    assert normal_mul(n, n) == normal_order("DADA")
    f = NormalForm({(2, 3): 4, (0, 1): -1})
    assert normal_mul(f, NormalForm.identity()) == f
    assert normal_mul(NormalForm.identity(), f) == f


@settings(max_examples=150, deadline=None)
@given(words, words)
def test_normal_order_is_multiplicative(u, v):
    assert normal_order(u + v) == normal_mul(normal_order(u), normal_order(v))


@settings(max_examples=80, deadline=None)
@given(words, words, words)
def test_normal_mul_associative(u, v, w):
    f, g, h = normal_order(u), normal_order(v), normal_order(w)
    assert normal_mul(normal_mul(f, g), h) == normal_mul(f, normal_mul(g, h))


def test_power_by_mul_equals_rewriting_long_word():
    w = BosonWord("ADDA")
    for n in range(5):
        assert normal_power(normal_order(w), n) == normal_order(w * n)


@pytest.mark.parametrize("word", ["AD", "DA", "ADDA", "AAD", "DAD", "DDAADA"])
def test_normal_order_matches_fock_space(word):
    w = BosonWord(word)
    z = 0.4 - 0.3j
    poly = coherent_expectation(normal_order(w))
    assert abs(poly.evaluate(z) - numeric_expectation(w, 1, z)) < 1e-10


def test_forget_normal_order():
    assert forget_normal_order("AD").terms == {(1, 1): 1}
    assert forget_normal_order("DADA").terms == {(2, 2): 1}
    assert forget_normal_order("DDAA").terms == {(2, 2): 1}
    assert forget_normal_order({BosonWord("AD"): 2, BosonWord("DA"): 3}).terms == {(1, 1): 5}
    assert forget_normal_order([(1, "AAD"), (-1, "DAA")]) == NormalForm()


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(words, st.integers(-5, 5), max_size=4))
def test_forget_is_idempotent_and_sum_preserving(expr):
    once = forget_normal_order(expr)
    assert forget_normal_order(once) == once
    assert sum(once.terms.values()) == sum(expr.values())


@settings(max_examples=60, deadline=None)
@given(words)
def test_forget_fixes_normal_words(w):
    letters = "D" * w.letters.count("D") + "A" * w.letters.count("A")
    assert forget_normal_order(letters) == normal_order(letters)


# --- expectations and moments ---------------------------------------------

def test_coherent_expectation_examples():
    assert coherent_expectation(NormalForm({(1, 1): 1})) == ZPolynomial({(1, 1): 1})
    assert coherent_expectation(normal_order("DADA")) == bell_poly(2)
    assert coherent_expectation(NormalForm({(0, 0): 5})) == ZPolynomial.constant(5)


@pytest.mark.parametrize("n", range(0, 9))
def test_number_operator_powers_give_bell_polynomials(n):
    W = word_moments("DA", n)
    assert W[n] == bell_poly(n)


def test_word_moments_examples():
    assert word_moments("DA", 3)[3] == ZPolynomial.from_y([0, 1, 3, 1])
    assert word_moments("", 5) == [ZPolynomial.one()] * 6
    assert word_moments("D", 2)[2] == ZPolynomial({(2, 0): 1})
    with pytest.raises(BoundExceededError):
        word_moments("DA", 11)


@pytest.mark.parametrize("word", ["DA", "ADA", "DDA", "AD"])
def test_word_moments_match_fock_space(word):
    w = BosonWord(word)
    z = 0.35 + 0.25j
    for n, poly in enumerate(word_moments(w, 4)):
        assert abs(poly.evaluate(z) - numeric_expectation(w, n, z)) < 1e-9


def test_cumulants_examples():
    W = [bell_poly(n) for n in range(7)]
    y = ZPolynomial({(1, 1): 1})
    assert moments_to_cumulants(W) == [y] * 6
    assert cumulants_to_moments([y] * 6) == W

    ones = [1] * 6
    V = moments_to_cumulants(ones)
    assert V == [ZPolynomial.one()] + [ZPolynomial.zero()] * 4
    assert cumulants_to_moments(V) == [ZPolynomial.one()] * 6


def test_cumulants_require_unit_zeroth_moment():
    with pytest.raises(ValueError):
        moments_to_cumulants([2, 1, 1])


def random_zpoly(rng):
    return ZPolynomial({(rng.randint(0, 2), rng.randint(0, 2)): Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                        for _ in range(3)})


def test_moment_cumulant_roundtrip_seeded():
    rng = random.Random(2024)
    for _ in range(25):
        W = [ZPolynomial.one()] + [random_zpoly(rng) for _ in range(6)]
        V = moments_to_cumulants(W)
        assert len(V) == 6
        assert cumulants_to_moments(V) == W
        V2 = [random_zpoly(rng) for _ in range(6)]
        assert moments_to_cumulants(cumulants_to_moments(V2)) == V2


def test_cumulants_against_explicit_low_order_formulas():
    rng = random.Random(5)
    W = [ZPolynomial.one()] + [random_zpoly(rng) for _ in range(3)]
    V = moments_to_cumulants(W)
    assert V[0] == W[1]
    assert V[1] == W[2] - W[1] * W[1]
    assert V[2] == W[3] - 3 * W[2] * W[1] + 2 * W[1] * W[1] * W[1]


@pytest.mark.parametrize("word", ["DA", "ADDA", "DDA", "AD", "D"])
def test_word_moments_roundtrip(word):
    pair = MomentCumulantPair.from_moments(word_moments(word, 6))
    assert list(pair.W) == cumulants_to_moments(pair.V)


def test_format_zpoly():
    assert format_zpoly(bell_poly(3)) == "y + 3*y^2 + y^3"
    assert format_zpoly(ZPolynomial({(2, 0): 1, (0, 1): -2})) == "-2*z + zb^2"
    assert format_zpoly(ZPolynomial()) == "0"


def test_zpolynomial_json_roundtrip():
    p = ZPolynomial({(1, 2): Fraction(3, 4), (0, 0): -1})
    assert ZPolynomial.from_json(p.to_json()) == p
    assert p.to_json()["terms"][1] == {"zbar": 1, "z": 2, "coeff": "3/4"}


# --- partition function ---------------------------------------------------

def test_partition_function_examples():
    assert abs(free_boson_partition_function(700) - 1.0) < 1e-12
    partial = sum(math.exp(-n) for n in range(61))
    assert abs(free_boson_partition_function(1.0) - partial) < 1e-12
    assert abs(free_boson_partition_function(math.log(2)) - 2.0) < 4 * np.finfo(float).eps
    with pytest.raises(ValueError):
        free_boson_partition_function(0.0)
    with pytest.raises(ValueError):
        free_boson_partition_function(-1.0)


@pytest.mark.parametrize("x", [0.1, 0.5, 1, 2, 5])
def test_partition_function_matches_trace(x):
    assert abs(free_boson_partition_function(x) - geometric_trace(x)) < 1e-10


def test_partition_function_matches_y_integral():
    from scipy.integrate import quad

    for x in [0.3, 1.0, 2.5]:
        integral, _ = quad(lambda y: math.exp(y * (math.exp(-x) - 1)), 0, np.inf)
        assert abs(integral - free_boson_partition_function(x)) < 1e-8
