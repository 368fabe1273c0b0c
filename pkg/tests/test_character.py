from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import char_counter, frac
from yangian.character import (
    CharacterElement,
    LElement,
    Sl2Character,
    alternating_patterns,
    augmentation,
    char_alternating,
    char_formula,
    char_strings,
    char_w,
    chi,
    dimension_formula,
    direct_character,
    e_of,
    formula_exponents,
    h0_character,
    res_character,
    res_closed_form,
    x_element,
    y_element,
    z_element,
)
from yangian.errors import InexactDivision, TheoremViolation
from yangian.hw import DrinfeldPolynomial, build_irreducible
from yangian.representation import (
    dual,
    evaluation_module,
    quotient,
    restrict_module,
    submodule,
    tensor,
    trivial_module,
    twist,
)
from yangian.scalar import Polynomial, Q, RationalFunction

params = st.sampled_from(["0", "1", "-2", "1/2", "7/3"])
roots_st = st.lists(
    st.builds(lambda c, j: Q(c) + j, st.sampled_from(["0", "1/2", "-1/3"]), st.integers(-2, 2)),
    max_size=4,
)


def L(num_roots, den_roots):
    return LElement.of(Polynomial.from_roots(num_roots), Polynomial.from_roots(den_roots))


def P_ra(r, a):
    return Polynomial.from_roots([Q(a) + i for i in range(r)])


# --- the ring -----------------------------------------------------------------

def test_lelement_group():
    f = L([1, 2], [0, 5])
    assert (f * f.inverse()).is_one()
    assert f / f == LElement.one()
    assert f.residue() == (-3) - (-5)
    with pytest.raises(ValueError):
        LElement(RationalFunction(Polynomial.from_roots([0, 1]), Polynomial.from_roots([0])))


def test_exact_division_roundtrip():
    a, b = chi(0) * chi(1), chi(Q("1/2")) + chi(3)
    assert (a * b).exact_div(b) == a
    assert (a * b) / a == b
    assert (y_element(3, 0) * y_element(2, 1)).exact_div(y_element(2, 1)) == y_element(3, 0)


def test_inexact_division_raises():
    with pytest.raises(InexactDivision):
        chi(0).exact_div(chi(1))
    with pytest.raises(InexactDivision):
        (chi(0) * 3).exact_div(chi(0) * 2)


def test_division_with_irrational_roots():
    # u^2 - 2 does not split over Q, so the power-sum order is used
    g = LElement.of(Polynomial([-2, 0, 1]), Polynomial([0, 0, 1]))
    assert g.exponents() is None
    B = CharacterElement.of(g) + CharacterElement.of(x_element(1), 2)
    A = (CharacterElement.of(g, 3) + CharacterElement.one()) * B
    assert A.exact_div(B) == CharacterElement.of(g, 3) + CharacterElement.one()
    with pytest.raises(InexactDivision):
        (A + CharacterElement.one()).exact_div(B)


@given(roots_st, roots_st)
@settings(max_examples=30)
def test_division_inverts_multiplication(a, b):
    A = char_strings(DrinfeldPolynomial.from_roots(a))
    B = char_strings(DrinfeldPolynomial.from_roots(b)) + CharacterElement.of(x_element(Q("1/3")), -2)
    assert (A * B).exact_div(B) == A


def test_sl2_ring():
    z1 = z_element(1)
    assert z1 * z1 == Sl2Character({0: 1, -2: 2, -4: 1})
    assert (z1 * z_element(2)).exact_div(z1) == z_element(2)
    with pytest.raises(InexactDivision):
        z_element(2).exact_div(z_element(1))


# --- characters of modules ---------------------------------------------------

def test_direct_character_w1():
    a = Q("2/3")
    want = CharacterElement({L([a - 1], [a]): 1, L([a + 1], [a]): 1})
    assert direct_character(evaluation_module(1, a)) == want
    assert char_w(1, a) == want


def test_direct_character_trivial():
    assert direct_character(trivial_module()) == CharacterElement.one()


@given(st.integers(1, 5), params)
@settings(max_examples=25)
def test_w_characters_against_sympy(r, a):
    want = dict(oracles.eval_character(r, oracles.Fraction(a)))
    d = direct_character(evaluation_module(r, a))
    assert char_counter(d) == want
    assert char_counter(char_w(r, a)) == want
    assert augmentation(d) == r + 1


def test_e_of_examples():
    r, a = 3, Q("1/2")
    assert e_of(P_ra(r, a)) == L([a - 1], [a + r - 1])
    assert e_of(Polynomial.constant(1)).is_one()
    p, q = P_ra(2, 0), Polynomial.from_roots([Q("1/3")])
    assert e_of(p * q) == e_of(p) * e_of(q)


def test_y_element_examples():
    assert y_element(0, 5) == CharacterElement.one() == y_element(-1, 5)
    for r in range(1, 5):
        assert res_character(y_element(r, Q("1/2"))) == z_element(r)


def test_sum_reading_is_not_a_character():
    assert char_w(1, 0, reading="sum") == char_w(1, 0)
    assert char_w(3, 0, reading="sum") != direct_character(evaluation_module(3, 0))
    assert res_character(y_element(3, 0, reading="sum")) != z_element(3)


def test_char_w_examples():
    a = Q("1/4")
    assert char_w(1, a) == CharacterElement({x_element(a): 1, x_element(a + 1).inverse(): 1})
    c2 = char_w(2, a)
    assert len(c2) == 3 and set(c2.terms.values()) == {1}
    assert augmentation(char_w(4, a)) == 5


def test_char_formula_examples():
    P = DrinfeldPolynomial.from_roots([0, 1])
    assert formula_exponents(P) == {(2, Q(0)): 1}
    assert char_formula(P) == char_w(2, 0)
    assert char_formula(DrinfeldPolynomial.from_roots([])) == CharacterElement.one()
    P = DrinfeldPolynomial.from_roots([0, 1, 1])
    assert char_formula(P) == direct_character(tensor(evaluation_module(2, 0), evaluation_module(1, 1)))


def test_char_strings_examples():
    assert char_strings(DrinfeldPolynomial.from_roots([3, 4, 5])) == char_w(3, 3)
    assert char_strings(DrinfeldPolynomial.from_roots([0, 2])) == char_w(1, 0) * char_w(1, 2)


@given(roots_st)
@settings(max_examples=30)
def test_three_way_equality(roots):
    P = DrinfeldPolynomial.from_roots(roots)
    V = build_irreducible(P)
    d = direct_character(V)
    assert d == char_strings(P) == char_formula(P)
    assert augmentation(d) == dimension_formula(P) == V.dim == oracles.dim_by_strings(
        [(s.start, s.length) for s in P.decomposition.strings()]
    )
    assert res_character(d) == res_closed_form(P) == h0_character(V)


def test_alternating_examples():
    a = Q("1/2")
    assert char_alternating(1, a) == chi(a)
    assert char_alternating(2, a) == chi(a + 1) * chi(a) - CharacterElement.one()
    assert char_alternating(3, a) == chi(a + 2) * chi(a + 1) * chi(a) - chi(a) - chi(a + 2)
    assert alternating_patterns(3, 1) == [(2,), (0,)]


@pytest.mark.parametrize("r", range(1, 7))
@pytest.mark.parametrize("a", ["0", "1/2"])
def test_alternating_equals_closed_form(r, a):
    assert char_alternating(r, a) == char_w(r, a)


@pytest.mark.parametrize("r", range(0, 5))
def test_three_term_recursion(r):
    a = Q("-1/3")
    lower = char_w(r, a + 2) if r else CharacterElement.one()
    assert char_w(r + 2, a) == char_w(r + 1, a + 1) * chi(a) - lower


def test_res_examples():
    assert res_character(char_w(1, 7)) == Sl2Character({1: 1, -1: 1})
    for r in range(1, 6):
        assert res_character(char_w(r, Q("2/7"))) == Sl2Character({r - 2 * s: 1 for s in range(r + 1)})
    assert res_closed_form(DrinfeldPolynomial.from_roots([0, 1])) == Sl2Character({2: 1, 0: 1, -2: 1})
    with pytest.raises(ValueError):
        res_character(CharacterElement.of(L([Q("1/2")], [0])))


def test_dimension_formula_examples():
    assert dimension_formula(DrinfeldPolynomial.from_roots([0])) == 2
    assert dimension_formula(DrinfeldPolynomial.from_roots([5, 6])) == 3
    assert dimension_formula(DrinfeldPolynomial.from_roots([1, 2, 3])) == 4
    assert issubclass(TheoremViolation, AssertionError)


def test_multiplicativity_including_reducible():
    pairs = [
        (evaluation_module(2, 0), evaluation_module(1, 3)),
        (evaluation_module(1, 1), evaluation_module(1, 0)),
        (tensor(evaluation_module(1, 0), evaluation_module(1, 1)), evaluation_module(1, Q("1/2"))),
    ]
    for V, W in pairs:
        assert direct_character(tensor(V, W)) == direct_character(V) * direct_character(W)


@pytest.mark.parametrize("a", ["0", "1/2", "-3"])
def test_additivity_on_exact_sequences(a):
    a = Q(a)
    V = tensor(evaluation_module(1, a + 1), evaluation_module(1, a))
    S = submodule(V, [(0, 1, -1, 0)])
    assert direct_character(restrict_module(V, S)) == CharacterElement.one()
    assert direct_character(quotient(V, S)) == char_w(2, a)
    assert direct_character(V) == direct_character(quotient(V, S)) + CharacterElement.one()
    W = tensor(evaluation_module(1, a), evaluation_module(1, a + 1))
    S3 = submodule(W, [(0, 0, 0, 1)])
    assert direct_character(restrict_module(W, S3)) == char_w(2, a)
    assert direct_character(quotient(W, S3)) == CharacterElement.one()


@given(st.integers(1, 3), params)
@settings(max_examples=20)
def test_left_dual_matches_twist(r, a):
    V = evaluation_module(r, a)
    assert direct_character(dual(V, "left")) == direct_character(twist(V, -1))


def test_canonical_json_is_sorted():
    data = char_w(2, 0).to_json()
    keys = [(len(d["num"]), d["num"], d["den"]) for d in data]
    assert len(data) == 3 and all("mult" in d for d in data)
    assert CharacterElement.from_json(data) == char_w(2, 0)
    assert data == CharacterElement(dict(reversed(list(char_w(2, 0).terms.items())))).to_json()
    assert keys[0][0] <= keys[-1][0]


def test_augmentation_counts_multiplicity():
    c = CharacterElement(Counter({x_element(0): 2, x_element(1): 1}))
    assert augmentation(c) == 3 and frac(Q(3)) == 3
