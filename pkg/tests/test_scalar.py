from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from yangian.errors import PadeError, ParseError
from yangian.scalar import (
    Polynomial,
    Q,
    RationalFunction,
    fmt_q,
    laurent_expand,
    pade_reconstruct,
    poly_gcd,
    rational_roots,
    split_roots,
    squarefree_decomposition,
)

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=6)
root_lists = st.lists(small_q, min_size=0, max_size=4)


def P(*roots):
    return Polynomial.from_roots([Q(r) for r in roots])


def test_coercion_and_format():
    assert Q("3/6") == Q(1) / 2
    assert Q(Fraction(-2, 4)) == Q("-1/2")
    assert fmt_q(Q(4)) == "4" and fmt_q(Q("-7/3")) == "-7/3"
    with pytest.raises(ParseError):
        Q("1/x")


def test_poly_shift_examples():
    assert P(0, 1).shift(1) == Polynomial((0, 1, 1))
    assert Polynomial.constant(5).shift(3) == Polynomial.constant(5)
    assert Polynomial.u().shift(Q("1/2")) == Polynomial((Q("1/2"), 1))


def test_degree_and_zero():
    assert Polynomial().degree == -1 and Polynomial().is_zero()
    assert P(1, 2, 3).degree == 3 and P(1, 2, 3).is_monic()


@given(root_lists, small_q)
def test_shift_matches_sympy(roots, c):
    p = P(*roots)
    expected = oracles.sp.expand(oracles.sym_poly(roots).subs(oracles.u, oracles.u + oracles.sp.Rational(str(c))))
    want = [Fraction(str(x)) for x in reversed(oracles.sp.Poly(expected, oracles.u).all_coeffs())]
    got = [Fraction(int(x.numerator), int(x.denominator)) for x in p.shift(Q(c)).coeffs]
    assert got == want


@given(root_lists, root_lists)
def test_divmod_and_gcd(a, b):
    pa, pb = P(*a), P(*b)
    prod = pa * pb
    q, r = divmod(prod, pb)
    assert r.is_zero() and q == pa
    g = poly_gcd(prod, pa)
    assert g == pa.monic()


def test_rational_function_normal_form():
    f = RationalFunction(P(1, 2), P(2, 3))
    assert f.num == P(1) and f.den == P(3)
    assert f.in_L() and f.degree == 1
    assert RationalFunction(P(0), P(0)) == RationalFunction.one()


def test_laurent_examples():
    assert laurent_expand(RationalFunction(P(-1), P(0)), 3) == [1, 0, 0, 0]
    assert laurent_expand(RationalFunction(P(1), P(2)), 2) == [1, 2, 4]
    with pytest.raises(ValueError):
        laurent_expand(RationalFunction(P(1, 2), P(0)), 2)


@given(root_lists, st.integers(min_value=0, max_value=6))
def test_laurent_matches_sympy(roots, K):
    p = P(*roots)
    f = RationalFunction(p.shift(1), p)
    got = [Fraction(int(x.numerator), int(x.denominator)) for x in laurent_expand(f, K)]
    assert got == [Fraction(str(x)) for x in oracles.eigenvalues_of(roots, K)]


def test_pade_examples():
    assert pade_reconstruct([1, 2, 4, 8, 16], 2) == RationalFunction(P(1), P(2))
    assert pade_reconstruct([0, 0, 0], 1) == RationalFunction.one()
    assert pade_reconstruct([2, 2, 2, 2, 2], 2) == RationalFunction(P(-1), P(1))


def test_pade_failures():
    with pytest.raises(ValueError):
        pade_reconstruct([1, 2], 2)
    # 1/(u-1) + 1/(u-2) + 1/(u-3) has degree 3
    d = [sum(Q(b) ** k for b in (1, 2, 3)) for k in range(7)]
    with pytest.raises(PadeError):
        pade_reconstruct(d, 2)
    assert pade_reconstruct(d, 3).degree == 3


@given(root_lists, root_lists)
def test_pade_roundtrip(num, den):
    n = len(den)
    num = (num + [0] * n)[:n]
    f = RationalFunction(P(*num), P(*den))
    m = f.degree
    assert pade_reconstruct(laurent_expand(f, 2 * m + 2), m) == f


@given(root_lists, root_lists)
def test_laurent_cauchy_product(a, b):
    fa = RationalFunction(P(*a).shift(1), P(*a))
    fb = RationalFunction(P(*b).shift(1), P(*b))
    ea, eb, eab = (laurent_expand(f, 7) for f in (fa, fb, fa * fb))
    ca, cb = [Q(1)] + ea, [Q(1)] + eb
    conv = [sum(ca[i] * cb[j - i] for i in range(j + 1)) for j in range(9)]
    assert conv[1:] == eab


@given(st.lists(st.tuples(small_q, st.integers(1, 3)), max_size=3))
def test_rational_roots_with_multiplicity(cases):
    roots = {}
    for r, m in cases:
        roots[Q(r)] = roots.get(Q(r), 0) + m
    p = Polynomial.constant(1)
    for r, m in roots.items():
        p = p * Polynomial.from_roots([r] * m)
    p = p * Polynomial((1, 0, 1))  # u^2 + 1 has no rational roots
    assert rational_roots(p * Q(3)) == roots
    assert split_roots(p) is None


def test_squarefree_decomposition():
    p = P(1, 1, 2, 2, 2, 3)
    parts = {m: s for s, m in squarefree_decomposition(p)}
    assert parts == {1: P(3), 2: P(1), 3: P(2)}
    assert split_roots(P("1/3", "1/3", -2)) == [Q(-2), Q("1/3"), Q("1/3")]


def test_json_roundtrip():
    p = P("1/2", -3)
    assert Polynomial.from_json(p.to_json()) == p
