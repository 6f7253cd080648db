import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from grtbv.superpoly import (
    DarbouxSpace,
    SpaceMismatch,
    SuperPolynomial,
    Truncation,
    bv_laplacian,
    format_polynomial,
    multiply,
    odd_bracket,
    parse_polynomial,
    partial,
    qme_residual,
    random_polynomial,
)

SPACES = [DarbouxSpace(d) for d in [(0,), (1,), (0, 1), (1, 1), (1, 0, 2), (2, -1)]]


@st.composite
def triples(draw, n=3, max_degree=4, max_hbar=0):
    sp = draw(st.sampled_from(SPACES))
    rng = draw(st.randoms(use_true_random=False))
    return sp, [
        random_polynomial(rng, sp, rng.randint(1, 4), max_degree, max_hbar=max_hbar, parity=rng.randint(0, 1))
        for _ in range(n)
    ]


def sgn(k):
    return -1 if k % 2 else 1


def test_space_bookkeeping():
    sp = DarbouxSpace((1, -1))
    assert sp.pairs == 2 and sp.size == 4
    assert sp.names == ("x1", "psi1", "x2", "psi2")
    assert sp.degrees == (1, 0, -1, 2)
    assert sp.parities == (1, 0, 1, 0)
    assert sp.index("psi2") == 3 == sp.psi(2)


def test_hand_computed_laplacian():
    for d in (0, 1):
        sp = DarbouxSpace((d,))
        t = multiply(SuperPolynomial.coordinate(sp, "x1"), SuperPolynomial.coordinate(sp, "psi1"))
        assert bv_laplacian(t) == SuperPolynomial.constant(sp, 1)


def test_odd_coordinates_square_to_zero():
    sp = DarbouxSpace((0,))
    p = SuperPolynomial.coordinate(sp, "psi1")
    assert not multiply(p, p)


@settings(max_examples=150, deadline=None)
@given(triples())
def test_product_is_associative_and_graded_commutative(data):
    _, (f, g, h) = data
    assert multiply(multiply(f, g), h) == multiply(f, multiply(g, h))
    assert multiply(f, g) == sgn(f.parity() * g.parity()) * multiply(g, f)


@settings(max_examples=150, deadline=None)
@given(triples(n=2), st.data())
def test_left_derivative_is_a_graded_derivation(data, d):
    sp, (f, g) = data
    c = d.draw(st.integers(0, sp.size - 1))
    pc = sp.parities[c]
    lhs = partial(multiply(f, g), c)
    rhs = multiply(partial(f, c), g) + sgn(pc * f.parity()) * multiply(f, partial(g, c))
    assert lhs == rhs


@settings(max_examples=200, deadline=None)
@given(triples())
def test_bv_algebra_identities(data):
    _, (f, g, h) = data
    pf, pg = f.parity(), g.parity()
    assert not bv_laplacian(bv_laplacian(f))
    lhs = bv_laplacian(multiply(f, g))
    rhs = multiply(bv_laplacian(f), g) + sgn(pf) * multiply(f, bv_laplacian(g)) + sgn(pf) * odd_bracket(f, g)
    assert lhs == rhs
    s = sgn((pf + 1) * (pg + 1))
    assert odd_bracket(f, g) == -s * odd_bracket(g, f)
    assert odd_bracket(f, odd_bracket(g, h)) == odd_bracket(odd_bracket(f, g), h) + s * odd_bracket(g, odd_bracket(f, h))


@settings(max_examples=100, deadline=None)
@given(triples(n=2))
def test_laplacian_is_a_derivation_of_the_bracket(data):
    _, (f, g) = data
    lhs = bv_laplacian(odd_bracket(f, g))
    rhs = odd_bracket(bv_laplacian(f), g) + sgn(f.parity() + 1) * odd_bracket(f, bv_laplacian(g))
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(triples(n=2))
def test_degree_bookkeeping(data):
    _, (f, g) = data
    for part_f in _homogeneous_parts(f):
        for part_g in _homogeneous_parts(g):
            b = odd_bracket(part_f, part_g)
            if b:
                assert b.degree() == part_f.degree() + part_g.degree() - 1
        lap = bv_laplacian(part_f)
        if lap:
            assert lap.degree() == part_f.degree() - 1


def _homogeneous_parts(f):
    by = {}
    for k, c in f.items():
        by.setdefault(f.term_degree(k), {})[k] = c
    return [SuperPolynomial(f.space, t, f.trunc) for t in by.values()]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SPACES), st.randoms(use_true_random=False), st.integers(0, 2))
def test_functions_of_x_alone_solve_the_qme(sp, rng, k):
    f = random_polynomial(rng, sp, 3, 4)
    xs_only = SuperPolynomial(sp, {(k, 0, e): c for (h, u, e), c in f.items() if not any(e[1::2])})
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert not qme_residual(xs_only)


def test_qme_residual_warns_on_inhomogeneous_input():
    sp = DarbouxSpace((1,))
    with pytest.warns(UserWarning):
        qme_residual(SuperPolynomial.coordinate(sp, "x1") + SuperPolynomial.constant(sp, 1, hbar=1))


def test_truncation_caps():
    t = Truncation(2, 1, 3)
    assert t.keeps(1, 0, (3, 0)) and not t.keeps(2, 0, ()) and not t.keeps(0, 1, ()) and not t.keeps(0, 0, (2, 2))
    sp = DarbouxSpace((0,))
    x = SuperPolynomial.coordinate(sp, "x1", t)
    assert not multiply(multiply(multiply(x, x), x), x)
    assert not SuperPolynomial.constant(sp, 1, t).times_hbar(2)


def test_space_mismatch():
    a = SuperPolynomial.constant(DarbouxSpace((0,)), 1)
    b = SuperPolynomial.constant(DarbouxSpace((1,)), 1)
    with pytest.raises(SpaceMismatch):
        a + b


def test_coefficients_by_power():
    sp = DarbouxSpace((0,))
    f = SuperPolynomial(sp, {(1, 2, (1, 0)): Fraction(3, 2), (0, 0, (0, 0)): 1})
    assert f.u_coefficient(2) == SuperPolynomial(sp, {(1, 0, (1, 0)): Fraction(3, 2)})
    assert f.hbar_coefficient(0) == SuperPolynomial.constant(sp, 1)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SPACES), st.randoms(use_true_random=False), st.sampled_from([Truncation(), Truncation(3, 3, 6), Truncation(None, 2, None)]))
def test_polynomial_text_round_trip(sp, rng, trunc):
    f = random_polynomial(rng, sp, 5, 5, max_hbar=2, coeff_range=7, trunc=trunc)
    f = f + SuperPolynomial(sp, {(0, 1, tuple([0] * sp.size)): Fraction(-2, 3)}, trunc)
    g = parse_polynomial(format_polynomial(f))
    assert g == f and g.space == f.space and g.trunc == f.trunc


def test_polynomial_text_format():
    sp = DarbouxSpace((1, 0))
    text = "space: 1 0\n-1/2 * hbar^1 * u^2 * x1 * psi2^3 + 3\n"
    f = parse_polynomial(text)
    assert f == SuperPolynomial(sp, {(1, 2, (1, 0, 0, 3)): Fraction(-1, 2), (0, 0, (0, 0, 0, 0)): 3})
    assert parse_polynomial("space: 1\n# comment\n1 * hbar\n").degree() == 2
    with pytest.raises(ValueError):
        parse_polynomial("1 * x1\n")
    with pytest.raises(ValueError):
        parse_polynomial("space: 1\n1 * y7\n")
