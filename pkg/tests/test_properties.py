"""Algebraic invariants checked on hypothesis-generated series."""

from hypothesis import given, settings
from hypothesis import strategies as st

from xeric.series import (
    XSeries,
    derive,
    primitive,
    project,
    section,
    section_classes,
    series_frobenius,
    series_frobenius_root,
    series_invert,
    substitute_neg_x,
)

primes = st.sampled_from([2, 3, 5])


@st.composite
def series(draw, p, nvars=2, deg=(-3, 12), zexp=(-2, 4), prec=None):
    n = draw(st.integers(0, 6))
    terms = {}
    for _ in range(n):
        d = draw(st.integers(*deg))
        m = tuple(draw(st.lists(st.integers(*zexp), max_size=nvars)))
        terms[(d, m)] = draw(st.integers(1, p - 1))
    return XSeries(p, terms) if prec is None else XSeries(p, terms, prec)


@st.composite
def series_pair(draw):
    p = draw(primes)
    return draw(series(p)), draw(series(p))


@settings(max_examples=150)
@given(series_pair())
def test_leibniz(pair):
    a, b = pair
    assert derive(a * b) == derive(a) * b + a * derive(b)


@settings(max_examples=150)
@given(primes.flatmap(lambda p: series(p, zexp=(-1, 3))))
def test_primitive_is_a_right_inverse(f):
    assert derive(primitive(f)) == f


@given(primes.flatmap(lambda p: series(p, nvars=3)))
def test_sections_partition(f):
    total = XSeries.zero(f.p)
    for j, gamma in section_classes(f):
        part = section(f, j, gamma)
        assert section(part, j, gamma) == part
        total = total + part
    assert total == f


@given(series_pair())
def test_frobenius_is_a_ring_map(pair):
    a, b = pair
    F = series_frobenius
    assert F(a * b) == F(a) * F(b)
    assert F(a + b) == F(a) + F(b)
    assert series_frobenius_root(F(a)) == a
    assert F(a) == a**a.p


@given(primes.flatmap(lambda p: series(p, zexp=(-1, 3))))
def test_frobenius_images_are_constants(f):
    assert derive(series_frobenius(f)).is_zero()


@given(series_pair())
def test_negation_of_x_is_an_involutive_ring_map(pair):
    a, b = pair
    phi = substitute_neg_x
    assert phi(phi(a)) == a
    assert phi(a * b) == phi(a) * phi(b)


@given(primes.flatmap(lambda p: series(p, deg=(1, 10), zexp=(0, 3))), st.integers(0, 3))
def test_projection_is_idempotent(f, k):
    g = project(f, k)
    assert project(g, k) == g
    assert all(len(m) <= k for _, m in g.terms)


@settings(max_examples=60)
@given(primes.flatmap(lambda p: series(p, nvars=0, deg=(1, 10))), st.integers(1, 4))
def test_unit_inverse(f, c):
    p = f.p
    u = XSeries.monomial(p, 0, (), c % p or 1) + f
    v = series_invert(u, 25)
    assert (u * v).agrees(XSeries.one(p), 25)
