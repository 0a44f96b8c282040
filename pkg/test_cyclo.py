# test_cyclo.py
import logging

import pytest
from hypothesis import given, settings, strategies as st

from modules.cyclo import (
    CycloElement,
    GaloisIndex,
    complex_embed,
    cyclotomic_poly,
    embed_quad_surd,
    embed_sqrt_star,
    galois_apply,
    make_root,
    promote,
    quartic_root_enclosure,
    ring_arith,
    sqrt_neg,
    sqrt_two,
)
from modules.quad import QuadSurd
from utils.errors import BadConductor, NonUnitIndex, NotDivisible, RootNotInField
from utils.number_theory import euler_phi

# Configurar logging
logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)


def elements(m):
    return st.lists(st.integers(-20, 20), min_size=euler_phi(m), max_size=euler_phi(m)).map(
        lambda c: CycloElement(m, c)
    )


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert len(cyclotomic_poly(15)) - 1 == euler_phi(15)


def test_roots_multiply_by_crt_exponent():
    assert make_root(7, 1) * make_root(3, 1) == make_root(21, 10)


def test_sum_of_all_roots_is_zero():
    total = CycloElement.zero(12)
    for k in range(12):
        total = total + make_root(12, k)
    assert total.is_zero()


@pytest.mark.parametrize("m, square", [(3, -3), (5, 5), (7, -7), (11, -11), (13, 13), (15, 15), (4, -1), (8, -2)])
def test_sqrt_star_squares(m, square):
    assert embed_sqrt_star(m) ** 2 == square


def test_sqrt_star_rejects_bad_conductor():
    with pytest.raises(BadConductor):
        embed_sqrt_star(9)


@pytest.mark.parametrize("d", [1, 2, 3, 5, 6, 7, 10, 11, 15, 35])
def test_sqrt_neg_squares(d):
    assert sqrt_neg(d) ** 2 == -d


def test_sqrt_two():
    assert sqrt_two() ** 2 == 2


def test_promote_demote_roundtrip():
    x = make_root(5, 2) + 3
    assert x.promote(15).demote(5) == x
    assert x.promote(15).m == 15


def test_exact_div():
    x = make_root(7, 1).scale(6) + 12
    assert x.exact_div(6) == make_root(7, 1) + 2
    with pytest.raises(NotDivisible):
        x.exact_div(5)


def test_galois_and_conjugation():
    assert make_root(8, 1).conj() == make_root(8, 7)
    assert make_root(9, 2).galois(4) == make_root(9, 8)
    with pytest.raises(NonUnitIndex):
        make_root(9, 1).galois(3)


def test_quad_surd_embedding():
    w = embed_quad_surd(QuadSurd(11, -5, 1, 2))
    assert w * w.conj() == 9
    assert embed_quad_surd(QuadSurd(7, -1, 1, 2)) ** 2 + embed_quad_surd(QuadSurd(7, -1, 1, 2)) + 2 == 0
    with pytest.raises(RootNotInField):
        embed_quad_surd(QuadSurd(11, 1, 1, 1), m=12)


def test_complex_embed_contains_value():
    box = complex_embed(make_root(4, 1), precision=20)
    assert box.contains(1j)
    box = complex_embed(embed_sqrt_star(5), precision=20)
    assert abs(float(box.re.mid) - 5 ** 0.5) < 1e-12
    assert abs(float(box.im.mid)) < 1e-12


def test_quartic_root_enclosure_squares_back():
    # √(1+2i)/5^{1/4}: módulo 1 e argumento metade do de 1+2i
    box = quartic_root_enclosure(1, 2, 5, precision=20)
    re, im = float(box.re.mid), float(box.im.mid)
    assert abs(re * re + im * im - 1) < 1e-12
    assert re > 0 and im > 0


@settings(max_examples=30, deadline=None)
@given(elements(12), elements(12), elements(12))
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0


@settings(max_examples=30, deadline=None)
@given(elements(15), st.sampled_from([1, 2, 4, 7, 8, 11, 13, 14]), st.sampled_from([1, 2, 4, 7, 8, 11, 13, 14]))
def test_galois_composition(x, a, b):
    assert x.galois(a).galois(b) == x.galois(a * b % 15)
    assert (x * x).galois(a) == x.galois(a) * x.galois(a)


def test_named_operations():
    x, y = make_root(8, 1), make_root(8, 3)
    assert ring_arith("mul", x, y) == -1
    assert ring_arith("add", x, ring_arith("neg", x)) == 0
    assert ring_arith("sub", y, y).is_zero()
    with pytest.raises(ValueError):
        ring_arith("div", x, y)
    sigma = GaloisIndex(3, 8)
    assert galois_apply(sigma, x) == y
    assert sigma.compose(GaloisIndex(3, 8)).a == 1
    with pytest.raises(NonUnitIndex):
        GaloisIndex(4, 8)
    assert promote(CycloElement.from_int(-1), 14) == make_root(14, 7)
    assert promote(make_root(7, 1), 14) == make_root(14, 2)
