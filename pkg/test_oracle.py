# test_oracle.py
import logging

import pytest

from modules.cyclo import CycloElement, embed_quad_surd, embed_sqrt_star, make_root
from modules.ffield import Character, build_context
from modules.forms import closed_to_cyclo
from modules.oracle import (
    dh_lift,
    dh_product_check,
    frobenius_apply,
    galois_twist,
    gauss_sum_direct,
    gauss_sum_scaled,
    oracle_character,
    pure_gauss,
    quadratic_gauss_lifted,
    restricted_gauss_fp,
    trace_one_sum,
)
from modules.quad import QuadSurd
from utils.errors import BudgetExceeded, NotPure, UnsupportedCase

# Configurar logging
logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)


def test_oracle_for_order_7_over_f8():
    chi = oracle_character(7, 2)
    G = gauss_sum_direct(chi)
    assert G.m == 14
    options = [embed_quad_surd(QuadSurd(7, -1, b)) for b in (1, -1)]
    assert any(G == opt for opt in options)
    assert G * G.conj() == 8


@pytest.mark.parametrize("N, p", [(3, 2), (8, 3), (14, 11), (4, 5), (15, 2), (20, 3)])
def test_modulus_identity(N, p):
    chi = oracle_character(N, p)
    G = gauss_sum_direct(chi)
    assert G * G.conj() == chi.context.q


def test_cubic_sum_over_f4():
    # Σ χ(x)(-1)^{T(x)} = 1 - ζ_3 - ζ_3² = 2
    assert gauss_sum_direct(oracle_character(3, 2)) == 2


@pytest.mark.parametrize("p, N, f, expected", [(2, 3, 2, 2), (2, 5, 4, 4), (3, 4, 2, -3), (2, 9, 6, 8)])
def test_pure_values(p, N, f, expected):
    assert closed_to_cyclo(pure_gauss(p, N, f)) == expected


@pytest.mark.parametrize("N, p", [(3, 2), (5, 2), (4, 3), (3, 5), (6, 5), (9, 2), (12, 11)])
def test_pure_matches_oracle(N, p):
    chi = oracle_character(N, p)
    assert closed_to_cyclo(pure_gauss(p, N, chi.context.f)) == gauss_sum_direct(chi)


def test_pure_rejects_non_pure():
    with pytest.raises(NotPure):
        pure_gauss(2, 7, 3)
    with pytest.raises(NotPure):
        pure_gauss(3, 2, 1)


def test_scaled_sum():
    chi = oracle_character(8, 3)
    assert gauss_sum_scaled(chi, 2) == gauss_sum_direct(chi, 2)
    with pytest.raises(ValueError):
        gauss_sum_direct(chi, 3)
    assert gauss_sum_direct(chi, 0, allow_zero_mu=True).is_zero()


def test_product_relation():
    assert dh_product_check(oracle_character(8, 3))
    assert dh_product_check(oracle_character(5, 11))
    with pytest.raises(ValueError):
        dh_product_check(oracle_character(3, 2))


def test_factorization_with_quadratic_restriction():
    chi = oracle_character(8, 3)
    assert restricted_gauss_fp(chi) == embed_sqrt_star(3)
    assert gauss_sum_direct(chi) == restricted_gauss_fp(chi) * trace_one_sum(chi)


def test_factorization_with_trivial_restriction():
    chi = Character(build_context(3, 2), 4)
    assert restricted_gauss_fp(chi) == -3
    assert gauss_sum_direct(chi) == CycloElement.from_int(-3) * trace_one_sum(chi)


def test_factorization_needs_small_restriction():
    chi = Character(build_context(7, 2), 48, 1)
    with pytest.raises(UnsupportedCase):
        restricted_gauss_fp(chi)


def test_galois_twist_law():
    N, p = 8, 3
    chi = oracle_character(N, p)
    G = gauss_sum_direct(chi)
    ctx = chi.context
    for l in (1, 3, 5, 7):
        G_l = gauss_sum_direct(chi.power(l))
        for t in (1, 2):
            k = chi.power(l).exponent_at(ctx.from_int(t))
            assert galois_twist(G, N, p, l, t) == make_root(N, -k) * G_l


@pytest.mark.parametrize("N, p", [(7, 2), (8, 3), (15, 2)])
def test_frobenius_fixes_sum(N, p):
    G = gauss_sum_direct(oracle_character(N, p))
    assert frobenius_apply(G, N, p) == G


def test_lifted_quadratic_sum():
    assert closed_to_cyclo(quadratic_gauss_lifted(3, 2)) == 3
    assert gauss_sum_direct(Character(build_context(3, 2), 2)) == 3
    g = embed_sqrt_star(3)
    assert dh_lift(g, 1) == g
    assert dh_lift(g, 2) == 3
    with pytest.raises(ValueError):
        dh_lift(g, 0)


def test_budget_is_enforced():
    chi = oracle_character(8, 3)
    with pytest.raises(BudgetExceeded):
        gauss_sum_direct(chi, 1, budget=5)
    with pytest.raises(BudgetExceeded):
        oracle_character(70, 103, budget=10 ** 6)
