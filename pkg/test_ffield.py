# test_ffield.py
import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.cyclo import galois_apply, make_root
from modules.ffield import (
    Character,
    _build,
    build_context,
    canonical_character,
    char_eval,
    character_values,
    restriction_order,
    restriction_order_bruteforce,
    trace,
)
from utils.errors import BudgetExceeded, NotPrime, OrderNotDividing

# Configurar logging
logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)


@pytest.mark.parametrize("p, f", [(2, 1), (2, 4), (3, 2), (3, 3), (5, 2), (7, 1), (2, 8)])
def test_exp_log_bijection(p, f):
    ctx = build_context(p, f)
    q = p ** f
    assert sorted(ctx.exp_table.tolist()) == list(range(1, q))
    for k in range(0, q - 1, max(1, (q - 1) // 17)):
        assert ctx.log(ctx.exp(k)) == k
    assert ctx.exp(0) == 1


@pytest.mark.parametrize("p, f", [(2, 4), (3, 2), (3, 3), (5, 2)])
def test_trace_takes_each_value_equally(p, f):
    ctx = build_context(p, f)
    q = p ** f
    counts = np.bincount(ctx.trace_by_log, minlength=p)
    # o zero (traço 0) não aparece na tabela indexada por logaritmo
    assert counts[0] == q // p - 1
    assert all(c == q // p for c in counts[1:])


def test_trace_is_additive():
    ctx = build_context(3, 2)
    for x in range(9):
        for y in range(9):
            assert ctx.trace(ctx.add(x, y)) == (ctx.trace(x) + ctx.trace(y)) % 3


def test_prime_field_constants():
    ctx = build_context(7, 1)
    assert ctx.from_int(-1) == 6
    assert ctx.mul(3, 5) == 1
    assert ctx.neg(2) == 5
    assert ctx.power(3, 6) == 1


def test_character_minus_one():
    ctx = build_context(3, 2)
    chi = Character(ctx, 8)
    assert chi.exponent_at(ctx.neg(1)) == 4
    assert chi.value_at_minus_one() == -1
    assert chi.power(2).value_at_minus_one() == 1
    assert chi(0) is None


def test_character_lift_and_product():
    ctx = build_context(5, 2)
    chi = Character(ctx, 8, 3)
    lifted = chi.lift(24)
    assert lifted.exponent == 9
    assert lifted.order == chi.order
    assert chi.times(chi.conj()).is_trivial()


def test_character_values_vector():
    ctx = build_context(2, 4)
    vals = character_values(Character(ctx, 5, 2))
    assert len(vals) == 15
    assert vals[:6].tolist() == [0, 2, 4, 1, 3, 0]


def test_field_errors():
    with pytest.raises(OrderNotDividing):
        Character(build_context(3, 2), 5)
    with pytest.raises(BudgetExceeded):
        build_context(3, 10, budget=1000)
    with pytest.raises(NotPrime):
        build_context(9, 1)


@pytest.mark.parametrize("p, f, N", [(3, 2, 8), (2, 4, 15), (5, 2, 24), (2, 6, 21), (7, 2, 16), (3, 4, 20)])
def test_restriction_order_matches_bruteforce(p, f, N):
    ctx = build_context(p, f)
    for e in range(N):
        chi = Character(ctx, N, e)
        assert restriction_order(chi) == restriction_order_bruteforce(chi)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 26), st.integers(0, 26), st.integers(0, 26))
def test_field_distributivity(x, y, z):
    ctx = build_context(3, 3)
    assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
    assert ctx.add(x, ctx.neg(x)) == 0


def test_canonical_character_sends_generator_to_root():
    ctx = build_context(2, 4)
    chi = canonical_character(ctx, 5)
    g = ctx.exp(1)
    assert char_eval(chi, g) == make_root(5, 1)
    assert char_eval(chi, ctx.mul(g, g)) == make_root(5, 2)
    assert char_eval(chi, 0) is None
    assert trace(ctx, 1) == ctx.trace(1) == 0


def test_field_construction_is_deterministic():
    cached = build_context(3, 4)
    fresh = _build.__wrapped__(3, 4)
    assert fresh is not cached
    assert fresh.modulus == cached.modulus
    assert fresh.generator == cached.generator
    assert np.array_equal(fresh.exp_table, cached.exp_table)
    assert np.array_equal(fresh.log_of, cached.log_of)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 6, 21), (3, 4, 16), (5, 2, 24), (7, 2, 12)]), st.data())
def test_character_commutes_with_frobenius(field, data):
    p, f, N = field
    ctx = build_context(p, f)
    x = data.draw(st.integers(1, ctx.q - 1))
    chi = Character(ctx, N, data.draw(st.integers(0, N - 1)))
    assert char_eval(chi, ctx.power(x, p)) == galois_apply(p, char_eval(chi, x))
