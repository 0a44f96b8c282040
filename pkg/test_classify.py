# test_classify.py
import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.classify import EVALUABLE_TAGS, INDEX2_TAGS, UNSUPPORTED_TAGS, classify_case, reduce_power
from utils.errors import LambdaOutOfRange, NotCoprime, NotPrime
from utils.number_theory import minus_one_in_subgroup, multiplicative_index

# Configurar logging
logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103]


@pytest.mark.parametrize("N, p, tag", [
    (7, 2, "A"),
    (23, 2, "A"),
    (39, 2, "B1"),
    (15, 2, "B1"),
    (14, 11, "D"),
    (22, 3, "D"),
    (30, 17, "E1"),
    (70, 103, "E1"),
    (8, 3, "C"),
    (8, 5, "C"),
    (4, 5, "C"),
    (20, 3, "F1"),
    (28, 5, "F2"),
    (44, 3, "F3"),
    (5, 2, "PURE"),
    (9, 2, "PURE"),
    (6, 5, "PURE"),
    (2, 3, "QUADRATIC"),
    (1, 5, "TRIVIAL_ORDER"),
    (31, 2, "NOT_INDEX2"),
    (3, 7, "NOT_SUPPORTED_L3"),
])
def test_case_tags(N, p, tag):
    assert classify_case(N, p).tag == tag


def test_case_a_details():
    info = classify_case(7, 2)
    assert (info.f, info.index, info.l1, info.r1, info.h1) == (3, 2, 7, 1, 1)
    assert info.field_disc == 7


def test_case_b1_class_number():
    info = classify_case(39, 2)
    assert info.h12 == 4
    assert (info.l1, info.l2) == (3, 13)
    assert classify_case(15, 2).h12 == 2


def test_case_e1_orders_the_primes():
    info = classify_case(70, 103)
    assert info.f == 12
    assert (info.r0, info.l1, info.l2) == (1, 7, 5)
    assert info.h12 == 2
    assert info.component_orders == (1, 1, 1)


def test_case_c_discriminant():
    assert classify_case(8, 3).field_disc == 2
    assert classify_case(8, 5).field_disc == 1
    assert classify_case(4, 5).r0 == 2


def test_case_d_and_f_details():
    info = classify_case(22, 3)
    assert (info.f, info.r0, info.l1, info.h1) == (5, 1, 11, 1)
    info = classify_case(44, 3)
    assert (info.f, info.component_orders) == (10, (1, 2, 1))
    assert classify_case(28, 5).field_disc == 1


def test_classification_errors():
    with pytest.raises(NotPrime):
        classify_case(7, 9)
    with pytest.raises(NotCoprime):
        classify_case(14, 7)


def test_reduce_power_to_quadratic():
    plan = reduce_power(classify_case(14, 11), 7)
    assert (plan.N_sub, plan.f_sub, plan.lift_s) == (2, 1, 3)
    assert plan.sub_case.tag == "QUADRATIC"
    assert not plan.conj_flag


def test_reduce_power_to_primitive_subcase():
    plan = reduce_power(classify_case(14, 11), 2)
    assert (plan.N_sub, plan.f_sub, plan.lift_s) == (7, 3, 1)
    assert plan.sub_case.tag == "A"
    assert not plan.conj_flag


def test_reduce_power_lifts_and_conjugates():
    assert reduce_power(classify_case(8, 3), 4).lift_s == 2
    plan = reduce_power(classify_case(39, 2), 13)
    assert (plan.N_sub, plan.lift_s, plan.sub_case.tag) == (3, 6, "PURE")
    # 3 ∉ ⟨2⟩ = {1, 2, 4} (mod 7)
    assert reduce_power(classify_case(7, 2), 3).conj_flag
    assert not reduce_power(classify_case(7, 2), 4).conj_flag


def test_reduce_power_trivial_and_range():
    info = classify_case(7, 2)
    plan = reduce_power(info, 0)
    assert (plan.N_sub, plan.lift_s) == (1, 3)
    with pytest.raises(LambdaOutOfRange):
        reduce_power(info, 7)
    with pytest.raises(LambdaOutOfRange):
        reduce_power(info, -1)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 120), st.sampled_from(SMALL_PRIMES))
def test_classification_is_a_partition(N, p):
    if N % p == 0:
        return
    info = classify_case(N, p)
    assert info.tag in EVALUABLE_TAGS + UNSUPPORTED_TAGS
    if info.tag in INDEX2_TAGS:
        assert multiplicative_index(p, N) == 2
        assert not minus_one_in_subgroup(p, N)
    if N > 2:
        assert (info.tag == "PURE") == minus_one_in_subgroup(p, N)
    assert classify_case(N, p) == info
