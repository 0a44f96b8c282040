# test_quad.py
import logging

import gmpy2
import pytest

from modules.quad import (
    QuadSurd,
    class_number,
    reduced_forms,
    solve_norm_A,
    solve_norm_B1,
    solve_norm_F1,
    solve_two_squares,
    surd_arith,
)
from utils.errors import HalfIntegerViolation, NoSolution, NotSquarefree, OddClassNumber

# Configurar logging
logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)


def dirichlet_class_number(d):
    """h(-d) = -(1/d)·Σ (k/d)·k, válido para d ≡ 3 (mod 4) livre de quadrados, d > 3."""
    total = sum(gmpy2.jacobi(k, d) * k for k in range(1, d))
    assert total % d == 0
    return -total // d


@pytest.mark.parametrize("d, h", [(1, 1), (2, 1), (3, 1), (5, 2), (7, 1), (11, 1), (15, 2), (23, 3),
                                  (35, 2), (39, 4), (47, 5), (71, 7)])
def test_class_numbers(d, h):
    assert class_number(d) == h


@pytest.mark.parametrize("d", [7, 11, 15, 19, 23, 31, 35, 39, 43, 47, 51, 55, 59, 67, 71, 79, 83, 87, 91, 95])
def test_class_number_matches_dirichlet_formula(d):
    assert class_number(d) == dirichlet_class_number(d)


def test_reduced_forms_of_minus_15():
    assert reduced_forms(15) == [(1, 1, 4), (2, 1, 2)]


def test_reduced_forms_rejects_non_squarefree():
    with pytest.raises(NotSquarefree):
        reduced_forms(12)


def test_solve_norm_A():
    sol = solve_norm_A(2, 7, 1)
    assert (sol.a, sol.b_abs) == (-1, 1)
    sol = solve_norm_A(3, 11, 1)
    assert (sol.a, sol.b_abs) == (1, 1)
    sol = solve_norm_A(11, 7, 1)
    assert (sol.a, sol.b_abs) == (-4, 2)


def test_solve_norm_B1_reproduces_known_solutions():
    sol = solve_norm_B1(103, 7, 5, 2)
    assert (sol.a, sol.b_abs) == (199, 9)
    assert sol.a ** 2 + 35 * sol.b_abs ** 2 == 4 * 103 ** 2
    sol = solve_norm_B1(2, 3, 13, 4)
    assert (sol.a, sol.b_abs) == (5, 1)


def test_solve_norm_B1_needs_even_class_number():
    with pytest.raises(OddClassNumber):
        solve_norm_B1(2, 3, 7, 3)


def test_solve_norm_B1_finds_solution_for_17_5_3():
    sol = solve_norm_B1(17, 3, 5, 2)
    assert sol.a ** 2 + 15 * sol.b_abs ** 2 == 4 * 17 ** 2
    assert (sol.a - 2 * 17) % 3 == 0


def test_solve_norm_F1():
    sol = solve_norm_F1(3, 5, 4)
    assert (sol.a, sol.b_abs) == (2, 1)
    with pytest.raises(NoSolution):
        solve_norm_F1(3, 5, 6)


def test_two_squares():
    assert (solve_two_squares(5, 1).a, solve_two_squares(5, 1).b_abs) == (2, 1)
    assert (solve_two_squares(3, 2).a, solve_two_squares(3, 2).b_abs) == (1, 1)
    assert (solve_two_squares(11, 2).a, solve_two_squares(11, 2).b_abs) == (3, 1)
    with pytest.raises(NoSolution):
        solve_two_squares(7, 1)


def test_surd_arithmetic():
    omega = QuadSurd(11, 1, 1, 2)
    assert omega ** 2 == QuadSurd(11, -5, 1, 2)
    assert omega.norm() == 3
    assert QuadSurd(35, 199, 9, 2).norm() == 103 ** 2
    assert (omega * omega.conj()).normalized() == QuadSurd(11, 3, 0, 1)


def test_half_integer_guard():
    with pytest.raises(HalfIntegerViolation):
        QuadSurd(5, 1, 1, 2)
    with pytest.raises(HalfIntegerViolation):
        QuadSurd(11, 1, 2, 2)


def test_named_surd_operations():
    omega = QuadSurd(7, -1, 1, 2)
    assert surd_arith("square", omega) == surd_arith("pow", omega, e=2)
    assert surd_arith("mul", omega, surd_arith("conj", omega)) == QuadSurd(7, 2, 0, 1)
    assert surd_arith("norm", omega) == 2
    with pytest.raises(ValueError):
        surd_arith("div", omega, omega)
