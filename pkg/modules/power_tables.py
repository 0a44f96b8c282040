"""
Tabela explícita das famílias G(χ^λ) para os casos de índice 2.

Cada entrada devolve as formas fechadas do valor (os dois membros quando há
ambiguidade ±b) e se a comparação com o motor genérico é estrita. Entradas
consultivas só geram aviso quando divergem.
"""
import logging
from dataclasses import dataclass, field

from modules.forms import ClosedForm
from modules.oracle import quadratic_gauss_lifted
from modules.quad import QuadSurd, solve_norm_A, solve_norm_B1, solve_two_squares
from utils.number_theory import euler_phi, legendre

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExplicitEntry:
    label: str
    form: ClosedForm
    strict: bool = True
    notes: tuple = field(default_factory=tuple)


def _omega(info):
    sol = solve_norm_A(info.p, info.l1, info.h1)
    return QuadSurd(info.l1, sol.a, sol.b_abs, 2)


def _omega_b1(info):
    sol = solve_norm_B1(info.p, info.l1, info.l2, info.h12)
    return QuadSurd(info.l1 * info.l2, sol.a, sol.b_abs, 2)


def _shape(info, lam):
    """
    (i, x, y) com λ = 2^i·l1^x·l2^y exatamente, ou None.

    A tabela só cobre x <= r1 e y <= r2; as demais potências (λ = 9 com
    N = 15, por exemplo) ficam com o motor genérico.
    """
    rest = lam
    exps = []
    for prime in (2, info.l1, info.l2):
        e = 0
        if prime is not None:
            while rest % prime == 0:
                rest //= prime
                e += 1
        exps.append(e)
    if rest != 1:
        return None
    _, x, y = exps
    if x > info.r1 or y > info.r2:
        return None
    return tuple(exps)


def _real(info, sign=1, k=None):
    return ClosedForm.build(info.p, info.f, k=info.f if k is None else k, unit=0 if sign > 0 else 2)


def explicit_power_form(info, lam):
    """
    Entrada da tabela explícita para G(χ^λ), ou None quando não há linha.

    Args:
        info: CaseInfo de índice 2
        lam: 1 <= λ < N

    Returns:
        ExplicitEntry ou None
    """
    handler = _HANDLERS.get(info.tag)
    if handler is None:
        return None
    shape = _shape(info, lam)
    if shape is None:
        return None
    return handler(info, shape)


def _case_a(info, shape):
    i, x, _ = shape
    if i or not 1 <= x < info.r1:
        return None
    L = info.l1 ** x
    form = ClosedForm.build(info.p, info.f, k=info.f - info.h1 * L, surd=_omega(info), m=L)
    return ExplicitEntry("A: λ = l^t", form)


def _case_b1(info, shape):
    i, x, y = shape
    if i:
        return None
    if x < info.r1 and y < info.r2:
        L = info.l1 ** x * info.l2 ** y
        form = ClosedForm.build(info.p, info.f, k=info.f - info.h12 * L, surd=_omega_b1(info), m=L)
        return ExplicitEntry("B1: λ = l1^t1·l2^t2", form)
    if x == info.r1:
        return ExplicitEntry("B1: λ = l1^r1·l2^t2", _real(info, +1))
    if y == info.r2:
        return ExplicitEntry("B1: λ = l1^t1·l2^r2", _real(info, -1))
    return None


def _b2_type(info, L):
    if legendre(info.l2, info.l1) == 1:
        return _real(info, +1)
    return ClosedForm.build(info.p, info.f, k=info.f - 2 * info.h1 * L, surd=_omega(info), m=2 * L)


def _case_b2(info, shape):
    i, x, y = shape
    if i:
        return None
    if x < info.r1 and y < info.r2:
        return ExplicitEntry("B2: λ = l1^t1·l2^t2", _b2_type(info, info.l1 ** x * info.l2 ** y))
    if x == info.r1:
        return ExplicitEntry("B2: λ = l1^r1·l2^t2", _real(info, +1))
    if y != info.r2:
        return None
    s = info.l1 ** x * euler_phi(info.l2 ** info.r2)
    form = ClosedForm.build(info.p, info.f, k=info.f - info.h1 * s, unit=2, surd=_omega(info), m=s)
    return ExplicitEntry("B2: λ = l1^t1·l2^r2", form)


def _case_c(info, shape):
    i, _, _ = shape
    t = info.r0
    s = t - i
    if t < 3 or not 1 <= s <= t - 1:
        return None
    if info.p % 8 == 5:
        if s == 1:
            return ExplicitEntry("C: λ = 2^{t-1}", _real(info, -1))
        return None
    half = 2 ** (t - 3)
    if s == 1:
        return ExplicitEntry("C: λ = 2^{t-1}", _real(info, +1 if t == 3 else -1))
    if s == 2:
        return ExplicitEntry("C: λ = 2^{t-2}", _real(info, -1))
    sol = solve_two_squares(info.p, 2)
    omega = QuadSurd(2, sol.a, sol.b_abs, 1)
    w = 2 ** (t - s)
    k = 2 * (half - 2 ** (t - s - 1))
    form = ClosedForm.build(info.p, info.f, k=k, unit=0 if s == t - 1 else 2, surd=omega, m=w)
    return ExplicitEntry("C: λ = 2^{t-s}", form)


def _case_d(info, shape):
    i, x, _ = shape
    p, f = info.p, info.f
    if i == 0 and x == info.r1:
        return ExplicitEntry("D: λ = l^r", quadratic_gauss_lifted(p, f))
    if i == 1 and x < info.r1:
        L = info.l1 ** x
        form = ClosedForm.build(p, f, k=f - info.h1 * L, surd=_omega(info), m=L)
        return ExplicitEntry("D: λ = 2·l^t", form, notes=("surd (a+b√-l)/2: fator ½ restaurado",))
    if i == 0 and 1 <= x < info.r1:
        L = info.l1 ** x
        half = (p - 1) // 2
        # (√p*)^{l^t} = (p*)^{(l^t-1)/2}·√p* contribui (-1)^{(p-1)/2·t}
        if info.l1 % 8 == 3:
            sign = (-1) ** ((half * (info.r1 - x - 1) + half * x) % 2)
            form = ClosedForm.build(p, f, k=f - 1 - 2 * info.h1 * L, e=1, unit=0 if sign > 0 else 2,
                                    surd=_omega(info), m=2 * L)
        else:
            sign = (-1) ** ((half * (info.r1 - x) + half * x) % 2)
            form = ClosedForm.build(p, f, k=f - 1, e=1, unit=0 if sign > 0 else 2)
        return ExplicitEntry("D: λ = l^t", form)
    return None


def _case_e1(info, shape):
    i, x, y = shape
    p, f = info.p, info.f
    r1, r2 = info.r1, info.r2
    if i == 1 and x < r1 and y < r2:
        L = info.l1 ** x * info.l2 ** y
        form = ClosedForm.build(p, f, k=f - info.h12 * L, surd=_omega_b1(info), m=L)
        return ExplicitEntry("E1: λ = 2·l1^t1·l2^t2", form)
    if i == 0 and y == r2:
        return ExplicitEntry("E1: λ = l1^t1·l2^r2", _real(info, -1))
    if i == 1 and y == r2:
        return ExplicitEntry("E1: λ = 2·l1^t1·l2^r2", _real(info, -1))
    if i == 1 and x == r1:
        return ExplicitEntry("E1: λ = 2·l1^r1·l2^t2", _real(info, +1))
    if i == 0 and x < r1 and y < r2:
        # mesma divisão mod 8 do valor primitivo: real quando l1·l2 ≡ 7 (mod 8)
        L = info.l1 ** x * info.l2 ** y
        if (info.l1 * info.l2) % 8 == 7:
            form = _real(info, -1)
        else:
            form = ClosedForm.build(p, f, k=f - 2 * info.h12 * L, unit=2, surd=_omega_b1(info), m=2 * L)
        return ExplicitEntry("E1: λ = l1^t1·l2^t2", form)
    return None


def _case_e2(info, shape):
    i, x, y = shape
    p, f = info.p, info.f
    r1, r2 = info.r1, info.r2
    if i == 1 and x < r1 and y < r2:
        return ExplicitEntry("E2: λ = 2·l1^t1·l2^t2", _b2_type(info, info.l1 ** x * info.l2 ** y))
    if i == 1 and x == r1:
        return ExplicitEntry("E2: λ = 2·l1^r1·l2^t2", _real(info, +1))
    if i == 1 and y == r2:
        s = info.l1 ** x * euler_phi(info.l2 ** r2)
        form = ClosedForm.build(p, f, k=f - info.h1 * s, unit=2, surd=_omega(info), m=s)
        return ExplicitEntry("E2: λ = 2·l1^t1·l2^r2", form)
    sign = (-1) ** ((((p - 1) // 2) * ((info.l2 - 1) // 2) + 1) % 2)
    if i == 0 and x == r1 and y == r2:
        return ExplicitEntry("E2: λ = l1^r1·l2^r2", quadratic_gauss_lifted(p, f))
    if i == 0 and x < r1 and y == r2:
        s = info.l1 ** x * euler_phi(info.l2 ** r2)
        if info.l1 % 8 == 3:
            form = ClosedForm.build(p, f, k=f - 2 * info.h1 * s, unit=0 if sign > 0 else 2,
                                    surd=_omega(info), m=2 * s)
        else:
            form = _real(info, sign)
        return ExplicitEntry("E2: λ = l1^t1·l2^r2", form, strict=False)
    if i == 0 and x < r1 and y < r2:
        L = info.l1 ** x * info.l2 ** y
        if legendre(info.l2, info.l1) == -1 and info.l1 % 8 == 3:
            form = ClosedForm.build(p, f, k=f - 4 * info.h1 * L, unit=0 if sign > 0 else 2,
                                    surd=_omega(info), m=4 * L)
        else:
            form = _real(info, sign)
        return ExplicitEntry("E2: λ = l1^t1·l2^t2", form)
    return None


def _case_f(info, shape):
    i, x, _ = shape
    p, f, tag = info.p, info.f, info.tag
    r1 = info.r1
    if i == 2 and x < r1:
        if tag == "F3":
            L = info.l1 ** x
            form = ClosedForm.build(p, f, k=f - 2 * info.h1 * L, unit=2, surd=_omega(info), m=2 * L)
            return ExplicitEntry("F3: λ = 4·l^t", form)
        return ExplicitEntry(f"{tag}: λ = 4·l^t", _real(info, +1))
    if i == 1 and x < r1:
        if tag == "F3":
            L = info.l1 ** x
            if info.l1 % 8 == 3:
                form = ClosedForm.build(p, f, k=f - 4 * info.h1 * L, surd=_omega(info), m=4 * L)
            else:
                form = _real(info, +1)
            return ExplicitEntry("F3: λ = 2·l^t", form)
        return ExplicitEntry(f"{tag}: λ = 2·l^t", _real(info, -1))
    if i == 0 and x == r1:
        if tag == "F1":
            return ExplicitEntry("F1: λ = l^r", _real(info, -1))
        if tag == "F3":
            sign = (-1) ** (((p + 1) // 4) % 2)
            return ExplicitEntry("F3: λ = l^r", _real(info, sign))
        # F2: depende da soma quártica sobre F_p
        return None
    if i == 1 and x == r1:
        return ExplicitEntry(f"{tag}: λ = 2·l^r", _real(info, +1 if tag == "F3" else -1))
    return None


_HANDLERS = {
    "A": _case_a,
    "B1": _case_b1,
    "B2": _case_b2,
    "C": _case_c,
    "D": _case_d,
    "E1": _case_e1,
    "E2": _case_e2,
    "F1": _case_f,
    "F2": _case_f,
    "F3": _case_f,
}
