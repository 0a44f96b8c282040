"""
Classificação de (N, p) nos casos de índice 2 e redução de χ^λ a um
subcaractere primitivo.
"""
import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from modules.quad import class_number
from utils.errors import LambdaOutOfRange, NotCoprime, NotPrime
from utils.number_theory import (
    euler_phi,
    factorize,
    is_prime,
    minus_one_in_subgroup,
    mult_order,
    multiplicative_index,
    subgroup_generated,
)

logger = logging.getLogger(__name__)

INDEX2_TAGS = ("A", "B1", "B2", "C", "D", "E1", "E2", "F1", "F2", "F3")
UNSUPPORTED_TAGS = ("NOT_INDEX2", "NOT_SUPPORTED_L3")
EVALUABLE_TAGS = INDEX2_TAGS + ("PURE", "QUADRATIC", "TRIVIAL_ORDER")


@dataclass(frozen=True)
class CaseInfo:
    tag: str
    N: int
    p: int
    f: int
    index: int
    factorization: tuple = (0, None, 0, None, 0)
    component_orders: tuple = (1, 1, 1)
    field_disc: Optional[int] = None
    h1: Optional[int] = None
    h12: Optional[int] = None
    notes: tuple = field(default_factory=tuple)

    @property
    def r0(self):
        return self.factorization[0]

    @property
    def l1(self):
        return self.factorization[1]

    @property
    def r1(self):
        return self.factorization[2]

    @property
    def l2(self):
        return self.factorization[3]

    @property
    def r2(self):
        return self.factorization[4]

    @property
    def q(self):
        return self.p ** self.f

    def is_index2(self):
        return self.tag in INDEX2_TAGS


@dataclass(frozen=True)
class PowerPlan:
    lam: int
    N_sub: int
    f_sub: int
    lift_s: int
    conj_flag: bool
    sub_case: CaseInfo
    unit_part: int = 1


def _component_a(p, modulus):
    """a = φ(m)/ord_m(p); 1 para m <= 2."""
    if modulus <= 2:
        return 1
    return euler_phi(modulus) // mult_order(p, modulus)


def _split(N):
    r0 = 0
    odd = []
    for prime, e in factorize(N):
        if prime == 2:
            r0 = e
        else:
            odd.append((prime, e))
    return r0, odd


def classify_case(N, p):
    """
    Classifica (N, p).

    Args:
        N: ordem do caractere (>= 1)
        p: primo coprimo com N

    Returns:
        CaseInfo
    """
    N, p = int(N), int(p)
    if not is_prime(p):
        raise NotPrime(f"{p} não é primo")
    if gcd(N, p) != 1:
        raise NotCoprime(f"mdc({N}, {p}) != 1")
    if N < 1:
        raise ValueError(f"N inválido: {N}")
    if N == 1:
        return CaseInfo("TRIVIAL_ORDER", 1, p, 1, 1)
    f = mult_order(p, N)
    index = multiplicative_index(p, N)
    r0, odd = _split(N)
    l1, r1 = odd[0] if odd else (None, 0)
    l2, r2 = odd[1] if len(odd) > 1 else (None, 0)
    base = dict(N=N, p=p, f=f, index=index)

    if N == 2:
        return CaseInfo("QUADRATIC", factorization=(1, None, 0, None, 0), **base)
    if minus_one_in_subgroup(p, N):
        return CaseInfo("PURE", factorization=(r0, l1, r1, l2, r2), **base)
    if index != 2 or len(odd) > 2:
        return CaseInfo("NOT_INDEX2", factorization=(r0, l1, r1, l2, r2), **base)

    a0 = _component_a(p, 2 ** r0)
    if len(odd) == 2:
        a1, a2 = _component_a(p, l1 ** r1), _component_a(p, l2 ** r2)
        # l1 é o primo ≡ 3 (mod 4) em B1/E1 e o de componente a = 2 em B2/E2
        if a1 * a2 == 1:
            if l1 % 4 != 3 and l2 % 4 == 3:
                l1, r1, l2, r2 = l2, r2, l1, r1
        elif a2 == 2:
            l1, r1, l2, r2 = l2, r2, l1, r1
            a1, a2 = a2, a1
        fact = (r0, l1, r1, l2, r2)
        comps = (a0, a1, a2)
        if r0 not in (0, 1):
            return _unmatched(N, p, base, fact, comps)
        family = "B" if r0 == 0 else "E"
        if a1 == 1 and a2 == 1 and l1 % 4 == 3 and l2 % 4 == 1:
            return CaseInfo(family + "1", factorization=fact, component_orders=comps,
                            field_disc=l1 * l2, h12=class_number(l1 * l2), **base)
        if a1 == 2 and a2 == 1 and l1 % 4 == 3:
            if l1 == 3:
                return CaseInfo("NOT_SUPPORTED_L3", factorization=fact, component_orders=comps, **base)
            return CaseInfo(family + "2", factorization=fact, component_orders=comps,
                            field_disc=l1, h1=class_number(l1), **base)
        return _unmatched(N, p, base, fact, comps)

    if len(odd) == 1:
        a1 = _component_a(p, l1 ** r1)
        fact = (r0, l1, r1, None, 0)
        comps = (a0, a1, 1)
        if r0 in (0, 1) and l1 % 4 == 3:
            if l1 == 3:
                return CaseInfo("NOT_SUPPORTED_L3", factorization=fact, component_orders=comps, **base)
            return CaseInfo("A" if r0 == 0 else "D", factorization=fact, component_orders=comps,
                            field_disc=l1, h1=class_number(l1), **base)
        if r0 == 2:
            if a0 == 1 and a1 == 1 and l1 % 4 == 1:
                return CaseInfo("F1", factorization=fact, component_orders=comps, field_disc=l1, **base)
            if a0 == 2 and a1 == 1:
                return CaseInfo("F2", factorization=fact, component_orders=comps, field_disc=1, **base)
            if a0 == 1 and a1 == 2 and l1 % 4 == 3:
                if l1 == 3:
                    return CaseInfo("NOT_SUPPORTED_L3", factorization=fact, component_orders=comps, **base)
                return CaseInfo("F3", factorization=fact, component_orders=comps,
                                field_disc=l1, h1=class_number(l1), **base)
        return _unmatched(N, p, base, fact, comps)

    # N = 2^r0
    fact = (r0, None, 0, None, 0)
    if r0 >= 3 and p % 8 in (3, 5) or r0 == 2 and p % 4 == 1:
        disc = 2 if p % 8 == 3 else 1
        return CaseInfo("C", factorization=fact, component_orders=(a0, 1, 1), field_disc=disc, **base)
    return _unmatched(N, p, base, fact, (a0, 1, 1))


def _unmatched(N, p, base, fact, comps):
    logger.warning(f"(N={N}, p={p}) tem índice 2 mas forma {fact} / {comps} fora da tabela de casos")
    return CaseInfo("NOT_INDEX2", factorization=fact, component_orders=comps, **base)


def reduce_power(info, lam):
    """
    Plano de avaliação de G(χ^λ) via subcaractere de ordem N/mdc(λ, N).

    Args:
        info: CaseInfo de (N, p)
        lam: 0 <= λ < N

    Returns:
        PowerPlan
    """
    N, p = info.N, info.p
    lam = int(lam)
    if lam < 0 or lam >= N:
        raise LambdaOutOfRange(f"λ={lam} fora de [0, {N})")
    if lam == 0:
        trivial = CaseInfo("TRIVIAL_ORDER", 1, p, 1, 1)
        return PowerPlan(0, 1, 1, info.f, False, trivial, 0)
    d = gcd(lam, N)
    N_sub = N // d
    f_sub = mult_order(p, N_sub)
    u = (lam // d) % N_sub
    conj_flag = N_sub > 2 and u not in subgroup_generated(p, N_sub)
    sub_case = classify_case(N_sub, p)
    if sub_case.index > 2 and sub_case.tag != "PURE":
        logger.warning(f"Subcaso (N={N_sub}, p={p}) com índice {sub_case.index}")
    return PowerPlan(lam, N_sub, f_sub, info.f // f_sub, conj_flag, sub_case, u)
