"""
Avaliação simbólica das somas de Gauss de índice 2.

O motor genérico reduz G(χ^λ) a um subcaractere primitivo (primitivo de
índice 2, puro, quadrático ou trivial), conjuga quando λ/d ∉ ⟨p⟩ e eleva
por Davenport-Hasse. A tabela explícita de modules.power_tables é conferida
contra o resultado genérico.
"""
import logging
import time
import traceback
from dataclasses import dataclass, field, replace
from typing import Optional

from config import load_settings
from modules.classify import INDEX2_TAGS, UNSUPPORTED_TAGS, classify_case, reduce_power
from modules.cyclo import ComplexInterval, CycloElement, complex_embed, make_root, quartic_root_enclosure
from modules.forms import ALL_UNITS, REAL_UNITS, ClosedForm, GaussValue, closed_to_cyclo, sqrt_pstar_element
from modules.oracle import (
    dh_lift_form,
    gauss_sum_direct,
    oracle_character,
    pure_gauss,
    quadratic_gauss_fp,
)
from modules.power_tables import explicit_power_form
from modules.quad import QuadSurd, solve_norm_A, solve_norm_B1, solve_norm_F1, solve_two_squares
from utils.errors import (
    BudgetExceeded,
    FormulaMismatch,
    NotDivisible,
    OracleBudgetExceeded,
    RootNotInField,
    UnsupportedCase,
    VerificationMismatch,
    WrongTag,
)
from utils.number_theory import legendre

logger = logging.getLogger(__name__)

NOTE_A_CONGRUENCE = "congruência a ≡ -2·p^{(l-1+2h)/4} (mod l) na equação 4p^h = a² + l·b²"
NOTE_D_COEFFICIENT = "coeficiente p^{(f-1)/2-h1} fixado pela identidade |G|² = q"
NOTE_E2_EXPONENT = "expoente p^{f/2-2h1} com ω⁴ fixado pela identidade |G|² = q"
NOTE_F3_SQUARE = "fator ω² (e não ω) fixado pela identidade |G|² = q"

# instâncias em que a identidade do módulo rejeita um coeficiente publicado
KNOWN_NORMALIZATIONS = {
    ("D", 22, 3): "coeficiente líder 3 imposto por |G|² = 3⁵; o valor 2 viola a identidade do módulo",
}


def eval_pure(info):
    """G(χ) = ±p^{f/2} quando -1 ∈ ⟨p⟩ (mod N)."""
    if info.tag != "PURE":
        raise WrongTag(f"eval_pure exige PURE, recebido {info.tag}")
    return GaussValue.from_form(pure_gauss(info.p, info.N, info.f))


# fórmulas primitivas por caso

def _sign_unit(sign):
    return 0 if sign > 0 else 2


def _omega_a(info):
    sol = solve_norm_A(info.p, info.l1, info.h1)
    return QuadSurd(info.l1, sol.a, sol.b_abs, 2)


def _prim_a(info):
    form = ClosedForm.build(info.p, info.f, k=info.f - info.h1, surd=_omega_a(info), m=1)
    return form, (NOTE_A_CONGRUENCE,)


def _prim_b1(info):
    sol = solve_norm_B1(info.p, info.l1, info.l2, info.h12)
    omega = QuadSurd(info.l1 * info.l2, sol.a, sol.b_abs, 2)
    return ClosedForm.build(info.p, info.f, k=info.f - info.h12, surd=omega, m=1), ()


def _prim_b2(info):
    if legendre(info.l2, info.l1) == 1:
        return ClosedForm.build(info.p, info.f, k=info.f), ()
    form = ClosedForm.build(info.p, info.f, k=info.f - 2 * info.h1, surd=_omega_a(info), m=2)
    return form, (NOTE_A_CONGRUENCE,)


def _prim_c(info):
    p, f = info.p, info.f
    if p % 8 == 3:
        sol = solve_two_squares(p, 2)
        omega = QuadSurd(2, sol.a, sol.b_abs, 1)
        form = ClosedForm.build(p, f, k=f - 2, e=1, unit=None, candidates=REAL_UNITS, surd=omega, m=1)
        return form, ()
    # p ≡ 1 (mod 4): G = ε·p^{f/2}·√π/p^{1/4}, π = a + bi
    sol = solve_two_squares(p, 1)
    form = ClosedForm.build(p, f, k=f, unit=None, candidates=ALL_UNITS, gauss_root=(sol.a, sol.b_abs), g=1)
    return form, ()


def _prim_d(info):
    p, f = info.p, info.f
    half = (p - 1) // 2
    if info.l1 % 8 == 7:
        form = ClosedForm.build(p, f, k=f - 1, e=1, unit=_sign_unit((-1) ** ((info.r1 * half) % 2)))
        return form, ()
    sign = (-1) ** (((info.r1 + 1) * half) % 2)
    form = ClosedForm.build(p, f, k=f - 1 - 2 * info.h1, e=1, unit=_sign_unit(sign), surd=_omega_a(info), m=2)
    return form, (NOTE_A_CONGRUENCE, NOTE_D_COEFFICIENT)


def _prim_e1(info):
    p, f = info.p, info.f
    if (info.l1 * info.l2) % 8 == 7:
        return ClosedForm.build(p, f, k=f, unit=2), ()
    sol = solve_norm_B1(p, info.l1, info.l2, info.h12)
    omega = QuadSurd(info.l1 * info.l2, sol.a, sol.b_abs, 2)
    return ClosedForm.build(p, f, k=f - 2 * info.h12, unit=2, surd=omega, m=2), ()


def _prim_e2(info):
    p, f = info.p, info.f
    sign = (-1) ** ((((p - 1) // 2) * ((info.l2 - 1) // 2) + 1) % 2)
    if legendre(info.l2, info.l1) == -1 and info.l1 % 8 == 3:
        form = ClosedForm.build(p, f, k=f - 4 * info.h1, unit=_sign_unit(sign), surd=_omega_a(info), m=4)
        return form, (NOTE_A_CONGRUENCE, NOTE_E2_EXPONENT)
    return ClosedForm.build(p, f, k=f, unit=_sign_unit(sign)), ()


def _prim_f1(info):
    sol = solve_norm_F1(info.p, info.l1, info.f)
    omega = QuadSurd(info.l1, sol.a, sol.b_abs, 1)
    return ClosedForm.build(info.p, info.f, k=info.f // 2, surd=omega, m=1), ()


def _prim_f2(info):
    p, f = info.p, info.f
    if info.l1 % 4 == 1:
        return ClosedForm.build(p, f, k=f, unit=None, candidates=ALL_UNITS), ()
    sol = solve_two_squares(p, 1)
    omega = QuadSurd(1, sol.a, sol.b_abs, 1)
    return ClosedForm.build(p, f, k=f - 2, e=1, unit=None, candidates=ALL_UNITS, surd=omega, m=1), ()


def _prim_f3(info):
    p, f = info.p, info.f
    sign = (-1) ** (((p + 1) // 4) % 2)
    if info.l1 % 8 == 7:
        return ClosedForm.build(p, f, k=f, unit=_sign_unit(sign)), ()
    form = ClosedForm.build(p, f, k=f - 2 * info.h1, unit=_sign_unit(sign), surd=_omega_a(info), m=2)
    return form, (NOTE_A_CONGRUENCE, NOTE_F3_SQUARE)


_PRIMITIVE = {
    "A": _prim_a,
    "B1": _prim_b1,
    "B2": _prim_b2,
    "C": _prim_c,
    "D": _prim_d,
    "E1": _prim_e1,
    "E2": _prim_e2,
    "F1": _prim_f1,
    "F2": _prim_f2,
    "F3": _prim_f3,
}


def eval_primitive(info):
    """
    Forma fechada de G(χ) para χ primitivo de ordem N, índice 2.

    Args:
        info: CaseInfo com tag de índice 2

    Returns:
        GaussValue (par ±b quando há ambiguidade de surd)
    """
    if info.tag not in INDEX2_TAGS:
        raise WrongTag(f"eval_primitive exige um caso de índice 2, recebido {info.tag}")
    form, notes = _PRIMITIVE[info.tag](info)
    if not form.check_modulus():
        raise ArithmeticError(
            f"Identidade do módulo falhou para {info.tag} (N={info.N}, p={info.p}): "
            f"{form.modulus_exponent()} != f={info.f}"
        )
    extra = KNOWN_NORMALIZATIONS.get((info.tag, info.N, info.p))
    if extra:
        logger.warning(f"Normalização aplicada em (N={info.N}, p={info.p}): {extra}")
        notes = notes + (extra,)
    return GaussValue.from_form(form, notes)


# motor genérico

def _sub_value(plan, p):
    sub = plan.sub_case
    if sub.tag == "QUADRATIC":
        return GaussValue.from_form(quadratic_gauss_fp(p))
    if sub.tag == "PURE":
        return eval_pure(sub)
    if sub.tag in INDEX2_TAGS:
        return eval_primitive(sub)
    raise UnsupportedCase(f"Subcaractere de ordem {plan.N_sub} cai no caso {sub.tag}")


def _collapse(value):
    if value.pair and value.forms[0] == value.forms[1]:
        return replace(value, forms=value.forms[:1], pair=False, selected=None)
    return value


def eval_power(info, lam=1, explicit=True):
    """
    G(χ^λ) pelo motor genérico, conferido com a tabela explícita.

    Args:
        info: CaseInfo de (N, p)
        lam: expoente 0 <= λ < N
        explicit: confere com modules.power_tables quando há entrada

    Returns:
        GaussValue
    """
    if info.tag in UNSUPPORTED_TAGS:
        raise UnsupportedCase(f"(N={info.N}, p={info.p}) tem tag {info.tag}")
    plan = reduce_power(info, lam)
    if plan.lam == 0:
        return GaussValue.from_form(ClosedForm.build(info.p, info.f, unit=2))
    value = _sub_value(plan, info.p)
    if plan.conj_flag:
        value = value.swapped()
    if plan.lift_s > 1:
        value = value.map_forms(lambda form: dh_lift_form(form, plan.lift_s, info.f))
    else:
        value = value.map_forms(lambda form: replace(form, f=info.f))
    value = _collapse(value)
    for form in value.forms:
        if not form.check_modulus():
            raise ArithmeticError(f"Identidade do módulo falhou para λ={lam} em (N={info.N}, p={info.p})")
    if explicit and info.tag in INDEX2_TAGS and plan.lam != 1:
        entry = explicit_power_form(info, plan.lam)
        if entry is not None:
            value = _cross_check(info, plan.lam, value, entry)
    return value


def _realizations(value):
    """Lista de (índice, unidade, CycloElement) para todas as opções; None se não realizável."""
    out = []
    for idx, form in enumerate(value.forms):
        for u in form.unit_options():
            try:
                out.append((idx, u, closed_to_cyclo(form.with_unit(u))))
            except RootNotInField:
                return None
    return out


def _cross_check(info, lam, value, entry):
    generic = _realizations(value)
    table = _realizations(GaussValue.from_form(entry.form))
    if generic is None or table is None:
        logger.debug(f"Conferência explícita ignorada para λ={lam}: forma sem realização ciclotômica")
        return value
    agree = all(any(t == g for _, _, g in generic) for _, _, t in table)
    if agree and all(f.resolved for f in value.forms):
        agree = all(any(g == t for _, _, t in table) for _, _, g in generic)
    if agree:
        return value.with_notes(*entry.notes)
    message = (f"Fórmula explícita [{entry.label}] diverge do motor genérico em "
               f"(N={info.N}, p={info.p}, λ={lam}): {entry.form.describe()} vs "
               f"{' | '.join(f.describe() for f in value.forms)}")
    if entry.strict:
        raise FormulaMismatch(message)
    logger.warning(message)
    return value.with_notes(f"linha consultiva divergente: {entry.label}")


# resolução por oráculo

_ASSOCIATES = ((1, 1, False), (-1, -1, False), (-1, 1, True), (1, -1, True))


def _gaussian_options(a, b):
    """Associados i^j·(a ± bi) como (x, y, membro)."""
    out = []
    for member, bb in ((0, b), (1, -b)):
        for sx, sy, swap in _ASSOCIATES:
            x, y = (bb, a) if swap else (a, bb)
            out.append((sx * x, sy * y, member))
    return out


def _negated(interval):
    return ComplexInterval(-interval.re, -interval.im)


def _select_quartic(value, chi, oracle_value, precision):
    form = value.forms[0]
    p = form.p
    scale = p ** (form.k + form.e)
    try:
        W = (oracle_value * oracle_value * sqrt_pstar_element(p)).exact_div(scale)
    except NotDivisible:
        return None
    a, b = form.gauss_root
    i = make_root(4, 1)
    for x, y, member in _gaussian_options(a, b):
        if W != CycloElement.from_int(x) + i.scale(y):
            continue
        target = complex_embed(oracle_value, precision)
        box = quartic_root_enclosure(x, y, p, form.k, form.e, precision)
        if box.overlaps(target):
            eta = 0
        elif _negated(box).overlaps(target):
            eta = 2
        else:
            return None
        chosen = ClosedForm.build(p, form.f, k=form.k, e=form.e, unit=eta, gauss_root=(x, y), g=1)
        other_unit = (eta + (0 if chi.value_at_minus_one() == 1 else 2)) % 4
        other = ClosedForm.build(p, form.f, k=form.k, e=form.e, unit=other_unit, gauss_root=(x, -y), g=1)
        forms = (chosen, other) if member == 0 else (other, chosen)
        return replace(value, forms=forms, pair=True, cyclo=oracle_value, selected=member)
    return None


def attach_cyclo(value):
    """Preenche value.cyclo com a realização da forma do caractere canônico, quando existe."""
    if value.cyclo is not None:
        return value
    member = value.member()
    if member is None or not member.resolved:
        return value
    try:
        return replace(value, cyclo=closed_to_cyclo(member))
    except RootNotInField:
        logger.debug(f"Sem realização ciclotômica direta para {member.describe()}")
        return value


def match_oracle(value, chi, oracle_value, precision=None):
    """Escolhe membro e unidade iguais ao valor do oráculo; VerificationMismatch se nenhum."""
    if precision is None:
        precision = load_settings()["precision"]
    if any(form.g for form in value.forms):
        chosen = _select_quartic(value, chi, oracle_value, precision)
        if chosen is None:
            raise VerificationMismatch("Nenhum associado de π reproduz o valor do oráculo")
        return chosen
    options = _realizations(value)
    for idx, u, cand in options:
        if cand != oracle_value:
            continue
        chosen = value.forms[idx].with_unit(u)
        forms = [chosen]
        if value.pair:
            other = chosen.galois_conj()
            if chi.value_at_minus_one() == -1:
                other = other.negate()
            forms = [chosen, other] if idx == 0 else [other, chosen]
        return replace(value, forms=tuple(forms), cyclo=oracle_value, selected=idx if value.pair else None)
    raise VerificationMismatch(
        f"Oráculo não coincide com nenhum membro de {' | '.join(f.describe() for f in value.forms)}"
    )


def resolve_ambiguity(value, chi, budget=None, strict=False, precision=None):
    """
    Fixa a unidade e o membro do par pelo oráculo de soma direta.

    Args:
        value: GaussValue
        chi: Character correspondente ao valor
        budget: q máximo para o oráculo
        strict: eleva OracleBudgetExceeded em vez de marcar UNRESOLVED

    Returns:
        GaussValue
    """
    if value.resolved and value.cyclo is not None:
        return value
    if value.resolved and not value.pair:
        return value
    try:
        oracle_value = gauss_sum_direct(chi, 1, budget)
    except BudgetExceeded as e:
        if strict:
            raise OracleBudgetExceeded(f"Resolução obrigatória impossível: {str(e)}")
        logger.info(f"Valor mantido como UNRESOLVED: {str(e)}")
        return value.with_notes("UNRESOLVED: q acima do orçamento do oráculo")
    return match_oracle(value, chi, oracle_value, precision)


# verificação

@dataclass
class VerifyReport:
    case: object
    lam: int
    mu: int
    value: GaussValue
    oracle: Optional[CycloElement]
    match: bool
    member: Optional[str]
    selected: Optional[int]
    notes: tuple = field(default_factory=tuple)
    elapsed: float = 0.0


def verify(N, p, lam=1, mu=1, budget=None, strict=False, precision=None):
    """
    Compara a forma fechada de G(χ^λ, μ) com a soma direta.

    Returns:
        VerifyReport
    """
    started = time.perf_counter()
    try:
        info = classify_case(N, p)
        if info.tag in UNSUPPORTED_TAGS:
            raise UnsupportedCase(f"(N={N}, p={p}) tem tag {info.tag}")
        value = eval_power(info, lam)
        chi = oracle_character(N, p, lam, budget)
        canonical = gauss_sum_direct(chi, 1, budget)
        mu = int(mu) % p
        notes = list(value.notes)
        try:
            value = match_oracle(value, chi, canonical, precision)
            match = True
        except VerificationMismatch as e:
            logger.error(f"Divergência em (N={N}, p={p}, λ={lam}): {str(e)}")
            match = False
        observed = canonical
        if mu != 1:
            observed = gauss_sum_direct(chi, mu, budget)
            k = chi.exponent_at(chi.context.from_int(mu))
            if observed != make_root(N, -k) * canonical:
                notes.append(f"G(χ, {mu}) ≠ χ̄({mu})·G(χ)")
                match = False
        member = value.member()
        report = VerifyReport(
            case=info,
            lam=lam,
            mu=mu,
            value=value,
            oracle=observed,
            match=match,
            member=member.describe() if member is not None and match else None,
            selected=value.selected,
            notes=tuple(notes),
            elapsed=time.perf_counter() - started,
        )
        logger.info(f"Verificação (N={N}, p={p}, λ={lam}, μ={mu}): {'ok' if match else 'DIVERGENTE'}")
        return report
    except Exception as e:
        logger.error(f"Erro ao verificar (N={N}, p={p}, λ={lam}): {str(e)}")
        logger.debug(traceback.format_exc())
        raise


@dataclass
class PowerRow:
    lam: int
    value: GaussValue
    verified: Optional[bool] = None


def eval_all_powers(info, verify_oracle=False, budget=None, precision=None):
    """
    Família completa G(χ^λ), λ = 1..N-1.

    Args:
        info: CaseInfo
        verify_oracle: confere cada λ com a soma direta
        budget: q máximo para o oráculo

    Returns:
        list[PowerRow]
    """
    rows = []
    for lam in range(1, info.N):
        value = eval_power(info, lam)
        verified = None
        if verify_oracle:
            chi = oracle_character(info.N, info.p, lam, budget)
            oracle_value = gauss_sum_direct(chi, 1, budget)
            try:
                value = match_oracle(value, chi, oracle_value, precision)
                verified = True
            except VerificationMismatch as e:
                logger.error(f"λ={lam}: {str(e)}")
                verified = False
        rows.append(PowerRow(lam, value, verified))
    logger.info(f"Família de potências de (N={info.N}, p={info.p}): {len(rows)} valores")
    return rows
