"""
Oráculo por soma direta, formas fechadas pequenas (quadrática, quadrática
elevada, pura) e as relações de Davenport-Hasse como reduções executáveis.
"""
import logging
import traceback

import numpy as np

from config import load_settings
from modules.cyclo import CycloElement, embed_sqrt_star, make_root
from modules.ffield import Character, build_context, canonical_character, character_values, restriction_order
from modules.forms import ClosedForm
from utils.errors import BudgetExceeded, NotPure, UnsupportedCase
from utils.number_theory import crt_pair, mult_order

logger = logging.getLogger(__name__)


def _check_budget(ctx, budget):
    if budget is None:
        budget = load_settings()["budget"]
    if ctx.q > budget:
        raise BudgetExceeded(f"q = {ctx.q} excede o orçamento do oráculo {budget}")


def gauss_sum_direct(chi, mu=1, budget=None, allow_zero_mu=False):
    """
    G(χ, μ) = Σ_x χ(x)·ζ_p^{T(μx)} por soma direta.

    Os termos são acumulados como contagens de expoentes de ζ_{Np} e
    reduzidos uma única vez.

    Args:
        chi: Character
        mu: resíduo módulo p
        budget: q máximo (None usa a configuração)
        allow_zero_mu: permite μ ≡ 0

    Returns:
        CycloElement em Z[ζ_{Np}]
    """
    ctx = chi.context
    _check_budget(ctx, budget)
    p, N = ctx.p, chi.N
    mu = int(mu) % p
    if mu == 0 and not allow_zero_mu:
        raise ValueError("μ ≡ 0 (mod p) exige allow_zero_mu=True")
    m = N * p
    try:
        char_exps = character_values(chi)
        traces = (ctx.trace_by_log * mu) % p
        exps = (char_exps * p + traces * N) % m
        counts = np.bincount(exps, minlength=m)
        logger.debug(f"Soma direta: q={ctx.q}, N={N}, λ={chi.exponent}, μ={mu}")
        return CycloElement.from_exponents(m, [int(c) for c in counts])
    except Exception as e:
        logger.error(f"Erro ao calcular a soma de Gauss direta: {str(e)}")
        logger.error(traceback.format_exc())
        raise


def gauss_sum_scaled(chi, mu, budget=None):
    """χ̄(μ)·G(χ, 1)."""
    ctx = chi.context
    mu = int(mu) % ctx.p
    if mu == 0:
        raise ValueError("μ deve ser não nulo")
    k = chi.exponent_at(ctx.from_int(mu))
    return make_root(chi.N, -k) * gauss_sum_direct(chi, 1, budget)


def oracle_character(N, p, lam=1, budget=None):
    """Caractere χ^λ com χ canônico de ordem N sobre F_{p^f}, f = ord_N(p)."""
    f = mult_order(p, N)
    ctx = build_context(p, f, budget)
    return canonical_character(ctx, N).power(lam)


def quadratic_gauss_fp(p):
    """√p* (√p se p ≡ 1, i√p se p ≡ 3 mod 4)."""
    if p == 2:
        raise ValueError("p deve ser ímpar")
    return ClosedForm.build(p, 1, e=1)


def quadratic_gauss_lifted(p, d):
    """(-1)^{d-1}·(√p*)^d: soma quadrática sobre F_{p^d}."""
    if p == 2:
        raise ValueError("p deve ser ímpar")
    return ClosedForm.build(p, d, e=d, unit=0 if d % 2 else 2)


def pure_gauss(p, N, f):
    """
    Soma de Gauss pura (-1 ∈ ⟨p⟩ mod N).

    Args:
        p: primo
        N: ordem (>= 3)
        f: grau do corpo

    Returns:
        ClosedForm real ±p^{f/2}
    """
    if N < 3:
        raise NotPure(f"N={N} não admite soma pura")
    t = None
    x = 1
    for i in range(1, mult_order(p, N) + 1):
        x = x * p % N
        if x == N - 1:
            t = i
            break
    if t is None:
        raise NotPure(f"-1 ∉ ⟨{p}⟩ mod {N}")
    if f % (2 * t):
        raise NotPure(f"f={f} não é múltiplo de 2t={2 * t}")
    s = f // (2 * t)
    if p == 2:
        sign_exp = s - 1
    else:
        sign_exp = s - 1 + (p ** t + 1) * s // N
    return ClosedForm.build(p, f, k=f, unit=2 * (sign_exp % 2))


def trace_one_sum(chi, budget=None):
    """Σ_{T(x)=1} χ(x) em Z[ζ_N]."""
    ctx = chi.context
    _check_budget(ctx, budget)
    mask = ctx.trace_by_log == 1
    exps = character_values(chi)[mask]
    counts = np.bincount(exps, minlength=chi.N)
    return CycloElement.from_exponents(chi.N, [int(c) for c in counts])


def restricted_gauss_fp(chi):
    """
    Fator G_p(χ|F_p) da fatoração G(χ) = S·G_p.

    Para restrição trivial o fator é -p (a fibra T(x) = 0 contribui
    -(p-1)·S); para restrição quadrática é √p*.
    """
    r = restriction_order(chi)
    p = chi.context.p
    if r == 1:
        return CycloElement.from_int(-p)
    if r == 2:
        return embed_sqrt_star(p)
    raise UnsupportedCase(f"Restrição de ordem {r} não tem fator fechado")


def dh_lift(g_sub, s):
    """(-1)^{s-1}·g_sub^s."""
    s = int(s)
    if s < 1:
        raise ValueError("s deve ser >= 1")
    value = g_sub ** s
    return value if s % 2 else -value


def dh_lift_form(form, s, f_new=None):
    """Levantamento de Davenport-Hasse aplicado a uma ClosedForm."""
    lifted = form.power(s, f_new)
    return lifted if s % 2 else lifted.negate()


def dh_product_check(chi, budget=None):
    """
    Verifica G(χ)·G(χη) = χ̄²(2)·G(χ²)·G(η), η quadrático.

    Returns:
        bool
    """
    ctx = chi.context
    if ctx.q % 2 == 0:
        raise ValueError("A relação de produto exige q ímpar")
    chi2 = chi.power(2)
    if chi2.is_trivial():
        raise ValueError("χ² deve ser não trivial")
    eta = Character(ctx, 2, 1)
    chi_eta = chi.times(eta)
    lhs = gauss_sum_direct(chi, 1, budget) * gauss_sum_direct(chi_eta, 1, budget)
    k = chi2.exponent_at(ctx.from_int(2))
    rhs = make_root(chi2.N, -k) * gauss_sum_direct(chi2, 1, budget) * gauss_sum_direct(eta, 1, budget)
    return lhs == rhs


def galois_element(N, p, l, t):
    """Índice a ∈ (Z/NpZ)* com a ≡ l (mod N) e a ≡ t (mod p)."""
    if N == 1:
        return t % p
    return crt_pair(l % N, N, t % p, p)


def galois_twist(value, N, p, l, t):
    """σ_l τ_t aplicado a um elemento de Z[ζ_{Np}]."""
    m = N * p
    return value.promote(m).galois(galois_element(N, p, l, t))


def frobenius_apply(value, N, p):
    """σ_p sobre ζ_N, identidade sobre ζ_p."""
    return galois_twist(value, N, p, p % N, 1)
