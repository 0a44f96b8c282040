"""
Corpos finitos F_{p^f} com tabelas de logaritmo discreto, traço e caracteres
multiplicativos exatos com valores em Z[ζ_N].

Elementos são codificados como inteiros 0..q-1 cujos dígitos na base p são
os coeficientes do polinômio (dígito i = coeficiente de x^i).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from config import load_settings
from modules.cyclo import make_root
from utils.errors import BudgetExceeded, NotPrime, OrderNotDividing
from utils.number_theory import factorize, is_prime

logger = logging.getLogger(__name__)


# polinômios sobre F_p, coeficientes crescentes

def _trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, mod, p):
    a = [c % p for c in a]
    deg = len(mod) - 1
    for i in range(len(a) - 1, deg - 1, -1):
        coef = a[i]
        if coef:
            base = i - deg
            for j in range(deg + 1):
                a[base + j] = (a[base + j] - coef * mod[j]) % p
    return _trim(a[:deg] if len(a) > deg else a) or [0]


def _poly_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, mod, p)


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = _poly_mod(list(a), mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, mod, p)
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_gcd(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while any(b):
        inv = pow(b[-1], -1, p)
        monic = [c * inv % p for c in b]
        a, b = b, _poly_mod(a, monic, p)
    return a


def _is_irreducible(mod, p):
    """Teste de Ben-Or: mdc(x^{p^k} - x, g) = 1 para k <= f/2."""
    f = len(mod) - 1
    xp = [0, 1]
    for _ in range(f // 2):
        xp = _poly_powmod(xp, p, mod, p)
        g = _poly_gcd(mod, _poly_sub(xp, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def _digits(n, p, f):
    return [(n // p ** i) % p for i in range(f)]


@dataclass(frozen=True)
class FieldElement:
    """Elemento de F_q como coeficientes polinomiais módulo p."""
    coeffs: tuple

    def encode(self, p):
        return sum(int(c) * p ** i for i, c in enumerate(self.coeffs))


class FieldContext:
    """F_{p^f} com módulo, gerador e tabelas exp/log/traço."""

    def __init__(self, p, f, modulus, generator, exp_table, log_of, trace_by_log, basis_traces):
        self.p = p
        self.f = f
        self.q = p ** f
        self.modulus = tuple(modulus)
        self.generator = tuple(generator)
        self.exp_table = exp_table
        self.log_of = log_of
        self.trace_by_log = trace_by_log
        self.basis_traces = basis_traces
        self._powers = np.array([p ** i for i in range(f)], dtype=np.int64)
        for table in (exp_table, log_of, trace_by_log):
            table.setflags(write=False)

    # codificação

    def encode(self, element):
        if isinstance(element, FieldElement):
            return element.encode(self.p)
        return int(element)

    def element(self, code):
        return FieldElement(tuple(_digits(int(code), self.p, self.f)))

    def digits(self, code):
        return _digits(int(code), self.p, self.f)

    # aritmética via logaritmos

    def log(self, x):
        code = self.encode(x)
        if code == 0:
            raise ZeroDivisionError("log(0) indefinido")
        return int(self.log_of[code])

    def exp(self, k):
        return int(self.exp_table[int(k) % (self.q - 1)])

    def mul(self, x, y):
        x, y = self.encode(x), self.encode(y)
        if x == 0 or y == 0:
            return 0
        return self.exp(self.log_of[x] + self.log_of[y])

    def add(self, x, y):
        dx, dy = self.digits(self.encode(x)), self.digits(self.encode(y))
        return sum(((a + b) % self.p) * self.p ** i for i, (a, b) in enumerate(zip(dx, dy)))

    def neg(self, x):
        return sum(((-a) % self.p) * self.p ** i for i, a in enumerate(self.digits(self.encode(x))))

    def power(self, x, e):
        code = self.encode(x)
        if code == 0:
            return 0 if e else 1
        return self.exp(int(self.log_of[code]) * int(e))

    def from_int(self, c):
        """Constante c ∈ F_p (codificação = c mod p)."""
        return int(c) % self.p

    def trace(self, x):
        code = self.encode(x)
        if code == 0:
            return 0
        return int(self.trace_by_log[self.log_of[code]])

    def describe(self):
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus) + [1], "generator": list(self.generator)}

    def __repr__(self):
        return f"FieldContext(p={self.p}, f={self.f}, q={self.q})"


def _find_modulus(p, f):
    if f == 1:
        return [0, 1]
    for n in range(p ** f):
        mod = _digits(n, p, f) + [1]
        if mod[0] == 0:
            continue
        if _is_irreducible(mod, p):
            return mod
    raise RuntimeError(f"Nenhum polinômio irredutível de grau {f} sobre F_{p}")


def _find_generator(p, f, mod):
    q = p ** f
    primes = [r for r, _ in factorize(q - 1)]
    for n in range(1, q):
        cand = _digits(n, p, f)
        if all(_poly_powmod(cand, (q - 1) // r, mod, p) != [1] for r in primes):
            return n, cand
    raise RuntimeError(f"Nenhum gerador encontrado para F_{q}")


def _mult_matrix(c, mod, p, f):
    """Matriz f×f de y -> y·c na base de potências (linhas = x^i·c)."""
    rows = []
    for i in range(f):
        xi = [0] * i + [1]
        prod = _poly_mulmod(xi, c, mod, p)
        rows.append(prod + [0] * (f - len(prod)))
    return np.array(rows, dtype=np.int64)


def _trace_of_poly(y, mod, p, f):
    total = [0]
    current = list(y)
    for _ in range(f):
        total = _poly_mod(_poly_add(total, current), mod, p)
        current = _poly_powmod(current, p, mod, p)
    if len(total) > 1:
        raise ArithmeticError("traço fora de F_p")
    return total[0] % p


@lru_cache(maxsize=16)
def _build(p, f):
    q = p ** f
    logger.info(f"Construindo F_{p}^{f} (q = {q})")
    mod = _find_modulus(p, f)
    gen_code, gen = _find_generator(p, f, mod)

    # potências do gerador por duplicação: bloco seguinte = bloco · g^B
    table = np.zeros((q - 1, f), dtype=np.int64)
    table[0, 0] = 1
    filled = 1
    block_elem = list(gen)
    while filled < q - 1:
        take = min(filled, q - 1 - filled)
        M = _mult_matrix(block_elem, mod, p, f)
        table[filled:filled + take] = (table[:take] @ M) % p
        block_elem = _poly_mulmod(block_elem, block_elem, mod, p)
        filled += take
    powers = np.array([p ** i for i in range(f)], dtype=np.int64)
    exp_table = table @ powers
    log_of = np.full(q, -1, dtype=np.int64)
    log_of[exp_table] = np.arange(q - 1, dtype=np.int64)
    if np.count_nonzero(log_of >= 0) != q - 1 or log_of[0] != -1:
        raise ArithmeticError(f"Tabela de logaritmos não é bijetiva para F_{q}")

    basis_traces = np.array([_trace_of_poly([0] * i + [1], mod, p, f) for i in range(f)], dtype=np.int64)
    trace_by_log = (table @ basis_traces) % p
    logger.debug(f"F_{q}: módulo {mod}, gerador {gen}")
    return FieldContext(p, f, mod[:-1], _digits(gen_code, p, f), exp_table, log_of, trace_by_log, basis_traces)


def build_context(p, f, budget=None):
    """
    Constrói o contexto de F_{p^f}.

    Args:
        p: primo
        f: grau
        budget: q máximo permitido (None usa a configuração)

    Returns:
        FieldContext
    """
    if budget is None:
        budget = load_settings()["budget"]
    if not is_prime(p):
        raise NotPrime(f"{p} não é primo")
    if f < 1:
        raise ValueError(f"Grau inválido: {f}")
    q = p ** f
    if q > budget:
        raise BudgetExceeded(f"q = {p}^{f} = {q} excede o orçamento {budget}")
    return _build(int(p), int(f))


def trace(ctx, x):
    return ctx.trace(x)


class Character:
    """χ^exponent, onde χ é o caractere canônico de ordem N (χ(g) = ζ_N)."""

    def __init__(self, context, N, exponent=1):
        if (context.q - 1) % N:
            raise OrderNotDividing(f"{N} não divide q - 1 = {context.q - 1}")
        self.context = context
        self.N = int(N)
        self.exponent = int(exponent) % self.N

    @property
    def order(self):
        return self.N // gcd(self.exponent, self.N)

    def is_trivial(self):
        return self.exponent == 0

    def exponent_at(self, x):
        """k com χ(x) = ζ_N^k; None para x = 0."""
        code = self.context.encode(x)
        if code == 0:
            return None
        return self.exponent * int(self.context.log_of[code]) % self.N

    def __call__(self, x):
        k = self.exponent_at(x)
        if k is None:
            return None
        return make_root(self.N, k)

    def power(self, k):
        return Character(self.context, self.N, self.exponent * k)

    def conj(self):
        return self.power(-1)

    def lift(self, M):
        """Mesmo caractere visto com ordem nominal M (N | M)."""
        if M % self.N:
            raise OrderNotDividing(f"{self.N} não divide {M}")
        return Character(self.context, M, self.exponent * (M // self.N))

    def times(self, other):
        M = self.N * other.N // gcd(self.N, other.N)
        a, b = self.lift(M), other.lift(M)
        return Character(self.context, M, a.exponent + b.exponent)

    def value_at_minus_one(self):
        """χ(-1) ∈ {1, -1}."""
        q = self.context.q
        if q % 2 == 0:
            return 1
        k = self.exponent * ((q - 1) // 2) % self.N
        return 1 if k == 0 else -1

    def __repr__(self):
        return f"Character(q={self.context.q}, N={self.N}, exponent={self.exponent})"


def canonical_character(ctx, N):
    return Character(ctx, N, 1)


def char_eval(chi, x):
    """χ(x) em Z[ζ_N]; None representa o símbolo de zero (x = 0)."""
    return chi(x)


def restriction_order(chi):
    """Ordem de χ restrito a F_p*: N' / mdc(N', (q-1)/(p-1))."""
    ctx = chi.context
    n_eff = chi.order
    return n_eff // gcd(n_eff, (ctx.q - 1) // (ctx.p - 1))


def restriction_order_bruteforce(chi):
    """Ordem do caractere restrito, calculada diretamente em F_p*."""
    ctx = chi.context
    exps = [chi.exponent_at(ctx.from_int(c)) for c in range(1, ctx.p)]
    order = 1
    for k in exps:
        order = order * (chi.N // gcd(k, chi.N)) // gcd(order, chi.N // gcd(k, chi.N))
    return order


def character_values(chi):
    """Vetor numpy com o expoente de χ(g^i) para cada i."""
    q = chi.context.q
    return (np.arange(q - 1, dtype=np.int64) * chi.exponent) % chi.N

