"""
Corpos quadráticos imaginários: números de classe por formas reduzidas,
equações de norma e aritmética exata de surds (a + b√-d)/den.
"""
import logging
from dataclasses import dataclass
from math import gcd

import gmpy2
from gmpy2 import mpz

from utils.errors import HalfIntegerViolation, NoSolution, NotSquarefree, OddClassNumber
from utils.number_theory import is_squarefree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadSurd:
    """(a + b√-d)/den, com den ∈ {1, 2}."""
    d: int
    a: int
    b: int
    den: int = 1

    def __post_init__(self):
        if self.den not in (1, 2):
            raise ValueError(f"Denominador inválido: {self.den}")
        if self.d < 1:
            raise ValueError(f"d deve ser positivo: {self.d}")
        if self.den == 2 and ((self.a - self.b) % 2 or (self.b % 2 and self.d % 4 != 3)):
            raise HalfIntegerViolation(f"({self.a} + {self.b}√-{self.d})/2 não é inteiro algébrico")

    def normalized(self):
        if self.den == 2 and self.a % 2 == 0 and self.b % 2 == 0:
            return QuadSurd(self.d, self.a // 2, self.b // 2, 1)
        return self

    def norm(self):
        total = self.a * self.a + self.d * self.b * self.b
        return total // (self.den * self.den)

    def conj(self):
        return QuadSurd(self.d, self.a, -self.b, self.den)

    def negate(self):
        return QuadSurd(self.d, -self.a, -self.b, self.den)

    def __mul__(self, other):
        if not isinstance(other, QuadSurd):
            return NotImplemented
        if other.d != self.d:
            raise ValueError(f"Surds de corpos distintos: d={self.d} e d={other.d}")
        A = self.a * other.a - self.d * self.b * other.b
        B = self.a * other.b + self.b * other.a
        den = self.den * other.den
        while den > 1 and A % 2 == 0 and B % 2 == 0:
            A, B, den = A // 2, B // 2, den // 2
        if den > 2:
            raise HalfIntegerViolation("Produto fora do anel de inteiros")
        return QuadSurd(self.d, A, B, den)

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            raise ValueError("Expoente negativo")
        result = QuadSurd(self.d, 1, 0, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def same_value(self, other):
        x, y = self.normalized(), other.normalized()
        return (x.d, x.a, x.b, x.den) == (y.d, y.a, y.b, y.den)

    def __str__(self):
        sign = "+" if self.b >= 0 else "-"
        body = f"{self.a}{sign}{abs(self.b)}√-{self.d}"
        return f"({body})/2" if self.den == 2 else f"({body})"


@dataclass(frozen=True)
class NormEquationSolution:
    a: int
    b_abs: int
    h: int

    def surd(self, d, den):
        return QuadSurd(d, self.a, self.b_abs, den)


def surd_arith(op, x, y=None, e=None):
    """Despacho nominal das operações com surds."""
    if op == "mul":
        return x * y
    if op == "square":
        return x * x
    if op == "pow":
        return x ** e
    if op == "conj":
        return x.conj()
    if op == "norm":
        return x.norm()
    raise ValueError(f"Operação desconhecida: {op}")


def reduced_forms(d):
    """
    Formas quadráticas binárias primitivas reduzidas de discriminante
    -d (d ≡ 3 mod 4) ou -4d (caso contrário).

    Returns:
        list: tuplas (a, b, c) ordenadas
    """
    d = int(d)
    if d < 1 or not is_squarefree(d):
        raise NotSquarefree(f"d={d} não é positivo livre de quadrados")
    D = -d if d % 4 == 3 else -4 * d
    forms = []
    a_max = int(gmpy2.isqrt(-D // 3))
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            forms.append((a, b, c))
    return forms


def class_number(d):
    """h(Q(√-d)) pela contagem de formas reduzidas."""
    h = len(reduced_forms(d))
    logger.debug(f"h(Q(√-{d})) = {h}")
    return h


def _search(total, d, congruence=None, modulus=None, forbid=None):
    """
    Busca exaustiva de a² + d·b² = total com b > 0.

    Retorna (a, b) com o menor b cujo a satisfaz a congruência; sem
    congruência retorna a >= 0.
    """
    total = mpz(total)
    b = 1
    while d * b * b <= total:
        rest = total - d * b * b
        if gmpy2.is_square(rest) and (forbid is None or b % forbid):
            a = int(gmpy2.isqrt(rest))
            if congruence is None:
                return a, b
            for candidate in (a, -a):
                if (candidate - congruence) % modulus == 0:
                    return candidate, b
        b += 1
    return None


def solve_norm_A(p, l, h):
    """
    4p^h = a² + l·b² com a ≡ -2·p^{(l-1+2h)/4} (mod l), p ∤ b.

    Args:
        p: primo
        l: primo ≡ 3 (mod 4)
        h: número de classe h(Q(√-l))

    Returns:
        NormEquationSolution
    """
    if (l - 1 + 2 * h) % 4:
        raise NoSolution(f"Expoente (l-1+2h)/4 não inteiro para l={l}, h={h}")
    target = -2 * pow(p, (l - 1 + 2 * h) // 4, l)
    found = _search(4 * mpz(p) ** h, l, target % l, l, forbid=p)
    if found is None:
        raise NoSolution(f"4·{p}^{h} = a² + {l}b² sem solução primitiva")
    return NormEquationSolution(found[0], found[1], h)


def solve_norm_B1(p, l1, l2, h12):
    """
    4p^{h12} = a'² + l1·l2·b'² com a' ≡ 2p^{h12/2}.

    A congruência é tomada módulo o primo do par que é ≡ 3 (mod 4).
    """
    if h12 % 2:
        raise OddClassNumber(f"h12={h12} ímpar; congruência indefinida")
    d = l1 * l2
    modulus = l1
    if l1 % 4 != 3 and l2 % 4 == 3:
        modulus = l2
    target = 2 * pow(p, h12 // 2, modulus)
    found = _search(4 * mpz(p) ** h12, d, target % modulus, modulus, forbid=p)
    if found is None:
        raise NoSolution(f"4·{p}^{h12} = a'² + {d}b'² sem solução primitiva")
    return NormEquationSolution(found[0], found[1], h12)


def solve_norm_F1(p, l, f):
    """a'² + l·b'² = p^{f/2} com a' ≡ -p^{f/4} (mod l), p ∤ b'."""
    if f % 4:
        raise NoSolution(f"f={f} não é múltiplo de 4")
    target = -pow(p, f // 4, l)
    found = _search(mpz(p) ** (f // 2), l, target % l, l, forbid=p)
    if found is None:
        raise NoSolution(f"{p}^{f // 2} = a'² + {l}b'² sem solução primitiva")
    return NormEquationSolution(found[0], found[1], f // 2)


def solve_two_squares(p, d):
    """a² + d·b² = p para d ∈ {1, 2}, com a >= 0 e b > 0."""
    found = _search(p, d)
    if found is None:
        raise NoSolution(f"{p} = a² + {d}b² sem solução")
    return NormEquationSolution(found[0], found[1], 1)
