"""
Aritmética exata em Z[ζ_m].

Cada elemento é guardado como o resto canônico módulo o polinômio
ciclotômico Φ_m, na base de potências 1, ζ_m, ..., ζ_m^{φ(m)-1}.
"""
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from mpmath import iv

from utils.errors import (
    BadConductor,
    HalfIntegerViolation,
    NonUnitIndex,
    NotDivisible,
    RootNotInField,
)
from utils.number_theory import euler_phi, is_squarefree, jacobi

logger = logging.getLogger(__name__)

# iv.prec é global no mpmath
_IV_LOCK = threading.Lock()


def _lcm(a, b):
    return a * b // gcd(a, b)


def _poly_divexact(num, den):
    """Divide polinômios inteiros (coeficientes crescentes) com divisor mônico."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = len(den) - 1
    for i in range(len(out) - 1, -1, -1):
        coef = num[i + lead]
        out[i] = coef
        if coef:
            for j, dj in enumerate(den):
                num[i + j] -= coef * dj
    if any(num):
        raise ArithmeticError("divisão de polinômios não exata")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Φ_m como tupla de coeficientes crescentes (mônico, grau φ(m))."""
    if m == 1:
        return (-1, 1)
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


class CycloElement:
    """Elemento imutável de Z[ζ_m] em forma canônica."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs):
        m = int(m)
        if m < 1:
            raise BadConductor(f"Condutor inválido: {m}")
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != euler_phi(m):
            raise ValueError(f"Esperados {euler_phi(m)} coeficientes para m={m}, recebidos {len(coeffs)}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloElement é imutável")

    __hash__ = None

    # construção

    @classmethod
    def from_exponents(cls, m, vector):
        """Reduz Σ vector[k]·ζ_m^k (k < m) à forma canônica."""
        phi_poly = cyclotomic_poly(m)
        deg = len(phi_poly) - 1
        c = [int(v) for v in vector]
        if len(c) != m:
            raise ValueError(f"Vetor de expoentes deve ter comprimento {m}")
        for i in range(m - 1, deg - 1, -1):
            coef = c[i]
            if coef:
                base = i - deg
                for j in range(deg):
                    pj = phi_poly[j]
                    if pj:
                        c[base + j] -= coef * pj
                c[i] = 0
        return cls(m, c[:deg])

    @classmethod
    def from_int(cls, n, m=1):
        coeffs = [0] * euler_phi(m)
        coeffs[0] = int(n)
        return cls(m, coeffs)

    @classmethod
    def zero(cls, m=1):
        return cls.from_int(0, m)

    @classmethod
    def one(cls, m=1):
        return cls.from_int(1, m)

    @property
    def conductor(self):
        return self.m

    # consultas

    def is_zero(self):
        return not any(self.coeffs)

    def to_int(self):
        """Inteiro racional representado, ou None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def exponent_vector(self):
        return list(self.coeffs) + [0] * (self.m - len(self.coeffs))

    # promoção

    def promote(self, m2):
        m2 = int(m2)
        if m2 % self.m:
            raise NotDivisible(f"{self.m} não divide {m2}")
        if m2 == self.m:
            return self
        step = m2 // self.m
        vec = [0] * m2
        for k, c in enumerate(self.coeffs):
            if c:
                vec[k * step] += c
        return CycloElement.from_exponents(m2, vec)

    def demote(self, m1):
        """Inverso exato de promote; NotDivisible se o elemento não está em Q(ζ_{m1})."""
        m1 = int(m1)
        if self.m % m1:
            raise NotDivisible(f"{m1} não divide {self.m}")
        if m1 == self.m:
            return self
        basis = [make_root(m1, k).promote(self.m).coeffs for k in range(euler_phi(m1))]
        solution = _solve_rational(basis, self.coeffs)
        if solution is None or any(s.denominator != 1 for s in solution):
            raise NotDivisible(f"Elemento não pertence a Z[ζ_{m1}]")
        return CycloElement(m1, [int(s) for s in solution])

    def _coerce(self, other):
        if isinstance(other, CycloElement):
            return other
        if isinstance(other, int) or hasattr(other, "__index__"):
            return CycloElement.from_int(int(other), 1)
        return None

    def _common(self, other):
        m = _lcm(self.m, other.m)
        return self.promote(m), other.promote(m)

    # aritmética

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        x, y = self._common(other)
        return CycloElement(x.m, [a + b for a, b in zip(x.coeffs, y.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.m == 1:
            return self.scale(other.coeffs[0])
        if self.m == 1:
            return other.scale(self.coeffs[0])
        x, y = self._common(other)
        m = x.m
        acc = [0] * m
        ys = [(j, b) for j, b in enumerate(y.coeffs) if b]
        for i, a in enumerate(x.coeffs):
            if a:
                for j, b in ys:
                    k = i + j
                    if k >= m:
                        k -= m
                    acc[k] += a * b
        return CycloElement.from_exponents(m, acc)

    __rmul__ = __mul__

    def scale(self, n):
        n = int(n)
        return CycloElement(self.m, [n * a for a in self.coeffs])

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            raise ValueError("Potências negativas não são suportadas em Z[ζ]")
        result = CycloElement.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, n):
        n = int(n)
        if n == 0 or any(a % n for a in self.coeffs):
            raise NotDivisible(f"Divisão por {n} não é exata em Z[ζ_{self.m}]")
        return CycloElement(self.m, [a // n for a in self.coeffs])

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        x, y = self._common(other)
        return x.coeffs == y.coeffs

    # Galois

    def galois(self, a):
        """σ_a: ζ_m -> ζ_m^a."""
        a = int(a.a if isinstance(a, GaloisIndex) else a)
        if gcd(a, self.m) != 1:
            raise NonUnitIndex(f"mdc({a}, {self.m}) != 1")
        vec = [0] * self.m
        for k, c in enumerate(self.coeffs):
            if c:
                vec[k * a % self.m] += c
        return CycloElement.from_exponents(self.m, vec)

    def conj(self):
        return self.galois(-1)

    def complex_embed(self, precision=30):
        return complex_embed(self, precision)

    def __repr__(self):
        terms = [f"{c}*z^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"CycloElement(m={self.m}: {body})"


@dataclass(frozen=True)
class GaloisIndex:
    """σ_a em Gal(Q(ζ_m)/Q)."""
    a: int
    m: int

    def __post_init__(self):
        if gcd(self.a, self.m) != 1:
            raise NonUnitIndex(f"mdc({self.a}, {self.m}) != 1")
        object.__setattr__(self, "a", self.a % self.m)

    def compose(self, other):
        return GaloisIndex(self.a * other.a, self.m)


def _solve_rational(columns, target):
    """Resolve Σ x_j·columns[j] = target sobre Q; None se inconsistente."""
    rows = len(target)
    ncols = len(columns)
    matrix = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(target[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, rows) if matrix[i][c] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        lead = matrix[r][c]
        matrix[r] = [v / lead for v in matrix[r]]
        for i in range(rows):
            if i != r and matrix[i][c] != 0:
                factor = matrix[i][c]
                matrix[i] = [vi - factor * vr for vi, vr in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
    if any(matrix[i][-1] != 0 for i in range(r, rows)):
        return None
    solution = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        solution[c] = matrix[i][-1]
    return solution


def make_root(m, k=1):
    """ζ_m^k em forma canônica."""
    m = int(m)
    if m < 1:
        raise BadConductor(f"Condutor inválido: {m}")
    vec = [0] * m
    vec[int(k) % m] = 1
    return CycloElement.from_exponents(m, vec)


def ring_arith(op, x, y=None):
    """Despacho nominal para as operações de anel."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise ValueError(f"Operação desconhecida: {op}")


def galois_apply(a, x):
    return x.galois(a)


def promote(x, m2):
    return x.promote(m2)


def embed_sqrt_star(m):
    """
    Realiza √(m*) como soma de Gauss quadrática em Z[ζ_m].

    Args:
        m: inteiro ímpar livre de quadrados >= 3, ou 4, ou 8

    Returns:
        CycloElement: e com e² = m* (m ímpar), -1 (m = 4) ou -2 (m = 8)
    """
    m = int(m)
    if m == 4:
        return make_root(4, 1)
    if m == 8:
        return make_root(8, 1) + make_root(8, 3)
    if m < 3 or m % 2 == 0 or not is_squarefree(m):
        raise BadConductor(f"embed_sqrt_star exige m ímpar livre de quadrados, 4 ou 8; recebido {m}")
    vec = [0] * m
    for t in range(1, m):
        vec[t] = jacobi(t, m)
    return CycloElement.from_exponents(m, vec)


def sqrt_two():
    """√2 = ζ_8 + ζ_8^{-1}."""
    return make_root(8, 1) + make_root(8, 7)


def _sqrt_positive_odd(k):
    """√k real positivo para k ímpar livre de quadrados."""
    if k == 1:
        return CycloElement.one()
    e = embed_sqrt_star(k)
    if k % 4 == 1:
        return e
    # e = i·√k
    return -(make_root(4, 1) * e)


def sqrt_neg_conductor(d):
    """Condutor do corpo Q(√-d), d > 0 livre de quadrados."""
    d = int(d)
    if d % 4 == 3:
        return d
    if d % 2 == 0:
        return 8 * (d // 2) if d > 2 else 8
    return 4 * d


def sqrt_neg(d):
    """i·√d como elemento de Z[ζ_c], c = sqrt_neg_conductor(d)."""
    d = int(d)
    if d < 1 or not is_squarefree(d):
        raise BadConductor(f"√-d exige d > 0 livre de quadrados; recebido {d}")
    if d % 4 == 3:
        return embed_sqrt_star(d)
    if d == 1:
        return make_root(4, 1)
    if d == 2:
        return embed_sqrt_star(8)
    i = make_root(4, 1)
    if d % 2 == 0:
        return i * sqrt_two() * _sqrt_positive_odd(d // 2)
    return i * _sqrt_positive_odd(d)


def embed_quad_surd(w, m=None):
    """
    Mergulha (a + b√-d)/den em Z[ζ_m].

    Args:
        w: QuadSurd
        m: condutor alvo; None usa o condutor natural de √-d

    Returns:
        CycloElement
    """
    needed = sqrt_neg_conductor(w.d) if w.b else 1
    if m is None:
        m = needed
    if m % needed:
        raise RootNotInField(f"Q(√-{w.d}) não está contido em Q(ζ_{m})")
    if w.den == 2 and ((w.a - w.b) % 2 or (w.b and w.d % 4 != 3)):
        raise HalfIntegerViolation(f"({w.a} + {w.b}√-{w.d})/2 não é inteiro algébrico")
    value = CycloElement.from_int(w.a)
    if w.b:
        value = value + sqrt_neg(w.d).scale(w.b)
    value = value.promote(m) if value.m != m else value
    if w.den != 1:
        value = value.exact_div(w.den)
    return value


@dataclass(frozen=True)
class ComplexInterval:
    """Envoltório certificado (re, im) com intervalos do mpmath."""
    re: object
    im: object

    def contains(self, z):
        z = complex(z)
        return z.real in self.re and z.imag in self.im

    def conjugate(self):
        return ComplexInterval(self.re, -self.im)

    def overlaps(self, other):
        return _overlap(self.re, other.re) and _overlap(self.im, other.im)

    def __str__(self):
        return f"{self.re} + {self.im}*i"


def _overlap(x, y):
    return not (x.b < y.a or y.b < x.a)


def complex_embed(x, precision=30):
    """
    Imagem de x sob ζ_m -> exp(2πi/m), como envoltório intervalar.

    Uso apenas diagnóstico; nenhuma igualdade é decidida por aqui.
    """
    if precision < 1:
        raise ValueError("precision deve ser >= 1")
    with _IV_LOCK:
        saved = iv.dps
        iv.dps = int(precision) + 10
        try:
            re = iv.mpf(0)
            im = iv.mpf(0)
            two_pi = 2 * iv.pi
            for k, c in enumerate(x.coeffs):
                if c:
                    angle = two_pi * k / x.m
                    re += c * iv.cos(angle)
                    im += c * iv.sin(angle)
        finally:
            iv.dps = saved
    return ComplexInterval(re, im)


def quartic_root_enclosure(x, y, p, k=0, e=0, precision=30):
    """
    Envoltório de p^{k/2}·(√p)^e·√(x+yi)/p^{1/4}, raiz principal.

    x² + y² = p; usado para escolher o sinal de uma raiz quadrática que
    não vive em nenhum Z[ζ_m] pequeno.
    """
    with _IV_LOCK:
        saved = iv.dps
        iv.dps = int(precision) + 10
        try:
            modulus = iv.sqrt(iv.mpf(x * x + y * y))
            re = iv.sqrt((modulus + x) / 2)
            im = iv.sqrt((modulus - x) / 2)
            if y < 0:
                im = -im
            scale = iv.mpf(p) ** k
            scale = iv.sqrt(scale) * iv.sqrt(iv.mpf(p)) ** e / iv.sqrt(iv.sqrt(iv.mpf(p)))
            re, im = re * scale, im * scale
        finally:
            iv.dps = saved
    return ComplexInterval(re, im)
