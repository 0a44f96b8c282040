"""Funções aritméticas elementares usadas em todo o pacote."""
import logging
from functools import lru_cache
from math import gcd

import gmpy2
from gmpy2 import mpz

from utils.errors import NotCoprime

logger = logging.getLogger(__name__)

# Testemunhas determinísticas para n < 3.3 * 10^24 (cobre 64 bits)
MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """
    Teste de Miller-Rabin determinístico para entradas de até 64 bits.

    Args:
        n: inteiro a testar

    Returns:
        bool: True se n é primo
    """
    n = int(n)
    if n < 2:
        return False
    for w in MR_WITNESSES:
        if n % w == 0:
            return n == w
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in MR_WITNESSES:
        x = gmpy2.powmod(w, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = gmpy2.powmod(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def _factor_cached(n):
    factors = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return tuple(factors)


def factorize(n):
    """Fatoração por divisão experimental; retorna tupla ordenada de (primo, expoente)."""
    n = int(n)
    if n < 1:
        raise ValueError(f"Não é possível fatorar {n}")
    return _factor_cached(n)


def euler_phi(n):
    result = 1
    for prime, e in factorize(n):
        result *= (prime - 1) * prime ** (e - 1)
    return result


def is_squarefree(n):
    return all(e == 1 for _, e in factorize(n))


def mult_order(p, N):
    """
    Ordem multiplicativa de p módulo N, via a fatoração de φ(N).

    Args:
        p: inteiro coprimo com N
        N: módulo positivo

    Returns:
        int: menor f >= 1 com p^f ≡ 1 (mod N)
    """
    p, N = int(p), int(N)
    if N == 1:
        return 1
    if gcd(p, N) != 1:
        raise NotCoprime(f"mdc({p}, {N}) != 1")
    order = euler_phi(N)
    for prime, _ in factorize(order):
        while order % prime == 0 and gmpy2.powmod(p, order // prime, N) == 1:
            order //= prime
    return order


def subgroup_generated(p, N):
    """Conjunto ⟨p⟩ ⊂ (Z/NZ)*."""
    N = int(N)
    if N <= 2:
        return frozenset({1 % N}) if N else frozenset()
    elements = set()
    x = 1
    while True:
        elements.add(x)
        x = x * p % N
        if x == 1:
            break
    return frozenset(elements)


def multiplicative_index(p, N):
    """Índice r = [(Z/NZ)* : ⟨p⟩] = φ(N)/f."""
    return euler_phi(N) // mult_order(p, N)


def minus_one_in_subgroup(p, N):
    if N <= 2:
        return True
    return (N - 1) in subgroup_generated(p, N)


def jacobi(a, n):
    return int(gmpy2.jacobi(a, n))


def legendre(a, p):
    return int(gmpy2.legendre(a, p))


def int_log(value, base):
    """Retorna v com base^v == value exatamente, ou None."""
    value = mpz(value)
    if value < 1:
        return None
    v = 0
    while value % base == 0:
        value //= base
        v += 1
    return v if value == 1 else None


def crt_pair(r1, m1, r2, m2):
    """x ≡ r1 (mod m1), x ≡ r2 (mod m2) com mdc(m1, m2) = 1."""
    inverse = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * inverse % m2)) % (m1 * m2)
