"""
Valores simbólicos de somas de Gauss.

ClosedForm representa i^unit · p^{k/2} · (√p*)^e · ω^m · z^g, onde ω é um
QuadSurd e z = √(a+bi)/p^{1/4} (raiz principal) aparece só no Caso C com
p ≡ 1 (mod 4).
"""
import logging
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Optional

from modules.cyclo import CycloElement, embed_quad_surd, embed_sqrt_star, make_root, sqrt_neg_conductor, sqrt_two
from modules.quad import QuadSurd
from utils.errors import RootNotInField
from utils.number_theory import int_log

logger = logging.getLogger(__name__)

ALL_UNITS = (0, 1, 2, 3)
REAL_UNITS = (0, 2)
UNIT_NAMES = {0: "1", 1: "i", 2: "-1", 3: "-i"}


def pstar(p):
    """p* = (-1)^{(p-1)/2}·p para p ímpar; 2 para p = 2."""
    if p == 2:
        return 2
    return p if p % 4 == 1 else -p


@dataclass(frozen=True)
class ClosedForm:
    p: int
    f: int
    k: int = 0
    e: int = 0
    unit: Optional[int] = 0
    candidates: tuple = ()
    surd: Optional[QuadSurd] = None
    m: int = 0
    gauss_root: Optional[tuple] = None
    g: int = 0

    @property
    def q(self):
        return self.p ** self.f

    @property
    def resolved(self):
        return self.unit is not None

    def unit_options(self):
        return (self.unit,) if self.unit is not None else tuple(self.candidates)

    # construção normalizada

    @classmethod
    def build(cls, p, f, k=0, e=0, unit=0, candidates=(), surd=None, m=0, gauss_root=None, g=0):
        unit_shift = 0
        if gauss_root is not None and g >= 2:
            j = g // 2
            pi = QuadSurd(1, gauss_root[0], gauss_root[1])
            if surd is not None and m:
                if not surd.same_value(pi):
                    raise ValueError("Forma com dois surds distintos não é suportada")
                m += j
            else:
                surd, m = pi, j
            k -= j
            g %= 2
        if gauss_root is None or g == 0:
            gauss_root, g = None, 0
        if k % 2:
            k -= 1
            e += 1
            if p % 4 == 3:
                unit_shift += 3
        while e >= 2:
            e -= 2
            k += 2
            if pstar(p) < 0:
                unit_shift += 2
        if k < 0:
            raise ValueError(f"Expoente de p negativo: k={k}")
        if surd is not None and m:
            surd = surd.normalized()
            if surd.b == 0:
                # ω racional: absorve em unidade e potência de p
                a = surd.a ** m
                if a < 0:
                    unit_shift += 2
                    a = -a
                v = int_log(a, p)
                if v is None:
                    raise ValueError(f"Surd racional {a} não é potência de {p}")
                k += 2 * v
                surd, m = None, 0
        else:
            surd, m = None, 0
        if unit is None:
            candidates = tuple(sorted({(c + unit_shift) % 4 for c in candidates}))
            if len(candidates) == 1:
                unit, candidates = candidates[0], ()
        else:
            unit = (unit + unit_shift) % 4
            candidates = ()
        return cls(p, f, k, e, unit, candidates, surd, m, gauss_root, g)

    def _rebuild(self, **changes):
        data = dict(p=self.p, f=self.f, k=self.k, e=self.e, unit=self.unit, candidates=self.candidates,
                    surd=self.surd, m=self.m, gauss_root=self.gauss_root, g=self.g)
        data.update(changes)
        return ClosedForm.build(**data)

    # operações

    def times_unit(self, u):
        if self.unit is None:
            return self._rebuild(candidates=tuple((c + u) % 4 for c in self.candidates))
        return self._rebuild(unit=(self.unit + u) % 4)

    def negate(self):
        return self.times_unit(2)

    def with_unit(self, u):
        return self._rebuild(unit=u % 4, candidates=())

    def power(self, s, f_new=None):
        """Potência s-ésima; f_new é o grau do corpo onde o resultado vive."""
        s = int(s)
        if self.unit is None:
            unit, candidates = None, tuple((c * s) % 4 for c in self.candidates)
            if self.gauss_root is not None and self.g and s % 2 == 0:
                # associado i^j·π desconhecido: z^s ganha i^{j·s/2}
                candidates = tuple(sorted({(c + j * (s // 2)) % 4 for c in candidates for j in range(4)}))
        else:
            unit, candidates = (self.unit * s) % 4, ()
        surd, m = self.surd, self.m * s
        g = self.g * s
        return ClosedForm.build(self.p, f_new if f_new is not None else self.f * s, self.k * s, self.e * s,
                                unit, candidates, surd, m, self.gauss_root, g)

    def other_member(self):
        """O outro membro do par (troca o sinal de b)."""
        surd = self.surd.conj() if self.surd is not None else None
        root = (self.gauss_root[0], -self.gauss_root[1]) if self.gauss_root else None
        return replace(self, surd=surd, gauss_root=root)

    def galois_conj(self):
        """Imagem de σ_{-1} do valor."""
        shift = 0
        if self.e and pstar(self.p) < 0:
            shift = 2
        form = self.other_member()
        if form.unit is None:
            candidates = tuple(sorted({(-c + shift) % 4 for c in form.candidates}))
            return replace(form, candidates=candidates)
        return replace(form, unit=(-form.unit + shift) % 4)

    def has_surd_ambiguity(self):
        return (self.surd is not None and self.surd.b != 0) or (self.gauss_root is not None and self.gauss_root[1] != 0)

    # verificações

    def modulus_exponent(self):
        """k + e + m·v com v = log_p(norma ω); igual a f quando |G|² = q."""
        total = self.k + self.e
        if self.surd is not None and self.m:
            v = int_log(self.surd.norm(), self.p)
            if v is None:
                raise ArithmeticError(f"Norma de {self.surd} não é potência de {self.p}")
            total += self.m * v
        return total

    def check_modulus(self):
        return self.modulus_exponent() == self.f

    def natural_conductor(self):
        if self.g:
            raise RootNotInField("√(a+bi)/p^{1/4} não tem realização direta; use o oráculo")
        m = 1
        if self.e:
            m = _lcm(m, 8 if self.p == 2 else self.p)
        if any(u % 2 for u in self.unit_options()):
            m = _lcm(m, 4)
        if self.surd is not None and self.m and self.surd.b:
            m = _lcm(m, sqrt_neg_conductor(self.surd.d))
        return m

    def describe(self):
        return to_text(self)


def _lcm(a, b):
    return a * b // gcd(a, b)


def sqrt_pstar_element(p):
    return sqrt_two() if p == 2 else embed_sqrt_star(p)


def closed_to_cyclo(v, m=None):
    """
    Realiza uma ClosedForm resolvida como CycloElement.

    Args:
        v: ClosedForm com unidade resolvida
        m: condutor alvo (None usa o condutor natural)

    Returns:
        CycloElement
    """
    if v.unit is None:
        raise ValueError("Forma com unidade não resolvida não pode ser realizada")
    natural = v.natural_conductor()
    if m is None:
        m = natural
    if m % natural:
        raise RootNotInField(f"Condutor {m} não contém os radicais da forma (mínimo {natural})")
    value = CycloElement.from_int(v.p ** (v.k // 2))
    # -1 vive em qualquer condutor; só i e -i exigem 4 | m
    if v.unit == 2:
        value = -value
    elif v.unit:
        value = value * make_root(4, v.unit)
    if v.e:
        value = value * sqrt_pstar_element(v.p)
    if v.surd is not None and v.m:
        value = value * embed_quad_surd(v.surd ** v.m)
    return value.promote(m)


def to_text(v):
    """Representação legível, por exemplo -11·√(-11)."""
    parts = []
    if v.unit is None:
        parts.append("ε")
    coeff = v.p ** (v.k // 2)
    sign = ""
    if v.unit == 2:
        sign = "-"
    elif v.unit in (1, 3):
        parts.append(UNIT_NAMES[v.unit])
    if coeff != 1 or not (v.e or v.surd or v.g):
        parts.append(str(coeff))
    if v.e:
        parts.append(f"√({pstar(v.p)})")
    if v.surd is not None and v.m:
        parts.append(str(v.surd) + (f"^{v.m}" if v.m != 1 else ""))
    if v.g:
        a, b = v.gauss_root
        parts.append(f"√({a}{'+' if b >= 0 else '-'}{abs(b)}i)/{v.p}^(1/4)")
    return sign + "·".join(parts)


@dataclass(frozen=True)
class GaussValue:
    """Um valor ou um par {G(χ), G(χ̄)} de formas fechadas."""
    forms: tuple
    pair: bool = False
    cyclo: Optional[CycloElement] = None
    selected: Optional[int] = None
    notes: tuple = field(default_factory=tuple)

    @classmethod
    def from_form(cls, form, notes=()):
        if form.has_surd_ambiguity():
            return cls((form, form.other_member()), True, notes=tuple(notes))
        return cls((form,), False, notes=tuple(notes))

    @property
    def resolved(self):
        return all(f.resolved for f in self.forms) and (not self.pair or self.selected is not None)

    @property
    def unit_label(self):
        units = sorted({u for f in self.forms for u in f.unit_options()})
        if all(f.resolved for f in self.forms):
            return ",".join(UNIT_NAMES[u] for u in units)
        return "UNRESOLVED{" + ",".join(UNIT_NAMES[u] for u in units) + "}"

    def with_notes(self, *notes):
        return replace(self, notes=self.notes + tuple(n for n in notes if n not in self.notes))

    def swapped(self):
        if not self.pair:
            return self
        sel = None if self.selected is None else 1 - self.selected
        return replace(self, forms=(self.forms[1], self.forms[0]), selected=sel)

    def map_forms(self, fn):
        return replace(self, forms=tuple(fn(f) for f in self.forms), cyclo=None, selected=self.selected)

    def member(self):
        """Forma do caractere canônico, se conhecida."""
        if self.selected is not None:
            return self.forms[self.selected]
        if not self.pair:
            return self.forms[0]
        return None
