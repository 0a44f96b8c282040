"""
Varredura exaustiva das leis das somas de Gauss sobre uma faixa de (N, p).

Cada instância (N, p) roda em um processo; as linhas de resultado são
ordenadas antes do resumo para que duas execuções produzam o mesmo relatório.
"""
import logging
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd

import pandas as pd

from config import load_settings
from modules.classify import EVALUABLE_TAGS, classify_case
from modules.cyclo import make_root
from modules.evaluator import eval_power, match_oracle
from modules.ffield import restriction_order
from modules.forms import closed_to_cyclo
from modules.oracle import (
    dh_product_check,
    frobenius_apply,
    galois_twist,
    gauss_sum_direct,
    oracle_character,
    pure_gauss,
    restricted_gauss_fp,
    trace_one_sum,
)
from utils.errors import FormulaMismatch, UnsupportedCase, VerificationMismatch
from utils.number_theory import is_prime, minus_one_in_subgroup, mult_order

logger = logging.getLogger(__name__)

ALL_CHECKS = ("modulus", "conjugation", "frobenius", "galois", "dh_product", "factorization", "pure", "closed_form")
LAMBDA_MODES = ("all", "primitive", "divisor-powers")
# acima deste q a lei de Galois usa uma amostra de (l, t)
GALOIS_FULL_LIMIT = 10 ** 4


@dataclass
class SweepSpec:
    N_range: tuple = (2, 30)
    p_range: tuple = (2, 19)
    q_budget: int = 10 ** 6
    lambda_mode: str = "all"
    checks: tuple = ALL_CHECKS
    workers: int = 1

    @classmethod
    def from_config(cls, data, overrides=None):
        """Monta a especificação a partir de config/sweep.json e das flags."""
        merged = dict(data)
        merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
        checks = merged.get("checks", "all")
        if checks == "all":
            checks = ALL_CHECKS
        elif isinstance(checks, str):
            checks = tuple(c.strip() for c in checks.split(",") if c.strip())
        workers = merged.get("workers") or load_settings()["workers"]
        return cls(
            N_range=tuple(merged.get("N_range", (2, 30))),
            p_range=tuple(merged.get("p_range", (2, 19))),
            q_budget=int(merged.get("q_budget", 10 ** 6)),
            lambda_mode=merged.get("lambda_mode", "all"),
            checks=tuple(checks),
            workers=int(workers),
        )

    def validate(self, cap=None):
        cap = cap if cap is not None else load_settings()["budget"]
        if self.q_budget > cap:
            raise ValueError(f"q_budget={self.q_budget} excede o limite global {cap}")
        if self.lambda_mode not in LAMBDA_MODES:
            raise ValueError(f"lambda_mode inválido: {self.lambda_mode}")
        unknown = set(self.checks) - set(ALL_CHECKS)
        if unknown:
            raise ValueError(f"Verificações desconhecidas: {sorted(unknown)}")

    def instances(self):
        lo_n, hi_n = self.N_range
        lo_p, hi_p = self.p_range
        for N in range(max(lo_n, 2), hi_n + 1):
            for p in range(lo_p, hi_p + 1):
                if is_prime(p) and gcd(N, p) == 1:
                    yield N, p


@dataclass
class SweepResult:
    rows: list
    instances: int
    elapsed: float = 0.0
    summary: dict = field(default_factory=dict)

    @property
    def failures(self):
        return [r for r in self.rows if r["status"] == "fail"]

    @property
    def skipped(self):
        return [r for r in self.rows if r["status"] == "skip"]

    def to_frame(self):
        return pd.DataFrame(self.rows, columns=["N", "p", "lam", "check", "status", "detail"])

    def to_dict(self):
        """Conteúdo determinístico (sem tempo de execução)."""
        return {
            "instances": str(self.instances),
            "rows": str(len(self.rows)),
            "summary": self.summary,
            "failures": [{k: str(v) for k, v in r.items()} for r in self.failures],
            "skipped": [{k: str(v) for k, v in r.items()} for r in self.skipped],
        }


def _lambdas(N, p, mode):
    if mode == "primitive":
        return [lam for lam in range(1, N) if gcd(lam, N) == 1]
    if mode == "divisor-powers":
        return [d for d in range(1, N) if N % d == 0]
    return list(range(1, N))


def _row(N, p, lam, check, status, detail=""):
    return {"N": N, "p": p, "lam": lam, "check": check, "status": status, "detail": detail}


def _oracle_checks(N, p, lam, chi, G, checks, budget):
    rows = []
    ctx = chi.context
    q = ctx.q
    if "modulus" in checks:
        ok = G * G.conj() == q
        rows.append(_row(N, p, lam, "modulus", "pass" if ok else "fail"))
    if "conjugation" in checks:
        G_bar = gauss_sum_direct(chi.conj(), 1, budget)
        ok = G.conj() == G_bar.scale(chi.value_at_minus_one())
        rows.append(_row(N, p, lam, "conjugation", "pass" if ok else "fail"))
    if "frobenius" in checks:
        image = frobenius_apply(G, N, p)
        ok = image == G and image == gauss_sum_direct(chi.power(p), 1, budget)
        rows.append(_row(N, p, lam, "frobenius", "pass" if ok else "fail"))
    if "galois" in checks:
        ok = True
        units = [l for l in range(1, N) if gcd(l, N) == 1]
        twists = list(range(1, p))
        if q > GALOIS_FULL_LIMIT:
            units = units[:3]
            twists = sorted({1, 2 % p or 1, p - 1})
        for l in units:
            chi_l = chi.power(l)
            G_l = gauss_sum_direct(chi_l, 1, budget)
            for t in twists:
                k = chi_l.exponent_at(ctx.from_int(t))
                if galois_twist(G, N, p, l, t) != make_root(N, -k) * G_l:
                    ok = False
        rows.append(_row(N, p, lam, "galois", "pass" if ok else "fail"))
    if "dh_product" in checks:
        if q % 2 and not chi.power(2).is_trivial():
            ok = dh_product_check(chi, budget)
            rows.append(_row(N, p, lam, "dh_product", "pass" if ok else "fail"))
        else:
            rows.append(_row(N, p, lam, "dh_product", "skip", "q par ou χ² trivial"))
    if "factorization" in checks:
        r = restriction_order(chi)
        if r <= 2:
            ok = G == restricted_gauss_fp(chi) * trace_one_sum(chi, budget)
            rows.append(_row(N, p, lam, "factorization", "pass" if ok else "fail"))
        else:
            rows.append(_row(N, p, lam, "factorization", "skip", f"restrição de ordem {r}"))
    if "pure" in checks:
        order = chi.order
        if order >= 3 and minus_one_in_subgroup(p, order):
            ok = closed_to_cyclo(pure_gauss(p, order, ctx.f)) == G
            rows.append(_row(N, p, lam, "pure", "pass" if ok else "fail"))
    return rows


def _closed_form_check(N, p, lam, info, chi, G):
    if info.tag not in EVALUABLE_TAGS:
        return None
    try:
        value = eval_power(info, lam)
    except FormulaMismatch as e:
        return _row(N, p, lam, "closed_form", "fail", str(e))
    except UnsupportedCase as e:
        return _row(N, p, lam, "closed_form", "skip", type(e).__name__)
    if chi is None:
        ok = all(f.check_modulus() for f in value.forms)
        return _row(N, p, lam, "closed_form", "pass" if ok else "fail", "somente identidade do módulo")
    try:
        match_oracle(value, chi, G)
        return _row(N, p, lam, "closed_form", "pass")
    except VerificationMismatch as e:
        return _row(N, p, lam, "closed_form", "fail", str(e))


def run_instance(N, p, spec):
    """Todas as verificações de uma instância (N, p)."""
    rows = []
    checks = set(spec.checks)
    try:
        info = classify_case(N, p)
        f = mult_order(p, N)
        over_budget = p ** f > spec.q_budget
        for lam in _lambdas(N, p, spec.lambda_mode):
            if over_budget:
                for check in sorted(checks - {"closed_form"}):
                    rows.append(_row(N, p, lam, check, "skip", "q acima do orçamento"))
                if "closed_form" in checks:
                    row = _closed_form_check(N, p, lam, info, None, None)
                    if row is not None:
                        rows.append(row)
                continue
            chi = oracle_character(N, p, lam, spec.q_budget)
            G = gauss_sum_direct(chi, 1, spec.q_budget)
            rows.extend(_oracle_checks(N, p, lam, chi, G, checks, spec.q_budget))
            if "closed_form" in checks:
                row = _closed_form_check(N, p, lam, info, chi, G)
                if row is not None:
                    rows.append(row)
    except Exception as e:
        logger.error(f"Erro na instância (N={N}, p={p}): {str(e)}")
        logger.error(traceback.format_exc())
        rows.append(_row(N, p, 0, "instance", "fail", f"{type(e).__name__}: {str(e)}"))
    return rows


def _run_packed(args):
    N, p, spec_dict = args
    return run_instance(N, p, SweepSpec(**spec_dict))


def summarize(rows):
    """Contagens por verificação e status."""
    if not rows:
        return {}
    df = pd.DataFrame(rows)
    table = df.groupby(["check", "status"]).size().unstack(fill_value=0)
    return {check: {status: str(int(n)) for status, n in counts.items()}
            for check, counts in table.to_dict(orient="index").items()}


def run_sweep(spec, cap=None):
    """
    Executa a varredura completa.

    Args:
        spec: SweepSpec
        cap: limite global de q (None usa a configuração)

    Returns:
        SweepResult
    """
    spec.validate(cap)
    started = time.perf_counter()
    instances = list(spec.instances())
    logger.info(f"Varredura: {len(instances)} instâncias, verificações {', '.join(spec.checks)}")
    rows = []
    if spec.workers > 1 and len(instances) > 1:
        payload = [(N, p, asdict(spec)) for N, p in instances]
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            for chunk in pool.map(_run_packed, payload):
                rows.extend(chunk)
    else:
        for N, p in instances:
            rows.extend(run_instance(N, p, spec))
    rows.sort(key=lambda r: (r["N"], r["p"], r["lam"], r["check"]))
    result = SweepResult(rows, len(instances), time.perf_counter() - started, summarize(rows))
    logger.info(f"Varredura concluída: {len(result.failures)} falhas, {len(result.skipped)} ignoradas, "
                f"{result.elapsed:.1f}s")
    return result


def export_csv(result, path):
    result.to_frame().to_csv(path, index=False)
    logger.info(f"Resultados da varredura exportados para {path}")
