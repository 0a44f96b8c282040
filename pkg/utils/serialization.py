"""
JSON canônico do gausslab.

Inteiros são sempre emitidos como strings decimais; chaves ordenadas e
separadores compactos tornam a saída estável byte a byte.
"""
import json
import logging

logger = logging.getLogger(__name__)


def _int(n):
    return str(int(n))


def _opt_int(n):
    return None if n is None else _int(n)


def cyclo_to_dict(x):
    return {"m": _int(x.m), "coeffs": [_int(c) for c in x.coeffs]}


def field_to_dict(ctx):
    info = ctx.describe()
    return {
        "p": _int(info["p"]),
        "f": _int(info["f"]),
        "modulus": [_int(c) for c in info["modulus"]],
        "generator": [_int(c) for c in info["generator"]],
    }


def case_to_dict(info):
    r0, l1, r1, l2, r2 = info.factorization
    return {
        "tag": info.tag,
        "N": _int(info.N),
        "p": _int(info.p),
        "f": _int(info.f),
        "index": _int(info.index),
        "factorization": {"r0": _int(r0), "l1": _opt_int(l1), "r1": _int(r1), "l2": _opt_int(l2), "r2": _int(r2)},
        "component_orders": [_int(a) for a in info.component_orders],
        "field_disc": _opt_int(info.field_disc),
        "h1": _opt_int(info.h1),
        "h12": _opt_int(info.h12),
    }


def surd_to_dict(w):
    return {"d": _int(w.d), "a": _int(w.a), "b": _int(w.b), "den": _int(w.den)}


def form_to_dict(form):
    from modules.forms import UNIT_NAMES

    data = {
        "text": form.describe(),
        "p": _int(form.p),
        "f": _int(form.f),
        "p_pow_half": _int(form.k),
        "pstar_pow": _int(form.e),
        "unit": UNIT_NAMES[form.unit] if form.unit is not None else "UNRESOLVED",
        "candidates": [UNIT_NAMES[c] for c in form.candidates],
        "surd": None,
        "gauss_root": None,
    }
    if form.surd is not None and form.m:
        data["surd"] = {"omega": surd_to_dict(form.surd), "exponent": _int(form.m)}
    if form.g:
        data["gauss_root"] = {"a": _int(form.gauss_root[0]), "b": _int(form.gauss_root[1]), "exponent": _int(form.g)}
    return data


def value_to_dict(value):
    return {
        "pair": value.pair,
        "forms": [form_to_dict(f) for f in value.forms],
        "unit": value.unit_label,
        "selected": _opt_int(value.selected),
        "cyclo": cyclo_to_dict(value.cyclo) if value.cyclo is not None else None,
        "notes": list(value.notes),
    }


def plan_to_dict(plan):
    return {
        "lambda": _int(plan.lam),
        "N_sub": _int(plan.N_sub),
        "f_sub": _int(plan.f_sub),
        "lift_s": _int(plan.lift_s),
        "conj_flag": plan.conj_flag,
        "sub_case": plan.sub_case.tag,
    }


def eval_to_dict(info, lam, value, verified=None, plan=None):
    """Esquema de saída do comando eval."""
    member = value.member()
    return {
        "case": info.tag,
        "N": _int(info.N),
        "p": _int(info.p),
        "lambda": _int(lam),
        "closed_form": form_to_dict(member if member is not None else value.forms[0]),
        "members": [f.describe() for f in value.forms],
        "pair": value.pair,
        "unit": value.unit_label,
        "cyclo": cyclo_to_dict(value.cyclo) if value.cyclo is not None else None,
        "verified": verified,
        "plan": plan_to_dict(plan) if plan is not None else None,
        "notes": list(value.notes),
    }


def report_to_dict(report):
    return {
        "case": case_to_dict(report.case),
        "lambda": _int(report.lam),
        "mu": _int(report.mu),
        "value": value_to_dict(report.value),
        "oracle": cyclo_to_dict(report.oracle) if report.oracle is not None else None,
        "match": report.match,
        "member": report.member,
        "selected": _opt_int(report.selected),
        "notes": list(report.notes),
    }


def dumps(data):
    """Serialização canônica: dumps(json.loads(dumps(x))) == dumps(x)."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
