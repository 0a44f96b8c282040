import argparse
import logging
import sys
import traceback

from check_dependencies import check_dependencies
from config import load_settings, load_sweep_defaults
from modules import evaluator, sweep
from modules.classify import UNSUPPORTED_TAGS, classify_case, reduce_power
from modules.oracle import gauss_sum_direct, oracle_character
from modules.quad import class_number
from modules.report_generator import TextReportGenerator
from utils import serialization
from utils.errors import (
    EXIT_DOMAIN,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    BudgetExceeded,
    GaussLabError,
    OracleBudgetExceeded,
    UnsupportedCase,
)

# Configurar logging detalhado (stdout fica reservado para a saída JSON)
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.FileHandler("gausslab.log"),
        logging.StreamHandler(sys.stderr)
    ]
)
logger = logging.getLogger(__name__)


class UsageError(Exception):
    pass


class GaussLabParser(argparse.ArgumentParser):
    """ArgumentParser cujo erro de uso sai com código 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: erro: {message}\n")


def _emit(args, data, text):
    if args.json:
        print(serialization.dumps(data))
    else:
        print(text)


def _settings(args):
    return load_settings({"budget": args.budget, "precision": args.precision})


def _try_resolve(value, N, p, lam, settings, strict):
    """Tenta fixar unidade e membro pelo oráculo; mantém UNRESOLVED se q excede o orçamento."""
    if value.resolved:
        return value
    try:
        chi = oracle_character(N, p, lam, settings["budget"])
    except BudgetExceeded as e:
        if strict:
            raise OracleBudgetExceeded(f"Resolução obrigatória impossível: {str(e)}")
        return value.with_notes("UNRESOLVED: q acima do orçamento do oráculo")
    return evaluator.resolve_ambiguity(value, chi, settings["budget"], strict, settings["precision"])


def cmd_eval(args):
    settings = _settings(args)
    if args.mu != 1 and not args.verify:
        raise UsageError("--mu exige --verify")
    info = classify_case(args.N, args.p)
    if info.tag in UNSUPPORTED_TAGS:
        raise UnsupportedCase(f"(N={args.N}, p={args.p}) classificado como {info.tag}")
    verified = None
    if args.verify:
        report = evaluator.verify(args.N, args.p, args.lam, args.mu, settings["budget"], args.strict,
                                  settings["precision"])
        value, verified = report.value, report.match
    else:
        value = evaluator.eval_power(info, args.lam)
        value = _try_resolve(value, args.N, args.p, args.lam, settings, args.strict)
        value = evaluator.attach_cyclo(value)
    data = serialization.eval_to_dict(info, args.lam, value, verified, reduce_power(info, args.lam))
    lines = [f"Caso {info.tag} (N={info.N}, p={info.p}, f={info.f}), λ={args.lam}"]
    lines += [f"  {form.describe()}" for form in value.forms]
    lines.append(f"Unidade: {value.unit_label}")
    if verified is not None:
        lines.append(f"Verificado: {'sim' if verified else 'NÃO'}")
    lines += [f"Nota: {note}" for note in value.notes]
    _emit(args, data, "\n".join(lines))
    return EXIT_MISMATCH if verified is False else EXIT_OK


def cmd_classify(args):
    info = classify_case(args.N, args.p)
    data = serialization.case_to_dict(info)
    text = (f"Caso {info.tag}: N={info.N}, p={info.p}, f={info.f}, índice={info.index}, "
            f"fatoração={info.factorization}, ordens={info.component_orders}")
    _emit(args, data, text)
    return EXIT_OK


def cmd_oracle(args):
    settings = _settings(args)
    chi = oracle_character(args.N, args.p, args.lam, settings["budget"])
    value = gauss_sum_direct(chi, args.mu, settings["budget"])
    data = {
        "N": str(args.N),
        "p": str(args.p),
        "lambda": str(args.lam),
        "mu": str(args.mu),
        "field": serialization.field_to_dict(chi.context),
        "value": serialization.cyclo_to_dict(value),
    }
    text = f"G(χ^{args.lam}, {args.mu}) sobre F_{chi.context.q}: {list(value.coeffs)} em Z[ζ_{value.m}]"
    _emit(args, data, text)
    return EXIT_OK


def cmd_verify(args):
    settings = _settings(args)
    report = evaluator.verify(args.N, args.p, args.lam, args.mu, settings["budget"], args.strict,
                              settings["precision"])
    text = TextReportGenerator().render_verify(report)
    _emit(args, serialization.report_to_dict(report), text)
    return EXIT_OK if report.match else EXIT_MISMATCH


def cmd_classnumber(args):
    h = class_number(args.d)
    _emit(args, {"d": str(args.d), "h": str(h)}, str(h))
    return EXIT_OK


def cmd_powers(args):
    settings = _settings(args)
    info = classify_case(args.N, args.p)
    if info.tag in UNSUPPORTED_TAGS:
        raise UnsupportedCase(f"(N={args.N}, p={args.p}) classificado como {info.tag}")
    rows = evaluator.eval_all_powers(info, args.verify, settings["budget"], settings["precision"])
    data = {
        "case": serialization.case_to_dict(info),
        "powers": [
            {"lambda": str(row.lam), "value": serialization.value_to_dict(row.value), "verified": row.verified}
            for row in rows
        ],
    }
    _emit(args, data, TextReportGenerator().render_powers(info, rows))
    return EXIT_MISMATCH if any(row.verified is False for row in rows) else EXIT_OK


def cmd_sweep(args):
    defaults = load_sweep_defaults(args.config)
    overrides = {
        "N_range": [args.N_min, args.N_max] if args.N_max is not None else None,
        "p_range": [args.p_min, args.p_max] if args.p_max is not None else None,
        "q_budget": args.q_budget,
        "lambda_mode": args.lambda_mode,
        "checks": args.checks,
        "workers": args.workers,
    }
    spec = sweep.SweepSpec.from_config(defaults, overrides)
    try:
        cap = _settings(args)["budget"]
        spec.validate(cap)
    except ValueError as e:
        raise UsageError(str(e))
    result = sweep.run_sweep(spec, cap)
    if args.csv:
        sweep.export_csv(result, args.csv)
    _emit(args, result.to_dict(), TextReportGenerator().render_sweep(result, spec))
    return EXIT_MISMATCH if result.failures else EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="saída JSON canônica")
    common.add_argument("--budget", type=int, default=None, help="q máximo para o oráculo")
    common.add_argument("--strict", action="store_true", help="falha se a resolução pelo oráculo for impossível")
    common.add_argument("--precision", type=int, default=None, help="dígitos dos mergulhos complexos")
    common.add_argument("--verbose", action="store_true", help="logging em nível DEBUG")
    common.add_argument("--quiet", action="store_true", help="logging só a partir de WARNING")

    parser = GaussLabParser(prog="gausslab", description="Somas de Gauss de índice 2 em aritmética exata")
    sub = parser.add_subparsers(dest="command", parser_class=GaussLabParser)
    sub.required = True

    def instance(p, with_mu=True):
        p.add_argument("-N", type=int, required=True)
        p.add_argument("-p", type=int, required=True)
        p.add_argument("--lambda", dest="lam", type=int, default=1)
        if with_mu:
            p.add_argument("--mu", type=int, default=1)

    p_eval = sub.add_parser("eval", parents=[common], help="forma fechada de G(χ^λ)")
    instance(p_eval)
    p_eval.add_argument("--verify", action="store_true")
    p_eval.set_defaults(func=cmd_eval)

    p_classify = sub.add_parser("classify", parents=[common], help="caso de (N, p)")
    p_classify.add_argument("-N", type=int, required=True)
    p_classify.add_argument("-p", type=int, required=True)
    p_classify.set_defaults(func=cmd_classify)

    p_oracle = sub.add_parser("oracle", parents=[common], help="soma direta")
    instance(p_oracle)
    p_oracle.set_defaults(func=cmd_oracle)

    p_verify = sub.add_parser("verify", parents=[common], help="forma fechada contra o oráculo")
    instance(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_class = sub.add_parser("classnumber", parents=[common], help="h(Q(√-d))")
    p_class.add_argument("-d", type=int, required=True)
    p_class.set_defaults(func=cmd_classnumber)

    p_powers = sub.add_parser("powers", parents=[common], help="família G(χ^λ), λ = 1..N-1")
    p_powers.add_argument("-N", type=int, required=True)
    p_powers.add_argument("-p", type=int, required=True)
    p_powers.add_argument("--verify", action="store_true")
    p_powers.set_defaults(func=cmd_powers)

    p_sweep = sub.add_parser("sweep", parents=[common], help="varredura de propriedades")
    p_sweep.add_argument("--config", default=None, help="arquivo JSON da varredura")
    p_sweep.add_argument("--N-min", dest="N_min", type=int, default=2)
    p_sweep.add_argument("--N-max", dest="N_max", type=int, default=None)
    p_sweep.add_argument("--p-min", dest="p_min", type=int, default=2)
    p_sweep.add_argument("--p-max", dest="p_max", type=int, default=None)
    p_sweep.add_argument("--q-budget", dest="q_budget", type=int, default=None)
    p_sweep.add_argument("--lambda-mode", dest="lambda_mode", choices=sweep.LAMBDA_MODES, default=None)
    p_sweep.add_argument("--checks", default=None, help="lista separada por vírgulas ou 'all'")
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.add_argument("--csv", default=None, help="exporta as linhas da varredura em CSV")
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    """Ponto de entrada da CLI; devolve o código de saída."""
    parser = build_parser()
    args = parser.parse_args(argv)
    root = logging.getLogger()
    if args.verbose:
        root.setLevel(logging.DEBUG)
    elif args.quiet:
        root.setLevel(logging.WARNING)

    if args.verbose and not check_dependencies():
        logger.warning("Algumas dependências podem estar ausentes ou mal configuradas")

    try:
        return args.func(args)
    except UsageError as e:
        logger.error(f"Uso inválido: {str(e)}")
        return EXIT_USAGE
    except GaussLabError as e:
        logger.error(f"{type(e).__name__}: {str(e)}")
        return e.exit_code
    except Exception as e:
        logger.error(f"Erro inesperado em '{args.command}': {str(e)}")
        logger.error(traceback.format_exc())
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
