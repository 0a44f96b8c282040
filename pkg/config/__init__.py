"""Configuração do gausslab: orçamento do oráculo, precisão e paralelismo."""
import json
import logging
import os

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 2 ** 24
DEFAULT_PRECISION = 30
BUDGET_ENV_VAR = "GSLAB_BUDGET"
CONFIG_DIR = os.path.dirname(os.path.abspath(__file__))


def load_settings(overrides=None):
    """
    Carrega as configurações efetivas.

    Ordem de precedência: padrão < variável de ambiente GSLAB_BUDGET < overrides.

    Args:
        overrides: dict opcional (por exemplo vindo das flags da CLI)

    Returns:
        dict: budget, precision, workers
    """
    settings = {
        "budget": DEFAULT_BUDGET,
        "precision": DEFAULT_PRECISION,
        "workers": os.cpu_count() or 1,
    }
    env_budget = os.environ.get(BUDGET_ENV_VAR)
    if env_budget:
        try:
            settings["budget"] = int(env_budget)
        except ValueError:
            logger.warning(f"Valor inválido em {BUDGET_ENV_VAR}: {env_budget!r}; usando {DEFAULT_BUDGET}")
    for key, value in (overrides or {}).items():
        if value is not None:
            settings[key] = value
    return settings


def load_sweep_defaults(path=None):
    """Lê a especificação padrão da varredura em config/sweep.json."""
    path = path or os.path.join(CONFIG_DIR, "sweep.json")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except Exception as e:
        logger.error(f"Erro ao carregar configuração da varredura: {str(e)}")
        raise
