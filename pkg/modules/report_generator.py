import logging
import os

import jinja2

logger = logging.getLogger(__name__)

TEMPLATE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "templates")


def _format_cyclo(x, limit=12):
    """Resumo legível de um CycloElement: termos não nulos c·ζ_m^k."""
    if x is None:
        return "-"
    terms = [f"{c}·ζ{x.m}^{k}" if k else str(c) for k, c in enumerate(x.coeffs) if c]
    if not terms:
        return "0"
    if len(terms) > limit:
        return " + ".join(terms[:limit]) + f" + ... ({len(terms)} termos)"
    return " + ".join(terms)


class TextReportGenerator:
    def __init__(self, template_dir=TEMPLATE_DIR):
        """
        Inicializa o gerador de relatórios em texto.
        """
        self.template_dir = template_dir
        self.jinja_env = jinja2.Environment(
            loader=jinja2.FileSystemLoader(template_dir),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        self.jinja_env.filters["cyclo"] = _format_cyclo

    def _render(self, name, **data):
        try:
            template = self.jinja_env.get_template(name)
            return template.render(**data)
        except Exception as e:
            logger.error(f"Erro ao renderizar o template {name}: {str(e)}")
            raise

    def render_verify(self, report):
        """Relatório de verificação de uma instância."""
        return self._render("verify_report.txt.j2", report=report, case=report.case, value=report.value)

    def render_sweep(self, result, spec=None):
        """Relatório da varredura com resumo por verificação."""
        return self._render("sweep_report.txt.j2", result=result, spec=spec,
                            summary=sorted(result.summary.items()))

    def render_powers(self, info, rows):
        """Tabela da família G(χ^λ)."""
        return self._render("powers_report.txt.j2", case=info, rows=rows)
