"""Hierarquia de erros do gausslab; cada erro carrega o código de saída da CLI."""

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_UNSUPPORTED = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4
EXIT_USAGE = 64


class GaussLabError(Exception):
    """Erro base de domínio."""
    exit_code = EXIT_DOMAIN


# cyclo
class NonUnitIndex(GaussLabError):
    pass


class NotDivisible(GaussLabError):
    pass


class BadConductor(GaussLabError):
    pass


class RootNotInField(GaussLabError):
    pass


class HalfIntegerViolation(GaussLabError):
    pass


# ffield / oracle
class BudgetExceeded(GaussLabError):
    exit_code = EXIT_BUDGET


class OracleBudgetExceeded(BudgetExceeded):
    pass


class NotPrime(GaussLabError):
    pass


class OrderNotDividing(GaussLabError):
    pass


class NotPure(GaussLabError):
    pass


# quad
class NoSolution(GaussLabError):
    pass


class OddClassNumber(GaussLabError):
    pass


class NotSquarefree(GaussLabError):
    pass


# classify / evaluator
class NotCoprime(GaussLabError):
    pass


class LambdaOutOfRange(GaussLabError):
    pass


class WrongTag(GaussLabError):
    pass


class UnsupportedCase(GaussLabError):
    exit_code = EXIT_UNSUPPORTED


class FormulaMismatch(GaussLabError):
    """Fórmula explícita diverge do motor genérico."""
    exit_code = EXIT_MISMATCH


class VerificationMismatch(GaussLabError):
    """Forma fechada diverge do oráculo."""
    exit_code = EXIT_MISMATCH
