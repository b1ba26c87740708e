"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: parameter/admissibility
problems exit 2, numerical failures (singularities, non-convergence) exit 3.
"""


class AdmissibilityError(ValueError):
    """Parameter set (alpha, beta, m) fails the exceptional-family restrictions."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class SingularityError(ArithmeticError):
    """Evaluation requested at or too close to a pole of the expression."""


class ConvergenceError(RuntimeError):
    """An iterative numerical scheme failed to reach the requested tolerance."""
