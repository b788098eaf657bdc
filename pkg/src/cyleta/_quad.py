"""Thin wrapper around scipy's adaptive quadrature with the package's
failure semantics, plus the shared quadrature configuration type."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from .errors import DomainError, QuadratureError


@dataclass(frozen=True)
class QuadratureConfig:
    """Shared knobs for every split-integral computation.

    split_T separates the numerically integrated head [0, T] from the
    analytic erfc tail [T, inf). abs_tol / rel_tol feed the adaptive
    integrator, max_subdivisions caps its interval budget.
    """

    split_T: float = 1.0
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.split_T > 0):
            raise DomainError("split_T must be positive")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if not (isinstance(self.max_subdivisions, int) and self.max_subdivisions >= 8):
            raise DomainError("max_subdivisions must be an integer >= 8")


DEFAULT_CONFIG = QuadratureConfig()


def quad_real(f: Callable[[float], float], a: float, b: float,
              config: QuadratureConfig) -> tuple[float, float]:
    """Integrate a real-valued integrand, returning (value, error estimate).

    Non-convergence surfaces as QuadratureError carrying the partial value;
    scipy reports it through the fourth element of the full output rather
    than an exception.
    """
    out = integrate.quad(f, a, b, epsabs=config.abs_tol, epsrel=config.rel_tol,
                         limit=config.max_subdivisions, full_output=1)
    if len(out) > 3:
        raise QuadratureError(
            f"quadrature on [{a:g}, {b:g}] did not converge: {out[3]}",
            partial=out[0], est_error=out[1])
    return out[0], out[1]


def quad_complex(f: Callable[[float], complex], a: float, b: float,
                 config: QuadratureConfig, *, known_real: bool = False
                 ) -> tuple[complex, float]:
    """Component-wise adaptive quadrature for a complex integrand.

    known_real skips the imaginary component entirely (exact zero), which
    matters for identity-group spectra where every trace is real.
    """
    re, re_err = quad_real(lambda x: f(x).real, a, b, config)
    if known_real:
        return complex(re, 0.0), re_err
    im, im_err = quad_real(lambda x: f(x).imag, a, b, config)
    return complex(re, im), re_err + im_err
