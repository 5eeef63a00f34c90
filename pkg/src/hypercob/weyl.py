"""Local-Weyl eigenvalue count upper bounds.

The coefficients (a, b, d, e) certify, for manifolds with inj >= eps and
vol <= V, the unit-window eigenvalue counts of the coexact curl operator,
the Dirac operator and the function block; only the eps = 0.15 profile
ships as a built-in.  Counts are returned as Bounds rather than integers:
they are analytic upper bounds and downstream formulas use them as reals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .interval import Bound, BoundDomainError

__all__ = [
    "PROFILE_EPS_0_15",
    "WeylConstants",
    "count_extended_hessian",
    "count_function_block",
    "count_star_or_dirac",
]


@dataclass(frozen=True)
class WeylConstants:
    """Spectral-density coefficients certified for a given injectivity radius."""

    eps: Fraction
    a: Bound
    b: Bound
    d: Bound
    e: Bound

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        for name in ("a", "b", "d", "e"):
            coeff = getattr(self, name)
            if not isinstance(coeff, Bound):
                raise TypeError(f"coefficient {name} must be a Bound, got {type(coeff).__name__}")
            if not coeff.strictly_positive():
                raise ValueError(f"coefficient {name} must be strictly positive, got {coeff!r}")


def _profile_0_15() -> WeylConstants:
    return WeylConstants(
        eps=Fraction(15, 100),
        a=Bound.from_rational(3),
        b=Bound.from_rational(402),
        d=Bound.from_rational(100),
        e=Bound.from_rational(780),
    )


PROFILE_EPS_0_15 = _profile_0_15()


def _require_T(T: Bound) -> None:
    if not Bound.from_rational(2).upper_le(T):
        raise BoundDomainError("weyl_count", "counts require T >= 2", T)


def count_star_or_dirac(V: Bound, w: WeylConstants, T: Bound) -> Bound:
    """Upper bound V (a/3 + b) T^3 on #{|t| <= T} for *d or the Dirac operator.

    The Dirac count is the complex one; double it for real multiplicity.
    """
    _require_T(T)
    return V * (w.a / 3 + w.b) * T.pow_rational(3)


def count_function_block(V: Bound, w: WeylConstants, T: Bound) -> Bound:
    """Upper bound 2V [d + (a/2 + e) T^3] on #{|t| <= T} for the function block."""
    _require_T(T)
    return 2 * V * (w.d + (w.a / 2 + w.e) * T.pow_rational(3))


def count_extended_hessian(V: Bound, w: WeylConstants, T: Bound) -> Bound:
    """Upper bound V [2d + (2a + 3b + 2e) T^3] for the full extended Hessian.

    Dirac eigenvalues enter with real multiplicity, which is where the
    coefficient 2a + 3b + 2e comes from.
    """
    _require_T(T)
    coeff = 2 * w.a + 3 * w.b + 2 * w.e
    return V * (2 * w.d + coeff * T.pow_rational(3))
