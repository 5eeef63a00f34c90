"""Geometry budgets and the Sobolev / elliptic-regularity constant chain.

A GeometryBudget packages (V, eps, delta): an upper bound on hyperbolic
volume, a lower bound on injectivity radius, and a lower bound on the first
coexact Hodge-Laplacian eigenvalue.  The functions here turn a budget into
the diameter, isoperimetric, Sobolev and L^2_1 embedding constants, and the
coexact embedding coefficients consumed by the perturbation-norm bound.

Endpoint conventions: outputs documented as lower bounds (isoperimetric,
Sobolev, L6 embedding constant) are consumed downstream through their lower
endpoint; upper-bound outputs (diameter, the coexact coefficients) through
their upper endpoint.  Every function returns the full enclosure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .interval import Bound, bound_max, bound_min, pi_bound

__all__ = [
    "BudgetError",
    "CoexactL6",
    "GeometryBudget",
    "c_V_eps",
    "chavel_isoperimetric",
    "coexact_L4_coefficient",
    "coexact_L6_coefficient",
    "diameter_bound",
    "diameter_formula",
    "embedding_L6_constant",
    "isoperimetric_lower",
    "sobolev_constant_lower",
]

_MIN_VOLUME = Fraction(94, 100)   # every closed hyperbolic 3-manifold
_MAX_INJ = Fraction(15, 100)      # convention; relax with unchecked=True
_MAX_GAP = Fraction(1)            # convention; relax with unchecked=True

RationalLike = Union[int, str, Fraction]


class BudgetError(ValueError):
    """A geometry budget violates its guards."""


def _as_fraction(x: RationalLike, name: str) -> Fraction:
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise BudgetError(f"{name}: not a rational value: {x!r}") from exc


@dataclass(frozen=True)
class GeometryBudget:
    """(V, eps, delta) with the paper-convention guards.

    unchecked=True relaxes the conventions V >= 0.94, eps <= 0.15 and
    delta <= 1 (census manifolds routinely have inj > 0.15); strict
    positivity of all three fields is never relaxed.  diameter_override,
    when set, replaces the volume/injectivity diameter formula with a
    directly supplied diameter upper bound.
    """

    volume: Fraction
    inj_radius: Fraction
    lambda1: Fraction
    unchecked: bool = False
    diameter_override: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "volume", _as_fraction(self.volume, "volume"))
        object.__setattr__(self, "inj_radius", _as_fraction(self.inj_radius, "inj_radius"))
        object.__setattr__(self, "lambda1", _as_fraction(self.lambda1, "lambda1"))
        if self.diameter_override is not None:
            object.__setattr__(
                self, "diameter_override", _as_fraction(self.diameter_override, "diameter_override"))
            if self.diameter_override <= 0:
                raise BudgetError("diameter_override must be positive")
        if self.volume <= 0 or self.inj_radius <= 0 or self.lambda1 <= 0:
            raise BudgetError(
                f"volume, inj_radius and lambda1 must be positive "
                f"(got {self.volume}, {self.inj_radius}, {self.lambda1})")
        if not self.unchecked:
            if self.volume < _MIN_VOLUME:
                raise BudgetError(
                    f"volume {self.volume} < 0.94; no hyperbolic manifold is this small "
                    f"(pass unchecked=True to override)")
            if self.inj_radius > _MAX_INJ:
                raise BudgetError(
                    f"inj_radius {self.inj_radius} > 0.15 breaks the eps <= 0.15 convention "
                    f"(pass unchecked=True to override)")
            if self.lambda1 > _MAX_GAP:
                raise BudgetError(
                    f"lambda1 {self.lambda1} > 1 breaks the delta <= 1 convention "
                    f"(pass unchecked=True to override)")

    # exact-interval views of the three fields
    def V(self) -> Bound:
        return Bound.from_fraction(self.volume)

    def eps(self) -> Bound:
        return Bound.from_fraction(self.inj_radius)

    def delta(self) -> Bound:
        return Bound.from_fraction(self.lambda1)

    def one_plus_3_over_delta(self) -> Bound:
        return Bound.from_fraction(1 + Fraction(3) / self.lambda1)


def diameter_formula(vol: Bound, inj: Bound) -> Bound:
    """vol / (pi * sinh(inj/2)^2), an upper bound on the diameter."""
    half = inj * Bound.from_rational(1, 2)
    return vol / (pi_bound() * half.sinh().pow_rational(2))


def diameter_bound(g: GeometryBudget) -> Bound:
    """Diameter upper bound d(Y) <= V / (pi sinh^2(eps/2)); upper endpoint used."""
    if g.diameter_override is not None:
        return Bound.from_fraction(g.diameter_override)
    return diameter_formula(g.V(), g.eps())


def chavel_isoperimetric(vol: Bound, diam: Bound) -> Bound:
    """(1/(64 pi^5)) * (vol / (cosh(diam) - 1))^4, quartic in vol for fixed diam."""
    denom = diam.cosh() - 1
    core = (vol / denom).pow_rational(4)
    return core / (pi_bound().pow_rational(5) * 64)


def isoperimetric_lower(g: GeometryBudget) -> Bound:
    """Lower bound on the isoperimetric constant; lower endpoint used."""
    return chavel_isoperimetric(g.V(), diameter_bound(g))


def sobolev_constant_lower(g: GeometryBudget) -> Bound:
    """Lower bound on the Sobolev constant; lower endpoint used.

    Max of the rounded closed form (4/10^5) / (cosh d - 1)^4 and the
    unrounded isoperimetric chain; both are valid lower bounds and the
    max is the sharper one.
    """
    d = diameter_bound(g)
    rounded = Bound.from_rational(4, 10 ** 5) / (d.cosh() - 1).pow_rational(4)
    return bound_max(rounded, isoperimetric_lower(g))


def embedding_L6_constant(g: GeometryBudget) -> Bound:
    """Constant C with ||f||^2_{L^2_1} >= C ||f||^2_{L^6}; lower endpoint used.

    C = min(S^{2/3}/8, 1/1.05) / 2^{8/3} with S the Sobolev constant.
    """
    s = sobolev_constant_lower(g)
    candidate = s.pow_rational(2, 3) / 8
    capped = bound_min(candidate, Bound.from_rational(20, 21))
    return capped / Bound.from_rational(2).pow_rational(8, 3)


class CoexactL6(NamedTuple):
    """Both forms of the coefficient in ||b||^2_{L^6} <= coeff * ||db||^2."""
    assembled: Bound
    closed_form: Bound


def coexact_L6_coefficient(g: GeometryBudget) -> CoexactL6:
    """Coefficient bounding the L6 norm of a coexact 1-form by its differential.

    assembled chains the Sobolev constant through the embedding estimate;
    closed_form is e^11 * (cosh d - 1)^{8/3} * (1 + 3/delta), which
    majorizes the assembled value (the e^11 absorbs the assembled
    prefactor ~43431 with slack).  Upper endpoints used downstream.
    """
    factor = g.one_plus_3_over_delta()
    assembled = factor / embedding_L6_constant(g)
    d = diameter_bound(g)
    closed = Bound.from_rational(11).exp() * (d.cosh() - 1).pow_rational(8, 3) * factor
    return CoexactL6(assembled=assembled, closed_form=closed)


def c_V_eps(g: GeometryBudget) -> Bound:
    """The coexact L4 embedding constant e^{11/2} V^{1/12} (cosh d - 1)^{4/3}.

    Depends only on V and eps; upper endpoint used downstream.
    """
    d = diameter_bound(g)
    return (Bound.from_rational(11, 2).exp()
            * g.V().pow_rational(1, 12)
            * (d.cosh() - 1).pow_rational(4, 3))


def coexact_L4_coefficient(g: GeometryBudget) -> Bound:
    """c_{V,eps} * (1 + 3/delta)^{1/2}, bounding ||b||_{L^4} by ||db||_{L^2}."""
    return c_V_eps(g) * g.one_plus_3_over_delta().sqrt()
