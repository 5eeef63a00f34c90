"""Graded-module torsion algebra and the Pin(2) obstruction arithmetic.

HMModule records the shape of monopole Floer homology over F[U]: the
rational grading of the bottom of the U-tower plus the multiset of torsion
summand exponents.  Gradings of torsion summands are deliberately not
tracked; the connected-sum Tor rules forget them and widths and thresholds
need nothing more.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .interval import Bound, mpf_to_decimal

__all__ = [
    "BrieskornWidth",
    "CorrectionTerms",
    "HMModule",
    "brieskorn_width",
    "connected_sum",
    "exclusion_threshold",
    "excluded_from",
    "froyshov_upper",
    "reverse_orientation",
    "torsion_upper_from_flow",
    "torsion_width",
    "width",
    "width_upper_from_torsion",
]


@dataclass(frozen=True)
class HMModule:
    """U-tower bottom grading plus torsion summand exponents F[U]/U^{n_i}."""

    tower_bottom: Fraction = Fraction(0)
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tower_bottom", Fraction(self.tower_bottom))
        exponents = tuple(sorted(int(n) for n in self.torsion))
        if any(n < 1 for n in exponents):
            raise ValueError(f"torsion exponents must be >= 1, got {exponents}")
        object.__setattr__(self, "torsion", exponents)

    def froyshov(self) -> Fraction:
        """h = -d/2 where d is the bottom-of-tower grading."""
        return -self.tower_bottom / 2


def torsion_width(m: HMModule) -> int:
    """Maximum torsion exponent; 0 for a torsion-free module (t(S^3) = 0)."""
    return max(m.torsion, default=0)


def connected_sum(m1: HMModule, m2: HMModule) -> HMModule:
    """Module shape of a connected sum.

    Tor of two cyclic torsion summands contributes min(n, m) twice; each
    torsion summand paired against the other factor's tower survives once;
    tower bottoms add.
    """
    pieces = []
    for n in m1.torsion:
        for m in m2.torsion:
            low = min(n, m)
            pieces.append(low)
            pieces.append(low)
    pieces.extend(m1.torsion)
    pieces.extend(m2.torsion)
    return HMModule(tower_bottom=m1.tower_bottom + m2.tower_bottom,
                    torsion=tuple(pieces))


def reverse_orientation(m: HMModule) -> HMModule:
    """Orientation reversal: negate the tower bottom, keep torsion."""
    return HMModule(tower_bottom=-m.tower_bottom, torsion=m.torsion)


def width_upper_from_torsion(t: int) -> int:
    """Pin(2)-width bound w <= 4t + 4 from the torsion width."""
    if t < 0:
        raise ValueError(f"torsion width must be nonnegative, got {t}")
    return 4 * t + 4


def torsion_upper_from_flow(sf: Bound) -> Bound:
    """Torsion width bound t <= 2 max|sf| + 2 from the spectral-flow bound."""
    if not sf.nonnegative():
        raise ValueError(f"spectral-flow bound must be nonnegative, got {sf!r}")
    return 2 * sf + 2


def froyshov_upper(grQ: Bound, sf: Bound) -> Bound:
    """|h| <= (|gr_Q of the reducible| + max|sf| + 1) / 2."""
    if not grQ.nonnegative() or not sf.nonnegative():
        raise ValueError("froyshov_upper requires nonnegative inputs")
    return (grQ + sf + 1) / 2


@dataclass(frozen=True)
class BrieskornWidth:
    n: int
    label: str
    width: int


def brieskorn_width(n: int) -> BrieskornWidth:
    """Pin(2)-width 2n of the Brieskorn sphere Sigma(2, 8n-1, 16n-1)."""
    if n < 1:
        raise ValueError(f"Brieskorn index must be a positive integer, got {n}")
    return BrieskornWidth(n=n, label=f"Sigma(2,{8 * n - 1},{16 * n - 1})", width=2 * n)


def exclusion_threshold(N: Bound) -> Bound:
    """2N + 2: Brieskorn indices strictly above it escape the subgroup."""
    if not N.nonnegative():
        raise ValueError(f"torsion bound must be nonnegative, got {N!r}")
    return 2 * N + 2


def excluded_from(threshold: Bound, digit_limit: int = 10000) -> Union[int, None]:
    """Smallest integer n certainly above the threshold enclosure.

    Sound direction: the true threshold is at most threshold.hi, so every
    n > threshold.hi is excluded; the smallest such integer is
    floor(threshold.hi) + 1.  Returns None when that integer would need
    more than digit_limit decimal digits (the realistic obstruction
    thresholds are astronomically large and only their log10 rendition is
    printable).
    """
    sign, man, e, bc = threshold.hi_raw
    if sign:
        return 1
    if man != 0 and (e + bc) > int(digit_limit * 3.33):
        return None
    hi = mpf_to_decimal(threshold.hi_raw)
    return int(math.floor(hi)) + 1


@dataclass(frozen=True)
class CorrectionTerms:
    """Manolescu correction terms alpha >= beta >= gamma, all of one parity."""

    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if not (self.alpha >= self.beta >= self.gamma):
            raise ValueError(
                f"need alpha >= beta >= gamma, got ({self.alpha}, {self.beta}, {self.gamma})")
        if (self.alpha - self.beta) % 2 != 0 or (self.alpha - self.gamma) % 2 != 0:
            raise ValueError(
                f"alpha, beta, gamma must share parity (the Rokhlin residue), "
                f"got ({self.alpha}, {self.beta}, {self.gamma})")


def width(ct: CorrectionTerms) -> int:
    """Pin(2)-width alpha - gamma, a nonnegative even integer."""
    return ct.alpha - ct.gamma
