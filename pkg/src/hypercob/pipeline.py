"""Obstruction-constant assembly and census-record processing.

n_constant_assembled chains the geometry, Weyl and perturbation modules
into the threshold above which Brieskorn indices escape the geometric
subgroup; n_constant_closed_form evaluates the quoted eps = 0.15 closed
form, which majorizes the assembled value.  Census records are JSON lines
(name, volume, inj_radius, lambda1_lower) processed independently; values
whose decimal expansion is unprintable are reported through exact-decimal
log10 enclosures.
"""

from __future__ import annotations

import decimal
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Optional, Union

from .floer import exclusion_threshold, excluded_from, froyshov_upper, torsion_upper_from_flow
from .geometry import BudgetError, GeometryBudget
from .interval import Bound, log10_report, mpf_to_decimal
from .perturbation import spectral_flow_bound
from .weyl import WeylConstants

__all__ = [
    "AssembledObstruction",
    "CensusIssue",
    "CensusRecord",
    "ObstructionReport",
    "build_report",
    "census_report",
    "m_constant",
    "n_constant_assembled",
    "n_constant_closed_form",
    "parse_census",
    "render_bound",
]

_MIN_VOLUME = Fraction(94, 100)
_PROFILE_INJ = Fraction(15, 100)

_RENDER_DIGITS = 30
_PLAIN_CUTOFF = Fraction(30)  # log10 below which a plain decimal value is printed


def _check_profile(g: GeometryBudget, w: WeylConstants) -> None:
    """Weyl constants for eps certify any manifold with inj >= eps."""
    if g.inj_radius == w.eps:
        return
    if g.unchecked and w.eps <= g.inj_radius:
        return
    raise BudgetError(
        f"budget inj_radius {g.inj_radius} does not match the Weyl profile eps {w.eps}; "
        f"supply matching constants or use an unchecked budget with inj >= profile eps")


@dataclass(frozen=True)
class AssembledObstruction:
    """n = 4 sf + 6 with its intermediates (sf bound, torsion bound, threshold)."""

    n: Bound
    sf_displayed: Bound
    sf_reassembled: Bound
    torsion_bound: Bound
    threshold: Bound
    excluded_brieskorn_from: Optional[int]


def n_constant_assembled(g: GeometryBudget, w: WeylConstants) -> AssembledObstruction:
    """Chain the full pipeline: flow bound -> torsion bound -> 2N+2 -> 2(2N+2)...

    Explicitly: sf from the quoted flow-bound formula, N = 2 sf + 2, and
    the Brieskorn exclusion constant n = 2N + 2 = 4 sf + 6.
    """
    _check_profile(g, w)
    flows = spectral_flow_bound(g, w)
    torsion_bound = torsion_upper_from_flow(flows.displayed)
    threshold = exclusion_threshold(torsion_bound)
    n = threshold
    return AssembledObstruction(
        n=n,
        sf_displayed=flows.displayed,
        sf_reassembled=flows.reassembled,
        torsion_bound=torsion_bound,
        threshold=threshold,
        excluded_brieskorn_from=excluded_from(threshold),
    )


def n_constant_closed_form(volume: Fraction, delta: Fraction) -> Bound:
    """The quoted eps = 0.15 constant:

    4V [200 + exp(11 + 15 e^{11/2} V^{7/12} (cosh(57V) - 1)^{8/3}
    (1 + 3/delta)^{1/2})] + 6, evaluated as one validated enclosure.
    """
    volume = Fraction(volume)
    delta = Fraction(delta)
    if volume < _MIN_VOLUME:
        raise BudgetError(f"closed form requires V >= 0.94, got {volume}")
    if not (0 < delta <= 1):
        raise BudgetError(f"closed form requires 0 < delta <= 1, got {delta}")
    V = Bound.from_fraction(volume)
    dfac = Bound.from_fraction(1 + Fraction(3) / delta).sqrt()
    inner = (Bound.from_rational(11)
             + 15 * Bound.from_rational(11, 2).exp()
             * V.pow_rational(7, 12)
             * ((57 * V).cosh() - 1).pow_rational(8, 3)
             * dfac)
    return 4 * V * (200 + inner.exp()) + 6


def m_constant(g: GeometryBudget, w: WeylConstants, f_bound: Bound) -> Bound:
    """Froyshov bound (f + sf + 1)/2; f is the user-supplied reducible-grading bound."""
    if not f_bound.nonnegative():
        raise BudgetError(f"reducible-grading bound must be nonnegative, got {f_bound!r}")
    _check_profile(g, w)
    flows = spectral_flow_bound(g, w)
    return froyshov_upper(f_bound, flows.displayed)


# census ingestion ---------------------------------------------------------

@dataclass(frozen=True)
class CensusRecord:
    name: str
    volume: Fraction
    inj_radius: Fraction
    lambda1_lower: Fraction

    def __post_init__(self):
        if not self.name or not isinstance(self.name, str):
            raise ValueError("name must be a nonempty string")
        for fieldname in ("volume", "inj_radius", "lambda1_lower"):
            value = Fraction(getattr(self, fieldname))
            object.__setattr__(self, fieldname, value)
            if value <= 0:
                raise ValueError(f"{fieldname} must be positive, got {value}")


@dataclass(frozen=True)
class CensusIssue:
    line: int
    message: str


_REQUIRED_FIELDS = ("name", "volume", "inj_radius", "lambda1_lower")


def parse_census(source: Union[str, IO[str], Iterable[str]]) -> tuple[list[CensusRecord], list[CensusIssue]]:
    """Parse JSON-lines census data; per-line diagnostics, processing continues.

    Numeric fields are parsed as exact decimal fractions.  Duplicate names
    are rejected with a diagnostic on the offending line.
    """
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    else:
        lines = list(source)
    records: list[CensusRecord] = []
    issues: list[CensusIssue] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line, parse_float=Fraction)
        except json.JSONDecodeError as exc:
            issues.append(CensusIssue(lineno, f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(obj, dict):
            issues.append(CensusIssue(lineno, "expected a JSON object"))
            continue
        missing = [k for k in _REQUIRED_FIELDS if k not in obj]
        if missing:
            issues.append(CensusIssue(lineno, f"missing field(s): {', '.join(missing)}"))
            continue
        try:
            record = CensusRecord(name=obj["name"], volume=obj["volume"],
                                  inj_radius=obj["inj_radius"],
                                  lambda1_lower=obj["lambda1_lower"])
        except (ValueError, TypeError) as exc:
            issues.append(CensusIssue(lineno, str(exc)))
            continue
        if record.name in seen:
            issues.append(CensusIssue(lineno, f"duplicate name {record.name!r}"))
            continue
        seen.add(record.name)
        records.append(record)
    return records, issues


# reporting ------------------------------------------------------------------

def render_bound(b: Bound) -> dict:
    """Deterministic JSON fragment for a positive Bound.

    log10 endpoints are quantized outward to 30 significant digits; a plain
    decimal value is included only when it is physically printable.
    """
    lo_d, hi_d = log10_report(b)
    ctx_lo = decimal.Context(prec=_RENDER_DIGITS, rounding=decimal.ROUND_FLOOR)
    ctx_hi = decimal.Context(prec=_RENDER_DIGITS, rounding=decimal.ROUND_CEILING)
    out = {
        "log10_lo": str(ctx_lo.plus(lo_d)),
        "log10_hi": str(ctx_hi.plus(hi_d)),
    }
    if hi_d < _PLAIN_CUTOFF:
        v_lo = ctx_lo.plus(mpf_to_decimal(b.lo_raw))
        v_hi = ctx_hi.plus(mpf_to_decimal(b.hi_raw))
        out["value_lo"] = str(v_lo)
        out["value_hi"] = str(v_hi)
    return out


@dataclass(frozen=True)
class ObstructionReport:
    name: Optional[str]
    budget: GeometryBudget
    assembled: AssembledObstruction
    n_closed: Optional[Bound]
    m_value: Optional[Bound]
    unchecked: bool
    formula: str

    def to_json_dict(self) -> dict:
        out = {
            "name": self.name,
            "budget": {
                "volume": str(self.budget.volume),
                "inj_radius": str(self.budget.inj_radius),
                "lambda1": str(self.budget.lambda1),
                "unchecked": self.unchecked,
            },
            "n_assembled": render_bound(self.assembled.n),
            "n_closed": render_bound(self.n_closed) if self.n_closed is not None else None,
            "sf_displayed": render_bound(self.assembled.sf_displayed),
            "sf_reassembled": render_bound(self.assembled.sf_reassembled),
            "torsion_bound": render_bound(self.assembled.torsion_bound),
            "exclusion_threshold": render_bound(self.assembled.threshold),
            "excluded_brieskorn_from": self.assembled.excluded_brieskorn_from,
            "m_constant": render_bound(self.m_value) if self.m_value is not None else None,
            "formula": self.formula,
        }
        return out


def _formula_echo(g: GeometryBudget) -> str:
    return ("n = 4*V*(2*d + (2*a+3*b+2*e)*8*exp(15*c*V^(1/2)*(1+3/delta)^(1/2))) + 6, "
            "c = exp(11/2)*V^(1/12)*(cosh(V/(pi*sinh(eps/2)^2))-1)^(4/3), "
            f"V={g.volume}, eps={g.inj_radius}, delta={g.lambda1}")


def build_report(g: GeometryBudget, w: WeylConstants, name: Optional[str] = None,
                 f_bound: Optional[Bound] = None) -> ObstructionReport:
    assembled = n_constant_assembled(g, w)
    closed = None
    if (g.inj_radius >= _PROFILE_INJ and g.volume >= _MIN_VOLUME
            and 0 < g.lambda1 <= 1):
        closed = n_constant_closed_form(g.volume, g.lambda1)
    m_value = None
    if f_bound is not None:
        m_value = froyshov_upper(f_bound, assembled.sf_displayed)
    return ObstructionReport(name=name, budget=g, assembled=assembled,
                             n_closed=closed, m_value=m_value,
                             unchecked=g.unchecked, formula=_formula_echo(g))


def census_report(records: Iterable[CensusRecord], w: WeylConstants,
                  f_bound: Optional[Bound] = None) -> tuple[list[ObstructionReport], list[CensusIssue]]:
    """One obstruction report per record; unchecked mode engages automatically
    (and is flagged) when a record breaks the eps <= 0.15 / delta <= 1
    conventions."""
    reports: list[ObstructionReport] = []
    issues: list[CensusIssue] = []
    for idx, record in enumerate(records, start=1):
        needs_unchecked = (record.inj_radius > _PROFILE_INJ
                           or record.lambda1_lower > 1
                           or record.volume < _MIN_VOLUME)
        try:
            budget = GeometryBudget(volume=record.volume, inj_radius=record.inj_radius,
                                    lambda1=record.lambda1_lower, unchecked=needs_unchecked)
            reports.append(build_report(budget, w, name=record.name, f_bound=f_bound))
        except (BudgetError, ValueError) as exc:
            issues.append(CensusIssue(idx, f"{record.name}: {exc}"))
    return reports, issues
