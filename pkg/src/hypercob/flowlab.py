"""Finite-dimensional spectral-flow laboratory.

Eigenvalue trajectories of T + sA for a diagonal base operator T and a
symmetric perturbation A, with the two flow-counting bounds and the
per-step eigenvalue sandwich checked on seeded random families.  The
sobolev weight model equips basis vector n with weight sqrt(3 + t_n^2),
the uniform majorant of the geometric eigenvector norms; the flat model
is the plain L^2 picture where the perturbation is bounded.

The campaign runner distributes independent seeded instances across
worker processes; each instance is deterministic given its seed and the
merged report is ordered by instance index.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .interval import Bound
from fractions import Fraction

__all__ = [
    "CampaignResult",
    "CheckReport",
    "ContainmentReport",
    "DegenerateEndpointError",
    "OperatorFamily",
    "check_bounded_flow_bound",
    "check_containment",
    "check_relative_flow_bound",
    "random_family",
    "relative_norm",
    "run_campaign",
    "spectral_flow",
    "trajectories",
]

_KERNEL_TOL = 1e-9
_SYMMETRY_TOL = 1e-12
_SPECTRUM_FLOOR = 1e-3


class DegenerateEndpointError(ValueError):
    """An endpoint operator has an eigenvalue too close to zero."""


@dataclass
class OperatorFamily:
    """Diagonal base spectrum, symmetric perturbation, and a weight model."""

    base_spectrum: np.ndarray
    perturbation: np.ndarray
    weight_model: str = "sobolev"

    def __post_init__(self):
        t = np.asarray(self.base_spectrum, dtype=float).ravel()
        a = np.asarray(self.perturbation, dtype=float)
        if t.ndim != 1 or t.size == 0:
            raise ValueError("base_spectrum must be a nonempty 1d array")
        if a.shape != (t.size, t.size):
            raise ValueError(f"perturbation shape {a.shape} does not match dimension {t.size}")
        if np.max(np.abs(a - a.T), initial=0.0) > _SYMMETRY_TOL:
            raise ValueError("perturbation must be symmetric within 1e-12 entrywise")
        if np.any(t == 0.0):
            raise ValueError("base_spectrum must not contain 0")
        if self.weight_model not in ("flat", "sobolev"):
            raise ValueError(f"unknown weight model {self.weight_model!r}")
        t = np.sort(t)
        a = (a + a.T) / 2.0
        t.flags.writeable = False
        a.flags.writeable = False
        self.base_spectrum = t
        self.perturbation = a

    @property
    def dim(self) -> int:
        return self.base_spectrum.size

    def weights(self) -> np.ndarray:
        if self.weight_model != "sobolev":
            raise ValueError("weights are only defined for the sobolev model")
        return np.sqrt(3.0 + self.base_spectrum ** 2)

    def perturbation_two_norm(self) -> float:
        if not np.any(self.perturbation):
            return 0.0
        return float(np.max(np.abs(np.linalg.eigvalsh(self.perturbation))))


def spectral_flow(f: OperatorFamily) -> int:
    """Signed count of eigenvalues crossing zero along T + sA, s in [0, 1].

    In finite dimension this is (#negative eigenvalues of T) minus
    (#negative eigenvalues of T + A); endpoints within 1e-9 of a kernel
    are rejected rather than perturbed.
    """
    t = f.base_spectrum
    if np.min(np.abs(t)) < _KERNEL_TOL:
        raise DegenerateEndpointError("base spectrum has a near-zero eigenvalue")
    end = np.linalg.eigvalsh(np.diag(t) + f.perturbation)
    if np.min(np.abs(end)) < _KERNEL_TOL:
        raise DegenerateEndpointError("endpoint T + A has a near-zero eigenvalue")
    return int(np.sum(t < 0) - np.sum(end < 0))


def trajectories(f: OperatorFamily, steps: int) -> np.ndarray:
    """Ascending eigenvalues of T + (k/steps) A for k = 0..steps.

    Returns an array of shape (steps + 1, dim); adjacent rows differ by at
    most ||A||_2 / steps per entry (Weyl's inequality).
    """
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    d = f.dim
    base = np.diag(f.base_spectrum)
    s = np.arange(steps + 1, dtype=float)[:, None, None] / steps
    mats = base[None, :, :] + s * f.perturbation[None, :, :]
    return np.linalg.eigvalsh(mats)


def _enclose_float(x: float, rel: float = 1e-9) -> Bound:
    exact = Bound.from_fraction(Fraction(x))
    pad = Bound.from_fraction(Fraction(rel))
    one = Bound.from_rational(1)
    return Bound((exact * (one - pad)).lo_raw, (exact * (one + pad)).hi_raw)


def relative_norm(f: OperatorFamily) -> Bound:
    """Enclosure of ||A W^{-1}||_2, the H_1 -> H operator norm of A."""
    if f.weight_model != "sobolev":
        raise ValueError("relative_norm requires the sobolev weight model")
    if not np.any(f.perturbation):
        return Bound.from_rational(0)
    m = f.perturbation / f.weights()[None, :]
    sigma = float(np.linalg.svd(m, compute_uv=False)[0])
    return _enclose_float(sigma)


@dataclass(frozen=True)
class CheckReport:
    kind: str
    flow: int
    threshold: float
    eigenvalues_in_window: int
    passed: bool


def check_bounded_flow_bound(f: OperatorFamily) -> CheckReport:
    """|spectral flow| <= #{n : |t_n| <= ||A||_2 + 1} (bounded perturbations)."""
    flow = spectral_flow(f)
    threshold = f.perturbation_two_norm() + 1.0
    count = int(np.sum(np.abs(f.base_spectrum) <= threshold))
    return CheckReport(kind="bounded", flow=flow, threshold=threshold,
                       eigenvalues_in_window=count, passed=abs(flow) <= count)


def check_relative_flow_bound(f: OperatorFamily) -> CheckReport:
    """|spectral flow| <= #{n : |t_n| <= 2 exp(||A||_1)} (sobolev model).

    The window is evaluated at the lower endpoint of the norm enclosure,
    which makes the verification strictly harder than the proposition.
    """
    flow = spectral_flow(f)
    norm_lo = float(relative_norm(f).lo)
    threshold = 2.0 * math.exp(norm_lo)
    count = int(np.sum(np.abs(f.base_spectrum) <= threshold))
    return CheckReport(kind="relative", flow=flow, threshold=threshold,
                       eigenvalues_in_window=count, passed=abs(flow) <= count)


@dataclass(frozen=True)
class ContainmentReport:
    steps: int
    eps_tilde: float
    violations: tuple
    passed: bool


def check_containment(f: OperatorFamily, steps: Optional[int] = None,
                      eps_tilde_max: float = 0.01) -> ContainmentReport:
    """Per-step eigenvalue sandwich along the discretized family.

    For each eigenvalue z at step k+1 there must exist a step-k eigenvalue
    t with |z - t| <= radius(t).  In the sobolev model the radius is
    eps_tilde * (2 + |t|) with eps_tilde = ||A||_1 / steps, which is the
    relatively-bounded resolvent window stated two-sidedly (the original
    one-sided display assumes t >= 0); in the flat model the radius is the
    plain bounded-perturbation window eps_tilde = ||A||_2 / steps.
    """
    if f.weight_model == "sobolev":
        norm = float(relative_norm(f).lo)
    else:
        norm = f.perturbation_two_norm()
    if steps is None:
        steps = max(2, math.ceil(norm / eps_tilde_max))
    eps_tilde = norm / steps
    if f.weight_model == "sobolev" and eps_tilde >= 1.0:
        raise ValueError(f"eps_tilde = {eps_tilde} >= 1; increase steps")
    traj = trajectories(f, steps)
    tol = 1e-9
    violations = []
    for k in range(steps):
        prev = traj[k]
        cur = traj[k + 1]
        if f.weight_model == "sobolev":
            radius = eps_tilde * (2.0 + np.abs(prev))
        else:
            radius = np.full_like(prev, eps_tilde)
        # sorted pairing witnesses almost always work; fall back to a full
        # search only where they fail
        miss = np.abs(cur - prev) > radius + tol
        for i in np.nonzero(miss)[0]:
            gap = np.abs(cur[i] - prev) - radius
            j = int(np.argmin(gap))
            if gap[j] > tol:
                violations.append((k, int(i), float(cur[i]), float(gap[j])))
    return ContainmentReport(steps=steps, eps_tilde=eps_tilde,
                             violations=tuple(violations), passed=not violations)


def random_family(seed: int, dim: int, spectrum_range: float, norm_target: float,
                  weight_model: str = "sobolev", mode: str = "uniform") -> OperatorFamily:
    """Reproducible random family.

    The base spectrum is drawn on [-R, R] (R = spectrum_range), kept away
    from zero by 1e-3; mode "cubic" draws magnitudes with count growing
    like T^3, mimicking the geometric eigenvalue growth.  Either way, about
    one eigenvalue in eight is anchored in the near-zero band (|t| <= 1):
    the geometric operator this models always carries spectrum near zero
    (only 0 itself is excluded by the transversality convention), and a
    large void around zero is the unphysical regime for the weighted
    resolvent windows.  The perturbation is a dense symmetric matrix
    rescaled so that ||A||_2 equals norm_target exactly (well within the
    5% contract).
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if spectrum_range <= _SPECTRUM_FLOOR:
        raise ValueError(f"spectrum_range must exceed {_SPECTRUM_FLOOR}")
    if norm_target < 0:
        raise ValueError("norm_target must be nonnegative")
    if mode not in ("uniform", "cubic"):
        raise ValueError(f"unknown spectrum mode {mode!r}")
    rng = np.random.default_rng(seed)
    anchors = max(1, dim // 8) if dim > 1 else 0
    t = np.empty(dim)
    filled = 0
    while filled < dim - anchors:
        if mode == "uniform":
            draw = rng.uniform(-spectrum_range, spectrum_range, dim - anchors - filled)
        else:
            mags = spectrum_range * rng.random(dim - anchors - filled) ** (1.0 / 3.0)
            draw = mags * rng.choice((-1.0, 1.0), dim - anchors - filled)
        keep = draw[np.abs(draw) >= _SPECTRUM_FLOOR]
        t[filled:filled + keep.size] = keep
        filled += keep.size
    band = min(1.0, spectrum_range)
    while filled < dim:
        draw = rng.uniform(-band, band, dim - filled)
        keep = draw[np.abs(draw) >= _SPECTRUM_FLOOR]
        t[filled:filled + keep.size] = keep
        filled += keep.size
    if norm_target == 0:
        a = np.zeros((dim, dim))
    else:
        a = rng.standard_normal((dim, dim))
        a = (a + a.T) / 2.0
        top = np.max(np.abs(np.linalg.eigvalsh(a)))
        a *= norm_target / top
    return OperatorFamily(base_spectrum=np.sort(t), perturbation=a,
                          weight_model=weight_model)


# campaign ---------------------------------------------------------------

@dataclass
class CampaignResult:
    records: list
    summary: dict


def _instance_params(base_seed: int, index: int, dim_range, norm_max, weight_models):
    rng = np.random.default_rng((base_seed, index))
    lo, hi = dim_range
    dim = int(round(math.exp(rng.uniform(math.log(lo), math.log(hi)))))
    dim = max(lo, min(hi, dim))
    norm_target = float(rng.uniform(0.2, norm_max))
    weight_model = weight_models[index % len(weight_models)]
    mode = "cubic" if (index // len(weight_models)) % 2 == 0 else "uniform"
    return dim, norm_target, weight_model, mode


def _run_instance(args):
    base_seed, index, dim_range, norm_max, spectrum_range, eps_tilde_max, steps, weight_models = args
    dim, norm_target, weight_model, mode = _instance_params(
        base_seed, index, dim_range, norm_max, weight_models)
    seed = base_seed + index
    resampled = 0
    while True:
        fam = random_family(seed, dim, spectrum_range, norm_target, weight_model, mode)
        try:
            flow = spectral_flow(fam)
            break
        except DegenerateEndpointError:
            resampled += 1
            seed += 10_000_019
            if resampled > 20:
                raise
    bounded = check_bounded_flow_bound(fam)
    record = {
        "index": index,
        "seed": seed,
        "dim": dim,
        "weight_model": weight_model,
        "mode": mode,
        "norm_target": norm_target,
        "resampled": resampled,
        "flow": flow,
        "bounded_threshold": bounded.threshold,
        "bounded_window": bounded.eigenvalues_in_window,
        "bounded_pass": bounded.passed,
    }
    if weight_model == "sobolev":
        rel = check_relative_flow_bound(fam)
        record["relative_threshold"] = rel.threshold
        record["relative_window"] = rel.eigenvalues_in_window
        record["relative_pass"] = rel.passed
    cont = check_containment(fam, steps=steps, eps_tilde_max=eps_tilde_max)
    record["containment_steps"] = cont.steps
    record["containment_violations"] = len(cont.violations)
    record["containment_pass"] = cont.passed
    record["pass"] = (bounded.passed and cont.passed
                      and record.get("relative_pass", True))
    return record


def run_campaign(trials: int, base_seed: int = 0, dim_range=(8, 100),
                 norm_max: float = 5.0, spectrum_range: float = 12.0,
                 eps_tilde_max: float = 0.01, steps: Optional[int] = None,
                 weight_models: Sequence[str] = ("sobolev", "flat"),
                 workers: int = 1) -> CampaignResult:
    """Run seeded instances through all three checks and merge the records."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    weight_models = tuple(weight_models)
    if not weight_models or any(wm not in ("sobolev", "flat") for wm in weight_models):
        raise ValueError(f"weight_models must draw from sobolev/flat, got {weight_models}")
    args = [(base_seed, i, tuple(dim_range), norm_max, spectrum_range, eps_tilde_max,
             steps, weight_models)
            for i in range(trials)]
    if workers > 1:
        chunk = max(1, trials // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_instance, args, chunksize=chunk))
    else:
        records = [_run_instance(a) for a in args]
    failures = [r for r in records if not r["pass"]]
    summary = {
        "trials": trials,
        "base_seed": base_seed,
        "dim_range": list(dim_range),
        "norm_max": norm_max,
        "spectrum_range": spectrum_range,
        "eps_tilde_max": eps_tilde_max,
        "weight_models": list(weight_models),
        "bounded_violations": sum(not r["bounded_pass"] for r in records),
        "relative_violations": sum(not r.get("relative_pass", True) for r in records),
        "containment_violations": sum(not r["containment_pass"] for r in records),
        "resampled_instances": sum(1 for r in records if r["resampled"]),
        "all_passed": not failures,
    }
    return CampaignResult(records=records, summary=summary)
