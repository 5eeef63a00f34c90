"""Configuration: Weyl-constant profiles and the optional grading bound.

Config files are JSON:

    {
      "profiles": {
        "eps0.15": {"eps": 0.15, "a": 3, "b": 402, "d": 100, "e": 780}
      },
      "f_bound": 2.5
    }

Numeric values may be numbers or strings; either way they are parsed as
exact decimal fractions.  The eps0.15 profile is always available, and a
config file may add profiles for other injectivity radii (the general-eps
coefficients are imported data, not derived here).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .interval import Bound
from .weyl import PROFILE_EPS_0_15, WeylConstants

__all__ = ["Config", "DEFAULT_PROFILE_NAME", "default_config", "load_config"]

DEFAULT_PROFILE_NAME = "eps0.15"


@dataclass
class Config:
    profiles: dict[str, WeylConstants] = field(default_factory=dict)
    f_bound: Optional[Fraction] = None

    def profile(self, name: str) -> WeylConstants:
        try:
            return self.profiles[name]
        except KeyError:
            raise KeyError(
                f"unknown Weyl profile {name!r}; available: {sorted(self.profiles)}") from None


def default_config() -> Config:
    return Config(profiles={DEFAULT_PROFILE_NAME: PROFILE_EPS_0_15})


def _fraction(value, where: str) -> Fraction:
    try:
        return Fraction(str(value)) if isinstance(value, float) else Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"{where}: not a rational value: {value!r}") from exc


def load_config(path: str) -> Config:
    """Load profiles/f_bound from a JSON file, merged over the defaults."""
    with open(path, "r", encoding="utf-8") as handle:
        raw = json.load(handle, parse_float=Fraction)
    if not isinstance(raw, dict):
        raise ValueError("config root must be a JSON object")
    cfg = default_config()
    for name, body in raw.get("profiles", {}).items():
        if not isinstance(body, dict):
            raise ValueError(f"profile {name!r} must be an object")
        missing = [k for k in ("eps", "a", "b", "d", "e") if k not in body]
        if missing:
            raise ValueError(f"profile {name!r} missing field(s): {', '.join(missing)}")
        cfg.profiles[name] = WeylConstants(
            eps=_fraction(body["eps"], f"profile {name} eps"),
            a=Bound.from_fraction(_fraction(body["a"], f"profile {name} a")),
            b=Bound.from_fraction(_fraction(body["b"], f"profile {name} b")),
            d=Bound.from_fraction(_fraction(body["d"], f"profile {name} d")),
            e=Bound.from_fraction(_fraction(body["e"], f"profile {name} e")),
        )
    if "f_bound" in raw and raw["f_bound"] is not None:
        cfg.f_bound = _fraction(raw["f_bound"], "f_bound")
        if cfg.f_bound < 0:
            raise ValueError(f"f_bound must be nonnegative, got {cfg.f_bound}")
    return cfg
