"""Validated interval arithmetic with unbounded exponents.

Every constant in the obstruction pipeline is carried as a ``Bound``, a
closed interval [lo, hi] whose endpoints are arbitrary-precision binary
floats (mpmath ``libmp`` tuples).  Because libmp exponents are plain Python
integers, magnitudes like exp(10**69), or numbers whose decimal logarithm
is itself astronomically large, are represented directly with no overflow
and no special log-domain branch; ``log10_report`` recovers a readable
rendition.

Soundness contract: the true real result of any supported operation, applied
to any points of the input intervals, lies inside the output interval.
Exactly-rounded kernels (add, sub, mul, div, sqrt) are used with directed
rounding as-is.  Transcendental kernels (exp, log, pi) are evaluated with 40
guard bits and then pushed outward by a relative 2**-(prec+20), which
dominates any plausible kernel slop while staying far below one ulp of the
working precision.  cosh and sinh are composed from the validated exp
kernel, and rational powers from exp and log, so there are only two
transcendental kernels to certify.

All values are immutable and all operations pure; Bounds can be shared
freely across threads and processes.
"""

from __future__ import annotations

import os
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Union

from mpmath import make_mpf
from mpmath.libmp import (
    finf,
    fnan,
    fninf,
    fone,
    from_int,
    from_man_exp,
    from_rational,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_exp,
    mpf_le,
    mpf_log,
    mpf_lt,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_shift,
    mpf_sqrt,
    mpf_sub,
    round_ceiling,
    round_floor,
    to_str,
)

__all__ = [
    "Bound",
    "BoundDomainError",
    "arith",
    "bound_max",
    "bound_min",
    "log10_report",
    "mpf_to_decimal",
    "pi_bound",
    "set_working_precision",
    "working_precision",
]

_DEFAULT_PREC = 128
_ENV_PREC = "HYPERCOB_PRECISION_BITS"

_working_prec = _DEFAULT_PREC

# Guard bits for transcendental kernels and the outward-nudge offset.
# The nudge 2**-(prec+_NUDGE) must exceed the kernel error at prec+_GUARD
# by a wide margin; _GUARD - _NUDGE = 20 gives a 2**20 safety factor.
_GUARD = 40
_NUDGE = 20


def set_working_precision(bits: int) -> None:
    """Set the working precision for all subsequently created Bounds."""
    global _working_prec
    if not isinstance(bits, int) or bits < 32 or bits > 100000:
        raise ValueError(f"working precision must be an int in [32, 100000], got {bits!r}")
    _working_prec = bits


def working_precision() -> int:
    return _working_prec


def apply_precision_env() -> None:
    """Pick up a precision override from the environment, if any."""
    raw = os.environ.get(_ENV_PREC)
    if raw is not None:
        set_working_precision(int(raw))


class BoundDomainError(ValueError):
    """A Bound operation was applied outside its domain.

    Carries the operation name and the offending interval(s) so callers can
    report exactly which step of a long formula chain failed.
    """

    def __init__(self, op: str, message: str, *intervals: "Bound"):
        self.op = op
        self.intervals = intervals
        detail = "; ".join(repr(b) for b in intervals)
        super().__init__(f"{op}: {message}" + (f" (operands: {detail})" if detail else ""))


# raw-endpoint helpers ------------------------------------------------------

def _nudge_down(v, prec):
    # v - |v| * 2**-(prec+_NUDGE), rounded down: guaranteed <= true value
    # whenever v approximates it to prec+_GUARD bits.
    pad = mpf_shift(mpf_abs(v), -(prec + _NUDGE))
    return mpf_sub(v, pad, prec, round_floor)


def _nudge_up(v, prec):
    pad = mpf_shift(mpf_abs(v), -(prec + _NUDGE))
    return mpf_add(v, pad, prec, round_ceiling)


def _exp_down(x, prec):
    return _nudge_down(mpf_exp(x, prec + _GUARD, round_floor), prec)


def _exp_up(x, prec):
    return _nudge_up(mpf_exp(x, prec + _GUARD, round_ceiling), prec)


def _log_down(x, prec):
    return _nudge_down(mpf_log(x, prec + _GUARD, round_floor), prec)


def _log_up(x, prec):
    return _nudge_up(mpf_log(x, prec + _GUARD, round_ceiling), prec)


def _pow_int_dir(x, n, prec, rnd):
    # x**n for a nonnegative scalar endpoint and n >= 1, by binary
    # exponentiation; every factor is nonnegative so rounding each partial
    # product in the target direction keeps the whole product on that side.
    result = None
    base = x
    m = n
    while m:
        if m & 1:
            result = base if result is None else mpf_mul(result, base, prec, rnd)
        m >>= 1
        if m:
            base = mpf_mul(base, base, prec, rnd)
    return result


_SPECIALS = (finf, fninf, fnan)

Rational = Union[int, Fraction]


class Bound:
    """A validated closed interval [lo, hi]; see the module docstring."""

    __slots__ = ("_lo", "_hi")

    def __init__(self, lo, hi):
        if lo in _SPECIALS or hi in _SPECIALS:
            raise BoundDomainError("init", "endpoints must be finite")
        if not mpf_le(lo, hi):
            raise BoundDomainError("init", f"lo > hi ({to_str(lo, 8)} > {to_str(hi, 8)})")
        self._lo = lo
        self._hi = hi

    # construction ----------------------------------------------------------

    @classmethod
    def from_rational(cls, p: int, q: int = 1) -> "Bound":
        """Tightest enclosure of p/q; degenerate whenever p/q is dyadic."""
        if q == 0:
            raise BoundDomainError("from_rational", "denominator must be nonzero")
        if q < 0:
            p, q = -p, -q
        prec = _working_prec
        return cls(from_rational(p, q, prec, round_floor),
                   from_rational(p, q, prec, round_ceiling))

    @classmethod
    def from_fraction(cls, x: Fraction) -> "Bound":
        return cls.from_rational(x.numerator, x.denominator)

    @classmethod
    def exact(cls, x: Rational) -> "Bound":
        if isinstance(x, Fraction):
            return cls.from_fraction(x)
        return cls.from_rational(int(x), 1)

    # views ------------------------------------------------------------------

    @property
    def lo(self):
        """Lower endpoint as an mpmath mpf (exact wrap, no rounding)."""
        return make_mpf(self._lo)

    @property
    def hi(self):
        return make_mpf(self._hi)

    @property
    def lo_raw(self):
        return self._lo

    @property
    def hi_raw(self):
        return self._hi

    def __repr__(self):
        return f"Bound[{to_str(self._lo, 12)}, {to_str(self._hi, 12)}]"

    # predicates -------------------------------------------------------------

    def is_degenerate(self) -> bool:
        return self._lo == self._hi

    def contains_zero(self) -> bool:
        return mpf_le(self._lo, fzero) and mpf_le(fzero, self._hi)

    def strictly_positive(self) -> bool:
        return mpf_lt(fzero, self._lo)

    def nonnegative(self) -> bool:
        return mpf_le(fzero, self._lo)

    def contains_rational(self, p: int, q: int = 1) -> bool:
        if q < 0:
            p, q = -p, -q
        prec = max(_working_prec, 8) + 64
        v_lo = from_rational(p, q, prec, round_floor)
        v_hi = from_rational(p, q, prec, round_ceiling)
        return mpf_le(self._lo, v_lo) and mpf_le(v_hi, self._hi)

    def contains_fraction(self, x: Fraction) -> bool:
        return self.contains_rational(x.numerator, x.denominator)

    def encloses(self, other: "Bound") -> bool:
        """True when other is a subset of self."""
        return mpf_le(self._lo, other._lo) and mpf_le(other._hi, self._hi)

    def upper_le(self, other: "Bound") -> bool:
        """Certified comparison: every point of self <= every point of other."""
        return mpf_le(self._hi, other._lo)

    def rel_width(self) -> float:
        """(hi - lo) / |midpoint|, as a float, for diagnostics; 0 if degenerate."""
        if self._lo == self._hi:
            return 0.0
        prec = 80
        w = mpf_sub(self._hi, self._lo, prec, round_ceiling)
        m = mpf_abs(mpf_add(self._hi, self._lo, prec, round_floor))
        if m == fzero:
            return float("inf")
        return float(make_mpf(mpf_div(mpf_shift(w, 1), m, prec, round_ceiling)))

    # arithmetic -------------------------------------------------------------

    def __neg__(self):
        return Bound(mpf_neg(self._hi), mpf_neg(self._lo))

    def __add__(self, other):
        other = _coerce(other)
        prec = _working_prec
        return Bound(mpf_add(self._lo, other._lo, prec, round_floor),
                     mpf_add(self._hi, other._hi, prec, round_ceiling))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        prec = _working_prec
        return Bound(mpf_sub(self._lo, other._hi, prec, round_floor),
                     mpf_sub(self._hi, other._lo, prec, round_ceiling))

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other):
        other = _coerce(other)
        prec = _working_prec
        pairs = ((self._lo, other._lo), (self._lo, other._hi),
                 (self._hi, other._lo), (self._hi, other._hi))
        lo = None
        hi = None
        for a, b in pairs:
            d = mpf_mul(a, b, prec, round_floor)
            u = mpf_mul(a, b, prec, round_ceiling)
            if lo is None or mpf_lt(d, lo):
                lo = d
            if hi is None or mpf_lt(hi, u):
                hi = u
        return Bound(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.contains_zero():
            raise BoundDomainError("div", "divisor interval contains zero", other)
        prec = _working_prec
        pairs = ((self._lo, other._lo), (self._lo, other._hi),
                 (self._hi, other._lo), (self._hi, other._hi))
        lo = None
        hi = None
        for a, b in pairs:
            d = mpf_div(a, b, prec, round_floor)
            u = mpf_div(a, b, prec, round_ceiling)
            if lo is None or mpf_lt(d, lo):
                lo = d
            if hi is None or mpf_lt(hi, u):
                hi = u
        return Bound(lo, hi)

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    # elementary functions ----------------------------------------------------

    def exp(self) -> "Bound":
        prec = _working_prec
        return Bound(_exp_down(self._lo, prec), _exp_up(self._hi, prec))

    def log(self) -> "Bound":
        if not self.strictly_positive():
            raise BoundDomainError("log", "requires a strictly positive interval", self)
        prec = _working_prec
        return Bound(_log_down(self._lo, prec), _log_up(self._hi, prec))

    def sqrt(self) -> "Bound":
        # mpf_sqrt is exactly rounded, so no outward nudge is needed.
        if mpf_lt(self._lo, fzero):
            raise BoundDomainError("sqrt", "requires a nonnegative interval", self)
        prec = _working_prec
        return Bound(mpf_sqrt(self._lo, prec, round_floor),
                     mpf_sqrt(self._hi, prec, round_ceiling))

    def cosh(self) -> "Bound":
        e = self.exp()
        f = (-self).exp()
        return (e + f) * Bound.from_rational(1, 2)

    def sinh(self) -> "Bound":
        e = self.exp()
        f = (-self).exp()
        return (e - f) * Bound.from_rational(1, 2)

    def pow_rational(self, p: int, q: int = 1) -> "Bound":
        """self**(p/q).  Fractional exponents require a nonnegative base."""
        if q == 0:
            raise BoundDomainError("pow_rational", "exponent denominator must be nonzero")
        if q < 0:
            p, q = -p, -q
        from math import gcd
        g = gcd(abs(p), q)
        if g > 1:
            p //= g
            q //= g
        if q == 1:
            return self._pow_int(p)
        if mpf_lt(self._lo, fzero):
            raise BoundDomainError(
                "pow_rational", f"fractional exponent {p}/{q} requires a nonnegative base", self)
        if self._lo == fzero:
            if p < 0:
                raise BoundDomainError(
                    "pow_rational", "negative fractional power of an interval touching zero", self)
            if self._hi == fzero:
                return Bound(fzero, fzero)
            upper = Bound(self._hi, self._hi)
            r = Bound.from_rational(p, q)
            hi = (upper.log() * r).exp()._hi
            return Bound(fzero, hi)
        r = Bound.from_rational(p, q)
        return (self.log() * r).exp()

    def _pow_int(self, n: int) -> "Bound":
        prec = _working_prec
        if n == 0:
            return Bound(fone, fone)
        if n < 0:
            return Bound(fone, fone) / self._pow_int(-n)
        lo, hi = self._lo, self._hi
        if mpf_le(fzero, lo):
            return Bound(_pow_int_dir(lo, n, prec, round_floor),
                         _pow_int_dir(hi, n, prec, round_ceiling))
        if mpf_le(hi, fzero):
            a = _pow_int_dir(mpf_abs(hi), n, prec, round_floor)
            b = _pow_int_dir(mpf_abs(lo), n, prec, round_ceiling)
            if n % 2 == 0:
                return Bound(a, b)
            a2 = _pow_int_dir(mpf_abs(lo), n, prec, round_ceiling)
            b2 = _pow_int_dir(mpf_abs(hi), n, prec, round_floor)
            return Bound(mpf_neg(a2), mpf_neg(b2))
        # straddles zero
        if n % 2 == 0:
            top = mpf_abs(lo) if mpf_lt(mpf_abs(hi), mpf_abs(lo)) else mpf_abs(hi)
            return Bound(fzero, _pow_int_dir(top, n, prec, round_ceiling))
        return Bound(mpf_neg(_pow_int_dir(mpf_abs(lo), n, prec, round_ceiling)),
                     _pow_int_dir(hi, n, prec, round_ceiling))

    def log10(self) -> "Bound":
        if not self.strictly_positive():
            raise BoundDomainError("log10", "requires a strictly positive interval", self)
        return self.log() / Bound.from_rational(10).log()


def _coerce(x) -> Bound:
    if isinstance(x, Bound):
        return x
    if isinstance(x, int):
        return Bound.from_rational(x, 1)
    if isinstance(x, Fraction):
        return Bound.from_fraction(x)
    raise TypeError(f"cannot mix Bound with {type(x).__name__}; convert explicitly")


def bound_min(a: Bound, b: Bound) -> Bound:
    lo = a._lo if mpf_le(a._lo, b._lo) else b._lo
    hi = a._hi if mpf_le(a._hi, b._hi) else b._hi
    return Bound(lo, hi)


def bound_max(a: Bound, b: Bound) -> Bound:
    lo = b._lo if mpf_le(a._lo, b._lo) else a._lo
    hi = b._hi if mpf_le(a._hi, b._hi) else a._hi
    return Bound(lo, hi)


_pi_cache: dict[int, Bound] = {}


def pi_bound() -> Bound:
    """Validated enclosure of pi at the working precision."""
    prec = _working_prec
    cached = _pi_cache.get(prec)
    if cached is None:
        cached = Bound(_nudge_down(mpf_pi(prec + _GUARD, round_floor), prec),
                       _nudge_up(mpf_pi(prec + _GUARD, round_ceiling), prec))
        _pi_cache[prec] = cached
    return cached


# the operation table required by the arith() entry point

_BINARY = {
    "add": Bound.__add__,
    "sub": Bound.__sub__,
    "mul": Bound.__mul__,
    "div": Bound.__truediv__,
    "min": bound_min,
    "max": bound_max,
}

_UNARY = {
    "exp": Bound.exp,
    "log": Bound.log,
    "cosh": Bound.cosh,
    "sinh": Bound.sinh,
    "sqrt": Bound.sqrt,
}


def arith(op: str, *args) -> Bound:
    """Apply a named operation; pow_rational takes (base, p, q)."""
    if op in _BINARY:
        if len(args) != 2:
            raise BoundDomainError(op, f"expected 2 arguments, got {len(args)}")
        return _BINARY[op](args[0], args[1])
    if op in _UNARY:
        if len(args) != 1:
            raise BoundDomainError(op, f"expected 1 argument, got {len(args)}")
        return _UNARY[op](args[0])
    if op == "pow_rational":
        if len(args) not in (2, 3):
            raise BoundDomainError(op, "expected (base, p[, q])")
        base = args[0]
        p = args[1]
        q = args[2] if len(args) == 3 else 1
        return base.pow_rational(p, q)
    raise BoundDomainError(op, "unsupported operation")


# reporting ------------------------------------------------------------------

def mpf_to_decimal(v) -> Decimal:
    """Exact Decimal rendition of a raw libmp float (no context rounding)."""
    sign, man, e, _bc = v
    if man == 0 and e == 0:
        return Decimal(0)
    if v in _SPECIALS:
        raise ValueError("cannot convert non-finite value")
    m = int(man)
    if e >= 0:
        digits = m << e
        return Decimal(-digits if sign else digits)
    scaled = m * 5 ** (-e)
    return Decimal(f"{'-' if sign else ''}{scaled}E{e}")


def log10_report(b: Bound) -> tuple[Decimal, Decimal]:
    """Exact-decimal enclosure of log10(b), for reporting huge constants."""
    if not b.strictly_positive():
        raise BoundDomainError("log10_report", "requires a strictly positive interval", b)
    lg = b.log10()
    return (mpf_to_decimal(lg.lo_raw), mpf_to_decimal(lg.hi_raw))
