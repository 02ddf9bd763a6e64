"""Certified interval arithmetic for logarithms of exact integers/rationals.

Thin wrapper over mpmath's `iv` context.  The iv context carries global
precision state, so every use here is serialized behind a lock; callers
get back plain Fraction endpoints and can run concurrently themselves.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from mpmath import iv

from .errors import ValidationError

_LOCK = threading.Lock()

FracInterval = tuple[Fraction, Fraction]


def _endpoint_to_fraction(mpf_tuple) -> Fraction:
    sign, man, exp, _ = mpf_tuple
    man = int(man)
    if exp >= 0:
        val = Fraction(man << exp)
    else:
        val = Fraction(man, 1 << -exp)
    return -val if sign else val


def _to_fractions(x) -> FracInterval:
    lo_t, hi_t = x._mpi_
    return _endpoint_to_fraction(lo_t), _endpoint_to_fraction(hi_t)


def _iv_from_fraction(f: Fraction):
    return iv.mpf(f.numerator) / iv.mpf(f.denominator)


def _iv_from_interval(interval: FracInterval):
    lo = _iv_from_fraction(Fraction(interval[0]))
    hi = _iv_from_fraction(Fraction(interval[1]))
    return iv.mpf([lo.a, hi.b])


def ln_abs_interval(value: int, bits: int) -> FracInterval:
    """Certified rational bounds on ln|value| for a nonzero integer."""
    if value == 0:
        raise ValidationError("ln of zero")
    m = abs(value)
    with _LOCK:
        old = iv.prec
        try:
            iv.prec = bits
            return _to_fractions(iv.log(iv.mpf(m)))
        finally:
            iv.prec = old


def ln_interval(interval: FracInterval, bits: int) -> FracInterval:
    """Certified rational bounds on ln over a positive rational interval."""
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if lo <= 0:
        raise ValidationError("ln over an interval touching zero")
    with _LOCK:
        old = iv.prec
        try:
            iv.prec = bits
            return _to_fractions(iv.log(_iv_from_interval((lo, hi))))
        finally:
            iv.prec = old


def neg_power_interval(x: int, c: Fraction, bits: int) -> FracInterval:
    """Certified rational bounds on x^(-c) for integer x >= 2, rational c > 0."""
    if x < 2 or c <= 0:
        raise ValidationError("x^(-c) needs x >= 2 and c > 0")
    with _LOCK:
        old = iv.prec
        try:
            iv.prec = bits
            expo = -_iv_from_fraction(Fraction(c)) * iv.log(iv.mpf(x))
            return _to_fractions(iv.exp(expo))
        finally:
            iv.prec = old


def log_abs_float(value: int, max_abs_err: float = 1e-9) -> float:
    """Float approximation of ln|value| with absolute error <= max_abs_err."""
    bits = 64
    while True:
        lo, hi = ln_abs_interval(value, bits)
        if float(hi - lo) <= max_abs_err:
            return float((lo + hi) / 2)
        bits *= 2
        if bits > 1 << 16:  # never reached for sane inputs
            raise ValidationError("log_abs_float failed to converge")


def unit_root_box(m: int, t: int, bits: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Certified box (re_lo, re_hi, im_lo, im_hi) around exp(2*pi*i*t/m)."""
    with _LOCK:
        old = iv.prec
        try:
            iv.prec = bits
            theta = 2 * iv.pi * t / m
            re = _to_fractions(iv.cos(theta))
            im = _to_fractions(iv.sin(theta))
            return re[0], re[1], im[0], im[1]
        finally:
            iv.prec = old
