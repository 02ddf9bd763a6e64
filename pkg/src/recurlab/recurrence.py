"""Integer linear recurrence sequences: specs, exact terms, zero census.

Index convention: sequences start at n = 1.  A spec that conceptually owns
a U_0 (Lucas-style) is encoded by shifting; the shift lives in the label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path

from .errors import ResourceLimitError, ValidationError, ZeroTermError
from . import logint

DEFAULT_BIT_BUDGET = 10**7


@dataclass(frozen=True)
class RecurrenceSpec:
    """Order-k recurrence U_{n+k} = a_1 U_{n+k-1} + ... + a_k U_n with seeds U_1..U_k."""

    order: int
    coeffs: tuple[int, ...]
    initial: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "initial", tuple(int(c) for c in self.initial))
        if self.order < 1:
            raise ValidationError("order must be >= 1")
        if len(self.coeffs) != self.order:
            raise ValidationError("coeffs must have exactly `order` entries")
        if len(self.initial) != self.order:
            raise ValidationError("initial must have exactly `order` entries")
        if self.coeffs[-1] == 0:
            raise ValidationError("trailing coefficient a_k must be nonzero")


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial X^k - a_1 X^{k-1} - ... - a_k.

    `coeffs` is in descending degree order, leading 1 first.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) < 2:
            raise ValidationError("characteristic polynomial must have degree >= 1")
        if self.coeffs[0] != 1:
            raise ValidationError("characteristic polynomial must be monic")
        if self.coeffs[-1] == 0:
            raise ValidationError("constant term must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def ascending(self) -> tuple[int, ...]:
        return tuple(reversed(self.coeffs))


@dataclass(frozen=True)
class TermValue:
    """One exact sequence value, with a lazily certified log|U_n|."""

    n: int
    value: int
    _log_cache: list = field(default_factory=list, repr=False, compare=False)

    @property
    def log_abs(self) -> float:
        """log|U_n| with absolute error <= 1e-9; undefined for U_n = 0."""
        if self.value == 0:
            raise ZeroTermError(f"U_{self.n} = 0 has no logarithm")
        if not self._log_cache:
            self._log_cache.append(logint.log_abs_float(self.value, max_abs_err=1e-9))
        return self._log_cache[0]


class Comparison(Enum):
    BELOW = "BELOW"
    ABOVE = "ABOVE"
    UNDECIDED = "UNDECIDED"


def char_poly(spec: RecurrenceSpec) -> CharPoly:
    """Characteristic polynomial of the recurrence."""
    return CharPoly((1,) + tuple(-a for a in spec.coeffs))


def recurrence_coeffs(cp: CharPoly) -> tuple[int, ...]:
    """Recover (a_1, ..., a_k) from the characteristic polynomial."""
    return tuple(-c for c in cp.coeffs[1:])


def term(spec: RecurrenceSpec, n: int, bit_budget: int = DEFAULT_BIT_BUDGET,
         method: str = "auto") -> TermValue:
    """Exact U_n.

    `method` is one of "auto", "iterative", "matrix"; the two concrete
    strategies always agree.  Raises ResourceLimitError when an intermediate
    integer would exceed `bit_budget` bits.
    """
    if n < 1:
        raise ValidationError("index must be >= 1")
    if method == "auto":
        method = "matrix" if n > 4096 else "iterative"
    if method == "iterative":
        value = _term_iterative(spec, n, bit_budget)
    elif method == "matrix":
        value = _term_matrix(spec, n, bit_budget)
    else:
        raise ValidationError(f"unknown method {method!r}")
    return TermValue(n, value)


def _term_iterative(spec: RecurrenceSpec, n: int, bit_budget: int) -> int:
    k = spec.order
    if n <= k:
        return spec.initial[n - 1]
    window = list(spec.initial)
    for _ in range(n - k):
        nxt = sum(a * u for a, u in zip(spec.coeffs, reversed(window)))
        if nxt.bit_length() > bit_budget:
            raise ResourceLimitError(
                f"term exceeds the {bit_budget}-bit budget")
        window.pop(0)
        window.append(nxt)
    return window[-1]


def _term_matrix(spec: RecurrenceSpec, n: int, bit_budget: int) -> int:
    k = spec.order
    if n <= k:
        return spec.initial[n - 1]
    # companion matrix acting on the state (U_j, ..., U_{j+k-1})
    mat = [[0] * k for _ in range(k)]
    for i in range(k - 1):
        mat[i][i + 1] = 1
    mat[k - 1] = [spec.coeffs[k - 1 - j] for j in range(k)]
    power = _mat_pow(mat, n - 1, bit_budget)
    return sum(power[0][j] * spec.initial[j] for j in range(k))


def _mat_mul(a, b, bit_budget):
    k = len(a)
    out = [[0] * k for _ in range(k)]
    for i in range(k):
        ai = a[i]
        for j in range(k):
            s = sum(ai[t] * b[t][j] for t in range(k))
            if s.bit_length() > bit_budget:
                raise ResourceLimitError(
                    f"matrix entry exceeds the {bit_budget}-bit budget")
            out[i][j] = s
    return out


def _mat_pow(m, e, bit_budget):
    k = len(m)
    out = [[int(i == j) for j in range(k)] for i in range(k)]
    while e:
        if e & 1:
            out = _mat_mul(out, m, bit_budget)
        m = _mat_mul(m, m, bit_budget)
        e >>= 1
    return out


def term_values(spec: RecurrenceSpec, n_max: int,
                bit_budget: int = DEFAULT_BIT_BUDGET) -> list[int]:
    """All of U_1..U_{n_max} by one iterative sweep (index 0 unused)."""
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    k = spec.order
    vals = [0] + list(spec.initial[: min(k, n_max)])
    window = list(spec.initial)
    for _ in range(n_max - k):
        nxt = sum(a * u for a, u in zip(spec.coeffs, reversed(window)))
        if nxt.bit_length() > bit_budget:
            raise ResourceLimitError(f"term exceeds the {bit_budget}-bit budget")
        window.pop(0)
        window.append(nxt)
        vals.append(nxt)
    return vals


def zero_census(spec: RecurrenceSpec, n_max: int,
                bit_budget: int = DEFAULT_BIT_BUDGET) -> list[int]:
    """Indices n <= n_max with U_n = 0, by exhaustive exact scan."""
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    vals = term_values(spec, n_max, bit_budget)
    return [n for n in range(1, n_max + 1) if vals[n] == 0]


def term_log_compare(spec: RecurrenceSpec, n: int,
                     threshold: tuple[Fraction, Fraction],
                     bit_budget: int = DEFAULT_BIT_BUDGET,
                     max_bits: int = 4096) -> Comparison:
    """Certified comparison of log|U_n| against a rational threshold interval.

    ABOVE / BELOW are certified; UNDECIDED is returned only when the two
    intervals still overlap at the precision cap.
    """
    lo, hi = Fraction(threshold[0]), Fraction(threshold[1])
    if lo > hi:
        raise ValidationError("threshold interval is inverted")
    value = term(spec, n, bit_budget).value
    if value == 0:
        raise ZeroTermError(f"U_{n} = 0 cannot be log-compared")
    return compare_log_abs(value, (lo, hi), max_bits=max_bits)


def compare_log_abs(value: int, threshold: tuple[Fraction, Fraction],
                    start_bits: int = 64, max_bits: int = 4096) -> Comparison:
    """Compare log|value| to an interval, escalating precision before giving up."""
    lo, hi = threshold
    bits = start_bits
    while True:
        vlo, vhi = logint.ln_abs_interval(value, bits)
        if vlo > hi:
            return Comparison.ABOVE
        if vhi < lo:
            return Comparison.BELOW
        if bits >= max_bits:
            return Comparison.UNDECIDED
        bits = min(bits * 2, max_bits)


# ---------------------------------------------------------------------------
# spec files: JSON key-value documents with integers as decimal strings
# ---------------------------------------------------------------------------

def spec_to_dict(spec: RecurrenceSpec) -> dict:
    return {
        "label": spec.label,
        "order": str(spec.order),
        "coeffs": [str(c) for c in spec.coeffs],
        "initial": [str(c) for c in spec.initial],
    }


def spec_from_dict(doc: dict) -> RecurrenceSpec:
    try:
        order = int(doc["order"])
        coeffs = tuple(int(c) for c in doc["coeffs"])
        initial = tuple(int(c) for c in doc["initial"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed sequence spec: {exc}") from exc
    return RecurrenceSpec(order, coeffs, initial, str(doc.get("label", "")))


def save_spec(spec: RecurrenceSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(spec_to_dict(spec), indent=2) + "\n")


def load_spec(path: str | Path) -> RecurrenceSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read sequence spec {path}: {exc}") from exc
    return spec_from_dict(doc)


# Built-in specs used throughout the experiments and docs.

def fibonacci() -> RecurrenceSpec:
    return RecurrenceSpec(2, (1, 1), (1, 1), "fibonacci")


def lucas_complex() -> RecurrenceSpec:
    """Binary recurrence with complex conjugate roots (X^2 - X + 2)."""
    return RecurrenceSpec(2, (1, -2), (1, 1), "lucas-complex")


def poly_n2_plus_1() -> RecurrenceSpec:
    """U_n = n^2 + 1, characteristic polynomial (X - 1)^3."""
    return RecurrenceSpec(3, (3, -3, 1), (2, 5, 10), "poly-n2plus1")


def power2_minus(a: int) -> RecurrenceSpec:
    """U_n = 2^n - a, characteristic polynomial X^2 - 3X + 2."""
    return RecurrenceSpec(2, (3, -2), (2 - a, 4 - a), f"power2-minus-{a}")


BUILTIN_SPECS = {
    "fibonacci": fibonacci,
    "lucas-complex": lucas_complex,
    "poly-n2plus1": poly_n2_plus_1,
}
