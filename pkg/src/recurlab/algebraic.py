"""Certified root moduli and exact degeneracy analysis of characteristic polynomials.

Multiplicities come from exact squarefree decomposition; the squarefree
part's roots are isolated numerically (sympy's certified isolation) and
refined until every modulus interval is tight enough.  Equality of moduli
is only ever asserted from exact facts (conjugate pairs, sign-symmetric
root pairs); everything else must separate or the operation fails loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy import CRootOf, Poly, Symbol

from . import polytools as pt
from .errors import PrecisionExhaustedError, ValidationError
from .logint import unit_root_box
from .recurrence import CharPoly

_X = Symbol("x")

DEFAULT_PRECISION_BITS = 64
MAX_PRECISION_BITS = 4096


@dataclass(frozen=True)
class RootEntry:
    """One distinct characteristic root: certified |alpha| bracket and multiplicity."""

    modulus_low: Fraction
    modulus_high: Fraction
    is_real: bool
    multiplicity: int


@dataclass(frozen=True)
class RootData:
    distinct_count: int
    roots: tuple[RootEntry, ...]
    dominant_modulus_interval: tuple[Fraction, Fraction]
    precision_bits: int


@dataclass(frozen=True)
class DegeneracyReport:
    nondegenerate: bool
    witnesses: tuple[tuple[int, int, int], ...]  # (i, j, m), 1-based root indices
    polynomial_type: bool


def _sqrt_bounds(q: Fraction, guard_bits: int) -> tuple[Fraction, Fraction]:
    """Rational bracket of sqrt(q) for q >= 0."""
    if q < 0:
        raise ValueError("sqrt of negative rational")
    if q == 0:
        return Fraction(0), Fraction(0)
    num, den = q.numerator, q.denominator
    scaled = num * den << (2 * guard_bits)
    s = math.isqrt(scaled)
    scale = den << guard_bits
    return Fraction(s, scale), Fraction(s + 1, scale)


class _RootHandle:
    """A distinct root of the squarefree part, with a shrinking certified disk."""

    def __init__(self, factor_asc: tuple, index: int, multiplicity: int):
        self.factor = factor_asc
        self.multiplicity = multiplicity
        poly = Poly(list(reversed(factor_asc)), _X)
        root = CRootOf(poly, index, radicals=False)
        if isinstance(root, CRootOf):
            self.sym = root
            self.exact_value: Fraction | None = None
            self.is_real = bool(root.is_real)
        else:
            # sympy simplifies rational roots to plain Rational numbers
            self.sym = None
            self.exact_value = Fraction(int(root.p), int(root.q))
            self.is_real = True
        self.re = Fraction(0)
        self.im = Fraction(0)
        self.radius = Fraction(1)
        self._bits = 0

    def refine(self, bits: int) -> None:
        """Shrink the certified disk to radius <= 2^-bits."""
        if self._bits >= bits:
            return
        if self.exact_value is not None:
            self.re, self.im, self.radius = self.exact_value, Fraction(0), Fraction(0)
            self._bits = bits
            return
        tol = Fraction(1, 2 ** (bits + 1))
        approx = self.sym.eval_rational(dx=tol, dy=tol)
        re_s, im_s = approx.as_real_imag()
        self.re = Fraction(int(re_s.p), int(re_s.q))
        self.im = Fraction(int(im_s.p), int(im_s.q))
        self.radius = 2 * tol  # |dre| + |dim| bounds the euclidean error
        if self.is_real:
            self.im = Fraction(0)
            self.radius = tol
        self._bits = bits

    def modulus_bounds(self, guard_bits: int) -> tuple[Fraction, Fraction]:
        if self.exact_value is not None:
            v = abs(self.exact_value)
            return v, v
        lo, hi = _sqrt_bounds(self.re * self.re + self.im * self.im, guard_bits)
        return max(Fraction(0), lo - self.radius), hi + self.radius

    def abs_center_bounds(self, guard_bits: int) -> tuple[Fraction, Fraction]:
        return _sqrt_bounds(self.re * self.re + self.im * self.im, guard_bits)


def _handles_for(factors: list[tuple[tuple, int]]) -> list[_RootHandle]:
    handles = []
    for fac, mult in factors:
        for i in range(pt.degree(fac)):
            handles.append(_RootHandle(fac, i, mult))
    return handles


def _negation_poly(asc: tuple) -> tuple:
    return pt.trim(tuple(c if i % 2 == 0 else -c for i, c in enumerate(asc)))


@lru_cache(maxsize=256)
def _minpoly_asc(root: CRootOf) -> tuple:
    mp = sympy.minimal_polynomial(root, _X, polys=True)
    return tuple(int(c) for c in reversed(mp.all_coeffs()))


def _divides(d: tuple, p: tuple) -> bool:
    _, r = pt.divmod_q(p, d)
    return not r


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        self.parent[self.find(i)] = self.find(j)


def _equal_modulus_groups(handles: list[_RootHandle], sf_asc: tuple,
                          max_bits: int) -> _UnionFind:
    """Join handles whose moduli are provably equal (conjugates, sign pairs)."""
    uf = _UnionFind(len(handles))

    # conjugate pairs: same factor, mirrored disks
    complex_handles = [i for i, h in enumerate(handles) if not h.is_real]
    gneg = pt.poly_gcd(sf_asc, _negation_poly(sf_asc))
    sign_symmetric = [False] * len(handles)
    if pt.degree(gneg) >= 1:
        for i, h in enumerate(handles):
            if h.exact_value is not None:
                sign_symmetric[i] = pt.eval_at(sf_asc, -h.exact_value) == 0
            else:
                sign_symmetric[i] = _divides(_minpoly_asc(h.sym), gneg)

    bits = 32
    while True:
        for h in handles:
            h.refine(bits)
        ok = True
        # conjugates: for each complex handle, its mirror disk must meet
        # exactly one other complex disk from the same factor
        for i in complex_handles:
            hi_ = handles[i]
            partners = [
                j for j in complex_handles
                if j != i and handles[j].factor == hi_.factor
                and _disks_meet(hi_.re, -hi_.im, hi_.radius,
                                handles[j].re, handles[j].im, handles[j].radius)
            ]
            if len(partners) != 1:
                ok = False
                break
            uf.union(i, partners[0])
        if ok:
            for i, h in enumerate(handles):
                if not sign_symmetric[i]:
                    continue
                partners = [
                    j for j in range(len(handles))
                    if _disks_meet(-h.re, -h.im, h.radius,
                                   handles[j].re, handles[j].im, handles[j].radius)
                ]
                if len(partners) != 1:
                    ok = False
                    break
                uf.union(i, partners[0])
        if ok:
            return uf
        bits *= 2
        if bits > max_bits:
            raise PrecisionExhaustedError(
                "could not disambiguate equal-modulus root pairings")


def _disks_meet(re1, im1, r1, re2, im2, r2) -> bool:
    d2 = (re1 - re2) ** 2 + (im1 - im2) ** 2
    return d2 <= (r1 + r2) ** 2


def roots(cp: CharPoly, precision_bits: int = DEFAULT_PRECISION_BITS,
          max_bits: int = MAX_PRECISION_BITS) -> RootData:
    """Certified moduli/multiplicities of the characteristic roots.

    Raises PrecisionExhaustedError if the dominant modulus cannot be
    separated (or proven equal) within `max_bits`.
    """
    if precision_bits < 4 or precision_bits > max_bits:
        raise ValidationError("precision_bits out of range")
    asc = cp.ascending()
    factors = pt.squarefree_decomposition(asc)
    handles = _handles_for(factors)
    sf_asc = pt.squarefree_part(asc)
    uf = _equal_modulus_groups(handles, sf_asc, max_bits)

    bits = max(64, precision_bits + 16)
    while True:
        for h in handles:
            h.refine(bits)
        guard = bits + 8
        raw = [h.modulus_bounds(guard) for h in handles]
        groups: dict[int, list[int]] = {}
        for i in range(len(handles)):
            groups.setdefault(uf.find(i), []).append(i)
        gi = {}
        consistent = True
        for g, members in groups.items():
            lo = max(raw[i][0] for i in members)
            hi = min(raw[i][1] for i in members)
            if lo > hi:
                consistent = False
                break
            gi[g] = (lo, hi)
        if consistent:
            dom = max(gi, key=lambda g: gi[g][0])
            dom_lo, dom_hi = gi[dom]
            separated = all(gi[g][1] < dom_lo for g in gi if g != dom)
            tight = all(
                hi - lo <= (lo + hi) / 2 * Fraction(1, 2**precision_bits)
                or (lo == hi)
                for lo, hi in gi.values())
            if separated and tight:
                entries = _assemble_entries(handles, raw, gi, uf, precision_bits)
                dom_entry = _inflate((dom_lo, dom_hi), precision_bits)
                data = RootData(
                    distinct_count=len(handles),
                    roots=tuple(entries),
                    dominant_modulus_interval=dom_entry,
                    precision_bits=precision_bits,
                )
                if all(e.modulus_low <= dom_entry[0] for e in entries):
                    return data
        bits *= 2
        if bits > max_bits:
            raise PrecisionExhaustedError(
                "dominant modulus could not be certified within the precision cap")


def _inflate(interval: tuple[Fraction, Fraction], precision_bits: int) -> tuple[Fraction, Fraction]:
    """Ensure positive width <= 2^-precision_bits relative to the midpoint."""
    lo, hi = interval
    if lo < hi:
        return lo, hi
    u = lo * Fraction(1, 2 ** (precision_bits + 3))
    if u == 0:
        u = Fraction(1, 2 ** (precision_bits + 3))
    return lo - u, hi + u


def _assemble_entries(handles, raw, gi, uf, precision_bits):
    entries = []
    for i, h in enumerate(handles):
        lo, hi = gi[uf.find(i)]
        lo, hi = _inflate((lo, hi), precision_bits)
        entries.append(RootEntry(lo, hi, h.is_real, h.multiplicity))
    return entries


# ---------------------------------------------------------------------------
# degeneracy: exact resultant/cyclotomic test plus witness attribution
# ---------------------------------------------------------------------------

def _ratio_resultant(sf_asc: tuple) -> tuple:
    """R(x) = Res_y(F(y), F(x y)) for squarefree monic F, by evaluation/interpolation."""
    s = pt.degree(sf_asc)
    npts = s * s + 1
    pts = []
    t = 0
    while len(pts) < npts:
        ft = pt.compose_scale(sf_asc, t)
        pts.append((t, pt.resultant(sf_asc, ft)))
        t = -t if t > 0 else -t + 1
    return pt.lagrange_int(pts)


def _polynomial_type(cp: CharPoly) -> bool:
    k = cp.degree
    minus = tuple(math.comb(k, i) * (-1) ** i for i in range(k + 1))
    plus = tuple(math.comb(k, i) for i in range(k + 1))
    return cp.coeffs == minus or cp.coeffs == plus


def degeneracy_check(cp: CharPoly, max_bits: int = MAX_PRECISION_BITS) -> DegeneracyReport:
    """Exact test: is some ratio of distinct characteristic roots a root of unity?

    The ratio polynomial Res_y(F(y), F(x y)) / (x-1)^s is checked for common
    factors with every cyclotomic of admissible order; witnesses are then
    pinned to root pairs with certified disks.
    """
    poly_type = _polynomial_type(cp)
    asc = cp.ascending()
    sf_asc = pt.squarefree_part(asc)
    s = pt.degree(sf_asc)
    if s == 1:
        return DegeneracyReport(True, (), poly_type)
    big = pt._ratio_resultant(sf_asc) if False else _ratio_resultant(sf_asc)
    r1 = pt.div_exact(big, pt.pow_poly((-1, 1), s))
    flagged: dict[int, int] = {}
    for m in range(1, 2 * s**4 + 1):
        if pt.euler_phi_small(m) <= s * s:
            g = pt.poly_gcd(r1, pt.cyclotomic(m))
            if pt.degree(g) >= 1:
                flagged[m] = pt.degree(g)
    if not flagged:
        return DegeneracyReport(True, (), poly_type)
    witnesses = _attribute_witnesses(sf_asc, flagged, max_bits)
    return DegeneracyReport(False, tuple(witnesses), poly_type)


def _ratio_disk(h1: _RootHandle, h2: _RootHandle, guard_bits: int):
    """Certified disk for alpha_1/alpha_2 from the two root disks."""
    c, d = h2.re, h2.im
    den = c * c + d * d
    if den == 0:
        raise ValidationError("zero root in ratio (nonzero constant term expected)")
    qre = (h1.re * c + h1.im * d) / den
    qim = (h1.im * c - h1.re * d) / den
    a1_lo, a1_hi = h1.abs_center_bounds(guard_bits)
    a2_lo, a2_hi = h2.abs_center_bounds(guard_bits)
    if a2_lo <= h2.radius:
        return qre, qim, None  # denominator disk not yet bounded away from 0
    rho = (h1.radius * a2_hi + h2.radius * a1_hi) / (a2_lo * (a2_lo - h2.radius))
    return qre, qim, rho


def _box_excludes(qre, qim, rho, box) -> bool:
    re_lo, re_hi, im_lo, im_hi = box
    dx = max(Fraction(0), re_lo - qre, qre - re_hi)
    dy = max(Fraction(0), im_lo - qim, qim - im_hi)
    return dx * dx + dy * dy > rho * rho


def _attribute_witnesses(sf_asc: tuple, flagged: dict[int, int],
                         max_bits: int) -> list[tuple[int, int, int]]:
    handles = _handles_for([(sf_asc, 1)])
    n = len(handles)
    bits = 64
    while True:
        for h in handles:
            h.refine(bits)
        guard = bits + 8
        boxes = {}
        for m in flagged:
            for t in range(1, m + 1):
                if math.gcd(t, m) == 1:
                    boxes[(m, t)] = unit_root_box(m, t, bits)
        ambiguous = False
        witness_pairs: list[tuple[int, int, tuple[int, int]]] = []
        for i in range(n):
            for j in range(i + 1, n):
                qre, qim, rho = _ratio_disk(handles[i], handles[j], guard)
                if rho is None:
                    ambiguous = True
                    break
                cands = [key for key, box in boxes.items()
                         if not _box_excludes(qre, qim, rho, box)]
                if len(cands) > 1:
                    ambiguous = True
                    break
                if cands:
                    witness_pairs.append((i + 1, j + 1, cands[0]))
            if ambiguous:
                break
        if not ambiguous:
            per_m: dict[int, set[int]] = {m: set() for m in flagged}
            for _, _, (m, t) in witness_pairs:
                per_m[m].add(t)
                per_m[m].add((-t) % m)
            if all(len(per_m[m]) == flagged[m] for m in flagged):
                return [(i, j, key[0]) for i, j, key in witness_pairs]
        bits *= 2
        if bits > max_bits:
            raise PrecisionExhaustedError(
                "witness attribution did not stabilize within the precision cap")
