"""Exact dense polynomial arithmetic over Z and Q.

A polynomial is a tuple of coefficients in ascending degree order
(constant term first).  The zero polynomial is the empty tuple.
Coefficients are Python ints unless a function says otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Poly = tuple


def trim(c: Sequence) -> Poly:
    """Drop high-degree zero coefficients."""
    end = len(c)
    while end > 0 and c[end - 1] == 0:
        end -= 1
    return tuple(c[:end])


def degree(c: Sequence) -> int:
    """Degree of the polynomial; the zero polynomial has degree -1."""
    return len(trim(c)) - 1


def add(a: Sequence, b: Sequence) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def neg(a: Sequence) -> Poly:
    return tuple(-x for x in a)


def sub(a: Sequence, b: Sequence) -> Poly:
    return add(a, neg(b))


def mul(a: Sequence, b: Sequence) -> Poly:
    a, b = trim(a), trim(b)
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def scale(a: Sequence, s) -> Poly:
    return trim(tuple(x * s for x in a))


def pow_poly(a: Sequence, e: int) -> Poly:
    out: Poly = (1,)
    for _ in range(e):
        out = mul(out, a)
    return out


def eval_at(a: Sequence, x):
    """Horner evaluation; works for int, Fraction and interval-like values."""
    acc = 0
    for c in reversed(trim(a)):
        acc = acc * x + c
    return acc


def derivative(a: Sequence) -> Poly:
    return trim(tuple(i * c for i, c in enumerate(a)))[1:] if len(a) > 1 else ()


def divmod_q(a: Sequence, b: Sequence) -> tuple[Poly, Poly]:
    """Quotient and remainder over Q; coefficients become Fractions."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    db, lb = len(b) - 1, Fraction(b[-1])
    q = [Fraction(0)] * max(len(r) - db, 1)
    while len(trim(r)) - 1 >= db:
        r = list(trim(r))
        d = len(r) - 1
        coef = r[-1] / lb
        q[d - db] = coef
        for j, bj in enumerate(b):
            r[d - db + j] -= coef * bj
    return trim(q), trim(r)


def div_exact(a: Sequence, b: Sequence) -> Poly:
    """Exact division in Z[x]; raises if b does not divide a."""
    q, r = divmod_q(a, b)
    if r:
        raise ValueError("inexact polynomial division")
    out = []
    for c in q:
        if c.denominator != 1:
            raise ValueError("quotient not integral")
        out.append(int(c))
    return trim(out)


def content(a: Sequence) -> int:
    """gcd of the coefficients (0 for the zero polynomial)."""
    g = 0
    for c in a:
        g = math.gcd(g, abs(c))
    return g


def primitive(a: Sequence) -> Poly:
    a = trim(a)
    g = content(a)
    if g <= 1:
        return a
    return tuple(c // g for c in a)


def prem(a: Sequence, b: Sequence) -> Poly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced mod b, in Z[x]."""
    a, b = list(trim(a)), trim(b)
    if not b:
        raise ZeroDivisionError("pseudo-division by zero")
    db, lb = len(b) - 1, b[-1]
    e = len(a) - 1 - db + 1
    while len(trim(a)) - 1 >= db:
        a = list(trim(a))
        d = len(a) - 1
        coef = a[-1]
        a = [lb * x for x in a]
        for j, bj in enumerate(b):
            a[d - db + j] -= coef * bj
        e -= 1
    if e > 0:
        a = [lb**e * x for x in a]
    return trim(a)


def poly_gcd(a: Sequence, b: Sequence) -> Poly:
    """gcd in Z[x] via the primitive PRS, normalized to positive leading coeff."""
    a, b = trim(a), trim(b)
    if not a and not b:
        return ()
    if not a or not b:
        g = primitive(a or b)
        cont = math.gcd(content(a), content(b))
        return _pos_lc(scale(g, cont) if cont > 1 else g)
    cont = math.gcd(content(a), content(b))
    a, b = primitive(a), primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = primitive(prem(a, b))
        a, b = b, r
    a = _pos_lc(a)
    if degree(a) == 0:
        return (cont,) if cont else (1,)
    return scale(a, cont) if cont > 1 else a


def _pos_lc(a: Poly) -> Poly:
    return neg(a) if a and a[-1] < 0 else a


def _bareiss_det(rows: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def resultant(a: Sequence, b: Sequence) -> int:
    """Res(a, b) over Z via the Sylvester determinant (Bareiss elimination)."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return 0
    da, db = len(a) - 1, len(b) - 1
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    n = da + db
    rows = []
    ra = list(reversed(a))  # descending order for the Sylvester layout
    rb = list(reversed(b))
    for i in range(db):
        rows.append([0] * i + ra + [0] * (n - da - 1 - i))
    for i in range(da):
        rows.append([0] * i + rb + [0] * (n - db - 1 - i))
    return _bareiss_det(rows)


def compose_scale(a: Sequence, t) -> Poly:
    """a(t*y) as a polynomial in y: coefficient j becomes a_j * t^j."""
    out, p = [], 1
    for c in a:
        out.append(c * p)
        p *= t
    return trim(out)


def squarefree_part(a: Sequence) -> Poly:
    """Product of the distinct irreducible factors (monic input, monic output)."""
    parts = squarefree_decomposition(a)
    out: Poly = (1,)
    for f, _ in parts:
        out = mul(out, f)
    return out


def squarefree_decomposition(p: Sequence) -> list[tuple[Poly, int]]:
    """Yun's algorithm for a monic polynomial in Z[x].

    Returns [(f_i, m_i)] with p = prod f_i^{m_i}, the f_i squarefree,
    pairwise coprime and monic.
    """
    p = trim(p)
    if degree(p) < 1 or p[-1] != 1:
        raise ValueError("squarefree decomposition expects a monic nonconstant polynomial")
    dp = derivative(p)
    g = poly_gcd(p, dp)
    if degree(g) == 0:
        return [(p, 1)]
    w = div_exact(p, g)
    y = div_exact(dp, g)
    z = sub(y, derivative(w))
    out = []
    i = 1
    while degree(w) > 0:
        gi = poly_gcd(w, z)
        if degree(gi) > 0:
            out.append((gi, i))
        w = div_exact(w, gi)
        y = z if degree(gi) == 0 else div_exact(z, gi)
        z = sub(y, derivative(w))
        i += 1
    return out


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> Poly:
    """The m-th cyclotomic polynomial, ascending coefficients."""
    if m < 1:
        raise ValueError("m must be positive")
    num = tuple([-1] + [0] * (m - 1) + [1])  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = div_exact(num, cyclotomic(d))
    return num


def euler_phi_small(m: int) -> int:
    """Euler's totient by trial division; intended for small m."""
    if m < 1:
        raise ValueError("m must be positive")
    out, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            out -= out // p
        p += 1 if p == 2 else 2
    if n > 1:
        out -= out // n
    return out


def lagrange_int(points: Sequence[tuple[int, int]]) -> Poly:
    """Interpolate an integer polynomial through (x_i, y_i); raises if not integral."""
    out: tuple = ()
    for i, (xi, yi) in enumerate(points):
        basis: tuple = (Fraction(1),)
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = mul(basis, (Fraction(-xj), Fraction(1)))
            denom *= Fraction(xi - xj)
        out = add(out, scale(basis, Fraction(yi) / denom))
    coeffs = []
    for c in trim(out):
        c = Fraction(c)
        if c.denominator != 1:
            raise ValueError("interpolation result not integral")
        coeffs.append(int(c))
    return trim(coeffs)


def sturm_chain(p: Sequence) -> list[Poly]:
    """Sturm chain of p over Q (input ints or Fractions)."""
    p0 = trim(tuple(Fraction(c) for c in p))
    if not p0:
        return []
    chain = [p0]
    p1 = derivative(p0)
    if p1:
        chain.append(p1)
    while len(chain[-1]) > 1:
        _, r = divmod_q(chain[-2], chain[-1])
        if not r:
            break
        chain.append(neg(r))
    return chain


def _sign_variations(chain: list[Poly], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = eval_at(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Sequence, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    chain = sturm_chain(p)
    if not chain:
        raise ValueError("zero polynomial")
    return _sign_variations(chain, Fraction(lo)) - _sign_variations(chain, Fraction(hi))
