"""Structure of X^(n/l) - 1 over the intermediate fields F_{q^l}.

The factorization type of X^m - 1 over a finite field is purely
combinatorial: with m coprime to the characteristic, the irreducible factor
degrees are the sizes of the cyclotomic cosets of Q modulo m, where Q is the
field size.  Everything this module reports (the polynomial Euler function
phi_l, the square-free divisor count W, the ratio theta_l) is derived from
those cosets without ever materializing a coefficient.

The module also hosts the two element tests that depend on polynomial
arithmetic with field coefficients: normality over F_{q^l} via the gcd
criterion, and complete normality over all divisor subfields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import p_free_part, prime_power_split
from .ffield import FFElem, FieldCtx, frobenius


def cyclotomic_cosets(m: int, Q: int) -> list:
    """Orbits of Z/mZ under multiplication by Q, ordered by least element.

    Q must be invertible mod m.  The orbit sizes are exactly the degrees of
    the irreducible factors of X^m - 1 over a field with Q elements.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if math.gcd(Q, m) != 1:
        raise ValueError(f"{Q} is not invertible modulo {m}")
    if m == 1:
        return [(0,)]
    seen = [False] * m
    cosets = []
    for start in range(m):
        if seen[start]:
            continue
        orbit = []
        j = start
        while not seen[j]:
            seen[j] = True
            orbit.append(j)
            j = j * Q % m
        cosets.append(tuple(sorted(orbit)))
    return cosets


@dataclass(frozen=True)
class CycFactorization:
    """Shape of X^(n/l) - 1 = (X^m' - 1)^multiplicity over F_{q^l}.

    m_prime is the p-free part of n/l; multiplicity the complementary power
    of p; coset_degrees the irreducible factor degrees of X^m' - 1 (sorted,
    with repetitions).
    """

    l: int
    m_prime: int
    multiplicity: int
    cosets: tuple
    coset_degrees: tuple


@dataclass(frozen=True)
class PolyStats:
    """phi = phi_l(X^(n/l) - 1); W_sf = number of monic divisors of the
    square-free part X^m' - 1; theta = phi_l(X^m' - 1) / q^(l m')."""

    phi: int
    W_sf: int
    theta: Fraction


def cyc_factorization(q: int, p: int, n: int, l: int) -> CycFactorization:
    if n < 1 or l < 1 or n % l:
        raise ValueError(f"l={l} must divide n={n}")
    split = prime_power_split(q)
    if split is None or split[0] != p:
        raise ValueError(f"q={q} is not a power of p={p}")
    m_prime = p_free_part(n // l, p)
    multiplicity = (n // l) // m_prime
    cosets = tuple(cyclotomic_cosets(m_prime, q**l % m_prime if m_prime > 1 else 1))
    degrees = tuple(sorted(len(c) for c in cosets))
    return CycFactorization(
        l=l, m_prime=m_prime, multiplicity=multiplicity, cosets=cosets, coset_degrees=degrees
    )


def poly_stats(q: int, p: int, n: int, l: int) -> PolyStats:
    """Euler phi, square-free divisor count and theta for X^(n/l) - 1.

    phi_l multiplies (Q^d - 1) * Q^(d*(a-1)) over the irreducible factors
    of degree d with multiplicity a = multiplicity of (X^m' - 1); theta is
    the phi-to-size ratio of the square-free part only.
    """
    shape = cyc_factorization(q, p, n, l)
    Q = q**l
    phi = 1
    theta = Fraction(1)
    for d in shape.coset_degrees:
        phi *= (Q**d - 1) * Q ** (d * (shape.multiplicity - 1))
        theta *= Fraction(Q**d - 1, Q**d)
    return PolyStats(phi=phi, W_sf=1 << len(shape.coset_degrees), theta=theta)


def phi_of_divisor(q: int, l: int, degrees: tuple, exponents: tuple) -> int:
    """phi_l(F) for F = prod P_i^(a_i), P_i distinct irreducibles over
    F_{q^l} with deg P_i = degrees[i] and a_i = exponents[i] >= 0."""
    Q = q**l
    out = 1
    for d, a in zip(degrees, exponents):
        if a:
            out *= (Q**d - 1) * Q ** (d * (a - 1))
    return out


def moebius_of_divisor(exponents: tuple) -> int:
    """Polynomial Moebius function from the exponent vector."""
    if any(a > 1 for a in exponents):
        return 0
    return -1 if sum(exponents) % 2 else 1


# -- polynomial arithmetic with coefficients in a FieldCtx ------------------
#
# Polynomials are lists of FFElem, ascending by degree, trailing zeros
# stripped; [] is zero.  Only what the gcd criterion and the enumeration
# engine need: multiply, divide, gcd.


def fq_trim(poly: list) -> list:
    while poly and not poly[-1]:
        poly.pop()
    return poly


def fq_mul(f: list, g: list, ctx: FieldCtx) -> list:
    if not f or not g:
        return []
    out = [ctx.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return fq_trim(out)


def fq_divmod(f: list, g: list, ctx: FieldCtx) -> tuple:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    dg = len(g) - 1
    inv_lead = g[-1].inverse()
    quot = [ctx.zero] * max(len(f) - dg, 0)
    for i in range(len(rem) - 1 - dg, -1, -1):
        c = rem[i + dg]
        if c:
            c = c * inv_lead
            quot[i] = c
            for j, b in enumerate(g):
                rem[i + j] = rem[i + j] - c * b
    return fq_trim(quot), fq_trim(rem[:dg])


def fq_gcd(f: list, g: list, ctx: FieldCtx) -> list:
    while g:
        f, g = g, fq_divmod(f, g, ctx)[1]
    if f:
        inv = f[-1].inverse()
        f = [c * inv for c in f]
    return f


def x_power_minus_one(k: int, ctx: FieldCtx) -> list:
    poly = [ctx.zero] * (k + 1)
    poly[0] = -ctx.one
    poly[k] = ctx.one
    return poly


def normality_test(ctx: FieldCtx, x: FFElem, l: int) -> bool:
    """x is normal over F_{q^l} iff gcd(X^(n/l) - 1, sum_i x^(q^(l i)) X^i)
    is 1 in F_{q^n}[X]."""
    if l < 1 or ctx.n % l:
        raise ValueError(f"l={l} must divide n={ctx.n}")
    k = ctx.n // l
    if not x:
        return False
    coeffs = []
    y = x
    for _ in range(k):
        coeffs.append(y)
        y = frobenius(ctx, y, l)
    g = fq_gcd(x_power_minus_one(k, ctx), coeffs, ctx)
    return len(g) == 1


def is_completely_normal(ctx: FieldCtx, x: FFElem) -> bool:
    """Normal over F_{q^l} for every divisor l of n (l = n amounts to x != 0)."""
    if not x:
        return False
    for l in range(1, ctx.n):
        if ctx.n % l == 0 and not normality_test(ctx, x, l):
            return False
    return True
