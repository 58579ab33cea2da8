"""Dense univariate polynomial arithmetic over prime fields F_p.

Coefficients are ints in [0, p), stored ascending by degree in tuples; the
zero polynomial is the empty tuple.  Everything is schoolbook on purpose:
the largest polynomial that ever passes through here is the modulus search
for a degree-72 extension, so clarity beats asymptotics.
"""

from __future__ import annotations

from functools import lru_cache


def trim(c) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(f: tuple) -> int:
    """Degree, with deg(0) = -1."""
    return len(f) - 1


def add(f: tuple, g: tuple, p: int) -> tuple:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(f: tuple, g: tuple, p: int) -> tuple:
    out = list(f) + [0] * (len(g) - len(f))
    for i, c in enumerate(g):
        out[i] = (out[i] - c) % p
    return trim(out)


def mul(f: tuple, g: tuple, p: int) -> tuple:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(c % p for c in out)


def divmod_(f: tuple, g: tuple, p: int) -> tuple:
    """(quotient, remainder) with g != 0."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    dg = deg(g)
    inv_lead = pow(g[-1], p - 2, p)
    quot = [0] * max(len(f) - dg, 0)
    for i in range(len(rem) - 1 - dg, -1, -1):
        c = rem[i + dg] % p
        if c:
            c = c * inv_lead % p
            quot[i] = c
            for j, b in enumerate(g):
                rem[i + j] = (rem[i + j] - c * b) % p
    return trim(quot), trim(rem[:dg])


def mod(f: tuple, g: tuple, p: int) -> tuple:
    return divmod_(f, g, p)[1]


def monic(f: tuple, p: int) -> tuple:
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return tuple(c * inv % p for c in f)


def gcd(f: tuple, g: tuple, p: int) -> tuple:
    while g:
        f, g = g, mod(f, g, p)
    return monic(f, p)


def pow_mod(base: tuple, exp: int, modulus: tuple, p: int) -> tuple:
    result = (1,)
    base = mod(base, modulus, p)
    while exp:
        if exp & 1:
            result = mod(mul(result, base, p), modulus, p)
        base = mod(mul(base, base, p), modulus, p)
        exp >>= 1
    return result


def frobenius_power(u: tuple, k: int, modulus: tuple, p: int) -> tuple:
    """u^(p^k) mod modulus, by k successive p-th powers."""
    for _ in range(k):
        u = pow_mod(u, p, modulus, p)
    return u


def is_irreducible(f: tuple, p: int) -> bool:
    """Rabin's test: x^(p^d) = x mod f, and x^(p^(d/r)) - x coprime to f
    for every prime r dividing d."""
    d = deg(f)
    if d < 1:
        return False
    if d == 1:
        return True
    x = (0, 1)
    if frobenius_power(x, d, f, p) != mod(x, f, p):
        return False
    divs = set()
    dd, r = d, 2
    while r * r <= dd:
        if dd % r == 0:
            divs.add(r)
            while dd % r == 0:
                dd //= r
        r += 1
    if dd > 1:
        divs.add(dd)
    for r in divs:
        u = frobenius_power(x, d // r, f, p)
        if deg(gcd(sub(u, x, p), f, p)) != 0:
            return False
    return True


@lru_cache(maxsize=None)
def lex_least_irreducible(p: int, d: int) -> tuple:
    """The least monic irreducible of degree d over F_p, where candidates
    are ordered by the coefficient tuple (c_{d-1}, ..., c_1, c_0)."""
    if d < 1:
        raise ValueError("degree must be positive")
    for idx in range(p**d):
        digits = []
        v = idx
        for _ in range(d):
            digits.append(v % p)
            v //= p
        # digits[k] is c_k; the counter's most significant digit is c_{d-1},
        # so increasing idx walks the (c_{d-1}, ..., c_0) tuples in order
        f = tuple(digits) + (1,)
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found (unreachable)")
