"""Concrete extension fields F_{q^n} = F_p[x]/(f), q = p^e.

A FieldCtx fixes the tower shape (p, e, n) and the degree-d modulus,
d = e*n.  Elements are coordinate vectors over F_p of length d.  The base
field of interest F_q and the intermediate fields F_{q^l} are never
represented explicitly; everything about them is phrased through Frobenius
powers x -> x^(q^l), which are precomputed d x d matrices over F_p.

Multiplication uses carry-less packed integers in characteristic 2 and
numpy convolution otherwise.  Both paths are exact.
"""

from __future__ import annotations

import math

import numpy as np

from . import polyfp
from .arith import IntFactorization, factor_qn_minus_1, is_prime

DLOG_CAP = 1 << 24


class FFElem:
    """A field element: immutable coordinate tuple bound to its context."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        self.ctx = ctx
        self.coords = tuple(int(c) % ctx.p for c in coords)
        if len(self.coords) != ctx.d:
            raise ValueError(f"expected {ctx.d} coordinates, got {len(self.coords)}")

    def __repr__(self):
        return f"FFElem{self.coords}"

    def __eq__(self, other):
        return (
            isinstance(other, FFElem)
            and self.ctx is other.ctx
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def _check(self, other):
        if not isinstance(other, FFElem) or other.ctx is not self.ctx:
            raise TypeError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        p = self.ctx.p
        return FFElem(self.ctx, [(a + b) % p for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        p = self.ctx.p
        return FFElem(self.ctx, [(a - b) % p for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        p = self.ctx.p
        return FFElem(self.ctx, [(-a) % p for a in self.coords])

    def __mul__(self, other):
        self._check(other)
        return FFElem(self.ctx, self.ctx._mul(self.coords, other.coords))

    def __pow__(self, k):
        ctx = self.ctx
        if k < 0:
            return self.inverse() ** (-k)
        result = ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.ctx.order - 2)


class FieldCtx:
    """F_{p^(e*n)} viewed as an n-dimensional space over F_{p^e}."""

    def __init__(self, p, e, n, modulus, group_order_factors=None):
        self.p = p
        self.e = e
        self.n = n
        self.d = e * n
        self.q = p**e
        self.order = p**self.d
        self.modulus = tuple(int(c) % p for c in modulus)
        self._group_factors = group_order_factors
        self._frob_cache = {}
        self._weights = tuple(p**i for i in range(self.d))
        if p == 2:
            self._mod_mask = sum(c << i for i, c in enumerate(self.modulus))
        else:
            self._red = self._reduction_rows()
        self.zero = FFElem(self, (0,) * self.d)
        self.one = FFElem(self, (1,) + (0,) * (self.d - 1))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, n={self.n})"

    def _reduction_rows(self):
        """Row i holds the coordinates of x^(d+i) mod f, for i < d-1."""
        p, d = self.p, self.d
        rows = np.zeros((max(d - 1, 1), d), dtype=np.int64)
        cur = [(-c) % p for c in self.modulus[:d]]
        rows[0] = cur
        for i in range(1, d - 1):
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(d):
                    cur[j] = (cur[j] + top * rows[0][j]) % p
            rows[i] = cur
        return rows

    def _mul(self, a, b):
        p, d = self.p, self.d
        if d == 1:
            return ((a[0] * b[0]) % p,)
        if p == 2:
            av = sum(bit << i for i, bit in enumerate(a))
            bv = sum(bit << i for i, bit in enumerate(b))
            r = 0
            while bv:
                if bv & 1:
                    r ^= av
                bv >>= 1
                av <<= 1
                if (av >> d) & 1:
                    av ^= self._mod_mask
            return tuple((r >> i) & 1 for i in range(d))
        conv = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        low = conv[:d].copy()
        high = conv[d:]
        if high.size:
            low += high @ self._red[: high.size]
        return tuple(int(c) for c in low % p)

    # -- packed-integer representation (base-p digits), used by tables/tests

    def packed(self, x: FFElem) -> int:
        return sum(c * w for c, w in zip(x.coords, self._weights))

    def from_packed(self, v: int) -> FFElem:
        p = self.p
        coords = []
        for _ in range(self.d):
            coords.append(v % p)
            v //= p
        return FFElem(self, coords)

    # -- linear maps over F_p

    def mul_matrix(self, x: FFElem) -> np.ndarray:
        """The F_p-matrix of y -> x*y in the power basis (columns = x*x^j)."""
        cols = []
        acc = x
        xgen = self.from_packed(self.p) if self.d > 1 else None
        for j in range(self.d):
            cols.append(acc.coords)
            if j + 1 < self.d:
                acc = acc * xgen
        return np.array(cols, dtype=np.int64).T

    def frobenius_matrix(self, k: int) -> np.ndarray:
        """Matrix of x -> x^(p^k) over F_p, cached per k mod d."""
        k %= self.d
        got = self._frob_cache.get(k)
        if got is not None:
            return got
        d, p = self.d, self.p
        if k == 0:
            m = np.eye(d, dtype=np.int64)
        elif 1 not in self._frob_cache:
            if d == 1:
                m = np.eye(1, dtype=np.int64)
            else:
                xp = self.from_packed(p) ** p
                cols = [self.one.coords]
                acc = xp
                for _ in range(d - 1):
                    cols.append(acc.coords)
                    acc = acc * xp
                m = np.array(cols, dtype=np.int64).T
            self._frob_cache[1] = m
            return self.frobenius_matrix(k)
        else:
            base = self._frob_cache[1]
            m = np.eye(d, dtype=np.int64)
            acc, kk = base, k
            while kk:
                if kk & 1:
                    m = (m @ acc) % p
                acc = (acc @ acc) % p
                kk >>= 1
        self._frob_cache[k] = m
        return m

    def apply_matrix(self, m: np.ndarray, x: FFElem) -> FFElem:
        v = (m @ np.asarray(x.coords, dtype=np.int64)) % self.p
        return FFElem(self, (int(c) for c in v))

    # -- group order bookkeeping

    @property
    def group_order_factors(self):
        return self._group_factors

    def ensure_group_factors(self, budget=None) -> IntFactorization:
        if self._group_factors is None or (
            not self._group_factors.complete and budget is not None
        ):
            kwargs = {} if budget is None else {"budget": budget}
            self._group_factors = factor_qn_minus_1(self.q, self.n, **kwargs)
        return self._group_factors

    def find_generator(self) -> FFElem:
        """Least primitive element in packed order."""
        f = self.ensure_group_factors()
        if not f.complete:
            raise ValueError("cannot certify a generator: q^n - 1 not fully factored")
        for v in range(1, self.order):
            x = self.from_packed(v)
            if is_primitive(self, x):
                return x
        raise AssertionError("no generator found (unreachable)")


def make_field(p: int, e: int, n: int, modulus=None) -> FieldCtx:
    """Construct F_{(p^e)^n} over F_p with a verified irreducible modulus.

    Without an explicit modulus, the lexicographically least monic
    irreducible of degree e*n is used (ordering by the coefficient tuple
    (c_{d-1}, ..., c_0)), which pins the representation deterministically.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1 or n < 1:
        raise ValueError("e and n must be positive")
    d = e * n
    if modulus is None:
        modulus = polyfp.lex_least_irreducible(p, d)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {d}")
        if not polyfp.is_irreducible(modulus, p):
            raise ValueError("modulus is reducible")
    return FieldCtx(p, e, n, modulus)


def elem_arith(ctx: FieldCtx, op: str, operands) -> FFElem:
    """Uniform entry point for element arithmetic."""
    if op == "add":
        x, y = operands
        return x + y
    if op == "sub":
        x, y = operands
        return x - y
    if op == "mul":
        x, y = operands
        return x * y
    if op == "inv":
        (x,) = operands
        return x.inverse()
    if op == "pow":
        x, k = operands
        return x ** int(k)
    raise ValueError(f"unknown operation {op!r}")


def frobenius(ctx: FieldCtx, x: FFElem, l: int) -> FFElem:
    """x^(q^l) for a divisor l of n."""
    if l < 1 or ctx.n % l:
        raise ValueError(f"l={l} does not divide n={ctx.n}")
    return ctx.apply_matrix(ctx.frobenius_matrix(ctx.e * l), x)


def is_primitive(ctx: FieldCtx, x: FFElem) -> bool:
    """Order test: x generates the multiplicative group.

    Requires a complete factorization of q^n - 1; x is primitive iff
    x^((q^n-1)/r) != 1 for every prime r dividing q^n - 1.
    """
    f = ctx.ensure_group_factors()
    if not f.complete:
        raise ValueError("primitivity needs the complete factorization of q^n - 1")
    if not x:
        return False
    big = ctx.order - 1
    return all(x ** (big // r) != ctx.one for r in f.primes)


def discrete_log(ctx: FieldCtx, g: FFElem, y: FFElem) -> int:
    """Baby-step giant-step discrete log of y base g, for fields <= 2^24."""
    if ctx.order > DLOG_CAP:
        raise ValueError(f"field size {ctx.order} exceeds the discrete log cap {DLOG_CAP}")
    if not y:
        raise ValueError("zero is outside the multiplicative group")
    group = ctx.order - 1
    m = math.isqrt(group) + 1
    baby = {}
    acc = ctx.one
    for j in range(m):
        baby.setdefault(acc.coords, j)
        acc = acc * g
    stride = (g ** m).inverse()
    cur = y
    for i in range(m + 1):
        j = baby.get(cur.coords)
        if j is not None:
            return (i * m + j) % group
        cur = cur * stride
    raise ValueError("discrete log not found; is g primitive?")
