"""Vectorized whole-field enumeration of primitive and (completely) normal
elements.

The literal per-element tests (order test, gcd criterion) are correct but
far too slow to sweep every field up to the enumeration cap.  This engine
computes the same counts through linear algebra:

  * the multiplicative side is a discrete-log table built by repeated
    squaring of the multiply-by-generator matrix, so primitivity becomes a
    gcd condition on exponents;

  * the additive side uses the F_{q^l}[X]-module structure: x fails to be
    normal over F_{q^l} exactly when x lies in the kernel of
    ((X^{n/l}-1)/P)(sigma_l) for some irreducible factor P of X^{m'}-1,
    and those kernels are F_p-subspaces that can be enumerated directly.

Every per-field run re-derives the normal counts independently predicted by
the coset combinatorics (poly_stats) and asserts agreement, so the fast path
cross-checks itself on every invocation.  Tests additionally compare whole
masks against the literal tests on small fields.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from . import fqxpoly
from .arith import euler_phi, factor_int, mult_order
from .ffield import FFElem, FieldCtx, frobenius, make_field
from .fqxpoly import (
    cyc_factorization,
    fq_divmod,
    fq_gcd,
    fq_mul,
    fq_trim,
    poly_stats,
    x_power_minus_one,
)

ENUMERATION_CAP = 1 << 22

_FP_XM1_CACHE: dict = {}
_AUX_FIELD_CACHE: dict = {}
_FACTOR_CACHE: dict = {}


def _aux_field(p: int, D: int):
    key = (p, D)
    got = _AUX_FIELD_CACHE.get(key)
    if got is None:
        ctx = make_field(p, 1, D)
        got = (ctx, ctx.find_generator())
        _AUX_FIELD_CACHE[key] = got
    return got


def fp_xm1_factors(p: int, m: int) -> list:
    """Distinct monic irreducible factors of X^m - 1 over F_p (p not | m),
    as integer coefficient tuples, ascending degree order.

    Each factor is the minimal polynomial of zeta^c over F_p, computed as a
    product over a cyclotomic coset in the splitting field F_{p^D}; the
    coefficients land in the prime field, which is asserted.
    """
    key = (p, m)
    got = _FP_XM1_CACHE.get(key)
    if got is not None:
        return got
    D = mult_order(p, m)
    aux, gen = _aux_field(p, D)
    zeta = gen ** ((p**D - 1) // m)
    factors = []
    for coset in fqxpoly.cyclotomic_cosets(m, p):
        poly = [aux.one]
        for j in coset:
            root = zeta**j
            poly = fqxpoly.fq_mul(poly, [-root, aux.one], aux)
        coeffs = []
        for c in poly:
            if any(c.coords[1:]):
                raise AssertionError("coset product left the prime field")
            coeffs.append(c.coords[0])
        factors.append(tuple(coeffs))
    factors.sort(key=lambda f: (len(f), f))
    _FP_XM1_CACHE[key] = factors
    return factors


def _subfield_sample(ctx: FieldCtx, l: int, rng: random.Random) -> FFElem:
    """A pseudorandom element of F_{q^l}, as a trace of a random element."""
    x = ctx.from_packed(rng.randrange(1, ctx.order))
    acc = ctx.zero
    y = x
    for _ in range(ctx.n // l):
        acc = acc + y
        y = frobenius(ctx, y, l)
    return acc


def _fq_pow_mod(base: list, exp: int, modulus: list, ctx: FieldCtx) -> list:
    result = [ctx.one]
    base = fq_divmod(base, modulus, ctx)[1]
    while exp:
        if exp & 1:
            result = fq_divmod(fq_mul(result, base, ctx), modulus, ctx)[1]
        base = fq_divmod(fq_mul(base, base, ctx), modulus, ctx)[1]
        exp >>= 1
    return result


def _equal_degree_split(ctx: FieldCtx, l: int, u: list, target: int, rng) -> list:
    """Cantor-Zassenhaus: split u (a product of distinct irreducibles of
    degree `target` over F_{q^l}) into those irreducibles, inside ctx."""
    du = len(u) - 1
    if du == target:
        return [u]
    Ql = ctx.q**l
    for _ in range(64):
        h = [_subfield_sample(ctx, l, rng) for _ in range(du)]
        h = fq_trim(h)
        if len(h) <= 1:
            continue
        if ctx.p == 2:
            # absolute trace to F_2 of h in F_{Ql^target}[X]/(u)
            k = (ctx.e * l) * target
            w = fq_divmod(h, u, ctx)[1]
            acc = w
            for _ in range(k - 1):
                w = fq_divmod(fq_mul(w, w, ctx), u, ctx)[1]
                acc = fq_trim([a + b for a, b in zip_pad(acc, w, ctx)])
            g = fq_gcd(acc, u, ctx)
        else:
            w = _fq_pow_mod(h, (Ql**target - 1) // 2, u, ctx)
            w = fq_trim([a - b for a, b in zip_pad(w, [ctx.one], ctx)])
            g = fq_gcd(w, u, ctx)
        if 0 < len(g) - 1 < du:
            rest = fq_divmod(u, g, ctx)[0]
            return _equal_degree_split(ctx, l, g, target, rng) + _equal_degree_split(
                ctx, l, rest, target, rng
            )
    raise AssertionError(f"equal-degree split did not converge for degree {du}")


def zip_pad(f: list, g: list, ctx: FieldCtx):
    n = max(len(f), len(g))
    f = f + [ctx.zero] * (n - len(f))
    g = g + [ctx.zero] * (n - len(g))
    return zip(f, g)


def xm1_distinct_factors(ctx: FieldCtx, l: int) -> list:
    """Distinct monic irreducible factors of X^m' - 1 over F_{q^l}, with
    coefficients as elements of ctx (lying in the subfield F_{q^l}).

    Fast path: when m' divides q^n - 1 the roots of unity live inside ctx
    and each factor is a product over one cyclotomic coset.  Otherwise the
    prime-field factorization is lifted and split to the predicted degrees
    with seeded Cantor-Zassenhaus.
    """
    key = (ctx.p, ctx.e, ctx.n, ctx.modulus, l)
    got = _FACTOR_CACHE.get(key)
    if got is not None:
        return got
    shape = cyc_factorization(ctx.q, ctx.p, ctx.n, l)
    m = shape.m_prime
    Ql = ctx.q**l
    factors = []
    if (ctx.order - 1) % m == 0:
        zeta = ctx.find_generator() ** ((ctx.order - 1) // m)
        for coset in shape.cosets:
            poly = [ctx.one]
            for j in coset:
                poly = fq_mul(poly, [-(zeta**j), ctx.one], ctx)
            factors.append(poly)
    else:
        factors = _split_lifted(ctx, l, m)
    factors.sort(key=lambda f: (len(f), tuple(ctx.packed(c) for c in f)))
    _validate_factors(ctx, l, shape, factors)
    _FACTOR_CACHE[key] = factors
    return factors


def _split_lifted(ctx: FieldCtx, l: int, m: int) -> list:
    """Lift the F_p factors of X^m - 1 and split each to its degrees over
    F_{q^l}.

    A prime-field factor of degree t has roots of multiplicative order m_j
    with ord_{m_j}(p) = t, so over F_{q^l} = F_{p^(e*l)} it splits into
    irreducibles of degree t / gcd(t, e*l), regardless of which coset it
    came from.
    """
    rng = random.Random(str(("xm1-split", ctx.p, ctx.e, ctx.n, l)))
    out = []
    for u_int in fp_xm1_factors(ctx.p, m):
        du = len(u_int) - 1
        target = du // math.gcd(du, ctx.e * l)
        u = [ctx.from_packed(c) for c in u_int]
        if du == target:
            out.append(u)
        else:
            out.extend(_equal_degree_split(ctx, l, u, target, rng))
    return out


def _validate_factors(ctx, l, shape, factors):
    degrees = tuple(sorted(len(f) - 1 for f in factors))
    if degrees != shape.coset_degrees:
        raise AssertionError(
            f"factor degrees {degrees} != coset degrees {shape.coset_degrees} "
            f"for q={ctx.q}, n={ctx.n}, l={l}"
        )
    prod = [ctx.one]
    for f in factors:
        prod = fq_mul(prod, f, ctx)
    if prod != x_power_minus_one(shape.m_prime, ctx):
        raise AssertionError(f"factor product != X^{shape.m_prime}-1 at q={ctx.q}, n={ctx.n}, l={l}")


def linearized_matrix(ctx: FieldCtx, poly: list, l: int) -> np.ndarray:
    """Matrix (over F_p, acting on coordinate columns) of the linearized map
    x -> sum_i c_i x^(q^(l*i)) for poly = [c_0, c_1, ...] with FFElem c_i."""
    d, p = ctx.d, ctx.p
    s_l = ctx.frobenius_matrix(ctx.e * l)
    out = np.zeros((d, d), dtype=np.int64)
    a = np.eye(d, dtype=np.int64)
    for coeff in poly:
        if coeff:
            out = (out + ctx.mul_matrix(coeff) @ a) % p
        a = (s_l @ a) % p
    return out


def _nullspace_mod_p(mat: np.ndarray, p: int) -> list:
    """Basis of the kernel of mat over F_p (rows = equations)."""
    a = mat.astype(np.int64) % p
    rows, cols = a.shape
    pivot_of_col = {}
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivot_of_col[c] = r
        r += 1
        if r == rows:
            break
    basis = []
    free_cols = [c for c in range(cols) if c not in pivot_of_col]
    for fc in free_cols:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for c, pr in pivot_of_col.items():
            v[c] = (-a[pr, fc]) % p
        basis.append(v % p)
    return basis


def _mark_subspace(bad: np.ndarray, basis: list, weights: np.ndarray, p: int):
    """Set bad[packed(v)] = True for every v in the F_p-span of basis."""
    d = weights.size
    if not basis:
        bad[0] = True
        return
    k = len(basis)
    k0 = 0
    block = 1
    while k0 < k and block * p <= 32768:
        block *= p
        k0 += 1
    low = np.zeros((1, d), dtype=np.int64)
    for b in basis[:k0]:
        low = (low[None, :, :] + np.arange(p)[:, None, None] * b).reshape(-1, d) % p
    for combo in itertools.product(range(p), repeat=k - k0):
        shift = np.zeros(d, dtype=np.int64)
        for c, b in zip(combo, basis[k0:]):
            shift += c * b
        packed = ((low + shift) % p) @ weights
        bad[packed] = True


@dataclass
class FieldTables:
    """Whole-field enumeration products for one (q, n)."""

    ctx: FieldCtx
    generator: FFElem
    packed_exp: np.ndarray  # packed value of g^k, k = 0..N-1
    dlog: np.ndarray  # packed value -> exponent, -1 for zero
    prim_mask: np.ndarray  # packed-indexed
    normal_counts: dict  # l -> count of normal elements over F_{q^l}
    normal_masks: dict  # l -> packed-indexed mask (kept when requested)
    cn_mask: np.ndarray  # packed-indexed
    cn_count: int
    pcn_count: int
    num_primitive: int


def build_tables(ctx: FieldCtx, keep_masks: bool = False, cap: int = ENUMERATION_CAP) -> FieldTables:
    Q = ctx.order
    if Q > cap:
        raise ValueError(f"field size {Q} exceeds enumeration cap {cap}")
    N = Q - 1
    p, d = ctx.p, ctx.d
    g = ctx.find_generator()

    dt = np.int8 if p < 128 else np.int16
    exp = np.empty((d, N), dtype=dt)
    exp[:, 0] = ctx.one.coords
    mg = ctx.mul_matrix(g)
    mpow = mg
    size = 1
    while size < N:
        step = min(size, N - size)
        for lo in range(0, step, 1 << 16):
            hi = min(lo + (1 << 16), step)
            block = exp[:, lo:hi].astype(np.int64)
            exp[:, size + lo : size + hi] = (mpow @ block) % p
        size += step
        if size < N:
            mpow = (mpow @ mpow) % p

    weights = np.array(ctx._weights, dtype=np.int64)
    packed = np.empty(N, dtype=np.int64)
    for lo in range(0, N, 1 << 16):
        hi = min(lo + (1 << 16), N)
        packed[lo:hi] = weights @ exp[:, lo:hi].astype(np.int64)

    dlog = np.full(Q, -1, dtype=np.int64)
    dlog[packed] = np.arange(N, dtype=np.int64)
    if int((dlog >= 0).sum()) != N:
        raise AssertionError("exponent table is not a bijection; generator invalid?")

    coprime = np.gcd(np.arange(N, dtype=np.int64), N) == 1
    prim_mask = np.zeros(Q, dtype=bool)
    prim_mask[packed[coprime]] = True
    num_primitive = int(coprime.sum())
    if num_primitive != euler_phi(factor_int(N)):
        raise AssertionError("primitive count disagrees with Euler phi")

    normal_counts = {}
    normal_masks = {}
    cn = np.ones(Q, dtype=bool)
    cn[0] = False
    proper = [l for l in range(1, ctx.n) if ctx.n % l == 0]
    for l in proper:
        factors = xm1_distinct_factors(ctx, l)
        h = x_power_minus_one(ctx.n // l, ctx)
        bad = np.zeros(Q, dtype=bool)
        for fac in factors:
            quot, rem = fq_divmod(h, fac, ctx)
            if rem:
                raise AssertionError("X^(n/l)-1 not divisible by its factor")
            t_mat = linearized_matrix(ctx, quot, l)
            basis = _nullspace_mod_p(t_mat, p)
            expected_dim = d - ctx.e * l * (len(fac) - 1)
            if len(basis) != expected_dim:
                raise AssertionError(
                    f"kernel dimension {len(basis)} != expected {expected_dim} "
                    f"(q={ctx.q}, n={ctx.n}, l={l})"
                )
            _mark_subspace(bad, basis, weights, p)
        count = Q - int(bad.sum())
        expected = poly_stats(ctx.q, ctx.p, ctx.n, l).phi
        if count != expected:
            raise AssertionError(
                f"normal count {count} != phi_l {expected} (q={ctx.q}, n={ctx.n}, l={l})"
            )
        normal_counts[l] = count
        if keep_masks:
            normal_masks[l] = ~bad
        cn &= ~bad
    normal_counts[ctx.n] = N  # normal over F_{q^n} amounts to being nonzero
    if keep_masks:
        mask_n = np.ones(Q, dtype=bool)
        mask_n[0] = False
        normal_masks[ctx.n] = mask_n

    cn_count = int(cn.sum())
    pcn_count = int((cn & prim_mask).sum())
    return FieldTables(
        ctx=ctx,
        generator=g,
        packed_exp=packed,
        dlog=dlog,
        prim_mask=prim_mask,
        normal_counts=normal_counts,
        normal_masks=normal_masks,
        cn_mask=cn,
        cn_count=cn_count,
        pcn_count=pcn_count,
        num_primitive=num_primitive,
    )
