"""Complex character machinery on small fields.

This module is a verification harness, not a production path: it realizes
multiplicative and additive characters numerically (double precision, with
explicit tolerances) and checks the identities the counting arguments rest
on: orthogonality, Gauss sum magnitudes, the primitivity characteristic
function omega, the normality characteristic function Omega_l, and the
distribution of additive character orders.

Indexing conventions:
  chi_j(g^k) = mult_root^(j*k)          (g a fixed generator)
  psi_a(x)   = add_root^Tr(a*x)         (Tr = absolute trace to F_p)
  chi_j(0)   = 0 for j != 0, chi_0(0) = 1
Character sums over the multiplicative group run over nonzero x, sums over
the additive group run over the whole field.
"""

from __future__ import annotations

import cmath
import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import factor_int, moebius, euler_phi, radical_info
from .enumeration import FieldTables, build_tables, linearized_matrix, xm1_distinct_factors
from .ffield import FFElem, FieldCtx
from .fqxpoly import (
    cyc_factorization,
    fq_mul,
    moebius_of_divisor,
    phi_of_divisor,
    poly_stats,
)

CHAR_FIELD_CAP = 1 << 12


def _matpow_mod(m: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(m.shape[0], dtype=np.int64)
    base = m % p
    while k:
        if k & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        k >>= 1
    return out


def _trace_vec_of(ctx: FieldCtx) -> np.ndarray:
    """Row vector t with absolute trace Tr(y) = t . coords(y) mod p."""
    d, p = ctx.d, ctx.p
    frob = ctx.frobenius_matrix(1)
    tr_mat = np.eye(d, dtype=np.int64)
    acc = np.eye(d, dtype=np.int64)
    for _ in range(d - 1):
        acc = (frob @ acc) % p
        tr_mat = (tr_mat + acc) % p
    return tr_mat[0] % p


@dataclass
class CharSystem:
    ctx: FieldCtx
    tables: FieldTables
    generator: FFElem
    mult_root: complex
    add_root: complex
    # dlog-ordered absolute traces: tr_exp[k] = Tr(g^k) as an int in [0, p)
    tr_exp: np.ndarray = field(repr=False, default=None)
    # packed-indexed absolute traces
    tr_packed: np.ndarray = field(repr=False, default=None)

    @property
    def N(self) -> int:
        return self.ctx.order - 1


def make_char_system(ctx: FieldCtx) -> CharSystem:
    if ctx.order > CHAR_FIELD_CAP:
        raise ValueError(f"field size {ctx.order} exceeds character cap {CHAR_FIELD_CAP}")
    tables = build_tables(ctx, keep_masks=True)
    N = ctx.order - 1
    d, p = ctx.d, ctx.p
    trace_vec = _trace_vec_of(ctx)
    # traces of all elements, packed-indexed, via the coordinate digits
    digits = np.zeros((ctx.order, d), dtype=np.int64)
    vals = np.arange(ctx.order, dtype=np.int64)
    for j in range(d):
        digits[:, j] = vals % p
        vals //= p
    tr_packed = (digits @ trace_vec) % p
    tr_exp = tr_packed[tables.packed_exp]
    mult_root = cmath.exp(2j * cmath.pi / N) if N > 1 else 1.0 + 0j
    add_root = cmath.exp(2j * cmath.pi / p)
    sys = CharSystem(
        ctx=ctx,
        tables=tables,
        generator=tables.generator,
        mult_root=mult_root,
        add_root=add_root,
        tr_exp=tr_exp,
        tr_packed=tr_packed,
    )
    return sys


def _mult_root_powers(sys: CharSystem) -> np.ndarray:
    N = sys.N
    return np.exp(2j * np.pi * np.arange(N) / N)


def _psi_vals(sys: CharSystem) -> np.ndarray:
    """psi_1(g^k) for k = 0..N-1 (dlog order)."""
    p_roots = np.exp(2j * np.pi * np.arange(sys.ctx.p) / sys.ctx.p)
    return p_roots[sys.tr_exp]


def characters(sys: CharSystem):
    """Callable character families: (chi, psi) with chi(j, x) and psi(a, x)."""
    N = sys.N
    dlog = sys.tables.dlog
    p = sys.ctx.p

    def chi(j: int, x: FFElem) -> complex:
        v = sys.ctx.packed(x)
        if v == 0:
            return 1.0 + 0j if j % N == 0 else 0.0 + 0j
        return sys.mult_root ** ((j * int(dlog[v])) % N)

    def psi(a: FFElem, x: FFElem) -> complex:
        t = int(sys.tr_packed[sys.ctx.packed(a * x)])
        return sys.add_root**t

    return chi, psi


@dataclass
class CheckReport:
    label: str
    max_deviation: float
    tolerance: float
    ok: bool
    details: dict = field(default_factory=dict)


def orthogonality_check(sys: CharSystem) -> list:
    """Sums of nontrivial characters over their groups, both directions."""
    N = sys.N
    Q = sys.ctx.order
    reports = []

    # multiplicative: S_m = sum_k mult_root^(m*k); covers sum_x chi_j(x)
    # (m = j) and sum_chi chi(g^k) (m = k) by the symmetry of j*k.
    roots = _mult_root_powers(sys)
    worst = 0.0
    idx = np.arange(N, dtype=np.int64)
    for lo in range(1, N, 64):
        ms = np.arange(lo, min(lo + 64, N), dtype=np.int64)
        sums = roots[(ms[:, None] * idx[None, :]) % N].sum(axis=1)
        if sums.size:
            worst = max(worst, float(np.max(np.abs(sums))))
    tol = 1e-9 * N
    reports.append(
        CheckReport("multiplicative-orthogonality", worst, tol, worst <= tol, {"group": N})
    )
    s0 = roots[np.zeros(N, dtype=np.int64)].sum()
    reports.append(
        CheckReport("trivial-multiplicative-sum", abs(s0 - N), 1e-9 * N, abs(s0 - N) <= 1e-9 * N)
    )

    # additive: sum_x psi_a(x) over the whole field; for a = g^alpha the
    # summands are a permutation of the a = 1 case, so one honestly computed
    # sum bounds them all; we still evaluate a spread of alphas directly.
    psi1 = _psi_vals(sys)
    base = abs(psi1.sum() + 1.0)
    worst_add = base
    for alpha in range(0, N, max(1, N // 64)):
        s = np.roll(psi1, -alpha).sum() + 1.0
        worst_add = max(worst_add, abs(s))
    tol_add = 1e-9 * Q
    reports.append(
        CheckReport("additive-orthogonality", worst_add, tol_add, worst_add <= tol_add, {"group": Q})
    )

    # dual direction for the additive group: sum over all characters at a
    # fixed x != 0 equals sum over all a of add_root^Tr(a x), a permutation
    # of the full trace table.
    p_roots = np.exp(2j * np.pi * np.arange(sys.ctx.p) / sys.ctx.p)
    s_dual = p_roots[sys.tr_packed].sum()
    reports.append(
        CheckReport("additive-dual-orthogonality", abs(s_dual), tol_add, abs(s_dual) <= tol_add)
    )
    return reports


def gauss_magnitude_check(sys: CharSystem) -> list:
    """|sum_x chi(x) psi(x)| = q^(n/2) for nontrivial chi and psi.

    The magnitude is invariant under the psi index (a shift in dlog space
    multiplies the sum by a root of unity), so the FFT over one psi covers
    every chi at once; a sample of other psi indices is summed directly.
    """
    N = sys.N
    target = sys.ctx.order**0.5
    psi1 = _psi_vals(sys)
    mags = np.abs(np.fft.fft(psi1))
    worst = float(np.max(np.abs(mags[1:] - target))) if N > 1 else 0.0
    tol = 1e-6 * target
    reports = [
        CheckReport("gauss-magnitudes", worst, tol, worst <= tol, {"pairs": (N - 1) ** 2})
    ]

    # direct-summation spot checks at other psi indices
    roots = _mult_root_powers(sys)
    idx = np.arange(N, dtype=np.int64)
    worst_direct = 0.0
    step = max(1, N // 8)
    for alpha in range(0, N, step):
        shifted = np.roll(psi1, -alpha)
        for j in range(1, N, max(1, N // 8)):
            s = (roots[(j * idx) % N] * shifted).sum()
            worst_direct = max(worst_direct, abs(abs(s) - target))
    reports.append(
        CheckReport("gauss-direct-sample", worst_direct, tol, worst_direct <= tol)
    )

    # trivial chi, nontrivial psi: the multiplicative-group sum has magnitude 1
    s = psi1.sum()
    reports.append(
        CheckReport("gauss-trivial-chi", abs(abs(s) - 1.0), 1e-9 * N, abs(abs(s) - 1.0) <= 1e-9 * N)
    )
    return reports


@dataclass
class AdditiveCharOrder:
    a: FFElem
    l: int
    exponents: tuple  # multiplicity of each distinct factor of X^m'-1, in
    # the deterministic factor order used by xm1_distinct_factors
    degree: int
    order_poly: list  # monic divisor of X^(n/l)-1, FFElem coefficients

    @property
    def is_trivial(self) -> bool:
        return all(b == 0 for b in self.exponents)


def _factor_matrices(sys: CharSystem, l: int):
    ctx = sys.ctx
    factors = xm1_distinct_factors(ctx, l)
    shape = cyc_factorization(ctx.q, ctx.p, ctx.n, l)
    mats = [linearized_matrix(ctx, f, l) for f in factors]
    return factors, shape, mats


def _trace_functionals(sys: CharSystem) -> np.ndarray:
    """Row a (packed) holds the functional t_a with Tr(a*y) = t_a . coords(y)."""
    ctx = sys.ctx
    Q, d, N = ctx.order, ctx.d, sys.N
    t_all = np.zeros((Q, d), dtype=np.int64)
    dlog = sys.tables.dlog
    packed_exp = sys.tables.packed_exp
    for i in range(d):
        beta = ctx.from_packed(ctx._weights[i])
        lb = int(dlog[ctx.packed(beta)])
        prod_packed = packed_exp[(dlog[np.arange(1, Q)] + lb) % N]
        t_all[1:, i] = sys.tr_packed[prod_packed]
    return t_all


def additive_order(sys: CharSystem, a: FFElem, l: int) -> AdditiveCharOrder:
    ctx = sys.ctx
    if ctx.n % l != 0:
        raise ValueError("l must divide n")
    factors, shape, mats = _factor_matrices(sys, l)
    p = ctx.p
    d = ctx.d
    # functional of psi_a
    t_a = np.zeros(d, dtype=np.int64)
    if a:
        t_a = (_trace_vec_of(ctx) @ ctx.mul_matrix(a)) % p
    exponents = []
    for i, m_i in enumerate(mats):
        rest = np.eye(d, dtype=np.int64)
        for j, m_j in enumerate(mats):
            if j != i:
                rest = (rest @ _matpow_mod(m_j, shape.multiplicity, p)) % p
        row = (t_a @ rest) % p
        b = 0
        while row.any():
            row = (row @ m_i) % p
            b += 1
        exponents.append(b)
    poly = [ctx.one]
    for f, b in zip(factors, exponents):
        for _ in range(b):
            poly = fq_mul(poly, f, ctx)
    degree = sum(b * (len(f) - 1) for f, b in zip(factors, exponents))
    return AdditiveCharOrder(a=a, l=l, exponents=tuple(exponents), degree=degree, order_poly=poly)


def additive_order_exponents(sys: CharSystem, l: int) -> np.ndarray:
    """Exponent vectors of ord_l(psi_a) for every a at once (packed order).

    Returns an array of shape (Q, num_factors).
    """
    ctx = sys.ctx
    factors, shape, mats = _factor_matrices(sys, l)
    p = ctx.p
    t_all = _trace_functionals(sys)
    Q = ctx.order
    out = np.zeros((Q, len(factors)), dtype=np.int64)
    for i, m_i in enumerate(mats):
        rest = np.eye(ctx.d, dtype=np.int64)
        for j, m_j in enumerate(mats):
            if j != i:
                rest = (rest @ _matpow_mod(m_j, shape.multiplicity, p)) % p
        rows = (t_all @ rest) % p
        alive = rows.any(axis=1)
        b = 0
        while alive.any():
            b += 1
            rows = (rows @ m_i) % p
            still = rows.any(axis=1)
            out[alive & ~still, i] = b
            alive = still
    return out


def additive_order_distribution_check(sys: CharSystem, l: int) -> CheckReport:
    """#{psi : ord_l(psi) = F} == phi_l(F) for every divisor F of X^(n/l)-1."""
    ctx = sys.ctx
    factors, shape, _ = _factor_matrices(sys, l)
    degrees = tuple(len(f) - 1 for f in factors)
    exps = additive_order_exponents(sys, l)
    counts = Counter(map(tuple, exps.tolist()))
    worst = 0
    total_divisors = 0
    for combo in itertools.product(*(range(shape.multiplicity + 1) for _ in factors)):
        expected = phi_of_divisor(ctx.q, l, degrees, combo)
        got = counts.get(combo, 0)
        worst = max(worst, abs(got - expected))
        total_divisors += 1
    ok = worst == 0 and sum(counts.values()) == ctx.order
    return CheckReport(
        f"additive-order-distribution-l{l}",
        float(worst),
        0.0,
        ok,
        {"divisors": total_divisors},
    )


def omega_values(sys: CharSystem) -> tuple:
    """(omega(g^k) for k in dlog order, omega(0)).

    omega(x) = theta(q') sum_{d | q'} mu(d)/phi(d) sum_{ord chi = d} chi(x),
    evaluated for all x at once as an inverse DFT of the per-character
    coefficient vector c_j = theta * mu(ord j)/phi(ord j) [ord j | q'].
    """
    ctx = sys.ctx
    N = sys.N
    ctx.ensure_group_factors()
    rad = radical_info(ctx.group_order_factors)
    qprime = rad.radical
    theta = float(rad.theta)
    coeff = np.zeros(N, dtype=np.complex128)
    js = np.arange(N, dtype=np.int64)
    ords = N // np.gcd(js, N)
    weight_cache: dict = {}
    for j in range(N):
        o = int(ords[j])
        if qprime % o == 0:
            if o not in weight_cache:
                f = factor_int(o)
                mu = moebius(f)
                weight_cache[o] = theta * mu / euler_phi(f) if mu else 0.0
            coeff[j] = weight_cache[o]
    vals = np.fft.ifft(coeff) * N  # sum_j coeff_j * e^(+2 pi i jk/N)
    omega0 = theta  # only chi_0 is nonzero at 0, with coefficient theta * mu(1)/phi(1)
    return vals, omega0


def omega_check(sys: CharSystem) -> CheckReport:
    vals, omega0 = omega_values(sys)
    prim = sys.tables.prim_mask[sys.tables.packed_exp]
    dev = float(np.max(np.abs(vals - prim.astype(np.complex128))))
    ctx = sys.ctx
    rad = radical_info(ctx.group_order_factors)
    dev0 = abs(omega0 - float(rad.theta))
    worst = max(dev, dev0)
    return CheckReport("omega-pointwise", worst, 1e-9, worst <= 1e-9, {"omega0": omega0})


def omega_l_values(sys: CharSystem, l: int) -> tuple:
    """(Omega_l(g^k) for k in dlog order, Omega_l(0)).

    Omega_l(x) = theta_l sum_psi mu_l(ord psi)/phi_l(ord psi) psi(x); the
    nonzero-character part is a circular correlation of the coefficient
    vector (in dlog order) with psi_1 values, done by FFT.
    """
    ctx = sys.ctx
    N = sys.N
    factors, shape, _ = _factor_matrices(sys, l)
    degrees = tuple(len(f) - 1 for f in factors)
    stats = poly_stats(ctx.q, ctx.p, ctx.n, l)
    theta_l = float(stats.theta)
    exps = additive_order_exponents(sys, l)
    weights = np.zeros(ctx.order, dtype=np.float64)

    @lru_cache(maxsize=None)
    def weight_of(combo):
        mu = moebius_of_divisor(combo)
        if mu == 0:
            return 0.0
        return mu / phi_of_divisor(ctx.q, l, degrees, combo)

    for a_packed in range(ctx.order):
        weights[a_packed] = weight_of(tuple(exps[a_packed]))
    # Omega_l(x) for x = g^k: theta_l * (w_0 + sum_alpha w[g^alpha] psi_1(g^(alpha+k)))
    w_dlog = weights[sys.tables.packed_exp]
    psi1 = _psi_vals(sys)
    V = np.fft.fft(psi1)
    W = np.fft.fft(w_dlog)
    corr = np.fft.ifft(V * np.conj(W))  # corr[k] = sum_alpha w[alpha] psi1[alpha+k]
    vals = theta_l * (corr + weights[0])
    omega_l_0 = theta_l * float(weights.sum())  # psi_a(0) = 1 for all a
    return vals, omega_l_0


def omega_l_check(sys: CharSystem, l: int) -> CheckReport:
    vals, at_zero = omega_l_values(sys, l)
    normal = sys.tables.normal_masks[l][sys.tables.packed_exp]
    dev = float(np.max(np.abs(vals - normal.astype(np.complex128))))
    worst = max(dev, abs(at_zero))
    stats = poly_stats(sys.ctx.q, sys.ctx.p, sys.ctx.n, l)
    total = float(vals.sum().real) + at_zero
    sum_dev = abs(total - stats.phi) / stats.phi
    return CheckReport(
        f"omega_l-pointwise-l{l}",
        worst,
        1e-9,
        worst <= 1e-9 and sum_dev <= 1e-6,
        {"sum_relative_deviation": sum_dev},
    )


def cn_identity_check(sys: CharSystem) -> CheckReport:
    """CN count as a constrained character sum.

    CN equals q^n theta(vec q) * sum over tuples (psi_1..psi_k) with trivial
    product of prod_i mu_l(ord)/phi_l(ord), the l_i running over the proper
    divisors of n.  The tuple sum is a k-fold convolution over the additive
    group evaluated at 0, so after a multidimensional DFT over (Z_p)^d it is
    a single pointwise product.
    """
    ctx = sys.ctx
    n, p, d, Q = ctx.n, ctx.p, ctx.d, ctx.order
    proper = [l for l in range(1, n) if n % l == 0]
    if not proper:
        # no proper divisors; CN = nonzero elements by convention
        got = sys.tables.cn_count
        return CheckReport("cn-identity", float(abs(got - (Q - 1))), 0.5, got == Q - 1)
    theta_prod = 1.0
    transforms = []
    for l in proper:
        factors, shape, _ = _factor_matrices(sys, l)
        degrees = tuple(len(f) - 1 for f in factors)
        stats = poly_stats(ctx.q, ctx.p, ctx.n, l)
        theta_prod *= float(stats.theta)
        exps = additive_order_exponents(sys, l)

        @lru_cache(maxsize=None)
        def weight_of(combo, _l=l, _deg=degrees):
            mu = moebius_of_divisor(combo)
            if mu == 0:
                return 0.0
            return mu / phi_of_divisor(ctx.q, _l, _deg, combo)

        w = np.array([weight_of(tuple(e)) for e in exps.tolist()])
        transforms.append(np.fft.fftn(w.reshape((p,) * d)))
        weight_of.cache_clear()
    prod = transforms[0].copy()
    for t in transforms[1:]:
        prod *= t
    tuple_sum = prod.sum().real / Q
    predicted = Q * theta_prod * tuple_sum
    got = sys.tables.cn_count
    dev = abs(predicted - got)
    return CheckReport("cn-identity", dev, 1e-6 * max(got, 1), dev <= 1e-6 * max(got, 1))


def characteristic_function_check(sys: CharSystem) -> list:
    reports = [omega_check(sys)]
    n = sys.ctx.n
    for l in sorted(d for d in range(1, n) if n % d == 0):
        reports.append(omega_l_check(sys, l))
        reports.append(additive_order_distribution_check(sys, l))
    reports.append(cn_identity_check(sys))
    return reports


def run_selftest(ctx: FieldCtx) -> list:
    """Full character battery for one field; every report must be ok."""
    sys = make_char_system(ctx)
    reports = []
    reports.extend(orthogonality_check(sys))
    reports.extend(gauss_magnitude_check(sys))
    reports.extend(characteristic_function_check(sys))
    return reports
