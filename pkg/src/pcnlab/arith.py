"""Exact integer arithmetic: factoring, multiplicative functions, orders.

Factorizations never guess.  Every factor list carries a completeness flag,
the primes found by probabilistic testing above the deterministic range are
annotated, and an unfactored cofactor is recorded rather than silently
dropped.  Quantities derived from a factorization (radical, theta, Euler phi,
multiplicative order) demand completeness and raise otherwise.

The module also evaluates two analytic objects used by the inequality
checkers: Robin's bound on sigma(n)/n and the constants c_{r,a} that trade
the divisor-count 2^omega(r) for a small power of r.  Both are returned as
outward-rounded enclosures, never floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .intervals import DEFAULT_PRECISION, RealEnclosure, euler_gamma

SMALL_PRIME_LIMIT = 1_000_000
DEFAULT_RHO_BUDGET = 10_000_000

# Deterministic Miller-Rabin with the first twelve prime bases is a proven
# primality test below this bound (Sorenson-Webster).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=None)
def primes_upto(limit: int) -> tuple:
    """All primes <= limit, by sieve of Eratosthenes."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


@lru_cache(maxsize=1)
def _small_primes() -> tuple:
    return primes_upto(SMALL_PRIME_LIMIT)


def _mr_witness(n: int, a: int) -> bool:
    """True if a witnesses compositeness of odd n > 2."""
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_prp(n: int) -> bool:
    """Strong Lucas probable prime test, Selfridge parameter choice."""
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0:
            return n == abs(d)
        d = -(d + 2) if d > 0 else -(d - 2)
    q = (1 - d) // 4
    # n + 1 = s * 2^r with s odd
    s = n + 1
    r = 0
    while s % 2 == 0:
        s //= 2
        r += 1
    # Lucas sequences U_s, V_s with P = 1, Q = q, by binary ladder.
    u, v, qk = 1, 1, q
    inv2 = (n + 1) // 2
    for bit in bin(s)[3:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (u + v) * inv2 % n, (v + d * u) * inv2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(r - 1):
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def primality(n: int) -> str:
    """Classify n as 'composite', 'prime', or 'probable_prime'.

    'prime' is only returned when the verdict is deterministic: either n is
    within the sieve range, or n is below the proven Miller-Rabin bound.
    Above that bound a BPSW pass (no known counterexample) yields
    'probable_prime'.
    """
    if n < 2:
        return "composite"
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == p:
            return "prime"
        if n % p == 0:
            return "composite"
    if any(_mr_witness(n, a) for a in _MR_BASES):
        return "composite"
    if n < _MR_DETERMINISTIC_BOUND:
        return "prime"
    # past the deterministic range: base-2 MR passed, add a strong Lucas pass
    return "probable_prime" if _strong_lucas_prp(n) else "composite"


def is_prime(n: int) -> bool:
    """True for 'prime' and 'probable_prime' verdicts."""
    return primality(n) != "composite"


@dataclass(frozen=True)
class IntFactorization:
    """value = cofactor * prod(p^a for p, a in factors).

    factors is sorted by prime.  complete means cofactor == 1.  Primes whose
    primality rests on BPSW rather than a deterministic test are listed in
    probable_primes.
    """

    value: int
    factors: tuple
    complete: bool
    cofactor: int = 1
    probable_primes: tuple = ()

    def __post_init__(self):
        prod = self.cofactor
        last = 0
        for p, a in self.factors:
            if p <= last:
                raise ValueError("factors must be sorted by prime, without repeats")
            if a < 1:
                raise ValueError("exponents must be positive")
            last = p
            prod *= p**a
        if prod != self.value:
            raise ValueError(f"factor product {prod} != value {self.value}")
        if self.complete != (self.cofactor == 1):
            raise ValueError("complete flag inconsistent with cofactor")

    @property
    def primes(self) -> tuple:
        return tuple(p for p, _ in self.factors)

    def exponent_of(self, p: int) -> int:
        for q, a in self.factors:
            if q == p:
                return a
        return 0

    def as_dict(self) -> dict:
        return dict(self.factors)


def _brent_rho(n: int, budget: int, seed: int) -> tuple:
    """Brent's cycle variant of Pollard rho with batched gcds.

    Returns (factor_or_None, iterations_used).  A returned factor is a
    nontrivial divisor of n; None means the budget ran out.
    """
    used = 0
    c = seed
    while used < budget:
        c += 1
        y, m = 2, 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k, budget - used)
                if steps <= 0:
                    break
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                used += steps
                g = math.gcd(q, n)
                k += steps
            r *= 2
        if g == n:
            # batched gcd overshot; replay one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g, used
        # cycle found only the trivial divisor; retry with the next constant
    return None, used


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2 or k == 1:
        return n
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def factor_int(n: int, budget: int = DEFAULT_RHO_BUDGET) -> IntFactorization:
    """Factor a positive integer within an effort budget.

    Trial division by all primes below 10^6 first, then perfect-power
    detection and Brent rho on what remains, spending at most `budget`
    rho iterations per run.  Whatever resists is reported as an explicit
    cofactor with complete=False.
    """
    if n < 1:
        raise ValueError("factor_int expects a positive integer")
    value = n
    found = {}
    probable = set()

    def record(p, a):
        found[p] = found.get(p, 0) + a
        if primality(p) == "probable_prime":
            probable.add(p)

    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            record(p, a)
    if n > 1 and n < SMALL_PRIME_LIMIT**2:
        # no prime below the sieve limit divides n, so n is prime
        record(n, 1)
        n = 1

    remaining = budget
    stack = [n] if n > 1 else []
    cofactor = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        verdict = primality(m)
        if verdict != "composite":
            record(m, 1)
            continue
        handled = False
        for k in range(2, m.bit_length() + 1):
            r = _iroot(m, k)
            if r > 1 and r**k == m:
                stack.extend([r] * k)
                handled = True
                break
        if handled:
            continue
        d, used = _brent_rho(m, remaining, seed=0)
        remaining -= used
        if d is None:
            cofactor *= m
        else:
            stack.append(d)
            stack.append(m // d)

    factors = tuple(sorted(found.items()))
    return IntFactorization(
        value=value,
        factors=factors,
        complete=(cofactor == 1),
        cofactor=cofactor,
        probable_primes=tuple(sorted(probable)),
    )


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> tuple:
    """Coefficients of the d-th cyclotomic polynomial, ascending, exact."""
    if d < 1:
        raise ValueError("index must be positive")
    if d == 1:
        return (-1, 1)
    # divide x^d - 1 by the product of lower-index cyclotomics
    num = [0] * (d + 1)
    num[0], num[d] = -1, 1
    for e in range(1, d):
        if d % e == 0:
            den = cyclotomic_poly(e)
            # exact synthetic division, highest degree first
            out = [0] * (len(num) - len(den) + 1)
            work = list(num)
            for i in range(len(out) - 1, -1, -1):
                c = work[i + len(den) - 1]
                out[i] = c
                if c:
                    for j, dj in enumerate(den):
                        work[i + j] -= c * dj
            if any(work[: len(den) - 1]):
                raise AssertionError("cyclotomic division left a remainder")
            num = out
    return tuple(num)


def cyclotomic_value(d: int, x: int) -> int:
    """Phi_d(x) for integer x, by Horner evaluation of the exact polynomial."""
    acc = 0
    for c in reversed(cyclotomic_poly(d)):
        acc = acc * x + c
    return acc


_CYC_FACTOR_CACHE: dict = {}


def prime_power_split(q: int):
    """(p, e) with q = p^e and p prime, or None when q is not a prime power."""
    if q < 2:
        return None
    for k in range(q.bit_length() - 1, 0, -1):
        r = _iroot(q, k)
        if r**k == q and is_prime(r):
            return r, k
    return None


def divisors_of(n: int) -> tuple:
    """Sorted divisors of n (factorization must succeed completely)."""
    f = factor_int(n)
    if not f.complete:
        raise ValueError(f"cannot enumerate divisors of {n}: factorization incomplete")
    divs = [1]
    for p, a in f.factors:
        divs = [d * p**i for d in divs for i in range(a + 1)]
    return tuple(sorted(divs))


def factor_qn_minus_1(q: int, n: int, budget: int = DEFAULT_RHO_BUDGET) -> IntFactorization:
    """Factor q^n - 1 through its cyclotomic pieces.

    With q = p^e, the identity q^n - 1 = prod over d | e*n of Phi_d(p)
    pre-splits the target into far smaller integers, each of which is
    factored independently and cached per (p, d) across calls.
    """
    split = prime_power_split(q)
    if split is None:
        raise ValueError(f"{q} is not a prime power")
    p, e = split
    if n < 1:
        raise ValueError("n must be positive")
    value = q**n - 1
    merged: dict = {}
    probable = set()
    cofactor = 1
    for d in divisors_of(e * n):
        key = (p, d)
        piece = _CYC_FACTOR_CACHE.get(key)
        if piece is None or (not piece.complete and budget > 0):
            piece = factor_int(cyclotomic_value(d, p), budget)
            _CYC_FACTOR_CACHE[key] = piece
        for r, a in piece.factors:
            merged[r] = merged.get(r, 0) + a
        probable.update(piece.probable_primes)
        cofactor *= piece.cofactor
    result = IntFactorization(
        value=value,
        factors=tuple(sorted(merged.items())),
        complete=(cofactor == 1),
        cofactor=cofactor,
        probable_primes=tuple(sorted(probable)),
    )
    return result


@dataclass(frozen=True)
class RadicalInfo:
    """Square-free kernel of an integer together with its divisor data.

    radical: product of the distinct primes
    num_primes: how many there are
    num_divisors: 2^num_primes, the number of square-free divisors
    theta: prod (1 - 1/p) over the distinct primes, exact
    """

    radical: int
    num_primes: int
    num_divisors: int
    theta: Fraction


def radical_info(f: IntFactorization) -> RadicalInfo:
    if not f.complete:
        raise ValueError("radical of an incomplete factorization is not certified")
    rad = 1
    theta = Fraction(1)
    for p, _ in f.factors:
        rad *= p
        theta *= Fraction(p - 1, p)
    s = len(f.factors)
    return RadicalInfo(radical=rad, num_primes=s, num_divisors=1 << s, theta=theta)


def euler_phi(f: IntFactorization) -> int:
    if not f.complete:
        raise ValueError("euler phi needs a complete factorization")
    out = 1
    for p, a in f.factors:
        out *= (p - 1) * p ** (a - 1)
    return out


def moebius(f: IntFactorization) -> int:
    if not f.complete:
        raise ValueError("moebius needs a complete factorization")
    if any(a > 1 for _, a in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def sigma_t(n: int) -> int:
    """Sum of divisors of n."""
    f = factor_int(n)
    if not f.complete:
        raise ValueError(f"sigma({n}) needs a complete factorization")
    out = 1
    for p, a in f.factors:
        out *= (p ** (a + 1) - 1) // (p - 1)
    return out


def num_divisors(n: int) -> int:
    f = factor_int(n)
    if not f.complete:
        raise ValueError(f"tau({n}) needs a complete factorization")
    out = 1
    for _, a in f.factors:
        out *= a + 1
    return out


def mult_order(q: int, m: int) -> int:
    """Multiplicative order of q modulo m, for gcd(q, m) = 1.

    The group order phi(m) is factored and the exponent is descended prime
    by prime, so the result is exact without scanning.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return 1
    if math.gcd(q, m) != 1:
        raise ValueError(f"{q} is not invertible modulo {m}")
    e = euler_phi(factor_int(m))
    for p, _ in factor_int(e).factors:
        while e % p == 0 and pow(q, e // p, m) == 1:
            e //= p
    return e


def p_free_part(n: int, p: int) -> int:
    """n with every factor of p removed."""
    if n < 1 or p < 2:
        raise ValueError("need n >= 1 and p >= 2")
    while n % p == 0:
        n //= p
    return n


def robin_upper(n: int, precision_bits: int = DEFAULT_PRECISION) -> RealEnclosure:
    """Enclosure of n * (e^gamma log log n + 0.6483 / log log n).

    Defined for n >= 3 (log log n must be positive); an upper bound for
    sigma(n) valid for all n >= 3.
    """
    if n < 3:
        raise ValueError("the bound needs n >= 3")
    ll = RealEnclosure(n, precision_bits).log().log()
    gamma_exp = euler_gamma(precision_bits).exp()
    return (gamma_exp * ll + Fraction(6483, 10000) / ll) * n


def small_prime_divisors(q: int, n: int, bound: int) -> tuple:
    """Primes r <= bound dividing q^n - 1, via q^n mod r."""
    out = []
    for r in primes_upto(bound):
        if q % r and pow(q, n, r) == 1:
            out.append(r)
    return tuple(out)


def c_constant(primes: tuple, a: int, precision_bits: int = DEFAULT_PRECISION) -> RealEnclosure:
    """The constant 2^s / (p_1 ... p_s)^(1/a) for the given prime list.

    With primes = the divisors of r that are at most 2^a, this constant
    satisfies 2^omega(r) <= c * r^(1/a) for every square-free r with that
    small-prime profile.  An empty list gives exactly 1.
    """
    if a < 1:
        raise ValueError("a must be positive")
    s = len(primes)
    prod = 1
    for p in primes:
        if p > (1 << a):
            raise ValueError(f"prime {p} exceeds 2^{a}")
        prod *= p
    num = RealEnclosure(1 << s, precision_bits)
    return num / RealEnclosure(prod, precision_bits).pow_fraction(Fraction(1, a))


def sup_c_constant(a: int, odd_only: bool = False, precision_bits: int = DEFAULT_PRECISION):
    """Maximize c over admissible prime subsets: (primes, enclosure).

    The maximum of 2^s / (p_1...p_s)^(1/a) over subsets of the primes
    <= 2^a is attained by taking every prime p with 2 > p^(1/a), i.e.
    p < 2^a, in increasing order while the factor 2/p^(1/a) exceeds 1.
    Including a prime multiplies c by 2/p^(1/a), which is > 1 exactly when
    p < 2^a; since all primes here satisfy p <= 2^a, all are included
    except p = 2^a itself (only possible for p = 2, a = 1).
    """
    chosen = []
    for p in primes_upto(1 << a):
        if odd_only and p == 2:
            continue
        if p < (1 << a):
            chosen.append(p)
    chosen = tuple(chosen)
    return chosen, c_constant(chosen, a, precision_bits)


def c_bound_holds(r_factors: tuple, a: int) -> bool:
    """Exact check of 2^omega(r) <= c_{r,a} * r^(1/a) for square-free r.

    Raising both sides to the a-th power clears the roots:
        (2^t)^a * P_small <= r        with t = number of primes > 2^a,
    where P_small is the product of the primes <= 2^a dividing r.  All
    quantities are integers, so the comparison is exact.
    """
    bound = 1 << a
    p_small = 1
    t = 0
    r = 1
    for p in r_factors:
        r *= p
        if p <= bound:
            p_small *= p
        else:
            t += 1
    return (1 << (t * a)) * p_small <= r
