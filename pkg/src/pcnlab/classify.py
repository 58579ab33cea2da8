"""Completely-basic extensions.

F_{q^n} is completely basic over F_q when every normal element is already
completely normal; such pairs need no search at all.  The criterion is pure
integer arithmetic: for every prime r | n, r must not divide the
multiplicative order of q modulo the p-free part of n/r.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import factor_int, mult_order, p_free_part, prime_power_split

REASONS = (
    "m_divides_q_minus_1",
    "m_equals_1",
    "n_prime_or_prime_square",
    "theorem_criterion",
)


@dataclass(frozen=True)
class PairClass:
    q: int
    n: int
    completely_basic: bool
    reason: str | None  # one of REASONS when completely basic, else None


def _char_of(q: int) -> int:
    split = prime_power_split(q)
    if split is None:
        raise ValueError(f"q = {q} is not a prime power")
    return split[0]


def is_completely_basic(q: int, n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    p = _char_of(q)
    for r in factor_int(n).primes:
        modulus = p_free_part(n // r, p)
        if mult_order(q, modulus) % r == 0:
            return False
    return True


def classify_pair(q: int, n: int) -> PairClass:
    p = _char_of(q)
    m = p_free_part(n, p)
    nf = factor_int(n)
    if m > 1 and (q - 1) % m == 0:
        return PairClass(q, n, True, "m_divides_q_minus_1")
    if m == 1:
        return PairClass(q, n, True, "m_equals_1")
    if len(nf.factors) == 1 and nf.factors[0][1] <= 2:
        return PairClass(q, n, True, "n_prime_or_prime_square")
    if is_completely_basic(q, n):
        return PairClass(q, n, True, "theorem_criterion")
    return PairClass(q, n, False, None)
