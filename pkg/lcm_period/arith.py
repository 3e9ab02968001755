"""Exact integer primitives: gcd/lcm, p-adic valuation, sieving and e_{p,k}.

Every value is a Python ``int``; numpy is used only to mark composites and its
scalars are converted back before leaving this module.
"""

import math
from functools import lru_cache, reduce

import numpy as np

from .models import FactoredNat, PrimeTable


def gcd(a: int, b: int) -> int:
    """gcd(0, 0) = 0."""
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise ValueError(f"lcm is only defined for positive integers, got ({a}, {b})")

    return a // math.gcd(a, b) * b


def lcm_range(a: int, b: int) -> int:
    """lcm(a, a + 1, ..., b)，逐项折叠 lcm。

    Args:
        a (int): 区间左端，至少为 1
        b (int): 区间右端，不小于 a

    Raises:
        ValueError: 区间非法
    """
    if a < 1 or a > b:
        raise ValueError(f"lcm_range needs 1 <= a <= b, got [{a}, {b}]")

    return reduce(lcm, range(a + 1, b + 1), a)


def vp(p: int, n: int) -> int:
    """Exponent of the prime p in n."""
    if p < 2:
        raise ValueError(f"{p} is not a prime")
    if n == 0:
        raise ValueError("v_p(0) is infinite")

    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1

    return e


def e_pk(p: int, k: int) -> int:
    """最大的 e 使得 p^e <= k，即 max_{1<=i<=k} v_p(i)。

    只用整数乘法比较，不用浮点对数，避免在 p 的整数幂处出现边界误差。
    """
    if p < 2:
        raise ValueError(f"{p} is not a prime")
    if k < 1:
        raise ValueError(f"e_pk needs k >= 1, got {k}")

    e = 0
    power = p
    while power <= k:
        power *= p
        e += 1

    return e


def _prime_flags(bound: int) -> np.ndarray:
    flags = np.ones(bound + 1, dtype=bool)
    flags[: min(2, bound + 1)] = False

    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = False

    return flags


def sieve(bound: int) -> PrimeTable:
    """埃氏筛，返回 [2, bound] 内的全部质数。"""
    if bound < 0:
        raise ValueError(f"sieve bound must be >= 0, got {bound}")

    primes = np.flatnonzero(_prime_flags(bound)).tolist()
    return PrimeTable(bound=bound, primes=tuple(primes))


@lru_cache(maxsize=8)
def _shared_table(bound: int) -> PrimeTable:
    return sieve(bound)


def primes_upto(k: int) -> tuple[int, ...]:
    """Primes <= k, served from a shared table sized to the next power of two."""
    if k < 2:
        return ()

    return _shared_table(1 << (k - 1).bit_length()).upto(k)


def spf_table(bound: int) -> np.ndarray:
    """Smallest prime factor of every integer in [0, bound]; entries 0 and 1 are 0."""
    spf = np.zeros(bound + 1, dtype=np.int64)

    for p in range(2, bound + 1):
        if spf[p] != 0:
            continue
        spf[p] = p
        if p * p > bound:
            # remaining unmarked entries are primes themselves
            rest = np.flatnonzero(spf[p + 1 :] == 0) + p + 1
            spf[rest] = rest
            break
        multiples = spf[p * p :: p]
        multiples[multiples == 0] = p

    return spf


def prime_factors(n: int, spf: np.ndarray) -> dict[int, int]:
    """Factor n (1 <= n < len(spf)) by repeated smallest-prime-factor lookup."""
    if n < 1 or n >= len(spf):
        raise ValueError(f"{n} outside the smallest-prime-factor table")

    factors: dict[int, int] = {}
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        factors[p] = e

    return factors


def factored_lcm_upto(k: int) -> FactoredNat:
    """lcm(1, ..., k) = prod_{p <= k} p^{e_{p,k}}."""
    if k < 1:
        raise ValueError(f"factored_lcm_upto needs k >= 1, got {k}")

    return FactoredNat.from_mapping({p: e_pk(p, k) for p in primes_upto(k)})


def is_prime(n: int) -> bool:
    if n < 2:
        return False

    return n in _shared_table(1 << (n - 1).bit_length())


def divisors(f: FactoredNat) -> list[int]:
    """All divisors of a factored integer, ascending."""
    result = [1]
    for p, e in f.factors:
        result = [d * p**i for d in result for i in range(e + 1)]

    return sorted(result)
