"""Exact period P_k of g_k.

The closed form keeps the full power p^{e_{p,k}} of every prime p <= k except a
bad prime, one with v_p(k + 1) >= e_{p,k}, whose power drops out entirely. At
most one bad prime exists for any k.

The oracle trusts only the older results that g_k is periodic and that
lcm(1, ..., k) is a period; it never calls the closed form.
"""

import math
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from loguru import logger

from .arith import (
    divisors,
    e_pk,
    factored_lcm_upto,
    is_prime,
    lcm_range,
    primes_upto,
    vp,
)
from .gfun import g_direct, g_p
from .global_vars import GLOBAL_VARS
from .models import FactoredNat, PeriodMethod, PeriodResult
from .utils import INT64_ENTRY_BYTES, OBJECT_ENTRY_BYTES, table_fits_in_memory


class OracleGuardError(RuntimeError):
    """The oracle table would be too large to build."""


class BadPrimeInvariantError(RuntimeError):
    """Two bad primes for the same k. Never expected."""


class PeriodAssumptionError(RuntimeError):
    """lcm(1, ..., k) failed to be a period of the tabulated function."""


def is_bad_prime(k: int, p: int) -> bool:
    return vp(p, k + 1) >= e_pk(p, k)


def period_p_exponent(k: int, p: int) -> int:
    """v_p(P_k)：坏质数为 0，否则为 e_{p,k}。

    Raises:
        ValueError: p 不是质数或 p > k
    """
    if p > k:
        raise ValueError(f"period_p_exponent needs p <= k, got p={p}, k={k}")
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")

    return 0 if is_bad_prime(k, p) else e_pk(p, k)


def _bad_primes(k: int) -> list[int]:
    found = [p for p in primes_upto(k) if is_bad_prime(k, p)]

    if len(found) > 1:
        raise BadPrimeInvariantError(f"k={k} has several bad primes: {found}")

    return found


def bad_prime(k: int) -> Optional[int]:
    """扫描全部 p <= k，发现第二个坏质数时直接报错而不是返回第一个。"""
    if k < 2:
        raise ValueError(f"bad_prime needs k >= 2, got {k}")

    found = _bad_primes(k)
    return found[0] if found else None


def exact_period(k: int) -> PeriodResult:
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")

    if k <= 1:
        # g_0 and g_1 are constant
        return PeriodResult(
            k=k,
            period_factored=FactoredNat(),
            period=1,
            lcm_upto_k_factored=FactoredNat(),
            method=PeriodMethod.closed_form,
        )

    lcm_factored = factored_lcm_upto(k)
    found = _bad_primes(k)
    period_factored = lcm_factored.without(found[0]) if found else lcm_factored

    return PeriodResult(
        k=k,
        period_factored=period_factored,
        period=period_factored.expand(),
        bad_prime=found[0] if found else None,
        lcm_upto_k_factored=lcm_factored,
        method=PeriodMethod.closed_form,
    )


def hong_yang_bounds(k: int) -> tuple[int, int]:
    """(lcm(1, ..., k + 1) / (k + 1), lcm(1, ..., k))，前者整除后者。"""
    if k < 1:
        raise ValueError(f"hong_yang_bounds needs k >= 1, got {k}")

    return lcm_range(1, k + 1) // (k + 1), lcm_range(1, k)


def hong_yang_bounds_factored(k: int) -> tuple[FactoredNat, FactoredNat]:
    if k < 1:
        raise ValueError(f"hong_yang_bounds needs k >= 1, got {k}")

    lower = FactoredNat.from_mapping(
        {p: e_pk(p, k + 1) - vp(p, k + 1) for p in primes_upto(k + 1)}
    )
    return lower, factored_lcm_upto(k)


def t7_identity_check(k: int, P: int) -> bool:
    """P = lcm(1, ..., k + 1) / (k + 1) * gcd(P + k + 1, lcm(P + 1, ..., P + k))."""
    if k < 1 or P < 1:
        raise ValueError(f"need k >= 1 and P >= 1, got k={k}, P={P}")

    lower = lcm_range(1, k + 1) // (k + 1)
    return P == lower * math.gcd(P + k + 1, lcm_range(P + 1, P + k))


def lcm_absorption_check(k: int, P: int) -> bool:
    """lcm(P, P + 1, ..., P + k) = lcm(P + 1, ..., P + k)."""
    if k < 1 or P < 1:
        raise ValueError(f"need k >= 1 and P >= 1, got k={k}, P={P}")

    window_lcm = lcm_range(P + 1, P + k)
    return math.lcm(P, window_lcm) == window_lcm


def g_one_quotient(k: int) -> int:
    """k! / g_k(1)，应等于 lcm(1, ..., k + 1) / (k + 1)。"""
    return math.factorial(k) // g_direct(1, k)


def _guard_oracle_k(k: int, allow_large: bool):
    if k > GLOBAL_VARS["oracle_max_k"] and not allow_large:
        raise OracleGuardError(
            f"oracle refuses k={k} > {GLOBAL_VARS['oracle_max_k']}; "
            "pass --allow-large-oracle to override"
        )


def _guard_oracle_memory(entries: int, entry_bytes: int):
    if not table_fits_in_memory(entries, entry_bytes):
        raise OracleGuardError(f"oracle table of {entries} entries does not fit in memory")


def _table_dtype(k: int) -> type:
    # g_k(n) divides k!, and 20! < 2^63 < 21!
    return np.int64 if k <= 20 else object


def _entry_bytes(dtype) -> int:
    # object tables hold a pointer plus a boxed int per entry
    return INT64_ENTRY_BYTES if dtype is np.int64 else OBJECT_ENTRY_BYTES


def _tabulate(fn: Callable[[int], int], count: int, dtype) -> np.ndarray:
    return np.fromiter((fn(n) for n in range(1, count + 1)), dtype=dtype, count=count)


def _shift_matches(head: np.ndarray, d: int) -> bool:
    # d divides len(head), so the unwrapped comparison also covers the wrap
    return bool(np.array_equal(head[: len(head) - d], head[d:]))


def minimal_period(table: np.ndarray, known_period: FactoredNat) -> int:
    """最小周期：在 known_period 的因数中从小到大找第一个使整张表平移后不变的 d。

    Note:
        table 至少覆盖一个完整周期 [1, L]；L 为周期，故按 d 循环平移比较即可。
    """
    length = known_period.expand()
    head = np.asarray(table)[:length]

    for d in divisors(known_period):
        if _shift_matches(head, d):
            return d

    # unreachable: d = length always matches
    return length


def _period_table(
    fn: Callable[[int], int], lcm_factored: FactoredNat, multiplier: int, dtype=np.int64
) -> np.ndarray:
    length = lcm_factored.expand()
    table = _tabulate(fn, multiplier * length, dtype)

    if multiplier >= 2:
        # re-check that L itself is a period instead of trusting it
        rows = table.reshape(multiplier, length)
        mismatch = np.argwhere(rows[1:] != rows[0])
        if len(mismatch):
            row, i = (int(x) for x in mismatch[0])
            raise PeriodAssumptionError(
                f"value at n={(row + 1) * length + i + 1} differs from n={i + 1}, L={length}"
            )

    return table


@lru_cache(maxsize=64)
def _oracle_period(k: int, window_multiplier: int) -> PeriodResult:
    lcm_factored = factored_lcm_upto(k) if k >= 1 else FactoredNat()
    length = lcm_factored.expand()
    logger.debug(f"Oracle for k={k}: tabulating {window_multiplier * length} values")

    dtype = _table_dtype(k)
    table = _period_table(lambda n: g_direct(n, k), lcm_factored, window_multiplier, dtype)
    d = minimal_period(table, lcm_factored)
    period_factored = FactoredNat.from_mapping({p: vp(p, d) for p, _ in lcm_factored.factors})

    # report a bad prime only when the measured period has the dichotomy shape
    short = [p for p, e in lcm_factored.factors if period_factored.exponent(p) < e]
    found = None
    if len(short) == 1 and period_factored.exponent(short[0]) == 0:
        found = short[0]

    logger.debug(f"Oracle for k={k}: period {d}")

    return PeriodResult(
        k=k,
        period_factored=period_factored,
        period=d,
        bad_prime=found,
        lcm_upto_k_factored=lcm_factored,
        method=PeriodMethod.oracle,
    )


def oracle_period(k: int, window_multiplier: int = 1, allow_large: bool = False) -> PeriodResult:
    """Brute-force P_k: tabulate g_k on [1, window_multiplier * L], L = lcm(1, ..., k),
    then return the smallest divisor d of L with g_k(n) = g_k(n + d) on [1, L].

    Raises:
        OracleGuardError: k above the configured limit, or table too large
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if window_multiplier < 1:
        raise ValueError(f"window_multiplier must be >= 1, got {window_multiplier}")

    _guard_oracle_k(k, allow_large)

    entries = window_multiplier * (lcm_range(1, k) if k >= 1 else 1)
    _guard_oracle_memory(entries, _entry_bytes(_table_dtype(k)))

    return _oracle_period(k, window_multiplier)


def oracle_prime_period(k: int, p: int, allow_large: bool = False) -> int:
    """Minimal period of n -> v_p(g_k(n)), measured over one window of length lcm(1, ..., k)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if p > k:
        raise ValueError(f"oracle_prime_period needs p <= k, got p={p}, k={k}")
    if not is_prime(p):
        raise ValueError(f"{p} is not a prime")

    _guard_oracle_k(k, allow_large)

    lcm_factored = factored_lcm_upto(k)
    _guard_oracle_memory(lcm_factored.expand(), INT64_ENTRY_BYTES)

    table = _period_table(lambda n: g_p(n, k, p), lcm_factored, 1)
    return minimal_period(table, lcm_factored)


def period_from_prime_periods(k: int, allow_large: bool = False) -> int:
    """P_k as the product of the per-prime periods, which are pairwise coprime."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    return math.prod(oracle_prime_period(k, p, allow_large) for p in primes_upto(k))
