"""Checks of every verifiable statement about g_k and P_k.

Checks that need the true P_k take it from ``oracle_period`` so the closed form is
never assumed while it is under test. Checks over k too large for the oracle use
``exact_period`` and mark their report ``conditional``.
"""

import math
from typing import Iterable, Optional

from loguru import logger

from ..arith import (
    e_pk,
    factored_lcm_upto,
    lcm_range,
    prime_factors,
    primes_upto,
    sieve,
    spf_table,
    vp,
)
from ..gfun import g_direct, g_rec_row, g_via_primes
from ..global_vars import GLOBAL_VARS
from ..models import CheckReport, StatementId
from ..period import (
    exact_period,
    hong_yang_bounds_factored,
    lcm_absorption_check,
    oracle_period,
    oracle_prime_period,
    t7_identity_check,
)
from ..utils import stopwatch


class CheckGuardError(RuntimeError):
    """Check parameters beyond what the check is allowed to scan."""


def _guard(name: str, value: int, limit: int):
    if value > limit:
        raise CheckGuardError(f"{name}={value} exceeds the limit {limit}")


class Findings:
    """一次检查中收集到的反例，最多保留 counterexample_cap 个（至少一个）。"""

    def __init__(self, statement_id: StatementId, params: dict[str, tuple[int, int]]):
        self.statement_id = statement_id
        self.params = params
        self.counterexamples: list[tuple[int, ...]] = []
        self.failures = 0
        self.first_error: Optional[str] = None

    def add(self, *params: int):
        self.failures += 1
        # passed is derived from this list, so it never stays empty after a failure
        if len(self.counterexamples) < max(GLOBAL_VARS["counterexample_cap"], 1):
            self.counterexamples.append(tuple(params))

    def error(self, params: tuple[int, ...], exc: Exception):
        logger.warning(f"{self.statement_id.value} raised at {params}: {exc!r}")
        self.add(*params)
        if self.first_error is None:
            self.first_error = f"{params}: {exc!r}"

    def report(self, elapsed: float, conditional: bool = False, note: Optional[str] = None) -> CheckReport:
        notes = [x for x in (note, self.first_error) if x]
        if self.failures > len(self.counterexamples):
            notes.append(f"{self.failures} failures, first {len(self.counterexamples)} kept")

        logger.debug(
            f"{self.statement_id.value}: {'passed' if not self.failures else 'FAILED'} in {elapsed:.3f}s"
        )

        return CheckReport(
            statement_id=self.statement_id,
            params=self.params,
            passed=not self.counterexamples,
            counterexamples=sorted(self.counterexamples),
            elapsed=elapsed,
            conditional=conditional,
            note="; ".join(notes) or None,
        )


def check_recursion_consistency(k_max: int, n_max: int) -> CheckReport:
    """g_direct = g_rec = g_via_primes on the grid, each dividing k!."""
    _guard("k_max", k_max, 12)
    _guard("n_max", n_max, 10**5)

    findings = Findings(StatementId.recursion_consistency, {"k": (0, k_max), "n": (1, n_max)})
    factorials = [math.factorial(k) for k in range(k_max + 1)]

    with stopwatch() as watch:
        for n in range(1, n_max + 1):
            row = g_rec_row(n, k_max)
            for k in range(k_max + 1):
                try:
                    direct, by_primes = g_direct(n, k), g_via_primes(n, k)
                except Exception as e:
                    findings.error((n, k), e)
                    continue

                if not (direct == row[k] == by_primes) or factorials[k] % direct:
                    findings.add(n, k, direct, row[k], by_primes)

    return findings.report(watch.elapsed)


def check_g0_factorial(k_max: int) -> CheckReport:
    """g_k(0) = k!"""
    _guard("k_max", k_max, 30)

    findings = Findings(StatementId.g0_factorial, {"k": (0, k_max)})
    with stopwatch() as watch:
        for k, value in enumerate(g_rec_row(0, k_max)):
            if value != math.factorial(k):
                findings.add(k, value)

    return findings.report(watch.elapsed)


def _check_over_exact_period(statement_id: StatementId, k_max: int, predicate) -> CheckReport:
    findings = Findings(statement_id, {"k": (1, k_max)})

    with stopwatch() as watch:
        for k in range(1, k_max + 1):
            try:
                period = exact_period(k).period
                if not predicate(k, period):
                    findings.add(k, period)
            except Exception as e:
                findings.error((k,), e)

    return findings.report(watch.elapsed, conditional=True)


def check_t7_fixed_point(k_max: int) -> CheckReport:
    """P_k = lcm(1, ..., k + 1) / (k + 1) * gcd(P_k + k + 1, lcm(P_k + 1, ..., P_k + k))"""
    _guard("k_max", k_max, 1000)
    return _check_over_exact_period(StatementId.t7_fixed_point, k_max, t7_identity_check)


def check_lcm_absorption(k_max: int) -> CheckReport:
    """lcm(P_k, ..., P_k + k) = lcm(P_k + 1, ..., P_k + k)"""
    _guard("k_max", k_max, 1000)
    return _check_over_exact_period(StatementId.lcm_absorption, k_max, lcm_absorption_check)


def _check_sandwich_side(statement_id: StatementId, k_max: int) -> CheckReport:
    _guard("k_max", k_max, 10**4)

    findings = Findings(statement_id, {"k": (1, k_max)})
    with stopwatch() as watch:
        for k in range(1, k_max + 1):
            try:
                lower, upper = hong_yang_bounds_factored(k)
                period = exact_period(k).period_factored

                if statement_id is StatementId.hy_divides:
                    holds = period.divides(upper)
                else:
                    holds = lower.divides(period)
            except Exception as e:
                findings.error((k,), e)
                continue

            if not holds:
                findings.add(k)

    return findings.report(watch.elapsed, conditional=True)


def check_hy_divides(k_max: int) -> CheckReport:
    """P_k | lcm(1, ..., k)"""
    return _check_sandwich_side(StatementId.hy_divides, k_max)


def check_hy_multiple(k_max: int) -> CheckReport:
    """lcm(1, ..., k + 1) / (k + 1) | P_k"""
    return _check_sandwich_side(StatementId.hy_multiple, k_max)


def check_sandwich(k_max: int) -> tuple[CheckReport, CheckReport]:
    return check_hy_divides(k_max), check_hy_multiple(k_max)


def _check_valuations_against_oracle(statement_id: StatementId, k_max: int, bad_side: bool) -> CheckReport:
    _guard("k_max", k_max, 14)

    findings = Findings(statement_id, {"k": (2, k_max)})
    with stopwatch() as watch:
        for k in range(2, k_max + 1):
            try:
                period = oracle_period(k).period
            except Exception as e:
                findings.error((k,), e)
                continue

            for p in primes_upto(k):
                if (vp(p, k + 1) >= e_pk(p, k)) != bad_side:
                    continue

                expected = 0 if bad_side else e_pk(p, k)
                if vp(p, period) != expected:
                    findings.add(k, p, vp(p, period), expected)

    return findings.report(watch.elapsed)


def check_valuation_theorem(k_max: int) -> CheckReport:
    """v_p(k + 1) < e_{p,k}  =>  v_p(P_k) = e_{p,k}"""
    return _check_valuations_against_oracle(StatementId.valuation_theorem, k_max, bad_side=False)


def check_vanishing_lemma(k_max: int) -> CheckReport:
    """v_p(k + 1) >= e_{p,k}  =>  v_p(P_k) = 0"""
    return _check_valuations_against_oracle(StatementId.vanishing_lemma, k_max, bad_side=True)


def check_product_formula_vs_oracle(k_max: int) -> CheckReport:
    """P_k = prod_{p <= k} p^{0 if v_p(k + 1) >= e_{p,k} else e_{p,k}}"""
    _guard("k_max", k_max, 14)

    findings = Findings(StatementId.product_formula_vs_oracle, {"k": (0, k_max)})
    with stopwatch() as watch:
        for k in range(k_max + 1):
            try:
                closed_form, oracle = exact_period(k).period, oracle_period(k).period
            except Exception as e:
                findings.error((k,), e)
                continue

            if closed_form != oracle:
                findings.add(k, closed_form, oracle)

    return findings.report(watch.elapsed)


def check_bad_prime_uniqueness(k_max: int) -> CheckReport:
    """At most one prime p <= k with v_p(k + 1) >= e_{p,k}.

    Such a p divides k + 1, so only the prime factors of k + 1 are inspected.
    """
    _guard("k_max", k_max, 10**7)

    findings = Findings(StatementId.bad_prime_uniqueness, {"k": (2, k_max)})
    with_bad = 0

    with stopwatch() as watch:
        spf = spf_table(k_max + 1).tolist()
        for k in range(2, k_max + 1):
            bad = [
                p
                for p, v in prime_factors(k + 1, spf).items()
                if p <= k and v >= e_pk(p, k)
            ]
            with_bad += bool(bad)
            if len(bad) > 1:
                findings.add(k, *bad)

    return findings.report(watch.elapsed, note=f"{with_bad} of {max(k_max - 1, 0)} k have a bad prime")


def check_prime_successor(k_max: int) -> CheckReport:
    """k + 1 prime  =>  P_k = lcm(1, ..., k)"""
    _guard("k_max", k_max, 10**5)

    findings = Findings(StatementId.prime_successor, {"k": (1, k_max)})
    with stopwatch() as watch:
        for q in sieve(k_max + 1).primes:
            k = q - 1
            try:
                holds = exact_period(k).period_factored == factored_lcm_upto(k)
            except Exception as e:
                findings.error((k,), e)
                continue

            if not holds:
                findings.add(k)

    return findings.report(watch.elapsed, conditional=True)


def check_six_power_family(r_values: Iterable[int] = (2, 3)) -> CheckReport:
    """k = 6^r - 1, r >= 2  =>  P_k = lcm(1, ..., k).

    The valuation hypothesis v_p(k + 1) < e_{p,k} is also confirmed at every p <= k.
    """
    r_values = sorted(r_values)
    if not r_values or r_values[0] < 2:
        raise ValueError(f"r must be >= 2, got {r_values}")
    _guard("r", r_values[-1], 5)

    findings = Findings(StatementId.six_power_family, {"r": (r_values[0], r_values[-1])})
    with stopwatch() as watch:
        for r in r_values:
            k = 6**r - 1
            failing = [p for p in primes_upto(k) if vp(p, k + 1) >= e_pk(p, k)]
            if failing:
                findings.add(r, k, *failing)
                continue

            try:
                holds = exact_period(k).period == lcm_range(1, k)
            except Exception as e:
                findings.error((r, k), e)
                continue

            if not holds:
                findings.add(r, k)

    return findings.report(watch.elapsed, conditional=True)


def check_per_prime_period(k_max: int) -> CheckReport:
    """P_{p,k} | p^{e_{p,k}} for each p <= k, and prod_p P_{p,k} = P_k."""
    _guard("k_max", k_max, 12)

    findings = Findings(StatementId.per_prime_period, {"k": (2, k_max)})
    with stopwatch() as watch:
        for k in range(2, k_max + 1):
            try:
                periods = {p: oracle_prime_period(k, p) for p in primes_upto(k)}
                whole = oracle_period(k).period
            except Exception as e:
                findings.error((k,), e)
                continue

            for p, period in periods.items():
                if (p ** e_pk(p, k)) % period:
                    findings.add(k, p, period)

            if math.prod(periods.values()) != whole:
                findings.add(k, math.prod(periods.values()), whole)

    return findings.report(watch.elapsed)
