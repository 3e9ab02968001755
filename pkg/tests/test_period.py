import math

import pytest
from pydantic import ValidationError

from lcm_period import period as period_module
from lcm_period.arith import e_pk, factored_lcm_upto, is_prime, lcm_range, primes_upto, vp
from lcm_period.global_vars import GLOBAL_VARS
from lcm_period.models import FactoredNat, PeriodMethod, PeriodResult
from lcm_period.utils import stopwatch
from lcm_period.period import (
    BadPrimeInvariantError,
    OracleGuardError,
    PeriodAssumptionError,
    bad_prime,
    exact_period,
    g_one_quotient,
    hong_yang_bounds,
    hong_yang_bounds_factored,
    lcm_absorption_check,
    minimal_period,
    oracle_period,
    oracle_prime_period,
    period_from_prime_periods,
    period_p_exponent,
    t7_identity_check,
)

GOLDEN_PERIODS = [1, 1, 2, 3, 12, 20, 60, 105, 280, 504, 2520, 27720, 27720]


def test_period_p_exponent():
    assert period_p_exponent(3, 2) == 0
    assert period_p_exponent(4, 2) == 2
    assert period_p_exponent(8, 3) == 0
    assert period_p_exponent(8, 2) == 3


@pytest.mark.parametrize("k, p", [(3, 5), (10, 4), (10, 1)])
def test_period_p_exponent_rejects_bad_prime_argument(k, p):
    with pytest.raises(ValueError):
        period_p_exponent(k, p)


def test_period_p_exponent_rejects_large_p_without_sieving():
    with stopwatch() as watch:
        with pytest.raises(ValueError, match="p <= k"):
            period_p_exponent(3, 10**9 + 7)

    assert watch.elapsed < 1



def test_golden_table():
    assert [exact_period(k).period for k in range(13)] == GOLDEN_PERIODS


def test_exact_period_examples():
    assert exact_period(4).period == 12
    assert exact_period(0).period == 1

    result = exact_period(8)
    assert result.period == 280
    assert result.bad_prime == 3
    assert result.lcm_upto_k == 840
    assert result.ratio == 3
    assert result.method is PeriodMethod.closed_form


def test_exact_period_rejects_negative_k():
    with pytest.raises(ValueError):
        exact_period(-1)


def test_bad_prime():
    assert bad_prime(3) == 2
    assert bad_prime(4) is None
    assert bad_prime(9) == 5
    assert bad_prime(8) == 3


def test_bad_prime_needs_k_at_least_two():
    with pytest.raises(ValueError):
        bad_prime(1)


def test_second_bad_prime_is_an_invariant_violation(monkeypatch):
    monkeypatch.setattr(period_module, "is_bad_prime", lambda k, p: True)

    with pytest.raises(BadPrimeInvariantError):
        bad_prime(6)
    with pytest.raises(BadPrimeInvariantError):
        exact_period(6)


def test_hong_yang_bounds():
    assert hong_yang_bounds(4) == (12, 12)
    assert hong_yang_bounds(3) == (3, 6)
    assert hong_yang_bounds(1) == (1, 1)

    for k in range(1, 60):
        lower, upper = hong_yang_bounds(k)
        assert upper % lower == 0
        lower_f, upper_f = hong_yang_bounds_factored(k)
        assert (lower_f.expand(), upper_f.expand()) == (lower, upper)


def test_oracle_examples():
    assert oracle_period(3).period == 3
    assert oracle_period(0).period == 1
    assert oracle_period(1).period == 1

    result = oracle_period(8)
    assert result.period == 280
    assert result.bad_prime == 3
    assert result.method is PeriodMethod.oracle


def test_oracle_matches_closed_form_up_to_ten():
    for k in range(11):
        assert oracle_period(k).period == exact_period(k).period, k


@pytest.mark.slow
def test_oracle_matches_closed_form_up_to_fourteen():
    for k in range(11, 15):
        oracle, closed_form = oracle_period(k), exact_period(k)
        assert oracle.period == closed_form.period, k
        assert oracle.period_factored == closed_form.period_factored
        assert oracle.bad_prime == closed_form.bad_prime


def test_oracle_with_wider_window_rechecks_lcm():
    assert oracle_period(6, window_multiplier=3).period == 60
    assert oracle_period(7, window_multiplier=2).period == 105


def test_oracle_guard():
    with pytest.raises(OracleGuardError):
        oracle_period(21)

    GLOBAL_VARS["oracle_max_k"] = 5
    with pytest.raises(OracleGuardError):
        oracle_period(6)
    assert oracle_period(6, allow_large=True).period == 60


def test_oracle_guard_checks_memory(monkeypatch):
    monkeypatch.setattr(period_module, "table_fits_in_memory", lambda entries, entry_bytes: False)

    with pytest.raises(OracleGuardError):
        oracle_period(5, allow_large=True)


def test_oracle_guard_rejects_large_k_before_sizing_the_table():
    with stopwatch() as watch:
        with pytest.raises(OracleGuardError, match="allow-large-oracle"):
            oracle_period(400_000)
        with pytest.raises(OracleGuardError, match="allow-large-oracle"):
            oracle_prime_period(400_000, 2)

    assert watch.elapsed < 1


def test_oracle_table_must_repeat_with_lcm_period():
    lcm = FactoredNat.from_mapping({2: 1, 3: 1})

    table = period_module._period_table(lambda n: n % 3, lcm, 2)
    assert table.tolist() == [1, 2, 0] * 4

    with pytest.raises(PeriodAssumptionError, match="n=7"):
        period_module._period_table(lambda n: n, lcm, 2)


def test_minimal_period_on_small_tables():
    lcm = FactoredNat.from_mapping({2: 2})

    assert minimal_period([5, 7, 5, 7], lcm) == 2
    assert minimal_period([5, 5, 5, 5], lcm) == 1
    assert minimal_period([5, 5, 5, 7], lcm) == 4


def test_oracle_rejects_bad_arguments():
    with pytest.raises(ValueError):
        oracle_period(-1)
    with pytest.raises(ValueError):
        oracle_period(3, window_multiplier=0)


def test_t7_identity_check():
    assert t7_identity_check(4, 12)
    assert t7_identity_check(3, 3)
    assert not t7_identity_check(4, 24)


def test_t7_fixed_point_holds_for_exact_period():
    for k in range(1, 201):
        assert t7_identity_check(k, exact_period(k).period), k


def test_lcm_absorption_check():
    assert lcm_absorption_check(3, 3)
    assert lcm_absorption_check(1, 1)
    assert lcm_absorption_check(4, 12)
    # 7 is coprime to 8 * 9
    assert not lcm_absorption_check(2, 7)


def test_lcm_absorption_holds_for_exact_period():
    for k in range(1, 201):
        assert lcm_absorption_check(k, exact_period(k).period), k


def test_dichotomy():
    for k in range(2, 501):
        result = exact_period(k)
        lcm = lcm_range(1, k)

        if result.bad_prime is None:
            assert result.period == lcm
        else:
            p = result.bad_prime
            assert result.period == lcm // p ** e_pk(p, k)


def test_sandwich_on_factored_forms():
    for k in range(1, 501):
        lower, upper = hong_yang_bounds_factored(k)
        period = exact_period(k).period_factored
        assert lower.divides(period) and period.divides(upper), k


def test_prime_successor():
    for k in range(1, 501):
        if is_prime(k + 1):
            assert exact_period(k).period_factored == factored_lcm_upto(k), k


def test_six_power_family():
    for r in (2, 3):
        k = 6**r - 1
        assert exact_period(k).period == lcm_range(1, k)
        assert exact_period(k).bad_prime is None

    # every prime up to 35 meets v_p(36) < e_{p,35}
    assert all(vp(p, 36) < e_pk(p, 35) for p in primes_upto(35))


def test_per_prime_period_divides_prime_power():
    for k in range(2, 11):
        for p in primes_upto(k):
            assert p ** e_pk(p, k) % oracle_prime_period(k, p) == 0, (k, p)


def test_per_prime_periods_multiply_to_period():
    for k in range(1, 11):
        assert period_from_prime_periods(k) == oracle_period(k).period


def test_bad_prime_has_trivial_per_prime_period():
    assert oracle_prime_period(8, 3) == 1
    assert oracle_prime_period(8, 2) == 8


def test_oracle_prime_period_rejects_large_p_without_sieving():
    with stopwatch() as watch:
        with pytest.raises(ValueError, match="p <= k"):
            oracle_prime_period(3, 10**9 + 7)
    with pytest.raises(ValueError, match="not a prime"):
        oracle_prime_period(8, 4)

    assert watch.elapsed < 1



def test_g_one_quotient():
    for k in range(30):
        assert g_one_quotient(k) == lcm_range(1, k + 1) // (k + 1)


def test_period_result_enforces_dichotomy_shape():
    lcm = factored_lcm_upto(8)

    with pytest.raises(ValidationError):
        PeriodResult(
            k=8,
            period_factored=lcm,
            period=lcm.expand(),
            bad_prime=3,
            lcm_upto_k_factored=lcm,
            method=PeriodMethod.closed_form,
        )

    with pytest.raises(ValidationError):
        PeriodResult(
            k=8,
            period_factored=FactoredNat.from_mapping({2: 3}),
            period=9,
            lcm_upto_k_factored=lcm,
            method=PeriodMethod.oracle,
        )


def test_period_divides_lcm_for_large_k():
    result = exact_period(2000)
    assert result.lcm_upto_k % result.period == 0
    assert math.log2(result.period) > 64
