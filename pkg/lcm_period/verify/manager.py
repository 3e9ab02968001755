from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from functools import partial
from typing import Callable, Iterable

from loguru import logger

from ..global_vars import GLOBAL_VARS
from ..models import CORE_STATEMENTS, CheckReport, StatementId
from . import (
    check_bad_prime_uniqueness,
    check_g0_factorial,
    check_hy_divides,
    check_hy_multiple,
    check_lcm_absorption,
    check_per_prime_period,
    check_prime_successor,
    check_product_formula_vs_oracle,
    check_recursion_consistency,
    check_six_power_family,
    check_t7_fixed_point,
    check_valuation_theorem,
    check_vanishing_lemma,
)


class Profile(str, Enum):
    quick = "quick"
    full = "full"


Check = Callable[[], CheckReport]

PROFILES: dict[Profile, dict[StatementId, Check]] = {
    Profile.quick: {
        StatementId.recursion_consistency: partial(check_recursion_consistency, 10, 1000),
        StatementId.g0_factorial: partial(check_g0_factorial, 20),
        StatementId.t7_fixed_point: partial(check_t7_fixed_point, 60),
        StatementId.lcm_absorption: partial(check_lcm_absorption, 60),
        StatementId.hy_divides: partial(check_hy_divides, 1000),
        StatementId.hy_multiple: partial(check_hy_multiple, 1000),
        StatementId.valuation_theorem: partial(check_valuation_theorem, 10),
        StatementId.vanishing_lemma: partial(check_vanishing_lemma, 10),
        StatementId.product_formula_vs_oracle: partial(check_product_formula_vs_oracle, 10),
        StatementId.bad_prime_uniqueness: partial(check_bad_prime_uniqueness, 10**3),
        StatementId.prime_successor: partial(check_prime_successor, 1000),
        StatementId.six_power_family: partial(check_six_power_family, (2, 3)),
        StatementId.per_prime_period: partial(check_per_prime_period, 8),
    },
    Profile.full: {
        StatementId.recursion_consistency: partial(check_recursion_consistency, 10, 2000),
        StatementId.g0_factorial: partial(check_g0_factorial, 30),
        StatementId.t7_fixed_point: partial(check_t7_fixed_point, 200),
        StatementId.lcm_absorption: partial(check_lcm_absorption, 200),
        StatementId.hy_divides: partial(check_hy_divides, 10**4),
        StatementId.hy_multiple: partial(check_hy_multiple, 10**4),
        StatementId.valuation_theorem: partial(check_valuation_theorem, 14),
        StatementId.vanishing_lemma: partial(check_vanishing_lemma, 14),
        StatementId.product_formula_vs_oracle: partial(check_product_formula_vs_oracle, 14),
        StatementId.bad_prime_uniqueness: partial(check_bad_prime_uniqueness, 10**6),
        StatementId.prime_successor: partial(check_prime_successor, 10**4),
        StatementId.six_power_family: partial(check_six_power_family, (2, 3)),
        StatementId.per_prime_period: partial(check_per_prime_period, 10),
    },
}


class CheckManager:
    def __init__(self, profile: Profile = Profile.quick):
        self.profile = profile
        self.reports: list[CheckReport] = []

    def run_statement(self, statement: StatementId) -> CheckReport:
        """运行单个检查并记录报告。如果已有相同 statement 的报告，会替换。"""
        logger.debug(f"Running {statement.value} ({self.profile.value})")
        report = PROFILES[self.profile][statement]()

        same_statement = self.get_report(statement)
        if same_statement is not None:
            self.reports.remove(same_statement)

        self.reports.append(report)
        return report

    def run(self, statements: Iterable[StatementId]) -> list[CheckReport]:
        """按给定顺序返回报告；workers > 1 时各检查并发执行。"""
        statements = list(statements)

        if GLOBAL_VARS["workers"] <= 1:
            return [self.run_statement(s) for s in statements]

        with ThreadPoolExecutor(max_workers=GLOBAL_VARS["workers"]) as pool:
            return list(pool.map(self.run_statement, statements))

    def get_report(self, statement: StatementId) -> CheckReport | None:
        for report in self.reports:
            if report.statement_id == statement:
                return report

        return None

    @property
    def all_passed(self) -> bool:
        return all(report.passed for report in self.reports)


def run_all(profile: Profile = Profile.quick, include_supplementary: bool = False) -> list[CheckReport]:
    statements = list(CORE_STATEMENTS)
    if include_supplementary:
        statements.append(StatementId.per_prime_period)

    return CheckManager(profile).run(statements)
