from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .output import DecimalInt


class StatementId(str, Enum):
    recursion_consistency = "recursion_consistency"
    g0_factorial = "g0_factorial"
    t7_fixed_point = "t7_fixed_point"
    lcm_absorption = "lcm_absorption"
    hy_divides = "hy_divides"
    hy_multiple = "hy_multiple"
    valuation_theorem = "valuation_theorem"
    vanishing_lemma = "vanishing_lemma"
    product_formula_vs_oracle = "product_formula_vs_oracle"
    bad_prime_uniqueness = "bad_prime_uniqueness"
    prime_successor = "prime_successor"
    six_power_family = "six_power_family"
    # supplementary, only run on request
    per_prime_period = "per_prime_period"


CORE_STATEMENTS = tuple(s for s in StatementId if s is not StatementId.per_prime_period)


class CheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    statement_id: StatementId
    params: dict[str, tuple[DecimalInt, DecimalInt]]
    passed: bool
    counterexamples: list[tuple[DecimalInt, ...]] = Field(default_factory=list)
    elapsed: float = 0.0
    # relies on the closed form rather than the oracle
    conditional: bool = False
    note: Optional[str] = None

    @model_validator(mode="after")
    def _passed_iff_no_counterexamples(self):
        if self.passed == bool(self.counterexamples):
            raise ValueError("passed must be true exactly when there are no counterexamples")

        return self
