from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from .factored import FactoredNat
from .output import DecimalInt


class PeriodMethod(str, Enum):
    closed_form = "closed_form"
    oracle = "oracle"


class PeriodResult(BaseModel):
    """g_k 的精确周期 P_k 及其来源。"""

    model_config = ConfigDict(frozen=True)

    k: DecimalInt = Field(ge=0)
    period_factored: FactoredNat
    period: DecimalInt = Field(ge=1)
    bad_prime: Optional[DecimalInt] = None
    lcm_upto_k_factored: FactoredNat
    method: PeriodMethod

    @model_validator(mode="after")
    def _check_consistency(self):
        if self.period != self.period_factored.expand():
            raise ValueError("period does not match its factorization")

        if not self.period_factored.divides(self.lcm_upto_k_factored):
            raise ValueError(f"period {self.period} does not divide lcm(1, ..., {self.k})")

        if (
            self.method is PeriodMethod.closed_form
            and self.bad_prime is not None
            and self.period_factored
            != self.lcm_upto_k_factored.without(self.bad_prime)
        ):
            raise ValueError(
                f"period must be lcm(1, ..., {self.k}) with {self.bad_prime} removed"
            )

        if (
            self.method is PeriodMethod.closed_form
            and self.bad_prime is None
            and self.period_factored != self.lcm_upto_k_factored
        ):
            raise ValueError(f"period must equal lcm(1, ..., {self.k})")

        return self

    @computed_field
    @property
    def lcm_upto_k(self) -> DecimalInt:
        return self.lcm_upto_k_factored.expand()

    @computed_field
    @property
    def ratio(self) -> DecimalInt:
        return self.lcm_upto_k // self.period
