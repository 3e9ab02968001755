from bisect import bisect_left, bisect_right
from math import prod
from typing import Mapping

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .output import DecimalInt


class FactoredNat(BaseModel):
    """以质因数分解表示的正整数。空列表表示 1。

    Note:
        factors 中质数严格递增，指数均不小于 1。
    """

    model_config = ConfigDict(frozen=True)

    factors: tuple[tuple[DecimalInt, DecimalInt], ...] = ()

    @field_validator("factors")
    @classmethod
    def _validate_factors(
        cls, factors: tuple[tuple[int, int], ...]
    ) -> tuple[tuple[int, int], ...]:
        previous = 1
        for prime, exponent in factors:
            if prime <= previous:
                raise ValueError(
                    f"Primes must be strictly increasing and >= 2, got {prime} after {previous}"
                )
            if exponent < 1:
                raise ValueError(f"Exponent of {prime} must be >= 1, got {exponent}")
            previous = prime

        return factors

    @classmethod
    def from_mapping(cls, exponents: Mapping[int, int]) -> Self:
        """从 prime -> exponent 映射构造，指数为 0 的项被丢弃。"""
        return cls(
            factors=tuple(
                (prime, exponent)
                for prime, exponent in sorted(exponents.items())
                if exponent > 0
            )
        )

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def exponent(self, prime: int) -> int:
        for p, e in self.factors:
            if p == prime:
                return e

        return 0

    def expand(self) -> int:
        return prod(p**e for p, e in self.factors)

    def divides(self, other: "FactoredNat") -> bool:
        exponents = other.as_dict()
        return all(exponents.get(p, 0) >= e for p, e in self.factors)

    def without(self, prime: int) -> Self:
        return self.model_copy(
            update={"factors": tuple((p, e) for p, e in self.factors if p != prime)}
        )

    def __str__(self) -> str:
        if not self.factors:
            return "1"

        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


class PrimeTable(BaseModel):
    """[2, bound] 内全部质数，升序。"""

    model_config = ConfigDict(frozen=True)

    bound: int = Field(ge=0)
    primes: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.primes)

    def __contains__(self, n: object) -> bool:
        if not isinstance(n, int):
            return False

        i = bisect_left(self.primes, n)
        return i < len(self.primes) and self.primes[i] == n

    def upto(self, k: int) -> tuple[int, ...]:
        """Primes <= k; k must not exceed the table bound."""
        if k > self.bound:
            raise ValueError(f"Prime table only reaches {self.bound}, asked for {k}")

        return self.primes[: bisect_right(self.primes, k)]
