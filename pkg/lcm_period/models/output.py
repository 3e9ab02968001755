from typing import Annotated, Any, Optional

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer

from ..global_vars import GLOBAL_VARS

# lcm(1, ..., k) outgrows double precision past k ~ 40; JSON carries decimal strings
DecimalInt = Annotated[int, PlainSerializer(str, return_type=str, when_used="json")]

TABLE_CSV_HEADER = ("k", "period", "lcm_upto_k", "bad_prime", "ratio")


class OutputRecord(BaseModel):
    """CLI 的单次输出文档。"""

    model_config = ConfigDict(frozen=True)

    schema_version: str = Field(default_factory=lambda: GLOBAL_VARS["schema_version"])
    command: str
    payload: Any


class GPayload(BaseModel):
    n: DecimalInt
    k: DecimalInt
    method: str
    value: DecimalInt
    factorization: Optional[dict[str, DecimalInt]] = None
    valuations: Optional[dict[str, DecimalInt]] = None


class TableRow(BaseModel):
    k: DecimalInt
    period: DecimalInt
    lcm_upto_k: DecimalInt
    bad_prime: Optional[DecimalInt] = None
    ratio: DecimalInt

    def as_csv_row(self) -> tuple[str, ...]:
        return (
            str(self.k),
            str(self.period),
            str(self.lcm_upto_k),
            "" if self.bad_prime is None else str(self.bad_prime),
            str(self.ratio),
        )
