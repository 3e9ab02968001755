from .factored import FactoredNat, PrimeTable
from .output import DecimalInt, GPayload, OutputRecord, TableRow
from .period import PeriodMethod, PeriodResult
from .report import CORE_STATEMENTS, CheckReport, StatementId

__all__ = [
    "CORE_STATEMENTS",
    "CheckReport",
    "DecimalInt",
    "FactoredNat",
    "GPayload",
    "OutputRecord",
    "PeriodMethod",
    "PeriodResult",
    "PrimeTable",
    "StatementId",
    "TableRow",
]
