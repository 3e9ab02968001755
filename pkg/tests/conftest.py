import math
import sys

import pytest
from loguru import logger

from lcm_period.global_vars import GLOBAL_VARS


def trial_division_primes(bound: int) -> list[int]:
    return [
        n
        for n in range(2, bound + 1)
        if all(n % d for d in range(2, math.isqrt(n) + 1))
    ]


@pytest.fixture(autouse=True)
def restore_global_state():
    saved = dict(GLOBAL_VARS)
    yield
    GLOBAL_VARS.update(saved)  # type: ignore

    # the CLI re-points loguru at streams that CliRunner closes afterwards
    logger.remove()
    logger.add(sys.stderr, level="WARNING")
