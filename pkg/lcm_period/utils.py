import sys
import time
from contextlib import contextmanager
from typing import Iterator

import psutil
from loguru import logger

from .global_vars import GLOBAL_VARS

# int64 slot plus one byte of a comparison mask
INT64_ENTRY_BYTES = 9
# object pointer, a boxed multi-digit int and the mask byte
OBJECT_ENTRY_BYTES = 8 + 40 + 1


def configure_logging(verbose: bool):
    """Route loguru to stderr so stdout only carries the emitted document.

    Args:
        verbose (bool): debug level when true, warnings only otherwise
    """
    GLOBAL_VARS["verbose"] = verbose

    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING")


def available_memory() -> int:
    return psutil.virtual_memory().available


def table_fits_in_memory(entries: int, entry_bytes: int = INT64_ENTRY_BYTES) -> bool:
    """检查长度为 entries、每项 entry_bytes 字节的表能否放入当前可用内存（保留一半余量）。"""
    needed = entries * entry_bytes
    available = available_memory()

    if needed * 2 > available:
        logger.warning(
            f"Table of {entries} entries needs ~{needed} bytes, only {available} available"
        )
        return False

    return True


class Stopwatch:
    elapsed: float = 0.0


@contextmanager
def stopwatch() -> Iterator[Stopwatch]:
    watch = Stopwatch()
    start = time.perf_counter()

    try:
        yield watch
    finally:
        watch.elapsed = time.perf_counter() - start
