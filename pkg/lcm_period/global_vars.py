from typing import TypedDict


class GlobalVarsDict(TypedDict):
    schema_version: str
    oracle_max_k: int
    counterexample_cap: int
    verbose: bool
    workers: int


GLOBAL_VARS: GlobalVarsDict = {
    "schema_version": "1",
    # lcm(1, ..., 21) is already ~2.3e8 table entries
    "oracle_max_k": 20,
    "counterexample_cap": 10,
    "verbose": False,
    "workers": 1,
}
