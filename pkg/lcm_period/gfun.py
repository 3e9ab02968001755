"""Independent evaluations of g_k(n) = n(n+1)...(n+k) / lcm(n, ..., n+k).

* ``g_direct``: the quotient itself, n >= 1 only.
* ``g_rec``: g_0 = 1, g_k(n) = gcd(k!, (n + k) g_{k-1}(n)), defined on all of Z.
* ``g_via_primes``: rebuilt from v_p(g_k(n)) for every prime p <= k.
"""

import math

from pydantic import BaseModel, ConfigDict, Field

from .arith import e_pk, primes_upto, vp
from .models import FactoredNat


class Window(BaseModel):
    """S_{n,k} = {n, n + 1, ..., n + k}。"""

    model_config = ConfigDict(frozen=True)

    n: int
    k: int = Field(ge=0)

    @property
    def last(self) -> int:
        return self.n + self.k

    def members(self) -> range:
        return range(self.n, self.n + self.k + 1)


def _require_positive(n: int, k: int):
    if n < 1:
        raise ValueError(f"n must be >= 1 here, got {n} (use g_rec for n <= 0)")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")


def g_direct(n: int, k: int) -> int:
    _require_positive(n, k)

    window = range(n, n + k + 1)
    return math.prod(window) // math.lcm(*window)


def g_rec_row(n: int, k: int) -> list[int]:
    """[g_0(n), g_1(n), ..., g_k(n)]，自 k = 0 向上迭代，对任意整数 n 有定义。"""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")

    row = [1]
    factorial = 1
    for j in range(1, k + 1):
        factorial *= j
        row.append(math.gcd(factorial, (n + j) * row[-1]))

    return row


def g_rec(n: int, k: int) -> int:
    return g_rec_row(n, k)[-1]


def count_multiples(w: Window, p: int, e: int) -> int:
    """#{m in S_{n,k} : p^e | m}，用下取整差计算而非枚举。"""
    if w.n < 1:
        raise ValueError(f"count_multiples needs a window starting at n >= 1, got {w.n}")
    if e < 1:
        raise ValueError(f"exponent must be >= 1, got {e}")

    q = p**e
    return w.last // q - (w.n - 1) // q


def g_p(n: int, k: int, p: int) -> int:
    """v_p(g_k(n)) = sum_{e=1}^{e_{p,k}} (#{m in S_{n,k} : p^e | m} - 1).

    每一项都非负：p^e <= k 时任意 k + 1 个连续整数中至少有一个 p^e 的倍数。
    """
    if n < 1 or k < 1:
        raise ValueError(f"g_p needs n >= 1 and k >= 1, got n={n}, k={k}")

    window = Window(n=n, k=k)
    return sum(count_multiples(window, p, e) - 1 for e in range(1, e_pk(p, k) + 1))


def g_p_from_valuations(n: int, k: int, p: int) -> int:
    """v_p(g_k(n)) = sum of v_p over the window minus its maximum."""
    _require_positive(n, k)

    valuations = [vp(p, m) for m in range(n, n + k + 1)]
    return sum(valuations) - max(valuations)


def g_via_primes(n: int, k: int) -> int:
    _require_positive(n, k)

    # k <= 1 leaves the product empty
    return math.prod(p ** g_p(n, k, p) for p in primes_upto(k))


def g_factorization(value: int, k: int) -> FactoredNat:
    """Factor a g_k value. It divides k!, so primes <= k suffice."""
    return FactoredNat.from_mapping({p: vp(p, value) for p in primes_upto(k)})
