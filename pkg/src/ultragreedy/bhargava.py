"""p-adic valuations and P-orderings of integer sets.

A (P,m)-ordering greedily picks each next integer to minimize the p-adic
valuation of the product of its differences with the earlier picks.  For
zero weights this is the same selection as a greedy permutation under the
distance -v_p(a-b), and `check_equivalence` asserts that both codepaths
agree verdict-for-verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, total_ordering
from typing import Iterable, Sequence

from .greedy import TieBreak, is_greedy_permutation


def is_prime(n: int) -> bool:
    """Trial-division primality test; ample for desk-scale moduli."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p={p!r} is not a prime")


@total_ordering
@dataclass(frozen=True)
class Valuation:
    """A nonnegative integer, or infinity (encoded as value None).

    Infinity only ever arises as the valuation of 0.  Addition saturates,
    so products with a zero factor compare correctly.
    """

    value: int | None

    def __post_init__(self) -> None:
        v = self.value
        if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
            raise ValueError(f"valuation must be a nonnegative integer or None, got {v!r}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __lt__(self, other: "Valuation") -> bool:
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __add__(self, other: "Valuation") -> "Valuation":
        if self.value is None or other.value is None:
            return Valuation(None)
        return Valuation(self.value + other.value)


@lru_cache(maxsize=None)
def _vp_int(p: int, x: int) -> int | None:
    """Exponent of p in x, None for x = 0.  Assumes p already prime-checked."""
    if x == 0:
        return None
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def vp(p: int, x: int) -> Valuation:
    """Largest k with p**k dividing x; infinite for x = 0."""
    _check_prime(p)
    if not isinstance(x, int) or isinstance(x, bool):
        raise TypeError(f"expected an integer, got {x!r}")
    return Valuation(_vp_int(p, x))


def _step_valuation(p: int, x: int, prefix: Sequence[int]) -> int | None:
    """Valuation of the product of (x - a) over the prefix; None is infinity."""
    total = 0
    for a in prefix:
        v = _vp_int(p, x - a)
        if v is None:
            return None
        total += v
    return total


def _vless(u: int | None, v: int | None) -> bool:
    """Strict comparison with None as plus infinity."""
    if u is None:
        return False
    return v is None or u < v


def pm_ordering(
    E: Iterable[int], p: int, m: int, tb: TieBreak = TieBreak.LOWEST_INDEX
) -> list[int]:
    """An m-tuple over E, each entry minimizing the difference-product valuation.

    Ties go to the smallest integer value, which keeps the output stable
    under reordering of E.  For m <= |E| the entries come out distinct (a
    repeat would put a zero factor in the product); for larger m the
    selection keeps running and repeats per the same tie-break.
    """
    if tb is not TieBreak.LOWEST_INDEX:
        raise ValueError("pm_ordering returns a single tuple; enumerate-all is not supported")
    _check_prime(p)
    pool = sorted(set(E))
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > 0 and not pool:
        raise ValueError("E must be nonempty")
    seq: list[int] = []
    for _ in range(m):
        best_x = None
        best_v: int | None = None
        first = True
        for x in pool:
            v = _step_valuation(p, x, seq)
            if first or _vless(v, best_v):
                best_x, best_v, first = x, v, False
        assert best_x is not None
        seq.append(best_x)
    return seq


def is_pm_ordering(E: Iterable[int], p: int, seq: Sequence[int]) -> bool:
    """Whether each entry minimizes the difference-product valuation over E."""
    _check_prime(p)
    pool = sorted(set(E))
    poolset = set(pool)
    if any(c not in poolset for c in seq):
        return False
    for k, c in enumerate(seq):
        prefix = seq[:k]
        mine = _step_valuation(p, c, prefix)
        for x in pool:
            if _vless(_step_valuation(p, x, prefix), mine):
                return False
    return True


def check_equivalence(E: Iterable[int], p: int, seq: Sequence[int]) -> bool:
    """Assert the P-ordering and greedy-permutation verdicts coincide.

    Runs is_pm_ordering against is_greedy_permutation on the zero-weight
    -v_p triple over E and returns the shared verdict; a disagreement is an
    implementation bug, not a data condition, hence the hard error.
    """
    # imported here: constructions imports this module at load time
    from .constructions import padic_log_triple

    _check_prime(p)
    pool = sorted(set(E))
    entries = list(seq)
    if len(set(entries)) != len(entries):
        raise ValueError("sequence entries must be distinct")
    if any(c not in set(pool) for c in entries):
        raise ValueError("sequence entries must lie in E")
    verdict_pm = is_pm_ordering(pool, p, entries)
    t = padic_log_triple(pool, p)
    index = {val: i for i, val in enumerate(pool)}
    verdict_greedy = is_greedy_permutation(t, range(t.n), [index[c] for c in entries])
    if verdict_pm != verdict_greedy:
        raise RuntimeError(
            f"verdicts disagree on p={p}, E={pool}, seq={entries}: "
            f"P-ordering {verdict_pm}, greedy {verdict_greedy}"
        )
    return verdict_pm
