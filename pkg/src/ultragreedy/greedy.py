"""Greedy maximum-perimeter selection.

Two regimes share one engine: permutations pick distinct points of a subset
C, each step maximizing the perimeter of the growing set; subsequences
sample with replacement, so every point of C competes at every step and
self-distances matter (full triples only).  The k-th perimeter increment of
a greedy trace is independent of how ties were broken, which makes the
`nu_bar`/`nu` invariants well-defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .core import FullUltraTriple, UltraTriple


class TieBreak(Enum):
    LOWEST_INDEX = "lowest-index"
    ENUMERATE_ALL = "enumerate-all"


@dataclass(frozen=True)
class GreedyTrace:
    """An ordered greedy selection with its per-step perimeter increments.

    Increment j is w(c_j) plus the distances from c_j to all earlier picks,
    so the prefix sums of `increments` are the perimeters of the prefixes.
    """

    points: tuple[int, ...]
    increments: tuple[Fraction, ...]
    mode: str  # "permutation" or "subsequence"

    def __post_init__(self) -> None:
        if self.mode not in ("permutation", "subsequence"):
            raise ValueError(f"unknown trace mode {self.mode!r}")
        if len(self.points) != len(self.increments):
            raise ValueError("one increment per selected point")
        if self.mode == "permutation" and len(set(self.points)) != len(self.points):
            raise ValueError("permutation trace has repeated points")
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "increments", tuple(self.increments))

    def __len__(self) -> int:
        return len(self.points)

    def prefix_perimeters(self) -> tuple[Fraction, ...]:
        out: list[Fraction] = []
        total = Fraction(0)
        for inc in self.increments:
            total += inc
            out.append(total)
        return tuple(out)


def _subset(t: UltraTriple, C: Iterable[int]) -> list[int]:
    pts = sorted(set(C))
    for a in pts:
        t._check_point(a)
    return pts


def _gain(t: UltraTriple, chosen: Sequence[int], x: int) -> Fraction:
    """Perimeter increase from appending x to the selection `chosen`."""
    g = t.w(x)
    for c in chosen:
        g += t.d(c, x)
    return g


def _require_single_choice(tb: TieBreak) -> None:
    if tb is not TieBreak.LOWEST_INDEX:
        raise ValueError(
            "this operation returns a single trace; "
            "use all_greedy_permutations for enumerate-all"
        )


def greedy_permutation(
    t: UltraTriple, C: Iterable[int], m: int, tb: TieBreak = TieBreak.LOWEST_INDEX
) -> GreedyTrace:
    """Pick m distinct points of C, each maximizing the set perimeter.

    Ties go to the lowest point index, so the result is deterministic.
    """
    _require_single_choice(tb)
    pts = _subset(t, C)
    if not 0 <= m <= len(pts):
        raise ValueError(f"m={m} must be between 0 and |C|={len(pts)}")
    chosen: list[int] = []
    taken: set[int] = set()
    increments: list[Fraction] = []
    for _ in range(m):
        best_x = None
        best_gain = None
        for x in pts:
            if x in taken:
                continue
            g = _gain(t, chosen, x)
            if best_gain is None or g > best_gain:
                best_x, best_gain = x, g
        assert best_x is not None and best_gain is not None
        chosen.append(best_x)
        taken.add(best_x)
        increments.append(best_gain)
    return GreedyTrace(tuple(chosen), tuple(increments), "permutation")


def is_greedy_permutation(t: UltraTriple, C: Iterable[int], seq: Sequence[int]) -> bool:
    """Whether seq is distinct, inside C, and step-by-step unbeatable.

    Step i compares the perimeter of the first i entries against swapping
    the i-th entry for any other point of C not used before step i.
    """
    pts = _subset(t, C)
    ptset = set(pts)
    if len(set(seq)) != len(seq):
        return False
    if any(c not in ptset for c in seq):
        return False
    chosen: list[int] = []
    used: set[int] = set()
    for c in seq:
        g = _gain(t, chosen, c)
        for x in pts:
            if x in used:
                continue
            if _gain(t, chosen, x) > g:
                return False
        chosen.append(c)
        used.add(c)
    return True


def extend_greedy(t: UltraTriple, C: Iterable[int], prefix: GreedyTrace, m: int) -> GreedyTrace:
    """Extend a greedy trace to m points, staying greedy (lowest-index ties)."""
    pts = _subset(t, C)
    if prefix.mode != "permutation":
        raise ValueError("only permutation traces can be extended here")
    if not is_greedy_permutation(t, pts, prefix.points):
        raise ValueError("prefix is not a greedy permutation of C")
    if not len(prefix) <= m <= len(pts):
        raise ValueError(f"need |prefix|={len(prefix)} <= m={m} <= |C|={len(pts)}")
    chosen = list(prefix.points)
    taken = set(chosen)
    increments = list(prefix.increments)
    for _ in range(m - len(chosen)):
        best_x = None
        best_gain = None
        for x in pts:
            if x in taken:
                continue
            g = _gain(t, chosen, x)
            if best_gain is None or g > best_gain:
                best_x, best_gain = x, g
        assert best_x is not None and best_gain is not None
        chosen.append(best_x)
        taken.add(best_x)
        increments.append(best_gain)
    return GreedyTrace(tuple(chosen), tuple(increments), "permutation")


def all_greedy_permutations(
    t: UltraTriple, C: Iterable[int], m: int, cap: int = 10**6
) -> tuple[tuple[int, ...], ...]:
    """Every greedy m-permutation of C, in lexicographic order.

    Depth-first branches over every maximizing choice at each step; `cap`
    bounds the number of emitted sequences and exceeding it is an error,
    never a truncation.
    """
    pts = _subset(t, C)
    if not 0 <= m <= len(pts):
        raise ValueError(f"m={m} must be between 0 and |C|={len(pts)}")
    results: list[tuple[int, ...]] = []
    chosen: list[int] = []
    taken: set[int] = set()

    def walk() -> None:
        if len(chosen) == m:
            if len(results) >= cap:
                raise ValueError(f"more than cap={cap} greedy permutations")
            results.append(tuple(chosen))
            return
        best_gain = None
        gains: list[tuple[int, Fraction]] = []
        for x in pts:
            if x in taken:
                continue
            g = _gain(t, chosen, x)
            gains.append((x, g))
            if best_gain is None or g > best_gain:
                best_gain = g
        for x, g in gains:
            if g == best_gain:
                chosen.append(x)
                taken.add(x)
                walk()
                chosen.pop()
                taken.discard(x)

    walk()
    return tuple(sorted(results))


def nu_bar(t: UltraTriple, C: Iterable[int], k: int, trace: GreedyTrace | None = None) -> Fraction:
    """The k-th perimeter increment of any greedy permutation of C.

    Equal to max-perimeter(k) - max-perimeter(k-1); the greedy prefixes
    realize both maxima, so one greedy run suffices.  A supplied greedy
    trace is used directly instead of rerunning the selection.
    """
    pts = _subset(t, C)
    if not 1 <= k <= len(pts):
        raise ValueError(f"k={k} out of range 1..{len(pts)}")
    if trace is not None:
        if trace.mode != "permutation" or len(trace) < k:
            raise ValueError("trace must be a greedy permutation of length >= k")
        return trace.increments[k - 1]
    return greedy_permutation(t, pts, k).increments[k - 1]


def greedy_subsequence(
    t: FullUltraTriple, C: Iterable[int], m: int, tb: TieBreak = TieBreak.LOWEST_INDEX
) -> GreedyTrace:
    """Pick m points of C with replacement, each maximizing tuple perimeter.

    Every point of C competes at every step, the current pick included, so
    repeats appear whenever a point keeps winning; that is why the triple
    must carry self-distances.
    """
    _require_single_choice(tb)
    if not isinstance(t, FullUltraTriple):
        raise TypeError("greedy subsequences need a full triple (self-distances)")
    pts = _subset(t, C)
    if not pts:
        raise ValueError("C must be nonempty")
    if m < 0:
        raise ValueError("m must be nonnegative")
    chosen: list[int] = []
    increments: list[Fraction] = []
    for _ in range(m):
        best_x = None
        best_gain = None
        for x in pts:
            g = _gain(t, chosen, x)
            if best_gain is None or g > best_gain:
                best_x, best_gain = x, g
        assert best_x is not None and best_gain is not None
        chosen.append(best_x)
        increments.append(best_gain)
    return GreedyTrace(tuple(chosen), tuple(increments), "subsequence")


def is_greedy_subsequence(t: FullUltraTriple, C: Iterable[int], seq: Sequence[int]) -> bool:
    """Like is_greedy_permutation, but with repeats and all of C competing."""
    if not isinstance(t, FullUltraTriple):
        raise TypeError("greedy subsequences need a full triple (self-distances)")
    pts = _subset(t, C)
    ptset = set(pts)
    if any(c not in ptset for c in seq):
        return False
    chosen: list[int] = []
    for c in seq:
        g = _gain(t, chosen, c)
        if any(_gain(t, chosen, x) > g for x in pts):
            return False
        chosen.append(c)
    return True


def nu(t: FullUltraTriple, C: Iterable[int], k: int, trace: GreedyTrace | None = None) -> Fraction:
    """The k-th perimeter increment of any greedy subsequence of C."""
    pts = _subset(t, C)
    if not pts:
        raise ValueError("C must be nonempty")
    if k < 1:
        raise ValueError(f"k={k} must be at least 1")
    if trace is not None:
        if trace.mode != "subsequence" or len(trace) < k:
            raise ValueError("trace must be a greedy subsequence of length >= k")
        return trace.increments[k - 1]
    return greedy_subsequence(t, pts, k).increments[k - 1]


def clone_triple(t: FullUltraTriple, N: int) -> FullUltraTriple:
    """Replace each point by N interchangeable copies.

    Copy i of point e sits at index e*N + (i-1) with label "<label>#i";
    weights and all distances, self-distances included, ignore the copy
    index.  Greedy m-subsequences of a subset correspond to greedy
    m-permutations over its copies whenever N >= m.
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 1:
        raise ValueError("N must be a positive integer")
    labels: list[str] = []
    weights: list[Fraction] = []
    selfdist: list[Fraction] = []
    for e in t.points():
        for i in range(1, N + 1):
            labels.append(f"{t.labels[e]}#{i}")
            weights.append(t.weights[e])
            selfdist.append(t.selfdist[e])
    dist: list[tuple[Fraction, ...]] = []
    for a in range(t.n * N):
        row = tuple(t.d(a // N, b // N) for b in range(a))
        dist.append(row)
    return FullUltraTriple(tuple(labels), tuple(weights), tuple(dist), tuple(selfdist))


def nu_bar_inequality_check(
    t: UltraTriple, C: Iterable[int], trace: GreedyTrace, k: int, j: int
) -> bool:
    """Check the j-th entry bound on the k-th increment of a greedy trace.

    For a greedy trace c_1..c_m the invariant nu_bar_k(C) (or nu_k in
    subsequence mode) is bounded by w(c_j) plus the distances from c_j to
    the other entries among the first k.  The trace is assumed greedy, so
    its own k-th increment realizes the invariant.
    """
    pts = _subset(t, C)
    if not 1 <= j <= k <= len(trace):
        raise ValueError(f"need 1 <= j={j} <= k={k} <= {len(trace)}")
    if trace.mode == "permutation":
        target = nu_bar(t, pts, k, trace=trace)
    else:
        target = nu(t, pts, k, trace=trace)
    cj = trace.points[j - 1]
    rhs = t.w(cj)
    for i in range(1, k + 1):
        if i != j:
            rhs += t.d(trace.points[i - 1], cj)
    return target <= rhs
