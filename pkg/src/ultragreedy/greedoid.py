"""The maximum-perimeter set system and its axiom checkers.

For a valid triple, the sets that maximize perimeter within their own
cardinality form a strong greedoid, and each cardinality level is the base
collection of a matroid.  The checkers here take arbitrary set systems, so
hand-built counterexamples can be analyzed with the same tooling; every
failed axiom comes with a re-checkable witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .core import UltraTriple, perimeter_set, projections

AXIOMS = ("i", "ii", "iii", "iv", "matroid-exchange")


def mask_from_points(pts: Iterable[int]) -> int:
    mask = 0
    for a in pts:
        mask |= 1 << a
    return mask


def points_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    a = 0
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


@dataclass(frozen=True)
class SetSystem:
    """A family of subsets of {0..ground-1}, each stored as a bitmask."""

    ground: int
    sets: frozenset[int]

    def __post_init__(self) -> None:
        if self.ground < 0:
            raise ValueError("ground size must be nonnegative")
        sets = frozenset(self.sets)
        for mask in sets:
            if not isinstance(mask, int) or isinstance(mask, bool) or mask < 0 or mask >> self.ground:
                raise ValueError(f"mask {mask!r} does not fit in ground size {self.ground}")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def from_point_sets(cls, ground: int, families: Iterable[Iterable[int]]) -> "SetSystem":
        return cls(ground, frozenset(mask_from_points(s) for s in families))

    def members(self) -> list[int]:
        """Masks sorted by cardinality, then numerically: a stable ordering."""
        return sorted(self.sets, key=lambda m: (m.bit_count(), m))

    def member_points(self) -> list[tuple[int, ...]]:
        return [points_from_mask(m) for m in self.members()]

    def __contains__(self, mask: int) -> bool:
        return mask in self.sets

    def __len__(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class AxiomReport:
    """Verdict for one axiom, with a structured counterexample on failure."""

    axiom: str
    holds: bool
    witness: dict | None = None

    def __post_init__(self) -> None:
        if self.axiom not in AXIOMS:
            raise ValueError(f"unknown axiom {self.axiom!r}")
        if not self.holds and self.witness is None:
            raise ValueError("a failed axiom needs a witness")


def bhargava_greedoid(t: UltraTriple, cap: int = 16) -> SetSystem:
    """All subsets of maximum perimeter within their cardinality.

    Brute force per level: every k-subset is scored and the argmax kept.
    The exact rational comparisons make ties precise, which is the whole
    point; `cap` bounds the ground size since the work is 2**n.
    """
    n = t.n
    if n > cap:
        raise ValueError(f"ground size {n} exceeds cap {cap}")
    winners: set[int] = set()
    for k in range(n + 1):
        best = None
        level: list[int] = []
        for combo in combinations(range(n), k):
            per = perimeter_set(t, combo)
            if best is None or per > best:
                best = per
                level = [mask_from_points(combo)]
            elif per == best:
                level.append(mask_from_points(combo))
        winners.update(level)
    return SetSystem(n, frozenset(winners))


def check_axiom_i(s: SetSystem) -> AxiomReport:
    """The empty set must belong to the system."""
    if 0 in s.sets:
        return AxiomReport("i", True)
    return AxiomReport("i", False, {"missing": ()})


def check_axiom_ii(s: SetSystem) -> AxiomReport:
    """Every nonempty member must stay in the system after deleting some element."""
    for B in s.members():
        if B == 0:
            continue
        if not any((B ^ (1 << b)) in s.sets for b in points_from_mask(B)):
            return AxiomReport("ii", False, {"B": points_from_mask(B)})
    return AxiomReport("ii", True)


def check_axiom_iii(s: SetSystem) -> AxiomReport:
    """For members A, B with |B| = |A|+1, some b in B-A must extend A inside the system."""
    by_card: dict[int, list[int]] = {}
    for m in s.members():
        by_card.setdefault(m.bit_count(), []).append(m)
    for k, As in sorted(by_card.items()):
        for B in by_card.get(k + 1, ()):
            for A in As:
                if not any(
                    (A | (1 << b)) in s.sets for b in points_from_mask(B & ~A)
                ):
                    return AxiomReport(
                        "iii", False, {"A": points_from_mask(A), "B": points_from_mask(B)}
                    )
    return AxiomReport("iii", True)


def check_axiom_iv(s: SetSystem) -> AxiomReport:
    """Like (iii), but the same x must also leave B - x in the system."""
    by_card: dict[int, list[int]] = {}
    for m in s.members():
        by_card.setdefault(m.bit_count(), []).append(m)
    for k, As in sorted(by_card.items()):
        for B in by_card.get(k + 1, ()):
            for A in As:
                if not any(
                    (A | (1 << x)) in s.sets and (B ^ (1 << x)) in s.sets
                    for x in points_from_mask(B & ~A)
                ):
                    return AxiomReport(
                        "iv", False, {"A": points_from_mask(A), "B": points_from_mask(B)}
                    )
    return AxiomReport("iv", True)


def level_sets(s: SetSystem, k: int) -> SetSystem:
    """The members of cardinality exactly k, as their own system."""
    return SetSystem(s.ground, frozenset(m for m in s.sets if m.bit_count() == k))


def check_matroid_bases(s: SetSystem) -> AxiomReport:
    """Exchange axiom for a base collection: nonempty, and any x in B1-B2
    can be replaced by some y in B2-B1 keeping membership.

    Mixed cardinalities are a usage error, not a failed axiom.
    """
    cards = {m.bit_count() for m in s.sets}
    if len(cards) > 1:
        raise ValueError(f"members have mixed cardinalities {sorted(cards)}")
    if not s.sets:
        return AxiomReport("matroid-exchange", False, {"empty": True})
    members = s.members()
    for B1 in members:
        for B2 in members:
            for x in points_from_mask(B1 & ~B2):
                base = B1 ^ (1 << x)
                if not any(
                    (base | (1 << y)) in s.sets for y in points_from_mask(B2 & ~B1)
                ):
                    return AxiomReport(
                        "matroid-exchange",
                        False,
                        {
                            "B1": points_from_mask(B1),
                            "B2": points_from_mask(B2),
                            "x": x,
                        },
                    )
    return AxiomReport("matroid-exchange", True)


def exchange_element(t: UltraTriple, A: Iterable[int], B: Iterable[int]) -> int:
    """The element of B - A whose transfer cannot decrease total perimeter.

    Built by projecting each element of A onto the unused part of B; the
    one element of B left unused is returned, after verifying
    per(B - u) + per(A + u) >= per(A) + per(B).  A verification failure
    means a bug or an invalid triple, so it raises.
    """
    As = sorted(set(A))
    Bs = set(B)
    if len(Bs) != len(As) + 1:
        raise ValueError(f"need |B| = |A| + 1, got |A|={len(As)}, |B|={len(Bs)}")
    remaining = set(Bs)
    for a in As:
        b = min(projections(t, remaining, a))
        remaining.discard(b)
    assert len(remaining) == 1
    u = remaining.pop()
    assert u not in As
    lhs = perimeter_set(t, Bs - {u}) + perimeter_set(t, set(As) | {u})
    rhs = perimeter_set(t, As) + perimeter_set(t, Bs)
    if lhs < rhs:
        raise RuntimeError(
            f"exchange inequality failed for A={As}, B={sorted(Bs)}, u={u}; "
            "the triple is invalid or there is a bug"
        )
    return u


def strong_exchange_pair(t: UltraTriple, s: SetSystem, A: Iterable[int], B: Iterable[int]) -> int:
    """An x in B - A with A + x and B - x both in the system.

    For the maximum-perimeter system of a valid triple, the projection
    construction of `exchange_element` always produces such an x; for other
    systems the remaining candidates are scanned, and having none means the
    system is not a strong greedoid.
    """
    Amask = mask_from_points(A)
    Bmask = mask_from_points(B)
    if Amask not in s.sets or Bmask not in s.sets:
        raise ValueError("A and B must both belong to the system")
    if Bmask.bit_count() != Amask.bit_count() + 1:
        raise ValueError("need |B| = |A| + 1")
    u = exchange_element(t, points_from_mask(Amask), points_from_mask(Bmask))
    candidates = [u] + [x for x in points_from_mask(Bmask & ~Amask) if x != u]
    for x in candidates:
        if (Amask | (1 << x)) in s.sets and (Bmask ^ (1 << x)) in s.sets:
            return x
    raise LookupError(
        f"no exchange witness for A={points_from_mask(Amask)}, "
        f"B={points_from_mask(Bmask)}: the system is not a strong greedoid"
    )
