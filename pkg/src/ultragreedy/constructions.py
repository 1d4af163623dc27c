"""Builders for standard families of (full) ultra triples.

Each constructor guarantees the ultrametric inequality by the shape of its
formula, so `validate` passes on every output (property-tested, not
re-checked at build time).  Also provides the tree-to-triple bridge and the
two transforms between plain and full triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bhargava import is_prime, vp
from .core import FullUltraTriple, UltraTriple, rational


def _weights(n: int, weights: Iterable[int | str | Fraction] | None) -> tuple[Fraction, ...]:
    if weights is None:
        return (Fraction(0),) * n
    out = tuple(rational(w) for w in weights)
    if len(out) != n:
        raise ValueError(f"expected {n} weights, got {len(out)}")
    return out


def _int_points(points: Iterable[int]) -> list[int]:
    pts = list(points)
    for x in pts:
        if not isinstance(x, int) or isinstance(x, bool):
            raise TypeError(f"points must be integers, got {x!r}")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    return pts


def _triple_from_pairs(pts: list[int], pair_dist, weights) -> UltraTriple:
    labels = tuple(str(x) for x in pts)
    dist = tuple(
        tuple(pair_dist(pts[i], pts[j]) for j in range(i)) for i in range(len(pts))
    )
    return UltraTriple(labels, _weights(len(pts), weights), dist)


def constant_triple(n: int, weights: Iterable | None = None) -> UltraTriple:
    """n points, all pairwise distances equal to 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    labels = tuple(str(i) for i in range(n))
    one = Fraction(1)
    dist = tuple((one,) * i for i in range(n))
    return UltraTriple(labels, _weights(n, weights), dist)


def mod_triple(
    points: Iterable[int],
    m: int,
    eps: int | str | Fraction,
    alpha: int | str | Fraction,
    weights: Iterable | None = None,
) -> UltraTriple:
    """Distance eps between points congruent mod m, alpha otherwise.

    Needs eps <= alpha: two residue-mates must never be farther apart than
    a mixed pair, or the ultrametric inequality breaks.
    """
    eps = rational(eps)
    alpha = rational(alpha)
    if eps > alpha:
        raise ValueError(f"eps={eps} must not exceed alpha={alpha}")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError("m must be a positive integer")
    pts = _int_points(points)
    return _triple_from_pairs(
        pts, lambda a, b: eps if (a - b) % m == 0 else alpha, weights
    )


def padic_triple(points: Iterable[int], p: int, weights: Iterable | None = None) -> UltraTriple:
    """Distance p**(-v_p(a-b)) between distinct integers a and b."""
    if not is_prime(p):
        raise ValueError(f"p={p!r} is not a prime")
    pts = _int_points(points)
    return _triple_from_pairs(
        pts, lambda a, b: Fraction(1, p ** vp(p, a - b).value), weights
    )


def padic_log_triple(points: Iterable[int], p: int, weights: Iterable | None = None) -> UltraTriple:
    """Distance -v_p(a-b): the integer-valued logarithmic variant."""
    if not is_prime(p):
        raise ValueError(f"p={p!r} is not a prime")
    pts = _int_points(points)
    return _triple_from_pairs(
        pts, lambda a, b: Fraction(-vp(p, a - b).value), weights
    )


def _divides(a: int, b: int) -> bool:
    # divisibility by 0 means "equals 0"
    if a == 0:
        return b == 0
    return b % a == 0


def rseq_triple(
    points: Iterable[int],
    r: Sequence[int],
    c: Sequence[int | str | Fraction],
    weights: Iterable | None = None,
) -> UltraTriple:
    """Distance c[v] where v is the deepest r-entry dividing the difference.

    r must be a divisibility chain r0 | r1 | r2 | ...; zeros may appear
    once the chain reaches 0 and divide nothing but 0.  c must be weakly
    decreasing and long enough for every pairwise difference.
    """
    rs = [x for x in r]
    if not rs:
        raise ValueError("r must be nonempty")
    for x in rs:
        if not isinstance(x, int) or isinstance(x, bool):
            raise TypeError(f"r entries must be integers, got {x!r}")
    for i in range(len(rs) - 1):
        if not _divides(rs[i], rs[i + 1]):
            raise ValueError(f"divisibility chain broken: {rs[i]} does not divide {rs[i + 1]}")
    cs = [rational(x) for x in c]
    for i in range(len(cs) - 1):
        if cs[i] < cs[i + 1]:
            raise ValueError("c must be weakly decreasing")
    pts = _int_points(points)

    def pair_dist(a: int, b: int) -> Fraction:
        diff = a - b
        hits = [i for i, ri in enumerate(rs) if _divides(ri, diff)]
        if not hits:
            raise ValueError(f"no r entry divides {diff}; the valuation is undefined")
        v = max(hits)
        if v >= len(cs):
            raise ValueError(f"c has {len(cs)} entries but the valuation reaches {v}")
        return cs[v]

    return _triple_from_pairs(pts, pair_dist, weights)


@dataclass(frozen=True)
class EquivHierarchy:
    """A refinement chain of partitions of {0..n-1}, with per-level distances.

    Level 0 lumps everything together; every later level refines the one
    before it; the last level separates every pair.  c[i] is the distance
    assigned to pairs that part ways after level i, so c must be weakly
    decreasing for the ultrametric inequality to hold.
    """

    levels: tuple[tuple[frozenset[int], ...], ...]
    c: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        levels = tuple(
            tuple(sorted((frozenset(block) for block in level), key=min))
            for level in self.levels
        )
        cs = tuple(rational(x) for x in self.c)
        if not levels:
            raise ValueError("need at least the trivial level")
        ground = frozenset().union(*levels[0]) if levels[0] else frozenset()
        n = len(ground)
        if ground != frozenset(range(n)) or n < 1:
            raise ValueError("level 0 must cover points 0..n-1 for some n >= 1")
        if len(levels[0]) != 1:
            raise ValueError("level 0 must be a single block")
        for level in levels:
            seen: set[int] = set()
            for block in level:
                if not block or (seen & block):
                    raise ValueError("levels must be partitions: disjoint nonempty blocks")
                seen |= block
            if seen != set(ground):
                raise ValueError("every level must partition the same ground set")
        for prev, cur in zip(levels, levels[1:]):
            ids = {}
            for bid, block in enumerate(prev):
                for e in block:
                    ids[e] = bid
            for block in cur:
                if len({ids[e] for e in block}) != 1:
                    raise ValueError("each level must refine the previous one")
        if any(len(block) > 1 for block in levels[-1]):
            raise ValueError("the last level must separate every pair of points")
        needed = 0
        for i, level in enumerate(levels):
            if any(len(block) > 1 for block in level):
                needed = i + 1
        if len(cs) < needed:
            raise ValueError(f"c needs at least {needed} entries, got {len(cs)}")
        for i in range(len(cs) - 1):
            if cs[i] < cs[i + 1]:
                raise ValueError("c must be weakly decreasing")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "c", cs)

    @property
    def n(self) -> int:
        return sum(len(block) for block in self.levels[0])


def eqrel_triple(h: EquivHierarchy, weights: Iterable | None = None) -> UltraTriple:
    """Distance c[i] where i is the last level keeping the two points together."""
    n = h.n
    ids = []
    for level in h.levels:
        level_ids = [0] * n
        for bid, block in enumerate(level):
            for e in block:
                level_ids[e] = bid
        ids.append(level_ids)

    def pair_dist(a: int, b: int) -> Fraction:
        last = max(i for i in range(len(ids)) if ids[i][a] == ids[i][b])
        return h.c[last]

    labels = tuple(str(i) for i in range(n))
    dist = tuple(tuple(pair_dist(i, j) for j in range(i)) for i in range(n))
    return UltraTriple(labels, _weights(n, weights), dist)


@dataclass(frozen=True)
class WeightedTree:
    """An undirected tree with nonnegative edge weights, a root, and a
    designated point set (the leafset, degree-<=1 vertices by default)."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, Fraction], ...]
    root: str
    leafset: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        vertices = tuple(str(v) for v in self.vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("vertices must be distinct")
        known = set(vertices)
        edges = []
        for u, v, wt in self.edges:
            u, v = str(u), str(v)
            wt = rational(wt)
            if u not in known or v not in known:
                raise ValueError(f"edge ({u}, {v}) references an unknown vertex")
            if u == v:
                raise ValueError(f"self-loop at {u}: the graph is not a tree")
            if wt < 0:
                raise ValueError(f"edge ({u}, {v}) has negative weight {wt}")
            edges.append((u, v, wt))
        root = str(self.root)
        if root not in known:
            raise ValueError(f"root {root!r} is not a vertex")
        # union-find: an edge inside one component closes a cycle
        parent = {v: v for v in vertices}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, _ in edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError(f"edge ({u}, {v}) closes a cycle")
            parent[ru] = rv
        if len({find(v) for v in vertices}) != 1:
            raise ValueError("the graph is disconnected")
        if self.leafset is None:
            degree = {v: 0 for v in vertices}
            for u, v, _ in edges:
                degree[u] += 1
                degree[v] += 1
            leafset = tuple(v for v in vertices if degree[v] <= 1)
        else:
            leafset = tuple(str(v) for v in self.leafset)
            if len(set(leafset)) != len(leafset):
                raise ValueError("leafset entries must be distinct")
            if not set(leafset) <= known:
                raise ValueError("leafset must be a subset of the vertices")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "leafset", leafset)


def _path_weights(t: WeightedTree, source: str) -> dict[str, Fraction]:
    adj: dict[str, list[tuple[str, Fraction]]] = {v: [] for v in t.vertices}
    for u, v, wt in t.edges:
        adj[u].append((v, wt))
        adj[v].append((u, wt))
    dist = {source: Fraction(0)}
    stack = [source]
    while stack:
        x = stack.pop()
        for y, wt in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + wt
                stack.append(y)
    return dist


def tree_triple(t: WeightedTree) -> UltraTriple:
    """The triple on the leafset: w(x) is the path weight to the root and
    d(x,y) is the path weight between x and y minus both root paths."""
    assert t.leafset is not None
    from_root = _path_weights(t, t.root)
    from_leaf = {x: _path_weights(t, x) for x in t.leafset}
    labels = t.leafset
    weights = tuple(from_root[x] for x in labels)
    dist = tuple(
        tuple(
            from_leaf[labels[i]][labels[j]] - from_root[labels[i]] - from_root[labels[j]]
            for j in range(i)
        )
        for i in range(len(labels))
    )
    return UltraTriple(labels, weights, dist)


def extend_to_full(t: UltraTriple, N: int | str | Fraction) -> FullUltraTriple:
    """Give every point the same self-distance N.

    N must not exceed any pairwise distance; at that boundary the full
    ultrametric inequality still holds with equality.
    """
    N = rational(N)
    pair_dists = [t.d(a, b) for a in t.points() for b in range(a)]
    if pair_dists and N > min(pair_dists):
        raise ValueError(f"self-distance {N} exceeds the minimum pairwise distance {min(pair_dists)}")
    return FullUltraTriple(t.labels, t.weights, t.dist, (N,) * t.n)


def shift_distances(t: FullUltraTriple, R: int | str | Fraction) -> FullUltraTriple:
    """Add R to every off-diagonal distance, keeping self-distances.

    Never raises: for R < 0 the result can violate the full-triple
    inequality, which `validate` will report.
    """
    R = rational(R)
    dist = tuple(tuple(x + R for x in row) for row in t.dist)
    return FullUltraTriple(t.labels, t.weights, dist, t.selfdist)
