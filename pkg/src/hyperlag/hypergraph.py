"""Exact r-uniform hypergraphs on the vertex set [n] = {1, ..., n}.

Edges are strictly increasing tuples and a graph keeps its edge list sorted in
colex order, so iteration, hashing and serialization are all deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, ...]


def colex_key(edge: Sequence[int]) -> tuple[int, ...]:
    """Sort key realising colex order on sets of equal size."""
    return tuple(reversed(edge))


def colex_less(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a`` precedes ``b`` in colex order: max(a symdiff b) lies in b."""
    if len(a) != len(b):
        raise ValueError(f"mismatched arity: {len(a)} vs {len(b)}")
    diff = set(a) ^ set(b)
    if not diff:
        return False
    return max(diff) in set(b)


def colex_rank(edge: Sequence[int]) -> int:
    """Position (0-based) of ``edge`` in the colex order of r-sets of positive integers."""
    return sum(comb(v - 1, k) for k, v in enumerate(sorted(edge), start=1))


def colex_unrank(rank: int, r: int) -> Edge:
    """Inverse of :func:`colex_rank` (combinatorial number system)."""
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    out = []
    for k in range(r, 0, -1):
        c = k - 1
        while comb(c + 1, k) <= rank:
            c += 1
        out.append(c + 1)
        rank -= comb(c, k)
    return tuple(reversed(out))


def _check_edge(edge: Iterable[int], r: int, n: int) -> Edge:
    e = tuple(int(v) for v in edge)
    if len(e) != r:
        raise ValueError(f"edge {e} does not have {r} vertices")
    if any(e[p] >= e[p + 1] for p in range(r - 1)):
        raise ValueError(f"edge {e} is not strictly increasing")
    if e and (e[0] < 1 or e[-1] > n):
        raise ValueError(f"edge {e} has a vertex outside [1, {n}]")
    return e


@dataclass(frozen=True)
class Link:
    """A neighbourhood family such as E_i (arity r-1) or E_ij (arity r-2)."""

    arity: int
    sets: frozenset[Edge]

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[Edge]:
        return iter(sorted(self.sets, key=colex_key))

    def __contains__(self, item) -> bool:
        return tuple(item) in self.sets


@dataclass(frozen=True)
class UniformHypergraph:
    """An r-graph on [n]. Construct with any iterable of edges; they are
    validated and stored as a colex-sorted tuple."""

    r: int
    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("uniformity r must be positive")
        if self.n < 0:
            raise ValueError("vertex count n must be nonnegative")
        checked = {_check_edge(e, self.r, self.n) for e in self.edges}
        if len(checked) != len(tuple(self.edges)):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", tuple(sorted(checked, key=colex_key)))

    @classmethod
    def complete(cls, t: int, r: int, n: int | None = None) -> UniformHypergraph:
        """[t]^(r), optionally embedded in a larger vertex set [n]."""
        return cls(r, t if n is None else n, tuple(combinations(range(1, t + 1), r)))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self.edge_set

    def __len__(self) -> int:
        return len(self.edges)

    def __le__(self, other: UniformHypergraph) -> bool:
        return self.r == other.r and self.n <= other.n and self.edge_set <= other.edge_set

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)

    def with_edges(self, edges: Iterable[Sequence[int]]) -> UniformHypergraph:
        return UniformHypergraph(self.r, self.n, tuple(tuple(e) for e in edges))

    def induced_complete(self, subset: Sequence[int]) -> bool:
        """True iff ``subset`` spans all of its r-subsets."""
        es = self.edge_set
        return all(e in es for e in combinations(sorted(subset), self.r))

    # -- file format -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"r": self.r, "n": self.n, "edges": [list(e) for e in self.edges]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: dict) -> UniformHypergraph:
        try:
            r, n, edges = doc["r"], doc["n"], doc["edges"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"graph document needs r, n and edges: {exc}") from None
        if not (isinstance(r, int) and isinstance(n, int)):
            raise ValueError("r and n must be integers")
        for e in edges:
            if list(e) != sorted(set(e)):
                raise ValueError(f"edge {e} is not strictly increasing")
        return cls(r, n, tuple(tuple(e) for e in edges))

    @classmethod
    def loads(cls, text: str) -> UniformHypergraph:
        return cls.from_dict(json.loads(text))


def _require_vertex(G: UniformHypergraph, *vs: int) -> None:
    for v in vs:
        if not 1 <= v <= G.n:
            raise ValueError(f"vertex {v} outside [1, {G.n}]")


def read_graph(path) -> UniformHypergraph:
    with open(path) as fh:
        return UniformHypergraph.loads(fh.read())


def write_graph(G: UniformHypergraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(G.dumps() + "\n")


def colex_first_m(r: int, m: int) -> UniformHypergraph:
    """C_{r,m}: the first m r-sets of positive integers in colex order, on the
    smallest vertex set [n] that contains them."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    edges = [colex_unrank(k, r) for k in range(m)]
    n = max((e[-1] for e in edges), default=0)
    return UniformHypergraph(r, n, tuple(edges))


def complement(G: UniformHypergraph) -> UniformHypergraph:
    es = G.edge_set
    return G.with_edges(e for e in combinations(G.vertices, G.r) if e not in es)


def link(G: UniformHypergraph, i: int) -> Link:
    """E_i: the (r-1)-sets that complete ``i`` to an edge."""
    _require_vertex(G, i)
    sets = frozenset(tuple(v for v in e if v != i) for e in G.edges if i in e)
    return Link(G.r - 1, sets)


def pair_link(G: UniformHypergraph, i: int, j: int) -> Link:
    """E_ij: the (r-2)-sets that complete the pair {i, j} to an edge."""
    _require_vertex(G, i, j)
    if i == j:
        raise ValueError("pair_link needs two distinct vertices")
    sets = frozenset(
        tuple(v for v in e if v != i and v != j) for e in G.edges if i in e and j in e
    )
    return Link(G.r - 2, sets)


def diff_link(G: UniformHypergraph, i: int, j: int) -> Link:
    """E_{i\\j} = E_i intersected with E_j^c.

    Members avoid both i and j, since E_j^c only holds (r-1)-sets whose union
    with j is an r-set.
    """
    _require_vertex(G, i, j)
    if i == j:
        raise ValueError("diff_link needs two distinct vertices")
    es = G.edge_set
    sets = set()
    for e in G.edges:
        if i in e and j not in e:
            a = tuple(v for v in e if v != i)
            if tuple(sorted(a + (j,))) not in es:
                sets.add(a)
    return Link(G.r - 1, frozenset(sets))


def _lower_shadow_steps(edge: Edge) -> Iterator[Edge]:
    """Tuples obtained by lowering one coordinate of ``edge`` by one."""
    for p, v in enumerate(edge):
        lo = edge[p - 1] if p else 0
        if v - 1 > lo:
            yield edge[:p] + (v - 1,) + edge[p + 1 :]


def dominated(edge: Edge) -> Iterator[Edge]:
    """All strictly increasing tuples below ``edge`` coordinatewise, excluding it."""
    r = len(edge)

    def rec(p: int, lo: int, acc: tuple[int, ...]):
        if p == r:
            yield acc
            return
        for v in range(lo + 1, edge[p] + 1):
            yield from rec(p + 1, v, acc + (v,))

    for t in rec(0, 0, ()):
        if t != edge:
            yield t


def is_left_compressed(G: UniformHypergraph) -> bool:
    """Down-closure under coordinatewise decrease; single-step closure suffices
    because every dominated tuple is reached by unit decrements."""
    es = G.edge_set
    return all(d in es for e in G.edges for d in _lower_shadow_steps(e))


def is_right_compressed(G: UniformHypergraph) -> bool:
    """Up-closure under coordinatewise increase within [n]."""
    es = G.edge_set
    for e in G.edges:
        for p, v in enumerate(e):
            hi = e[p + 1] if p + 1 < len(e) else G.n + 1
            if v + 1 < hi and e[:p] + (v + 1,) + e[p + 1 :] not in es:
                return False
    return True


def left_compress_steps(G: UniformHypergraph) -> Iterator[UniformHypergraph]:
    """Yield G and every intermediate graph of the left-compression process.

    Each step replaces the colex-largest edge that dominates a non-edge by the
    colex-smallest such non-edge.
    """
    current = G
    yield current
    while True:
        es = current.edge_set
        for e in reversed(current.edges):
            holes = [d for d in dominated(e) if d not in es]
            if holes:
                target = min(holes, key=colex_key)
                current = current.with_edges((es - {e}) | {target})
                yield current
                break
        else:
            return


def left_compress(G: UniformHypergraph) -> UniformHypergraph:
    for current in left_compress_steps(G):
        pass
    return current


def cliques(G: UniformHypergraph, t: int) -> Iterator[tuple[int, ...]]:
    """All t-subsets of [n] spanning a complete r-graph, for t >= r."""
    if t < G.r:
        raise ValueError(f"clique order {t} below uniformity {G.r}")
    level = list(G.edges)
    for size in range(G.r, t):
        level = _extend_cliques(G, level)
        if not level:
            break
    else:
        yield from level


def _extend_cliques(G: UniformHypergraph, level: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    es = G.edge_set
    out = []
    for s in level:
        for v in range(s[-1] + 1, G.n + 1):
            if all(f + (v,) in es for f in combinations(s, G.r - 1)):
                out.append(s + (v,))
    return out


def max_clique_order(G: UniformHypergraph) -> int:
    """Largest t with a complete t-subset. With no edges the answer is
    min(n, r-1): every (r-1)-set is vacuously complete."""
    if not G.edges:
        return min(G.n, G.r - 1)
    level, t = list(G.edges), G.r
    while True:
        level = _extend_cliques(G, level)
        if not level:
            return t
        t += 1


def contains_complete_subgraph(G: UniformHypergraph, t: int) -> bool:
    if t < G.r:
        raise ValueError(f"clique order {t} below uniformity {G.r}")
    return t <= max_clique_order(G)


def are_equivalent(G: UniformHypergraph, i: int, j: int) -> bool:
    """For every (r-1)-set f avoiding i and j: f in E_i iff f in E_j."""
    es = G.edge_set
    others = [v for v in G.vertices if v != i and v != j]
    for f in combinations(others, G.r - 1):
        if (tuple(sorted(f + (i,))) in es) != (tuple(sorted(f + (j,))) in es):
            return False
    return True


def equivalent_classes(G: UniformHypergraph) -> list[tuple[int, ...]]:
    """Partition [n] into classes of pairwise equivalent vertices, ordered by
    smallest member. Equivalence is transitive, so greedy grouping is exact."""
    classes: list[list[int]] = []
    for v in G.vertices:
        for cls in classes:
            if are_equivalent(G, cls[0], v):
                cls.append(v)
                break
        else:
            classes.append([v])
    return [tuple(c) for c in classes]
