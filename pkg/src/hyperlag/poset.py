"""Dominance order on triples of [l] and enumeration of the candidate graphs.

A triple a is an ancestor of b when a >= b coordinatewise with a larger
coordinate sum; a direct ancestor when the sums differ by exactly one. Sets of
triples closed under taking ancestors (up-closed) are exactly complements of
left-compressed 3-graphs on [l].
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable

from .hypergraph import UniformHypergraph, colex_key

Triple = tuple[int, int, int]
UpClosedSet = frozenset  # of Triple


def is_ancestor(a: Triple, b: Triple) -> bool:
    return all(x >= y for x, y in zip(a, b)) and sum(a) > sum(b)


def is_direct_ancestor(a: Triple, b: Triple) -> bool:
    return all(x >= y for x, y in zip(a, b)) and sum(a) == sum(b) + 1


def canonical(triples: Iterable[Triple]) -> tuple[Triple, ...]:
    """Colex-sorted tuple; the dedup key for triple sets."""
    return tuple(sorted(triples, key=colex_key))


def _canonical_rank(H) -> tuple[tuple[int, ...], ...]:
    return tuple(colex_key(t) for t in canonical(H))


@dataclass(frozen=True)
class TriplePoset:
    l: int

    @cached_property
    def elements(self) -> tuple[Triple, ...]:
        return canonical(combinations(range(1, self.l + 1), 3))

    def direct_ancestors(self, t: Triple) -> list[Triple]:
        out = []
        for p in range(3):
            hi = t[p + 1] if p < 2 else self.l + 1
            if t[p] + 1 < hi:
                out.append(t[:p] + (t[p] + 1,) + t[p + 1 :])
        return out

    def direct_descendants(self, t: Triple) -> list[Triple]:
        out = []
        for p in range(3):
            lo = t[p - 1] if p else 0
            if t[p] - 1 > lo:
                out.append(t[:p] + (t[p] - 1,) + t[p + 1 :])
        return out

    def ancestors(self, t: Triple) -> list[Triple]:
        return [a for a in self.elements if is_ancestor(a, t)]

    def up_closure(self, triples: Iterable[Triple]) -> UpClosedSet:
        seen = set(triples)
        stack = list(seen)
        while stack:
            for a in self.direct_ancestors(stack.pop()):
                if a not in seen:
                    seen.add(a)
                    stack.append(a)
        return frozenset(seen)

    def is_up_closed(self, H: Iterable[Triple]) -> bool:
        H = set(H)
        return all(a in H for t in H for a in self.direct_ancestors(t))


def forced_seed(l: int) -> UpClosedSet:
    """The five triples every candidate complement must contain (l >= 7)."""
    if l < 7:
        raise ValueError("the seed is defined for l >= 7; l = 6 is a special case")
    return frozenset(
        [
            (l - 2, l - 1, l),
            (l - 3, l - 1, l),
            (l - 3, l - 2, l),
            (l - 3, l - 2, l - 1),
            (l - 4, l - 1, l),
        ]
    )


def _grow(poset: TriplePoset, H: UpClosedSet) -> set[UpClosedSet]:
    """All one-triple extensions: a non-member directly below some member
    whose direct ancestors are all present."""
    frontier = {d for t in H for d in poset.direct_descendants(t) if d not in H}
    return {
        H | {d} for d in frontier if all(a in H for a in poset.direct_ancestors(d))
    }


def enumerate_up_closed(l: int, target_size: int) -> list[UpClosedSet]:
    """Breadth-first growth from the seed, one triple per level, deduplicated
    per level. Output is sorted by canonical colex form."""
    if target_size < 5:
        raise ValueError("target_size must be at least the seed size 5")
    poset = TriplePoset(l)
    level = {forced_seed(l)}
    for _ in range(target_size - 5):
        nxt: set[UpClosedSet] = set()
        for H in sorted(level, key=_canonical_rank):
            nxt |= _grow(poset, H)
        level = nxt
    return sorted(level, key=_canonical_rank)


L6_COMPLEMENT: UpClosedSet = frozenset([(4, 5, 6), (3, 5, 6), (3, 4, 6), (3, 4, 5)])


def candidate_size(l: int) -> int:
    """m = C(l-1, 3) + C(l-2, 2)."""
    return comb(l - 1, 3) + comb(l - 2, 2)


def complement_graph(l: int, H: Iterable[Triple]) -> UniformHypergraph:
    H = set(H)
    return UniformHypergraph(3, l, tuple(t for t in combinations(range(1, l + 1), 3) if t not in H))


def enumerate_candidates(l: int) -> list[UniformHypergraph]:
    """Every left-compressed 3-graph on [l] with C(l-1,3) + C(l-2,2) edges and
    no clique of order l-1, in canonical order."""
    if l < 6:
        raise ValueError("candidates are defined for l >= 6")
    if l == 6:
        return [complement_graph(6, L6_COMPLEMENT)]
    return [complement_graph(l, H) for H in enumerate_up_closed(l, l - 2)]
