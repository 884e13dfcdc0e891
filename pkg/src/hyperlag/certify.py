"""Rigorous upper bounds on lambda(G) from an exact scan of a rational grid.

Every grid value is computed in integer arithmetic. The covering argument:
on the simplex |d lambda / d x_i| = lambda(E_i, x) <= (sum_{j != i} x_j)^(r-1)
/ (r-1)! <= 1/(r-1)!, so lambda is Lipschitz in the L1 norm with that
constant, and every simplex point lies within L1 distance k/D of a grid point
with denominator D in k coordinates (round down, then hand the missing units
to the leading coordinates, which keeps a nonincreasing vector nonincreasing).

Two scans are available:

* per-vertex: all n coordinates; restricted to nonincreasing points when G is
  left-compressed, since sorting a weighting nonincreasingly never lowers
  lambda there.
* symmetric (default): one coordinate per class of pairwise equivalent
  vertices, holding the class total split evenly. Averaging weights inside
  a class never lowers lambda (the class coordinates enter only through
  elementary symmetric polynomials with nonnegative coefficients), so some
  optimal weighting lives on this face. The chain rule keeps the same
  Lipschitz constant.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, factorial, lcm
from typing import Iterator

import numpy as np

from .hypergraph import UniformHypergraph, equivalent_classes, is_left_compressed

DEFAULT_BUDGET = 5_000_000
_CHUNK = 1 << 18


class BudgetExceeded(ValueError):
    pass


def _count_compositions(D: int, k: int) -> int:
    return comb(D + k - 1, k - 1)


def _count_partitions(D: int, k: int) -> int:
    """Nonincreasing k-tuples of nonnegative integers summing to D."""
    ways = [1] + [0] * D
    for part in range(1, k + 1):
        for s in range(part, D + 1):
            ways[s] += ways[s - part]
    return ways[D]


def _rows(prefixes: Iterator[tuple[tuple[int, ...], np.ndarray]], k: int) -> Iterator[np.ndarray]:
    buf, size = [], 0
    for prefix, tails in prefixes:
        block = np.empty((tails.shape[0], k), dtype=np.int64)
        block[:, : len(prefix)] = prefix
        block[:, len(prefix) :] = tails
        buf.append(block)
        size += block.shape[0]
        if size >= _CHUNK:
            yield np.concatenate(buf)
            buf, size = [], 0
    if buf:
        yield np.concatenate(buf)


def _compositions(D: int, k: int) -> Iterator[np.ndarray]:
    """All k-tuples of nonnegative integers summing to D, in chunks."""
    if k == 1:
        yield np.array([[D]], dtype=np.int64)
        return

    def prefixes(depth: int, rem: int, acc: tuple[int, ...]):
        if depth == k - 2:
            a = np.arange(rem + 1, dtype=np.int64)
            yield acc, np.stack([a, rem - a], axis=1)
            return
        for v in range(rem + 1):
            yield from prefixes(depth + 1, rem - v, acc + (v,))

    yield from _rows(prefixes(0, D, ()), k)


def _nonincreasing(D: int, k: int) -> Iterator[np.ndarray]:
    """Nonincreasing k-tuples of nonnegative integers summing to D, in chunks."""
    if k == 1:
        yield np.array([[D]], dtype=np.int64)
        return

    def prefixes(depth: int, rem: int, cap: int, acc: tuple[int, ...]):
        if depth == k - 2:
            # last two coordinates a >= rem - a >= 0 with a <= cap
            a = np.arange((rem + 1) // 2, min(cap, rem) + 1, dtype=np.int64)
            if a.size:
                yield acc, np.stack([a, rem - a], axis=1)
            return
        left = k - depth
        for v in range(min(cap, rem), -(-rem // left) - 1, -1):
            yield from prefixes(depth + 1, rem - v, v, acc + (v,))

    yield from _rows(prefixes(0, D, D, ()), k)


def grid_size(G: UniformHypergraph, denominator: int, symmetric: bool = True) -> int:
    if symmetric:
        return _count_compositions(denominator, len(equivalent_classes(G)))
    if is_left_compressed(G):
        return _count_partitions(denominator, G.n)
    return _count_compositions(denominator, G.n)


def _scale(G: UniformHypergraph, symmetric: bool) -> int:
    return lcm(*(len(c) for c in equivalent_classes(G))) if symmetric else 1


def exact_int64_limit(G: UniformHypergraph, symmetric: bool = True) -> int:
    """Largest D for which the int64 scan cannot overflow."""
    m = max(G.m, 1)
    D = int(((2**62) / m) ** (1 / G.r)) // _scale(G, symmetric)
    while D > 0 and (_scale(G, symmetric) * D) ** G.r * m >= 2**62:
        D -= 1
    return D


def largest_denominator(G: UniformHypergraph, budget: int = DEFAULT_BUDGET, symmetric: bool = True) -> int:
    """Largest D whose grid fits in ``budget`` points and in int64 arithmetic
    (0 if even D=1 does not)."""
    cap = exact_int64_limit(G, symmetric)
    if cap < 1 or grid_size(G, 1, symmetric) > budget:
        return 0
    lo, hi = 1, 2
    while hi <= cap and grid_size(G, hi, symmetric) <= budget:
        lo, hi = hi, hi * 2
    hi = min(hi, cap + 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if grid_size(G, mid, symmetric) <= budget:
            lo = mid
        else:
            hi = mid
    return lo


def grid_maximum(
    G: UniformHypergraph, denominator: int, *, budget: int = DEFAULT_BUDGET, symmetric: bool = True
) -> tuple[Fraction, int]:
    """Exact maximum of lambda(G, .) over the grid, and the number of points."""
    if denominator < 1:
        raise ValueError("denominator must be positive")
    points = grid_size(G, denominator, symmetric)
    if points > budget:
        raise BudgetExceeded(f"grid of {points} points exceeds budget {budget}")
    if not G.edges:
        return Fraction(0), points
    edges = np.array(G.edges, dtype=np.intp) - 1
    if symmetric:
        classes = equivalent_classes(G)
        scale = _scale(G, symmetric)
        owner = np.empty(G.n, dtype=np.intp)
        mult = np.empty(G.n, dtype=np.int64)
        for idx, cls in enumerate(classes):
            for v in cls:
                owner[v - 1] = idx
                mult[v - 1] = scale // len(cls)
        chunks = _compositions(denominator, len(classes))
    else:
        scale = 1
        owner = np.arange(G.n, dtype=np.intp)
        mult = np.ones(G.n, dtype=np.int64)
        chunks = (
            _nonincreasing(denominator, G.n)
            if is_left_compressed(G)
            else _compositions(denominator, G.n)
        )
    top = scale * denominator
    exact_ints = top**G.r * len(edges) < 2**62
    best = -1
    for T in chunks:
        W = T[:, owner] * mult
        if not exact_ints:
            W = W.astype(object)
        vals = W[:, edges].prod(axis=-1).sum(axis=-1)
        best = max(best, int(vals.max()))
    return Fraction(best, top**G.r), points


def mesh_term(G: UniformHypergraph, denominator: int, symmetric: bool = True) -> Fraction:
    k = len(equivalent_classes(G)) if symmetric else G.n
    return Fraction(k, factorial(G.r - 1) * denominator)


def grid_certify(
    G: UniformHypergraph, denominator: int, *, budget: int = DEFAULT_BUDGET, symmetric: bool = True
) -> Fraction:
    """Certified upper bound: grid maximum + (1/(r-1)!) * (k / D), where k is
    the number of scanned coordinates."""
    grid_max, _ = grid_maximum(G, denominator, budget=budget, symmetric=symmetric)
    return grid_max + mesh_term(G, denominator, symmetric)
