"""Independent checks of the optimiser against closed-form Lagrangians."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .hypergraph import UniformHypergraph, max_clique_order
from .lagrangian import SolverConfig, maximize


def random_graph(n: int, p: float, r: int, rng: np.random.Generator) -> UniformHypergraph:
    """Each r-subset of [n] is an edge independently with probability p."""
    edges = [e for e in combinations(range(1, n + 1), r) if rng.random() < p]
    return UniformHypergraph(r, n, tuple(edges))


@dataclass(frozen=True)
class MotzkinStrausTrial:
    graph: UniformHypergraph
    clique_order: int
    value: float
    expected: float

    @property
    def error(self) -> float:
        return abs(self.value - self.expected)


def motzkin_straus_trials(
    max_n: int, trials: int, cfg: SolverConfig | None = None, seed: int = 0
) -> list[MotzkinStrausTrial]:
    """Random 2-graphs with 2 <= n <= max_n and edge density in [0.2, 0.9].

    For a 2-graph whose largest clique has order w, lambda = (1 - 1/w) / 2;
    w comes from exhaustive clique search, not from the optimiser.
    """
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    cfg = cfg or SolverConfig()
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(trials):
        n = int(rng.integers(2, max_n + 1))
        G = random_graph(n, float(rng.uniform(0.2, 0.9)), 2, rng)
        omega = max_clique_order(G)
        out.append(MotzkinStrausTrial(G, omega, maximize(G, cfg).value, 0.5 * (1 - 1 / omega)))
    return out
