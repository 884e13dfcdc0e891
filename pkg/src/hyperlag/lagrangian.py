"""Lagrangians of r-graphs: maximise sum_{e in E} prod_{v in e} x_v over the
standard simplex.

The optimiser is a batched multiplicative (replicator / Baum-Eagon) ascent
from many starts, followed per start by support pruning, the pair-merging
move behind minimal-support optimal weightings, and a Newton polish of the
stationarity system on the support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .hypergraph import (
    Link,
    UniformHypergraph,
    diff_link,
    is_left_compressed,
    link,
    pair_link,
)

PRUNE_THRESHOLD = 1e-10


@dataclass(frozen=True)
class SolverConfig:
    restarts: int = 64
    max_iterations: int = 20000
    convergence_tolerance: float = 1e-12
    kkt_tolerance: float = 1e-9
    random_seed: int = 42

    def __post_init__(self) -> None:
        if self.restarts < 1 or self.max_iterations < 1:
            raise ValueError("restarts and max_iterations must be positive")
        for name in ("convergence_tolerance", "kkt_tolerance"):
            tol = getattr(self, name)
            if not 0 < tol < 1:
                raise ValueError(f"{name} must lie in (0, 1)")
        if self.random_seed < 0:
            raise ValueError("random_seed must be nonnegative")


@dataclass(frozen=True)
class LagrangianResult:
    value: float
    weighting: tuple[float, ...]
    support_size: int
    kkt_residual: float
    restarts_used: int
    certified_upper_bound: Fraction | None = field(default=None)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weighting, start=1) if w > 0)


def as_weighting(x: Sequence[float], n: int, tol: float = 1e-12) -> np.ndarray:
    """Validate a point of the standard simplex in R^n."""
    arr = np.asarray(x, dtype=float)
    if arr.shape != (n,):
        raise ValueError(f"weighting has length {arr.size}, expected {n}")
    if np.any(arr < 0):
        raise ValueError("weighting has a negative entry")
    if abs(math.fsum(arr) - 1.0) > tol:
        raise ValueError("weighting does not sum to 1")
    return arr


def _check_length(G: UniformHypergraph, x: Sequence) -> None:
    if len(x) != G.n:
        raise ValueError(f"weighting has length {len(x)}, expected {G.n}")


def _sum(terms: list):
    if any(isinstance(t, Fraction) for t in terms):
        return sum(terms, Fraction(0))
    return math.fsum(terms)


def link_value(family: Link | Sequence[tuple[int, ...]], x: Sequence) -> float:
    """lambda(F, x) for a family of vertex tuples (1-based)."""
    return _sum([math.prod(x[v - 1] for v in s) for s in family])


def evaluate(G: UniformHypergraph, x: Sequence) -> float:
    """lambda(G, x). Exact when ``x`` holds Fractions."""
    _check_length(G, x)
    if isinstance(x, np.ndarray) and x.dtype.kind == "f":
        if not G.edges:
            return 0.0
        return math.fsum(x[_polynomial(G).edges].prod(axis=1))
    return link_value(G.edges, x)


def partial_gradient(G: UniformHypergraph, x: Sequence, i: int) -> float:
    """d lambda(G, x) / d x_i, which equals lambda(E_i, x)."""
    _check_length(G, x)
    return link_value(link(G, i), x)


def kkt_residual(G: UniformHypergraph, x: Sequence) -> float:
    """max over the support of |lambda(E_i, x) - r lambda(G, x)|."""
    _check_length(G, x)
    if not G.edges:
        return 0.0
    return _polynomial(G).kkt_residual(np.asarray(x, dtype=float))


def complete_lagrangian(t: int, r: int) -> Fraction:
    """lambda([t]^(r)) = C(t, r) / t^r, attained by the uniform weighting."""
    if t < r:
        raise ValueError(f"need t >= r, got t={t}, r={r}")
    return Fraction(comb(t, r), t**r)


def check_monotone_weighting(G: UniformHypergraph, x: Sequence[float]) -> bool:
    _check_length(G, x)
    return all(x[k] >= x[k + 1] for k in range(len(x) - 1))


def compression_identity_residual(
    G: UniformHypergraph, x: Sequence[float], i: int, j: int
) -> float:
    """|(x_i - x_j) lambda(E_ij, x) - lambda(E_{i\\j}, x)| for i < j with
    E_{j\\i} empty. Vanishes at stationary points with i, j in the support."""
    _check_length(G, x)
    if not i < j:
        raise ValueError("need i < j")
    if len(diff_link(G, j, i)):
        raise ValueError(f"E_{{{j}\\{i}}} is not empty; identity does not apply")
    lhs = (x[i - 1] - x[j - 1]) * link_value(pair_link(G, i, j), x)
    return abs(lhs - link_value(diff_link(G, i, j), x))


class _Polynomial:
    """Vectorised lambda(G, .), gradient and Hessian over batches of weightings."""

    def __init__(self, G: UniformHypergraph):
        self.r, self.n = G.r, G.n
        self.edges = np.array(G.edges, dtype=np.intp).reshape(-1, G.r) - 1
        links: list[list[np.ndarray]] = [[] for _ in range(G.n)]
        for p in range(G.r):
            rest = np.delete(self.edges, p, axis=1)
            for v, row in zip(self.edges[:, p], rest):
                links[v].append(row)
        width = max((len(a) for a in links), default=0)
        # missing slots point at a padding column that is always zero
        pad = np.full((G.n, max(width, 1), max(G.r - 1, 1)), G.n, dtype=np.intp)
        for v, a in enumerate(links):
            if a and G.r > 1:
                pad[v, : len(a)] = a
        self.links = pad
        self.pairs = [
            (p, q, [s for s in range(G.r) if s != p and s != q])
            for p, q in combinations(range(G.r), 2)
        ]

    def value(self, X: np.ndarray) -> np.ndarray:
        if not len(self.edges):
            return np.zeros(X.shape[0])
        return X[:, self.edges].prod(axis=-1).sum(axis=-1)

    def gradient(self, X: np.ndarray) -> np.ndarray:
        Xp = np.concatenate([X, np.zeros((X.shape[0], 1))], axis=1)
        return Xp[:, self.links].prod(axis=-1).sum(axis=-1)

    def hessian(self, x: np.ndarray) -> np.ndarray:
        H = np.zeros((self.n, self.n))
        for p, q, others in self.pairs:
            rest = x[self.edges[:, others]].prod(axis=-1)
            np.add.at(H, (self.edges[:, p], self.edges[:, q]), rest)
        return H + H.T

    def kkt_residual(self, x: np.ndarray) -> float:
        support = x > 0
        if not len(self.edges) or not support.any():
            return 0.0
        grad = self.gradient(x[None, :])[0]
        return float(np.max(np.abs(grad[support] - self.r * self.value(x[None, :])[0])))


@lru_cache(maxsize=64)
def _polynomial(G: UniformHypergraph) -> _Polynomial:
    return _Polynomial(G)


def _ascend(
    poly: _Polynomial, X: np.ndarray, max_iterations: int, tolerance: float
) -> tuple[np.ndarray, np.ndarray, int]:
    """Multiplicative ascent x_i <- x_i * grad_i / (r * value), row by row.

    A row stops once its per-iteration gain drops below ``tolerance``. A step
    that would lower the value (possible only through rounding) is rejected, so
    the recorded values never decrease. Returns (X, values, iterations).
    """
    X = X.copy()
    vals = poly.value(X)
    active = vals > 0
    it = 0
    while it < max_iterations and active.any():
        it += 1
        idx = np.flatnonzero(active)
        Xa = X[idx]
        g = poly.gradient(Xa)
        scale = (Xa * g).sum(axis=1)
        Xn = Xa * g / scale[:, None]
        Xn /= Xn.sum(axis=1, keepdims=True)
        vn = poly.value(Xn)
        gain = vn - vals[idx]
        up = gain >= 0
        X[idx[up]] = Xn[up]
        vals[idx[up]] = vn[up]
        active[idx[gain < tolerance]] = False
    return X, vals, it


def _merge_unlinked(G: UniformHypergraph, x: np.ndarray) -> np.ndarray:
    """While two support vertices share no edge, lambda is affine along moving
    weight between them; move all of it to the better endpoint."""
    shared = set()
    for e in G.edges:
        shared.update(combinations(e, 2))
    x = x.copy()
    changed = True
    while changed:
        changed = False
        support = [v + 1 for v in np.flatnonzero(x > 0)]
        for i, j in combinations(support, 2):
            if (i, j) in shared:
                continue
            to_i, to_j = x.copy(), x.copy()
            to_i[i - 1], to_i[j - 1] = x[i - 1] + x[j - 1], 0.0
            to_j[j - 1], to_j[i - 1] = x[i - 1] + x[j - 1], 0.0
            x = to_i if evaluate(G, to_i) >= evaluate(G, to_j) else to_j
            changed = True
            break
    return x


def _newton_polish(
    G: UniformHypergraph, poly: _Polynomial, x: np.ndarray, steps: int = 30
) -> np.ndarray:
    """Newton's method on grad_S lambda(x) = mu, sum(x_S) = 1 over the support
    S. The iterate is kept only if it stays interior, lowers the residual and
    does not lose value."""
    S = np.flatnonzero(x > 0)
    k = S.size
    if k < 2:
        return x
    best, best_val, best_res = x, evaluate(G, x), poly.kkt_residual(x)
    y, mu = x.copy(), G.r * best_val
    J = np.zeros((k + 1, k + 1))
    J[:k, k] = -1.0
    J[k, :k] = 1.0
    for _ in range(steps):
        g = poly.gradient(y[None, :])[0][S]
        J[:k, :k] = poly.hessian(y)[np.ix_(S, S)]
        rhs = np.concatenate([mu - g, [1.0 - y[S].sum()]])
        step = np.linalg.lstsq(J, rhs, rcond=None)[0]
        y_new = y.copy()
        y_new[S] += step[:k]
        if np.any(y_new[S] <= 0):
            break
        y, mu = y_new / y_new.sum(), mu + step[k]
        res, val = poly.kkt_residual(y), evaluate(G, y)
        if res < best_res and val >= best_val - 8 * np.finfo(float).eps * best_val:
            best, best_val, best_res = y.copy(), val, res
        if res < 1e-16:
            break
    return best


def _lift_zero_rows(poly: _Polynomial, X: np.ndarray) -> np.ndarray:
    """Starts with lambda = 0 give the multiplicative update nothing to work
    with; pull them halfway towards the barycentre until the value is positive."""
    X = X.copy()
    u = np.full(poly.n, 1.0 / poly.n)
    for _ in range(64):
        dead = poly.value(X) <= 0
        if not dead.any():
            break
        X[dead] = 0.5 * (X[dead] + u)
    return X


def _prune(x: np.ndarray) -> np.ndarray:
    y = np.where(x < PRUNE_THRESHOLD, 0.0, x)
    return y / y.sum()


def _refine(G: UniformHypergraph, poly: _Polynomial, x: np.ndarray, cfg: SolverConfig) -> np.ndarray:
    """Support minimisation to a fixpoint: prune tiny weights, merge vertex
    pairs that share no edge, polish, and re-run the ascent on what is left."""
    support = None
    for _ in range(2 * poly.n + 2):
        x = _merge_unlinked(G, _prune(x))
        x = _newton_polish(G, poly, x)
        current = tuple(np.flatnonzero(x > 0))
        if current == support:
            break
        support = current
        X, _, _ = _ascend(poly, x[None, :], cfg.max_iterations, cfg.convergence_tolerance)
        x = X[0]
    return x


def starting_points(G: UniformHypergraph, cfg: SolverConfig) -> np.ndarray:
    """Uniform weightings on the prefixes [n], [n-1], ... (at most half the
    budget, skipping prefixes that span no edge), then Dirichlet(1) samples
    drawn from per-restart streams seeded by (random_seed, restart index)."""
    n = G.n
    rows = []
    for k in range(n, G.r - 1, -1):
        if len(rows) >= (cfg.restarts + 1) // 2:
            break
        if any(e[-1] <= k for e in G.edges):
            x = np.zeros(n)
            x[:k] = 1.0 / k
            rows.append(x)
    for idx in range(len(rows), cfg.restarts):
        rng = np.random.default_rng([cfg.random_seed, idx])
        rows.append(rng.dirichlet(np.ones(n)))
    return np.array(rows)


def maximize(G: UniformHypergraph, cfg: SolverConfig | None = None) -> LagrangianResult:
    """Best local maximum of lambda(G, .) over ``cfg.restarts`` ascent runs.

    For a left-compressed G the returned weighting is sorted nonincreasing,
    which never lowers the value there.
    """
    cfg = cfg or SolverConfig()
    n = G.n
    if not G.edges:
        w = tuple([1.0 / n] * n) if n else ()
        return LagrangianResult(0.0, w, n, 0.0, 0)
    poly = _polynomial(G)
    X0 = _lift_zero_rows(poly, starting_points(G, cfg))
    X, _, _ = _ascend(poly, X0, cfg.max_iterations, cfg.convergence_tolerance)
    best, best_val = None, -1.0
    seen = set()
    for row in X:
        # restarts that ascended into the same point refine identically
        key = tuple(np.round(_prune(row), 9))
        if key in seen:
            continue
        seen.add(key)
        x = _refine(G, poly, row, cfg)
        val = evaluate(G, x)
        if val > best_val:
            best, best_val = x, val
    if is_left_compressed(G):
        ordered = np.sort(best)[::-1].copy()
        if evaluate(G, ordered) >= best_val:
            best = ordered
    weighting = tuple(float(v) for v in best)
    return LagrangianResult(
        value=evaluate(G, weighting),
        weighting=weighting,
        support_size=sum(1 for v in weighting if v > 0),
        kkt_residual=kkt_residual(G, weighting),
        restarts_used=len(X0),
    )
