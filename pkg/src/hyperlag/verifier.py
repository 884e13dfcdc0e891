"""Per-candidate verification of lambda(G) < lambda([l-1]^(3)) and the
classification predicates that accompany it."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from decimal import Context, Decimal
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import IO, Iterable

import numpy as np

from .certify import DEFAULT_BUDGET, grid_certify, largest_denominator, mesh_term
from .hypergraph import (
    UniformHypergraph,
    colex_key,
    complement,
    contains_complete_subgraph,
    is_left_compressed,
    pair_link,
)
from .lagrangian import LagrangianResult, SolverConfig, complete_lagrangian, maximize
from .poset import candidate_size, enumerate_candidates

log = logging.getLogger(__name__)

DEFAULT_MARGIN = 1e-7
LEMMA41_LINK_BOUND = 7


def _require_candidate(G: UniformHypergraph, l: int) -> None:
    if G.r != 3 or G.n != l:
        raise ValueError(f"expected a 3-graph on [{l}], got r={G.r}, n={G.n}")
    if not is_left_compressed(G):
        raise ValueError("graph is not left-compressed")
    if contains_complete_subgraph(G, l - 1):
        raise ValueError(f"graph contains a clique of order {l - 1}")


def lemma41_predicate(G: UniformHypergraph, l: int) -> bool:
    """Sufficient condition |E_{(l-1)l}| <= 7 for lambda(G) below threshold."""
    _require_candidate(G, l)
    return len(pair_link(G, l - 1, l)) <= LEMMA41_LINK_BOUND


def eq9_index(G: UniformHypergraph, l: int) -> int:
    """Largest i with (l-1-i)(l-1)l a non-edge of G."""
    missing = [p for p in range(1, l - 1) if (p, l - 1, l) not in G.edge_set]
    if not missing:
        raise ValueError("no triple p(l-1)l is missing: malformed candidate")
    return l - 1 - min(missing)


def eq9_check(G: UniformHypergraph, l: int) -> bool:
    """|E_{(l-1)l}| == l - 2 - i with i from :func:`eq9_index`."""
    _require_candidate(G, l)
    return len(pair_link(G, l - 1, l)) == l - 2 - eq9_index(G, l)


def thm111_indices(G: UniformHypergraph, l: int) -> tuple[int, int] | None:
    """Read (j, i) off the colex-smallest non-edges of G.

    The prefix must be (l-2-j)(l-2)(l-1), ..., (l-3)(l-2)(l-1) (j triples)
    followed by (l-2-i)(l-2)l. Returns None when the prefix has another shape.
    """
    comp = sorted(complement(G).edges, key=colex_key)
    j = 0
    while j < len(comp) and comp[j][1:] == (l - 2, l - 1):
        j += 1
    if comp[:j] != [(l - 2 - j + q, l - 2, l - 1) for q in range(j)]:
        return None
    if j >= len(comp) or comp[j][1:] != (l - 2, l):
        return None
    return j, l - 2 - comp[j][0]


def thm111_predicate(G: UniformHypergraph, l: int) -> bool:
    _require_candidate(G, l)
    if G.m != candidate_size(l):
        raise ValueError(f"expected {candidate_size(l)} edges, got {G.m}")
    idx = thm111_indices(G, l)
    if idx is None:
        return False
    j, i = idx
    return i >= j >= 1


@dataclass(frozen=True)
class CandidateReport:
    l: int
    m: int
    graph: UniformHypergraph
    complement_triples: tuple[tuple[int, ...], ...]
    pair_link_size: int
    max_i: int
    eq9_consistent: bool
    lemma41_applies: bool
    thm111_applies: bool
    lam: LagrangianResult
    threshold: Fraction
    margin: float
    verdict: str
    certification: str
    diagnostic: str = ""


@dataclass(frozen=True)
class VerificationSummary:
    l: int
    candidate_count: int
    max_lambda: float
    threshold: Fraction
    min_margin: float
    all_pass: bool
    certified_count: int
    runtime_seconds: float


def _check_candidate(
    G: UniformHypergraph,
    l: int,
    cfg: SolverConfig,
    margin_tolerance: float,
    certify: bool,
    budget: int,
) -> CandidateReport:
    threshold = complete_lagrangian(l - 1, 3)
    lam = maximize(G, cfg)
    certification, notes = "numeric", []
    if certify:
        D = largest_denominator(G, budget)
        if D and mesh_term(G, D) >= threshold - Fraction(lam.value):
            notes.append(f"grid at D={D} too coarse to clear the threshold; not scanned")
        elif D:
            bound = grid_certify(G, D, budget=budget)
            lam = replace(lam, certified_upper_bound=bound)
            if bound < threshold:
                certification = "certified"
            else:
                notes.append(f"grid bound {float(bound):.9g} at D={D} does not clear threshold")
        else:
            notes.append("grid budget too small for certification")
    exact_value = Fraction(lam.value)
    margin = float(threshold - exact_value)
    passed = (
        exact_value + Fraction(margin_tolerance) < threshold
        and lam.kkt_residual < cfg.kkt_tolerance
    )
    if lam.kkt_residual >= cfg.kkt_tolerance:
        notes.append(f"kkt residual {lam.kkt_residual:.3g} above tolerance")
    if not exact_value + Fraction(margin_tolerance) < threshold:
        notes.append(f"margin {margin:.3g} not above {margin_tolerance:g}")
    return CandidateReport(
        l=l,
        m=G.m,
        graph=G,
        complement_triples=tuple(sorted(complement(G).edges, key=colex_key)),
        pair_link_size=len(pair_link(G, l - 1, l)),
        max_i=eq9_index(G, l),
        eq9_consistent=eq9_check(G, l),
        lemma41_applies=lemma41_predicate(G, l),
        thm111_applies=thm111_predicate(G, l),
        lam=lam,
        threshold=threshold,
        margin=margin,
        verdict="pass" if passed else "fail",
        certification=certification,
        diagnostic="; ".join(notes),
    )


def verify(
    l: int,
    cfg: SolverConfig | None = None,
    margin_tolerance: float = DEFAULT_MARGIN,
    *,
    certify: bool = False,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> tuple[VerificationSummary, list[CandidateReport]]:
    """Check every candidate on [l]; reports follow the canonical candidate order."""
    if l < 6:
        raise ValueError("verification is defined for l >= 6")
    cfg = cfg or SolverConfig()
    start = time.perf_counter()
    candidates = enumerate_candidates(l)
    args = [(G, l, cfg, margin_tolerance, certify, budget) for G in candidates]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_check_candidate, *zip(*args)))
    else:
        reports = [_check_candidate(*a) for a in args]
    for rep in reports:
        log.info("l=%d candidate %s: lambda=%.12g margin=%.3g %s", l, rep.complement_triples, rep.lam.value, rep.margin, rep.verdict)
    threshold = complete_lagrangian(l - 1, 3)
    max_lambda = max(rep.lam.value for rep in reports)
    summary = VerificationSummary(
        l=l,
        candidate_count=len(reports),
        max_lambda=max_lambda,
        threshold=threshold,
        min_margin=float(threshold - Fraction(max_lambda)),
        all_pass=all(rep.verdict == "pass" for rep in reports),
        certified_count=sum(rep.certification == "certified" for rep in reports),
        runtime_seconds=time.perf_counter() - start,
    )
    return summary, reports


def sample_clique_supersets(l: int, samples: int, seed: int, extra_vertices: int = 2) -> list[UniformHypergraph]:
    """Random 3-graphs on [l-1+extra_vertices] containing [l-1]^(3), with an
    edge count drawn uniformly from [C(l-1,3), C(l-1,3) + C(l-2,2)]."""
    n = l - 1 + extra_vertices
    base = list(combinations(range(1, l), 3))
    pool = [t for t in combinations(range(1, n + 1), 3) if t[-1] >= l]
    rng = np.random.default_rng([seed, l])
    out = []
    for _ in range(samples):
        extra = int(rng.integers(0, comb(l - 2, 2) + 1))
        picks = rng.choice(len(pool), size=extra, replace=False)
        out.append(UniformHypergraph(3, n, tuple(base) + tuple(pool[k] for k in sorted(picks))))
    return out


def conjecture13_deviations(l: int, samples: int, cfg: SolverConfig | None = None) -> list[float]:
    cfg = cfg or SolverConfig()
    threshold = float(complete_lagrangian(l - 1, 3))
    return [
        abs(maximize(G, cfg).value - threshold)
        for G in sample_clique_supersets(l, samples, cfg.random_seed)
    ]


def conjecture13_spotcheck(l: int, samples: int, cfg: SolverConfig | None = None, tolerance: float = 1e-6) -> bool:
    """Every sampled clique-containing graph has lambda equal to the threshold."""
    if l < 6:
        raise ValueError("spot check is defined for l >= 6")
    return all(d <= tolerance for d in conjecture13_deviations(l, samples, cfg))


# -- report format ------------------------------------------------------------

_DEC = Context(prec=30)


def rational_record(q: Fraction) -> dict:
    return {
        "numerator": q.numerator,
        "denominator": q.denominator,
        "decimal": str(_DEC.divide(Decimal(q.numerator), Decimal(q.denominator))),
    }


def report_record(rep: CandidateReport) -> dict:
    lam = rep.lam
    return {
        "kind": "candidate",
        "l": rep.l,
        "m": rep.m,
        "graph": rep.graph.to_dict(),
        "complement_triples": [list(t) for t in rep.complement_triples],
        "pair_link_size": rep.pair_link_size,
        "max_i": rep.max_i,
        "eq9_consistent": rep.eq9_consistent,
        "lemma41_applies": rep.lemma41_applies,
        "thm111_applies": rep.thm111_applies,
        "lambda": {
            "value": lam.value,
            "weighting": list(lam.weighting),
            "support_size": lam.support_size,
            "kkt_residual": lam.kkt_residual,
            "restarts_used": lam.restarts_used,
            "certified_upper_bound": None
            if lam.certified_upper_bound is None
            else rational_record(lam.certified_upper_bound),
        },
        "threshold": rational_record(rep.threshold),
        "margin": rep.margin,
        "verdict": rep.verdict,
        "certification": rep.certification,
        "diagnostic": rep.diagnostic,
    }


def summary_record(summary: VerificationSummary, timing: bool = False) -> dict:
    rec = {
        "kind": "summary",
        "l": summary.l,
        "candidate_count": summary.candidate_count,
        "max_lambda": summary.max_lambda,
        "threshold": rational_record(summary.threshold),
        "min_margin": summary.min_margin,
        "all_pass": summary.all_pass,
        "certified_count": summary.certified_count,
    }
    if timing:
        rec["runtime_seconds"] = summary.runtime_seconds
    return rec


def write_report(
    fh: IO[str], summary: VerificationSummary, reports: Iterable[CandidateReport], timing: bool = False
) -> None:
    """One JSON object per line: candidates in canonical order, summary last."""
    for rep in reports:
        fh.write(json.dumps(report_record(rep)) + "\n")
    fh.write(json.dumps(summary_record(summary, timing)) + "\n")
