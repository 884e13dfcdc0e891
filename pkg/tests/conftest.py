from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest

from hyperlag import UniformHypergraph

# (criterion, passed, detail) rows recorded by test_acceptance.py
ACCEPTANCE: list[tuple[str, bool, str]] = []


def brute_value(edges, x) -> Fraction:
    """Independent evaluator: explicit loops in exact arithmetic."""
    total = Fraction(0)
    for e in edges:
        term = Fraction(1)
        for v in e:
            term *= Fraction(x[v - 1])
        total += term
    return total


def l6_graph() -> UniformHypergraph:
    missing = {(3, 4, 5), (3, 4, 6), (3, 5, 6), (4, 5, 6)}
    return UniformHypergraph(3, 6, [e for e in combinations(range(1, 7), 3) if e not in missing])


@pytest.fixture
def g6() -> UniformHypergraph:
    return l6_graph()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
