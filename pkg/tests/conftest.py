import os
import random

import pytest

from radscales import Partition, build_graph, hub_hierarchy_graph, three_group_graph

SLOW_ENABLED = os.environ.get("RADSCALES_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if SLOW_ENABLED:
        return
    skip = pytest.mark.skip(reason="set RADSCALES_SLOW=1 to re-derive cached oracle constants")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion in the final summary."""
    lines = []
    for status in ("passed", "failed"):
        for report in terminalreporter.stats.get(status, []):
            if getattr(report, "when", None) != "call":
                continue
            if "test_acceptance.py" in report.nodeid:
                name = report.nodeid.split("::")[-1]
                lines.append((name, status.upper()))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{name}: {status}")


@pytest.fixture
def demo_graph():
    return three_group_graph()


@pytest.fixture
def hub_graph():
    return hub_hierarchy_graph()


def random_graph(rng: random.Random, n: int, p: float):
    """Seeded G(n, p) over labels v0..v{n-1}, guaranteed at least one edge."""
    pairs = [(f"v{u}", f"v{u}") for u in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                pairs.append((f"v{u}", f"v{v}"))
    graph = build_graph(pairs)
    if graph.m == 0 and n >= 2:
        graph = build_graph(pairs + [("v0", "v1")])
    return graph


def random_partition(rng: random.Random, n: int, max_groups: int = 6) -> Partition:
    """Random total assignment with every group of 0..k-1 non-empty."""
    k = rng.randint(1, min(n, max_groups))
    assignment = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(assignment)
    return Partition(group_of=tuple(assignment), group_count=k)
