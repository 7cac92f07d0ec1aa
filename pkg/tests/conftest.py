import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from enrichedcurves.graph import standard_graphs  # noqa: E402
from enrichedcurves.randgraph import random_connected_multigraph  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")

DEMO_GRAPHS = Path(__file__).resolve().parent.parent / "demos" / "graphs"


@pytest.fixture
def graphs():
    return standard_graphs()


def connected_graphs(max_vertices=5, max_edges=8, loops=True):
    """Hypothesis strategy: seeded random connected multigraphs."""
    return st.integers(min_value=0, max_value=2**32 - 1).map(
        lambda s: random_connected_multigraph(random.Random(s), max_vertices=max_vertices, max_edges=max_edges, loops=loops)
    )


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
