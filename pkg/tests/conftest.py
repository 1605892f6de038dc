import numpy as np
import pytest
from hypothesis import strategies as st

from qbafx import SolverConfig, build_qbaf, datasets
from qbafx.errors import NonConvergence
from qbafx.semantics import solve_qe


@pytest.fixture
def cfg():
    return SolverConfig()


@pytest.fixture
def toy():
    return datasets.toy()


@pytest.fixture(scope="session")
def case_study():
    return datasets.case_study()


def random_qbaf(rng, n_args, edge_prob=0.35, max_edges=None):
    """Random framework with ids a0..a{n-1}; each ordered pair gets an edge with ``edge_prob``."""
    args = [f"a{i}" for i in range(n_args)]
    attacks, supports = [], []
    for i in range(n_args):
        for j in range(n_args):
            if i == j or rng.random() >= edge_prob:
                continue
            if max_edges is not None and len(attacks) + len(supports) >= max_edges:
                continue
            (attacks if rng.random() < 0.5 else supports).append((args[i], args[j]))
    tau = {a: float(rng.random()) for a in args}
    return build_qbaf(args, attacks, supports, tau)


def convergent_qbafs(count, n_args, seed, **kw):
    """Deterministic schedule of random frameworks whose QE iteration converges."""
    out, k = [], 0
    while len(out) < count:
        rng = np.random.default_rng([seed, k])
        k += 1
        q = random_qbaf(rng, n_args, **kw)
        try:
            solve_qe(q, SolverConfig())
        except NonConvergence:
            continue
        out.append(q)
    return out


@st.composite
def qbafs(draw, min_args=0, max_args=7):
    n = draw(st.integers(min_args, max_args))
    args = [f"a{i}" for i in range(n)]
    pairs = [(x, y) for x in args for y in args if x != y]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    polarity = draw(st.lists(st.booleans(), min_size=len(chosen), max_size=len(chosen)))
    tau = {a: draw(st.floats(0.0, 1.0)) for a in args}
    attacks = [p for p, att in zip(chosen, polarity) if att]
    supports = [p for p, att in zip(chosen, polarity) if not att]
    return build_qbaf(args, attacks, supports, tau)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
