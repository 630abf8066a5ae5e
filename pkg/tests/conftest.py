import pytest

from snhydrogen.constants import InteractionConfig
from snhydrogen.scf import SolverConfig, scf_solve

ACCEPTANCE_LINES: list[str] = []


def solve_levels(mode, levels=(1, 2, 3), scale=1, **kwargs):
    """SCF results keyed by level; ``scale`` multiplies both r_max and n of the default grid."""
    from snhydrogen.scf import default_grid

    out = {}
    for n in levels:
        r_max, points = default_grid(n)
        cfg = SolverConfig(
            target_level=n,
            interactions=InteractionConfig.from_mode(mode),
            r_max=r_max * scale,
            n=points * scale,
            **kwargs,
        )
        out[n] = scf_solve(cfg)
    return out


@pytest.fixture(scope="session")
def plain_levels():
    return solve_levels("none")


@pytest.fixture(scope="session")
def si_levels():
    return solve_levels("both")


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
