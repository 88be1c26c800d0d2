"""Shared fixtures: reference frames, deterministic generators, and the
acceptance summary printed at the end of a run."""
from __future__ import annotations

import numpy as np
import pytest

from fpl.suite import load_reference_frame, load_reference_fusion

_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def trident():
    return load_reference_frame("trident")


@pytest.fixture(scope="session")
def trident_flat_dual():
    return load_reference_frame("trident_flat_dual")


@pytest.fixture(scope="session")
def mercedes():
    return load_reference_frame("mercedes")


@pytest.fixture(scope="session")
def basis_plus_diag():
    return load_reference_frame("basis_plus_diag")


@pytest.fixture(scope="session")
def fusion_xy_z():
    return load_reference_fusion("fusion_xy_z")


@pytest.fixture(scope="session")
def fusion_xy_antidiag():
    return load_reference_fusion("fusion_xy_antidiag")


@pytest.fixture(scope="session")
def fusion_xy_tilted():
    return load_reference_fusion("fusion_xy_tilted")


def random_frame_matrix(rng: np.random.Generator, n: int, k: int,
                        field: str) -> np.ndarray:
    """Full-rank Gaussian synthesis matrix, redrawn on rank deficiency."""
    while True:
        if field == "complex":
            m = (rng.standard_normal((n, k))
                 + 1j * rng.standard_normal((n, k))) / np.sqrt(2.0)
        else:
            m = rng.standard_normal((n, k))
        s = np.linalg.svd(m, compute_uv=False)
        if s[-1] > 1e-6 * s[0]:
            return m


def instance_grid(seed: int, count: int = 200):
    """Deterministic (rng, n, k, field) stream covering n in 2..4,
    k in n..n+4, both scalar fields."""
    combos = [(n, k, field)
              for n in (2, 3, 4)
              for k in range(n, n + 5)
              for field in ("real", "complex")]
    for i in range(count):
        n, k, field = combos[i % len(combos)]
        yield np.random.default_rng((seed, i)), n, k, field


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    _ACCEPTANCE.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{name}: {outcome}")
