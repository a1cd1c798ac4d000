"""Shared fixtures."""

import numpy as np
import pytest

from hilbertlab.analytic import TaylorSeries
from hilbertlab.cache import report_cache
from hilbertlab.measures import Atomic, Lebesgue, PowerWeight, bundled_families
from hilbertlab.models import GridConfig


@pytest.fixture
def coarse_grid() -> GridConfig:
    return GridConfig(J=8, angular_nodes=256, truncation=2000, rel_tol=1e-9)


@pytest.fixture
def medium_grid() -> GridConfig:
    return GridConfig(J=12, angular_nodes=256, truncation=4000, rel_tol=1e-9)


@pytest.fixture
def acceptance_grid() -> GridConfig:
    return GridConfig(J=20, angular_nodes=512, truncation=10000, rel_tol=1e-9)


@pytest.fixture
def families():
    return bundled_families()


@pytest.fixture
def lebesgue() -> Lebesgue:
    return Lebesgue()


@pytest.fixture
def power_half() -> PowerWeight:
    return PowerWeight(0.5)


@pytest.fixture
def power_two() -> PowerWeight:
    return PowerWeight(2.0)


@pytest.fixture
def atom_half() -> Atomic:
    return Atomic(((0.5, 1.0),))


def polynomial_corpus(size: int = 20, degree: int = 12, seed: int = 7) -> list[TaylorSeries]:
    """Polynomials with geometrically decaying complex coefficients ``w_k 8^-k``."""
    rng = np.random.default_rng(seed)
    corpus = []
    for i in range(size):
        w = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
        corpus.append(TaylorSeries.polynomial(w * 8.0 ** -np.arange(degree + 1), label=f"p{i}"))
    return corpus


@pytest.fixture
def corpus() -> list[TaylorSeries]:
    return polynomial_corpus()


@pytest.fixture(autouse=True)
def clear_report_cache():
    report_cache.clear()
    yield
    report_cache.clear()
