import time

import numpy as np

from skewbounds import (
    BoundInputPair,
    DensityMatrix,
    Observable,
    gamma_matrix,
    validate_density,
    validate_observable,
)

SESSION_START = time.monotonic()


def pytest_collection_modifyitems(config, items):
    # acceptance gate last so its runtime criterion sees the whole session
    tail = [it for it in items if it.path.name == "test_acceptance.py"]
    head = [it for it in items if it.path.name != "test_acceptance.py"]
    items[:] = head + tail


def random_density(rng: np.random.Generator, dim: int) -> DensityMatrix:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return validate_density(m / np.trace(m).real)


def random_observable(rng: np.random.Generator, dim: int, name: str = "A") -> Observable:
    h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return validate_observable((h + h.conj().T) / 2.0, name=name)


def random_p(rng: np.random.Generator) -> float:
    return float(rng.uniform(0.05, 0.95))


def random_bound_pair(seed: int, dim: int, p: float | None = None) -> BoundInputPair:
    rng = np.random.default_rng(seed)
    rho = random_density(rng, dim)
    a = random_observable(rng, dim, "A")
    b = random_observable(rng, dim, "B")
    gf = gamma_matrix(rho, p if p is not None else random_p(rng))
    return BoundInputPair.from_observables(gf, a, b)
