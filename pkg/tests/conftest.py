import numpy as np
import pytest

import rdl

# The asymmetric demo system used throughout the docs: strong coupling into
# terminal 2, low noise at terminal 1.
DEMO = dict(alpha=1.0, beta=8.0, sigma1_sq=0.05, sigma2_sq=1.0)


@pytest.fixture(scope="session")
def demo_params():
    return rdl.SystemParams(**DEMO)


@pytest.fixture(scope="session")
def demo_q(demo_params):
    return rdl.derive(demo_params)


@pytest.fixture(scope="session")
def param_sampler():
    """Random valid systems: alpha, beta in [0, 10], variances in [0.01, 10]."""

    def draw(gen: np.random.Generator) -> rdl.SystemParams:
        return rdl.SystemParams(
            alpha=gen.uniform(0.0, 10.0),
            beta=gen.uniform(0.0, 10.0),
            sigma1_sq=gen.uniform(0.01, 10.0),
            sigma2_sq=gen.uniform(0.01, 10.0),
        )

    return draw
