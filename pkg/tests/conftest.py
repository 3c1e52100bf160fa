import pytest

import spinscreen as ss


@pytest.fixture(scope="session")
def ref_params():
    return ss.screen_ranges(60, 90, 120, 110)


@pytest.fixture(scope="session")
def ref_oracle(ref_params):
    return ss.screen_oracle(ref_params)


@pytest.fixture(scope="session")
def ref_eig(ref_params):
    return ss.screen_by_eigensolve(ref_params)


@pytest.fixture(scope="session")
def big_params():
    return ss.screen_ranges(600, 900, 1200, 1100)


@pytest.fixture(scope="session")
def big_eig(big_params):
    return ss.screen_by_eigensolve(big_params)


def random_valid_quadruple(rng, two_j_max=40):
    while True:
        quad = tuple(rng.randint(0, two_j_max) for _ in range(4))
        if sum(quad) % 2:
            continue
        try:
            return ss.screen_ranges(*quad)
        except ss.EmptyScreen:
            continue


def random_lattice_point(rng, params):
    xs = params.x_lattice()
    ys = params.y_lattice()
    return int(rng.choice(xs)), int(rng.choice(ys))
