import random

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--property-seed", type=int, default=20240601,
        help="seed for the randomized property suites")


@pytest.fixture
def property_rng(request):
    return random.Random(request.config.getoption("--property-seed"))
