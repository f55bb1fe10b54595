import pytest

from relaysec.model import TOPOLOGY_1, topology_to_stats, db_to_linear


@pytest.fixture(scope="session")
def stats_30db():
    """Reference topology at 30 dB transmit SNR."""
    return topology_to_stats(TOPOLOGY_1, db_to_linear(30.0))


@pytest.fixture(scope="session")
def stats_40db():
    return topology_to_stats(TOPOLOGY_1, db_to_linear(40.0))
