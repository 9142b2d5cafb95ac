import pytest

from milnortc import gf2


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the GF(2) kernels up front so timed tests exclude JIT cost."""
    gf2.warmup()
