import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cantorhaar.radix import RadixSystem  # noqa: E402

TEST_SYSTEMS = {
    "binary": RadixSystem.constant(2),
    "ternary": RadixSystem.constant(3),
    "alt23": RadixSystem.periodic(2, 3),
    "pre527": RadixSystem((5, 2, 7), (2,)),
}


def levels_upto(system: RadixSystem, cap: int):
    """Levels n >= 1 with |C_n| <= cap."""
    n = 1
    while system.size(n) <= cap:
        yield n
        n += 1


@pytest.fixture(params=sorted(TEST_SYSTEMS))
def system(request):
    return TEST_SYSTEMS[request.param]


@pytest.fixture
def sys23():
    return RadixSystem((2, 3), (2,))


@pytest.fixture
def bin2():
    return RadixSystem.constant(2)
