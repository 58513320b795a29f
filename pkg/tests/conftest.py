import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from morsepeak import MorseSet, extract_critical_points

E1_SAMPLES = [(0, 0), (1, 3), (2, 1), (3, 5), (4, 0.5), (5, 2), (6, 0)]


@pytest.fixture
def e1() -> MorseSet:
    return extract_critical_points(E1_SAMPLES)[0]


@pytest.fixture
def lone_peak() -> MorseSet:
    return MorseSet.build([(1, 4)], [(0, 0), (2, 0)])


@pytest.fixture
def mirrored_pair() -> tuple[MorseSet, MorseSet]:
    f = MorseSet.build([(1, 5), (3, 3)], [(0, 0), (2, 1), (4, 0)])
    g = MorseSet.build([(3, 5), (1, 3)], [(0, 0), (2, 1), (4, 0)])
    return f, g
