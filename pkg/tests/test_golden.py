import pytest

from golden_cases import build, kind
from conftest import GOLDEN

FIRST = build()
SECOND = build()
NAMES = sorted(p.name for p in GOLDEN.iterdir())


def test_golden_set_is_complete():
    assert sorted(FIRST) == NAMES


@pytest.mark.parametrize("name", NAMES)
def test_byte_stable(name):
    frozen = GOLDEN.joinpath(name).read_bytes()
    assert FIRST[name].encode() == SECOND[name].encode() == frozen


@pytest.mark.parametrize("name", [n for n in NAMES if kind(n)])
def test_round_trip(name):
    parse, serialize = kind(name)
    text = GOLDEN.joinpath(name).read_text()
    assert serialize(parse(text)) == text
