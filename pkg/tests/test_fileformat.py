import pytest

from conftest import projective_k4, random_rotation_system
from surfwalk.errors import ParseError
from surfwalk.fileformat import parse_rotation_system, serialize_rotation_system

PROJECTIVE_K4_FILE = """\
# K4 on the projective plane
vertices 4
edge 0 1 1
edge 0 2 0
edge 0 3 0
edge 1 2 0
edge 1 3 0
edge 2 3 0
rotation 0: 1 2 3
rotation 1: 0 3 2
rotation 2: 0 1 3
rotation 3: 0 2 1
"""


def test_parse_projective_k4():
    rs = parse_rotation_system(PROJECTIVE_K4_FILE)
    assert rs == projective_k4()


def test_round_trip(rng):
    for _ in range(15):
        rs = random_rotation_system(rng)
        again = parse_rotation_system(serialize_rotation_system(rs))
        assert again.graph == rs.graph
        assert again == rs


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_rotation_system(PROJECTIVE_K4_FILE.replace("edge 0 1 1", "edge 0 1 7"))
    assert err.value.line == 3

    with pytest.raises(ParseError):
        parse_rotation_system(PROJECTIVE_K4_FILE.replace("rotation 3: 0 2 1", ""))

    with pytest.raises(ParseError):
        parse_rotation_system("vertices 3\nedge 0 1 0\nedge 1 2 0\n")

    with pytest.raises(ParseError):
        parse_rotation_system(PROJECTIVE_K4_FILE.replace("rotation 0: 1 2 3", "rotation 0: 1 2 2"))

    with pytest.raises(ParseError):
        parse_rotation_system(PROJECTIVE_K4_FILE + "wibble 3\n")


def test_parse_rejects_malformed_rotation_line():
    broken = PROJECTIVE_K4_FILE.replace("rotation 0: 1 2 3", "rotation 0 1 2 3")
    with pytest.raises(ParseError):
        parse_rotation_system(broken)
