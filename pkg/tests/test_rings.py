from pathlib import Path

import pytest

from frobkit import toric
from frobkit.errors import NotPointed, ParseError, ValidationError
from frobkit.rings import load_ring, parse_ring_spec, build_ring, registry_ring

RINGS = Path(__file__).resolve().parent.parent / "rings"


def test_registry_entries():
    A = registry_ring("A1", 3)
    assert A.cone.V == ((0, 1), (2, -1))
    Q = registry_ring("quadric3", 2)
    assert Q.cone.V == ((1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1))
    assert str(toric.class_group(registry_ring("poly4", 5))) == "0"


def test_cyclic_spec_matches_A1():
    R = build_ring(parse_ring_spec('[ring]\nname = "c"\nkind = "cyclic_quotient"\nn = 2\nd = 2\nweights = [1, 1]\np = 3\n'))
    assert toric.class_group(R) == toric.class_group(registry_ring("A1", 3))


@pytest.mark.parametrize("path", sorted(RINGS.glob("*.toml")))
def test_shipped_ring_files(path):
    R = load_ring(str(path))
    assert R.p in (2, 3)


def test_file_p_override():
    assert load_ring(str(RINGS / "A1.toml"), 5).p == 5


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_ring_spec('[ring]\nname = "x"\nkind = = "toric"\n')
    assert exc.value.line == 3 and exc.value.column is not None


@pytest.mark.parametrize("text,err", [
    ('[ring]\nname = "x"\nkind = "toric"\nfacet_normals = [[1, 0], [0, 1]]\np = 2\nextra = 1\n', ValidationError),
    ('[ring]\nname = "x"\nkind = "toric"\np = 2\n', ValidationError),
    ('[ring]\nname = "x"\nkind = "toric"\nfacet_normals = [[1, 0], [0, 1]]\np = 6\n', ValidationError),
    ('[ring]\nname = "x"\nkind = "weird"\np = 2\n', ValidationError),
    ('[other]\nname = "x"\n', ParseError),
])
def test_rejections(text, err):
    with pytest.raises(err):
        parse_ring_spec(text)


def test_cone_errors_forwarded():
    spec = parse_ring_spec('[ring]\nname = "x"\nkind = "toric"\nfacet_normals = [[1, 0, 0], [0, 1, 0]]\np = 2\n')
    with pytest.raises(NotPointed):
        build_ring(spec)


def test_registry_needs_p():
    with pytest.raises(ValidationError):
        load_ring("A1")
    with pytest.raises(ValidationError):
        load_ring("nope", 2)
