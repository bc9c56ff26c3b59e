import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hstarlab import formats
from hstarlab.constructions import trinomial_family, white_cayley_group
from hstarlab.core_lattice import LatticeSimplex, random_simplex
from hstarlab.errors import DegenerateSimplexError, ParseError
from hstarlab.simplex_group import SimplexGroup, canonical_form, group_of_simplex


@given(st.integers(1, 5), st.integers(0, 10**6), st.sampled_from(["text", "json"]))
def test_simplex_roundtrip(d, seed, fmt):
    S = random_simplex(d, random.Random(seed))
    text = formats.write_simplex(S, fmt)
    T = formats.read_simplex(text)
    assert T == S
    assert formats.write_simplex(T, fmt) == text


@given(st.integers(1, 4), st.integers(0, 10**6), st.sampled_from(["text", "json"]),
       st.booleans())
def test_group_roundtrip(d, seed, fmt, canonical):
    G = group_of_simplex(random_simplex(d, random.Random(seed), bound=3))
    text = formats.write_group(G, fmt, canonical=canonical)
    H = formats.read_group(text)
    assert H == (canonical_form(G) if canonical else G)
    assert formats.write_group(H, fmt) == text


def test_group_text_layout():
    G = trinomial_family("b:2:2:3")
    assert formats.group_to_text(G) == (
        "8 2\n1 0 1 0 1 0 1 0\n0 1 1 0 0 1 1 0\n1 1 1 1 1 1 1 1\n")
    assert formats.group_to_json(white_cayley_group(2, 5, (1, 2))) == (
        '{"len": 4, "den": 5, "generators": [[1, 4, 2, 3]]}\n')
    assert formats.group_to_text(SimplexGroup.from_generators([], den=1, n=3)) == "3 1\n"


def test_simplex_text_layout():
    S = LatticeSimplex([(0, 0), (3, 0), (0, 3)])
    assert formats.simplex_to_text(S) == "0 0\n3 0\n0 3\n"
    assert formats.simplex_to_json(S) == '{"dim": 2, "vertices": [[0, 0], [3, 0], [0, 3]]}\n'


def test_comments_and_blank_lines():
    S = formats.read_simplex("# triangle\n0 0\n\n3 0  # right\n0 3\n")
    assert S.vertices == ((0, 0), (3, 0), (0, 3))


@pytest.mark.parametrize("text", [
    "", "0 x\n1 0\n0 1\n", '{"dim": 3, "vertices": [[0,0],[1,0],[0,1]]}',
    '{"vertices": [[0, 0.5], [1, 0], [0, 1]]}', "{not json", '{"dim": 1}',
])
def test_bad_simplices(text):
    with pytest.raises(ParseError):
        formats.read_simplex(text)


def test_degenerate_simplex_file():
    with pytest.raises(DegenerateSimplexError):
        formats.read_simplex("0 0\n1 1\n2 2\n")


@pytest.mark.parametrize("text", [
    "", "3\n1 1 1\n", "3 3\n1 1\n", "0 2\n", '{"den": 2}', '{"len": 2, "den": 2, "generators": [[1.5, 0]]}',
])
def test_bad_groups(text):
    with pytest.raises(ParseError):
        formats.read_group(text)
