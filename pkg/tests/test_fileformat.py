from __future__ import annotations

import pytest
from hypothesis import given

from detachkit import constructions as C
from detachkit.errors import ParseError
from detachkit.fileformat import format_matroid, parse_graph_text, parse_matroid, parse_matroid_text, write_matroid
from detachkit.isomorphism import is_isomorphic
from strategies import small_matroids

FANO_TEXT = """\
MATROID fano N=7 R=3   # the Fano plane
MATRIX GF(2)
1 0 0 1 1 0 1
0 1 0 1 0 1 1
0 0 1 0 1 1 1
"""


@given(small_matroids())
def test_format_parse_round_trip(M):
    back = parse_matroid_text(format_matroid(M))
    assert back == M
    assert (back.table == M.table).all()


def test_labels_survive():
    F = C.fano()
    back = parse_matroid_text(format_matroid(F))
    assert back.labels == F.labels and back.name == "F7"


def test_fano_matrix_file():
    M = parse_matroid_text(FANO_TEXT)
    assert (M.n, M.r) == (7, 3)
    assert is_isomorphic(M, C.fano())
    assert not is_isomorphic(parse_matroid_text(FANO_TEXT.replace("GF(2)", "GF(3)")), C.fano())


def test_graph_section(tmp_path):
    G = C.wheel_graph(3)
    W = C.graphic(G)
    text = format_matroid(W, G)
    assert "GRAPH" in text
    back = parse_matroid_text(text)
    assert back == W and back.labels == W.labels
    spec = parse_graph_text(text)
    assert spec.edges == G.edges
    p = tmp_path / "w3.mat"
    write_matroid(W, p, G)
    assert parse_matroid(p) == W


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("", 1, 1),
        ("MATROID x N=3\nBASES\n0 1\n", 1, 1),
        ("MATROID x N=3 R=2\nBASES\n0 q\n", 3, 3),
        ("MATROID x N=3 R=2\nBASES\n0 7\n", 3, 3),
        ("MATROID x N=3 R=2\nBASES\n0 0\n", 3, 3),
        ("MATROID x N=3 R=2\nBASES\n0 1 2\n", 3, 1),
        ("MATROID x N=3 R=2\n\nBASES\n0 1\n0 1\n", 5, 1),
        ("MATROID x N=3 R=2\nSTUFF\n", 2, 1),
        ("MATROID x N=3 R=2\nMATRIX GF(4)\n1 0 1\n0 1 1\n", 2, 1),
        ("MATROID x N=3 R=2\nMATRIX GF(2)\n1 0 1\n", 3, 1),
        ("MATROID x N=3 R=2\nLABELS a b\nBASES\n0 1\n", 2, 1),
        ("MATROID x N=4 R=2\nBASES\n0 1\n2 3\n", 3, 1),
    ],
)
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_matroid_text(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_non_ascii_file(tmp_path):
    p = tmp_path / "bad.mat"
    p.write_bytes("MATROID x N=2 R=1\nBASES\n0\n1 é\n".encode())
    with pytest.raises(ParseError) as info:
        parse_matroid(p)
    assert info.value.line == 4


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_matroid(tmp_path / "nope.mat")
