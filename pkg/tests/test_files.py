"""On-disk formats: covers, block designs, word lists, solver logs."""

import io

import pytest

from jcover.constructions import cover_k2, cover_k3
from jcover.errors import FormatError, PreconditionError
from jcover.files import (
    cover_from_dict,
    cover_to_dict,
    load_blocks,
    load_cover,
    load_words,
    save_blocks,
    save_cover,
    save_words,
    write_solver_log,
)
from jcover.graph import GraphParams


def test_cover_roundtrip(tmp_path):
    cover = cover_k3(8)
    path = tmp_path / "cover.json"
    save_cover(cover, path)
    loaded = load_cover(path)
    assert loaded == cover


def test_cover_dict_shape():
    data = cover_to_dict(cover_k2(5))
    assert data["n"] == 5
    assert data["k"] == 2
    assert {c["type"] for c in data["cliques"]} == {"A", "B"}
    assert all(c["set"] == sorted(c["set"]) for c in data["cliques"])
    assert cover_from_dict(data) == cover_k2(5)


def test_cover_load_rejects_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 5, "k": 2,\n  "cliques": [,]\n}\n')
    with pytest.raises(FormatError) as err:
        load_cover(path)
    assert "line 2" in str(err.value)


def test_cover_load_rejects_bad_payload(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 5, "k": 2, "cliques": [{"type": "C", "set": [1]}]}\n')
    with pytest.raises(FormatError):
        load_cover(path)
    path.write_text('{"n": 5, "k": 2, "cliques": [{"type": "A", "set": [1, 2]}]}\n')
    with pytest.raises(FormatError):
        load_cover(path)  # A generator must have k-1 = 1 elements
    path.write_text('{"n": 5}\n')
    with pytest.raises(FormatError):
        load_cover(path)


def test_blocks_roundtrip(tmp_path):
    path = tmp_path / "design.txt"
    blocks = [(1, 2, 3), (1, 4, 5), (2, 4, 6)]
    save_blocks(7, blocks, path)
    v, s, loaded = load_blocks(path)
    assert (v, s) == (7, 3)
    assert loaded == [tuple(b) for b in blocks]
    with pytest.raises(PreconditionError):
        save_blocks(7, [], path)


def test_blocks_format_errors(tmp_path):
    path = tmp_path / "design.txt"
    path.write_text("")
    with pytest.raises(FormatError):
        load_blocks(path)
    path.write_text("7\n1 2 3\n")
    with pytest.raises(FormatError) as err:
        load_blocks(path)
    assert "line 1" in str(err.value)
    path.write_text("7 3\n1 2\n")
    with pytest.raises(FormatError) as err:
        load_blocks(path)
    assert "line 2" in str(err.value)
    path.write_text("7 3\n1 2 8\n")
    with pytest.raises(FormatError):
        load_blocks(path)
    path.write_text("7 3\n1 2 2\n")
    with pytest.raises(FormatError):
        load_blocks(path)
    path.write_text("7 3\n1 2 x\n")
    with pytest.raises(FormatError):
        load_blocks(path)
    path.write_text("7 3\n")
    with pytest.raises(FormatError):
        load_blocks(path)


def test_blocks_skips_blank_lines(tmp_path):
    path = tmp_path / "design.txt"
    path.write_text("\n5 2\n\n1 2\n\n3 4\n\n")
    v, s, blocks = load_blocks(path)
    assert (v, s, blocks) == (5, 2, [(1, 2), (3, 4)])


def test_words_roundtrip(tmp_path):
    path = tmp_path / "words.txt"
    words = [(1, 2, 3), (1, 4, 5), (2, 4, 6)]
    count = save_words(7, 3, words, path, convention="colex")
    assert count == 3
    params, convention, loaded = load_words(path)
    assert params == GraphParams(7, 3)
    assert convention == "colex"
    assert [w.elements for w in loaded] == [tuple(w) for w in words]


def test_words_format_errors(tmp_path):
    path = tmp_path / "words.txt"
    path.write_text("7 3 2 colex\n1 2 3\n")
    with pytest.raises(FormatError) as err:
        load_words(path)
    assert "promises 2" in str(err.value)
    path.write_text("7 3\n")
    with pytest.raises(FormatError):
        load_words(path)
    path.write_text("7 3 1 colex\n1 2\n")
    with pytest.raises(FormatError) as err:
        load_words(path)
    assert "line 2" in str(err.value)
    path.write_text("3 7 0 colex\n")
    with pytest.raises(FormatError):
        load_words(path)


def test_solver_log_format():
    stream = io.StringIO()
    write_solver_log(stream, [(0.0, 10, 5), (1.5, 8, 6)])
    assert stream.getvalue() == "0.000 10 5\n1.500 8 6\n"
