import json

import pytest

from src.ingest import ParseError, corpus_semigroup, ingest, parse_cayley
from src.semigroup_core import NotInverse, ValidationError, cyclic_group, to_cayley_json


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return path


def test_cayley_json_of_cyclic_group(tmp_path):
    path = write(tmp_path, "c3.json", to_cayley_json(cyclic_group(3)))
    S = ingest(path)
    assert S == cyclic_group(3)


def test_cayley_json_without_labels(tmp_path):
    path = write(tmp_path, "c2.json", {"table": [[0, 1], [1, 0]]})
    S = ingest(path, format="cayley")
    assert S.name == "c2"
    assert S.elements == ("0", "1")


def test_generator_json(tmp_path):
    path = write(tmp_path, "gens.json", {"degree": 2, "generators": [[2, 1], [1, None]]})
    assert ingest(path).size == 7


def test_ragged_table():
    with pytest.raises(ParseError) as info:
        parse_cayley({"table": [[0, 1], [1]]})
    assert info.value.field == "table"


def test_invalid_json_reports_position(tmp_path):
    path = write(tmp_path, "bad.json", '{"table": [[0, 1],\n [1, 0]')
    with pytest.raises(ParseError) as info:
        ingest(path)
    assert info.value.source.startswith(f"{path}:2:")


@pytest.mark.parametrize("data", [[1, 2], {"elements": ["a"]}])
def test_unrecognised_layout(tmp_path, data):
    with pytest.raises(ParseError):
        ingest(write(tmp_path, "odd.json", data))


def test_bad_generator_images(tmp_path):
    path = write(tmp_path, "gens.json", {"degree": 2, "generators": [[1, 1]]})
    with pytest.raises(ParseError) as info:
        ingest(path)
    assert info.value.field == "generators"


def test_undecodable_file(tmp_path):
    path = tmp_path / "binary.json"
    path.write_bytes(b"\xff{")
    with pytest.raises(ParseError) as info:
        ingest(path)
    assert info.value.source == f"{path}:byte 0"


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        ingest(tmp_path / "absent.json")


def test_table_that_is_not_inverse(tmp_path):
    path = write(tmp_path, "lz.json", {"table": [[0, 0], [1, 1]]})
    with pytest.raises(ValidationError):
        ingest(path)


def test_corpus_names():
    assert corpus_semigroup("max_semilattice:3").size == 3
    assert corpus_semigroup("brandt:2").size == 5
    assert corpus_semigroup("meet_semilattice_nondirected").size == 3


@pytest.mark.parametrize("label", ["nothing:1", "max_semilattice:x", "max_semilattice",
                                  "meet_semilattice_nondirected:2"])
def test_bad_corpus_names(label):
    with pytest.raises(ParseError):
        corpus_semigroup(label)


def test_non_inverse_corpus_member():
    with pytest.raises(NotInverse):
        corpus_semigroup("truncated_add_monoid:2")
