"""Wire formats, cache, figures, and the command-line surface."""

import json
import os

import pytest

from conftest import necklace_of
from positroid_lab import exchange_graph, initial_maximal_collection, tiling
from positroid_lab.cache import cache_get, cache_put
from positroid_lab.classify import classify_prime_vmf
from positroid_lab.cli import main
from positroid_lab import serialize


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("POSITROID_LAB_CACHE", str(tmp_path / "cache"))


def test_collection_json_round_trip():
    coll = initial_maximal_collection(necklace_of("34512"))
    doc = serialize.collection_document(coll)
    text = serialize.emit_json(doc)
    back = serialize.collection_from_document(serialize.parse_json(text))
    assert back.sets == coll.sets
    assert serialize.emit_json(serialize.collection_document(back)) == text


def test_necklace_json_round_trip():
    nk = necklace_of("351624")
    text = serialize.emit_json(serialize.necklace_document(nk))
    back = serialize.necklace_from_document(serialize.parse_json(text))
    assert back.sets == nk.sets


def test_graph_document_mirrors_adjacency():
    g = exchange_graph(necklace_of("34512"))
    doc = serialize.graph_document(g)
    assert doc["order"] == 5
    assert sorted(doc["adjacency"]) == ["1", "2", "3", "4", "5"]
    assert all(len(v) == 2 for v in doc["adjacency"].values())


def test_dot_output():
    g = exchange_graph(necklace_of("3412"))
    dot = serialize.emit_dot(g)
    assert dot.startswith("graph exchange {")
    assert "0 -- 1;" in dot
    empty = serialize.emit_dot(exchange_graph(necklace_of("312")))
    assert "--" not in empty


def test_csv_columns():
    rows = classify_prime_vmf(1)
    text = serialize.emit_csv(rows)
    lines = text.strip().splitlines()
    assert lines[0] == "Interior Size,Equivalence Class,Exchange Graph Order,Exchange Graph"
    assert lines[1] == "1,3412,2,B"


def test_svg_structure_counts():
    t = tiling(initial_maximal_collection(necklace_of("3412")))
    svg = serialize.emit_svg(t)
    structure = serialize.svg_structure(svg)
    assert structure == {"whiteFaces": 2, "blackFaces": 2, "vertices": 5}


def test_svg_deterministic():
    t = tiling(initial_maximal_collection(necklace_of("34512")))
    assert serialize.emit_svg(t) == serialize.emit_svg(t)


def test_set_list_parsing():
    masks = serialize.parse_set_list("1 3,2 4", 4)
    assert masks == [0b0101, 0b1010]
    with pytest.raises(Exception):
        serialize.parse_set_list("1 3,,", 4)


def test_cache_round_trip():
    assert cache_get("missing") is None
    entry = cache_put("key1", {"hello": [1, 2, 3]})
    assert entry.value == {"hello": [1, 2, 3]}
    hit = cache_get("key1")
    assert hit is not None and hit.value == {"hello": [1, 2, 3]}


def test_cache_version_mismatch(tmp_path, monkeypatch):
    monkeypatch.setenv("POSITROID_LAB_CACHE", str(tmp_path / "c2"))
    cache_put("k", {"v": 1})
    from positroid_lab import cache as cache_mod

    path = cache_mod._path_for("k")
    with open(path) as f:
        raw = json.load(f)
    raw["formatVersion"] = 999
    with open(path, "w") as f:
        json.dump(raw, f)
    assert cache_get("k") is None


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_necklace_and_perm_round_trip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "necklace", "351624")
    assert code == 0
    doc_path = tmp_path / "necklace.json"
    doc_path.write_text(out)
    code, out, _ = run_cli(capsys, "perm", str(doc_path))
    assert code == 0 and out.strip() == "351624"


def test_cli_enumerate_json_and_dot(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "3412", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["order"] == 2 and doc["permutation"] == "3412"
    code, out2, _ = run_cli(capsys, "enumerate", "3412", "--json")
    assert out2 == out  # cache hit keeps bytes identical
    code, dot, _ = run_cli(capsys, "enumerate", "3412", "--dot")
    assert code == 0 and dot.startswith("graph exchange {")


def test_cli_equiv(capsys):
    code, out, _ = run_cli(capsys, "equiv", "365124")
    doc = json.loads(out)
    assert code == 0
    assert {"451632", "465213", "541623"} <= set(doc["members"])
    assert doc["orbitSize"] == len(doc["members"])


def test_cli_decompose(capsys):
    code, out, _ = run_cli(capsys, "decompose", "34512")
    doc = json.loads(out)
    assert code == 0 and doc["prime"] and doc["parts"] and not doc["chords"]


def test_cli_tiling_files(capsys, tmp_path):
    svg_path = tmp_path / "t.svg"
    png_path = tmp_path / "t.png"
    code, _, _ = run_cli(
        capsys, "tiling", "3412", "--svg", str(svg_path), "--png", str(png_path)
    )
    assert code == 0
    svg = svg_path.read_text()
    assert serialize.svg_structure(svg) == {"whiteFaces": 2, "blackFaces": 2, "vertices": 5}
    assert png_path.stat().st_size > 0


def test_cli_classify_report_path(capsys, tmp_path):
    csv_path = tmp_path / "rows.csv"
    json_path = tmp_path / "report.json"
    figures = tmp_path / "figures"
    code, _, _ = run_cli(
        capsys, "classify", "--interior", "1",
        "--csv", str(csv_path), "--json", str(json_path), "--figures", str(figures),
    )
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == serialize.CSV_HEADER and lines[1].startswith("1,3412")
    report = json.loads(json_path.read_text())
    assert report["interior"] == 1
    assert report["catalanMax"] == 2
    assert report["pass"] is True
    assert sorted(os.listdir(figures)) == ["B.png"]


def test_cli_cconstant(capsys):
    code, out, _ = run_cli(capsys, "cconstant", "34512", "--drop", "1 3")
    doc = json.loads(out)
    assert code == 0
    assert doc["codimension"] == 1
    assert doc["order"] in (1, 2)


def test_cli_verify_pass_and_fail_codes(capsys):
    code, out, _ = run_cli(capsys, "verify", "catalan", "--interior-max", "2")
    assert code == 0 and json.loads(out)["pass"] is True
    code, out, _ = run_cli(capsys, "verify", "theorems", "--interior-max", "2")
    assert code == 0


def test_cli_error_exit_codes(capsys):
    assert run_cli(capsys, "enumerate", "9999")[0] == 2
    assert run_cli(capsys, "enumerate", "1234")[0] == 2
    assert run_cli(capsys, "enumerate", "3456712", "--budget", "3")[0] == 2
    code, _, err = run_cli(capsys, "cconstant", "34512", "--drop", "2 4")
    assert code == 2 and "initial collection" in err
    assert run_cli(capsys, "cconstant", "34512", "--drop", "x y")[0] == 2
    assert run_cli(capsys, "perm", "{not json")[0] == 2
