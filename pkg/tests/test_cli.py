import json
from fractions import Fraction

import pytest

from opalg import cli
from opalg.cli import Table
from opalg.store.entities import open_session
from opalg.store.repository import WeingartenRecordRepository


@pytest.fixture(autouse=True)
def no_database(monkeypatch):
    monkeypatch.delenv("OPALG_DB", raising=False)


def run(capsys, *argv):
    code = cli.dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_should_print_single_column_plainly(capsys):
    assert run(capsys, "partitions", "count", "--kind", "NC", "--k", "4") == (0, "14\n", "")


def test_should_write_csv_with_header(capsys):
    code, out, _ = run(capsys, "freeprob", "moments", "--law", "semicircle", "--K", "4", "--format", "csv")
    assert code == 0
    assert out == "k,moment\n1,0\n2,1\n3,0\n4,2\n"


def test_should_accept_global_options_before_command(capsys):
    code, out, _ = run(capsys, "--format", "json", "partitions", "count", "--kind", "P", "--k", "3")
    assert code == 0
    assert json.loads(out) == [{"count": 5}]


def test_should_write_json_document(capsys):
    code, out, _ = run(capsys, "wg", "matrix", "--cat", "O_N", "--k", "2", "--N", "3", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"basis": ["{1,2}"], "entries": [["1/3"]]}


def test_should_integrate_exactly(capsys):
    code, out, _ = run(capsys, "wg", "integrate", "--cat", "U_N", "--N", "3", "--rows", "1,1,1,1", "--cols", "1,1,1,1", "--colors", "oo**")
    assert (code, out) == (0, "1/6\n")


def test_should_return_usage_error(capsys):
    code, _, err = run(capsys, "partitions", "count", "--k", "4")
    assert code == 2
    assert "--kind" in err


def test_should_return_domain_error(capsys):
    code, out, err = run(capsys, "partitions", "count", "--kind", "XYZ", "--k", "4")
    assert code == 1
    assert out == ""
    assert err.startswith("opalg: error: Unknown partition class")


def test_should_apply_guard_overrides(capsys):
    code, _, err = run(capsys, "partitions", "count", "--kind", "P", "--k", "5", "--guard", "partitions=10")
    assert code == 1
    assert "partitions" in err


def test_should_reject_unknown_guard(capsys):
    code, _, err = run(capsys, "partitions", "count", "--kind", "P", "--k", "2", "--guard", "speed=1")
    assert code == 1
    assert "Unknown size guard" in err


def test_should_write_output_file(capsys, tmp_path):
    target = tmp_path / "dims.csv"
    code, out, _ = run(capsys, "tl", "dim", "--k", "3", "--format", "csv", "--output", str(target))
    assert (code, out) == (0, "")
    assert target.read_text() == "k,dimension\n0,1\n1,1\n2,2\n3,5\n"


def test_should_fail_when_inclusion_is_not_markov(capsys, tmp_path):
    source = tmp_path / "inclusion.json"
    source.write_text(json.dumps({"a": [1, 1], "m": [[1, 0], [1, 1]]}))
    code, _, _ = run(capsys, "graph", "markov", "--file", str(source))
    assert code == 1


def test_should_read_graph_file(capsys, tmp_path):
    source = tmp_path / "a3.json"
    source.write_text(json.dumps({"layerA": ["v1", "v3"], "layerB": ["v2"], "edges": [["v1", "v2", 1], ["v3", "v2", 1]], "root": "v1"}))
    code, out, _ = run(capsys, "graph", "poincare", "--file", str(source), "--order", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1:] == ["0,1", "1,1", "2,2", "3,4", "4,8"]


def test_should_count_fourier_planar_dimensions(capsys):
    code, out, _ = run(capsys, "hadamard", "pk", "--fourier", "2", "--k", "3", "--format", "json")
    assert code == 0
    assert [row["dimension"] for row in json.loads(out)][1:] == [1, 2, 4]


def test_should_require_database_for_history(capsys):
    code, _, err = run(capsys, "history")
    assert code == 1
    assert "--db" in err


def test_should_store_and_list_reproduce_runs(capsys, tmp_path):
    url = f"sqlite:///{tmp_path / 'results.db'}"
    code, out, _ = run(capsys, "reproduce", "catalan", "--db", url, "--format", "csv")
    assert code == 0
    assert out.startswith("criterion,passed,measured,expected\n")

    code, out, _ = run(capsys, "history", "--db", url, "--suite", "catalan", "--limit", "3", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 3
    assert [row["id"] for row in rows] == [33, 32, 31]
    assert {row["suite"] for row in rows} == {"catalan"}


@pytest.mark.parametrize(
    "value,text",
    [(Fraction(3, 4), "3/4"), (Fraction(2), "2"), (True, "true"), (0.5, "0.5"), (1 - 2j, "1-2i"), (3 + 0j, "3")],
)
def test_should_format_values(value, text):
    assert cli.format_value(value) == text


def test_should_align_pretty_columns():
    table = Table(["k", "value"], [[1, "a"], [10, "bb"]])
    assert cli.render(table, "pretty") == "k   value\n1   a\n10  bb\n"


def test_should_count_pairings_by_pairs(capsys):
    assert run(capsys, "partitions", "count", "--kind", "NC2", "--k", "8") == (0, "1430\n", "")
    assert run(capsys, "partitions", "count", "--kind", "P2", "--k", "2") == (0, "3\n", "")


def test_should_index_a_series_by_coxeter_number(capsys):
    code, out, _ = run(capsys, "graph", "t-series", "--ade", "A", "--n", "3", "--order", "6", "--format", "csv")
    assert code == 0
    assert [line.split(",")[1] for line in out.splitlines()[1:]] == ["1", "0", "-1", "1", "0", "-1", "1"]


def test_should_reject_degenerate_a_series(capsys):
    code, _, err = run(capsys, "graph", "t-series", "--ade", "A", "--n", "2")
    assert code == 1
    assert "n ≥ 3" in err


def test_should_persist_weingarten_matrices(capsys, tmp_path):
    url = f"sqlite:///{tmp_path / 'results.db'}"
    for _ in range(2):
        code, out, _ = run(capsys, "wg", "matrix", "--cat", "O_N^+", "--k", "4", "--N", "5", "--db", url, "--format", "json")
        assert code == 0

    session = open_session(url)
    try:
        records = WeingartenRecordRepository(session).find_all()
    finally:
        session.close()
    assert [(r.category, r.k, r.n) for r in records] == [("NC2", 4, 5)]


def test_should_store_unsigned_64_bit_seed(capsys, tmp_path):
    url = f"sqlite:///{tmp_path / 'results.db'}"
    seed = str(2**63)
    assert run(capsys, "reproduce", "catalan", "--seed", seed, "--db", url)[0] == 0

    code, out, _ = run(capsys, "history", "--db", url, "--limit", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["seed"] == seed


def test_should_reject_seed_out_of_range(capsys):
    code, _, err = run(capsys, "partitions", "count", "--kind", "P", "--k", "2", "--seed", str(2**64))
    assert code == 2
    assert "seed" in err
