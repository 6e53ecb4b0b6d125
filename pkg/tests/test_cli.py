import json

import pytest

from chromagallai.cli import main
from chromagallai.graph import complete_graph, emit_graph6


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_avoids(files, capsys):
    g, c = files("c6.g6", "EBj?\n"), files("c6.col", "0 1 2 0 1 2\n")
    code, out, _ = run(capsys, "check", "--graph", g, "--coloring", c, "-l", "3")
    assert code == 0 and "avoids" in out


def test_check_witness(files, capsys):
    g, c = files("k6.g6", emit_graph6(complete_graph(6)) + "\n"), files("k6.col", "0 1 2 3 4 5\n")
    code, out, _ = run(capsys, "check", "--graph", g, "--coloring", c, "-l", "5", "--json")
    data = json.loads(out)
    assert code == 1 and not data["avoids"] and len(data["witness"]) == 6


def test_check_improper(files, capsys):
    g, c = files("k3.g6", "Bw\n"), files("k3.col", "0 0 1\n")
    code, _, err = run(capsys, "check", "--graph", g, "--coloring", c, "-l", "1")
    assert code == 2 and "0-1" in err


@pytest.mark.parametrize("text", ["Bx\n", "B\n", "3 1\n0 0\n"])
def test_malformed_graph(files, capsys, text):
    code, out, err = run(capsys, "feasible", "--graph", files("bad.txt", text), "--tree", "P_2")
    assert code == 2 and out == "" and err.startswith("error")


def test_missing_file_and_parameter(files, capsys):
    assert run(capsys, "check", "--graph", "/nonexistent", "--coloring", "/nonexistent", "-l", "2")[0] == 2
    g, c = files("k3.g6", "Bw\n"), files("k3.col", "0 1 2\n")
    assert run(capsys, "check", "--graph", g, "--coloring", c)[0] == 2


def test_feasible_json(files, capsys):
    code, out, _ = run(capsys, "feasible", "--graph", files("c6.g6", "EBj?\n"), "--tree", "P_3", "--json")
    assert code == 0 and json.loads(out) == {"feasible": True, "coloring": [0, 1, 2, 0, 1, 2]}


def test_tree_file(files, capsys):
    tree = files("s12.txt", "4\n0 1\n0 2\n1 3\n1 4\n")
    code, out, _ = run(capsys, "feasible", "--graph", files("k4.g6", "C~\n"), "--tree", tree, "--json")
    assert code == 0 and json.loads(out)["feasible"]


def test_witness_and_double_star(files, capsys):
    g, c = files("k6.g6", emit_graph6(complete_graph(6)) + "\n"), files("k6.col", "0 1 2 3 4 5\n")
    code, out, _ = run(capsys, "witness", "--graph", g, "--coloring", c, "-k", "2", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["path"]) == 6 and data["trace"]["k"] == 2
    code, out, _ = run(capsys, "double-star", "--graph", g, "--coloring", c, "-a", "2", "-b", "2", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["A"]) == 2 and len(data["B"]) == 2


def test_witness_precondition(files, capsys):
    g, c = files("c6.g6", "EBj?\n"), files("c6.col", "0 1 2 0 1 2\n")
    assert run(capsys, "witness", "--graph", g, "--coloring", c, "-k", "1")[0] == 2


def test_embed_tree(files, capsys):
    g = files("k8.g6", emit_graph6(complete_graph(8)) + "\n")
    c = files("k8.col", " ".join(map(str, range(8))) + "\n")
    code, out, _ = run(capsys, "embed-tree", "--graph", g, "--coloring", c, "--tree", "S_1,2", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["mapping"]) == 5


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "-n", "6", "--tree", "P_3", "--json")
    data = json.loads(out)
    assert code == 0 and data["value"] == 6 and data["pattern"] == "P_3"
    assert len(data["extremal"]) == 2


def test_enumerate_modes(capsys):
    code, out, _ = run(capsys, "enumerate", "-n", "5", "-k", "2")
    assert code == 0 and "value 10" in out
    code, out, _ = run(capsys, "enumerate", "-n", "7", "--classic", "cycles", "-l", "4", "--json")
    assert code == 0 and json.loads(out)["value"] == 9
    assert run(capsys, "enumerate", "-n", "9", "--tree", "P_3")[0] == 2
    assert run(capsys, "enumerate", "-n", "5")[0] == 2


def test_construct_writes_both_files(tmp_path, capsys):
    base = tmp_path / "two"
    code, out, _ = run(capsys, "construct", "--family", "cliques", "-n", "6", "-l", "3", "--out", str(base))
    assert code == 0
    assert (tmp_path / "two.g6").read_text().strip() == out.splitlines()[0]
    assert (tmp_path / "two.col").read_text().split() == ["0", "1", "2", "0", "1", "2"]


def test_construct_rejects_without_partial_output(tmp_path, capsys):
    base = tmp_path / "bad"
    code, _, _ = run(capsys, "construct", "--family", "cliques", "-n", "7", "-l", "3", "--out", str(base))
    assert code == 2 and list(tmp_path.iterdir()) == []


def test_json_is_byte_identical(capsys):
    first = run(capsys, "enumerate", "-n", "5", "--tree", "S_1,2", "--json")[1]
    second = run(capsys, "enumerate", "-n", "5", "--tree", "S_1,2", "--json", "--workers", "2")[1]
    assert first == second


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1", "3")
    assert code == 0
    assert out.count("[PASS]") == 2 and "2/2 criteria pass" in out


def test_verify_unknown_criterion(capsys):
    assert run(capsys, "verify", "--only", "42")[0] == 2


def test_unknown_tree_name(files, capsys):
    assert run(capsys, "feasible", "--graph", files("k3.g6", "Bw\n"), "--tree", "Q_9")[0] == 2
