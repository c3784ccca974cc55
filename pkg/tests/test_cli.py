import json
import subprocess
import sys

import pytest

from srgkit.cli import dispatch
from srgkit.fixtures import fixture
from srgkit.graphs import encode_graph6, parse_graph6
from srgkit.hom_engine import classify_hom, HomKind
from srgkit.schemas import commands, validate_output


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("shrikhande", "rook4", "petersen"):
        p = tmp_path / f"{name}.g6"
        p.write_bytes(encode_graph6(fixture(name)) + b"\n")
        out[name] = str(p)
    batch = tmp_path / "batch.g6"
    batch.write_text("\n".join(encode_graph6(fixture(n)).decode() for n in ("rook4", "shrikhande", "petersen")))
    out["batch"] = str(batch)
    mixed = tmp_path / "mixed.g6"
    mixed.write_text("\n".join(encode_graph6(fixture(n)).decode() for n in ("rook4", "shrikhande", "petersen", "clebsch", "paley13")))
    out["mixed"] = str(mixed)
    return out


def run(capsys, *argv):
    code = dispatch(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    return code, json.loads(out) if out else None, err


class TestParams:
    def test_petersen(self, capsys):
        code, out, _ = run(capsys, "params", "10", "3", "0", "1")
        assert code == 0
        assert "hoffman bound 1-k/tau = 5/2" in out and "cosines alpha = -2/3, beta = 1/6" in out

    def test_infeasible(self, capsys):
        code, out, _ = run(capsys, "params", "10", "3", "1", "1")
        assert code == 1 and "3 != 6" in out

    def test_json(self, capsys):
        code, doc, _ = run_json(capsys, "params", "16", "10", "6", "6")
        assert code == 0 and doc["cosines"]["alpha"] == "-1/5"


class TestGraphCommands:
    def test_hom_first_is_a_coloring(self, capsys, files):
        code, out, _ = run(capsys, "hom", "--first", files["shrikhande"], files["rook4"])
        assert code == 0 and out.startswith("coloring:")
        phi = [int(t.split("->")[1]) for t in out.split(":", 1)[1].split()]
        assert classify_hom(fixture("shrikhande"), fixture("rook4"), phi) is HomKind.COLORING

    def test_hom_none(self, capsys, files):
        code, out, _ = run(capsys, "hom", "--count", files["rook4"], files["shrikhande"])
        assert code == 0 and out.strip() == "0 homomorphisms"

    def test_hom_verify(self, capsys, files):
        code, doc, _ = run_json(capsys, "hom", "--count", "--verify", files["shrikhande"], files["rook4"])
        assert code == 0
        validate_output("hom", doc)

    def test_fixture_round_trip(self, capsys):
        code, out, _ = run(capsys, "fixture", "clebsch")
        assert code == 0 and parse_graph6(out.strip()) == fixture("clebsch")

    def test_core_witness(self, capsys):
        code, out, _ = run(capsys, "core", "fixture:rook4")
        assert code == 0 and out.startswith("not a core")

    def test_cert_failure_exit_one(self, capsys, tmp_path):
        g = fixture("petersen")
        u, v = next(iter(g.edges()))
        from srgkit.graphs import Graph

        broken = Graph.from_edges(10, [e for e in g.edges() if e != (u, v)])
        path = tmp_path / "b.g6"
        path.write_bytes(encode_graph6(broken))
        code, _, _ = run(capsys, "cert", str(path), "--params", "10,3,0,1")
        assert code == 1

    def test_budget_exit_one(self, capsys):
        code, _, err = run(capsys, "solve", "--chromatic", "--budget", "3", "fixture:paley25")
        assert code == 1 and "budget" in err

    def test_stdin(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(encode_graph6(fixture("c5")) + b"\n")))
        code, out, _ = run(capsys, "verify", "-")
        assert code == 0 and "SRG(5,2,0,1)" in out


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [["bogus"], ["fixture", "nope"], ["verify", "/no/such/file"], ["params", "1", "2"], ["hom", "--budget", "0", "a", "b"]],
    )
    def test_exit_two(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2

    def test_unknown_fixture_message(self, capsys):
        _, _, err = run(capsys, "fixture", "nope")
        assert "unknown fixture nope" in err and "petersen" in err

    def test_bad_graph6(self, capsys, tmp_path):
        p = tmp_path / "bad.g6"
        p.write_text("C~~\n")
        assert run(capsys, "verify", str(p))[0] == 2

    def test_hasse_mixed(self, capsys, files):
        assert run(capsys, "hasse", files["mixed"])[0] == 2


class TestJson:
    @pytest.mark.parametrize(
        "argv",
        [
            ["params", "10", "3", "0", "1"],
            ["verify", "fixture:petersen"],
            ["cert", "fixture:petersen", "--coclique", "3,6,8,9"],
            ["theta", "fixture:rook4"],
            ["solve", "fixture:shrikhande"],
            ["core", "fixture:petersen"],
            ["hull", "fixture:rook4"],
            ["fixture", "--list"],
        ],
    )
    def test_validates(self, capsys, argv):
        code, doc, _ = run_json(capsys, *argv)
        assert doc is not None
        validate_output(argv[0], doc)

    def test_every_command_has_schema(self):
        assert set(commands()) >= {"params", "verify", "cert", "theta", "solve", "hom", "core", "hull", "classify", "hasse", "fixture"}

    def test_json_to_file(self, capsys, tmp_path):
        out = tmp_path / "o.json"
        code, _, _ = run(capsys, "theta", "fixture:petersen", "--json", str(out))
        assert code == 0 and json.loads(out.read_text())["value"] == "5/2"

    def test_classify_threads_deterministic(self, capsys, files):
        _, one, _ = run_json(capsys, "classify", files["mixed"])
        _, four, _ = run_json(capsys, "--threads", "4", "classify", files["mixed"])
        assert one == four
        assert one["histogram"] == {"A": 1, "B": 1, "C": 0, "X": 3, "undetermined": 0}


def test_hasse_output(capsys, files, tmp_path):
    out = tmp_path / "h.dot"
    code, text, _ = run(capsys, "hasse", files["batch"], "--out", str(out))
    assert code == 2  # petersen has other parameters
    code, text, _ = run(capsys, "classify", files["batch"], "--dot", str(out))
    assert code == 0 and out.read_text().count("digraph") == 2


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "srgkit", "params", "16", "6", "2", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "SRG(16,6,2,2) feasible" in res.stdout
