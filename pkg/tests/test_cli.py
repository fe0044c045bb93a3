import json
import subprocess
import sys

import pytest

from socineff.cli import main, parse_ns
from socineff.errors import InputError

ARROW = {"alternatives": ["x", "y", "z"], "utilities": [[1, "9/10", 0], [1, "9/10", 0], ["1/2", 1, 0]]}
IDENTICAL = {"objects": ["a", "b"], "utilities": [[1, 0], [1, "9/10"]]}
OPPOSED = {"objects": ["a", "b"], "utilities": [[1, 0], [0, 1]]}


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)

    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFrontier:
    def test_arrow(self, capsys, files):
        code, out, _ = run(capsys, "frontier", files("c.json", ARROW))
        assert code == 0
        assert out.splitlines()[0] == "efficient: x y"
        assert "dimension: 3" in out and out.endswith("\n")

    def test_single_alternative(self, capsys, files):
        code, out, _ = run(capsys, "frontier", files("c.json", {"alternatives": ["a"], "utilities": [[1]]}))
        assert code == 0 and out.startswith("efficient: a\n")

    def test_malformed(self, capsys, files):
        code, _, err = run(capsys, "frontier", files("c.json", '{"alternatives": ['))
        assert code == 2 and "line 1" in err

    def test_float_mode_needs_coerce_for_fractions(self, capsys, files):
        path = files("c.json", ARROW)
        assert run(capsys, "frontier", path, "--mode", "float")[0] == 2
        assert run(capsys, "frontier", path, "--mode", "float", "--coerce")[0] == 0

    def test_cap(self, capsys, files):
        assert run(capsys, "frontier", files("c.json", ARROW), "--cap", "2")[0] == 3


class TestInefficiency:
    @pytest.mark.parametrize("alt, expected", [("z", "7"), ("x", "0"), ("y", "1/3")])
    def test_arrow_points(self, capsys, files, alt, expected):
        code, out, _ = run(capsys, "inefficiency", files("c.json", ARROW), files("l.json", {alt: 1}))
        assert code == 0 and out == expected + "\n"

    def test_infinite_reports_witness(self, capsys, files):
        ctx = files("c.json", {"alternatives": ["M1", "M2"], "utilities": [[1, 0], [1, 0]]})
        code, out, _ = run(capsys, "inefficiency", ctx, files("l.json", {"M2": 1}))
        assert code == 0 and out.startswith("inf (individual 0")

    def test_unknown_alternative(self, capsys, files):
        code, _, err = run(capsys, "inefficiency", files("c.json", ARROW), files("l.json", {"w": 1}))
        assert code == 2 and "w" in err


class TestAxioms:
    def test_shifted(self, capsys):
        code, out, _ = run(capsys, "axioms", "shifted")
        assert code == 0
        assert "Feasibility: Fail" in out and out.count("Pass") == 6

    def test_bogus(self, capsys):
        assert run(capsys, "axioms", "bogus")[0] == 2


class TestAllocation:
    def test_rsd_exact(self, capsys, files):
        code, out, _ = run(capsys, "rsd", files("a.json", IDENTICAL))
        assert code == 0
        assert "a|b       1/2" in out and "b|a       1/2" in out
        assert out.endswith("inefficiency: 0\n")

    def test_rsd_guard(self, capsys, files):
        big = {"objects": [f"o{k}" for k in range(9)], "utilities": [list(range(9))] * 9}
        code, _, err = run(capsys, "rsd", files("a.json", big))
        assert code == 3 and "--samples" in err

    def test_rsd_sampling_needs_seed(self, capsys, files):
        assert run(capsys, "rsd", files("a.json", IDENTICAL), "--samples", "10")[0] == 2

    def test_rsd_sampled_is_reproducible(self, capsys, files):
        path = files("a.json", IDENTICAL)
        first = run(capsys, "rsd", path, "--samples", "500", "--seed", "1")
        assert first == run(capsys, "rsd", path, "--samples", "500", "--seed", "1")

    def test_ties_rejected(self, capsys, files):
        assert run(capsys, "rsd", files("a.json", {"objects": ["a", "b"], "utilities": [[1, 1], [0, 1]]}))[0] == 2

    @pytest.mark.parametrize("doc, expected", [(IDENTICAL, "b"), (OPPOSED, "a")])
    def test_min_pareto_match(self, capsys, files, doc, expected):
        code, out, _ = run(capsys, "min-pareto-match", files("a.json", doc), 0)
        assert code == 0 and out == expected + "\n"

    def test_min_pareto_match_bad_index(self, capsys, files):
        assert run(capsys, "min-pareto-match", files("a.json", IDENTICAL), 5)[0] == 2


class TestBounds:
    def test_lower(self, capsys):
        code, out, _ = run(capsys, "bounds", "lower", "--ns", "2..4", "--eps", "1e-3")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "n,eps,trials,seed,kind,value,se"
        assert len(lines) == 4
        assert lines[1] == "2,1/1000,2,0,exact,0,"

    def test_epsilon_guard(self, capsys):
        assert run(capsys, "bounds", "lower", "--ns", "2..3", "--eps", "1/2")[0] == 3

    def test_ur_eps_file_is_reproducible(self, capsys, tmp_path):
        outs = []
        for name in ("a.csv", "b.csv"):
            path = tmp_path / name
            args = ["bounds", "ur-eps", "--ns", "2..4", "--eps", "1/100", "--trials", "200", "--instances", "3", "--seed", "5"]
            assert run(capsys, *args, "--out", path)[0] == 0
            outs.append(path.read_bytes())
        assert outs[0] == outs[1] and outs[0].count(b"\n") == 4

    def test_ur_eps_needs_seed(self, capsys):
        assert run(capsys, "bounds", "ur-eps", "--ns", "2")[0] == 2


def test_report(capsys):
    code, out, _ = run(capsys, "report", "--ns", "2..3", "--instances", "2")
    assert code == 0 and "1/(2 ln 2): 0.721348" in out


def test_parse_ns():
    assert parse_ns("2..4") == [2, 3, 4]
    assert parse_ns("2,5") == [2, 5]
    with pytest.raises(InputError):
        parse_ns("two")


def test_module_entry_point(files):
    path = files("c.json", ARROW)
    proc = subprocess.run([sys.executable, "-m", "socineff", "frontier", path], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("efficient: x y")
