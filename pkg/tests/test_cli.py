import json
import subprocess
import sys

import pytest

from malring.cli import EXIT_CAP, EXIT_CERT, EXIT_NONE, EXIT_OK, EXIT_PARSE, main
from malring.corpus import builtin, polygon
from malring.io import parse_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "--no-timing")
    return code, json.loads(out)


@pytest.fixture
def c5_file(tmp_path):
    p = tmp_path / "c5.txt"
    p.write_text(polygon(5).to_text())
    return str(p)


class TestBetti:
    def test_pentagon(self, capsys, c5_file):
        code, out, _ = run(capsys, "betti", c5_file)
        assert code == EXIT_OK
        assert "     3  5" in out and "     4  5" in out

    def test_json(self, capsys, c5_file):
        code, doc = run_json(capsys, "betti", c5_file)
        assert code == EXIT_OK and doc["result"]["betti"] == {"0": 1, "3": 5, "4": 5, "7": 1}
        assert doc["schema"] == 1 and doc["input"]["sha256"] == polygon(5).digest and "timing" not in doc

    def test_rp2_torsion_flagged(self, capsys):
        code, out, _ = run(capsys, "betti", "builtin:rp2", "--full")
        assert code == EXIT_OK and "Z/2  TORSION" in out
        code, doc = run_json(capsys, "betti", "builtin:rp2", "--full")
        assert doc["result"]["torsion"] == {"9": [2]}
        assert {"l": 2, "J": [1, 2, 3, 4, 5, 6], "rank": 0, "torsion": [2]} in doc["result"]["bigraded"]

    def test_malformed(self, capsys, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("m 3\n1 2 9\n")
        code, _, err = run(capsys, "betti", str(p))
        assert code == EXIT_PARSE and "parse error" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "betti", str(tmp_path / "nope.txt"))[0] == EXIT_PARSE

    def test_cap(self, capsys, tmp_path):
        p = tmp_path / "big.txt"
        assert run(capsys, "generate", "stacked", "2", "23", "-o", str(p))[0] == EXIT_OK
        assert run(capsys, "betti", str(p))[0] == EXIT_CAP

    def test_timing_present_by_default(self, capsys, c5_file):
        code, out, _ = run(capsys, "betti", c5_file, "--json")
        assert "decompose" in json.loads(out)["timing"]


class TestClassify:
    def test_cross_polytope(self, capsys):
        code, doc = run_json(capsys, "classify", "builtin:cross-polytope-4")
        assert code == EXIT_OK and doc["result"]["case"] == "CrossPolytope" and doc["result"]["verified"]

    def test_c5_join_triangle(self, capsys):
        code, out, _ = run(capsys, "classify", "builtin:c5-join-triangle")
        assert code == EXIT_NONE and "case: None" in out

    def test_torus_is_informational(self, capsys):
        code, doc = run_json(capsys, "classify", "builtin:torus7")
        assert code == EXIT_CERT and doc["result"]["case"] is None
        assert doc["result"]["informational"]["betti"]["0"] == 1

    def test_5dimex_text(self, capsys):
        code, out, _ = run(capsys, "classify", "builtin:5dimex")
        assert code == EXIT_OK and "(S^3xS^6)^#3 # (S^4xS^5)^#2" in out

    def test_deterministic_json(self, capsys):
        a = run(capsys, "classify", "builtin:c4-join-triangle", "--json", "--no-timing")[1]
        b = run(capsys, "classify", "builtin:c4-join-triangle", "--json", "--no-timing")[1]
        assert a == b


class TestOtherCommands:
    def test_chordal(self, capsys):
        code, doc = run_json(capsys, "chordal", "builtin:pentagon", "--full")
        assert doc["result"]["witness"] == [1, 2, 3, 4, 5] and doc["result"]["chordless_cycles"] == [[1, 2, 3, 4, 5]]

    def test_missing(self, capsys):
        code, doc = run_json(capsys, "missing", "builtin:c4-join-triangle")
        assert doc["result"]["missing_faces"]["1"] == [[1, 3], [2, 4]]
        assert doc["result"]["missing_edges"]["join_condition"] is True

    def test_certify(self, capsys):
        assert run(capsys, "certify", "builtin:octahedron")[0] == EXIT_OK
        code, out, _ = run(capsys, "certify", "builtin:rp2")
        assert code == EXIT_CERT and "Z/2" in out

    def test_predict(self, capsys):
        code, doc = run_json(capsys, "predict", "6", "3")
        assert doc["result"]["betti"] == {"0": 1, "3": 3, "4": 2, "5": 2, "6": 3, "9": 1}
        assert run(capsys, "predict", "3", "3")[0] == EXIT_PARSE

    def test_golod(self, capsys):
        code, doc = run_json(capsys, "golod-weak", "builtin:5dimex")
        assert doc["result"]["weak_min_non_golod"] is True and "Massey" in doc["result"]["note"]


class TestGenerate:
    def test_polygon(self, capsys):
        code, out, _ = run(capsys, "generate", "polygon", "5")
        assert out == polygon(5).to_text()

    def test_cross_polytope(self, capsys):
        K = parse_text(run(capsys, "generate", "cross_polytope", "4")[1]).complex
        assert K.m == 8 and len(K.facets) == 16 and K.dim == 3

    def test_builtin(self, capsys):
        assert run(capsys, "generate", "builtin", "5dimex")[1] == builtin("5dimex").to_text()

    def test_join(self, capsys, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        a.write_text(polygon(4).to_text())
        b.write_text(builtin("boundary-simplex-2").to_text())
        out = run(capsys, "generate", "join", str(a), str(b))[1]
        assert out == builtin("c4-join-triangle").to_text()

    def test_json_format(self, capsys):
        doc = json.loads(run(capsys, "generate", "stacked", "2", "2", "--seed", "4", "--format", "json")[1])
        assert doc["m"] == 6 and doc["schema"] == 1

    def test_bad_params(self, capsys):
        assert run(capsys, "generate", "builtin", "nonsense")[0] == EXIT_PARSE
        assert run(capsys, "generate", "polygon", "2")[0] == EXIT_PARSE


class TestCacheCommands:
    def test_admin(self, capsys, tmp_path):
        d = str(tmp_path / "cache")
        code, doc = run_json(capsys, "betti", "builtin:pentagon", "--cache", d)
        assert doc["cache"]["writes"] == 32
        code, doc = run_json(capsys, "betti", "builtin:pentagon", "--cache", d)
        assert doc["cache"]["hits"] == 32
        assert run_json(capsys, "cache", "verify", "--cache", d)[1]["result"]["corrupt"] == 0
        assert run_json(capsys, "cache", "stats", "--cache", d)[1]["result"]["records"] == 32
        assert run_json(capsys, "cache", "clear", "--cache", d)[1]["result"]["removed"] == 32
        assert run_json(capsys, "cache", "stats", "--cache", d)[1]["result"]["records"] == 0

    def test_env_var(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("MAL_CACHE_DIR", str(tmp_path))
        assert run_json(capsys, "cache", "stats")[1]["result"]["directory"] == str(tmp_path)

    def test_no_directory(self, capsys):
        assert run(capsys, "cache", "stats")[0] == EXIT_PARSE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "malring", "betti", "builtin:square", "--json", "--no-timing"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["betti"] == {"0": 1, "3": 2, "6": 1}
