import io
import json
import subprocess
import sys

import pytest

from conftest import DEMO_GRAPHS
from enrichedcurves.cli import load_ces_dump, load_es_dump, main
from enrichedcurves.specfile import SpecError, dump_spec, parse_spec

TRI = str(DEMO_GRAPHS / "triangle.json")
TWO = str(DEMO_GRAPHS / "two_gon.json")
ONE = str(DEMO_GRAPHS / "single_vertex.json")
LOOP_SPEC = '{"vertices": ["u"], "edges": [{"id": "l", "ends": ["u", "u"], "label": "x"}]}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


class TestAnalyze:
    def test_2gon(self, capsys):
        doc = run_json(capsys, "analyze", TWO)
        assert doc["N"]["value"] == 1 and len(doc["relative_components"]) == 2 and len(doc["hemispheres"]) == 2

    def test_loop(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO(LOOP_SPEC))
        doc = run_json(capsys, "analyze", "-")
        assert doc["N"]["value"] == 0 and doc["hemispheres"] == [] and doc["loops"] == 1

    def test_triangle_text(self, capsys):
        code, out, _ = run(capsys, "analyze", TRI)
        assert code == 0 and "N: 2" in out and "hemispheres (6)" in out


class TestCount:
    def test_es_2gon(self, capsys):
        assert run(capsys, "count", TWO, "--kind", "es", "--q", "5")[1].strip() == "4"

    def test_ces_2gon(self, capsys):
        assert run(capsys, "count", TWO, "--kind", "ces", "--q", "5")[1].strip() == "6"

    def test_gamma_triangle(self, capsys):
        assert run(capsys, "count", TRI, "--kind", "gamma-es", "--q", "3", "--point", "a_unit")[1].strip() == "0"
        assert run(capsys, "count", TRI, "--kind", "gamma-es", "--q", "3", "--units", "a", "--gamma", "a")[1].strip() == "2"

    def test_errors(self, capsys):
        assert run(capsys, "count", TWO, "--kind", "es", "--q", "6")[0] == 2
        assert run(capsys, "count", TRI, "--kind", "es", "--q", "3", "--point", "nowhere")[0] == 2
        assert run(capsys, "count", TRI, "--kind", "gamma-es", "--q", "3", "--gamma", "zz")[0] == 2
        # the chart contracting a does not contain the closed point
        assert run(capsys, "count", TRI, "--kind", "gamma-es", "--q", "3", "--gamma", "a")[0] == 2
        assert run(capsys, "count", "/nonexistent.json", "--kind", "es", "--q", "3")[0] == 2

    def test_enumeration_round_trip(self, capsys):
        spec = parse_spec(open(TRI).read())
        g = spec.lg.graph
        es = run_json(capsys, "count", TRI, "--kind", "es", "--q", "5", "--enumerate")
        assert es["count"] == len(es["items"]) == 16
        assert len({load_es_dump(g, 5, d) for d in es["items"]}) == 16
        ces = run_json(capsys, "count", TRI, "--kind", "ces", "--q", "3", "--enumerate")
        assert len({load_ces_dump(g, 3, d) for d in ces["items"]}) == ces["count"]

    def test_corrupted_dump_rejected(self, capsys):
        spec = parse_spec(open(TWO).read())
        doc = run_json(capsys, "count", TWO, "--kind", "ces", "--q", "3", "--enumerate")["items"][0]
        doc["hemispheres"][0]["coords"] = [1, 0]
        doc["hemispheres"][1]["coords"] = [0, 1]
        with pytest.raises(ValueError):
            load_ces_dump(spec.lg.graph, 3, doc)

    def test_jobs_env_and_determinism(self, capsys, monkeypatch):
        a = run(capsys, "count", TRI, "--kind", "ces", "--q", "3", "--enumerate")[1]
        monkeypatch.setenv("ENRICHED_JOBS", "2")
        b = run(capsys, "count", TRI, "--kind", "ces", "--q", "3", "--enumerate")[1]
        c = run(capsys, "count", TRI, "--kind", "ces", "--q", "3", "--enumerate", "--jobs", "3")[1]
        assert a == b == c


class TestAtlas:
    def test_triangle_grid(self, capsys):
        doc = run_json(capsys, "atlas", TRI, "--q", "3")
        assert len(doc["charts"]) == 8 and len(doc["points"]) == 8
        assert doc["charts"][0]["cells"][0]["count"] == 4

    def test_2gon_grid(self, capsys):
        doc = run_json(capsys, "atlas", TWO, "--q", "2")
        assert len(doc["charts"]) == 4 and len(doc["points"]) == 4

    def test_single_vertex(self, capsys):
        doc = run_json(capsys, "atlas", ONE, "--q", "2")
        assert [[c["count"] for c in r["cells"]] for r in doc["charts"]] == [[1]]

    def test_byte_identical(self, capsys):
        a = run(capsys, "atlas", TRI, "--q", "3")[1]
        b = run(capsys, "atlas", TRI, "--q", "3")[1]
        assert a == b


class TestSpecParsing:
    def test_line_context(self):
        text = '{\n  "vertices": ["u"],\n  "edges": [\n    {"id": "e", "ends": ["u", "w"]}\n  ]\n}'
        with pytest.raises(SpecError) as exc:
            parse_spec(text)
        assert exc.value.line == 4

    def test_bad_json(self):
        with pytest.raises(SpecError) as exc:
            parse_spec('{"vertices": [\n"u",\n}')
        assert exc.value.line == 3

    def test_duplicates_and_labels(self):
        with pytest.raises(SpecError):
            parse_spec('{"vertices": ["u", "u"]}')
        with pytest.raises(SpecError):
            parse_spec('{"vertices": ["u"], "edges": [{"id": "l", "ends": ["u", "u"], "label": ""}]}')
        with pytest.raises(SpecError):
            parse_spec('{"vertices": ["u"], "points": {"p": ["nope"]}}')

    def test_default_label_and_round_trip(self):
        spec = parse_spec('{"vertices": ["u", "v"], "edges": [{"id": "e", "ends": ["u", "v"]}]}')
        assert spec.lg.label["e"] == "e"
        again = parse_spec(dump_spec(spec.lg, spec.points))
        assert again.lg == spec.lg

    def test_validation_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO('{"vertices": 3}'))
        code, _, err = run(capsys, "analyze")
        assert code == 2 and "line" in err


def test_selftest_prints_seed(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "7", "--count", "5")
    assert code == 0 and out.startswith("seed: 7")


def test_console_script():
    out = subprocess.run(
        [sys.executable, "-m", "enrichedcurves.cli", "count", TWO, "--kind", "es", "--q", "7"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "6"
