import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from dlforest.cli import main, report_dict, run, sweep
from dlforest.config import ConfigError, load_config
from dlforest.model import UndeclaredEntityError

DATA = resources.files("dlforest.data")


@pytest.fixture()
def workdir(tmp_path):
    """Config + ontology copied side by side, as users lay them out."""
    (tmp_path / "university.ofn").write_text(
        DATA.joinpath("university.ofn").read_text()
    )
    (tmp_path / "university.conf").write_text(
        DATA.joinpath("university.conf").read_text()
    )
    (tmp_path / "sweep.conf").write_text(
        DATA.joinpath("university_sweep.conf").read_text()
    )
    return tmp_path


def write_conf(tmp_path, body: str) -> Path:
    p = tmp_path / "run.conf"
    p.write_text(body)
    return p


class TestLoadConfig:
    def test_minimal_defaults(self, workdir):
        p = write_conf(
            workdir,
            'ks.file = "university.ofn"\n'
            "lp.positiveExamples = { :alice, :bob }\n"
            "lp.negativeExamples = { :carol }\n",
        )
        cfg = load_config(p)
        assert cfg.algorithm == "fm"
        assert cfg.nb_trees == 2
        assert cfg.heuristic == "ht1"
        assert cfg.seed == 0
        assert cfg.start_classes == []

    def test_full_config(self, workdir):
        cfg = load_config(workdir / "university.conf")
        assert cfg.algorithm == "fm"
        assert cfg.nb_trees == 2
        assert cfg.stop_on_perfect is True
        assert cfg.max_refinements == 500

    def test_unknown_key(self, workdir):
        p = write_conf(workdir, 'ks.file = "university.ofn"\nalg.bogus = 2\n')
        with pytest.raises(ConfigError, match="unknown key"):
            load_config(p)

    def test_missing_ontology_key(self, workdir):
        p = write_conf(workdir, "alg.seed = 2\n")
        with pytest.raises(ConfigError, match="ks.file"):
            load_config(p)

    def test_bad_value_reports_line(self, workdir):
        p = write_conf(workdir, 'ks.file = "university.ofn"\nalg.nbTrees = many\n')
        with pytest.raises(ConfigError, match="run.conf:2"):
            load_config(p)

    def test_weight_overrides(self, workdir):
        p = write_conf(
            workdir,
            'ks.file = "university.ofn"\n'
            "lp.positiveExamples = { :alice }\n"
            "lp.negativeExamples = { :carol }\n"
            "h.startBonus = 0.9\n"
            "h.beta = 0.2\n"
            "h.alpha = 0.01\n"
            "h.f1Hi = 0.9\n",
        )
        cfg = load_config(p)
        assert cfg.ht1.start_bonus == 0.9
        assert cfg.ht1.beta == 0.2
        assert cfg.fh1.alpha == 0.01
        assert cfg.fh1.hi == 0.9

    def test_operator_toggles(self, workdir):
        cfg = load_config(workdir / "sweep.conf")
        assert cfg.refinement.use_negation is False
        assert cfg.refinement.use_cardinality is False

    def test_unresolved_individual(self, workdir):
        p = write_conf(
            workdir,
            'ks.file = "university.ofn"\n'
            "lp.positiveExamples = { :nobody }\n"
            "lp.negativeExamples = { :carol }\n",
        )
        cfg = load_config(p)
        with pytest.raises(UndeclaredEntityError, match="nobody"):
            run(cfg)


class TestRun:
    def test_fixture_run_report(self, workdir):
        cfg = load_config(workdir / "university.conf")
        report = run(cfg)
        assert report.accuracy == 1.0
        assert report.f1 == 1.0
        d = report_dict(report, cfg)
        assert set(d) == {
            "algorithm",
            "bestExpression",
            "accuracy",
            "f1",
            "refinementCount",
            "elapsedMs",
            "nbTrees",
            "seed",
        }

    def test_reports_identical_modulo_elapsed(self, workdir):
        cfg = load_config(workdir / "university.conf")
        a = report_dict(run(cfg), cfg)
        b = report_dict(run(cfg), cfg)
        a.pop("elapsedMs"), b.pop("elapsedMs")
        assert a == b

    def test_start_class_config(self, workdir):
        p = write_conf(
            workdir,
            'ks.file = "university.ofn"\n'
            "lp.positiveExamples = { :alice, :bob }\n"
            "lp.negativeExamples = { :carol, :dave, :eve }\n"
            'alg.type = "celoe"\n'
            'alg.heuristic = "oe"\n'
            "alg.startClasses = { :Student }\n"
            "alg.stopOnPerfect = true\n",
        )
        report = run(load_config(p))
        assert report.accuracy == 1.0

    def test_broad_start_costs_more_than_forest_from_student(self, workdir):
        base = (
            'ks.file = "university.ofn"\n'
            "lp.positiveExamples = { :alice, :bob }\n"
            "lp.negativeExamples = { :carol, :dave, :eve }\n"
            'alg.heuristic = "oe"\n'
            "alg.stopOnPerfect = true\n"
        )
        celoe = workdir / "celoe_top.conf"
        celoe.write_text(base + 'alg.type = "celoe"\nalg.startClasses = { Thing }\n')
        fm = workdir / "fm_student.conf"
        fm.write_text(base + 'alg.type = "fm"\nalg.startClasses = { :Student }\n')
        celoe_report = run(load_config(celoe))
        fm_report = run(load_config(fm))
        assert celoe_report.accuracy == fm_report.accuracy == 1.0
        assert celoe_report.refinement_count > fm_report.refinement_count


class TestSweep:
    def test_rows_per_value(self, workdir):
        cfg = load_config(workdir / "sweep.conf")
        rows = sweep(cfg, "maxNodesAddedPerTree", [2, 3, 4])
        assert [r[0] for r in rows] == [2, 3, 4]
        assert all(r[1] > 0 for r in rows)

    def test_empty_values(self, workdir):
        cfg = load_config(workdir / "sweep.conf")
        assert sweep(cfg, "nbTrees", []) == []

    def test_bad_param(self, workdir):
        cfg = load_config(workdir / "sweep.conf")
        with pytest.raises(ValueError):
            sweep(cfg, "seed", [1])

    def test_nb_trees_sweep_more_trees_cost_more(self, workdir):
        # with the default operator/heuristic a second tree adds work
        cfg = load_config(workdir / "university.conf")
        rows = sweep(cfg, "nbTrees", [1, 2])
        assert len(rows) == 2
        assert rows[1][1] >= rows[0][1]


class TestCliProcess:
    def test_learn_json_to_stdout(self, workdir):
        proc = subprocess.run(
            [sys.executable, "-m", "dlforest", "learn", "--config", "university.conf"],
            cwd=workdir,
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(proc.stdout)
        assert payload["accuracy"] == 1.0
        assert payload["bestExpression"] == (
            "Student and UniversityEmployee and (inProgram some Thing)"
        )

    def test_learn_text_format(self, workdir):
        rc = main(
            [
                "learn",
                "--config",
                str(workdir / "university.conf"),
                "--format",
                "text",
                "--out",
                str(workdir / "report.txt"),
            ]
        )
        assert rc == 0
        assert "accuracy" in (workdir / "report.txt").read_text()

    def test_learn_error_exit_code(self, workdir):
        rc = main(["learn", "--config", str(workdir / "missing.conf")])
        assert rc == 1

    def test_genbench_writes_fragment_and_sidecar(self, workdir):
        out = workdir / "generated.conf"
        rc = main(
            [
                "genbench",
                "--ontology",
                str(workdir / "university.ofn"),
                "--min-pos",
                "2",
                "--neg",
                "3",
                "--seed",
                "7",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        body = out.read_text()
        assert "lp.positiveExamples" in body
        sidecar = json.loads((workdir / "generated.conf.json").read_text())
        assert sidecar["seed"] == 7
        assert 0.0 < sidecar["target_accuracy"] < 1.0
        # the fragment plus algorithm lines forms a runnable config
        (workdir / "full.conf").write_text(body + 'alg.stopOnPerfect = true\n')
        report = run(load_config(workdir / "full.conf"))
        assert report.accuracy > 0.5

    def test_sweep_csv(self, workdir):
        out = workdir / "sweep.csv"
        rc = main(
            [
                "sweep",
                "--config",
                str(workdir / "sweep.conf"),
                "--param",
                "maxNodesAddedPerTree",
                "--values",
                "2,3",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "value,refinement_count,elapsed_ms"
        assert len(lines) == 3

    def test_sweep_empty_values(self, workdir):
        out = workdir / "empty.csv"
        rc = main(
            [
                "sweep",
                "--config",
                str(workdir / "sweep.conf"),
                "--param",
                "nbTrees",
                "--values",
                "",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        assert out.read_text().strip() == "value,refinement_count,elapsed_ms"
