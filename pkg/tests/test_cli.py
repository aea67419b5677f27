"""CLI contract: subcommands, exit codes, CSV schemas, determinism."""
import csv
import json

import pytest

from equibench.cli import main

TINY_CONFIG = """
[experiment]
relations = line, parabola, cubic
measures = pcor, scor
n = 50
score_reps = 3
power_reps = 30
permutations = 20
base_seed = 5

[noise]
kind = msnr
ratios = 4.0
"""


def read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    preamble = [l for l in lines if l.startswith("#")]
    rows = list(csv.reader(l for l in lines if not l.startswith("#")))
    return preamble, rows[0], rows[1:]


class TestRelations:
    def test_plain_listing(self, capsys):
        assert main(["relations"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert len(out) == 21
        assert out[0].startswith("line")

    def test_json_listing(self, capsys):
        assert main(["relations", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload) == 21
        assert {"id", "name", "formula"} <= set(payload[0])


class TestGen:
    def test_msnr_dataset(self, tmp_path):
        out = tmp_path / "d.csv"
        code = main(
            ["gen", "--relation", "line", "--n", "100", "--msnr", "11.5",
             "--seed", "1", "--out", str(out)]
        )
        assert code == 0
        _, header, rows = read_csv(out)
        assert header == ["x", "y", "relation", "noise_kind", "target_ratio",
                          "achieved_ratio", "seed"]
        assert len(rows) == 100
        achieved = float(rows[0][5])
        assert abs(achieved - 11.5) / 11.5 <= 0.20
        assert all(r[2] == "line" and r[3] == "msnr" and r[6] == "1" for r in rows)

    def test_ssnr_exact(self, tmp_path):
        out = tmp_path / "d.csv"
        code = main(
            ["gen", "--relation", "spike", "--n", "100", "--ssnr", "10.47",
             "--seed", "1", "--out", str(out)]
        )
        assert code == 0
        _, _, rows = read_csv(out)
        assert float(rows[0][5]) == pytest.approx(10.47, rel=1e-9)

    def test_unknown_relation_exit_2(self, capsys):
        assert main(["gen", "--relation", "nosuch", "--n", "50", "--msnr", "4"]) == 2
        assert "nosuch" in capsys.readouterr().err

    def test_bad_msnr_exit_4(self, capsys):
        assert main(["gen", "--relation", "line", "--n", "50", "--msnr", "0.8"]) == 4

    def test_unwritable_out_exit_3(self, capsys):
        code = main(
            ["gen", "--relation", "line", "--n", "50", "--msnr", "4",
             "--out", "/nonexistent-dir-xyz/d.csv"]
        )
        assert code == 3

    def test_stdout_matches_file(self, tmp_path, capsys):
        args = ["gen", "--relation", "line", "--n", "20", "--msnr", "4", "--seed", "3"]
        assert main(args) == 0
        stdout_text = capsys.readouterr().out
        out = tmp_path / "d.csv"
        assert main(args + ["--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8") == stdout_text


class TestScore:
    @pytest.fixture()
    def dataset(self, tmp_path):
        p = tmp_path / "in.csv"
        p.write_text(
            "x,y\n" + "".join(f"{i / 40},{i / 40}\n" for i in range(40)),
            encoding="utf-8",
        )
        return p

    def test_single_measure(self, dataset, capsys):
        assert main(["score", "--input", str(dataset), "--measures", "pcor"]) == 0
        rows = list(csv.reader(capsys.readouterr().out.splitlines()))
        assert rows[0] == ["measure", "value", "n", "params"]
        assert rows[1][0] == "pcor"
        assert float(rows[1][1]) == pytest.approx(1.0)
        assert rows[1][2] == "40"

    def test_three_measures_three_rows(self, dataset, capsys):
        assert main(["score", "--input", str(dataset), "--measures", "pcor,scor,kcor"]) == 0
        rows = list(csv.reader(capsys.readouterr().out.splitlines()))
        assert [r[0] for r in rows[1:]] == ["pcor", "scor", "kcor"]

    def test_params_forwarded(self, dataset, capsys):
        code = main(
            ["score", "--input", str(dataset), "--measures", "mi",
             "--params", '{"mi": {"k": 8}}']
        )
        assert code == 0
        rows = list(csv.reader(capsys.readouterr().out.splitlines()))
        assert '"k": 8' in rows[1][3]

    def test_missing_y_column_exit_4(self, tmp_path, capsys):
        p = tmp_path / "bad.csv"
        p.write_text("x,z\n0.1,0.2\n", encoding="utf-8")
        assert main(["score", "--input", str(p), "--measures", "pcor"]) == 4

    def test_malformed_row_exit_4_with_line(self, tmp_path, capsys):
        p = tmp_path / "bad.csv"
        p.write_text("x,y\n0.1,0.2\n0.3,oops\n", encoding="utf-8")
        assert main(["score", "--input", str(p), "--measures", "pcor"]) == 4
        assert "line 3" in capsys.readouterr().err

    def test_unknown_measure_exit_2(self, dataset):
        assert main(["score", "--input", str(dataset), "--measures", "zcor"]) == 2

    def test_missing_input_exit_3(self, tmp_path):
        assert main(
            ["score", "--input", str(tmp_path / "nope.csv"), "--measures", "pcor"]
        ) == 3


class TestPrintDefaultConfig:
    def test_template_is_parseable_and_commented(self, capsys):
        from equibench.config import parse_config

        assert main(["print-default-config"]) == 0
        text = capsys.readouterr().out
        assert text.count("#") > 5
        cfg = parse_config(text)
        assert len(cfg.relations) == 21


class TestEquitabilityCommand:
    def test_end_to_end(self, tmp_path):
        cfgp = tmp_path / "exp.ini"
        cfgp.write_text(TINY_CONFIG, encoding="utf-8")
        out = tmp_path / "res"
        assert main(["equitability", "--config", str(cfgp), "--out", str(out)]) == 0

        preamble, header, rows = read_csv(out / "scores.csv")
        assert header == ["measure", "relation", "rep", "score", "achieved_ratio"]
        assert len(rows) == 2 * 3 * 3
        manifest = json.loads((out / "manifest.json").read_text())
        assert preamble == [f"# run_id={manifest['run_id']}"]
        assert manifest["command"] == "equitability"
        assert manifest["failures"] == []
        assert manifest["outputs"] == ["scores.csv", "spread.csv"]

        _, sheader, srows = read_csv(out / "spread.csv")
        assert sheader == ["measure", "spread_sd", "spread_range", "subset_sd"]
        assert [r[0] for r in srows] == ["pcor", "scor"]

    def test_byte_identical_reruns_and_threads(self, tmp_path, monkeypatch):
        cfgp = tmp_path / "exp.ini"
        cfgp.write_text(TINY_CONFIG, encoding="utf-8")
        a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
        assert main(["equitability", "--config", str(cfgp), "--out", str(a)]) == 0
        assert main(["equitability", "--config", str(cfgp), "--out", str(b)]) == 0
        monkeypatch.setenv("EQUIBENCH_THREADS", "4")
        assert main(["equitability", "--config", str(cfgp), "--out", str(c)]) == 0
        ref = (a / "scores.csv").read_bytes()
        assert (b / "scores.csv").read_bytes() == ref
        assert (c / "scores.csv").read_bytes() == ref
        assert (b / "spread.csv").read_bytes() == (a / "spread.csv").read_bytes()

    def test_partial_failure_exit_5(self, tmp_path):
        cfgp = tmp_path / "exp.ini"
        cfgp.write_text(
            "[experiment]\nrelations = line\nmeasures = hhg\nn = 600\n"
            "score_reps = 2\npermutations = 20\n\n[noise]\nratios = 4.0\n",
            encoding="utf-8",
        )
        out = tmp_path / "res"
        assert main(["equitability", "--config", str(cfgp), "--out", str(out)]) == 5
        manifest = json.loads((out / "manifest.json").read_text())
        assert len(manifest["failures"]) == 2

    def test_bad_config_exit_4(self, tmp_path, capsys):
        cfgp = tmp_path / "exp.ini"
        cfgp.write_text("[experiment]\npower_reps = 3\n", encoding="utf-8")
        assert main(["equitability", "--config", str(cfgp), "--out", str(tmp_path / "o")]) == 4
        assert "power_reps" in capsys.readouterr().err

    def test_missing_config_exit_3(self, tmp_path):
        assert main(
            ["equitability", "--config", str(tmp_path / "nope.ini"),
             "--out", str(tmp_path / "o")]
        ) == 3


class TestPowerCommand:
    def test_end_to_end_and_thread_invariance(self, tmp_path):
        cfgp = tmp_path / "exp.ini"
        cfgp.write_text(
            "[experiment]\nrelations = line, parabola\nmeasures = pcor\nn = 40\n"
            "score_reps = 2\npower_reps = 30\npermutations = 20\nbase_seed = 2\n\n"
            "[noise]\nkind = msnr\nratios = 4.0\n",
            encoding="utf-8",
        )
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["power", "--config", str(cfgp), "--out", str(a)]) == 0
        assert main(
            ["power", "--config", str(cfgp), "--out", str(b), "--threads", "4"]
        ) == 0

        _, header, rows = read_csv(a / "power.csv")
        assert header == ["measure", "relation", "noise_level", "power",
                          "ci_low", "ci_high", "reps_completed"]
        assert len(rows) == 2
        assert all(r[6] == "30" for r in rows)
        assert (b / "power.csv").read_bytes() == (a / "power.csv").read_bytes()
        manifest = json.loads((a / "manifest.json").read_text())
        assert manifest["command"] == "power"
        assert manifest["outputs"] == ["power.csv"]
