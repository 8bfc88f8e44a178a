import json
import subprocess
import sys

import pytest

from qfrob.cli import CheckSpec, default_specs, main, run_check


class TestRunCheck:
    def test_lima_pass(self):
        rep = run_check(CheckSpec("verify-lima", {"p": 2, "a": 1, "b": 1}))
        assert rep.status == "pass"
        assert rep.values["dim"] == 2

    def test_slash_pass(self):
        rep = run_check(CheckSpec("verify-slash", {"p": 3, "n": 2, "cap": 40}))
        assert rep.status == "pass"
        # n < p: only the unit class
        assert rep.values["H0_dims"] == {"0": 1}

    def test_binom_records_varrho(self):
        rep = run_check(CheckSpec("verify-binom", {"p": 3, "max": 2}))
        assert rep.status == "pass"
        assert "varrho_2p" in rep.values and "varrho_p" in rep.values

    def test_vi_pass(self):
        rep = run_check(CheckSpec("verify-vi", {"p": 2, "kmax": 2}))
        assert rep.status == "pass"

    def test_crash_is_failure(self):
        rep = run_check(CheckSpec("verify-lima", {"p": 2, "a": -1, "b": 1}))
        assert rep.status == "fail"
        assert "error" in rep.values


class TestMain:
    def test_single_check_exit_zero(self, capsys):
        assert main(["verify-binom", "--p", "2", "--max", "2"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out

    def test_json_output(self, tmp_path, capsys):
        path = tmp_path / "r.json"
        assert main(["verify-lima", "--p", "2", "--a", "1", "--b", "1",
                     "--json", str(path)]) == 0
        capsys.readouterr()
        payload = json.loads(path.read_text())
        assert payload[0]["check"] == "verify-lima"
        assert payload[0]["status"] == "pass"

    def test_json_deterministic(self, tmp_path, capsys):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        main(["verify-lima", "--p", "2", "--a", "1", "--b", "2", "--json", str(p1)])
        main(["verify-lima", "--p", "2", "--a", "1", "--b", "2", "--json", str(p2)])
        capsys.readouterr()
        a = json.loads(p1.read_text())
        b = json.loads(p2.read_text())
        for r in (a, b):
            r[0].pop("ms")
        assert a == b

    def test_usage_error_exit_two(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qfrob.cli", "no-such-check"],
            capture_output=True,
        )
        assert proc.returncode == 2

    def test_missing_p_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify-lima", "--a", "1", "--b", "1"])
        assert exc.value.code == 2


class TestConfig:
    def test_defaults_parse(self):
        specs = default_specs()
        names = {s.name for s in specs}
        assert {
            "verify-slash",
            "verify-twist",
            "verify-lima",
            "verify-vi",
            "verify-binom",
            "verify-nilhecke",
            "verify-thick",
            "verify-grass",
            "verify-frobenius",
            "verify-theta0",
        } <= names
        slash = [s for s in specs if s.name == "verify-slash"]
        assert {(s.params["p"], s.params["n"]) for s in slash} == {
            (p, n) for p in (2, 3) for n in range(1, 7)
        }

    def test_config_override(self, tmp_path):
        cfg = tmp_path / "own.cfg"
        cfg.write_text("verify-binom --p 2 --max 1\n# comment\n")
        specs = default_specs(str(cfg))
        assert specs == [CheckSpec("verify-binom", {"p": 2, "max": 1})]

    def test_report_all_runs_custom_config(self, tmp_path, capsys):
        cfg = tmp_path / "own.cfg"
        cfg.write_text(
            "verify-binom --p 2 --max 2\nverify-lima --p 2 --a 1 --b 1\n"
        )
        rc = main(["report-all", "--config", str(cfg)])
        out = capsys.readouterr().out
        assert rc == 0
        assert out.count("PASS") == 2

    def test_report_all_parallel(self, tmp_path, capsys):
        cfg = tmp_path / "own.cfg"
        cfg.write_text(
            "verify-binom --p 2 --max 2\nverify-binom --p 3 --max 2\n"
        )
        rc = main(["report-all", "--config", str(cfg), "--jobs", "2"])
        capsys.readouterr()
        assert rc == 0

    def test_env_var_config(self, tmp_path, monkeypatch):
        cfg = tmp_path / "env.cfg"
        cfg.write_text("verify-binom --p 2 --max 1\n")
        monkeypatch.setenv("QFROB_CONFIG", str(cfg))
        assert default_specs() == [CheckSpec("verify-binom", {"p": 2, "max": 1})]

    def test_failing_config_exit_one(self, tmp_path, capsys):
        cfg = tmp_path / "own.cfg"
        # a = −1 crashes the check, which counts as a failure
        cfg.write_text("verify-lima --p 2 --a -1 --b 1\n")
        rc = main(["report-all", "--config", str(cfg)])
        capsys.readouterr()
        assert rc == 1


class TestTheta0Check:
    def test_coproduct_compatibility_p2(self):
        rep = run_check(CheckSpec("verify-theta0", {"p": 2, "kmax": 2}))
        assert rep.status == "pass"
