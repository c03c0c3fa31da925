"""Command line surface: outputs, exit codes, and flag handling."""

import json
import subprocess
import sys

import pytest

from unisvar.cli import main

from conftest import fixture_text


@pytest.fixture
def quiver_file(tmp_path):
    def write(name, field="Q"):
        path = tmp_path / f"fix{name}.quiver"
        path.write_text(fixture_text(name, field))
        return str(path)

    return write


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCommands:
    def test_masts_text(self, capsys, quiver_file):
        code, out, _ = run_cli(
            capsys,
            ["masts", "--quiver", quiver_file("C"), "--series", "1,2,3"],
        )
        assert code == 0
        assert out == "b*c\n"

    def test_guni_count_text_total(self, capsys, quiver_file):
        code, out, _ = run_cli(
            capsys,
            [
                "guni-count",
                "--quiver", quiver_file("A", "GF 2"),
                "--series", "1,2",
            ],
        )
        assert code == 0
        assert out.splitlines()[0] == "3"

    def test_equations_json(self, capsys, quiver_file):
        code, out, _ = run_cli(
            capsys,
            [
                "equations",
                "--quiver", quiver_file("C"),
                "--series", "1,2,3",
                "--mast", "b*c",
                "--format", "json",
            ],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["field"] == {"kind": "Q"}
        assert payload["variables"] == ["k[1;a;0]"]
        assert payload["polynomials"] == [
            [{"coefficient": "1", "exponents": [1]}]
        ]

    def test_enumerate_json(self, capsys, quiver_file):
        code, out, _ = run_cli(
            capsys,
            [
                "enumerate",
                "--quiver", quiver_file("A", "GF 2"),
                "--series", "1,2",
                "--mast", "a",
                "--format", "json",
            ],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["points"] == [{"k[1;b;0]": "0"}, {"k[1;b;0]": "1"}]

    def test_module_and_degen(self, capsys, tmp_path, quiver_file):
        quiver = quiver_file("A", "GF 2")
        modules = []
        for value in ("0", "1"):
            code, out, _ = run_cli(
                capsys,
                [
                    "module",
                    "--quiver", quiver,
                    "--series", "1,2",
                    "--mast", "a",
                    "--point", f"k[1;b;0]={value}",
                    "--format", "json",
                ],
            )
            assert code == 0
            path = tmp_path / f"module{value}.json"
            path.write_text(out)
            modules.append(str(path))
        code, out, _ = run_cli(
            capsys,
            [
                "degen",
                "--quiver", quiver,
                "--left", modules[0],
                "--right", modules[1],
                "--format", "json",
            ],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["result"] == "no_degeneration"
        assert payload["certificate"]["kind"] == "leaf"

    def test_psi_and_pluecker(self, capsys, quiver_file):
        quiver = quiver_file("A")
        code, out, _ = run_cli(
            capsys,
            [
                "psi",
                "--quiver", quiver,
                "--series", "1,2",
                "--mast", "a",
                "--point", "k[1;b;0]=2",
                "--format", "json",
            ],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["ambient_basis"] == ["e(1)", "a", "b"]
        # span{b - 2a} in canonical echelon form pivots on the a coordinate.
        assert payload["rows"] == [["0", "1", "-1/2"]]
        code, out, _ = run_cli(
            capsys,
            [
                "pluecker",
                "--quiver", quiver,
                "--series", "1,2",
                "--mast", "a",
                "--point", "k[1;b;0]=2",
                "--format", "json",
            ],
        )
        payload = json.loads(out)
        assert payload["on_chart"] is True
        assert payload["recovered_point"] == {"k[1;b;0]": "2"}

    def test_fibres_text(self, capsys, quiver_file):
        code, out, _ = run_cli(
            capsys,
            [
                "fibres",
                "--quiver", quiver_file("A", "GF 3"),
                "--series", "1,2",
                "--mast", "a",
            ],
        )
        assert code == 0
        assert out.splitlines()[0] == "3 fibres"


class TestErrors:
    def test_unknown_mast_is_domain_error(self, capsys, quiver_file):
        code, _, err = run_cli(
            capsys,
            [
                "detours",
                "--quiver", quiver_file("C"),
                "--series", "1,2,3",
                "--mast", "b*a",
            ],
        )
        assert code == 1
        assert "not a mast" in err

    def test_syntax_error_reports_line(self, capsys, tmp_path):
        path = tmp_path / "bad.quiver"
        path.write_text("FIELD Q\nNILBOUND 2\nVERTEX 1\nARROW x 1 9\n")
        code, _, err = run_cli(
            capsys, ["masts", "--quiver", str(path), "--series", "1"]
        )
        assert code == 1
        assert "line 4" in err and "unknown vertex 9" in err

    def test_budget_error_reports_size(self, capsys, quiver_file, monkeypatch):
        monkeypatch.setenv("UNISVAR_BUDGET", "1")
        code, _, err = run_cli(
            capsys,
            [
                "enumerate",
                "--quiver", quiver_file("A", "GF 2"),
                "--series", "1,2",
                "--mast", "a",
            ],
        )
        assert code == 1
        assert "budget" in err

    def test_budget_flag_beats_env(self, capsys, quiver_file, monkeypatch):
        monkeypatch.setenv("UNISVAR_BUDGET", "1")
        code, out, _ = run_cli(
            capsys,
            [
                "enumerate",
                "--quiver", quiver_file("A", "GF 2"),
                "--series", "1,2",
                "--mast", "a",
                "--budget", "100",
            ],
        )
        assert code == 0

    def test_missing_mast_is_usage_error(self, capsys, quiver_file):
        with pytest.raises(SystemExit) as info:
            main(["detours", "--quiver", quiver_file("A"), "--series", "1,2"])
        assert info.value.code == 2

    def test_point_off_variety(self, capsys, quiver_file):
        code, _, err = run_cli(
            capsys,
            [
                "module",
                "--quiver", quiver_file("C"),
                "--series", "1,2,3",
                "--mast", "b*c",
                "--point", "k[1;a;0]=1",
            ],
        )
        assert code == 1
        assert "variety" in err


class TestSubprocess:
    def test_real_process_exit_codes(self, tmp_path):
        quiver = tmp_path / "fixA.quiver"
        quiver.write_text(fixture_text("A", "GF 2"))
        ok = subprocess.run(
            [
                sys.executable, "-m", "unisvar.cli",
                "masts", "--quiver", str(quiver), "--series", "1,2",
            ],
            capture_output=True,
            text=True,
        )
        assert ok.returncode == 0
        assert ok.stdout == "a\nb\n"
        bad_usage = subprocess.run(
            [sys.executable, "-m", "unisvar.cli", "masts"],
            capture_output=True,
            text=True,
        )
        assert bad_usage.returncode == 2
