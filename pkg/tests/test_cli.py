import json

import pytest

from chebydyn.cli import main, parse_complex


class TestParseComplex:
    @pytest.mark.parametrize("text,want", [
        ("3", 3 + 0j),
        ("3+0i", 3 + 0j),
        ("2.5-0.3i", 2.5 - 0.3j),
        ("1+0.3j", 1 + 0.3j),
        ("-0.5i", -0.5j),
        ("0.3i", 0.3j),
        ("-2", -2 + 0j),
        ("1e-3+2e-2i", 0.001 + 0.02j),
    ])
    def test_accepted(self, text, want):
        assert parse_complex(text) == want

    @pytest.mark.parametrize("text", ["", "abc", "1+2", "i+j"])
    def test_rejected(self, text):
        with pytest.raises(Exception):
            parse_complex(text)


class TestClassify:
    def test_alpha3_superattracting_strange_points(self, capsys):
        assert main(["classify", "--alpha", "3+0i"]) == 0
        doc = json.loads(capsys.readouterr().out)
        by_label = {f["label"]: f for f in doc["fixed_points"]}
        assert by_label["s1"]["stability"] == "superattracting"
        assert by_label["s2"]["stability"] == "superattracting"
        assert doc["cat_verdict"]["verdict"] == "strange"

    def test_alpha_five_halves_multiplicity(self, capsys):
        assert main(["classify", "--alpha", "2.5"]) == 0
        doc = json.loads(capsys.readouterr().out)
        one = [f for f in doc["fixed_points"] if f["label"] == "one"]
        assert one[0]["multiplicity"] == 3
        assert one[0]["stability"] == "parabolic"


class TestVerify:
    def test_exit_zero_and_report(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        assert main(["verify", "--json", str(out)]) == 0
        text = capsys.readouterr().out
        assert "FAIL" not in text
        report = json.loads(out.read_text())
        assert all(r["pass"] for r in report)


class TestRenders:
    def test_param_plane_ppm_with_sidecar(self, tmp_path, capsys):
        out = tmp_path / "cat.ppm"
        code = main(["param-plane", "--width", "40", "--height", "32",
                     "--max-iter", "60", "--out", str(out)])
        assert code == 0
        data = out.read_bytes()
        assert data.startswith(b"P6\n40 32\n255\n")
        assert len(data) == len(b"P6\n40 32\n255\n") + 3 * 40 * 32
        sidecar = json.loads((tmp_path / "cat.ppm.json").read_text())
        assert sidecar["spec"]["kind"] == "parameter"
        assert sum(sidecar["stats"].values()) == 40 * 32

    def test_dyn_plane_png(self, tmp_path, capsys):
        out = tmp_path / "dyn.png"
        code = main(["dyn-plane", "--alpha", "3+0i", "--width", "32",
                     "--height", "32", "--max-iter", "60", "--out", str(out)])
        assert code == 0
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_bifurcation_csv(self, tmp_path, capsys):
        out = tmp_path / "scan.csv"
        code = main(["bifurcation", "--min", "1.5", "--max", "3.8",
                     "--step", "0.01", "--out", str(out)])
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0].split(",")[:4] == ["alpha", "one_re", "one_im", "one_modulus"]
        assert len(lines) == 232  # header + 231 samples
        windows = json.loads(capsys.readouterr().out)["attracting_windows"]
        assert windows["one"] and windows["s1"]


class TestFlagErrors:
    def test_unknown_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["classify", "--alpha", "3", "--frobnicate"])
        assert exc.value.code == 2

    def test_malformed_number_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["param-plane", "--width", "many", "--out", "x.ppm"])
        assert exc.value.code == 2

    def test_missing_subcommand_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
