import io
import json
import subprocess
import sys

import pytest

from cramerv.cli import main


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def table_file(tmp_path):
    def make(text):
        p = tmp_path / "t.csv"
        p.write_text(text)
        return str(p)
    return make


class TestCompute:
    def test_one_hot_uniform_text(self, table_file):
        code, out = run(["compute", "--input", table_file("200,0\n0,0\n"), "--model", "uniform"])
        assert code == 0
        assert "1.7321" in out and "1.0000" in out and "600.0000" in out

    def test_zero_uniform(self, table_file):
        code, out = run(["compute", "--input", table_file("50,50\n50,50\n"), "--model", "uniform",
                         "--format", "json"])
        d = json.loads(out)
        assert code == 0 and d["chi_square"] == d["v"] == d["modified_v"] == 0

    def test_both_models(self, table_file):
        code, out = run(["compute", "--input", table_file("10,0\n0,10\n"), "--model", "both",
                         "--format", "json"])
        d = json.loads(out)
        assert d["independence"]["v"] == 1.0
        assert d["uniform"]["chi_square"] == 20.0
        code, out = run(["compute", "--input", table_file("10,0\n0,10\n"), "--model", "both"])
        assert "independence" in out.splitlines()[1] and "uniform" in out.splitlines()[1]

    def test_stdin(self, monkeypatch):
        code, out = run(["compute", "--model", "uniform", "--format", "json"],
                        stdin="a,b\n1,1\n1,1\n", monkeypatch=monkeypatch)
        assert code == 0 and json.loads(out)["n"] == 4

    def test_full_precision_json(self, table_file):
        code, out = run(["compute", "--input", table_file("200,0\n0,0\n"), "--model", "uniform",
                         "--format", "json"])
        assert json.loads(out)["v"] == 3 ** 0.5

    @pytest.mark.parametrize("text", ["1,-2\n3,4\n", "1,2\n3\n", "", "5\n"])
    def test_bad_input_exit_2(self, table_file, text, capsys):
        code, _ = run(["compute", "--input", table_file(text), "--model", "uniform"])
        assert code == 2

    def test_error_names_line(self, table_file, capsys):
        run(["compute", "--input", table_file("1,2\n3,-4\n"), "--model", "uniform"])
        assert "line 2" in capsys.readouterr().err

    def test_missing_file_exit_2(self, tmp_path):
        assert run(["compute", "--input", str(tmp_path / "nope.csv"), "--model", "uniform"])[0] == 2

    def test_model_required(self, table_file):
        assert run(["compute", "--input", table_file("1,2\n3,4\n")])[0] == 1


class TestSimulate:
    ARGS = ["simulate", "--rows", "2", "--cols", "2", "--n", "200", "--reps", "1000",
            "--seed", "42", "--generator", "multinomial", "--model", "uniform"]

    def test_outputs_deterministic(self, tmp_path):
        blobs = []
        for k in range(2):
            d = tmp_path / str(k)
            d.mkdir()
            code, out = run(self.ARGS + ["--out", str(d / "r.json"), "--samples", str(d / "s.csv"),
                                         "--hist-csv", str(d / "h.csv"), "--hist-svg", str(d / "h.svg")])
            assert code == 0
            blobs.append([out] + [(d / f).read_bytes() for f in ("r.json", "s.csv", "h.csv", "h.svg")])
        assert blobs[0] == blobs[1]
        assert blobs[0][3].startswith(b"bin_start,bin_end,count\n")

    def test_include_extremal_max_line(self):
        args = [a if a != "multinomial" else "include-extremal" for a in self.ARGS]
        code, out = run(args)
        max_line = [ln for ln in out.splitlines() if ln.startswith("Max.")][0]
        assert max_line.split()[1:] == ["1.7321", "1.0000"]

    def test_row_order(self):
        code, out = run(self.ARGS)
        lines = out.splitlines()
        start = next(i for i, ln in enumerate(lines) if ln.startswith("Min."))
        labels = [" ".join(ln.split()[:-2]) for ln in lines[start:start + 6]]
        assert labels == ["Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max."]

    def test_reps_zero_usage(self):
        args = list(self.ARGS)
        args[args.index("1000")] = "0"
        assert run(args)[0] == 1

    def test_single_row_usage(self):
        args = list(self.ARGS)
        args[2] = "1"
        assert run(args)[0] == 1

    def test_unwritable_exit_2(self, tmp_path):
        assert run(self.ARGS + ["--out", str(tmp_path / "missing" / "r.json")])[0] == 2

    def test_unknown_flag(self):
        assert run(self.ARGS + ["--bogus"])[0] == 1


class TestMaximize:
    def test_uniform(self):
        code, out = run(["maximize", "--rows", "2", "--cols", "2", "--n", "4", "--model", "uniform"])
        assert code == 0
        assert "max chi_square: 12.0000" in out
        assert "max V: 1.7321" in out and "max modified V: 1.0000" in out
        assert "verdict: matches n(rc-1)" in out

    def test_independence(self):
        code, out = run(["maximize", "--rows", "2", "--cols", "2", "--n", "4",
                         "--model", "independence"])
        assert "max chi_square: 4.0000" in out
        assert "verdict: matches n(min(r,c)-1)" in out

    def test_budget_exit_3(self, capsys):
        code, _ = run(["maximize", "--rows", "3", "--cols", "3", "--n", "200", "--model", "uniform"])
        assert code == 3
        assert "75824205888366" in capsys.readouterr().err

    def test_budget_flag_and_env(self, monkeypatch):
        args = ["maximize", "--rows", "2", "--cols", "2", "--n", "4", "--model", "uniform"]
        assert run(args + ["--budget", "34"])[0] == 3
        monkeypatch.setenv("ASSOC_BUDGET", "34")
        assert run(args)[0] == 3
        assert run(args + ["--budget", "35"])[0] == 0
        monkeypatch.setenv("ASSOC_BUDGET", "lots")
        assert run(args)[0] == 1

    def test_single_row_v_undefined(self):
        code, out = run(["maximize", "--rows", "1", "--cols", "3", "--n", "2", "--model", "uniform"])
        assert code == 0 and "max V: undefined" in out


class TestScanPhi:
    def test_2x2(self):
        code, out = run(["scan-phi", "--rows", "2", "--cols", "2", "--grid", "4"])
        assert code == 0
        assert "sup phi_square: 1.0000" in out
        assert "ceiling min(r,c)-1: 1" in out and "ceiling rc-1: 3" in out

    def test_budget(self):
        assert run(["scan-phi", "--rows", "2", "--cols", "2", "--grid", "4", "--budget", "3"])[0] == 3

    def test_degenerate_usage(self):
        assert run(["scan-phi", "--rows", "1", "--cols", "2", "--grid", "4"])[0] == 1
        assert run(["scan-phi", "--rows", "2", "--cols", "2", "--grid", "1"])[0] == 1


def test_no_subcommand():
    assert run([])[0] == 1


def test_module_entry_point(tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("200,0\n0,0\n")
    proc = subprocess.run([sys.executable, "-m", "cramerv", "compute", "--input", str(p),
                           "--model", "uniform"], capture_output=True, text=True)
    assert proc.returncode == 0 and "1.7321" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "cramerv", "compute"], capture_output=True)
    assert proc.returncode == 1
