import subprocess
import sys

from netcomm import read_assignment, read_edgelist
from netcomm.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- gen ------------------------------------------------------------------

def test_gen_er(tmp_path, capsys):
    out = tmp_path / "er.txt"
    code, _, _ = run_cli(capsys, "gen", "--model", "er", "--n", "30",
                         "--p", "0.4", "--seed", "5", "--out", str(out))
    assert code == 0
    g = read_edgelist(out)
    assert g.n == 30 and g.edge_count > 0


def test_gen_sbm_with_labels(tmp_path, capsys):
    out = tmp_path / "sbm.txt"
    labels = tmp_path / "labels.txt"
    code, _, _ = run_cli(capsys, "gen", "--model", "sbm",
                         "--sizes", "10,15", "--b", "0.8,0.1;0.1,0.8",
                         "--seed", "5", "--out", str(out),
                         "--labels-out", str(labels))
    assert code == 0
    assert read_edgelist(out).n == 25
    a = read_assignment(labels)
    assert a.sizes().tolist() == [10, 15]


def test_gen_dcbm(tmp_path, capsys):
    out = tmp_path / "dcbm.txt"
    code, _, _ = run_cli(capsys, "gen", "--model", "dcbm",
                         "--sizes", "12,12", "--b", "0.9,0.3;0.3,0.9",
                         "--psi-sigma", "0.2", "--psi-cap", "0.9",
                         "--seed", "5", "--out", str(out))
    assert code == 0
    assert read_edgelist(out).n == 24


def test_gen_missing_args_is_usage_error(tmp_path, capsys):
    code, _, _ = run_cli(capsys, "gen", "--model", "er", "--out",
                         str(tmp_path / "x.txt"))
    assert code == 1


# --- tw-test ----------------------------------------------------------------

def test_tw_test_line_format(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run_cli(capsys, "gen", "--model", "er", "--n", "80", "--p", "0.3",
            "--seed", "1", "--out", str(graph))
    code, out, _ = run_cli(capsys, "tw-test", "--input", str(graph),
                           "--reps", "10", "--seed", "2")
    assert code == 0
    fields = out.strip().split(",")
    assert len(fields) == 4
    assert all(f for f in fields)
    assert 0.0 <= float(fields[3]) <= 1.0


def test_tw_test_no_correct_empty_theta_prime(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run_cli(capsys, "gen", "--model", "er", "--n", "80", "--p", "0.3",
            "--seed", "1", "--out", str(graph))
    code, out, _ = run_cli(capsys, "tw-test", "--input", str(graph),
                           "--no-correct")
    assert code == 0
    fields = out.strip().split(",")
    assert len(fields) == 4 and fields[2] == ""


def test_tw_test_degenerate_graph_exit_2(tmp_path, capsys):
    graph = tmp_path / "empty.txt"
    run_cli(capsys, "gen", "--model", "er", "--n", "20", "--p", "0",
            "--seed", "1", "--out", str(graph))
    code, _, err = run_cli(capsys, "tw-test", "--input", str(graph))
    assert code == 2
    assert "degenerate" in err


def test_missing_file_exit_1(capsys):
    code, _, _ = run_cli(capsys, "tw-test", "--input", "/nonexistent/g.txt")
    assert code == 1


# --- score --------------------------------------------------------------------

def test_score_stdout_and_ratio_file(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run_cli(capsys, "gen", "--model", "sbm", "--sizes", "25,25",
            "--b", "0.9,0.05;0.05,0.9", "--seed", "3", "--out", str(graph))
    ratios = tmp_path / "ratios.csv"
    code, out, _ = run_cli(capsys, "score", "--input", str(graph),
                           "--k", "2", "--seed", "4",
                           "--emit-ratios", str(ratios))
    assert code == 0
    labels = [int(x) for x in out.strip().splitlines()]
    assert len(labels) == 50 and set(labels) == {1, 2}
    lines = ratios.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "node,ratio_1"
    assert len(lines) == 51


def test_score_out_file(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run_cli(capsys, "gen", "--model", "er", "--n", "30", "--p", "0.5",
            "--seed", "3", "--out", str(graph))
    out_path = tmp_path / "assign.txt"
    code, out, _ = run_cli(capsys, "score", "--input", str(graph), "--k", "2",
                           "--out", str(out_path))
    assert code == 0 and out == ""
    assert read_assignment(out_path).n == 30


def test_score_disconnected_exit_2(tmp_path, capsys):
    graph = tmp_path / "empty.txt"
    run_cli(capsys, "gen", "--model", "er", "--n", "10", "--p", "0",
            "--seed", "1", "--out", str(graph))
    code, _, _ = run_cli(capsys, "score", "--input", str(graph), "--k", "2")
    assert code == 2


# --- ncv -----------------------------------------------------------------------

def test_ncv_csv_and_selected_line(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run_cli(capsys, "gen", "--model", "sbm", "--sizes", "30,30",
            "--b", "0.7,0.1;0.1,0.7", "--seed", "6", "--out", str(graph))
    code, out, _ = run_cli(capsys, "ncv", "--input", str(graph),
                           "--kmax", "3", "--folds", "3", "--seed", "7")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "K,fold,loss,flag"
    assert len(lines) == 1 + 3 * 3 + 1
    assert lines[-1] == "selected_k=2"


def test_ncv_out_file(tmp_path, capsys):
    graph = tmp_path / "g.txt"
    run_cli(capsys, "gen", "--model", "er", "--n", "24", "--p", "0.4",
            "--seed", "6", "--out", str(graph))
    out_path = tmp_path / "ncv.csv"
    code, out, _ = run_cli(capsys, "ncv", "--input", str(graph), "--kmax", "2",
                           "--out", str(out_path))
    assert code == 0 and out == ""
    assert out_path.read_text(encoding="utf-8").startswith("K,fold,loss,flag")


# --- sim -------------------------------------------------------------------------

def test_sim_with_overrides(tmp_path, capsys):
    prefix = tmp_path / "run"
    code, out, _ = run_cli(capsys, "sim", "size", "--seed", "3",
                           "--out", str(prefix),
                           "--set", "n=50", "--set", "p_grid=0.3,",
                           "--set", "replications=2",
                           "--set", "bootstrap_reps=3")
    assert code == 0
    paths = out.strip().splitlines()
    assert [p.rsplit("_", 1)[-1] for p in paths] == ["rows.csv", "summary.csv"]
    rows = open(paths[0], encoding="utf-8").read().splitlines()
    assert len(rows) == 3  # header + 2 replications


def test_sim_config_file(tmp_path, capsys):
    cfg_path = tmp_path / "exp.cfg"
    cfg_path.write_text(
        "experiment = ncv-accuracy\nseed = 5\nreplications = 1\n"
        "n = 36\nr_grid = 0.3,\nn1_grid = 18,\nb0_diag = 3.0\n"
        "b0_offdiag = 1.0\nk_max = 2\nfolds = 3\nmodel = sbm\nloss = nll\n",
        encoding="utf-8")
    code, out, _ = run_cli(capsys, "sim", "ncv-accuracy",
                           "--config", str(cfg_path),
                           "--out", str(tmp_path / "ncvrun"))
    assert code == 0
    summary = out.strip().splitlines()[-1]
    text = open(summary, encoding="utf-8").read()
    assert text.splitlines()[0] == "r,n1,metric,mean,stderr"


def test_sim_wrong_config_experiment(tmp_path, capsys):
    cfg_path = tmp_path / "exp.cfg"
    cfg_path.write_text("experiment = size-curve\nseed = 1\nreplications = 1\n",
                        encoding="utf-8")
    code, _, _ = run_cli(capsys, "sim", "ncv-accuracy",
                         "--config", str(cfg_path),
                         "--out", str(tmp_path / "x"))
    assert code == 1


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0


def test_console_entry_point(tmp_path):
    out = tmp_path / "g.txt"
    proc = subprocess.run(
        [sys.executable, "-m", "netcomm.cli", "gen", "--model", "er",
         "--n", "12", "--p", "0.5", "--seed", "1", "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert read_edgelist(out).n == 12


def test_cli_outputs_reproducible(tmp_path, capsys):
    # same seed, two invocations: byte-identical files
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        run_cli(capsys, "gen", "--model", "er", "--n", "40", "--p", "0.3",
                "--seed", "9", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()
