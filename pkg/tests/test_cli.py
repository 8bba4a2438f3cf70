import re
import subprocess
import sys

import pytest

from bowtiegraph.cli import EXIT_IO, EXIT_NOT_FOUND, EXIT_OK, EXIT_PRECONDITION, main
from bowtiegraph.gen import fano
from bowtiegraph.hypergraph import read_hlg


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line)


@pytest.fixture
def fano_file(tmp_path):
    p = tmp_path / "fano.hlg"
    p.write_text(fano().to_hlg())
    return str(p)


@pytest.fixture
def pg7_file(tmp_path, capsys):
    p = tmp_path / "pg7.hlg"
    assert main(["generate", "union(projective(7), projective(7))", "-o", str(p)]) == EXIT_OK
    capsys.readouterr()
    return str(p)


def test_generate_to_stdout(capsys):
    code, out, _ = run(capsys, "generate", "fano", "--machine")
    assert code == EXIT_OK
    rec = records(out)
    assert rec["edges"] == "7" and rec["density"] == "1"
    assert "7 3 2 7" in out.splitlines()


def test_generate_to_file(tmp_path, capsys):
    p = tmp_path / "g.hlg"
    code, _, _ = run(capsys, "generate", "random-greedy(n=50, r=3, m=80)", "--seed", "7", "-o", str(p))
    assert code == EXIT_OK
    assert read_hlg(str(p)).m == 80


def test_stats(fano_file, capsys):
    code, out, _ = run(capsys, "stats", "-i", fano_file, "--epsilon", "1", "--k", "2", "--machine")
    assert code == EXIT_OK
    rec = records(out)
    assert rec["bowties"] == "21" and rec["triangles"] == "28"
    assert rec["identity_ok"] == rec["triangle_bijection_ok"] == rec["two_path_ok"] == "1"
    assert rec["vertex_bounds_hold"] == "1"
    assert "component 0 21 84 8 1 0" in out


def test_stats_reports_failed_hypothesis(fano_file, capsys):
    code, out, _ = run(capsys, "stats", "-i", fano_file, "--epsilon", "1/2", "--machine")
    assert code == EXIT_OK
    assert records(out)["vertex_bounds"].startswith("n/a")


def test_find_and_verify(fano_file, tmp_path, capsys):
    cert = tmp_path / "c.txt"
    code, out, _ = run(capsys, "find", "-i", fano_file, "--k", "4", "-o", str(cert), "--machine")
    assert code == EXIT_OK
    assert records(out)["branch"] == "large"
    code, out, _ = run(capsys, "verify", "-i", fano_file, "-c", str(cert), "--machine")
    assert code == EXIT_OK
    assert records(out)["outcome"] == "pass"


def test_find_dense_pipeline(pg7_file, tmp_path, capsys):
    cert = tmp_path / "c.txt"
    code, out, _ = run(capsys, "find", "-i", pg7_file, "--k", "60", "-o", str(cert), "--machine")
    assert code == EXIT_OK and records(out)["branch"] == "dense"
    assert "dense " in cert.read_text()
    assert run(capsys, "verify", "-i", pg7_file, "-c", str(cert))[0] == EXIT_OK


def test_find_not_found(tmp_path, capsys):
    p = tmp_path / "s.hlg"
    main(["generate", "sunflower(5)", "-o", str(p)])
    capsys.readouterr()
    code, out, _ = run(capsys, "find", "-i", str(p), "--k", "3", "--machine")
    assert code == EXIT_NOT_FOUND
    assert records(out)["outcome"] == "not-found"


def test_tampered_certificate(fano_file, tmp_path, capsys):
    cert = tmp_path / "c.txt"
    run(capsys, "find", "-i", fano_file, "--k", "4", "-o", str(cert))
    lines = cert.read_text().splitlines()
    k, spanned, bound = lines[0].split()
    lines[0] = f"{k} {int(spanned) - 1} {bound}"
    cert.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "-i", fano_file, "-c", str(cert))
    assert code == EXIT_PRECONDITION
    assert "problem: declared span" in out


def test_wrong_instance_digest(fano_file, tmp_path, capsys):
    cert = tmp_path / "c.txt"
    run(capsys, "find", "-i", fano_file, "--k", "3", "-o", str(cert))
    other = tmp_path / "sts9.hlg"
    main(["generate", "complete-sts(9)", "-o", str(other)])
    capsys.readouterr()
    code, out, _ = run(capsys, "verify", "-i", str(other), "-c", str(cert))
    assert code == EXIT_PRECONDITION
    assert "digest mismatch" in out


def test_oracle(fano_file, capsys):
    code, out, _ = run(capsys, "oracle", "-i", fano_file, "--k", "3", "--s", "5", "--machine")
    assert code == EXIT_OK
    rec = records(out)
    assert rec["min_span"] == "6" and rec["has_configuration"] == "no"
    assert rec["exhaustive"] == "1"


def test_oracle_certificate_verifies(fano_file, tmp_path, capsys):
    cert = tmp_path / "o.txt"
    run(capsys, "oracle", "-i", fano_file, "--k", "5", "-o", str(cert))
    code, out, _ = run(capsys, "verify", "-i", fano_file, "-c", str(cert), "--machine")
    assert code == EXIT_OK and records(out)["span"] == "7"


def test_reduce(tmp_path, capsys):
    src, dst = tmp_path / "t3.hlg", tmp_path / "link.hlg"
    main(["generate", "random-greedy(n=20, r=4, t=3, m=25)", "--seed", "2", "-o", str(src)])
    capsys.readouterr()
    code, out, _ = run(capsys, "reduce", "-i", str(src), "-o", str(dst), "--machine")
    assert code == EXIT_OK
    link = read_hlg(str(dst))
    assert (link.r, link.t) == (3, 2)
    assert records(out)["edges"] == str(link.m)


def test_reduce_rejects_graphs(fano_file, tmp_path, capsys):
    code, _, err = run(capsys, "reduce", "-i", fano_file, "-o", str(tmp_path / "x"))
    assert code == EXIT_PRECONDITION and "error" in err


def test_invalid_instance(tmp_path, capsys):
    p = tmp_path / "bad.hlg"
    p.write_text("4 3 2 2\n0 1 2\n0 1 3\n")
    code, _, err = run(capsys, "stats", "-i", str(p))
    assert code == EXIT_PRECONDITION and "share 2" in err


def test_malformed_file_reports_line(tmp_path, capsys):
    p = tmp_path / "bad.hlg"
    p.write_text("3 3 2 1\n0 1 x\n")
    code, _, err = run(capsys, "stats", "-i", str(p))
    assert code == EXIT_PRECONDITION and "line 2" in err


def test_missing_file(tmp_path, capsys):
    assert run(capsys, "stats", "-i", str(tmp_path / "nope.hlg"))[0] == EXIT_IO


def test_k_too_large(fano_file, capsys):
    assert run(capsys, "find", "-i", fano_file, "--k", "9")[0] == EXIT_PRECONDITION


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit) as err:
        main(["stats", "-i", "x", "--epsilon", "-1"])
    assert err.value.code == EXIT_PRECONDITION
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == EXIT_PRECONDITION


def test_human_output_is_aligned(fano_file, capsys):
    _, out, _ = run(capsys, "stats", "-i", fano_file, "--epsilon", "1")
    head = [ln for ln in out.splitlines() if not ln.startswith("component ")]
    assert len({re.match(r"\S+\s+", ln).end() for ln in head}) == 1


def test_timing_is_opt_in(fano_file, capsys):
    _, plain, _ = run(capsys, "stats", "-i", fano_file, "--machine")
    _, timed, _ = run(capsys, "stats", "-i", fano_file, "--machine", "--timing")
    assert "seconds=" not in plain and "seconds=" in timed


def test_module_entry_point(fano_file):
    proc = subprocess.run([sys.executable, "-m", "bowtiegraph", "stats", "-i", fano_file, "--machine"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "bowties=21" in proc.stdout
