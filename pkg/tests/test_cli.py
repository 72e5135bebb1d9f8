from taualg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_basis_examples(capsys):
    code, out, _ = run(capsys, "basis", "--algebra", "A",
                       "--stem", "6", "--weight", "3")
    assert code == 0 and out.splitlines() == ["x1^3", "x2"]
    code, out, _ = run(capsys, "basis", "--algebra", "A",
                       "--stem", "1", "--weight", "0")
    assert code == 0 and out.strip() == "t0"
    code, out, _ = run(capsys, "basis", "--algebra", "A",
                       "--stem", "0", "--weight", "-1")
    assert code == 0 and out.strip() == "t"


def test_mul_comul_dualmul(capsys):
    code, out, _ = run(capsys, "mul", "--algebra", "A", "t0", "t0")
    assert code == 0 and out.strip() == "t*x1"
    code, out, _ = run(capsys, "comul", "--algebra", "A", "t1")
    assert code == 0 and out.strip() == "t1|1 + x1|t0 + 1|t1"
    code, out, _ = run(capsys, "dualmul", "Sq2", "Sq2")
    assert code == 0 and out.strip() == "t*dual(t0*t1)"


def test_exit_codes(capsys):
    assert run(capsys, "basis", "--algebra", "Zq",
               "--stem", "1", "--weight", "0")[0] == 1
    assert run(capsys, "mul", "--algebra", "A", "t0*", "t0")[0] == 2
    assert run(capsys, "mul", "--algebra", "A", "t0 + x1", "t0")[0] == 2
    assert run(capsys, "basis", "--algebra", "A")[0] == 2  # missing flags
    assert run(capsys, "nonsense")[0] == 2


def test_algebra_name_normalization(capsys):
    for spelled in ["A(1)", "A1", "a1"]:
        code, out, _ = run(capsys, "basis", "--algebra", spelled,
                           "--stem", "1", "--weight", "0")
        assert code == 0 and out.strip() == "t0"


def test_resolve_e0_tower(capsys):
    code, out, _ = run(capsys, "resolve", "--algebra", "E0",
                       "--max-stem", "4", "--max-f", "8")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "s\tf\tw\ttau_type"
    assert lines[1:] == [f"0\t{f}\t0\tfree" for f in range(9)]


def test_resolve_oracle_and_determinism(tmp_path, capsys):
    args = ["resolve", "--algebra", "A1", "--max-stem", "8",
            "--max-f", "5", "--oracle"]
    c1, _, _ = run(capsys, *args, "--out", str(tmp_path / "x"))
    c2, _, _ = run(capsys, *args, "--out", str(tmp_path / "y"))
    assert c1 == c2 == 0
    for ext in [".tsv", ".svg"]:
        a = (tmp_path / ("x" + ext)).read_bytes()
        b = (tmp_path / ("y" + ext)).read_bytes()
        assert a == b and a


def test_resolve_checkpoint_resume(tmp_path, capsys):
    ck = str(tmp_path / "ck.txt")
    args = ["resolve", "--algebra", "E1", "--max-stem", "6", "--max-f", "4"]
    c1, out1, _ = run(capsys, *args, "--checkpoint", ck)
    assert c1 == 0
    # resume from the finished checkpoint: same output, no recompute
    c2, out2, _ = run(capsys, *args, "--checkpoint", ck)
    assert c2 == 0 and out1 == out2


def test_truncate_and_motivic_files(tmp_path, capsys):
    chart = tmp_path / "demo.chart"
    chart.write_text("class a s=3 f=1\nclass b s=2 f=4\nd 3 a b\n")
    code, out, _ = run(capsys, "truncate", "--input", str(chart),
                       "--weight", "3")
    assert code == 0 and out == "class b s=2 f=4\n"
    code, out, _ = run(capsys, "motivic", "--input", str(chart),
                       "--wmin", "2", "--wmax", "4")
    assert code == 0
    assert "2\t4\t3\t1\t0" in out.splitlines()


def test_empty_chart_file(tmp_path, capsys):
    chart = tmp_path / "empty.chart"
    chart.write_text("")
    code, out, _ = run(capsys, "truncate", "--input", str(chart),
                       "--weight", "2")
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "motivic", "--input", str(chart),
                       "--wmin", "0", "--wmax", "2")
    assert code == 0 and out.strip() == "s\tf\tw\tdim\ttau_rank"


def test_chart_parse_error_is_usage_error(tmp_path, capsys):
    chart = tmp_path / "bad.chart"
    chart.write_text("klass a s=0 f=0\n")
    code, _, err = run(capsys, "truncate", "--input", str(chart),
                       "--weight", "0")
    assert code == 2 and "error" in err


def test_ladder_certification(capsys):
    code, out, _ = run(capsys, "ladder", "--step", "all", "--max-stem", "12")
    assert code == 0
    assert "CERTIFIED A//A(2) through stem 12" in out
    code, out, _ = run(capsys, "ladder", "--step", "ko", "--max-stem", "10")
    assert code == 0
    assert "CERTIFIED A//A(1) through stem 10" in out
    code, out, _ = run(capsys, "ladder", "--step", "2", "--max-stem", "8")
    assert code == 0 and "ok" in out
    code, out, _ = run(capsys, "ladder", "--step", "all", "--max-stem", "0")
    assert code == 0
