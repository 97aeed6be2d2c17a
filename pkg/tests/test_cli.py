import json

from wreathalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_full_suite_small(capsys):
    code, out, _ = run(capsys, "verify", "--moduli", "2,2")
    report = json.loads(out)
    assert code == 0
    assert report["dim_T"] == 10
    assert report["dim_formula"] == 10
    assert report["num_classes"] == 3
    assert {c["name"] for c in report["checks"]} == {
        "axioms",
        "vanishing",
        "triple-list",
        "triply-regular",
        "primary-module",
        "block-form",
        "matrix-units",
        "ag-forms",
        "commutation",
        "f-family",
        "decomposition",
    }
    assert all(c["status"] == "pass" for c in report["checks"])


def test_verify_report_schema_keys(capsys):
    code, out, _ = run(capsys, "verify", "--moduli", "2", "--checks", "axioms")
    report = json.loads(out)
    assert list(report.keys()) == [
        "moduli",
        "order",
        "num_classes",
        "base_points",
        "dim_T",
        "dim_formula",
        "matrix_block",
        "one_dim_count",
        "checks",
        "version",
    ]
    assert report["dim_T"] is None  # decomposition did not run
    assert list(report["checks"][0].keys()) == ["name", "status", "millis"]


def test_verify_single_factor_decomposition(capsys):
    code, out, _ = run(capsys, "verify", "--moduli", "2", "--checks", "decomposition")
    report = json.loads(out)
    assert code == 0
    assert report["dim_T"] == 4
    assert report["one_dim_count"] == 0


def test_verify_order_cap(capsys):
    code, _, err = run(capsys, "verify", "--moduli", "2,3,5,7")
    assert code == 2
    assert "cap" in err


def test_verify_max_order_flag_and_env(capsys, monkeypatch):
    monkeypatch.setenv("WREATHALG_MAX_ORDER", "4")
    code, _, err = run(capsys, "verify", "--moduli", "2,3", "--checks", "axioms")
    assert code == 2
    code, out, _ = run(
        capsys, "verify", "--moduli", "2,3", "--checks", "axioms", "--max-order", "8"
    )
    assert code == 0
    monkeypatch.setenv("WREATHALG_MAX_ORDER", "not-a-number")
    code, _, err = run(capsys, "verify", "--moduli", "2", "--checks", "axioms")
    assert code == 2


def test_verify_rejects_bad_flags(capsys):
    assert run(capsys, "verify", "--moduli", "2,x")[0] == 2
    assert run(capsys, "verify", "--moduli", "2", "--checks", "nonsense")[0] == 2
    assert run(capsys, "verify", "--moduli", "2", "--base-points", "7")[0] == 2
    assert run(capsys, "verify", "--moduli", "1,2")[0] == 2


def test_verify_base_point_subset(capsys):
    code, out, _ = run(
        capsys, "verify", "--moduli", "2,3", "--base-points", "0,3", "--checks", "triple-list"
    )
    report = json.loads(out)
    assert code == 0
    assert report["base_points"] == [0, 3]


def test_verify_text_format(capsys):
    code, out, _ = run(
        capsys, "verify", "--moduli", "2,2", "--checks", "axioms,decomposition", "--format", "text"
    )
    assert code == 0
    assert "overall: PASS" in out
    assert "dim_T=10" in out


def test_verify_report_written_to_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "verify", "--moduli", "2", "--checks", "axioms", "--out", str(path)
    )
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text())["order"] == 2


def test_report_determinism(capsys, tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    for path in (first, second):
        code, _, _ = run(
            capsys, "verify", "--moduli", "2,2", "--out", str(path)
        )
        assert code == 0
    assert first.read_bytes() == second.read_bytes()


def test_export_and_oracle_roundtrip(capsys, tmp_path):
    table = tmp_path / "t22.txt"
    code, _, _ = run(capsys, "export", "--moduli", "2,2", "--out", str(table))
    assert code == 0
    lines = table.read_text().strip().splitlines()
    assert lines[0] == "4 2"
    assert len(lines) == 5

    code, out, _ = run(capsys, "oracle", str(table))
    report = json.loads(out)
    assert code == 0
    assert report["moduli"] is None
    assert report["dim_T"] == 10  # same dimension the verify command reports
    assert {c["name"] for c in report["checks"]} == {"axioms", "triply-regular", "dimension"}


def test_export_two_vertex_table(capsys, tmp_path):
    table = tmp_path / "t2.txt"
    assert run(capsys, "export", "--moduli", "2", "--out", str(table))[0] == 0
    assert table.read_text() == "2 1\n0 1\n1 0\n"


def test_export_matrix_dump(capsys, tmp_path):
    table = tmp_path / "t.txt"
    dump = tmp_path / "mats.json"
    code, _, _ = run(
        capsys, "export", "--moduli", "2,2", "--out", str(table), "--matrices", str(dump)
    )
    assert code == 0
    data = json.loads(dump.read_text())
    assert data["order"] == 4
    assert len(data["matrices"]) == 3
    entry = data["matrices"][0]["rows"][0][0]
    assert entry == {"conductor": 1, "coeffs": ["1"]}


def test_export_io_error(capsys, tmp_path):
    code, _, err = run(
        capsys, "export", "--moduli", "2", "--out", str(tmp_path / "no" / "way.txt")
    )
    assert code == 3


def test_oracle_cyclic_table(capsys, tmp_path):
    from wreathalg import cyclic_scheme, save_scheme

    table = tmp_path / "c4.txt"
    save_scheme(cyclic_scheme(4), table)
    code, out, _ = run(capsys, "oracle", str(table), "--format", "text")
    assert code == 0
    assert "triply-regular: PASS" in out


def test_oracle_corrupted_table(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    # classes announced as 3 but class 2 never occurs: partition fails
    path.write_text("2 2\n0 1\n1 0\n")
    code, out, _ = run(capsys, "oracle", str(path))
    report = json.loads(out)
    assert code == 1
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["axioms"]["status"] == "fail"
    assert by_name["triply-regular"]["status"] == "fail"
    assert "skipped" in by_name["triply-regular"]["witness"]


def test_oracle_parse_error(capsys, tmp_path):
    path = tmp_path / "garbage.txt"
    path.write_text("2 1\n0 1 1\n")
    assert run(capsys, "oracle", str(path))[0] == 2
    assert run(capsys, "oracle", str(tmp_path / "missing.txt"))[0] == 2
