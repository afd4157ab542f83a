import json

from hermsub.cli import main
from hermsub.maskio import parse_mask_document

from conftest import bspline_mask, hermite_cubic_mask


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_builtin_bspline2(capsys):
    code, out, _ = run(capsys, "analyze", "bspline-2")
    assert code == 0
    assert "sum rules: order 2" in out
    assert "Hermite mask (r=1) at accuracy 2: true" in out
    assert "sm_p estimate (p=inf): 1" in out
    assert "ConvergentInC0" in out


def test_analyze_dirac(capsys):
    code, out, _ = run(capsys, "analyze", "dirac")
    assert code == 0
    assert "sum rules: order 0" in out
    assert "FailsNecessaryCondition" in out


def test_analyze_hermite_cubic(capsys):
    code, out, _ = run(capsys, "analyze", "hermite-cubic", "--target", "1")
    assert code == 0
    assert "sum rules: order 4" in out
    assert "Hermite mask (r=2) at accuracy 4: true" in out
    assert "ConvergentInC1" in out


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "bspline-3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["sum_rule_order"] == 3
    assert payload["sm_estimate"] == 2.0


def test_analyze_missing_file(capsys):
    code, _, err = run(capsys, "analyze", "/nonexistent/mask.json")
    assert code == 2
    assert "error:" in err


def test_construct_bspline2(capsys, tmp_path):
    out_file = tmp_path / "m.json"
    code, _, err = run(
        capsys, "construct", "--r", "1", "--m", "1", "--support", "0:2",
        "-o", str(out_file),
    )
    assert code == 0
    assert "matching filter jet used" in err
    doc = parse_mask_document(out_file.read_text())
    assert doc.mask == bspline_mask(2)


def test_construct_hermite_cubic(capsys, tmp_path):
    out_file = tmp_path / "hc.json"
    code, _, _ = run(
        capsys, "construct", "--r", "2", "--m", "3", "--support", "-1:1",
        "--interpolatory", "-o", str(out_file),
    )
    assert code == 0
    assert parse_mask_document(out_file.read_text()).mask == hermite_cubic_mask()


def test_construct_infeasible(capsys):
    code, _, err = run(capsys, "construct", "--r", "2", "--m", "3", "--support", "0:0")
    assert code == 2
    assert "error:" in err and "constraints" in err


def test_analyze_on_construct_output_reports_accuracy(capsys, tmp_path):
    out_file = tmp_path / "m.json"
    run(capsys, "construct", "--r", "1", "--m", "3", "--support", "0:4",
        "-o", str(out_file))
    code, out, _ = run(capsys, "analyze", str(out_file))
    assert code == 0
    assert "sum rules: order 4" in out


def test_subdivide_hat_csv(capsys):
    code, out, _ = run(capsys, "subdivide", "bspline-2", "--levels", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,v00"
    assert len(lines) == 2 + 2 * 8  # window [0,2] at level 3


def test_factor_bspline2(capsys, tmp_path):
    code, out, _ = run(
        capsys, "factor", "bspline-2", "--order", "2", "--out-dir", str(tmp_path)
    )
    assert code == 0
    b = parse_mask_document((tmp_path / "bspline-2.b.json").read_text())
    assert [str(m[0][0]) for m in b.mask.coeffs] == ["1/4"]
    v = parse_mask_document((tmp_path / "bspline-2.V.json").read_text())
    assert [str(m[0][0]) for m in v.mask.coeffs] == ["1", "-2", "1"]


def test_factor_insufficient_order(capsys):
    code, _, err = run(capsys, "factor", "dirac", "--order", "1")
    assert code == 3
    assert "arithmetic precondition" in err


def test_cascade_equals_subdivide(capsys):
    code, casc, _ = run(capsys, "cascade", "hermite-cubic", "--levels", "4",
                        "--window", "-1:1")
    assert code == 0
    code, subd, _ = run(capsys, "subdivide", "hermite-cubic", "--levels", "4",
                        "--window", "-1:1")
    assert code == 0
    assert casc == subd


def test_analyze_max_order_caps_probing(capsys):
    code, out, _ = run(capsys, "analyze", "bspline-4", "--max-order", "2")
    assert code == 0
    assert "sum rules: order 2" in out


def test_analyze_finite_p(capsys):
    code, out, _ = run(capsys, "analyze", "bspline-2", "--p", "2", "--levels", "4")
    assert code == 0
    assert "sm_p estimate (p=2" in out


def test_cascade_rejects_orderless_mask(capsys):
    code, _, err = run(capsys, "cascade", "dirac", "--levels", "2")
    assert code == 3
    assert "arithmetic precondition" in err


def test_factor_default_order_is_maximal(capsys, tmp_path):
    code, out, _ = run(capsys, "factor", "bspline-3", "--out-dir", str(tmp_path))
    assert code == 0
    assert "order 3" in out


def test_commands_deterministic(capsys):
    a1 = run(capsys, "analyze", "hermite-cubic")
    a2 = run(capsys, "analyze", "hermite-cubic")
    assert a1 == a2
    s1 = run(capsys, "subdivide", "bspline-3", "--levels", "5", "--float")
    s2 = run(capsys, "subdivide", "bspline-3", "--levels", "5", "--float")
    assert s1 == s2
