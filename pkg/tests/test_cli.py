"""End-to-end command-line runs, in process, against temp files."""

import json
from fractions import Fraction

from polychain.chainfile import load_chain, save_chain
from polychain.chains import PolyChain
from polychain.cli import main
from polychain.grid import grid_complex
from polychain.groups import REAL

F = Fraction

HALF_SEGMENT = """{
  "ambient_dim": 2,
  "dim": 1,
  "group": "real",
  "simplices": [
    {"vertices": [["0", "0"], ["1", "0"]], "coeff": "1/2"}
  ]
}
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_mass_prints_exact_and_decimal(tmp_path, capsys):
    path = tmp_path / "seg.json"
    path.write_text(HALF_SEGMENT)
    code, out, err = run(capsys, "mass", str(path))
    assert code == 0
    assert "mass_exact = 1/2" in out
    assert "mass = 0.5" in out
    assert out.rstrip().endswith("VERDICT = PASS")
    assert err == ""


def test_boundary_writes_a_loadable_chain(tmp_path, capsys):
    src = tmp_path / "square.json"
    save_chain(grid_complex(2, 1).full_chain(REAL), str(src))
    dst = tmp_path / "loop.json"
    code, out, _ = run(capsys, "boundary", str(src), "--out", str(dst))
    assert code == 0
    assert "boundary_of_boundary_zero = PASS" in out
    loop = load_chain(str(dst))
    assert loop.mass_exact().as_rational() == 4


def test_flatnorm_exact_route_and_witness_files(tmp_path, capsys):
    src = tmp_path / "loop.json"
    save_chain(grid_complex(2, 1).full_chain(REAL).boundary(), str(src))
    prefix = str(tmp_path / "w")
    code, out, _ = run(capsys, "flatnorm", str(src), "--exact",
                       "--out", prefix)
    assert code == 0
    assert "value_exact = 1" in out
    assert "routes_agree = PASS" in out
    residual = load_chain(prefix + ".residual.json")
    filling = load_chain(prefix + ".filling.json")
    assert residual.is_zero()
    assert filling.mass_exact().as_rational() == 1


def test_project_then_lift_round_trip(tmp_path, capsys):
    top = tmp_path / "top.json"
    code, out, _ = run(capsys, "gen", "top", "--grid", "2,2",
                       "--seed", "5", "--out", str(top))
    assert code == 0
    lifted = tmp_path / "lifted.json"
    code, out, _ = run(capsys, "lift", str(top), "--k", "2",
                       "--out", str(lifted))
    assert code == 0
    assert "mass_ratio_le_3 = PASS" in out
    assert "boundary_ratio_le_5 = PASS" in out
    assert "profile_integral_le_5_2 = PASS" in out
    assert "projection_recovers_input = PASS" in out
    assert load_chain(str(lifted)).group is REAL


def test_lift_with_fixed_threshold(tmp_path, capsys):
    top = tmp_path / "top.json"
    run(capsys, "gen", "top", "--grid", "2,2", "--seed", "3",
        "--out", str(top))
    code, out, _ = run(capsys, "lift", str(top), "--theta", "2/5")
    assert code == 0
    assert "theta = 2/5" in out
    assert "boundary_ratio_le_5" not in out  # only the scan guarantees it
    # a threshold equal to some coefficient must be refused, not rounded
    code, _, err = run(capsys, "lift", str(top), "--theta", "1/2")
    assert code == 2
    assert "collides" in err


def test_lift_of_a_curve_uses_the_loop_route(tmp_path, capsys):
    src = tmp_path / "curve.json"
    run(capsys, "gen", "chain", "--grid", "2,2", "--group", "circle",
        "--dim", "1", "--seed", "2", "--out", str(src))
    code, out, _ = run(capsys, "lift", str(src), "--k", "1",
                       "--epsilon", "1/10")
    assert code == 0
    assert "route = loop" in out
    assert "mass_within_ratio = PASS" in out
    assert "projection_recovers_input = PASS" in out


def test_lift_dimension_assertion_fails_cleanly(tmp_path, capsys):
    src = tmp_path / "curve.json"
    run(capsys, "gen", "chain", "--grid", "2,2", "--group", "circle",
        "--dim", "1", "--seed", "2", "--out", str(src))
    code, _, err = run(capsys, "lift", str(src), "--k", "2")
    assert code == 2
    assert err.startswith("error [lifting]:")


def test_lift_rejects_real_coefficients(tmp_path, capsys):
    path = tmp_path / "seg.json"
    path.write_text(HALF_SEGMENT)
    code, _, err = run(capsys, "lift", str(path))
    assert code == 2
    assert "circle" in err


def test_validate_reports_parse_location(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text('{"ambient_dim": 2,\n  "dim": oops}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1
    assert err.startswith("error [cli]:")
    assert "line 2" in err


def test_validate_accepts_round_trippable_files(tmp_path, capsys):
    path = tmp_path / "seg.json"
    path.write_text(HALF_SEGMENT)
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 0
    assert "round_trip_exact = PASS" in out


def test_missing_file_is_an_io_error(tmp_path, capsys):
    code, _, err = run(capsys, "mass", str(tmp_path / "absent.json"))
    assert code == 1
    assert err.startswith("error [cli]:")


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "gen", "chain", "--grid", "2,2")[0] == 2  # missing --out
    assert run(capsys, "--help")[0] == 0


def test_gen_is_deterministic_per_seed(tmp_path, capsys):
    a, b, c = (tmp_path / name for name in ("a.json", "b.json", "c.json"))
    run(capsys, "gen", "cycle", "--grid", "2,3", "--dim", "1",
        "--seed", "11", "--out", str(a))
    run(capsys, "gen", "cycle", "--grid", "2,3", "--dim", "1",
        "--seed", "11", "--out", str(b))
    run(capsys, "gen", "cycle", "--grid", "2,3", "--dim", "1",
        "--seed", "12", "--out", str(c))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()


def test_reports_are_deterministic_per_seed(tmp_path, capsys):
    src = tmp_path / "chain.json"
    run(capsys, "gen", "chain", "--grid", "2,2", "--dim", "1",
        "--seed", "7", "--out", str(src))
    r1, r2 = tmp_path / "r1.txt", tmp_path / "r2.txt"
    code1, out1, _ = run(capsys, "cycle-extend", str(src),
                         "--report", str(r1))
    code2, out2, _ = run(capsys, "cycle-extend", str(src),
                         "--report", str(r2))
    assert code1 == code2 == 0
    assert out1 == out2
    assert r1.read_bytes() == r2.read_bytes()
    assert "VERDICT = PASS" in out1


def test_cancel_loops_command(tmp_path, capsys):
    src = tmp_path / "defect.json"
    run(capsys, "gen", "loop-defect", "--grid", "2,2", "--seed", "4",
        "--out", str(src))
    code, out, _ = run(capsys, "cancel-loops", str(src))
    assert code == 0
    assert "all_integral = PASS" in out
    assert "boundary_unchanged = PASS" in out
    assert "mass_nonincreasing = PASS" in out


def test_br_correct_fill_route_command(tmp_path, capsys):
    src = tmp_path / "defect.json"
    run(capsys, "gen", "codim-defect", "--grid", "3,1", "--seed", "6",
        "--out", str(src))
    code, out, _ = run(capsys, "br-correct", str(src), "--route", "fill")
    assert code == 0
    assert "d_used = 6" in out
    assert "projection_zero = PASS" in out
    assert "mass_ratio_le_d = PASS" in out


def test_disjoint_rep_command(tmp_path, capsys):
    src = tmp_path / "chain.json"
    run(capsys, "gen", "chain", "--grid", "2,2", "--dim", "1",
        "--terms", "4", "--seed", "8", "--out", str(src))
    out_file = tmp_path / "rep.json"
    code, out, _ = run(capsys, "disjoint-rep", str(src),
                       "--out", str(out_file))
    assert code == 0
    assert "mass_within_bound = PASS" in out
    assert "boundary_preserved = PASS" in out
    rep = load_chain(str(out_file))
    src_chain = load_chain(str(src))
    assert rep.boundary() == src_chain.boundary()


def test_decompose_levels_command(tmp_path, capsys):
    u_path = tmp_path / "u.grid"
    run(capsys, "gen", "function", "--grid", "2,3", "--seed", "9",
        "--out", str(u_path))
    slices_path = tmp_path / "slices.json"
    code, out, _ = run(capsys, "decompose-levels", str(u_path),
                       "--out", str(slices_path))
    assert code == 0
    assert "gap_zero = PASS" in out
    assert "chain_identity = PASS" in out
    doc = json.loads(slices_path.read_text())
    assert isinstance(doc["slices"], list) and doc["slices"]
    first = doc["slices"][0]
    assert set(first) == {"t_low", "t_high", "chain"}
