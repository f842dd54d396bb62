"""The command-line surface: outputs, exit codes, and JSON stability."""

import json

import pytest

from nilorbit.cli import EXIT_CAP, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == EXIT_OK, err
    return json.loads(out), out


# --- roots -------------------------------------------------------------------

def test_roots_g2(capsys):
    data, _ = run_json(capsys, "roots", "--type", "G2")
    assert data["num_roots"] == 12
    assert data["num_long"] == 6
    assert len(data["xi"]) == 1


def test_roots_a1(capsys):
    data, _ = run_json(capsys, "roots", "--type", "A1")
    assert data["num_roots"] == 2
    assert data["xi"] == []
    assert data["highest_root"] == ["1"]


def test_roots_text(capsys):
    code, out, _ = run(capsys, "roots", "--type", "B2")
    assert code == EXIT_OK
    assert "8 roots" in out
    assert "4 long" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "roots", "--type", "Z9")
    assert code == EXIT_USAGE
    assert "Z9" in err


def test_missing_type_is_usage_error(capsys):
    code, _, err = run(capsys, "roots")
    assert code == EXIT_USAGE


def test_odd_max_degree_rejected(capsys):
    code, _, err = run(capsys, "betti", "min-orbit", "--type", "A1",
                       "--max-degree", "3")
    assert code == EXIT_USAGE
    assert "even" in err


# --- gkm-graph -----------------------------------------------------------------

def test_gkm_graph_a1_borel(capsys):
    data, _ = run_json(capsys, "gkm-graph", "--type", "A1", "--parabolic", "borel")
    assert len(data["vertices"]) == 2
    assert len(data["edges"]) == 2  # one directed edge in each direction
    labels = {tuple(e["label"]) for e in data["edges"]}
    assert labels == {("1",)}


def test_gkm_graph_b2_xi(capsys):
    data, _ = run_json(capsys, "gkm-graph", "--type", "B2", "--parabolic", "xi")
    assert len(data["vertices"]) == 4
    degree = {}
    for e in data["edges"]:
        degree[e["v"]] = degree.get(e["v"], 0) + 1
    assert set(degree.values()) == {3}
    assert all("long_root" in v for v in data["vertices"])


def test_gkm_graph_g2_xi(capsys):
    data, _ = run_json(capsys, "gkm-graph", "--type", "G2")
    assert len(data["vertices"]) == 6
    assert len(data["edges"]) == 30


def test_gkm_graph_explicit_parabolic(capsys):
    data, _ = run_json(capsys, "gkm-graph", "--type", "A3", "--parabolic", "1,3")
    assert len(data["vertices"]) == 6  # S4 / (S2 x S2)
    code, _, err = run(capsys, "gkm-graph", "--type", "A3", "--parabolic", "5")
    assert code == EXIT_USAGE


# --- betti ----------------------------------------------------------------------

def test_betti_min_orbit_a1(capsys):
    data, _ = run_json(capsys, "betti", "min-orbit", "--type", "A1")
    assert data["dims_by_even_degree"] == [1, 1, 0, 0, 0]


def test_betti_min_orbit_b2(capsys):
    data, _ = run_json(capsys, "betti", "min-orbit", "--type", "B2")
    assert data["dims_by_even_degree"] == [1, 2, 3, 4, 4]


def test_betti_reg_orbit_a2(capsys):
    data, _ = run_json(capsys, "betti", "reg-orbit", "--type", "A2",
                       "--max-degree", "6")
    assert data["dims_by_even_degree"] == [1, 2, 2, 1]


def test_betti_flag_target(capsys):
    data, _ = run_json(capsys, "betti", "flag", "--type", "B2",
                       "--parabolic", "xi")
    assert data["dims_by_even_degree"] == [1, 3, 6, 10, 14]


def test_cap_exceeded_exit_code(capsys):
    code, _, err = run(capsys, "betti", "reg-orbit", "--type", "A3", "--cap", "3")
    assert code == EXIT_CAP
    assert "cap" in err.lower()


def test_cap_env_variable(capsys, monkeypatch):
    monkeypatch.setenv("NILORBIT_CAP", "3")
    code, _, _ = run(capsys, "betti", "reg-orbit", "--type", "A3")
    assert code == EXIT_CAP
    # explicit flag wins over the environment
    code, _, _ = run(capsys, "betti", "reg-orbit", "--type", "A3", "--cap", "100000")
    assert code == EXIT_OK


# --- ring -----------------------------------------------------------------------

def test_ring_min_orbit_a1(capsys):
    data, _ = run_json(capsys, "ring", "min-orbit", "--type", "A1",
                       "--max-degree", "4")
    assert data["euler_class"] == ["x1", "-x1"]
    by_degree = {entry["degree"]: entry for entry in data["degrees"]}
    assert by_degree[0]["dimension"] == 1
    assert by_degree[0]["basis"] == [["1", "1"]]
    assert by_degree[2]["quotient_representatives"] == [["x1", "0"]]
    assert by_degree[4]["quotient_dimension"] == 0


def test_ring_flag_xi_b2_degree4(capsys):
    data, _ = run_json(capsys, "ring", "flag-xi", "--type", "B2",
                       "--max-degree", "4")
    by_degree = {entry["degree"]: entry for entry in data["degrees"]}
    assert by_degree[4]["dimension"] == 6
    assert len(by_degree[4]["basis"]) == 6


def test_ring_jobs_deterministic(capsys):
    _, one = run_json(capsys, "ring", "flag-xi", "--type", "B2",
                      "--max-degree", "6", "--jobs", "1")
    _, four = run_json(capsys, "ring", "flag-xi", "--type", "B2",
                       "--max-degree", "6", "--jobs", "4")
    assert one == four


# --- polytope and center ---------------------------------------------------------

def test_polytope_g2(capsys):
    data, _ = run_json(capsys, "polytope", "--type", "G2")
    assert data["num_vertices"] == 6
    assert data["certified"] is True


def test_center_a2(capsys):
    data, _ = run_json(capsys, "center", "--type", "A2", "--max-degree", "4")
    assert data["invariant_factors"] == [3]
    assert data["order"] == 3
    torsion = {row["degree"]: row["torsion"] for row in data["cohomology"]}
    assert torsion[2] == [3] and torsion[3] == []


def test_center_e8_trivial(capsys):
    data, _ = run_json(capsys, "center", "--type", "E8", "--max-degree", "2")
    assert data["invariant_factors"] == []
    assert data["order"] == 1


def test_center_d4_two_factors(capsys):
    data, _ = run_json(capsys, "center", "--type", "D4", "--max-degree", "4")
    assert data["invariant_factors"] == [2, 2]
    torsion = {row["degree"]: row["torsion"] for row in data["cohomology"]}
    assert torsion[2] == [2, 2]   # Kuenneth tensor part
    assert torsion[3] == [2]      # Kuenneth torsion-product part


# --- selftest ---------------------------------------------------------------------

def test_selftest_b2(capsys):
    code, out, _ = run(capsys, "selftest", "--type", "B2", "--max-degree", "10")
    assert code == EXIT_OK
    assert "selftest passed" in out


def test_selftest_g2(capsys):
    code, out, _ = run(capsys, "selftest", "--type", "G2", "--max-degree", "6")
    assert code == EXIT_OK


# --- JSON canonical form -----------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ("roots", "--type", "G2"),
    ("gkm-graph", "--type", "B2"),
    ("betti", "min-orbit", "--type", "B2"),
    ("ring", "min-orbit", "--type", "A1", "--max-degree", "4"),
    ("polytope", "--type", "B3"),
    ("center", "--type", "D4", "--max-degree", "4"),
], ids=lambda a: a[0])
def test_json_round_trip_is_byte_identical(capsys, argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == EXIT_OK, err
    reserialized = json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n"
    assert reserialized == out
