"""Infidelity metrics, the analytic broadband law, and the scan drivers."""

import numpy as np
import pytest

from comphr import (
    AXIS_AREA,
    AXIS_DETUNING,
    HouseholderTarget,
    ScanAxis,
    ScanGrid,
    ValidationError,
    bb_infidelity_analytic,
    bb_phases,
    composite_hr,
    householder_matrix,
    infidelity,
    ms_reduce,
    random_system,
    scan_2d,
    scan_area,
    universal_phases,
)

PI = np.pi


def area_grid(points=161, lo=0.0, hi=2.0):
    return ScanGrid(ScanAxis(AXIS_AREA, lo, hi, points))


# --- infidelity ------------------------------------------------------------------

def test_infidelity_examples():
    m = np.diag([1j, 1.0, -1.0])
    assert infidelity(m, m) == 0.0
    assert infidelity(np.eye(2), np.diag([1j, 1.0])) == pytest.approx(np.sqrt(2.0))
    with pytest.raises(ValidationError):
        infidelity(np.eye(2), np.eye(3))
    with pytest.raises(ValidationError):
        infidelity(np.zeros((2, 3)), np.zeros((2, 3)))


def test_infidelity_of_simulated_reflection():
    sys = random_system(3, seed=5)
    target = householder_matrix(HouseholderTarget(ms_reduce(sys).bright, PI))
    block = composite_hr(sys, bb_phases(1), PI, 0.9 * PI, 0.0)
    assert infidelity(block, target) == pytest.approx(0.04894348370484646, abs=1e-12)


# --- analytic law -------------------------------------------------------------------

def test_analytic_law_values():
    assert bb_infidelity_analytic(PI, PI, 3) == pytest.approx(0.0, abs=1e-16)
    assert bb_infidelity_analytic(PI, 0.9 * PI, 3) == pytest.approx(2.931059561923967e-05)
    assert bb_infidelity_analytic(PI / 2, 0.9 * PI, 3) == pytest.approx(2.072572092298108e-05)
    with pytest.raises(ValidationError):
        bb_infidelity_analytic(PI, PI, 0)


# --- area scans ----------------------------------------------------------------------

def test_scan_area_matches_analytic_law():
    orders = (1, 3, 5, 7, 9)
    result = scan_area([bb_phases(n) for n in orders], PI, area_grid())
    areas = result.grid.axis1.values() * PI
    for i, n in enumerate(orders):
        expected = bb_infidelity_analytic(PI, areas, n)
        assert np.max(np.abs(result.values[i] - expected)) <= 1e-10


def test_scan_area_nominal_point_and_bound():
    families = [bb_phases(n) for n in (1, 3, 5, 9)] + [universal_phases(5, 2)]
    result = scan_area(families, PI / 2, area_grid())
    areas = result.grid.axis1.values()
    j = np.argmin(np.abs(areas - 1.0))
    assert np.all(result.values[:, j] <= 1e-12)
    bb_rows = result.values[:4]
    assert np.all(bb_rows <= 2 * np.sin(PI / 4) * (1 + 1e-9))


def test_scan_area_plateau_widens_with_n():
    families = [bb_phases(n) for n in (1, 3, 5, 9)]
    result = scan_area(families, PI, area_grid())
    widths = [(row < 1e-4).sum() for row in result.values]
    assert widths == sorted(widths)
    assert len(set(widths)) == len(widths)


def test_scan_area_is_symmetric_about_pi():
    result = scan_area([bb_phases(3)], PI / 2, area_grid(81))
    f = result.values[0]
    assert np.max(np.abs(f - f[::-1])) <= 1e-10


def test_scan_area_agrees_with_full_propagation():
    sys = random_system(3, seed=8)
    target = householder_matrix(HouseholderTarget(ms_reduce(sys).bright, PI))
    families = [bb_phases(1), bb_phases(3)]
    grid = area_grid(41)
    result = scan_area(families, PI, grid)
    areas = grid.axis1.values() * PI
    for i, fam in enumerate(families):
        for j, area in enumerate(areas):
            block = composite_hr(sys, fam, PI, area, 0.0)
            assert abs(infidelity(block, target) - result.values[i, j]) <= 1e-9


def test_scan_area_validation():
    grid_2d = ScanGrid(ScanAxis(AXIS_AREA, 0, 2, 5), ScanAxis(AXIS_DETUNING, -1, 1, 5))
    with pytest.raises(ValidationError):
        scan_area([bb_phases(1)], PI, grid_2d)
    with pytest.raises(ValidationError):
        scan_area([], PI, area_grid())
    with pytest.raises(ValidationError):
        ScanAxis(AXIS_AREA, 0.0, 2.0, 1)
    with pytest.raises(ValidationError):
        ScanAxis(AXIS_AREA, 2.0, 0.0, 11)
    with pytest.raises(ValidationError):
        ScanAxis("amplitude", 0.0, 2.0, 11)


# --- 2D scans ---------------------------------------------------------------------------

def grid_2d(points=11):
    return ScanGrid(ScanAxis(AXIS_AREA, 0.0, 2.0, points),
                    ScanAxis(AXIS_DETUNING, -2.0, 2.0, points))


def test_scan_2d_shape_and_nominal_point():
    grid = grid_2d(11)
    result = scan_2d(universal_phases(5, 2), PI, grid)
    assert result.values.shape == (11, 11)
    assert np.all(result.values >= 0.0)
    i = 5  # A/pi = 1.0
    j = 5  # detuning = 0.0
    assert result.values[i, j] <= 1e-12


def test_scan_2d_full_mode_agrees_with_shortcut():
    grid = grid_2d(9)
    fam = universal_phases(5, 2)
    fast = scan_2d(fam, PI, grid)
    sys = random_system(3, seed=7)
    full = scan_2d(fam, PI, grid, full=True, system=sys)
    assert np.max(np.abs(fast.values - full.values)) <= 1e-9


def test_scan_2d_validation():
    with pytest.raises(ValidationError):
        scan_2d(bb_phases(1), PI, area_grid())
    with pytest.raises(ValidationError):
        scan_2d(bb_phases(1), PI, grid_2d(5), full=True)  # no system given


# --- CSV serialization ---------------------------------------------------------------

def test_csv_1d_format():
    families = [bb_phases(1), bb_phases(3), universal_phases(5, 2)]
    result = scan_area(families, PI, area_grid(5))
    lines = result.csv_text().splitlines()
    assert lines[0] == "A_over_pi,F_n1,F_n3,F_u5v2"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    # 17 significant digits survive a round-trip
    for tok, val in zip(first[1:], result.values[:, 0]):
        assert float(tok) == val


def test_csv_2d_format_row_major():
    result = scan_2d(bb_phases(1), PI, grid_2d(3))
    lines = result.csv_text().splitlines()
    assert lines[0] == "A_over_pi,Delta_over_Omega,F"
    assert len(lines) == 10
    rows = [line.split(",") for line in lines[1:]]
    a_col = [float(r[0]) for r in rows]
    d_col = [float(r[1]) for r in rows]
    assert a_col == [0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0]
    assert d_col == [-2.0, 0.0, 2.0] * 3
    for r in rows:
        assert float(r[2]) >= 0.0


def test_csv_file_output_deterministic(tmp_path):
    result = scan_area([bb_phases(3)], PI, area_grid(11))
    p1 = tmp_path / "a.csv"
    p2 = tmp_path / "b.csv"
    result.to_csv(p1)
    result.to_csv(str(p2))
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_text() == result.csv_text()
