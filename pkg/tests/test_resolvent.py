import math

import numpy as np
import pytest

from stepslab import (DeterminantOverflowError, EmptyWindowWarning,
                      InvalidRangeError, PoleProximityError,
                      RecursionPoleError, UnitCell, Window, audit_count,
                      chain_determinants, convergence_study,
                      count_zeros_rectangle, default_im_floor, find_bands,
                      find_resonances, lyapunov, q_recursion, q_sequence,
                      reflection_k, reflection_via_q, resonances_k1,
                      spectral_period)

from conftest import DEPTH_A1, EDGE_A3


def test_q_base_case(cell_a):
    rng = np.random.default_rng(2)
    for lam in rng.uniform(0.0, 10.0, 20):
        q = q_recursion(cell_a, lam, 1)
        assert q == pytest.approx(0.6 * np.exp(1.6j * lam), abs=1e-14)
        assert abs(q) == pytest.approx(0.6, abs=1e-14)


def test_q_contracts_in_upper_half_plane(cell_family):
    rng = np.random.default_rng(13)
    for cell in cell_family:
        lams = rng.uniform(0.05, 8.0, 200) + 1j * rng.uniform(0.0, 2.0, 200)
        for lam in lams:
            assert all(abs(q) < 1.0 for q in q_sequence(cell, complex(lam), 8))


def test_q_sixteen_interfaces_bounded(cell_a):
    assert abs(q_recursion(cell_a, 0.9 + 1.0j, 8)) < 1.0


def test_q_periodic_when_commensurate(cell_a):
    T = spectral_period(cell_a)
    rng = np.random.default_rng(19)
    for lam in rng.uniform(0.1, 5.0, 20) + 1j * rng.uniform(-0.5, 0.5, 20):
        a = q_recursion(cell_a, complex(lam), 4)
        b = q_recursion(cell_a, complex(lam) + T, 4)
        assert abs(a - b) <= 1e-10 * (1.0 + abs(a))


def test_q_matches_determinant_route(cell_a):
    # the recursion value and the determinant quotient agree one step up:
    # Q at level 2k+1 equals exp(2 i lam b1 k) * companion / determinant
    d = cell_a.contrast
    lam = 0.37 - 0.21j
    for k in (1, 2, 3):
        q2k = q_recursion(cell_a, lam, k)
        q_odd = np.exp(2j * lam * 0.8) * (-d + q2k) / (1.0 - d * q2k)
        dets = chain_determinants(cell_a, lam, k)
        assert q_odd == pytest.approx(
            np.exp(2j * lam * k) * dets.companion / dets.value, abs=1e-12)


def test_three_step_determinant_closed_form(cell_a):
    b1, b2, x2 = 1.0, 4.0, 0.2
    rng = np.random.default_rng(7)
    for lam in rng.uniform(0.1, 4.0, 10) + 1j * rng.uniform(-1.0, 1.0, 10):
        det = chain_determinants(cell_a, complex(lam), 1).value
        expected = np.exp(1j * lam * b1 * x2) * (
            (b2 - b1) ** 2 * np.exp(1j * lam * b2 * x2)
            - (b2 + b1) ** 2 * np.exp(-1j * lam * b2 * x2))
        assert det == pytest.approx(expected, rel=1e-12)
    assert chain_determinants(cell_a, 0.0, 1).value == pytest.approx(-4.0 * b1 * b2)


def test_determinant_overflow_guard(cell_a):
    with pytest.raises(DeterminantOverflowError):
        chain_determinants(cell_a, -10.0j, 200)


def test_recursion_pole_reports_index(cell_a):
    # zeros of the three-step determinant are poles of the next recursion
    # level; the first one sits on the negative imaginary axis
    lam_pole = 1j * math.log(0.36) / 1.6
    with pytest.raises(RecursionPoleError) as err:
        q_recursion(cell_a, complex(lam_pole), 2)
    assert err.value.index == 3


def test_one_cell_closed_form(cell_a, cell_b, cell_c, uniform):
    spacing = math.pi / 0.8
    found = resonances_k1(cell_a, 8.0)
    assert [r.lam.real for r in found] == pytest.approx([0.0, spacing, 2 * spacing], abs=1e-12)
    assert all(r.lam.imag == pytest.approx(DEPTH_A1, abs=1e-12) for r in found)
    assert all(r.residual <= 1e-12 for r in found)

    for cell in (cell_b, cell_c):
        d = abs(cell.contrast)
        depth = math.log(d) / (cell.b2 * cell.x2)
        step = math.pi / (cell.b2 * cell.x2)
        rs = resonances_k1(cell, 2.5 * step)
        assert [r.lam.real for r in rs] == pytest.approx([0.0, step, 2 * step], abs=1e-12)
        assert all(r.lam.imag == pytest.approx(depth, abs=1e-12) for r in rs)

    assert resonances_k1(uniform, 10.0) == []


def test_one_cell_roots_kill_determinant(cell_a):
    for r in resonances_k1(cell_a, 8.0):
        dets = chain_determinants(cell_a, r.lam, 1)
        assert abs(dets.value) <= 1e-8 * dets.peak


def test_newton_matches_one_cell_closed_form(cell_a):
    closed = resonances_k1(cell_a, 8.0)
    found = find_resonances(cell_a, 1, Window(0.0, 8.0, -2.0))
    assert len(found) == len(closed)
    for a, b in zip(closed, found):
        assert abs(a.lam - b.lam) <= 1e-8


def test_resonance_counts_and_localization(cell_a):
    bands = find_bands(cell_a, 4.0)
    for k in (2, 3):
        rs = find_resonances(cell_a, k, Window(0.0, 4.0, default_im_floor(cell_a)))
        per_band = {1: 0, 2: 0}
        for r in rs:
            assert abs(lyapunov(cell_a, r.lam.real)) < 1.0 + 1e-3
            assert r.lam.imag < 0.0
            assert r.residual <= 1e-10
            per_band[r.band_index] += 1
        assert per_band[1] in (k - 1, k)
        assert per_band[2] in (k - 1, k)


def test_resonance_set_conjugate_symmetric(cell_a):
    d = cell_a.contrast
    for r in find_resonances(cell_a, 3, Window(0.0, 4.0, -1.25)):
        mirrored = -r.lam.conjugate()
        assert abs(d * q_recursion(cell_a, mirrored, 3) - 1.0) <= 1e-8


def test_pole_zero_duality(cell_a):
    for k in (2, 3):
        for r in find_resonances(cell_a, k, Window(0.0, 4.0, -1.25)):
            dets = chain_determinants(cell_a, r.lam, k)
            assert abs(dets.value) <= 1e-8 * dets.peak


def test_reflection_via_q_matches_matrix_route(cell_a, cell_b):
    rng = np.random.default_rng(37)
    for cell in (cell_a, cell_b):
        lams = rng.uniform(0.05, 4.0, 60) + 1j * rng.uniform(-0.3, 0.3, 60)
        for k in (1, 2, 5, 8):
            ra = np.asarray(reflection_k(cell, lams, k))
            rb = np.asarray(reflection_via_q(cell, lams, k))
            err = np.abs(ra - rb) / np.maximum(1.0, np.abs(ra))
            assert np.max(err) <= 1e-9


def test_reflection_via_q_transparency_and_pole(cell_a):
    assert abs(reflection_via_q(cell_a, EDGE_A3, 2)) < 1e-12
    root = resonances_k1(cell_a, 8.0)[1].lam
    with pytest.raises(PoleProximityError):
        reflection_via_q(cell_a, root, 1)


def test_audit_counts_match_newton(cell_a):
    bands = find_bands(cell_a, 4.0)
    floor = default_im_floor(cell_a)
    for k in range(2, 7):
        rs = find_resonances(cell_a, k, Window(0.0, 4.0, floor))
        for band in bands[:2]:
            newton = sum(1 for r in rs if r.band_index == band.index)
            contour = audit_count(cell_a, k, band)
            assert contour == newton
            assert contour in (k - 1, k)


def test_gap_rectangle_holds_no_resonances(cell_a):
    assert count_zeros_rectangle(cell_a, 4, 1.4, 2.5, -1.25, -1e-9) == 0


def test_empty_window_warns(cell_a):
    with pytest.warns(EmptyWindowWarning):
        assert find_resonances(cell_a, 3, Window(1.3, 2.6, -1.0)) == []


def test_homogeneous_has_no_resonances(uniform):
    assert find_resonances(uniform, 5, Window(0.0, 5.0, -2.0)) == []


def test_window_validation():
    with pytest.raises(InvalidRangeError):
        Window(-0.1, 4.0, -1.0)
    with pytest.raises(InvalidRangeError):
        Window(2.0, 1.0, -1.0)
    with pytest.raises(InvalidRangeError):
        Window(0.0, 4.0, 0.5)


def test_convergence_study_rows(cell_a):
    band = find_bands(cell_a, 4.0)[0]
    rows = convergence_study(cell_a, band, [4, 8])
    assert [row.k for row in rows] == [4, 8]
    assert rows[1].max_im > rows[0].max_im
    assert all(row.count > 0 for row in rows)
    again = convergence_study(cell_a, band, [5, 5])
    assert again[0] == again[1]
    with pytest.raises(ValueError):
        convergence_study(cell_a, band, [4, 1])
    with pytest.raises(ValueError):
        convergence_study(cell_a, band, [8, 4])


def test_convergence_study_homogeneous(uniform):
    band = find_bands(uniform, 5.0)[0]
    rows = convergence_study(uniform, band, [2, 4])
    assert all(row.count == 0 and row.max_im is None for row in rows)


def test_find_resonances_deterministic(cell_a):
    w = Window(0.0, 4.0, -1.25)
    first = find_resonances(cell_a, 4, w)
    second = find_resonances(cell_a, 4, w)
    assert [(r.lam, r.residual) for r in first] == [(r.lam, r.residual) for r in second]
