import math

import numpy as np
import pytest

import egelab


def test_sample_is_reproducible_and_hermitian_at_t_one():
    a = egelab.sample_ege(8, 0.5, seed=3)
    b = egelab.sample_ege(8, 0.5, seed=3)
    assert a.shape == (8, 8)
    assert a.dtype == np.complex128
    assert np.array_equal(a, b)
    h = egelab.sample_ege(6, 1.0, seed=1)
    assert np.array_equal(h, h.conj().T)


def test_eigenvalues_match_numpy():
    a = egelab.sample_ege(40, 0.3, seed=5)
    ours, converged = egelab.eigenvalues(a)
    assert converged
    assert ours.strides == (16,)
    ref = list(np.linalg.eigvals(a))
    for lam in ours:
        j = int(np.argmin([abs(lam - r) for r in ref]))
        assert abs(lam - ref[j]) < 1e-8
        ref.pop(j)


def test_f_matches_numpy_determinant():
    a = egelab.sample_ege(10, 0.5, seed=2)
    t, z = 0.5, 0.3 + 0.2j
    m = (1 + t * z * z) * np.eye(10) - z * a / math.sqrt(10)
    want = np.linalg.det(m) * np.exp(-10 * t * z * z / 2)
    assert abs(egelab.f_value(a, t, z) - want) < 1e-10 * abs(want)
    log_abs, _ = egelab.log_f(a, t, 0.0)
    assert log_abs == 0.0


def test_second_moments():
    t, z = 0.4, 0.5j
    closed = math.log(abs(1 + t * z * z) ** 2 + abs(z) ** 2) - t * (z * z).real
    assert egelab.exact_second_moment(1, t, z) == pytest.approx(closed, abs=1e-12)
    exact = egelab.exact_second_moment(4000, 0.5, 0.4)
    assert math.exp(abs(exact - egelab.asymptotic_second_moment(0.5, 0.4))) - 1 < 0.01
    assert egelab.limit_second_moment(0.0, 0.5) == pytest.approx(1 / 0.75)


def test_combinatorics():
    assert egelab.cheb_poly(2, 0.3) == pytest.approx([-0.6, 0.0, 1.0])
    assert egelab.h_coeff(1, 0.25) == pytest.approx(0.25)
    tab = egelab.cov_table(0.5, 2)
    assert tab["phi"][(2, 2)] == pytest.approx(0.5)
    assert tab["phi_c"][(1, 1)] == pytest.approx(1.0)
    assert egelab.exact_trace_expectation(4, 2, 0.5) == pytest.approx(8.0)
    with pytest.raises(egelab.UnsupportedError):
        egelab.h_coeff(7, 0.5)
    with pytest.raises(egelab.DomainError):
        egelab.g_map(0.5, 0.0)


def test_trace_statistics():
    est = egelab.mc_moments(20, 0.5, seed=1, reps=200, kmax=3)
    assert est["cov_abs"].shape == (3, 3)
    assert est["mean_se"].strides == (8,)
    assert abs(est["mean"][1]) < 4 * est["mean_se"][1]
    u = egelab.compute_U(np.zeros((4, 4), dtype=complex), 0.5, 2)
    assert u[1] == pytest.approx(-2.0)


def test_limit_samples_and_outliers():
    f = egelab.sample_f_limit(0.5, [0.0, 0.3], seed=1)
    assert f[0] == 1.0
    eigs = np.array([3.0 * 2.0, 0.0])
    assert egelab.outlier_count(eigs, 4, 0.5, 1.0) == 1


def test_portrait_and_cli(tmp_path):
    a = egelab.sample_ege(12, 0.5, seed=1)
    ppm = egelab.portrait_ppm(a, 0.5, resolution=8)
    assert ppm.startswith(b"P6\n8 8\n255\n")
    assert len(ppm) == 11 + 8 * 8 * 3
    out = tmp_path / "g.csv"
    code, _, _ = egelab.run_cli(["gaf", "--reps", "2", "--out", str(out)])
    assert code == 0
    assert out.read_text().splitlines()[1] == "draw_index,z_re,z_im,f_re,f_im"
    code, _, err = egelab.run_cli(["portrait"])
    assert code == 1 and err
