"""End-to-end acceptance checks, one test per criterion.

Each test records a ``PASS``/``FAIL`` line; the lines are printed in the
pytest terminal summary and when this file is run as a script.
"""

import time

import numpy as np
import pytest
from scipy.signal import argrelmax

from qi_oms import (
    CovarianceMatrix,
    FilterSpec,
    closed_form_spectra,
    en_spectrum,
    error_probability,
    figure2_params,
    figure4_params,
    figure_of_merit,
    log_negativity,
    optimal_delay_analytic,
    optimal_delay_numeric,
    output_spectra,
    phase_derivative_check,
    project_covariance,
    pt_symplectic_eigenvalue,
    scattering_coefficients,
    snr_qi,
)
from qi_oms.experiments import run_figure

from conftest import random_params
from oracles import eigen_oracle, linear_solve, random_physical

RESULTS = []
GRID = np.linspace(-10, 10, 10_000)


def record(number, title, ok, detail):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def parameter_sets(count=50, seed=2024):
    rng = np.random.default_rng(seed)
    return [random_params(rng) for _ in range(count)]


def test_criterion_01_commutators():
    start = time.perf_counter()
    worst = 0.0
    for params in parameter_sets():
        s = scattering_coefficients(params, GRID)
        worst = max(worst, np.abs(s.commutator_plus() - 1).max(),
                    np.abs(s.commutator_minus() - 1).max())
    elapsed = time.perf_counter() - start
    record(1, "commutator preservation", worst <= 1e-10 and elapsed < 10,
           f"max deviation {worst:.2e}, {elapsed:.2f} s")


def test_criterion_02_closed_form_oracle():
    worst = 0.0
    for params in parameter_sets():
        ours = output_spectra(params, GRID)
        ref = closed_form_spectra(params, GRID)
        for a, b in ((ours.n_plus, ref.n_plus), (ours.n_minus, ref.n_minus), (ours.x, ref.x)):
            worst = max(worst, (np.abs(a - b) / np.abs(b)).max())
    record(2, "spectra match the closed-form expressions", worst <= 1e-9,
           f"max relative deviation {worst:.2e}")


def brute_force_covariance(params, w):
    """Covariance entries at one frequency from the direct linear solve."""
    out = linear_solve(params, w)
    u, v = out[0], out[1]
    # normal- and anti-normal-ordered source moments of (a+_in, a-_in^dag, b_in)
    normal = np.array([params.n_plus_in, 1 + params.n_minus_in, params.n_b])
    anti = np.array([1 + params.n_plus_in, params.n_minus_in, 1 + params.n_b])
    n_plus = np.sum(np.abs(u) ** 2 * normal)
    n_minus = np.sum(np.abs(v) ** 2 * anti)
    x = np.sum(u * np.conj(v) * anti)
    return CovarianceMatrix.from_moments(n_plus, n_minus, x)


def test_criterion_03_fig2_structure():
    params = figure2_params()
    w = np.linspace(-0.5, 3.0, 35_001)
    n_plus = output_spectra(params, w).n_plus
    peaks = w[argrelmax(n_plus)[0]]
    peaks_ok = len(peaks) == 2 and abs(peaks[0]) < 0.1 and abs(peaks[1] - 1.5) < 0.1

    e_n = en_spectrum(params, [0.0])[0].e_n
    oracle = -np.log2(2 * eigen_oracle(brute_force_covariance(params, 0.0)))
    rel = abs(e_n - oracle) / oracle
    record(3, "two n+ peaks and E_N at w = 0", peaks_ok and rel <= 1e-3,
           f"peaks at {np.round(peaks, 4).tolist()}, E_N {e_n:.6f} vs oracle {oracle:.6f}")


def test_criterion_04_filtered_photon_number():
    cm = project_covariance(figure4_params(), FilterSpec(1.0, 0.0))
    record(4, "filtered photon number", abs(cm.v11 - 0.09) <= 0.02, f"v11 = {cm.v11:.5f}")


def test_criterion_05_headline(illum):
    start = time.perf_counter()
    params = figure4_params()
    report = figure_of_merit(params, illum, FilterSpec(1.0, optimal_delay_analytic(params)))
    elapsed = time.perf_counter() - start
    record(5, "figure of merit at the optimal delay",
           abs(report.f_merit - 1.48) <= 0.08 and elapsed < 30,
           f"F = {report.f_merit:.5f}, {elapsed:.2f} s")


def test_criterion_06a_delay_formula():
    worst = 0.0
    for params in (figure2_params(), figure4_params()):
        t = optimal_delay_analytic(params)
        worst = max(worst, abs(phase_derivative_check(params) - t) / t)
    record("6a", "closed-form delay matches the phase derivative", worst <= 1e-3,
           f"max relative deviation {worst:.2e}")


def test_criterion_06b_delay_argmax(illum):
    params = figure4_params()
    t = optimal_delay_analytic(params)
    found = {s: optimal_delay_numeric(params, illum, s) for s in (0.01, 0.05, 0.1)}
    worst = max(abs(v - t) / t for v in found.values())
    detail = ", ".join(f"sigma={s}: {v:.4f}" for s, v in found.items())
    record("6b", "SNR-maximizing delay within 10% of the closed form", worst <= 0.1,
           f"closed form {t:.4f}; {detail}; max relative deviation {worst:.3f}")


def test_criterion_07_dominance(illum):
    params = figure4_params()
    t = optimal_delay_analytic(params)
    sigmas = np.linspace(0.1, 2.0, 20)
    gains = [snr_qi(params, illum, FilterSpec(s, t)) - snr_qi(params, illum, FilterSpec(s, 0.0))
             for s in sigmas]
    record(7, "delayed filter dominates", min(gains) >= 0, f"min SNR gain {min(gains):.3e}")


def test_criterion_08_ridge():
    start = time.perf_counter()
    ds = run_figure("fig3")
    elapsed = time.perf_counter() - start
    f = ds.column("f_merit").reshape(25, 25)
    i, j = np.unravel_index(np.nanargmax(f), f.shape)
    c1, c2 = ds.column("c1")[i * 25 + j], ds.column("c2")[i * 25 + j]
    record(8, "figure-of-merit ridge on the diagonal", abs(i - j) <= 1 and elapsed < 300,
           f"max F = {f[i, j]:.4f} at C1 = {c1:.1f}, C2 = {c2:.1f}, {elapsed:.1f} s")


def test_criterion_09_error_probabilities():
    ds = run_figure("fig5")
    p_qi, p_coh = ds.column("p_qi"), ds.column("p_coh")
    ok = (np.all(p_qi <= p_coh) and np.all(np.diff(p_qi) < 0) and np.all(np.diff(p_coh) < 0)
          and len(ds.rows) == 9)
    record(9, "QI error probability below coherent", ok,
           f"p_qi(1e8) = {p_qi[-1]:.3e}, p_coh(1e8) = {p_coh[-1]:.3e}")


def test_criterion_10_limits():
    params = figure4_params()
    v11 = project_covariance(params, FilterSpec(1e-4)).v11
    n0 = float(output_spectra(params, 0.0).n_plus)
    continuity = abs(v11 - n0) / n0

    rng = np.random.default_rng(10)
    worst_en = 0.0
    for _ in range(50):
        p = random_params(rng).replace(g2=0.0)
        sp = output_spectra(p, GRID)
        worst_en = max(worst_en, np.max(log_negativity(
            CovarianceMatrix.from_moments(sp.n_plus, sp.n_minus, sp.x))))
    half = error_probability(0.0)
    record(10, "limits", continuity <= 1e-4 and worst_en == 0 and half == 0.5,
           f"sigma->0 deviation {continuity:.2e}, max E_N at G2=0 {worst_en}, P(0) = {half}")


def test_criterion_11_symplectic_oracle():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(1000):
        cm = random_physical(rng)
        ref = eigen_oracle(cm)
        worst = max(worst, abs(pt_symplectic_eigenvalue(cm) - ref) / ref)
    record(11, "partial-transpose eigenvalue vs eigen-decomposition", worst <= 1e-10,
           f"max relative deviation {worst:.2e}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
