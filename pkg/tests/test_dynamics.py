import numpy as np
import pytest
from scipy.signal import argrelmax

from qi_oms import (
    SingularityError,
    SystemParams,
    UnsupportedConfigurationError,
    closed_form_spectra,
    correlation_profile,
    is_stable,
    output_spectra,
    scattering_coefficients,
    stability_margin,
)

from conftest import random_params
from oracles import linear_solve


def test_empty_cavity_reflection():
    s = scattering_coefficients(SystemParams(g1=0.0, g2=0.0), 0.0)
    assert s.a_plus == pytest.approx(-1.0)
    assert s.b == 0
    assert s.c_plus == 0


@pytest.mark.parametrize("w", [-2.0, 0.0, 0.7, 1.5])
def test_beam_splitter_limit(w):
    s = scattering_coefficients(SystemParams(g1=0.8, g2=0.0), w)
    assert s.b == 0
    assert abs(s.a_plus) ** 2 + abs(s.c_plus) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_squeezing_gain_fig4(fig4):
    # 4 (G1 G2 kappa)^2 / |Delta (kappa - 2 i w)|^2 at w = 0, with C1 = C2 = 500
    expected = 4 * (0.5 * 1.0) ** 2 / (1e-6 + 4 * 1.5**2)
    s = scattering_coefficients(fig4, 0.0)
    assert abs(s.b) ** 2 == pytest.approx(expected, rel=1e-12)
    assert abs(s.b) ** 2 == pytest.approx(0.1111, abs=1e-4)


def test_commutators_random_grid():
    rng = np.random.default_rng(7)
    w = np.linspace(-10, 10, 2001)
    for _ in range(20):
        s = scattering_coefficients(random_params(rng), w)
        np.testing.assert_allclose(s.commutator_plus(), 1.0, atol=1e-10)
        np.testing.assert_allclose(s.commutator_minus(), 1.0, atol=1e-10)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("w", [-3.1, -0.2, 0.0, 0.45, 1.5])
def test_coefficients_match_linear_solve(seed, w):
    params = random_params(np.random.default_rng(seed))
    s = scattering_coefficients(params, w)
    out = linear_solve(params, w)
    # a+_out[w] = A+ a+_in - B a-_in^dag + C+ b_in
    assert out[0, 0] == pytest.approx(s.a_plus, rel=1e-9, abs=1e-12)
    assert out[0, 1] == pytest.approx(-s.b, rel=1e-9, abs=1e-12)
    assert out[0, 2] == pytest.approx(s.c_plus, rel=1e-9, abs=1e-12)
    # (a-_out[-w])^dag = B a+_in + A-* a-_in^dag + C-* b_in
    assert out[1, 0] == pytest.approx(s.b, rel=1e-9, abs=1e-12)
    assert out[1, 1] == pytest.approx(np.conj(s.a_minus), rel=1e-9, abs=1e-12)
    assert out[1, 2] == pytest.approx(np.conj(s.c_minus), rel=1e-9, abs=1e-12)


def test_duality_of_squeezing_coefficient(fig4):
    # the a-_in^dag coefficient in a+_out and the a+_in coefficient in
    # (a-_out)^dag come from two separate columns/rows of the solve
    for w in np.linspace(-2, 2, 9):
        out = linear_solve(fig4, w)
        assert -out[0, 1] == pytest.approx(out[1, 0], rel=1e-10)
        assert np.conj(scattering_coefficients(fig4, w).b) == pytest.approx(np.conj(out[1, 0]))


def test_vacuum_passes_through():
    sp = output_spectra(SystemParams(g1=0.0, g2=0.0), np.linspace(-3, 3, 11))
    assert np.all(sp.n_plus == 0)
    assert np.all(sp.n_minus == 0)
    assert np.all(sp.x == 0)


def test_photon_number_fig4(fig4):
    # |B|^2 + |C+|^2 n_b with |C+|^2 = 4 kappa gamma G1^2 / |Delta|^2
    mech = 4 * 1e-3 * 0.5 / (1e-6 + 9.0) * 61.945
    expected = 1 / (1e-6 + 9.0) + mech
    assert output_spectra(fig4, 0.0).n_plus == pytest.approx(expected, rel=1e-12)
    assert output_spectra(fig4, 0.0).n_plus == pytest.approx(0.125, abs=5e-4)


def test_photon_number_fig2(fig2):
    assert output_spectra(fig2, 0.0).n_plus == pytest.approx(0.4719755, rel=1e-6)


def test_closed_form_agreement_fig4(fig4):
    w = np.linspace(-10, 10, 10_001)
    a, b = output_spectra(fig4, w), closed_form_spectra(fig4, w)
    np.testing.assert_allclose(a.n_plus, b.n_plus, rtol=1e-9)
    np.testing.assert_allclose(a.n_minus, b.n_minus, rtol=1e-9)
    np.testing.assert_allclose(a.x, b.x, rtol=1e-9, atol=1e-12)


def test_closed_form_rejects_thermal_cavity_inputs(fig4):
    with pytest.raises(UnsupportedConfigurationError):
        closed_form_spectra(fig4.replace(n_plus_in=0.1), 0.0)


def test_closed_form_x_vanishes_without_squeezing():
    assert closed_form_spectra(SystemParams(g1=0.7, g2=0.0), 0.3).x == 0


def test_closed_form_decays(fig4):
    far = closed_form_spectra(fig4, np.array([-1e6, 1e6]))
    assert np.all(far.n_plus < 1e-9)
    assert np.all(far.n_minus < 1e-9)


def test_cauchy_schwarz_bound():
    rng = np.random.default_rng(3)
    w = np.linspace(-10, 10, 1001)
    for _ in range(10):
        sp = output_spectra(random_params(rng), w)
        assert np.all(sp.n_plus >= 0) and np.all(sp.n_minus >= 0)
        assert np.all(abs(sp.x) ** 2 <= (sp.n_plus + 1) * (sp.n_minus + 1) * (1 + 1e-12))


def test_thermal_inputs_change_output():
    base = SystemParams()
    hot = base.replace(n_plus_in=0.5, n_minus_in=0.2)
    a, b = output_spectra(base, 0.0), output_spectra(hot, 0.0)
    assert b.n_plus > a.n_plus and b.n_minus > a.n_minus
    s = scattering_coefficients(hot, 0.0)
    # the microwave input reappears weighted by |A+|^2
    extra = abs(s.a_plus) ** 2 * 0.5 + abs(s.b) ** 2 * 0.2
    assert b.n_plus - a.n_plus == pytest.approx(extra, rel=1e-12)


def test_two_peaks_fig2(fig2):
    w = np.concatenate([np.linspace(-0.5, 3.0, 7001), np.linspace(1.45, 1.55, 2001)])
    w = np.unique(w)
    n = output_spectra(fig2, w).n_plus
    peaks = w[argrelmax(n)[0]]
    assert len(peaks) == 2
    assert abs(peaks[0]) < 0.1
    assert abs(peaks[1] - 1.5) < 0.1


def test_correlation_profile_vacuum_form(fig4):
    w = np.linspace(-0.5, 0.5, 11)
    s = scattering_coefficients(fig4, w)
    expected = s.a_plus * abs(s.b) ** 2 + s.c_plus * s.c_minus * s.b * (fig4.n_b + 1)
    np.testing.assert_allclose(correlation_profile(fig4, w), expected, rtol=1e-12)


def test_stability(fig4):
    assert is_stable(fig4)
    assert stability_margin(fig4) < 0
    assert not is_stable(SystemParams.from_cooperativities(1, 1000))


def test_singular_response():
    # Delta(0) = kappa * gamma + G1^2 - G2^2 = 0 for delta = 0
    params = SystemParams(gamma=1e-3, delta=0.0, g1=0.0, g2=np.sqrt(1e-3))
    with pytest.raises(SingularityError):
        scattering_coefficients(params, 0.0)
