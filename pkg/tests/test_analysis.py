import numpy as np
import pytest

from mcinterp import (BandSpec, GridSignal, SizeMismatch, ZeroReference,
                      averaged_error, averaged_error_empirical, build_kernel,
                      consistency_residual, omega, rmse, sample_channels,
                      spectral_sampler)
from mcinterp.channels import DERIVATIVE_BANK, IDENTITY, IDENTITY_D1, IDENTITY_HILBERT
from mcinterp.oracle import phi_spectrum

from conftest import random_spectrum

PHI, _ = phi_spectrum()


@pytest.mark.parametrize("bank,band", [
    (IDENTITY, BandSpec(-12, 11, 1)),
    (IDENTITY_HILBERT, BandSpec(-12, 11, 2)),
    (IDENTITY_D1, BandSpec(-12, 11, 2)),
    (DERIVATIVE_BANK, BandSpec(-12, 11, 3)),
])
def test_consistency_for_non_bandlimited(bank, band):
    k = build_kernel(band, bank)
    assert consistency_residual(sample_channels(PHI, bank, band), k) < 1e-9


def test_consistency_detects_wrong_kernel():
    band = BandSpec(-6, 5, 2)
    k = build_kernel(band, IDENTITY_D1)
    s = sample_channels(PHI, IDENTITY_HILBERT, band)
    assert consistency_residual(s, k, IDENTITY_HILBERT) > 1e-3


def test_omega_identity_is_one():
    k = build_kernel(BandSpec(-4, 4), IDENTITY)
    assert np.allclose(omega(k), [1.0])


def test_bandlimited_has_zero_error(rng):
    band = BandSpec(-6, 5, 2)
    k = build_kernel(band, IDENTITY_D1)
    rep = averaged_error(random_spectrum(rng, -6, 5), k)
    assert rep.epsilon == 0 and rep.bound == 0 and rep.out_of_band_energy == 0


def test_identity_error_counts_missing_energy_twice():
    # one out-of-band tone, aliased onto a single in-band frequency
    from mcinterp import Spectrum
    band = BandSpec(-3, 3)
    k = build_kernel(band, IDENTITY)
    rep = averaged_error(Spectrum.from_dict({0: 1.0, 7: 0.5}), k)
    assert rep.epsilon == pytest.approx(np.sqrt(2 * 0.25))


@pytest.mark.parametrize("bank,mu", [(IDENTITY, 24), (IDENTITY_D1, 24),
                                     (DERIVATIVE_BANK, 48)])
def test_closed_form_matches_quadrature(bank, mu):
    band = BandSpec.centered(mu, len(bank))
    k = build_kernel(band, bank)
    rep = averaged_error(PHI, k)
    emp = averaged_error_empirical(spectral_sampler(PHI, bank, band), k, 64, 1024)
    assert emp == pytest.approx(rep.epsilon, rel=1e-2)
    assert rep.epsilon <= rep.bound


def test_report_json():
    k = build_kernel(BandSpec.centered(16, 2), IDENTITY_D1)
    doc = averaged_error(PHI, k).to_json()
    assert set(doc) == {"epsilon", "bound", "out_of_band_energy", "omega"}
    assert len(doc["omega"]) == 2


def test_empirical_needs_enough_nodes():
    k = build_kernel(BandSpec(-3, 3), IDENTITY)
    with pytest.raises(ValueError):
        averaged_error_empirical(spectral_sampler(PHI, IDENTITY, k.band), k, 4)


class TestRmse:
    def test_value(self):
        assert rmse(GridSignal([3.0, 4.0]), GridSignal([3.0, 3.0])) == pytest.approx(0.2)

    def test_zero_reference(self):
        with pytest.raises(ZeroReference):
            rmse(GridSignal([0.0, 0.0]), GridSignal([1.0, 0.0]))

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            rmse(GridSignal([1.0, 2.0]), GridSignal([1.0]))
