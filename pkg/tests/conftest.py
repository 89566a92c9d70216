import numpy as np
import pytest

from mcinterp import Spectrum


def random_spectrum(rng, n1, n2, real=False):
    """Random coefficients on n1..n2; Hermitian-symmetric when ``real``."""
    size = n2 - n1 + 1
    c = rng.normal(size=size) + 1j * rng.normal(size=size)
    if real:
        if n1 != -n2:
            raise ValueError("real spectra need a symmetric band")
        c = (c + np.conj(c[::-1])) / 2
    return Spectrum(n1, c)


def spectrum_at(spec, t):
    """Direct evaluation of sum a(n) e^{int} at arbitrary t."""
    t = np.asarray(t, dtype=float)
    return np.exp(1j * np.multiply.outer(t, spec.frequencies())) @ spec.coeffs


def generic_points(rng, count, l, gap=1e-2):
    """Points at least ``gap`` away from every sample site 2 pi p / l."""
    out = []
    step = 2 * np.pi / l
    while len(out) < count:
        t = rng.uniform(0, 2 * np.pi, 4 * count)
        r = np.mod(t, step)
        ok = (r > gap) & (step - r > gap)
        out.extend(t[ok].tolist())
    return np.array(out[:count])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
