import numpy as np
import pytest

from bregsim import _kernels


def central_difference(f, x, h=1e-6):
    """Central finite difference gradient of a scalar function of a vector."""
    x = np.asarray(x, dtype=float)
    g = np.empty(x.size)
    for i in range(x.size):
        e = np.zeros(x.size)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2.0 * h)
    return g


def assert_gradcheck(analytic, numeric, rtol=1e-6):
    """Componentwise |a - n| <= rtol * max(1, |a|)."""
    analytic = np.asarray(analytic)
    numeric = np.asarray(numeric)
    bound = rtol * np.maximum(1.0, np.abs(analytic))
    err = np.abs(analytic - numeric)
    assert np.all(err <= bound), f"gradient mismatch: {err.max()} vs bound {bound.min()}"


@pytest.fixture(params=sorted(_kernels.available()))
def kernel_backend(request, monkeypatch):
    """Run the test once per importable kernel backend."""
    mod = _kernels.available()[request.param]
    monkeypatch.setattr(_kernels, "active", mod)
    return mod
