"""Smoke tests for the python bindings."""

import cmath

import numpy as np
import pytest

import qmcq


Q = 0.4


def test_qpoch_matches_direct_product():
    a, q = 0.5, 0.5
    direct = 1.0
    term = a
    for _ in range(64):
        direct *= 1 - term
        term *= q
    assert abs(qmcq.qpoch_inf(a, q) - direct) < 1e-14
    assert abs(qmcq.qpoch_fin(0.5, 0.5, 3) - (0.5 * 0.75 * 0.875)) < 1e-15


def test_q_binomial_identity():
    a, b, z = 0.3 + 0.1j, 0.8, 0.5 - 0.2j
    lhs = qmcq.phi21(a, b, b, Q, z)
    rhs = qmcq.qpoch_inf(a * z, Q) / qmcq.qpoch_inf(z, Q)
    assert abs(lhs - rhs) < 1e-12


def test_kernel_functional_equation():
    lam, x, s = 0.37 + 0.05j, 1.3 + 0.4j, 0.8 - 0.2j
    qlam = cmath.exp(lam * cmath.log(Q))
    for variant in (1, 2):
        ref = (x - qlam * s) / (x - s) * qmcq.kernel_eval(variant, lam, Q, x, s)
        lhs = qlam * qmcq.kernel_eval(variant, lam, Q, Q * x, s)
        assert abs(lhs - ref) < 1e-10 * abs(ref)


def test_tuple_operations_and_middle_convolution():
    t = qmcq.seed_tuple(0.7, [1.0], [1.5], Q)
    assert t.m == 1
    conv = qmcq.q_convolution(t, 0.3)
    assert conv.m == 2

    mc = qmcq.middle_convolution(t, 0.3)
    assert mc["dim_K"] == 0 and mc["dim_L"] == 0
    assert mc["reduced"].m == 2

    added = qmcq.add_mu(conv, 0.6)
    assert np.allclose(added.matrices[1], 0.4**0.6 * np.asarray(conv.matrices[1]))

    doc = conv.to_json()
    back = qmcq.tuple_from_json(doc)
    assert np.allclose(back.matrices[0], conv.matrices[0])


def test_propagate_satisfies_recursion():
    t = qmcq.seed_tuple(0.7, [1.0], [1.5], Q)
    values = qmcq.propagate(t, 1.1 + 0.3j, np.array([1.0 + 0j]), 5)
    x = 1.1 + 0.3j
    for n in range(5):
        b = qmcq.eval_B(t, x)
        assert np.allclose(b @ values[n], values[n + 1])
        x *= Q


def test_catalog_and_spectral_types():
    assert "ghg3" in qmcq.catalog_names()
    res = qmcq.catalog_build("ghg3", {})
    assert res["mc_steps"][0]["dim_K"] == 1
    assert res["mc_steps"][0]["reduced"].m == 3

    st = qmcq.spectral_type(qmcq.catalog_tuple("qhg", {}))
    assert st["rendered"] == "11;11;11"

    with pytest.raises(qmcq.QmcError):
        qmcq.catalog_build("no_such_construction", {})


def test_additivity_smoke():
    t = qmcq.seed_tuple(0.7, [1.0], [1.5], Q)
    rep = qmcq.additivity_check(t, 0.3, 0.4)
    assert rep["passes"]
    assert rep["intertwine_residual"] < 1e-8


def test_jackson_integral_callback():
    f = lambda s: 1.0 / (1.0 + s * s)
    value = qmcq.jackson_integral(f, 1.0, Q, 1e-13)
    direct = (1 - Q) * sum(Q**n * f(Q**n) for n in range(-80, 80))
    assert abs(value - direct) < 1e-10 * abs(direct)
