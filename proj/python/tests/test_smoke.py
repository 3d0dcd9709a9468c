import math

import pytest

import dklt


def test_kernel_value_and_estimate():
    value, err = dklt.macdonald_imag(1.0, 1.0)
    assert value == pytest.approx(0.28942803702599213, abs=1e-15)
    assert 0 <= err < 1e-12


def test_domain_error_maps_to_exception():
    with pytest.raises(dklt.DomainError):
        dklt.macdonald_imag(1.0, -1.0)
    assert issubclass(dklt.OutsideCertifiedWedge, ValueError)


def test_incomplete_bessel_ode():
    for n in range(4):
        assert abs(dklt.ode_residual_j(1.0, n, dklt.PI_CUT)) < 1e-8


def test_roundtrip_recovers_unit_vector():
    rows = dklt.roundtrip("2.30", [1, 0, 0], 3)
    assert [r["n"] for r in rows] == [1, 2, 3]
    assert max(abs(r["error"]) for r in rows) < 1e-8


def test_verify_report():
    r = dklt.verify("biorth_I1", n=1, m=1)
    assert r["passed"]
    assert r["tolerance"] == dklt.default_tolerance("biorth_I1")
    assert "biorth_I1" in dklt.identity_ids()
    with pytest.raises(ValueError):
        dklt.verify("no_such_identity")


def test_analyze_recovers_boundary_coefficient():
    b, err = dklt.analyze("K", "incomplete_j_boundary", 1)
    assert b == pytest.approx(2.0, abs=1e-8)


def test_bvp_field():
    field = dklt.bvp("default", r=(0.5, 4.0, 2), theta=(0.3, 2.8, 2))
    assert field["checks_passed"]
    assert len(field["points"]) == 4
    assert dklt.solution_u(1.0, 0.0)[0] == 0.0
    with pytest.raises(dklt.OutsideCertifiedWedge):
        dklt.pde_residual(1.0, 3.0)


def test_coefficients_catalog():
    a = dklt.coefficients("exp", 3)
    assert a["a"][1] == pytest.approx(math.exp(-2))
