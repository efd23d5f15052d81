"""Coherent-state construction, overlaps, serialization."""

import json
import math

import numpy as np
import pytest

from gcstates import coherent, fockrep, models
from gcstates.exceptions import ConsistencyError

# frozen from a 30-digit arbitrary-precision evaluation (q = 0.1, z = 1)
NORM_Q01_Z1 = 2.24463643712114278
OVERLAP_0_1 = 0.667462692035070049
EXP_25 = 12.1824939607034734


def nonlinear(q=0.1):
    return models.make_model("nonlinear-osc", nonlinearity=q)


def expmass(mu=1.0):
    return models.make_model("exp-mass", alpha=2.0, mu=mu)


ALL = [nonlinear(0.07), nonlinear(0.27), models.make_model("bounded-osc", nonlinearity=0.1),
       expmass(1.0), expmass(2.0)]
IDS = [s.id + str(s.nonlinearity or s.mu) for s in ALL]


def test_vacuum_state():
    st = coherent.construct(nonlinear(), 0.0)
    assert st.dim == 1
    assert st.log_norm == 0.0
    assert st.coeffs()[0] == 1.0 + 0.0j


def test_norm_frozen_value():
    st = coherent.construct(nonlinear(0.1), 1.0)
    assert math.exp(st.log_norm) == pytest.approx(NORM_Q01_Z1, rel=1e-13)
    assert st.log_norm_closed == pytest.approx(st.log_norm, abs=1e-12)


def test_norm_closed_expmass_is_exponential():
    # N = exp(|z|^2 / mu^2)
    assert coherent.norm_log_closed(expmass(2.0), 10.0) == pytest.approx(2.5)
    assert math.exp(coherent.norm_log_closed(expmass(2.0), 10.0)) == pytest.approx(
        EXP_25, rel=1e-14
    )


@pytest.mark.parametrize("spec", ALL, ids=IDS)
@pytest.mark.parametrize("z_abs", [0.5, 1.0, 2.0, 3.5, 5.0])
def test_series_norm_matches_closed_form(spec, z_abs):
    st = coherent.construct(spec, z_abs)
    assert st.log_norm == pytest.approx(
        coherent.norm_log_closed(spec, z_abs**2), abs=1e-9
    )


def test_coefficients_against_direct_sum():
    # rebuild the amplitudes from scratch: zeta^n / sqrt(rho_n N)
    spec = nonlinear(0.1)
    z = 1.3 + 0.4j
    st = coherent.construct(spec, z)
    rho = 1.0
    raw = [1.0 + 0.0j]
    for n in range(1, st.dim):
        rho *= models.step(spec, n)
        raw.append(z**n / math.sqrt(rho))
    raw = np.asarray(raw)
    norm = math.sqrt(float(np.sum(np.abs(raw) ** 2)))
    assert np.allclose(st.coeffs(), raw / norm, atol=1e-13)


def test_unit_norm_and_tail_bound():
    for spec in ALL:
        st = coherent.construct(spec, 2.5, eps=1e-12)
        assert float(np.sum(np.abs(st.coeffs()) ** 2)) == pytest.approx(1.0, abs=1e-13)
        assert 0.0 <= st.tail_bound < 1e-22


def test_truncation_grows_with_label():
    dims = [coherent.construct(nonlinear(), z).dim for z in (0.5, 2.0, 5.0)]
    assert dims[0] < dims[1] < dims[2]


@pytest.mark.parametrize("spec", ALL, ids=IDS)
@pytest.mark.parametrize("z_abs", [0.5, 1.5, 3.0])
def test_annihilation_eigenstate(spec, z_abs):
    eps = 1e-12
    st = coherent.construct(spec, z_abs, eps=eps)
    ops = fockrep.build(spec, st.dim + 1)
    res = coherent.annihilation_residual(st, ops)
    assert res < 1e-10
    # truncation is the only residue, so the bound scales with eps |z|
    assert res <= 10.0 * eps * z_abs


def test_annihilation_complex_label():
    spec = nonlinear(0.27)
    st = coherent.construct(spec, 1.2 - 0.9j)
    ops = fockrep.build(spec, st.dim + 1)
    assert coherent.annihilation_residual(st, ops) < 1e-10


def test_residual_guards():
    st = coherent.construct(nonlinear(), 2.0)
    small = fockrep.build(nonlinear(), 2)
    with pytest.raises(ValueError):
        coherent.annihilation_residual(st, small)
    other = fockrep.build(nonlinear(0.27), st.dim)
    with pytest.raises(ValueError):
        coherent.annihilation_residual(st, other)


# ----------------------------------------------------------------- overlap


def test_self_overlap_is_one():
    for spec in ALL:
        st = coherent.construct(spec, 1.7)
        assert coherent.overlap(st, st) == pytest.approx(1.0, abs=1e-12)


def test_overlap_frozen_vacuum_value():
    spec = nonlinear(0.1)
    a = coherent.construct(spec, 0.0)
    b = coherent.construct(spec, 1.0)
    # <0|z> = N(|z|^2)^{-1/2}
    assert abs(coherent.overlap(a, b)) == pytest.approx(OVERLAP_0_1, rel=1e-12)


def test_overlap_conjugate_symmetry():
    spec = nonlinear(0.17)
    a = coherent.construct(spec, 0.8 + 0.3j)
    b = coherent.construct(spec, -0.5 + 1.1j)
    assert coherent.overlap(a, b) == pytest.approx(
        coherent.overlap(b, a).conjugate(), abs=1e-12
    )


def test_overlap_bounded_by_one():
    rng = np.random.default_rng(7)
    for spec in ALL:
        for _ in range(5):
            za, zb = (complex(*p) for p in rng.normal(size=(2, 2)))
            a = coherent.construct(spec, za)
            b = coherent.construct(spec, zb)
            assert abs(coherent.overlap(a, b)) <= 1.0 + 1e-12


def test_overlap_expmass_gaussian_kernel():
    # normalized overlap exp(conj(z) z' / mu^2 - (|z|^2+|z'|^2)/(2 mu^2))
    spec = expmass(mu=2.0)
    za, zb = 1.0 + 0.5j, -0.3 + 2.0j
    a = coherent.construct(spec, za)
    b = coherent.construct(spec, zb)
    expected = np.exp(
        (za.conjugate() * zb - 0.5 * (abs(za) ** 2 + abs(zb) ** 2)) / 4.0
    )
    assert coherent.overlap(a, b) == pytest.approx(expected, abs=1e-12)


def test_overlap_requires_same_model():
    a = coherent.construct(nonlinear(0.1), 1.0)
    b = coherent.construct(nonlinear(0.27), 1.0)
    with pytest.raises(ValueError):
        coherent.overlap(a, b)


# -------------------------------------------------------------- continuity


@pytest.mark.parametrize("spec", ALL, ids=IDS)
def test_label_continuity_quadratic(spec):
    st = coherent.construct(spec, 1.0 + 0.5j)
    d1 = coherent.label_continuity(st, 1e-3)
    d2 = coherent.label_continuity(st, 5e-4)
    assert 3.5 < d1 / d2 < 4.5


def test_label_continuity_frozen_expmass():
    # ||z+delta> - |z>||^2 = 2(1 - exp(-delta^2/(2 mu^2))) at mu=1 ... the
    # Gaussian kernel makes the small-delta value delta^2 - delta^4/4
    st = coherent.construct(expmass(1.0), 1.0)
    assert coherent.label_continuity(st, 1e-3) == pytest.approx(
        9.99999750e-7, rel=1e-6
    )


def test_label_continuity_rejects_nonpositive():
    st = coherent.construct(nonlinear(), 1.0)
    with pytest.raises(ValueError):
        coherent.label_continuity(st, 0.0)


# ----------------------------------------------------------- serialization


def test_record_round_trip():
    spec = nonlinear(0.27)
    st = coherent.construct(spec, 0.4 - 1.2j)
    rec = coherent.to_record(st)
    json.dumps(rec)  # must be plain data
    back = coherent.coeffs_from_record(rec)
    assert np.allclose(back, st.coeffs(), atol=1e-15)
    assert rec["model"] == "nonlinear-osc"
    assert rec["dim"] == st.dim


def test_construct_rejects_bad_eps():
    with pytest.raises(ValueError):
        coherent.construct(nonlinear(), 1.0, eps=0.0)
    with pytest.raises(ValueError):
        coherent.construct(nonlinear(), 1.0, eps=1.0)
    # anything strictly inside (0, 1) is a legal tolerance
    st = coherent.construct(nonlinear(), 1.0, eps=1e-3)
    assert st.dim >= 2
