import math

import numpy as np
import pytest

from gqi.errors import CutoffError, DimensionError
from gqi.fock import (
    BeamSplitGate,
    CircuitSpec,
    DisplaceGate,
    FockOperator,
    PureLoss,
    QuadraticObservable,
    SqueezeGate,
    ThermalMix,
    ThermalSeed,
    TwoModeSqueezeGate,
    annihilation,
    build_state,
    chernoff_exponent,
    moment_derivative,
    moments,
    observable_moments,
    petz_metric,
    qi_output_pair,
    quadratic_snr,
    snr_maximize,
    snr_rate,
    thermal_probs,
)
from gqi.illumination import coherent_benchmark, coherent_probe, decay_general, returned_tangent, tmsv_decay
from gqi.metric import F_COL, F_LOC
from gqi.symplectic import Displacement, apply, random_state, tmsv

CORPUS = [
    (CircuitSpec(1, [DisplaceGate(0, 0.4 + 0.3j)]), (30,)),
    (CircuitSpec(1, [ThermalSeed(0, 0.3), SqueezeGate(0, 0.2, 0.7)]), (40,)),
    (CircuitSpec(2, [TwoModeSqueezeGate((0, 1), 0.3)]), (24, 24)),
    (CircuitSpec(2, [ThermalSeed(0, 0.2), DisplaceGate(1, 0.5), BeamSplitGate((0, 1), 0.4)]), (24, 24)),
    (CircuitSpec(2, [TwoModeSqueezeGate((0, 1), 0.3), ThermalMix(1, 0.4, 0.6, 24)]), (24, 24)),
    (CircuitSpec(2, [TwoModeSqueezeGate((0, 1), 0.3), PureLoss(0, 0.5)]), (24, 24)),
]


def test_thermal_probs():
    p = thermal_probs(0.5, 60)
    assert p.sum() == pytest.approx(1.0)
    assert np.arange(60) @ p == pytest.approx(0.5)
    assert np.array_equal(thermal_probs(0.0, 3), [1.0, 0.0, 0.0])


@pytest.mark.parametrize("circuit,dims", CORPUS)
def test_moments_match_gaussian(circuit, dims):
    rho = build_state(circuit, dims)
    rho.check()
    mean, cov = moments(rho)
    ref = circuit.gaussian()
    # 1e-12 absorbs rounding once the deficit itself is at rounding level
    tol = 10 * rho.deficit + 1e-12
    assert np.max(np.abs(mean - ref.mean)) <= tol
    assert np.max(np.abs(cov - ref.cov)) <= tol


def test_operator_checks():
    with pytest.raises(DimensionError):
        FockOperator((2, 2), np.eye(3))
    with pytest.raises(ValueError):
        FockOperator((2,), np.array([[1.0, 1.0], [0.0, 0.0]])).check()
    with pytest.raises(ValueError):
        FockOperator((2,), np.diag([0.7, 0.7])).check()
    with pytest.raises(ValueError):
        FockOperator((2,), np.diag([1.2, -0.2])).check()


def test_partial_trace_of_tmsv_is_thermal():
    rho = build_state(CircuitSpec(2, [TwoModeSqueezeGate((0, 1), math.asinh(math.sqrt(0.2)))]), (16, 16))
    red = rho.partial_trace([1])
    assert np.allclose(np.diag(red.data).real, thermal_probs(0.2, 16) / thermal_probs(0.2, 16).sum(), atol=1e-6)
    assert np.allclose(red.data - np.diag(np.diag(red.data)), 0.0, atol=1e-12)


def test_deficit_guard():
    circ = CircuitSpec(1, [DisplaceGate(0, 3.0)])
    with pytest.raises(CutoffError) as err:
        build_state(circ, (6,))
    assert err.value.deficit > 1e-6


def test_circuit_rejects_bad_mode():
    with pytest.raises(ValueError):
        CircuitSpec(1, [DisplaceGate(1, 0.1)])
    with pytest.raises(ValueError):
        ThermalMix(0, 0.1, 1.5, 4)


def _tmsv_circuit(n_s):
    return CircuitSpec(2, [TwoModeSqueezeGate((0, 1), math.asinh(math.sqrt(n_s)))])


def _coherent_circuit(n_s):
    return CircuitSpec(2, [DisplaceGate(0, math.sqrt(n_s))])


def test_output_pair_moments():
    rho0, rho1 = qi_output_pair(_tmsv_circuit(0.1), 0.05, 0.5, (10, 10), 20, 20)
    m0, v0 = moments(rho0)
    m1, v1 = moments(rho1)
    kappa = 0.05
    assert np.allclose(v0[0:2, 0:2], 2.0 * np.eye(2), atol=1e-6)
    assert np.allclose(v0[0:2, 2:4], 0.0, atol=1e-9)
    c = 2.0 * math.sqrt(0.1 * 1.1)
    assert v1[0, 2] == pytest.approx(math.sqrt(kappa) * c, rel=1e-5)
    assert v1[1, 3] == pytest.approx(-math.sqrt(kappa) * c, rel=1e-5)
    assert np.allclose(v1[0:2, 0:2], 2.0 * np.eye(2) + kappa * 0.2 * np.eye(2), atol=1e-5)


def test_chernoff_symmetry():
    rho0, rho1 = qi_output_pair(_tmsv_circuit(0.1), 0.01, 0.5, (10, 10), 20, 20)
    a = chernoff_exponent(rho0, rho1)
    b = chernoff_exponent(rho1, rho0)
    assert a.exponent == pytest.approx(b.exponent, abs=1e-8)
    assert a.s == pytest.approx(1.0 - b.s, abs=1e-4)
    assert chernoff_exponent(rho0, rho0).exponent == pytest.approx(0.0, abs=1e-12)


def test_chernoff_orthogonal_and_dims():
    e0 = FockOperator((2,), np.diag([1.0, 0.0]))
    e1 = FockOperator((2,), np.diag([0.0, 1.0]))
    assert math.isinf(chernoff_exponent(e0, e1).exponent)
    with pytest.raises(DimensionError):
        chernoff_exponent(e0, FockOperator((3,), np.diag([1.0, 0.0, 0.0])))


def test_chernoff_pure_states():
    # pure states: exponent is -log |<a|b>|²
    a = np.zeros(3)
    a[0] = 1.0
    b = np.array([0.6, 0.8, 0.0])
    e = chernoff_exponent(FockOperator((3,), np.outer(a, a)), FockOperator((3,), np.outer(b, b)))
    assert e.exponent == pytest.approx(-math.log(0.36), rel=1e-9)


@pytest.mark.parametrize("n_s,n_b", [(0.1, 0.5), (0.2, 1.0)])
def test_chernoff_oracle_tmsv(n_s, n_b):
    errs = []
    for kappa in (0.01, 0.002):
        rho0, rho1 = qi_output_pair(_tmsv_circuit(n_s), kappa, n_b, (12, 12), 25, 25)
        ref = tmsv_decay(n_s, n_b, kappa).gamma_col
        errs.append(abs(chernoff_exponent(rho0, rho1).exponent - ref) / ref)
    assert errs[0] <= 0.05 and errs[1] <= 0.01
    # leading correction is linear in kappa
    assert errs[1] < errs[0]
    assert errs[0] / errs[1] == pytest.approx(5.0, rel=0.2)


def test_chernoff_oracle_coherent_exact():
    # coherent probes: exponent kappa |α|² (√(N+1) - √N)² with no kappa² term
    rho0, rho1 = qi_output_pair(_coherent_circuit(0.1), 0.01, 0.5, (12, 12), 25, 25)
    ref = coherent_benchmark(0.1, 0.5, 0.01).gamma_col
    assert chernoff_exponent(rho0, rho1).exponent == pytest.approx(ref, rel=1e-6)


def test_petz_metric_on_output_tangent():
    # the output moves by order sqrt(kappa), so the tangent is a difference over sqrt(h)
    n_s, n_b = 0.1, 0.5
    circ = _tmsv_circuit(n_s)
    h = 1e-6
    rho0, rho_p = qi_output_pair(circ, h, n_b, (12, 12), 25, 25)
    drho = (rho_p.data - rho0.data) / math.sqrt(h)
    d = decay_general(tmsv(n_s), n_b)
    assert petz_metric(rho0, drho, F_COL) == pytest.approx(d.gamma_col, rel=1e-3)
    assert petz_metric(rho0, drho, F_LOC) == pytest.approx(d.gamma_loc, rel=1e-3)


def test_moment_derivative_matches_tangent():
    n_s, n_b, h = 0.1, 0.5, 1e-6
    rho0, rho_p = qi_output_pair(_tmsv_circuit(n_s), h, n_b, (12, 12), 25, 25)
    dmean, dcov = moment_derivative(rho0, (rho_p.data - rho0.data) / math.sqrt(h))
    _, t = returned_tangent(tmsv(n_s), n_b)
    assert np.allclose(dmean, t.d_mean, atol=1e-8)
    # the signal block moves at order sqrt(h) beyond the tangent
    assert np.allclose(dcov, t.d_cov, atol=5e-3)


def test_observable_moments_match_fock():
    rng = np.random.default_rng(3)
    G = rng.normal(size=(2, 2))
    obs = QuadraticObservable(G + G.T, rng.normal(size=2), 0.3)
    circ = CircuitSpec(1, [ThermalSeed(0, 0.2), SqueezeGate(0, 0.2), DisplaceGate(0, 0.3)])
    rho = build_state(circ, (40,))
    op = obs.operator((40,))
    mean = rho.expect(op).real
    var = rho.expect(op @ op).real - mean ** 2
    m, v = observable_moments(obs, circ.gaussian())
    assert m == pytest.approx(mean, rel=1e-8)
    assert v == pytest.approx(var, rel=1e-6)


def test_quadratic_observable_checks():
    with pytest.raises(ValueError):
        QuadraticObservable(np.array([[0.0, 1.0], [0.0, 0.0]]), np.zeros(2))
    with pytest.raises(DimensionError):
        QuadraticObservable(np.eye(2), np.zeros(3))


@pytest.mark.parametrize("probe", [tmsv(0.1), coherent_probe(0.1), apply(tmsv(0.05), Displacement((0.2, 0.1), mode=0))])
def test_snr_maximum_equals_local_rate(probe):
    obs, rate = snr_maximize(probe, 0.5)
    target = decay_general(probe, 0.5).gamma_loc
    assert rate == pytest.approx(target, rel=1e-9)
    assert snr_rate(probe, 0.5, obs) == pytest.approx(rate, rel=1e-9)


def test_snr_never_exceeds_local_rate():
    rng = np.random.default_rng(4)
    for _ in range(30):
        probe = random_state(2, rng)
        n_b = float(rng.uniform(0.0, 5.0))
        _, rate = snr_maximize(probe, n_b)
        assert rate <= decay_general(probe, n_b).gamma_loc * (1 + 1e-8)
        G = rng.normal(size=(4, 4))
        obs = QuadraticObservable(G + G.T, rng.normal(size=4))
        assert snr_rate(probe, n_b, obs) <= rate * (1 + 1e-8)


def test_tmsv_product_observable():
    # x_s x_i - p_s p_i attains the local rate for a TMSV
    G = np.zeros((4, 4))
    G[0, 2] = G[2, 0] = 0.5
    G[1, 3] = G[3, 1] = -0.5
    obs = QuadraticObservable(G, np.zeros(4))
    assert snr_rate(tmsv(0.1), 0.5, obs) == pytest.approx(tmsv_decay(0.1, 0.5).gamma_loc, rel=1e-12)
    # finite kappa SNR approaches the rate
    assert quadratic_snr(tmsv(0.1), 1e-6, 0.5, obs) == pytest.approx(tmsv_decay(0.1, 0.5).gamma_loc, rel=1e-2)


def test_quadratic_snr_dimension_guard():
    with pytest.raises(DimensionError):
        quadratic_snr(tmsv(0.1), 0.01, 0.5, QuadraticObservable(np.eye(2), np.zeros(2)))


def test_annihilation_commutator():
    a = annihilation(6)
    comm = a @ a.T - a.T @ a
    assert np.allclose(np.diag(comm)[:-1], 1.0)
