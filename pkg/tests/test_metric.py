import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gqi.errors import DimensionError, SingularMetricError
from gqi.fock import annihilation, petz_metric
from gqi.metric import (
    F_COL,
    F_LOC,
    F_SLD,
    MonotoneFunction,
    TangentVector,
    basis_matrices,
    metric_general,
    metric_terms,
    metric_thermal,
)
from gqi.symplectic import Displacement, Loss, Symplectic, apply, random_state, random_symplectic, vacuum


def _random_tangent(rng, n):
    m = rng.normal(size=(2 * n, 2 * n))
    return TangentVector(rng.normal(size=2 * n), m + m.T)


def test_builtin_functions_are_symmetric():
    for f in (F_COL, F_LOC, F_SLD):
        t = np.logspace(-3, 3, 13)
        assert np.allclose(f(t), t * f(1.0 / t))
    assert F_COL(1.0) == 8.0
    assert F_LOC(1.0) == 8.0


def test_monotone_function_rejects_asymmetric():
    with pytest.raises(ValueError):
        MonotoneFunction(lambda t: 1.0 + 2.0 * t, "bad")
    with pytest.raises(ValueError):
        MonotoneFunction(lambda t: 0.0 * t, "zero")


def test_perspective_limits():
    assert F_COL.perspective(0.0, 0.0) == 0.0
    assert F_COL.perspective(4.0, 0.0) == pytest.approx(8.0)
    assert F_LOC.perspective(2.0, 3.0) == pytest.approx(3.0 * F_LOC(2.0 / 3.0))


def test_basis_is_orthogonal():
    for n in (1, 2, 3):
        mats = basis_matrices(n).all()
        assert len(mats) == n * (2 * n + 1)
        gram = np.array([[np.sum(a * b) for b in mats] for a in mats])
        assert np.allclose(gram, np.diag(np.diag(gram)))


@pytest.mark.parametrize("f", [F_COL, F_LOC])
def test_single_terms(f):
    # one basis direction excites exactly one summand
    nus = np.array([2.5, 1.7])
    basis = basis_matrices(2)
    cases = {
        ("number", 0): basis.N[0],
        ("squeeze", 1): basis.T[1],
        ("two_mode", 0, 1): basis.Sij[0, 1],
        ("beamsplit", 0, 1): basis.Bij[0, 1],
    }
    for key, m in cases.items():
        terms = metric_terms(nus, f, TangentVector(np.zeros(4), m))
        nonzero = [k for k, v in terms.items() if v != 0.0]
        assert nonzero == [key]
    terms = metric_terms(nus, f, TangentVector([0.0, 0.0, 1.0, 0.0], np.zeros((4, 4))))
    assert [k for k, v in terms.items() if v != 0.0] == [("displace", 1)]


def test_pure_state_singular_direction():
    t = TangentVector(np.zeros(2), basis_matrices(1).N[0])
    with pytest.raises(SingularMetricError):
        metric_thermal([1.0], F_COL, t)


def test_pure_state_finite_terms():
    # squeezing a vacuum mode stays finite
    t = TangentVector(np.zeros(2), basis_matrices(1).T[0])
    assert np.isfinite(metric_thermal([1.0], F_COL, t))
    assert metric_thermal([1.0], F_COL, TangentVector(np.zeros(2), np.zeros((2, 2)))) == 0.0


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        metric_thermal([1.5], F_COL, TangentVector(np.zeros(4), np.zeros((4, 4))))
    with pytest.raises(DimensionError):
        TangentVector(np.zeros(2), np.zeros((4, 4)))
    with pytest.raises(ValueError):
        TangentVector(np.zeros(2), np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_positivity_and_zero():
    rng = np.random.default_rng(5)
    for _ in range(50):
        s = random_state(2, rng, min_excess=0.1)
        t = _random_tangent(rng, 2)
        for f in (F_COL, F_LOC, F_SLD):
            assert metric_general(s, f, t) > 0.0
            assert metric_general(s, f, 0.0 * t) == 0.0


def test_quadratic_scaling():
    rng = np.random.default_rng(6)
    for _ in range(30):
        s = random_state(2, rng, min_excess=0.05)
        t = _random_tangent(rng, 2)
        a = rng.normal() * 3
        g1 = metric_general(s, F_COL, t)
        assert metric_general(s, F_COL, a * t) == pytest.approx(a * a * g1, rel=1e-12)


def test_unitary_invariance():
    rng = np.random.default_rng(7)
    for _ in range(100):
        s = random_state(2, rng)
        t = _random_tangent(rng, 2)
        S = random_symplectic(2, rng)
        moved = apply(s, Symplectic(S), Displacement(rng.normal(size=4)))
        for f in (F_COL, F_LOC):
            a = metric_general(s, f, t)
            b = metric_general(moved, f, t.transformed(S))
            assert b == pytest.approx(a, rel=1e-9)


def test_monotone_under_loss():
    rng = np.random.default_rng(8)
    for _ in range(100):
        s = random_state(2, rng, min_excess=0.01)
        t = _random_tangent(rng, 2)
        ch = Loss(int(rng.integers(2)), float(rng.random()), float(2 * rng.random()))
        x, _, _ = ch.moments_map(2)
        out = apply(s, ch)
        for f in (F_COL, F_LOC):
            assert metric_general(out, f, t.transformed(x)) <= metric_general(s, f, t) * (1 + 1e-10)


def test_f_col_dominates_f_loc():
    # larger f gives a smaller metric; f_loc <= f_col pointwise
    rng = np.random.default_rng(9)
    for _ in range(30):
        s = random_state(2, rng, min_excess=0.01)
        t = _random_tangent(rng, 2)
        assert metric_general(s, F_COL, t) >= metric_general(s, F_LOC, t) * (1 - 1e-12)


def test_sld_matches_displacement_fisher():
    # SLD Fisher information for a displacement of a thermal mode: 2|dr|² / ν
    nu = 3.0
    t = TangentVector([1.0, 0.0], np.zeros((2, 2)))
    assert metric_thermal([nu], F_SLD, t) == pytest.approx(2.0 / nu)


# --- Fock-space Petz metric oracle ---

D = 40


def _thermal_rho(n, d=D):
    p = (n / (1 + n)) ** np.arange(d) / (1 + n)
    return np.diag(p / p.sum())


def _fock_direction(rho, gen):
    # dρ = i[H, ρ] for a Hermitian generator H
    return 1j * (gen @ rho - rho @ gen)


def _petz_vs_gaussian(n, gen, tangent, f):
    rho = _thermal_rho(n)
    drho = _fock_direction(rho, gen)
    return petz_metric(rho, drho, f), metric_thermal([1 + 2 * n], f, tangent)


@pytest.mark.parametrize("f", [F_COL, F_LOC, F_SLD])
def test_petz_displacement(f):
    a = annihilation(D)
    x = (a + a.T) / math.sqrt(2)
    p = (a - a.T) / (1j * math.sqrt(2))
    # exp(-i ε p) shifts x by ε
    fock, gauss = _petz_vs_gaussian(0.3, -p, TangentVector([1.0, 0.0], np.zeros((2, 2))), f)
    assert fock == pytest.approx(gauss, rel=1e-8)
    assert np.allclose(x, x.conj().T)


@pytest.mark.parametrize("f", [F_COL, F_LOC])
def test_petz_squeeze(f):
    a = annihilation(D)
    n = 0.2
    # H = -(i/2)(a†² - a²) generates V -> diag(e^{2ε}, e^{-2ε}) V
    gen = -0.5j * (a.T @ a.T - a @ a)
    nu = 1 + 2 * n
    t = TangentVector(np.zeros(2), np.diag([2 * nu, -2 * nu]))
    fock, gauss = _petz_vs_gaussian(n, gen, t, f)
    assert fock == pytest.approx(gauss, rel=1e-8)


@pytest.mark.parametrize("f", [F_COL, F_LOC])
def test_petz_number_change(f):
    n = 0.4
    rho = _thermal_rho(n)
    k = np.arange(D)
    dp = rho.diagonal() * (k / n - (k + 1.0) / (1.0 + n))
    fock = petz_metric(rho, np.diag(dp), f)
    t = TangentVector(np.zeros(2), 2.0 * np.eye(2))
    assert fock == pytest.approx(metric_thermal([1 + 2 * n], f, t), rel=1e-8)


@pytest.mark.parametrize("f", [F_COL, F_LOC])
def test_petz_two_mode(f):
    d = 14
    n1, n2 = 0.15, 0.1
    rho = np.kron(_thermal_rho(n1, d), _thermal_rho(n2, d))
    a = np.kron(annihilation(d), np.eye(d))
    b = np.kron(np.eye(d), annihilation(d))
    nu1, nu2 = 1 + 2 * n1, 1 + 2 * n2
    # two-mode squeeze generator -i(a†b† - ab): dV has x1x2 = +c, p1p2 = -c
    gen = -1j * (a.T @ b.T - a @ b)
    c = nu1 + nu2
    dv = np.zeros((4, 4))
    dv[0, 2] = dv[2, 0] = c
    dv[1, 3] = dv[3, 1] = -c
    fock = petz_metric(rho, _fock_direction(rho, gen), f)
    gauss = metric_thermal([nu1, nu2], f, TangentVector(np.zeros(4), dv))
    assert fock == pytest.approx(gauss, rel=1e-6)
    # beam splitter generator -i(a†b - ab†): x1x2 = p1p2 = nu2 - nu1
    gen = -1j * (a.T @ b - a @ b.T)
    dv = np.zeros((4, 4))
    dv[0, 2] = dv[2, 0] = dv[1, 3] = dv[3, 1] = nu2 - nu1
    fock = petz_metric(rho, _fock_direction(rho, gen), f)
    gauss = metric_thermal([nu1, nu2], f, TangentVector(np.zeros(4), dv))
    assert fock == pytest.approx(gauss, rel=1e-6)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.floats(min_value=-5, max_value=5))
def test_scaling_property(seed, a):
    rng = np.random.default_rng(seed)
    s = random_state(1, rng, min_excess=0.05)
    t = _random_tangent(rng, 1)
    g = metric_general(s, F_LOC, t)
    assert metric_general(s, F_LOC, a * t) == pytest.approx(a * a * g, rel=1e-12, abs=1e-300)


def test_vacuum_displacement_value():
    # coherent-state displacement: 2|dr|² / (2 f(0)) at ν = 1
    t = TangentVector([1.0, 0.0, 0.0, 0.0], np.zeros((4, 4)))
    assert metric_general(vacuum(2), F_COL, t) == pytest.approx(2.0 / F_COL.perspective(2.0, 0.0))
