"""
Quantum illumination with two-mode Gaussian probes at low target reflectivity.

Mode 0 is the signal, mode 1 the idler. With target reflectivity ``kappa`` the
returned signal is ``sqrt(kappa) a_s + sqrt(1 - kappa) a_B`` where the
background mode holds ``n_b / (1 - kappa)`` thermal photons, so the detector
sees ``n_b`` photons regardless of ``kappa``.

All decay constants are linear in ``kappa``; passing ``kappa=1`` yields the
per-unit-reflectivity rates.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import DimensionError, PreconditionError, SingularMetricError
from .metric import F_COL, F_LOC, TangentVector, metric_general
from .symplectic import (
    Displacement,
    GaussianState,
    Loss,
    SingleModeSqueeze,
    apply,
    mean_photon,
    require_valid,
    tmsv,
    validate,
)

THERMAL_IDLER_TOL = 1e-10
KAPPA_WARN = 0.1


class KappaWarning(UserWarning):
    """Reflectivity is outside the regime where the leading-order rates apply."""


class DecayConstants(NamedTuple):
    gamma_col: float
    gamma_loc: float

    def scaled(self, factor):
        return DecayConstants(self.gamma_col * factor, self.gamma_loc * factor)


def _two_mode(probe):
    if probe.n_modes != 2:
        raise DimensionError(f"probe must have two modes (signal, idler), got {probe.n_modes}")


def coherent_probe(n_s, phase=0.0):
    """Coherent signal with ``n_s`` photons next to a vacuum idler."""
    r = math.sqrt(2.0 * n_s)
    return GaussianState([r * math.cos(phase), r * math.sin(phase), 0.0, 0.0], np.eye(4))


def returned_state(probe, kappa, n_b):
    """Output moments ``X r̄``, ``X V X^T + Y`` for target reflectivity ``kappa``."""
    _two_mode(probe)
    x = np.diag([math.sqrt(kappa), math.sqrt(kappa), 1.0, 1.0])
    y = np.diag([1.0 - kappa + 2.0 * n_b, 1.0 - kappa + 2.0 * n_b, 0.0, 0.0])
    return GaussianState(x @ probe.mean, x @ probe.cov @ x.T + y)


def returned_tangent(probe, n_b=None):
    """Target-absent state and the leading-order change per unit ``sqrt(kappa)``.

    ``probe`` may also be a :class:`QIScenario`, in which case its prepared
    probe and background are used.
    """
    if isinstance(probe, QIScenario):
        probe, n_b = probe.prepared_probe(), probe.n_b
    if n_b is None:
        raise TypeError("n_b is required when a bare probe is given")
    _two_mode(probe)
    rho0 = returned_state(probe, 0.0, n_b)
    c = probe.cov[0:2, 2:4]
    d_cov = np.zeros((4, 4))
    d_cov[0:2, 2:4] = c
    d_cov[2:4, 0:2] = c.T
    d_mean = np.array([probe.mean[0], probe.mean[1], 0.0, 0.0])
    return rho0, TangentVector(d_mean, d_cov)


def _ratio(numer, denom, what):
    if denom > 0.0:
        return numer / denom
    if numer <= 1e-24:
        return 0.0
    raise SingularMetricError(f"{what}: zero denominator with nonzero correlation {numer:.3e}")


def decay_thm1(probe, n_b, kappa=1.0):
    """Closed-form decay constants for probes whose idler is thermal.

    Requires ``a33 = a44`` and ``a34 = 0``; use :func:`decay_general` otherwise.
    """
    _two_mode(probe)
    v = probe.cov
    if abs(v[2, 2] - v[3, 3]) > THERMAL_IDLER_TOL or abs(v[2, 3]) > THERMAL_IDLER_TOL:
        raise PreconditionError(
            "idler block is not thermal (a33 != a44 or a34 != 0); use decay_general"
        )
    n_i = max(0.0, (v[2, 2] - 1.0) / 2.0)
    a13, a14, a23, a24 = v[0, 2], v[0, 3], v[1, 2], v[1, 3]
    u = (a14 + a23) ** 2 + (a13 - a24) ** 2
    w = (a14 - a23) ** 2 + (a13 + a24) ** 2
    r2 = probe.mean[0] ** 2 + probe.mean[1] ** 2

    d1 = math.sqrt(n_b * n_i) + math.sqrt((1.0 + n_b) * (1.0 + n_i))
    d2 = math.sqrt(n_b * (1.0 + n_i)) + math.sqrt((1.0 + n_b) * n_i)
    d3 = math.sqrt(n_b) + math.sqrt(1.0 + n_b)
    col = u / d1 ** 2 + _ratio(w, d2 ** 2, "collective beam-splitter term") + 8.0 * r2 / d3 ** 2
    loc = (
        u / (1.0 + n_b + n_i + 2.0 * n_b * n_i)
        + _ratio(w, n_b + n_i + 2.0 * n_b * n_i, "local beam-splitter term")
        + 8.0 * r2 / (1.0 + 2.0 * n_b)
    )
    return DecayConstants(float(kappa * col / 16.0), float(kappa * loc / 32.0))


def _inv_sqrt_unimodular(m):
    """``m^{-1/2}`` for a 2x2 symmetric positive matrix with unit determinant."""
    adj = np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])
    return (adj + np.eye(2)) / math.sqrt(m[0, 0] + m[1, 1] + 2.0)


def thermalize_idler(probe):
    """Apply the idler-local symplectic that maps the idler block to ``ν2 I``."""
    _two_mode(probe)
    vi = probe.cov[2:4, 2:4]
    det = vi[0, 0] * vi[1, 1] - vi[0, 1] * vi[1, 0]
    if det <= 0:
        raise SingularMetricError(f"idler covariance is singular (det={det:.3e})")
    nu2 = math.sqrt(det)
    s_inv = _inv_sqrt_unimodular(vi / nu2)
    cov = probe.cov.copy()
    cov[0:2, 2:4] = probe.cov[0:2, 2:4] @ s_inv.T
    cov[2:4, 0:2] = cov[0:2, 2:4].T
    cov[2:4, 2:4] = nu2 * np.eye(2)
    mean = probe.mean.copy()
    mean[2:4] = s_inv @ probe.mean[2:4]
    return GaussianState(mean, cov)


def decay_general(probe, n_b, kappa=1.0):
    """Decay constants of an arbitrary valid two-mode probe."""
    _two_mode(probe)
    require_valid(probe)
    return decay_thm1(thermalize_idler(probe), n_b, kappa)


def decay_from_metric(probe, n_b, kappa=1.0):
    """``kappa * g(dρ, dρ)`` from the full Williamson-based metric at the target-absent state."""
    rho0, t = returned_tangent(probe, n_b)
    return DecayConstants(kappa * metric_general(rho0, F_COL, t), kappa * metric_general(rho0, F_LOC, t))


def decay_large_nb(probe, n_b, kappa=1.0):
    """Leading behaviour for ``n_b >> 1``; needs only ``sqrt(det V_i)``."""
    _two_mode(probe)
    vi = probe.cov[2:4, 2:4]
    c = probe.cov[0:2, 2:4]
    det = vi[0, 0] * vi[1, 1] - vi[0, 1] * vi[1, 0]
    if det <= 0:
        raise SingularMetricError(f"idler covariance is singular (det={det:.3e})")
    nu2 = math.sqrt(det)
    q = float(np.trace(c @ np.linalg.solve(vi, c.T)))
    r2 = probe.mean[0] ** 2 + probe.mean[1] ** 2
    col = r2 / 2.0 + nu2 * q / (math.sqrt(nu2 + 1.0) + math.sqrt(max(nu2 - 1.0, 0.0))) ** 2
    loc = r2 / 2.0 + q / 4.0
    pref = kappa / (4.0 * n_b)
    return DecayConstants(float(pref * col), float(pref * loc))


decay_largeNB = decay_large_nb


def coherent_benchmark(n_s, n_b, kappa=1.0):
    """Decay constants of a coherent probe with ``n_s`` signal photons."""
    col = n_s / (math.sqrt(n_b) + math.sqrt(1.0 + n_b)) ** 2
    loc = n_s / (2.0 + 4.0 * n_b)
    return DecayConstants(float(kappa * col), float(kappa * loc))


def tmsv_decay(n_s, n_b, kappa=1.0):
    """Closed-form decay constants of a TMSV probe with an ideal idler."""
    col = n_s * (1.0 + n_s) / (math.sqrt(n_b * n_s) + math.sqrt((1.0 + n_b) * (1.0 + n_s))) ** 2
    loc = n_s * (1.0 + n_s) / (2.0 + 2.0 * n_b + 2.0 * n_s + 4.0 * n_b * n_s)
    return DecayConstants(float(kappa * col), float(kappa * loc))


@dataclass(frozen=True)
class QIScenario:
    """Probe plus target, background, and optional per-mode operations.

    ``signal_ops`` and ``idler_ops`` are channels applied in order before the
    idler memory (``idler_memory = (eta, n_l)``).
    """

    probe: GaussianState
    kappa: float
    n_b: float
    idler_memory: Optional[Tuple[float, float]] = None
    signal_ops: Sequence = field(default_factory=tuple)
    idler_ops: Sequence = field(default_factory=tuple)

    def __post_init__(self):
        _two_mode(self.probe)
        if not 0.0 < self.kappa < 1.0:
            raise ValueError(f"kappa must lie in (0, 1), got {self.kappa}")
        if self.n_b < 0:
            raise ValueError(f"n_b must be >= 0, got {self.n_b}")
        if self.kappa > KAPPA_WARN:
            warnings.warn(
                f"kappa={self.kappa} > {KAPPA_WARN}: leading-order decay constants may be inaccurate",
                KappaWarning,
                stacklevel=2,
            )

    def prepared_probe(self):
        ops = list(self.signal_ops) + list(self.idler_ops)
        if self.idler_memory is not None:
            eta, n_l = self.idler_memory
            ops.append(Loss(1, eta, n_l))
        return apply(self.probe, *ops)

    def returned_tangent(self):
        return returned_tangent(self)


def scenario_decay(scenario):
    return decay_general(scenario.prepared_probe(), scenario.n_b, scenario.kappa)


def quantum_advantage(scenario):
    """``(QA_col, QA_loc)`` against a coherent probe with the same signal photon number."""
    probe = scenario.prepared_probe()
    n_s = mean_photon(probe, 0)
    if not n_s > 0.0:
        raise ValueError("signal mean photon number must be positive")
    ours = decay_general(probe, scenario.n_b, 1.0)
    ref = coherent_benchmark(n_s, scenario.n_b, 1.0)
    return ours.gamma_col / ref.gamma_col, ours.gamma_loc / ref.gamma_loc


# --- idler-memory thresholds ---

def eta_qa1_loc(n_b, n_l):
    """Idler transmissivity at which a displaced TMSV ties a coherent probe (local)."""
    if math.isinf(n_b):
        return 0.5 * (1.0 + 2.0 * n_l) / (1.0 + n_l)
    return (1.0 + n_b + n_l + 2.0 * n_b * n_l) / ((1.0 + 2.0 * n_b) * (1.0 + n_l))


def eta_qa1_col_limit(n_s, n_l):
    """``n_b -> inf`` limit of :func:`eta_qa1_col`."""
    a = (1.0 + 2.0 * n_l) / (1.0 + n_l)
    return 0.25 * a * (1.0 + math.sqrt(1.0 - (1.0 + n_l) / ((1.0 + 2.0 * n_l) ** 2 * (1.0 + n_s))))


def lossy_tmsv_qa_col(eta, n_s, n_b, n_l):
    """``QA_col`` of a TMSV probe whose idler passes a thermal-loss memory.

    Displacing the signal does not move the ``QA = 1`` contour, so only the
    undisplaced probe is needed.
    """
    n_i = eta * n_s + (1.0 - eta) * n_l
    d1 = math.sqrt(n_b * n_i) + math.sqrt((1.0 + n_b) * (1.0 + n_i))
    d3 = math.sqrt(n_b) + math.sqrt(1.0 + n_b)
    return eta * (1.0 + n_s) * d3 * d3 / (d1 * d1)


def eta_qa1_col(n_s, n_b, n_l, xtol=1e-12):
    """Idler transmissivity at which ``QA_col = 1``, or ``None`` when ``QA_col(1) <= 1``.

    ``QA_col`` is sampled on ``η ∈ [0, 1]`` first; if it is not monotone the
    first sign change of a dense scan brackets the root.
    """
    if not n_s > 0:
        raise ValueError("n_s must be positive")
    if math.isinf(n_b):
        lim = eta_qa1_col_limit(n_s, n_l)
        return lim if lim < 1.0 else None

    def g(eta):
        return lossy_tmsv_qa_col(eta, n_s, n_b, n_l) - 1.0

    if g(1.0) <= 0.0:
        return None
    coarse = np.linspace(0.0, 1.0, 33)
    vals = np.array([g(e) for e in coarse])
    if np.all(np.diff(vals) > 0):
        k = int(np.argmax(vals > 0))
        lo, hi = coarse[k - 1], coarse[k]
    else:
        dense = np.linspace(0.0, 1.0, 2001)
        dvals = np.array([g(e) for e in dense])
        k = int(np.argmax(dvals > 0))
        lo, hi = dense[k - 1], dense[k]
    return brentq(g, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps)


# --- idler squeezing ---

def idler_squeeze_limit(probe, n_b, kappa=1.0):
    """Decay constants as idler squeezing (amplifying ``x_i``) goes to infinity.

    Independent of the idler memory.
    """
    _two_mode(probe)
    v = probe.cov
    if abs(v[2, 3]) > THERMAL_IDLER_TOL:
        raise PreconditionError("idler squeezing limit needs a34 = 0")
    r2 = probe.mean[0] ** 2 + probe.mean[1] ** 2
    numer = (v[0, 2] ** 2 + v[1, 2] ** 2) / v[2, 2] + 2.0 * r2
    col = numer / (4.0 * (math.sqrt(n_b) + math.sqrt(1.0 + n_b)) ** 2)
    loc = numer / (8.0 + 16.0 * n_b)
    return DecayConstants(float(kappa * col), float(kappa * loc))


# --- sweeps ---

def signal_op_probe(n_s, delta_n, op):
    """TMSV(``n_s``) with ``delta_n`` photons added to the signal by ``op``.

    ``op`` is ``"displace"`` (along x), ``"squeeze"`` (phase aligned with the
    two-mode squeezing) or ``"tmsv"`` (a stronger source instead).
    """
    if delta_n < 0:
        raise ValueError("delta_n must be >= 0")
    if op == "tmsv":
        return tmsv(n_s + delta_n)
    if op == "displace":
        return apply(tmsv(n_s), Displacement((math.sqrt(2.0 * delta_n), 0.0), mode=0))
    if op == "squeeze":
        zeta = 0.5 * math.acosh(1.0 + 2.0 * delta_n / (1.0 + 2.0 * n_s))
        return apply(tmsv(n_s), SingleModeSqueeze(0, zeta))
    raise ValueError(f"unknown signal operation {op!r}")


def signal_op_sweep(n_s, n_b, kappa, delta_ns, op):
    """Decay constants versus added signal photons; returns ``(gamma_col, gamma_loc)`` arrays."""
    out = [decay_general(signal_op_probe(n_s, float(dn), op), n_b, kappa) for dn in delta_ns]
    return np.array([d.gamma_col for d in out]), np.array([d.gamma_loc for d in out])


def idler_squeezed_probe(n_s, zeta_i, eta, n_l):
    """TMSV whose idler is squeezed by ``diag(e^ζ, e^-ζ)`` and then stored in a lossy memory."""
    return apply(tmsv(n_s), SingleModeSqueeze(1, zeta_i), Loss(1, eta, n_l))


def idler_squeeze_sweep(n_s, n_b, kappa, eta, n_l, zetas):
    """Decay constants versus idler squeezing applied before the memory channel."""
    out = [decay_general(idler_squeezed_probe(n_s, float(z), eta, n_l), n_b, kappa) for z in zetas]
    return np.array([d.gamma_col for d in out]), np.array([d.gamma_loc for d in out])


# --- correlation regions ---

LABELS = ("unphysical", "separable", "entangled_no_advantage", "collective_only", "local_and_collective")


def correlated_thermal(n_s, n_i, a13, a24):
    """Zero-mean state with thermal marginals and ``x``/``p`` cross-correlations."""
    v = np.diag([1.0 + 2.0 * n_s, 1.0 + 2.0 * n_s, 1.0 + 2.0 * n_i, 1.0 + 2.0 * n_i])
    v[0, 2] = v[2, 0] = a13
    v[1, 3] = v[3, 1] = a24
    return GaussianState(np.zeros(4), v)


PARTIAL_TRANSPOSE = np.diag([1.0, 1.0, 1.0, -1.0])


def is_separable(state):
    """PPT test: physicality after flipping the idler momentum (exact for 1x1 modes)."""
    pt = PARTIAL_TRANSPOSE
    return validate(GaussianState(pt @ state.mean, pt @ state.cov @ pt)).valid


def classify_point(n_s, n_i, n_b, a13, a24):
    """Label plus ``(QA_col, QA_loc)``; QA values are NaN for unphysical points."""
    state = correlated_thermal(n_s, n_i, a13, a24)
    if not validate(state).valid:
        return "unphysical", math.nan, math.nan
    ours = decay_thm1(state, n_b)
    ref = coherent_benchmark(n_s, n_b)
    qa_col, qa_loc = ours.gamma_col / ref.gamma_col, ours.gamma_loc / ref.gamma_loc
    if is_separable(state):
        label = "separable"
    elif qa_loc > 1.0 and qa_col > 1.0:
        label = "local_and_collective"
    elif qa_col > 1.0:
        label = "collective_only"
    elif qa_loc > 1.0:
        # f_loc <= f_col pointwise makes this unreachable for the built-in metrics
        raise AssertionError("local advantage without collective advantage")
    else:
        label = "entangled_no_advantage"
    return label, qa_col, qa_loc


@dataclass(frozen=True)
class RegionClassification:
    a13: np.ndarray
    a24: np.ndarray
    labels: np.ndarray
    qa_col: np.ndarray
    qa_loc: np.ndarray


def max_anticorrelation(n_s, n_i):
    """Largest ``c`` with ``a13 = -a24 = c`` physical (the TMSV-like boundary)."""
    a, b = 1.0 + 2.0 * n_s, 1.0 + 2.0 * n_i
    return math.sqrt(max(0.0, a * b - 1.0 - abs(a - b)))


def classify_correlations(n_s, n_i, n_b, a13_values, a24_values):
    """Classify every ``(a13, a24)`` on the product grid; arrays are indexed ``[i13, i24]``."""
    a13_values = np.asarray(a13_values, dtype=float)
    a24_values = np.asarray(a24_values, dtype=float)
    shape = (a13_values.size, a24_values.size)
    labels = np.empty(shape, dtype=object)
    qa_col = np.empty(shape)
    qa_loc = np.empty(shape)
    for i, x in enumerate(a13_values):
        for j, y in enumerate(a24_values):
            labels[i, j], qa_col[i, j], qa_loc[i, j] = classify_point(n_s, n_i, n_b, x, y)
    return RegionClassification(a13_values, a24_values, labels, qa_col, qa_loc)
