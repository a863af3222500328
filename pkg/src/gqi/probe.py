"""
Optimal probes at fixed signal photon number.

Two problems are covered:

* pure two-mode Gaussian probes, parameterized (after local reductions) by
  two-mode squeezing ``zeta``, signal squeezing ``zeta_s`` and signal
  displacement ``r``;
* pure single-mode probes ``sum_n c_n |n>``, where the collective decay
  constant is maximized by maximizing ``gamma = sum_n c_{n+1} c_n sqrt(n+1)``.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq, minimize
from scipy.special import gammaln

from .errors import CutoffError
from .metric import F_COL
from .symplectic import Displacement, SingleModeSqueeze, TwoModeSqueeze, apply, vacuum

CONSTRAINT_TOL = 1e-10
NORM_TOL = 1e-10


def _perspective(f, x, y):
    """Vectorized ``y f(x / y)`` with the argument of ``f`` kept in ``[0, 1]``."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    hi, lo = np.maximum(x, y), np.minimum(x, y)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = hi * f(np.where(hi > 0, lo / np.where(hi > 0, hi, 1.0), 0.0))
    return np.where(hi > 0, val, 0.0)


@dataclass(frozen=True)
class PureProbeFamily:
    """TMSV(``zeta``) with signal squeezing ``zeta_s`` and signal displacement ``r`` along x.

    The signal photon number is ``(r² + cosh2ζ cosh2ζ_s - 1) / 2``.
    """

    zeta: float
    zeta_s: float
    r: float

    def __post_init__(self):
        if self.zeta < 0 or self.r < 0:
            raise ValueError("zeta and r must be >= 0")

    @property
    def n_s(self):
        return 0.5 * (self.r ** 2 + math.cosh(2 * self.zeta) * math.cosh(2 * self.zeta_s) - 1.0)

    @classmethod
    def from_constraint(cls, n_s, zeta_s, r):
        """Solve the photon-number constraint for ``zeta``."""
        c = (1.0 + 2.0 * n_s - r * r) / math.cosh(2 * zeta_s)
        if c < 1.0 - CONSTRAINT_TOL:
            raise ValueError(f"(zeta_s={zeta_s}, r={r}) already exceeds n_s={n_s}")
        return cls(0.5 * math.acosh(max(c, 1.0)), zeta_s, r)

    def state(self):
        """The two-mode Gaussian state described by these parameters."""
        return apply(
            vacuum(2),
            TwoModeSqueeze((0, 1), self.zeta),
            SingleModeSqueeze(0, self.zeta_s),
            Displacement((self.r, 0.0), mode=0),
        )


def _family_terms(zeta, zeta_s, r, n_b, f):
    nu1 = 1.0 + 2.0 * n_b
    nu2 = np.cosh(2 * zeta)
    sh2 = np.sinh(2 * zeta) ** 2
    t_tm = 2.0 * sh2 * np.cosh(zeta_s) ** 2
    t_bs = 2.0 * sh2 * np.sinh(zeta_s) ** 2
    d_tm = _perspective(f, (nu1 + 1) * (nu2 + 1), (nu1 - 1) * (nu2 - 1))
    d_bs = _perspective(f, (nu1 - 1) * (nu2 + 1), (nu1 + 1) * (nu2 - 1))
    d_r = _perspective(f, nu1 + 1, nu1 - 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (
            np.where(t_tm > 0, t_tm / d_tm, 0.0)
            + np.where(t_bs > 0, t_bs / d_bs, 0.0)
            + np.where(r > 0, 2.0 * np.asarray(r) ** 2 / d_r, 0.0)
        )
    if not np.all(np.isfinite(out)):
        raise ValueError("family metric diverges (pure background with beam-splitter component)")
    return out


def family_metric(params, n_b, f=F_COL, n_s=None):
    """Metric value ``g(dρ, dρ)`` (decay constant per unit ``kappa``) for a family member.

    When ``n_s`` is given the photon-number constraint is checked.
    """
    if n_s is not None and abs(params.n_s - n_s) > CONSTRAINT_TOL * max(1.0, n_s):
        raise ValueError(f"constraint violated: probe has {params.n_s} signal photons, expected {n_s}")
    return float(_family_terms(params.zeta, params.zeta_s, params.r, n_b, f))


def feasible_point(n_s, u, v):
    """Map the unit square onto the feasible set.

    ``u`` sets ``r² = 2 n_s u`` and ``v`` moves ``cosh2ζ_s`` from 1 to its
    largest allowed value; ``zeta`` follows from the constraint. The metric
    is even in ``zeta_s`` so only ``zeta_s >= 0`` is parameterized.
    """
    u = np.clip(u, 0.0, 1.0)
    v = np.clip(v, 0.0, 1.0)
    r2 = 2.0 * n_s * u
    ch_s = 1.0 + v * (2.0 * n_s - r2)
    ch = np.maximum((1.0 + 2.0 * n_s - r2) / ch_s, 1.0)
    return 0.5 * np.arccosh(ch), 0.5 * np.arccosh(ch_s), np.sqrt(r2)


def family_metric_grid(n_s, n_b, f, u, v):
    zeta, zeta_s, r = feasible_point(n_s, u, v)
    return _family_terms(zeta, zeta_s, r, n_b, f)


@dataclass(frozen=True)
class ProbeSearchResult:
    params: PureProbeFamily
    value: float
    u: float
    v: float


def probe_search(n_s, n_b, f=F_COL, grid=41):
    """Maximize the family metric over the feasible set: grid scan then L-BFGS-B."""
    if not n_s > 0:
        raise ValueError(f"n_s must be positive, got {n_s}")
    axis = np.linspace(0.0, 1.0, grid)
    uu, vv = np.meshgrid(axis, axis, indexing="ij")
    vals = family_metric_grid(n_s, n_b, f, uu, vv)
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    scale = float(vals[i, j]) or 1.0

    def neg(x):
        return -float(family_metric_grid(n_s, n_b, f, x[0], x[1])) / scale

    res = minimize(neg, x0=[axis[i], axis[j]], method="L-BFGS-B", bounds=[(0.0, 1.0), (0.0, 1.0)])
    u, v = (res.x if -res.fun >= vals[i, j] / scale else (axis[i], axis[j]))
    zeta, zeta_s, r = feasible_point(n_s, u, v)
    params = PureProbeFamily(float(zeta), float(zeta_s), float(r))
    return ProbeSearchResult(params, family_metric(params, n_b, f), float(u), float(v))


def tmsv_family(n_s):
    return PureProbeFamily(math.asinh(math.sqrt(n_s)), 0.0, 0.0)


def coherent_family(n_s):
    return PureProbeFamily(0.0, 0.0, math.sqrt(2.0 * n_s))


# --- single-mode probes ---

@dataclass(frozen=True)
class FockCoefficients:
    """Real amplitudes ``c_0 .. c_cutoff`` of a normalized single-mode pure state.

    ``mu1``, ``mu2`` hold Lagrange multipliers when the state solves the
    constrained maximization.
    """

    c: np.ndarray
    mu1: Optional[float] = None
    mu2: Optional[float] = None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        norm = float(c @ c)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"coefficients are not normalized (sum c_n^2 = {norm!r})")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def cutoff(self):
        return self.c.shape[0] - 1

    @property
    def n_s(self):
        return float(np.arange(self.c.shape[0]) @ self.c ** 2)


def single_mode_gamma(coeffs):
    """``sum_n c_{n+1} c_n sqrt(n+1)``, i.e. ``<a>`` for real amplitudes."""
    if not isinstance(coeffs, FockCoefficients):
        coeffs = FockCoefficients(coeffs)
    c = coeffs.c
    return float(np.sum(c[1:] * c[:-1] * np.sqrt(np.arange(1, c.shape[0]))))


def lagrange_residual(c, mu1, mu2, tail=0):
    """Max-norm residual of ``c_{n+1}√(n+1) + c_{n-1}√n + 2 c_n (μ1 + n μ2)``.

    The last ``tail`` rows are skipped, since truncation sets ``c_{cutoff+1} = 0``.
    """
    c = np.asarray(c.c if isinstance(c, FockCoefficients) else c, dtype=float)
    n = np.arange(c.shape[0])
    up = np.zeros_like(c)
    up[:-1] = c[1:] * np.sqrt(n[1:])
    down = np.zeros_like(c)
    down[1:] = c[:-1] * np.sqrt(n[1:])
    res = np.abs(up + down + 2.0 * c * (mu1 + n * mu2))
    if tail:
        res = res[:-tail]
    return float(res.max(initial=0.0))


def _top_state(cutoff, lam):
    n = np.arange(cutoff + 1)
    off = 0.5 * np.sqrt(n[1:])
    h = np.diag(-lam * n.astype(float)) + np.diag(off, 1) + np.diag(off, -1)
    w, vecs = np.linalg.eigh(h)
    vec = vecs[:, -1]
    if vec[0] < 0:
        vec = -vec
    return w[-1], vec


def single_mode_optimize(n_s, cutoff):
    """Maximize ``gamma`` over ``sum c_n² = 1``, ``sum n c_n² = n_s``.

    Stationary points satisfy ``((a + a†)/2 - λ n) c = E c``. For a given
    ``λ > 0`` the top eigenvector maximizes ``gamma - λ <n>`` globally, so
    tuning ``λ`` until ``<n> = n_s`` yields the constrained maximum. The
    multipliers are ``μ1 = -E`` and ``μ2 = -λ``.

    Returns ``(coefficients, gamma)``.
    """
    if not n_s > 0:
        raise ValueError("n_s must be positive")
    if cutoff < 10 * max(1.0, n_s):
        raise CutoffError(f"cutoff {cutoff} < 10 max(1, n_s) = {10 * max(1.0, n_s)}", deficit=math.nan)

    def excess(log_lam):
        _, vec = _top_state(cutoff, math.exp(log_lam))
        return float(np.arange(cutoff + 1) @ vec ** 2) - n_s

    lo, hi = math.log(1e-3 / math.sqrt(n_s)), math.log(1e3 / math.sqrt(n_s))
    if excess(lo) < 0 or excess(hi) > 0:
        raise CutoffError(f"photon-number constraint n_s={n_s} not reachable at cutoff {cutoff}", deficit=math.nan)
    log_lam = brentq(excess, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)
    lam = math.exp(log_lam)
    energy, vec = _top_state(cutoff, lam)
    coeffs = FockCoefficients(vec / np.linalg.norm(vec), mu1=-float(energy), mu2=-lam)
    return coeffs, single_mode_gamma(coeffs)


def displaced_number_state(n, n_s, cutoff):
    """Amplitudes of ``D(β)|n>`` with ``β = sqrt(n_s - n)``, plus the matching multipliers.

    Built by the recursion ``√(m+1) c^(n)_{m+1} = √n c^(n-1)_m + β c^(n)_m``.
    """
    if n < 0 or n_s < n:
        raise ValueError("need 0 <= n <= n_s")
    beta = math.sqrt(n_s - n)
    prev = None
    for k in range(n + 1):
        cur = np.zeros(cutoff + 1)
        sign = -1.0 if k % 2 else 1.0
        cur[0] = sign * math.exp(-0.5 * beta * beta + k * math.log(beta) - 0.5 * gammaln(k + 1)) if beta > 0 else float(k == 0)
        for j in range(cutoff):
            src = beta * cur[j]
            if prev is not None:
                src += math.sqrt(k) * prev[j]
            cur[j + 1] = src / math.sqrt(j + 1)
        prev = cur
    norm = float(prev @ prev)
    if abs(norm - 1.0) > NORM_TOL:
        raise CutoffError(f"cutoff {cutoff} keeps only {norm!r} of the norm", deficit=1.0 - norm)
    if beta == 0:
        return FockCoefficients(prev)
    mu2 = -1.0 / (2.0 * beta)
    mu1 = 1.0 / (4.0 * mu2) - mu2 * n
    return FockCoefficients(prev, mu1=mu1, mu2=mu2)


def coherent_coefficients(n_s, cutoff):
    """Truncated (not renormalized) amplitudes of the coherent state with real ``alpha = sqrt(n_s)``."""
    out = np.zeros(cutoff + 1)
    out[0] = math.exp(-0.5 * n_s)
    alpha = math.sqrt(n_s)
    for k in range(cutoff):
        out[k + 1] = out[k] * alpha / math.sqrt(k + 1)
    return out
