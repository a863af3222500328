"""
Monotone (Petz) metrics restricted to Gaussian states.

At a thermal state with symplectic eigenvalues ``ν_i`` the metric splits into
independent contributions from changes of each ``ν_i``, single-mode squeezing,
two-mode squeezing, beam splitting and displacement. A general state is
reduced to that case by its Williamson decomposition.

Every denominator has the form ``y f(x / y)``; by the symmetry
``f(t) = t f(1/t)`` this equals ``x f(y / x)``, and it is evaluated in
whichever form keeps the argument of ``f`` in ``[0, 1]``. That keeps
pure-mode limits (``ν = 1``) finite whenever they are finite.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

import numpy as np

from .errors import DimensionError, SingularMetricError
from .symplectic import PSD_TOL, SYMMETRY_TOL, require_valid, symplectic_inverse, williamson

SYMMETRY_GRID = np.logspace(-4, 4, 81)
# tangent coefficients below this (relative to the tangent's size) count as zero
ZERO_COEF_TOL = 1e-12
# ν - 1 below this is treated as a pure mode
PURE_TOL = 1e-10


@dataclass(frozen=True)
class MonotoneFunction:
    """Scalar function ``f`` on ``t >= 0`` with ``f(t) = t f(1/t)``.

    Only the symmetry and ``f(1) > 0`` are checked; operator monotonicity is
    the caller's responsibility.
    """

    func: Callable[[float], float] = field(compare=False)
    label: str

    def __post_init__(self):
        t = SYMMETRY_GRID
        with np.errstate(divide="ignore", invalid="ignore"):
            lhs = np.array([self.func(x) for x in t])
            rhs = t * np.array([self.func(1.0 / x) for x in t])
            rel = np.abs(lhs - rhs) / np.abs(lhs)
        if not np.all(np.isfinite(lhs)) or not np.all(rel <= 1e-10):
            raise ValueError(f"{self.label}: f(t) = t f(1/t) violated on the check grid")
        if not self.func(1.0) > 0:
            raise ValueError(f"{self.label}: f(1) must be positive")

    def __call__(self, t):
        return self.func(t)

    def perspective(self, x, y):
        """``y f(x/y)`` for ``x, y >= 0``; zero when the limit vanishes."""
        hi, lo = (x, y) if x >= y else (y, x)
        if hi <= 0.0:
            return 0.0
        try:
            val = hi * self.func(lo / hi)
        except (ZeroDivisionError, ValueError, FloatingPointError):
            return 0.0
        return val if np.isfinite(val) else 0.0


F_COL = MonotoneFunction(lambda t: 2.0 * (np.sqrt(t) + 1.0) ** 2, "collective")
F_LOC = MonotoneFunction(lambda t: 4.0 * (t + 1.0), "local")
# symmetric logarithmic derivative (Bures) metric; g equals the SLD quantum Fisher information
F_SLD = MonotoneFunction(lambda t: 0.5 * (t + 1.0), "sld")


@dataclass(frozen=True)
class TangentVector:
    d_mean: np.ndarray
    d_cov: np.ndarray

    def __post_init__(self):
        d_cov = np.asarray(self.d_cov, dtype=float)
        d_mean = np.asarray(self.d_mean, dtype=float).reshape(-1)
        if d_cov.ndim != 2 or d_cov.shape[0] != d_cov.shape[1] or d_cov.shape[0] != d_mean.shape[0]:
            raise DimensionError(f"tangent shapes {d_mean.shape}, {d_cov.shape} are inconsistent")
        if np.max(np.abs(d_cov - d_cov.T), initial=0.0) > SYMMETRY_TOL:
            raise ValueError("d_cov must be symmetric")
        object.__setattr__(self, "d_mean", d_mean)
        object.__setattr__(self, "d_cov", 0.5 * (d_cov + d_cov.T))

    def __mul__(self, a):
        return TangentVector(a * self.d_mean, a * self.d_cov)

    __rmul__ = __mul__

    def transformed(self, X):
        """Push forward by a linear map: ``dr -> X dr``, ``dV -> X dV X^T``."""
        return TangentVector(X @ self.d_mean, X @ self.d_cov @ X.T)


@dataclass(frozen=True)
class BasisMatrices:
    """Orthogonal basis of symmetric ``2n x 2n`` matrices; mode indices are 0-based."""

    n: int
    N: List[np.ndarray]
    S: List[np.ndarray]
    T: List[np.ndarray]
    Sij: Dict[Tuple[int, int], np.ndarray]
    Tij: Dict[Tuple[int, int], np.ndarray]
    Aij: Dict[Tuple[int, int], np.ndarray]
    Bij: Dict[Tuple[int, int], np.ndarray]

    def all(self):
        out = list(self.N) + list(self.S) + list(self.T)
        for d in (self.Sij, self.Tij, self.Aij, self.Bij):
            out.extend(d[k] for k in sorted(d))
        return out


def basis_matrices(n):
    if n < 1:
        raise ValueError("need at least one mode")
    dim = 2 * n

    def E(*entries):
        m = np.zeros((dim, dim))
        for sign, a, b in entries:
            m[a, b] += sign
        return m

    # x_i -> 2i, p_i -> 2i + 1
    N = [E((1, 2 * i, 2 * i), (1, 2 * i + 1, 2 * i + 1)) for i in range(n)]
    S = [E((1, 2 * i + 1, 2 * i), (1, 2 * i, 2 * i + 1)) for i in range(n)]
    T = [E((1, 2 * i, 2 * i), (-1, 2 * i + 1, 2 * i + 1)) for i in range(n)]
    Sij, Tij, Aij, Bij = {}, {}, {}, {}
    for i in range(n):
        for j in range(i + 1, n):
            xi, pi, xj, pj = 2 * i, 2 * i + 1, 2 * j, 2 * j + 1
            Sij[i, j] = E((1, pj, xi), (1, xj, pi), (1, pi, xj), (1, xi, pj))
            Tij[i, j] = E((1, xj, xi), (-1, pj, pi), (1, xi, xj), (-1, pi, pj))
            Aij[i, j] = E((1, pj, xi), (-1, xj, pi), (-1, pi, xj), (1, xi, pj))
            Bij[i, j] = E((1, xj, xi), (1, pj, pi), (1, xi, xj), (1, pi, pj))
    return BasisMatrices(n, N, S, T, Sij, Tij, Aij, Bij)


def _coef(d_cov, m):
    return float(np.sum(d_cov * m))


def metric_terms(nus, f, t):
    """Individual summands of the thermal-state metric, keyed by kind and mode(s).

    Keys: ``("number", i)``, ``("squeeze", i)``, ``("two_mode", i, j)``,
    ``("beamsplit", i, j)``, ``("displace", i)``.
    """
    nus = np.asarray(nus, dtype=float).reshape(-1)
    n = nus.shape[0]
    if t.d_mean.shape[0] != 2 * n:
        raise DimensionError(f"tangent acts on {t.d_mean.shape[0] // 2} modes, spectrum has {n}")
    if np.any(nus < 1.0 - PSD_TOL):
        raise SingularMetricError(f"symplectic eigenvalues below 1: {nus.tolist()}")
    nus = np.maximum(nus, 1.0)
    pure = nus - 1.0 <= PURE_TOL
    nus = np.where(pure, 1.0, nus)
    basis = basis_matrices(n)
    dV, dr = t.d_cov, t.d_mean
    scale = max(float(np.abs(dV).max(initial=0.0)), float(np.abs(dr).max(initial=0.0)))
    zero = ZERO_COEF_TOL * scale

    terms = {}

    def add(key, numer, denom):
        if numer <= zero * zero:
            terms[key] = 0.0
            return
        if not denom > 0.0:
            raise SingularMetricError(f"term {key} diverges at ν={nus.tolist()} (coefficient² {numer:.3e})")
        terms[key] = numer / denom

    for i in range(n):
        nu = nus[i]
        c = _coef(dV, basis.N[i])
        add(("number", i), 0.25 * c * c, f(1.0) * (nu * nu - 1.0))
        cs, ct = _coef(dV, basis.S[i]), _coef(dV, basis.T[i])
        add(("squeeze", i), 0.25 * (cs * cs + ct * ct), f.perspective((nu + 1.0) ** 2, (nu - 1.0) ** 2))
        d2 = dr[2 * i] ** 2 + dr[2 * i + 1] ** 2
        add(("displace", i), 2.0 * d2, f.perspective(nu + 1.0, nu - 1.0))
    for (i, j) in sorted(basis.Sij):
        ni, nj = nus[i], nus[j]
        cs, ct = _coef(dV, basis.Sij[i, j]), _coef(dV, basis.Tij[i, j])
        add(("two_mode", i, j), 0.125 * (cs * cs + ct * ct), f.perspective((ni + 1) * (nj + 1), (ni - 1) * (nj - 1)))
        ca, cb = _coef(dV, basis.Aij[i, j]), _coef(dV, basis.Bij[i, j])
        add(("beamsplit", i, j), 0.125 * (ca * ca + cb * cb), f.perspective((ni - 1) * (nj + 1), (ni + 1) * (nj - 1)))
    return terms


def metric_thermal(nus, f, t):
    """Metric ``g((dr, dV), (dr, dV))`` at the thermal state ``diag(ν1, ν1, ...)``."""
    return float(sum(metric_terms(nus, f, t).values()))


def diagonalize_tangent(state, t):
    """Williamson spectrum of ``state`` and the tangent expressed in its frame."""
    dec = williamson(state.cov)
    s_inv = symplectic_inverse(dec.S)
    return dec.nus, t.transformed(s_inv)


def metric_general(state, f, t):
    """Metric at an arbitrary valid Gaussian state.

    With ``V = S diag(ν) S^T`` the tangent is mapped to ``(S⁻¹ dr, S⁻¹ dV S⁻ᵀ)``
    and evaluated at the thermal state.
    """
    require_valid(state)
    nus, t_diag = diagonalize_tangent(state, t)
    return metric_thermal(nus, f, t_diag)
