"""
Truncated Fock-space oracle.

States are built by explicit circuits and compared against the Gaussian
formulas: extracted moments, exact quantum Chernoff exponents, Petz metrics
of density matrices, and the signal-to-noise ratio of quadratic observables.

Internally a mixed state is held as an ensemble matrix ``Φ`` with
``ρ = Φ Φ†`` (one column per pure component), which keeps beam-splitter
mixing with thermal ancillas cheap.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
from scipy.optimize import minimize_scalar
from scipy.sparse.linalg import expm_multiply

from .errors import CutoffError, DimensionError, SingularMetricError
from .illumination import returned_state, returned_tangent
from .symplectic import (
    BeamSplitter,
    Displacement,
    Loss,
    SingleModeSqueeze,
    TwoModeSqueeze,
    apply,
    omega,
    vacuum,
)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-8
EIG_TOL = 1e-9
MAX_DEFICIT = 1e-6
CLAMP = 1e-15


def annihilation(d):
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), 1)


def _sparse_local(op, mode, dims):
    out = sp.identity(1, format="csr")
    for k, d in enumerate(dims):
        out = sp.kron(out, sp.csr_matrix(op) if k == mode else sp.identity(d, format="csr"), format="csr")
    return out


def mode_operator(op, mode, dims):
    """Dense ``op`` acting on ``mode`` of the tensor product with cutoffs ``dims``."""
    return _sparse_local(op, mode, dims).toarray()


def thermal_probs(n, d):
    """First ``d`` Bose-Einstein probabilities with mean ``n`` (not renormalized)."""
    k = np.arange(d)
    if n == 0:
        return (k == 0).astype(float)
    return (n / (1.0 + n)) ** k / (1.0 + n)


@dataclass(frozen=True)
class FockOperator:
    """Density matrix on modes with per-mode cutoffs ``dims``.

    ``deficit`` is the probability lost to truncation before renormalization.
    """

    dims: Tuple[int, ...]
    data: np.ndarray = field(repr=False)
    deficit: float = 0.0

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        data = np.asarray(self.data, dtype=complex)
        size = int(np.prod(dims))
        if data.shape != (size, size):
            raise DimensionError(f"matrix shape {data.shape} does not match dims {dims}")
        data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "data", data)

    def check(self):
        """Raise ``ValueError`` unless this is a density matrix within tolerance."""
        herm = np.max(np.abs(self.data - self.data.conj().T))
        if herm > HERMITIAN_TOL:
            raise ValueError(f"not Hermitian (max deviation {herm:.2e})")
        tr = np.trace(self.data).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr!r} differs from 1")
        low = np.linalg.eigvalsh(self.data).min()
        if low < -EIG_TOL:
            raise ValueError(f"negative eigenvalue {low:.2e}")
        return self

    def expect(self, op):
        return complex(np.trace(self.data @ op))

    def partial_trace(self, keep):
        keep = sorted(keep)
        n = len(self.dims)
        t = self.data.reshape(self.dims + self.dims)
        traced = [k for k in range(n) if k not in keep]
        letters = "abcdefghijklmnopqrstuvwxyz"
        row = [letters[k] for k in range(n)]
        col = [letters[k].upper() for k in range(n)]
        for k in traced:
            col[k] = row[k]
        out = "".join(row[k] for k in keep) + "".join(col[k] for k in keep)
        sub = np.einsum("".join(row) + "".join(col) + "->" + out, t)
        d = int(np.prod([self.dims[k] for k in keep]))
        return FockOperator(tuple(self.dims[k] for k in keep), sub.reshape(d, d), self.deficit)


# --- circuits ---

@dataclass(frozen=True)
class ThermalSeed:
    """Replace a mode that is still in vacuum by a thermal state."""

    mode: int
    n: float

    def channels(self):
        return [Loss(self.mode, 0.0, self.n)]


@dataclass(frozen=True)
class TwoModeSqueezeGate:
    modes: Tuple[int, int]
    zeta: float

    def channels(self):
        return [TwoModeSqueeze(self.modes, self.zeta)]

    def generator(self, dims):
        a = _sparse_local(annihilation(dims[self.modes[0]]), self.modes[0], dims)
        b = _sparse_local(annihilation(dims[self.modes[1]]), self.modes[1], dims)
        return self.zeta * (a.T @ b.T - a @ b)


@dataclass(frozen=True)
class DisplaceGate:
    mode: int
    alpha: complex

    def channels(self):
        return [Displacement((math.sqrt(2) * self.alpha.real, math.sqrt(2) * self.alpha.imag), mode=self.mode)]

    def generator(self, dims):
        a = _sparse_local(annihilation(dims[self.mode]), self.mode, dims)
        return self.alpha * a.T - np.conj(self.alpha) * a


@dataclass(frozen=True)
class SqueezeGate:
    mode: int
    zeta: float
    phase: float = 0.0

    def channels(self):
        return [SingleModeSqueeze(self.mode, self.zeta, self.phase)]

    def generator(self, dims):
        a = _sparse_local(annihilation(dims[self.mode]), self.mode, dims)
        e = np.exp(1j * self.phase)
        return 0.5 * self.zeta * (e * (a.T @ a.T) - np.conj(e) * (a @ a))


@dataclass(frozen=True)
class BeamSplitGate:
    """``exp(θ(a†b - a b†))``; the first mode keeps amplitude ``cos θ``."""

    modes: Tuple[int, int]
    theta: float

    def channels(self):
        return [BeamSplitter(self.modes, self.theta)]

    def generator(self, dims):
        a = _sparse_local(annihilation(dims[self.modes[0]]), self.modes[0], dims)
        b = _sparse_local(annihilation(dims[self.modes[1]]), self.modes[1], dims)
        return self.theta * (a.T @ b - a @ b.T)


@dataclass(frozen=True)
class ThermalMix:
    """Mix a mode with a thermal ancilla: ``a -> sqrt(t) a + sqrt(1 - t) b``, ancilla traced out.

    ``out_cutoff`` sets the cutoff of the mode afterwards (default: unchanged).
    """

    mode: int
    n: float
    transmissivity: float
    ancilla_cutoff: int
    out_cutoff: Optional[int] = None

    def __post_init__(self):
        if not 0.0 <= self.transmissivity <= 1.0:
            raise ValueError("transmissivity must lie in [0, 1]")
        if self.n < 0 or self.ancilla_cutoff < 1:
            raise ValueError("need n >= 0 and ancilla_cutoff >= 1")

    def channels(self):
        return [Loss(self.mode, self.transmissivity, self.n)]


def PureLoss(mode, eta, out_cutoff=None):
    return ThermalMix(mode, 0.0, eta, 1, out_cutoff)


@dataclass(frozen=True)
class CircuitSpec:
    """Ordered operations acting on ``n_modes`` modes that start in vacuum."""

    n_modes: int
    ops: Sequence = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            modes = getattr(op, "modes", None) or (op.mode,)
            if any(not 0 <= m < self.n_modes for m in modes):
                raise ValueError(f"{op} acts outside {self.n_modes} modes")

    def gaussian(self):
        """Moments predicted by the Gaussian channel maps."""
        chans = [ch for op in self.ops for ch in op.channels()]
        return apply(vacuum(self.n_modes), *chans)


class _Ensemble:
    """``ρ = Φ Φ†`` with ``Φ`` stored as a tensor ``(d_0, ..., d_{n-1}, k)``."""

    def __init__(self, dims):
        self.dims = list(dims)
        t = np.zeros(self.dims + [1], dtype=complex)
        t[(0,) * len(dims) + (0,)] = 1.0
        self.t = t
        self.deficit = 0.0

    @property
    def matrix(self):
        return self.t.reshape(int(np.prod(self.dims)), -1)

    def norm(self):
        return float(np.vdot(self.t, self.t).real)

    def unitary(self, gate, pad):
        modes = getattr(gate, "modes", None) or (gate.mode,)
        before = self.norm()
        widths = [(0, pad if k in modes else 0) for k in range(len(self.dims))] + [(0, 0)]
        big = np.pad(self.t, widths)
        pdims = list(big.shape[:-1])
        gen = gate.generator(pdims).tocsc()
        out = expm_multiply(gen, big.reshape(int(np.prod(pdims)), -1)).reshape(big.shape)
        self.t = out[tuple(slice(0, d) for d in self.dims) + (slice(None),)]
        self.deficit += before - self.norm()

    def thermal_seed(self, mode, n):
        moved = np.moveaxis(self.t, mode, 0)
        if np.vdot(moved[1:], moved[1:]).real > 1e-12:
            raise ValueError(f"thermal_seed needs mode {mode} in vacuum")
        d = self.dims[mode]
        p = thermal_probs(n, d)
        self.deficit += self.norm() * (1.0 - p.sum())
        base = moved[0]
        new = np.zeros((d,) + base.shape + (d,), dtype=complex)
        for k in range(d):
            new[k, ..., k] = math.sqrt(p[k]) * base
        new = new.reshape((d,) + base.shape[:-1] + (base.shape[-1] * d,))
        self.t = np.moveaxis(new, 0, mode)

    def mix(self, op):
        mode, da = op.mode, op.ancilla_cutoff
        dm = self.dims[mode]
        do = op.out_cutoff or dm
        p = thermal_probs(op.n, da)
        self.deficit += self.norm() * (1.0 - p.sum())
        a = np.moveaxis(self.t, mode, 0)
        rest_shape = a.shape[1:]
        a = a.reshape(dm, -1)
        top = dm + da - 2
        # columns: (old column, ancilla input j, ancilla output l); only m + l = n + j couples
        out = np.zeros((do, a.shape[1], da, top + 1), dtype=complex)
        theta = math.acos(math.sqrt(op.transmissivity))
        for j in range(da):
            if p[j] == 0.0:
                continue
            amp = math.sqrt(p[j]) * a
            for n in range(dm):
                total = n + j
                ms = np.arange(0, min(total, do - 1) + 1)
                u = _sector_unitary(total, theta)
                out[ms, :, j, total - ms] += u[ms, n][:, None] * amp[n][None, :]
        before = self.norm() * p.sum()
        kept = float(np.vdot(out, out).real)
        # photons pushed beyond the output cutoff
        self.deficit += before - kept
        out = out.reshape((do,) + rest_shape[:-1] + (rest_shape[-1] * da * (top + 1),))
        self.t = np.moveaxis(out, 0, mode)
        self.dims[mode] = do
        self.compress()

    def trace_out_replace(self, mode, n, d_new):
        """Discard ``mode`` and put a fresh thermal state there (cutoff ``d_new``)."""
        a = np.moveaxis(self.t, mode, 0)
        dm = a.shape[0]
        a = np.moveaxis(a, 0, -1).reshape(a.shape[1:-1] + (a.shape[-1] * dm,))
        p = thermal_probs(n, d_new)
        self.deficit += self.norm() * (1.0 - p.sum())
        new = np.zeros((d_new,) + a.shape + (d_new,), dtype=complex)
        for k in range(d_new):
            new[k, ..., k] = math.sqrt(p[k]) * a
        new = new.reshape((d_new,) + a.shape[:-1] + (a.shape[-1] * d_new,))
        self.t = np.moveaxis(new, 0, mode)
        self.dims[mode] = d_new
        self.compress()

    def compress(self, tol=1e-18):
        m = self.matrix
        if m.shape[1] <= m.shape[0]:
            return
        w, v = np.linalg.eigh(m @ m.conj().T)
        keep = w > tol * max(w.max(), 1e-300)
        m = v[:, keep] * np.sqrt(w[keep])
        self.t = m.reshape(self.dims + [m.shape[1]])

    def operator(self, max_deficit):
        m = self.matrix
        rho = m @ m.conj().T
        tr = np.trace(rho).real
        deficit = max(0.0, 1.0 - tr)
        if deficit > max_deficit:
            raise CutoffError(f"truncation deficit {deficit:.3e} exceeds {max_deficit:.1e}", deficit)
        rho = 0.5 * (rho + rho.conj().T) / tr
        return FockOperator(tuple(self.dims), rho, deficit)


_SECTOR_CACHE = {}


def _sector_unitary(total, theta):
    """Beam splitter restricted to ``|n, total - n>``, indexed by ``n``."""
    key = (total, theta)
    if key not in _SECTOR_CACHE:
        g = np.zeros((total + 1, total + 1))
        for n in range(total):
            g[n + 1, n] = math.sqrt((n + 1) * (total - n))
            g[n, n + 1] = -g[n + 1, n]
        _SECTOR_CACHE[key] = sla.expm(theta * g)
    return _SECTOR_CACHE[key]


def _run(circuit, dims, pad):
    if len(dims) != circuit.n_modes:
        raise DimensionError(f"{len(dims)} cutoffs for {circuit.n_modes} modes")
    ens = _Ensemble(dims)
    for op in circuit.ops:
        if isinstance(op, ThermalSeed):
            ens.thermal_seed(op.mode, op.n)
        elif isinstance(op, ThermalMix):
            ens.mix(op)
        else:
            ens.unitary(op, pad)
    return ens


def build_state(circuit, dims, max_deficit=MAX_DEFICIT, pad=None):
    """Density matrix of ``circuit`` in a Fock space with cutoffs ``dims``.

    Unitary gates act in a space enlarged by ``pad`` levels on the modes they
    touch and are cropped afterwards; every crop adds to the reported deficit.
    """
    pad = max(dims) if pad is None else pad
    return _run(circuit, dims, pad).operator(max_deficit)


def qi_output_pair(circuit, kappa, n_b, dims, ancilla_cutoff, out_cutoff, max_deficit=MAX_DEFICIT, pad=None):
    """Target-absent and target-present states for a two-mode probe circuit.

    Target present: the signal (mode 0) is mixed with a thermal ancilla of
    ``n_b / (1 - kappa)`` photons at transmissivity ``kappa``. Target absent:
    the signal is replaced by a thermal state of ``n_b`` photons.
    """
    if circuit.n_modes != 2:
        raise DimensionError("QI probes have two modes")
    if not 0.0 <= kappa < 1.0:
        raise ValueError("kappa must lie in [0, 1)")
    pad = max(dims) if pad is None else pad
    probe = _run(circuit, dims, pad)

    absent = _Ensemble(dims)
    absent.t, absent.dims, absent.deficit = probe.t.copy(), list(probe.dims), probe.deficit
    absent.trace_out_replace(0, n_b, out_cutoff)
    rho0 = absent.operator(max_deficit)

    if kappa == 0.0:
        return rho0, rho0
    probe.mix(ThermalMix(0, n_b / (1.0 - kappa), kappa, ancilla_cutoff, out_cutoff))
    return rho0, probe.operator(max_deficit)


# --- moments ---

def quadrature_operators(dims, sparse=False):
    """``x_k``, ``p_k`` in interleaved order (dense unless ``sparse``)."""
    out = []
    for k, d in enumerate(dims):
        a = _sparse_local(annihilation(d), k, dims)
        x = (a + a.T) / math.sqrt(2)
        p = (a - a.T) / (1j * math.sqrt(2))
        out.extend([x, p] if sparse else [x.toarray(), p.toarray()])
    return out


def _tr(m, op):
    """``Tr(m op)`` for dense ``m`` and sparse ``op``."""
    return complex(op.multiply(m.T).sum())


def _first_second(m, dims):
    r = quadrature_operators(dims, sparse=True)
    n = len(r)
    first = np.array([_tr(m, q).real for q in r])
    second = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            second[i, j] = second[j, i] = 2.0 * _tr(m, (r[i] @ r[j]).tocsr()).real
    return first, second


def moments(rho):
    """Mean vector and covariance ``<{Δr, Δr^T}>`` of a Fock density matrix."""
    mean, second = _first_second(rho.data, rho.dims)
    return mean, second - 2.0 * np.outer(mean, mean)


def moment_derivative(rho, drho):
    """First-order change of ``(mean, cov)`` along a traceless Hermitian ``drho``."""
    mean, _ = _first_second(rho.data, rho.dims)
    dmean, dsecond = _first_second(np.asarray(drho), rho.dims)
    return dmean, dsecond - 2.0 * (np.outer(dmean, mean) + np.outer(mean, dmean))


# --- Chernoff ---

class ChernoffResult(NamedTuple):
    exponent: float
    s: float


def chernoff_exponent(rho0, rho1, clamp=CLAMP):
    """``-min_s log Tr ρ0^s ρ1^(1-s)`` over ``s ∈ [0, 1]``.

    Eigenvalues at or below ``clamp`` are dropped. Returns ``inf`` for
    states with orthogonal supports.
    """
    if rho0.dims != rho1.dims:
        raise DimensionError(f"dims differ: {rho0.dims} vs {rho1.dims}")
    l0, u0 = np.linalg.eigh(rho0.data)
    l1, u1 = np.linalg.eigh(rho1.data)
    k0, k1 = l0 > clamp, l1 > clamp
    l0, l1 = l0[k0], l1[k1]
    ov = np.abs(u0[:, k0].conj().T @ u1[:, k1]) ** 2
    if ov.size == 0 or ov.max() < 1e-300:
        return ChernoffResult(math.inf, 0.5)
    log0, log1 = np.log(l0), np.log(l1)

    def log_q(s):
        q = np.exp(s * log0) @ ov @ np.exp((1.0 - s) * log1)
        return math.log(q) if q > 0 else math.inf

    res = minimize_scalar(log_q, bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-10})
    best_s, best = float(res.x), float(res.fun)
    for s in (0.0, 1.0):
        v = log_q(s)
        if v < best:
            best_s, best = s, v
    if math.isinf(best):
        return ChernoffResult(math.inf, best_s)
    return ChernoffResult(max(0.0, -best), best_s)


def petz_metric(rho, drho, f, clamp=CLAMP):
    """Monotone metric ``sum |A_nm|² / (λ_m f(λ_n / λ_m))`` in the eigenbasis of ``rho``."""
    data = rho.data if isinstance(rho, FockOperator) else np.asarray(rho)
    lam, u = np.linalg.eigh(data)
    lam = np.where(lam > clamp, lam, 0.0)
    a = u.conj().T @ np.asarray(drho) @ u
    weight = np.abs(a) ** 2
    hi = np.maximum(lam[:, None], lam[None, :])
    lo = np.minimum(lam[:, None], lam[None, :])
    try:
        with np.errstate(divide="ignore", invalid="ignore"):
            den = np.where(hi > 0, hi * np.asarray(f(np.where(hi > 0, lo / np.where(hi > 0, hi, 1.0), 0.0))), 0.0)
    except (TypeError, ValueError):
        den = np.vectorize(f.perspective)(lam[:, None], lam[None, :])
    live = weight > 1e-24 * max(float(weight.max(initial=0.0)), 1e-300)
    both_zero = hi == 0.0
    if np.any(live & ~both_zero & ~(den > 0)):
        raise SingularMetricError("tangent leaves the support of rho")
    use = live & (den > 0)
    return float(np.sum(weight[use] / den[use]))


# --- quadratic observables ---

@dataclass(frozen=True)
class QuadraticObservable:
    """``r^T G r + g^T r + c`` with ``G`` symmetric (hence Weyl-ordered)."""

    G: np.ndarray
    g: np.ndarray
    c: float = 0.0

    def __post_init__(self):
        G = np.asarray(self.G, dtype=float)
        g = np.asarray(self.g, dtype=float).reshape(-1)
        if G.ndim != 2 or G.shape != (g.shape[0], g.shape[0]):
            raise DimensionError(f"G {G.shape} and g {g.shape} are inconsistent")
        if np.max(np.abs(G - G.T), initial=0.0) > 1e-12:
            raise ValueError("G must be symmetric")
        object.__setattr__(self, "G", 0.5 * (G + G.T))
        object.__setattr__(self, "g", g)

    def operator(self, dims):
        r = quadrature_operators(dims)
        n = len(r)
        out = self.c * np.eye(int(np.prod(dims)), dtype=complex)
        for i in range(n):
            out = out + self.g[i] * r[i]
            for j in range(n):
                if self.G[i, j] != 0.0:
                    out = out + self.G[i, j] * (r[i] @ r[j])
        return out


def observable_moments(obs, state):
    """Mean and variance of ``obs`` in a Gaussian state."""
    G, g = obs.G, obs.g
    mu, sig = state.mean, 0.5 * state.cov
    om = omega(state.n_modes)
    mean = np.trace(G @ sig) + mu @ G @ mu + g @ mu + obs.c
    lin = 2.0 * G @ mu + g
    var = 2.0 * np.trace(G @ sig @ G @ sig) + lin @ sig @ lin + 0.5 * np.trace(om @ G @ om @ G)
    return float(mean), float(max(var, 0.0))


def _snr(m0, v0, m1, v1):
    den = 2.0 * (math.sqrt(v0) + math.sqrt(v1)) ** 2
    diff = (m0 - m1) ** 2
    if den == 0.0:
        return 0.0 if diff == 0.0 else math.inf
    return diff / den


def quadratic_snr(probe, kappa, n_b, obs):
    """SNR ``(m0 - m1)² / (2 (σ0 + σ1)²)`` per unit ``kappa`` at finite ``kappa``."""
    if obs.G.shape[0] != 2 * probe.n_modes:
        raise DimensionError("observable and probe sizes differ")
    m0, v0 = observable_moments(obs, returned_state(probe, 0.0, n_b))
    m1, v1 = observable_moments(obs, returned_state(probe, kappa, n_b))
    return _snr(m0, v0, m1, v1) / kappa


def _snr_forms(state, t):
    """Linear form ``b`` (mean shift) and quadratic form ``A`` (variance) on ``(vech G, g)``."""
    d = state.cov.shape[0]
    basis = []
    for i in range(d):
        for j in range(i, d):
            G = np.zeros((d, d))
            G[i, j] = G[j, i] = 1.0
            basis.append((G, np.zeros(d)))
    for i in range(d):
        g = np.zeros(d)
        g[i] = 1.0
        basis.append((np.zeros((d, d)), g))
    mu, sig = state.mean, 0.5 * state.cov
    dsig = 0.5 * t.d_cov
    om = omega(d // 2)
    b = np.array([np.trace(G @ dsig) + 2.0 * mu @ G @ t.d_mean + g @ t.d_mean for G, g in basis])
    lins = [2.0 * G @ mu + g for G, g in basis]
    k = len(basis)
    A = np.empty((k, k))
    for p in range(k):
        for q in range(p, k):
            Gp, Gq = basis[p][0], basis[q][0]
            val = (
                2.0 * np.trace(Gp @ sig @ Gq @ sig)
                + lins[p] @ sig @ lins[q]
                + 0.5 * np.trace(om @ Gp @ om @ Gq)
            )
            A[p, q] = A[q, p] = val
    return basis, b, A


def _assemble(basis, x):
    d = basis[0][0].shape[0]
    G, g = np.zeros((d, d)), np.zeros(d)
    for coef, (Gb, gb) in zip(x, basis):
        G += coef * Gb
        g += coef * gb
    return QuadraticObservable(G, g)


def snr_rate(probe, n_b, obs):
    """Leading-order ``SNR / kappa`` as ``kappa -> 0``: ``dm² / (8 Var0)``."""
    rho0, t = returned_tangent(probe, n_b)
    basis, b, A = _snr_forms(rho0, t)
    x = np.concatenate([[obs.G[i, j] for i in range(obs.G.shape[0]) for j in range(i, obs.G.shape[0])], obs.g])
    dm = float(b @ x)
    var = float(x @ A @ x)
    if var <= 0.0:
        return 0.0 if dm == 0.0 else math.inf
    return dm * dm / (8.0 * var)


def snr_maximize(probe, n_b):
    """Best quadratic observable and its leading-order ``SNR / kappa``.

    The rate is a ratio of a squared linear form to a quadratic form in the
    observable's coefficients, so its maximum is ``b^T A^+ b / 8``.
    """
    rho0, t = returned_tangent(probe, n_b)
    basis, b, A = _snr_forms(rho0, t)
    x, *_ = np.linalg.lstsq(A, b, rcond=1e-12)
    if np.linalg.norm(A @ x - b) > 1e-9 * max(1.0, np.linalg.norm(b)):
        return _assemble(basis, x), math.inf
    return _assemble(basis, x), float(max(b @ x, 0.0) / 8.0)
