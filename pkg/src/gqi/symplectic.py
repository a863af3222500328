"""
Gaussian states in the first-moment / covariance-matrix picture.

Quadratures are ordered ``(x1, p1, x2, p2, ...)`` and the covariance matrix is
``V = <{r - r̄, (r - r̄)^T}>`` so that the vacuum has ``V = I`` and a thermal
mode with mean photon number ``N`` has ``V = (1 + 2N) I``.

Channels are represented by their action on moments,
``r̄ -> X r̄ + d`` and ``V -> X V X^T + Y``.
"""

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import DecompositionError, DimensionError, InvalidStateError

SYMMETRY_TOL = 1e-12
PSD_TOL = 1e-9
SYMPLECTIC_TOL = 1e-9
# PSD checks allow ROUNDING_FACTOR * eps * max|V| when that exceeds PSD_TOL
ROUNDING_FACTOR = 64


def omega(n):
    """Symplectic form ``⊕ [[0, 1], [-1, 0]]`` for ``n`` modes."""
    return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _as_cov(cov):
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
        raise DimensionError(f"covariance must be square with even dimension, got {cov.shape}")
    return cov


@dataclass(frozen=True)
class GaussianState:
    """First-order moments and covariance matrix of an ``n``-mode state.

    Construction only checks shapes; use :func:`validate` for physicality.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        cov = _as_cov(self.cov).copy()
        mean = np.asarray(self.mean, dtype=float).reshape(-1).copy()
        if mean.shape[0] != cov.shape[0]:
            raise DimensionError(f"mean has length {mean.shape[0]}, covariance is {cov.shape}")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self):
        return self.cov.shape[0] // 2

    def block(self, i, j=None):
        """2x2 covariance block between modes ``i`` and ``j`` (default ``j = i``)."""
        j = i if j is None else j
        return self.cov[2 * i:2 * i + 2, 2 * j:2 * j + 2]

    def to_dict(self):
        return {"n_modes": self.n_modes, "mean": self.mean.tolist(), "cov": self.cov.tolist()}

    @classmethod
    def from_dict(cls, data):
        state = cls(data["mean"], data["cov"])
        if "n_modes" in data and int(data["n_modes"]) != state.n_modes:
            raise DimensionError(f"n_modes={data['n_modes']} does not match covariance {state.cov.shape}")
        return state

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


class Diagnostics(NamedTuple):
    valid: bool
    symmetric: bool
    min_eigenvalue: float
    spectrum: np.ndarray


def symplectic_spectrum(cov):
    """Symplectic eigenvalues, sorted descending.

    Computed as the moduli of the eigenvalues of ``i Ω V``, which also gives a
    meaningful diagnostic for matrices that are not positive definite.
    """
    cov = _as_cov(cov)
    n = cov.shape[0] // 2
    ev = np.abs(np.linalg.eigvals(1j * omega(n) @ cov))
    return np.sort(ev)[::-1][::2].copy()


def validate(state):
    """Check symmetry and the uncertainty relation ``V + iΩ >= 0``.

    Diagnostics are returned for invalid states as well.
    """
    cov = _as_cov(state.cov)
    n = cov.shape[0] // 2
    # rounding in strongly squeezed states grows with the largest entry
    scale = max(1.0, float(np.max(np.abs(cov))))
    symmetric = bool(np.max(np.abs(cov - cov.T), initial=0.0) <= SYMMETRY_TOL * scale)
    psd_tol = max(PSD_TOL, ROUNDING_FACTOR * np.finfo(float).eps * scale)
    herm = 0.5 * (cov + cov.T) + 1j * omega(n)
    min_eig = float(np.linalg.eigvalsh(herm).min())
    spectrum = symplectic_spectrum(0.5 * (cov + cov.T))
    valid = symmetric and min_eig >= -psd_tol and bool(np.all(spectrum >= 1.0 - psd_tol))
    return Diagnostics(valid, symmetric, min_eig, spectrum)


def require_valid(state):
    diag = validate(state)
    if not diag.valid:
        raise InvalidStateError(
            f"invalid Gaussian state: symmetric={diag.symmetric}, "
            f"min eig(V+iΩ)={diag.min_eigenvalue:.3e}, spectrum={diag.spectrum.tolist()}"
        )
    return diag


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """``V = S diag(ν1, ν1, ..., νn, νn) S^T`` with ``S`` symplectic."""

    S: np.ndarray
    nus: np.ndarray

    @property
    def diagonal(self):
        return np.repeat(self.nus, 2)

    def reconstruct(self):
        return self.S @ np.diag(self.diagonal) @ self.S.T


def _sqrtm_psd(cov):
    w, u = np.linalg.eigh(cov)
    if w.min() <= 0:
        raise DecompositionError(f"covariance is not positive definite: eigenvalue {w.min():.6e}")
    return (u * np.sqrt(w)) @ u.T, (u / np.sqrt(w)) @ u.T


def williamson(cov):
    """Williamson decomposition of a symmetric positive-definite matrix.

    ``M = V^{-1/2} Ω V^{-1/2}`` is real antisymmetric with eigenvalues
    ``±i/ν_k``; the Hermitian matrix ``iM`` is diagonalized and each
    eigenvector ``u + iv`` for ``+1/ν_k`` yields the orthonormal pair
    ``√2 (v, u)``. Eigenvector phases are fixed by making the largest
    component positive imaginary (so a thermal state gives ``S = I``).
    """
    cov = _as_cov(cov)
    if np.max(np.abs(cov - cov.T), initial=0.0) > SYMMETRY_TOL * max(1.0, np.abs(cov).max()):
        raise DecompositionError("covariance is not symmetric")
    cov = 0.5 * (cov + cov.T)
    n = cov.shape[0] // 2
    root, inv_root = _sqrtm_psd(cov)
    m = inv_root @ omega(n) @ inv_root
    w, vecs = np.linalg.eigh(1j * m)
    # eigh sorts ascending: the last n eigenvalues are +1/ν, smallest first -> ν descending
    pos = vecs[:, n:]
    lam = w[n:]
    cols = []
    for k in range(n):
        vec = pos[:, k]
        big = np.argmax(np.abs(vec))
        vec = vec * np.exp(1j * (0.5 * np.pi - np.angle(vec[big])))
        cols.append(np.sqrt(2.0) * vec.imag)
        cols.append(np.sqrt(2.0) * vec.real)
    ortho = np.column_stack(cols)
    nus = 1.0 / lam
    S = root @ ortho @ np.diag(np.repeat(1.0 / np.sqrt(nus), 2))
    return WilliamsonDecomposition(S, nus)


def is_symplectic(S, tol=SYMPLECTIC_TOL):
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
        return False
    om = omega(S.shape[0] // 2)
    # entries of S Ω S^T carry rounding of order |S|^2
    scale = max(1.0, float(np.max(np.abs(S))) ** 2)
    return bool(np.max(np.abs(S @ om @ S.T - om)) <= tol * scale)


def symplectic_inverse(S):
    """Exact inverse ``Ω^T S^T Ω`` of a symplectic matrix."""
    om = omega(S.shape[0] // 2)
    return om.T @ S.T @ om


# --- elementary symplectic matrices (Heisenberg action on quadratures) ---

def rotation_matrix(phi):
    """Phase shift ``exp(-i φ a†a)``: ``a -> a e^{-iφ}``."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, s], [-s, c]])


def squeeze_matrix(zeta, phase=0.0):
    """Single-mode squeezer; ``phase=0`` amplifies ``x`` by ``e^ζ``."""
    c, s = np.cosh(zeta), np.sinh(zeta)
    return c * np.eye(2) + s * np.array([[np.cos(phase), np.sin(phase)], [np.sin(phase), -np.cos(phase)]])


def two_mode_squeeze_matrix(zeta):
    """``a -> a cosh ζ + b† sinh ζ``; maps vacuum to the TMSV covariance."""
    c, s = np.cosh(zeta), np.sinh(zeta)
    z = np.diag([s, -s])
    return np.block([[c * np.eye(2), z], [z, c * np.eye(2)]])


def beamsplitter_matrix(theta):
    """``a -> a cos θ + b sin θ``, ``b -> b cos θ - a sin θ``."""
    c, s = np.cos(theta), np.sin(theta)
    return np.block([[c * np.eye(2), s * np.eye(2)], [-s * np.eye(2), c * np.eye(2)]])


def embed(matrix, modes, n_modes):
    """Embed a ``2k x 2k`` matrix acting on ``modes`` into ``n_modes`` modes."""
    matrix = np.asarray(matrix, dtype=float)
    modes = list(modes)
    if matrix.shape != (2 * len(modes), 2 * len(modes)):
        raise DimensionError(f"matrix {matrix.shape} does not act on {len(modes)} modes")
    for m in modes:
        if not 0 <= m < n_modes:
            raise DimensionError(f"mode index {m} out of range for {n_modes} modes")
    idx = np.array([[2 * m, 2 * m + 1] for m in modes]).reshape(-1)
    full = np.eye(2 * n_modes)
    full[np.ix_(idx, idx)] = matrix
    return full


# --- channels ---

def _check_mode(mode, n_modes):
    if not 0 <= mode < n_modes:
        raise DimensionError(f"mode index {mode} out of range for {n_modes} modes")


@dataclass(frozen=True)
class Loss:
    """Beam splitter of transmissivity ``eta`` with a thermal mode of mean ``n_l``."""

    mode: int
    eta: float
    n_l: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"transmissivity must lie in [0, 1], got {self.eta}")
        if self.n_l < 0:
            raise ValueError(f"thermal photon number must be >= 0, got {self.n_l}")

    def moments_map(self, n_modes):
        _check_mode(self.mode, n_modes)
        x = np.ones(2 * n_modes)
        x[2 * self.mode:2 * self.mode + 2] = np.sqrt(self.eta)
        y = np.zeros(2 * n_modes)
        y[2 * self.mode:2 * self.mode + 2] = (1.0 - self.eta) * (1.0 + 2.0 * self.n_l)
        return np.diag(x), np.diag(y), np.zeros(2 * n_modes)


@dataclass(frozen=True)
class Displacement:
    """Add ``vector`` to the mean; with ``mode`` set, ``vector`` is ``(x, p)`` of that mode."""

    vector: Sequence[float]
    mode: Optional[int] = None

    def moments_map(self, n_modes):
        vec = np.asarray(self.vector, dtype=float).reshape(-1)
        d = np.zeros(2 * n_modes)
        if self.mode is None:
            if vec.shape[0] != 2 * n_modes:
                raise DimensionError(f"displacement of length {vec.shape[0]} for {n_modes} modes")
            d = vec
        else:
            _check_mode(self.mode, n_modes)
            if vec.shape[0] != 2:
                raise DimensionError("single-mode displacement needs (x, p)")
            d[2 * self.mode:2 * self.mode + 2] = vec
        return np.eye(2 * n_modes), np.zeros((2 * n_modes, 2 * n_modes)), d


@dataclass(frozen=True)
class Symplectic:
    """Gaussian unitary given by a symplectic matrix on ``modes`` (default: all)."""

    matrix: np.ndarray = field(compare=False)
    modes: Optional[Sequence[int]] = None

    def __post_init__(self):
        if not is_symplectic(self.matrix):
            raise ValueError("matrix is not symplectic within tolerance")

    def moments_map(self, n_modes):
        mat = np.asarray(self.matrix, dtype=float)
        if self.modes is not None:
            mat = embed(mat, self.modes, n_modes)
        elif mat.shape != (2 * n_modes, 2 * n_modes):
            raise DimensionError(f"symplectic matrix {mat.shape} for {n_modes} modes")
        return mat, np.zeros_like(mat), np.zeros(2 * n_modes)


@dataclass(frozen=True)
class SingleModeSqueeze:
    mode: int
    zeta: float
    phase: float = 0.0

    def moments_map(self, n_modes):
        return Symplectic(squeeze_matrix(self.zeta, self.phase), (self.mode,)).moments_map(n_modes)


@dataclass(frozen=True)
class TwoModeSqueeze:
    modes: Sequence[int]
    zeta: float

    def moments_map(self, n_modes):
        return Symplectic(two_mode_squeeze_matrix(self.zeta), tuple(self.modes)).moments_map(n_modes)


@dataclass(frozen=True)
class BeamSplitter:
    modes: Sequence[int]
    theta: float

    def moments_map(self, n_modes):
        return Symplectic(beamsplitter_matrix(self.theta), tuple(self.modes)).moments_map(n_modes)


@dataclass(frozen=True)
class PhaseShift:
    mode: int
    phi: float

    def moments_map(self, n_modes):
        return Symplectic(rotation_matrix(self.phi), (self.mode,)).moments_map(n_modes)


def apply(state, *channels):
    """Apply channels left to right."""
    mean, cov = state.mean, state.cov
    for ch in channels:
        x, y, d = ch.moments_map(state.n_modes)
        mean = x @ mean + d
        cov = x @ cov @ x.T + y
    return GaussianState(mean, 0.5 * (cov + cov.T))


# --- constructors ---

def vacuum(n_modes=1):
    return GaussianState(np.zeros(2 * n_modes), np.eye(2 * n_modes))


def thermal(n_photons):
    if n_photons < 0:
        raise ValueError(f"mean photon number must be >= 0, got {n_photons}")
    return GaussianState(np.zeros(2), (1.0 + 2.0 * n_photons) * np.eye(2))


def coherent(x, p):
    """Single-mode coherent state with mean ``(x, p)``; mean photon ``(x² + p²)/2``."""
    return GaussianState([x, p], np.eye(2))


def squeezed_vacuum(zeta, phase=0.0):
    s = squeeze_matrix(zeta, phase)
    return GaussianState(np.zeros(2), s @ s.T)


def tmsv(n_s):
    """Two-mode squeezed vacuum with signal mean photon number ``n_s``."""
    if n_s < 0:
        raise ValueError(f"mean photon number must be >= 0, got {n_s}")
    a = 1.0 + 2.0 * n_s
    c = 2.0 * np.sqrt(n_s + n_s * n_s)
    z = np.diag([c, -c])
    return GaussianState(np.zeros(4), np.block([[a * np.eye(2), z], [z, a * np.eye(2)]]))


def product(*states):
    """Tensor product of states, modes concatenated in order."""
    mean = np.concatenate([s.mean for s in states])
    dim = mean.shape[0]
    cov = np.zeros((dim, dim))
    k = 0
    for s in states:
        m = s.cov.shape[0]
        cov[k:k + m, k:k + m] = s.cov
        k += m
    return GaussianState(mean, cov)


def partial_trace(state, keep):
    """Reduced state on the modes in ``keep`` (order preserved as given)."""
    keep = list(keep)
    if not keep:
        raise ValueError("keep must name at least one mode")
    for m in keep:
        _check_mode(m, state.n_modes)
    idx = np.array([[2 * m, 2 * m + 1] for m in keep]).reshape(-1)
    return GaussianState(state.mean[idx], state.cov[np.ix_(idx, idx)])


def mean_photon(state, mode):
    """Mean photon number ``(V11 + V22 - 2)/4 + (x̄² + p̄²)/2`` of one mode."""
    _check_mode(mode, state.n_modes)
    blk = state.block(mode)
    x, p = state.mean[2 * mode:2 * mode + 2]
    return (blk[0, 0] + blk[1, 1] - 2.0) / 4.0 + (x * x + p * p) / 2.0


def random_symplectic(n_modes, rng, scale=0.5):
    """``exp(Ω H)`` for a random symmetric ``H``; entries of ``H`` have size ~``scale``."""
    from scipy.linalg import expm

    h = rng.normal(scale=scale, size=(2 * n_modes, 2 * n_modes))
    h = 0.5 * (h + h.T)
    return expm(omega(n_modes) @ h)


def random_state(n_modes, rng, max_thermal=2.0, scale=0.5, displacement=1.0, min_excess=0.0):
    """Random valid Gaussian state ``S diag(ν) S^T`` with ``ν - 1 ∈ [min_excess, 2·max_thermal]``."""
    nus = 1.0 + min_excess + 2.0 * max_thermal * rng.random(n_modes)
    S = random_symplectic(n_modes, rng, scale)
    cov = S @ np.diag(np.repeat(nus, 2)) @ S.T
    return GaussianState(rng.normal(scale=displacement, size=2 * n_modes), 0.5 * (cov + cov.T))
