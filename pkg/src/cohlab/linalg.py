"""Dense complex Hermitian linear algebra for small quantum states.

Everything operates on validated density matrices at desk scale (dimensions
up to a few tens).  All stored arrays are read-only and all types are
immutable, so values can be shared freely across threads; every operation is
a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    NotUnitTrace,
)

ATOL = 1e-9
RANK_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _eigh_desc(mat: np.ndarray):
    """Eigendecomposition with eigenvalues in descending order."""
    try:
        w, v = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigendecomposition did not converge: {exc}") from exc
    return np.ascontiguousarray(w[::-1]), np.ascontiguousarray(v[:, ::-1])


@dataclass(frozen=True)
class DensityMatrix:
    """Validated Hermitian, unit-trace, PSD matrix together with its spectrum.

    Construct through :func:`validate_density` or the state helpers below,
    never directly: the stored eigenvalues are clipped to [0, inf) and
    renormalized, and ``mat`` is the reconstruction from that spectrum.
    """

    mat: np.ndarray
    eigenvalues: np.ndarray  # descending, >= 0, sums to 1
    eigenvectors: np.ndarray  # unitary, column i matches eigenvalues[i]

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def rank(self) -> int:
        """Number of eigenvalues above the rank tolerance."""
        return int(np.count_nonzero(self.eigenvalues > RANK_TOL))

    def purity(self) -> float:
        return float(np.sum(self.eigenvalues**2))

    def min_nonzero_eigenvalue(self) -> float:
        w = self.eigenvalues[self.eigenvalues > RANK_TOL]
        return float(w[-1])

    def diag(self) -> np.ndarray:
        return self.mat.diagonal().real

    def sqrt_diag(self) -> np.ndarray:
        """Diagonal entries of the PSD square root of the state."""
        return (np.abs(self.eigenvectors) ** 2) @ np.sqrt(self.eigenvalues)


@dataclass(frozen=True)
class Spectrum:
    """Descending eigenvalues, matching eigenvector columns and rank."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int


def validate_density(entries, atol: float = ATOL) -> DensityMatrix:
    """Validate and canonicalize a density matrix.

    Symmetrizes roundoff-level Hermiticity drift, clips eigenvalues in
    [-atol, 0) to zero, renormalizes the spectrum and rebuilds the matrix.
    Violations beyond ``atol`` raise ``NotHermitian``, ``NotUnitTrace`` or
    ``NotPSD``.
    """
    a = np.asarray(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    herm_err = float(np.abs(a - a.conj().T).max())
    if herm_err > atol:
        raise NotHermitian(f"max |A - A^dag| = {herm_err:.3e} exceeds {atol:.1e}")
    h = (a + a.conj().T) / 2.0
    tr = float(h.trace().real)
    if abs(tr - 1.0) > atol:
        raise NotUnitTrace(f"trace = {tr!r}")
    w, v = _eigh_desc(h)
    if w[-1] < -atol:
        raise NotPSD(f"min eigenvalue = {w[-1]:.3e}")
    w = np.clip(w, 0.0, None)
    # roundoff-scale eigenvalues would pollute sqrt(rho) at the sqrt scale
    w[w < w[0] * 1e-14] = 0.0
    w = w / w.sum()
    mat = (v * w) @ v.conj().T
    mat = (mat + mat.conj().T) / 2.0
    return DensityMatrix(_frozen(mat), _frozen(w), _frozen(v))


def eigh(rho: DensityMatrix) -> Spectrum:
    """Spectral decomposition of a validated state (eigenvalues descending)."""
    return Spectrum(rho.eigenvalues, rho.eigenvectors, rho.rank)


def sqrtm(rho: DensityMatrix) -> np.ndarray:
    """Hermitian PSD square root, computed from the stored spectrum."""
    v = rho.eigenvectors
    s = (v * np.sqrt(rho.eigenvalues)) @ v.conj().T
    return (s + s.conj().T) / 2.0


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Kronecker product; the first factor is the most significant index."""
    return validate_density(np.kron(a.mat, b.mat))


def partial_trace(rho: DensityMatrix, dims, keep) -> DensityMatrix:
    """Reduced state over the subsystems listed in ``keep``.

    ``dims`` lists the subsystem dimensions in big-endian order (first factor
    most significant); ``keep`` is a subsystem index or a set of indices.
    Kept subsystems stay in their original order.
    """
    dims = [int(d) for d in dims]
    if int(np.prod(dims)) != rho.dim:
        raise DimensionMismatch(f"prod({dims}) != state dimension {rho.dim}")
    if isinstance(keep, (int, np.integer)):
        keep = [int(keep)]
    keep = sorted(set(int(k) for k in keep))
    n = len(dims)
    if not keep or any(k < 0 or k >= n for k in keep):
        raise DimensionMismatch(f"keep={keep} out of range for {n} subsystems")
    t = rho.mat.reshape(dims + dims)
    remaining = list(dims)
    for idx in sorted(set(range(n)) - set(keep), reverse=True):
        t = np.trace(t, axis1=idx, axis2=idx + len(remaining))
        del remaining[idx]
    d_keep = int(np.prod(remaining))
    return validate_density(t.reshape(d_keep, d_keep))


def pure_state(vec) -> DensityMatrix:
    """Rank-one state from a (not necessarily normalized) state vector."""
    v = np.asarray(vec, dtype=complex).ravel()
    nrm = float(np.linalg.norm(v))
    if nrm == 0.0:
        raise DimensionMismatch("zero vector has no associated state")
    v = v / nrm
    return validate_density(np.outer(v, v.conj()))


def basis_state(dim: int, k: int) -> DensityMatrix:
    """Computational basis state |k><k|."""
    v = np.zeros(dim)
    v[k] = 1.0
    return pure_state(v)


def maximally_coherent(dim: int) -> DensityMatrix:
    """Uniform-superposition pure state, entries all 1/dim."""
    return pure_state(np.ones(dim))
