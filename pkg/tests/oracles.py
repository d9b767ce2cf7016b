"""Independent oracles used across the test suite.

These deliberately avoid the package's computational paths: square roots go
through scipy's Schur-based sqrtm, skew quantities through literal commutator
traces, the Fisher information through a fidelity finite difference, and the
discord through an exhaustive product-basis grid with local grid refinement.
"""

import numpy as np
import scipy.linalg


def psd_sqrt(mat):
    s = scipy.linalg.sqrtm(np.asarray(mat, dtype=complex))
    s = np.asarray(s)
    return (s + s.conj().T) / 2.0


def skew_info_commutator(mat, k):
    """-1/2 Tr [sqrt(rho), |k><k|]^2 via literal matrix products."""
    s = psd_sqrt(mat)
    p = np.zeros_like(s)
    p[k, k] = 1.0
    c = s @ p - p @ s
    return float(-0.5 * np.trace(c @ c).real)


def k_coherence_commutator(mat, kobs):
    s = psd_sqrt(mat)
    c = s @ kobs - kobs @ s
    return float(-0.5 * np.trace(c @ c).real)


def subsystem_coherence_commutator(mat, dims, u=None):
    """Sum over k of -1/2 Tr [sqrt(rho), U|k><k|U^dag (x) I]^2."""
    da, db = dims
    s = psd_sqrt(mat)
    u = np.eye(da, dtype=complex) if u is None else u
    total = 0.0
    for k in range(da):
        pk = np.outer(u[:, k], u[:, k].conj())
        proj = np.kron(pk, np.eye(db))
        c = s @ proj - proj @ s
        total += -0.5 * np.trace(c @ c).real
    return float(total)


def product_coherence_commutator(mat, dims, ua=None, ub=None):
    da, db = dims
    s = psd_sqrt(mat)
    ua = np.eye(da, dtype=complex) if ua is None else ua
    ub = np.eye(db, dtype=complex) if ub is None else ub
    total = 0.0
    for k in range(da):
        for kp in range(db):
            proj = np.kron(
                np.outer(ua[:, k], ua[:, k].conj()),
                np.outer(ub[:, kp], ub[:, kp].conj()),
            )
            c = s @ proj - proj @ s
            total += -0.5 * np.trace(c @ c).real
    return float(total)


def uhlmann_fidelity(a, b):
    sa = psd_sqrt(a)
    inner = sa @ np.asarray(b, dtype=complex) @ sa
    w = np.linalg.eigvalsh((inner + inner.conj().T) / 2.0)
    return float(np.sqrt(np.clip(w, 0.0, None)).sum())


def qfi_finite_difference(mat, k, eps=5e-4):
    """8 (1 - F(rho, rho_eps)) / eps^2 for the phase family exp(-i eps |k><k|)."""
    mat = np.asarray(mat, dtype=complex)
    u = np.eye(mat.shape[0], dtype=complex)
    u[k, k] = np.exp(-1j * eps)
    shifted = u @ mat @ u.conj().T
    return 8.0 * (1.0 - uhlmann_fidelity(mat, shifted)) / eps**2


def _bloch_projectors(thetas, phis):
    """First-column projectors of the basis pairs {n, -n}; shape (G, 2, 2)."""
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    tt = tt.ravel()
    pp = pp.ravel()
    v0 = np.cos(tt / 2.0)
    v1 = np.sin(tt / 2.0) * np.exp(1j * pp)
    proj = np.empty((tt.size, 2, 2), dtype=complex)
    proj[:, 0, 0] = np.abs(v0) ** 2
    proj[:, 0, 1] = v0 * np.conj(v1)
    proj[:, 1, 0] = np.conj(proj[:, 0, 1])
    proj[:, 1, 1] = np.abs(v1) ** 2
    return proj, tt, pp


def _grid_values(s4, pa, pb, s_tr):
    """Joint coherence on the product grid from the k=0,l=0 overlap alone."""
    m = np.einsum("abcd,uca->ubd", s4, pa).reshape(len(pa), 4)
    q = np.transpose(pb, (0, 2, 1)).reshape(len(pb), 4)
    t = (m @ q.T).real
    a = np.einsum("abcb,uca->u", s4, pa).real[:, None]
    b = np.einsum("abad,udb->u", s4, pb).real[None, :]
    total = t**2 + (a - t) ** 2 + (b - t) ** 2 + (s_tr - a - b + t) ** 2
    return 1.0 - total


def discord_grid_oracle(mat, step=np.pi / 60.0, refinements=2):
    """Exhaustive product-basis grid minimum for a two-qubit state.

    Basis pairs are parametrized by a Bloch direction on the upper hemisphere
    per side; the winning cell is re-gridded ``refinements`` times at 10x
    resolution, keeping the oracle a pure grid search.
    """
    s = psd_sqrt(mat)
    s4 = s.reshape(2, 2, 2, 2)
    s_tr = float(np.trace(s).real)

    th = np.arange(0.0, np.pi / 2.0 + step / 2.0, step)
    ph = np.arange(0.0, 2.0 * np.pi, step)
    pa, ta, fa = _bloch_projectors(th, ph)
    vals = _grid_values(s4, pa, pa, s_tr)
    iu, iv = np.unravel_index(np.argmin(vals), vals.shape)
    best = float(vals[iu, iv])
    center = [ta[iu], fa[iu], ta[iv], fa[iv]]

    h = step
    for _ in range(refinements):
        h /= 10.0
        grids = [c + np.linspace(-10 * h, 10 * h, 21) for c in center]
        pa, ta, fa = _bloch_projectors(grids[0], grids[1])
        pb, tb, fb = _bloch_projectors(grids[2], grids[3])
        vals = _grid_values(s4, pa, pb, s_tr)
        iu, iv = np.unravel_index(np.argmin(vals), vals.shape)
        best = min(best, float(vals[iu, iv]))
        center = [ta[iu], fa[iu], tb[iv], fb[iv]]
    return best


def power_sum_jacobian_inverse_norm(lams):
    """Infinity norm of the inverse Jacobian of lam -> (sum lam^n)_n."""
    lams = np.asarray(lams, dtype=float)
    n = len(lams)
    j = np.array([(m + 1) * lams**m for m in range(n)])
    return float(np.linalg.norm(np.linalg.inv(j), ord=np.inf))
