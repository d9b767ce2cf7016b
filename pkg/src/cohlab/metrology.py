"""Fisher information of projector-generated phases and its coherence bounds.

For the phase family exp(-i phi |k><k|) rho exp(i phi |k><k|), the quantum
Fisher information per basis index is sandwiched between 4x and 8x the skew
information, so the summed inverse optimal phase variances of a full scan of
the basis are controlled by the coherence alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coherence import c_skew, skew_info
from .errors import DimensionMismatch
from .linalg import DensityMatrix

SPECTRAL_CUTOFF = 1e-12
SANDWICH_TOL = 1e-9


def qfi_projector(rho: DensityMatrix, k: int) -> float:
    """Quantum Fisher information for the phase generated by |k><k|.

    Spectral closed form ``2 sum_{ij} (l_i - l_j)^2 / (l_i + l_j) |<i|k>|^2
    |<j|k>|^2``; pairs with ``l_i + l_j`` below the cutoff contribute nothing
    (the generator cannot connect a doubly-dark pair).
    """
    if not 0 <= k < rho.dim:
        raise DimensionMismatch(f"index {k} out of range for dimension {rho.dim}")
    w = rho.eigenvalues
    a = np.abs(rho.eigenvectors[k, :]) ** 2
    s = w[:, None] + w[None, :]
    num = (w[:, None] - w[None, :]) ** 2
    ratio = np.divide(num, s, out=np.zeros_like(s), where=s > SPECTRAL_CUTOFF)
    return float(2.0 * a @ ratio @ a)


def skew_qfi_sandwich(rho: DensityMatrix, k: int, tol: float = SANDWICH_TOL) -> dict:
    """Check I <= F_Q/4 <= 2I for one basis index."""
    i = skew_info(rho, k)
    fq = qfi_projector(rho, k)
    ok = (i <= fq / 4.0 + tol) and (fq / 4.0 <= 2.0 * i + tol)
    return {"skew": i, "qfi": fq, "ok": ok}


@dataclass(frozen=True)
class MetrologyReport:
    """Per-index Fisher data and the aggregated inverse-variance bounds."""

    n_runs: int
    per_k: tuple
    aggregate: dict

    def to_dict(self) -> dict:
        def num(x):
            return None if math.isinf(x) else x

        return {
            "n_runs": self.n_runs,
            "per_k": [
                {
                    "skew": e["skew"],
                    "qfi": e["qfi"],
                    "var_opt": num(e["var_opt"]),
                    "var_lower": num(e["var_lower"]),
                    "var_upper": num(e["var_upper"]),
                    "finite": e["finite"],
                }
                for e in self.per_k
            ],
            "aggregate": {
                k: (num(v) if isinstance(v, float) else v) for k, v in self.aggregate.items()
            },
        }


def metrology_report(rho: DensityMatrix, n_runs: int) -> MetrologyReport:
    """Cramer-Rao optima per index and the coherence-bounded aggregate.

    The optimal variance for index k is ``1/(N F_Qk)``; indices with zero
    Fisher information carry infinite variance, are flagged, and drop out of
    the inverse-variance sum (their contribution is genuinely zero).
    """
    if n_runs < 1:
        raise DimensionMismatch("n_runs must be at least 1")
    n = float(n_runs)
    coh = c_skew(rho)
    per_k = []
    excluded = []
    sum_inv = 0.0
    for k in range(rho.dim):
        i = skew_info(rho, k)
        fq = qfi_projector(rho, k)
        finite = fq > SPECTRAL_CUTOFF
        if finite:
            sum_inv += n * fq
        else:
            excluded.append(k)
        per_k.append(
            {
                "skew": i,
                "qfi": fq,
                "var_opt": 1.0 / (n * fq) if finite else math.inf,
                "var_lower": 1.0 / (8.0 * n * i) if i > SPECTRAL_CUTOFF else math.inf,
                "var_upper": 1.0 / (4.0 * n * i) if i > SPECTRAL_CUTOFF else math.inf,
                "finite": finite,
            }
        )
    lower = 4.0 * n * coh
    upper = 8.0 * n * coh
    aggregate = {
        "sum_inv_var": sum_inv,
        "lower": lower,
        "upper": upper,
        "avg_var_lower": 1.0 / upper if upper > 0.0 else math.inf,
        "avg_var_upper": 1.0 / lower if lower > 0.0 else math.inf,
        "excluded_k": excluded,
        "ok": lower - SANDWICH_TOL <= sum_inv <= upper + SANDWICH_TOL,
    }
    return MetrologyReport(n_runs=n_runs, per_k=tuple(per_k), aggregate=aggregate)
