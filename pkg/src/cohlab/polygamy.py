"""Coherence-distribution inequalities for bipartite and multipartite states.

The pure-state product bound ``1 - C(AB) <= [1-C(A)][1-C(B)]`` extends to
mixed states through a chain of theorems whose coefficients (minimal nonzero
eigenvalue, rank, eigenstate marginal coherences) are collected per state in
a :class:`PolygamyRecord`.  The plain product form on mixed states is only a
conjecture for total dimension >= 6 and is falsifiable on two qubits; the
sweep machinery below distinguishes the two numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coherence import c_skew
from .errors import BadPartition, DimensionMismatch, NotPure
from .linalg import RANK_TOL, DensityMatrix, partial_trace, pure_state, validate_density
from .parallel import indexed_map
from .rand import child_rng, ginibre_mixed

PURITY_TOL = 1e-8
GAP_TOL = 1e-9


def _marginal_dims(rho: DensityMatrix, dims) -> tuple[int, int]:
    da, db = (int(d) for d in dims)
    if da * db != rho.dim:
        raise DimensionMismatch(f"dims {dims} do not factor state dimension {rho.dim}")
    return da, db


def pure_polygamy_gap(psi: DensityMatrix, dims) -> float:
    """Gap [1-C(A)][1-C(B)] - [1-C(AB)] for a pure bipartite state.

    Non-negative for every pure state and zero exactly on product states.
    """
    da, db = _marginal_dims(psi, dims)
    if psi.purity() < 1.0 - PURITY_TOL:
        raise NotPure(f"purity {psi.purity():.10f} below pure-state threshold")
    c_a = c_skew(partial_trace(psi, [da, db], [0]))
    c_b = c_skew(partial_trace(psi, [da, db], [1]))
    return (1.0 - c_a) * (1.0 - c_b) - (1.0 - c_skew(psi))


def _coherence_of_stack(stack: np.ndarray) -> np.ndarray:
    """c_skew of a stack of small PSD unit-trace matrices, batched."""
    w, v = np.linalg.eigh(stack)
    w = np.clip(w, 0.0, None)
    w = w / w.sum(axis=-1, keepdims=True)
    sdiag = np.einsum("...km,...m->...k", np.abs(v) ** 2, np.sqrt(w))
    return 1.0 - np.sum(sdiag**2, axis=-1)


@dataclass(frozen=True)
class PolygamyRecord:
    """Coherence bookkeeping of one bipartite state in the fixed basis."""

    dims: tuple
    c_joint: float
    c_a: float
    c_b: float
    gap_pure_form: float
    lambda_min: float
    rank: int
    sum_eig_coh_a: float
    sum_eig_coh_b: float
    c_s: float
    diag_sq_sum: float
    eigenvalues: tuple

    # inequality gaps; each is >= -tol whenever the corresponding relation holds
    def gap_marginal_vs_diag(self) -> float:
        return (1.0 - self.c_a) * (1.0 - self.c_b) - self.diag_sq_sum

    def gap_diag_vs_lambda(self) -> float:
        return self.diag_sq_sum - self.lambda_min * (1.0 - self.c_joint)

    def gap_rank_a(self) -> float:
        return (self.rank - self.sum_eig_coh_a) * (1.0 - self.c_b) - (1.0 - self.c_joint)

    def gap_rank_b(self) -> float:
        return (1.0 - self.c_a) * (self.rank - self.sum_eig_coh_b) - (1.0 - self.c_joint)

    def gap_symmetric(self) -> float:
        return (1.0 - self.c_a) * (1.0 - self.c_b) - (1.0 - self.c_joint) ** 2 / self.c_s

    def theorem_gaps(self) -> dict:
        """The four proven mixed-state inequality gaps."""
        return {
            "marginal_vs_diag": self.gap_marginal_vs_diag(),
            "diag_vs_lambda": self.gap_diag_vs_lambda(),
            "rank_a": self.gap_rank_a(),
            "rank_b": self.gap_rank_b(),
            "symmetric": self.gap_symmetric(),
        }


def bipartite_record(rho_ab: DensityMatrix, dims) -> PolygamyRecord:
    """Collect marginal coherences, eigenstate sums and inequality inputs."""
    da, db = _marginal_dims(rho_ab, dims)
    c_joint = c_skew(rho_ab)
    c_a = c_skew(partial_trace(rho_ab, [da, db], [0]))
    c_b = c_skew(partial_trace(rho_ab, [da, db], [1]))

    w = rho_ab.eigenvalues
    keep = w > RANK_TOL
    r = int(np.count_nonzero(keep))
    psi = rho_ab.eigenvectors[:, keep].T.reshape(r, da, db)
    rho_ai = np.einsum("ibk,ick->ibc", psi, psi.conj())
    rho_bi = np.einsum("ikb,ikc->ibc", psi, psi.conj())
    sum_a = float(np.sum(_coherence_of_stack(rho_ai)))
    sum_b = float(np.sum(_coherence_of_stack(rho_bi)))

    d = rho_ab.diag()
    return PolygamyRecord(
        dims=(da, db),
        c_joint=c_joint,
        c_a=c_a,
        c_b=c_b,
        gap_pure_form=(1.0 - c_a) * (1.0 - c_b) - (1.0 - c_joint),
        lambda_min=rho_ab.min_nonzero_eigenvalue(),
        rank=r,
        sum_eig_coh_a=sum_a,
        sum_eig_coh_b=sum_b,
        c_s=(r - sum_a) * (r - sum_b),
        diag_sq_sum=float(d @ d),
        eigenvalues=tuple(float(x) for x in w),
    )


def _leaves_of(node) -> list:
    if _is_leaf(node):
        return [tuple(node)]
    left, right = node
    return _leaves_of(left) + _leaves_of(right)


def _is_leaf(node) -> bool:
    return all(isinstance(x, (int, np.integer)) for x in node)


def _check_tree(tree, n_subsystems: int):
    if _is_leaf(tree):
        raise BadPartition("tree root must split into at least two blocks")
    leaves = _leaves_of(tree)
    flat = sorted(i for leaf in leaves for i in leaf)
    if flat != list(range(n_subsystems)):
        raise BadPartition(f"leaves {leaves} do not partition 0..{n_subsystems - 1}")
    def walk(node):
        if _is_leaf(node):
            return
        if len(node) != 2:
            raise BadPartition("internal nodes must be bipartite splits")
        walk(node[0])
        walk(node[1])
    walk(tree)


def _subsystems_of(node) -> tuple:
    return tuple(sorted(i for leaf in _leaves_of(node) for i in leaf)) if not _is_leaf(node) else tuple(sorted(node))


def _reduced(rho: DensityMatrix, dims, subs) -> DensityMatrix:
    if len(subs) == len(dims):
        return rho
    return partial_trace(rho, dims, subs)


def _split_coefficients(st: DensityMatrix, node_dims, left_pos) -> tuple[float, float]:
    """(lambda_min, c_s) of one bipartite split of a node state.

    c_s sums the left/right marginal coherences of the node state's
    eigenstates above the rank tolerance; ties in degenerate spectra follow
    the eigendecomposition as returned.
    """
    right_pos = [i for i in range(len(node_dims)) if i not in left_pos]
    w = st.eigenvalues
    keep = np.nonzero(w > RANK_TOL)[0]
    r = len(keep)
    sum_l = 0.0
    sum_r = 0.0
    for i in keep:
        eigenstate = pure_state(st.eigenvectors[:, i])
        sum_l += c_skew(partial_trace(eigenstate, node_dims, left_pos))
        sum_r += c_skew(partial_trace(eigenstate, node_dims, right_pos))
    return st.min_nonzero_eigenvalue(), (r - sum_l) * (r - sum_r)


def partition_check(rho: DensityMatrix, dims, tree, tol: float = GAP_TOL) -> dict:
    """Evaluate both multipartite distribution inequalities on a nested split.

    ``tree`` is a nested pair structure over subsystem indices, e.g.
    ``((0,), ((1,), (2,)))`` splits 0|12 and then 1|2.  The product form
    multiplies a minimal-nonzero-eigenvalue factor per split; the symmetric
    form accumulates one c_s factor per split, entering at the exponent of
    its branch, with leaf exponents halving below each substituted split.
    """
    dims = [int(d) for d in dims]
    if int(np.prod(dims)) != rho.dim:
        raise DimensionMismatch(f"prod({dims}) != state dimension {rho.dim}")
    _check_tree(tree, len(dims))

    leaf_coh = {}
    for leaf in _leaves_of(tree):
        leaf_coh[leaf] = c_skew(_reduced(rho, dims, sorted(leaf)))

    splits = []

    def walk(node, depth):
        """Returns (leaf exponents, lambda product, c_s accumulator) for a node."""
        subs = _subsystems_of(node)
        st = _reduced(rho, dims, subs)
        node_dims = [dims[i] for i in subs]
        left, right = node
        left_set = set(_subsystems_of(left))
        left_pos = [k for k, s in enumerate(subs) if s in left_set]
        lam, c_s = _split_coefficients(st, node_dims, left_pos)
        splits.append(
            {"subsystems": subs, "split": (_subsystems_of(left), _subsystems_of(right)),
             "lambda_min": lam, "c_s": c_s, "exponent": 0.5**depth}
        )
        exponents = {}
        lam_prod = lam
        cs_prod = c_s
        for child in (left, right):
            if _is_leaf(child):
                exponents[tuple(child)] = 1.0
            else:
                sub_exp, sub_lam, sub_cs = walk(child, depth + 1)
                for l, e in sub_exp.items():
                    exponents[l] = e / 2.0
                lam_prod *= sub_lam
                cs_prod *= np.sqrt(sub_cs)
        return exponents, lam_prod, cs_prod

    exponents, lambda_m, c_st = walk(tree, 0)
    one_minus_joint = 1.0 - c_skew(rho)
    lhs_lambda = float(np.prod([1.0 - leaf_coh[l] for l in leaf_coh]))
    lhs_sym = float(np.prod([(1.0 - leaf_coh[l]) ** exponents[l] for l in leaf_coh]))
    rhs_lambda = lambda_m * one_minus_joint
    rhs_sym = one_minus_joint**2 / c_st
    return {
        "leaf_coherences": leaf_coh,
        "exponents": exponents,
        "splits": splits,
        "lhs_product": lhs_lambda,
        "lambda_m": float(lambda_m),
        "ok_lambda_form": bool(lhs_lambda >= rhs_lambda - tol),
        "lhs_symmetric": lhs_sym,
        "c_st": float(c_st),
        "ok_symmetric_form": bool(lhs_sym >= rhs_sym - tol),
    }


def sweep_polygamy(dims, n_samples: int, seed: int, threads: int = 1) -> list:
    """Seeded sweep of bipartite records over Ginibre mixed states."""
    da, db = (int(d) for d in dims)

    def one(i: int) -> PolygamyRecord:
        return bipartite_record(ginibre_mixed(da * db, child_rng(seed, i)), (da, db))

    return indexed_map(one, n_samples, threads)


def sweep_summary(records) -> dict:
    gaps = np.array([r.gap_pure_form for r in records])
    theorem_min = {
        name: min(r.theorem_gaps()[name] for r in records)
        for name in ("marginal_vs_diag", "diag_vs_lambda", "rank_a", "rank_b", "symmetric")
    }
    return {
        "samples": len(records),
        "min_gap": float(gaps.min()),
        "mean_gap": float(gaps.mean()),
        "violations": int(np.count_nonzero(gaps < 0.0)),
        "theorem_min_gaps": theorem_min,
    }


def find_qubit_violations(seed: int, n_trials: int = 50, noise: float = 0.01) -> list:
    """Search near the bundled two-qubit mixture for pure-form violations.

    Trial 0 is the unperturbed fixture; later trials jitter the mixing weight
    and the component vectors.  Returns (trial index, record) pairs with a
    strictly negative pure-form gap.
    """
    from .fixtures import qubit_mixture_counterexample

    base = qubit_mixture_counterexample()
    found = []
    for i in range(n_trials):
        rng = child_rng(seed, i)
        if i == 0:
            p, v1, v2 = base["p"], base["psi1"], base["psi2"]
        else:
            p = float(np.clip(base["p"] + noise * rng.standard_normal(), 1e-3, 1.0 - 1e-3))
            v1 = base["psi1"] + noise * rng.standard_normal(4)
            v2 = base["psi2"] + noise * rng.standard_normal(4)
            v1 = v1 / np.linalg.norm(v1)
            v2 = v2 / np.linalg.norm(v2)
        mix = p * np.outer(v1, np.conj(v1)) + (1.0 - p) * np.outer(v2, np.conj(v2))
        rec = bipartite_record(validate_density(mix), (2, 2))
        if rec.gap_pure_form < -1e-12:
            found.append((i, rec))
    return found
