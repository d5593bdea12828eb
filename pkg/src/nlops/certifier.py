"""Local-indistinguishability certificates for orthogonal product-state sets.

A measurement element E applied by party k preserves the pairwise
orthogonality of the set exactly when <u_a|E|u_b> = 0 for every pair of
states (a, b) whose overlap on the remaining parties does not vanish.  Those
are linear constraints on the Hermitian coordinates of E, so the admissible
operators form a real linear space that always contains the identity.  A set
is certified nonlocal when, for every party, that space is exactly the span
of the identity: no party can learn anything from any orthogonality-
preserving measurement.

brute_force_constraints recomputes the same constraint rows from explicit
full vectors in the composite space, over all pairs and with no activity
filtering, and serves as the independent cross-check of the factorized path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import prod

import numpy as np

from .tensor_core import (
    HermitianCoords,
    StateSet,
    hermitian_basis_flat,
    nullspace_real,
)

__all__ = [
    "Tolerances",
    "OrthogonalityReport",
    "PartyReport",
    "Certificate",
    "check_pairwise_orthogonality",
    "assemble_constraints",
    "brute_force_constraints",
    "solution_space",
    "certify_nonlocal",
    "MAX_BRUTE_FORCE_DIM",
]

# Composite dimension above which the explicit full-vector oracle refuses to run.
MAX_BRUTE_FORCE_DIM = 4096

# A one-dimensional solution space counts as trivial only if its basis vector
# is aligned with the identity direction up to this relative shortfall.
IDENTITY_ALIGNMENT_EPS = 1e-9


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used throughout certification."""

    tol_rank: float = 1e-9
    tol_active: float = 1e-10
    tol_orth: float = 1e-10


@dataclass(frozen=True, eq=False)
class OrthogonalityReport:
    """Pairwise overlap residuals |<a|b>| / (|a| |b|) for a state set."""

    passed: bool
    max_residual: float
    residuals: np.ndarray
    tol: float

    def failing_pairs(self) -> list[tuple[int, int, float]]:
        out = []
        m = self.residuals.shape[0]
        for i in range(m):
            for j in range(i + 1, m):
                if self.residuals[i, j] > self.tol:
                    out.append((i, j, float(self.residuals[i, j])))
        return out


@dataclass(frozen=True, eq=False)
class PartyReport:
    """Per-party outcome: size of the admissible-operator space and triviality."""

    party: int
    active_pairs: int
    solution_dim: int
    trivial: bool
    witness: HermitianCoords | None = None


@dataclass(frozen=True, eq=False)
class Certificate:
    """Joint verdict: orthogonality check plus one PartyReport per party."""

    dims: tuple[int, ...]
    label: str
    tolerances: Tolerances
    orthogonality: OrthogonalityReport
    parties: tuple[PartyReport, ...]
    certified_nonlocal: bool

    @property
    def verdict(self) -> str:
        if not self.orthogonality.passed:
            return "NOT_ORTHOGONAL"
        if self.certified_nonlocal:
            return "CERTIFIED_NONLOCAL"
        return "NOT_CERTIFIED"


def _check_party(state_set: StateSet, party: int) -> None:
    if not 0 <= party < state_set.n_parties:
        raise ValueError(f"bad-party: party {party} out of range")


def _grams_and_norms(state_set: StateSet):
    """Per-party Gram matrices of the local vectors and per-party norm vectors."""
    grams, norms = [], []
    for j in range(state_set.n_parties):
        u = state_set.party_vectors(j)
        grams.append(u.conj() @ u.T)
        norms.append(np.linalg.norm(u, axis=1))
    return grams, norms


def check_pairwise_orthogonality(state_set: StateSet, tol: float = 1e-10) -> OrthogonalityReport:
    """Relative overlap residual for every unordered pair; pass iff all are <= tol."""
    m = len(state_set)
    if m < 2:
        return OrthogonalityReport(True, 0.0, np.zeros((m, m)), tol)
    grams, norms = _grams_and_norms(state_set)
    overlap = reduce(np.multiply, grams)
    scale = reduce(np.multiply, (np.outer(v, v) for v in norms))
    residuals = np.abs(overlap) / scale
    np.fill_diagonal(residuals, 0.0)
    max_residual = float(residuals.max())
    return OrthogonalityReport(max_residual <= tol, max_residual, residuals, tol)


def assemble_constraints(state_set: StateSet, party: int, tol_active: float = 1e-10) -> np.ndarray:
    """Real constraint matrix on the party's Hermitian coordinates.

    Each unordered pair (a, b) whose excluded-party overlap product exceeds
    tol_active (relative to the excluded norms) contributes two rows, the real
    and imaginary parts of the functional x -> <u_a|E(x)|u_b>, normalized by
    the two local norms.  Inactive pairs contribute nothing.
    """
    _check_party(state_set, party)
    d = state_set.dims[party]
    m = len(state_set)
    if m < 2:
        return np.zeros((0, d * d))
    grams, norms = _grams_and_norms(state_set)
    rest = [j for j in range(state_set.n_parties) if j != party]
    overlap = reduce(np.multiply, (grams[j] for j in rest))
    scale = reduce(np.multiply, (np.outer(norms[j], norms[j]) for j in rest))
    iu, jv = np.triu_indices(m, 1)
    active = np.abs(overlap[iu, jv]) > tol_active * scale[iu, jv]
    ia, jb = iu[active], jv[active]
    if ia.size == 0:
        return np.zeros((0, d * d))
    u = state_set.party_vectors(party)
    # <u_a|B_x|u_b> = sum_{j,p} B_x[j,p] * conj(u_a[j]) u_b[p]
    w = (u[ia].conj()[:, :, None] * u[jb][:, None, :]).reshape(ia.size, d * d)
    values = w @ hermitian_basis_flat(d).T
    values /= (norms[party][ia] * norms[party][jb])[:, None]
    rows = np.empty((2 * ia.size, d * d))
    rows[0::2] = values.real
    rows[1::2] = values.imag
    return rows


def brute_force_constraints(state_set: StateSet, party: int) -> np.ndarray:
    """Constraint rows recomputed from explicit vectors in the composite space.

    Builds every state as a full vector of length prod(dims), applies each
    basis operator to the party's tensor factor, and keeps ALL unordered
    pairs with no activity filtering.  Refuses composite dimensions above
    MAX_BRUTE_FORCE_DIM.
    """
    _check_party(state_set, party)
    total = prod(state_set.dims)
    if total > MAX_BRUTE_FORCE_DIM:
        raise ValueError(
            f"too-large: composite dimension {total} exceeds {MAX_BRUTE_FORCE_DIM}"
        )
    d = state_set.dims[party]
    m = len(state_set)
    if m < 2:
        return np.zeros((0, d * d))
    full = [reduce(np.kron, s.factors) for s in state_set]
    psi = np.stack(
        [np.moveaxis(f.reshape(state_set.dims), party, 0).reshape(d, -1) for f in full]
    )
    norms = np.linalg.norm(psi.reshape(m, -1), axis=1)
    # C[a,b,j,p] = <phi_a| (|j><p| on the party factor) |phi_b>
    c = np.einsum("air,bjr->abij", psi.conj(), psi)
    iu, jv = np.triu_indices(m, 1)
    w = c[iu, jv].reshape(iu.size, d * d)
    values = w @ hermitian_basis_flat(d).T
    values /= (norms[iu] * norms[jv])[:, None]
    rows = np.empty((2 * iu.size, d * d))
    rows[0::2] = values.real
    rows[1::2] = values.imag
    return rows


def solution_space(
    state_set: StateSet,
    party: int,
    tol_rank: float = 1e-9,
    tol_active: float = 1e-10,
) -> list[HermitianCoords]:
    """Orthonormal basis of Hermitian operators satisfying all constraints."""
    basis = nullspace_real(assemble_constraints(state_set, party, tol_active), tol_rank)
    d = state_set.dims[party]
    return [HermitianCoords(d, basis[:, i]) for i in range(basis.shape[1])]


def _witness_coords(basis: np.ndarray) -> np.ndarray | None:
    """Largest solution component orthogonal to the identity direction, unit norm."""
    if basis.shape[1] == 0:
        return None
    off = basis.copy()
    off[0, :] = 0.0
    lengths = np.linalg.norm(off, axis=0)
    best = int(np.argmax(lengths))
    if lengths[best] <= 1e-14:
        return None
    return off[:, best] / lengths[best]


def _party_report(state_set: StateSet, party: int, tol: Tolerances) -> PartyReport:
    rows = assemble_constraints(state_set, party, tol.tol_active)
    basis = nullspace_real(rows, tol.tol_rank)
    dim = basis.shape[1]
    trivial = False
    if dim == 1:
        v = basis[:, 0]
        trivial = bool(v[0] ** 2 >= (1.0 - IDENTITY_ALIGNMENT_EPS) * float(v @ v))
    witness = None
    if not trivial:
        w = _witness_coords(basis)
        if w is not None:
            witness = HermitianCoords(state_set.dims[party], w)
    return PartyReport(
        party=party,
        active_pairs=rows.shape[0] // 2,
        solution_dim=dim,
        trivial=trivial,
        witness=witness,
    )


def certify_nonlocal(state_set: StateSet, tolerances: Tolerances | None = None) -> Certificate:
    """Run the orthogonality check and every party's solution space.

    The set is certified nonlocal iff it is pairwise orthogonal and every
    party's space of admissible operators is the span of the identity.
    Failures are encoded in the certificate, never raised.
    """
    tol = tolerances if tolerances is not None else Tolerances()
    orth = check_pairwise_orthogonality(state_set, tol.tol_orth)
    parties = tuple(
        _party_report(state_set, k, tol) for k in range(state_set.n_parties)
    )
    certified = bool(orth.passed and all(p.trivial for p in parties))
    return Certificate(
        dims=state_set.dims,
        label=state_set.label,
        tolerances=tol,
        orthogonality=orth,
        parties=parties,
        certified_nonlocal=certified,
    )
