"""Generators for the four built-in families of orthogonal product states.

All four families follow one cyclic rule on n >= 3 parties with local
dimensions d_1..d_n >= 2.  Family i (i = 0..n-1) puts a root-of-unity phase
vector on party i, a marker basis vector on party (i+1) mod n, and |0> on
every other party:

  Block A: marker level d_{i+1}-1 (the top level), one state per phase t.
  Block B: phase t = 1 with marker level q = 1..d_{i+1}-2 (the intermediate
           levels), contributing nothing when d_{i+1} = 2.

theorem1/theorem3 use every phase t = 0..d_i-1 in Block A.  theorem2/theorem4
drop t = 0 and append a single stopper state, the all-ones product.
theorem1/theorem2 are the equal-dimension versions of theorem3/theorem4.

The wrap-around families are what make n = 2 impossible: family 0 and family
n-1 would share both parties and lose pairwise orthogonality, so generation
requires n >= 3.
"""

from __future__ import annotations

import itertools

import numpy as np
from scipy.optimize import linear_sum_assignment

from .tensor_core import ProductState, StateSet, product_inner

__all__ = [
    "phase_vector",
    "basis_vector",
    "product_basis",
    "theorem1_set",
    "theorem2_set",
    "theorem3_set",
    "theorem4_set",
    "canonical_compare",
]


def phase_vector(d: int, t: int) -> np.ndarray:
    """Unnormalized phase vector with amplitudes exp(2*pi*i*t*j/d), j = 0..d-1.

    t is taken mod d; distinct t values give mutually orthogonal vectors.
    """
    if d < 1:
        raise ValueError("bad-dimension: d must be >= 1")
    j = np.arange(d)
    return np.exp(2j * np.pi * ((int(t) % d) * j % d) / d)


def basis_vector(d: int, j: int) -> np.ndarray:
    """Unit coordinate vector |j> in C^d."""
    if d < 1:
        raise ValueError("bad-dimension: d must be >= 1")
    if not 0 <= j < d:
        raise ValueError(f"bad-index: level {j} out of range for dimension {d}")
    e = np.zeros(d, dtype=np.complex128)
    e[j] = 1.0
    return e


def _validated_dims(dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if len(dims) < 3:
        raise ValueError(
            "need-three-parties: the wrap-around families are mutually "
            "non-orthogonal on two parties"
        )
    if any(d < 2 for d in dims):
        raise ValueError("bad-dimension: every local dimension must be >= 2")
    return dims


def _cyclic_state(dims: tuple[int, ...], party: int, t: int, level: int) -> ProductState:
    """Phase t on `party`, basis `level` on the next party, |0> elsewhere."""
    n = len(dims)
    partner = (party + 1) % n
    locs = [basis_vector(d, 0) for d in dims]
    locs[party] = phase_vector(dims[party], t)
    locs[partner] = basis_vector(dims[partner], level)
    return ProductState(tuple(locs))


def _dims_label(dims) -> str:
    return "x".join(str(d) for d in dims)


def theorem3_set(dims) -> StateSet:
    """The sum(2*(d_j - 1)) orthogonal product states on heterogeneous dims.

    Output order: Block A families 0..n-1 with t ascending, then Block B
    families 0..n-1 with the marker level q ascending.
    """
    dims = _validated_dims(dims)
    n = len(dims)
    states = []
    for i in range(n):
        top = dims[(i + 1) % n] - 1
        for t in range(dims[i]):
            states.append(_cyclic_state(dims, i, t, top))
    for i in range(n):
        for q in range(1, dims[(i + 1) % n] - 1):
            states.append(_cyclic_state(dims, i, 1, q))
    return StateSet(dims, tuple(states), label=f"theorem3 dims={_dims_label(dims)}")


def theorem4_set(dims) -> StateSet:
    """The sum(2*d_j - 3) + 1 states: Block A without t = 0, plus the stopper.

    The stopper is the all-ones product, i.e. phase t = 0 on every party.
    Output order: Block A families 0..n-1 (t = 1..d_i-1 ascending), Block B
    families 0..n-1 (q ascending), stopper last.
    """
    dims = _validated_dims(dims)
    n = len(dims)
    states = []
    for i in range(n):
        top = dims[(i + 1) % n] - 1
        for t in range(1, dims[i]):
            states.append(_cyclic_state(dims, i, t, top))
    for i in range(n):
        for q in range(1, dims[(i + 1) % n] - 1):
            states.append(_cyclic_state(dims, i, 1, q))
    states.append(ProductState(tuple(phase_vector(d, 0) for d in dims)))
    return StateSet(dims, tuple(states), label=f"theorem4 dims={_dims_label(dims)}")


def theorem1_set(n: int, d: int) -> StateSet:
    """The 2n(d-1) states on n parties of equal dimension d."""
    base = theorem3_set((int(d),) * int(n))
    return StateSet(base.dims, base.states, label=f"theorem1 n={n} d={d}")


def theorem2_set(n: int, d: int) -> StateSet:
    """The n(2d-3)+1 states (stopper included) on n parties of equal dimension d."""
    base = theorem4_set((int(d),) * int(n))
    return StateSet(base.dims, base.states, label=f"theorem2 n={n} d={d}")


def product_basis(dims) -> StateSet:
    """The full product basis |j_1 .. j_n> of the composite space.

    Locally distinguishable by construction; useful as a negative control
    for certification.
    """
    dims = tuple(int(d) for d in dims)
    states = tuple(
        ProductState(tuple(basis_vector(d, j) for d, j in zip(dims, levels)))
        for levels in itertools.product(*(range(d) for d in dims))
    )
    return StateSet(dims, states, label=f"product-basis dims={_dims_label(dims)}")


def canonical_compare(a: StateSet, b: StateSet, tol: float = 1e-10) -> bool:
    """True iff the two sets match up to one nonzero complex scalar per state.

    Looks for a bijection between the state lists under which matched states
    are parallel, tested via |<a_i|b_j>|^2 = <a_i|a_i><b_j|b_j> within tol.
    """
    if a.dims != b.dims:
        raise ValueError(f"dim-mismatch: {a.dims} vs {b.dims}")
    if len(a.states) != len(b.states):
        return False
    m = len(a.states)
    if m == 0:
        return True
    parallel = np.zeros((m, m), dtype=bool)
    for i, sa in enumerate(a.states):
        for j, sb in enumerate(b.states):
            ov = abs(product_inner(sa, sb)) ** 2
            full = (sa.norm * sb.norm) ** 2
            parallel[i, j] = abs(ov - full) <= tol * full
    row, col = linear_sum_assignment(1.0 - parallel.astype(float))
    return bool(parallel[row, col].all())
