"""Command-line interface: generate families, certify state sets, self-test.

Exit codes: 0 = certified (or command succeeded), 1 = not certified / not
orthogonal / self-test failure, 2 = invalid input.
"""

from __future__ import annotations

import argparse
import sys
from math import prod

import numpy as np

from .certifier import (
    MAX_BRUTE_FORCE_DIM,
    Tolerances,
    assemble_constraints,
    brute_force_constraints,
    certify_nonlocal,
    check_pairwise_orthogonality,
)
from .constructions import (
    product_basis,
    theorem1_set,
    theorem2_set,
    theorem3_set,
    theorem4_set,
)
from .oracles import cramer_solve, proof_determinants_nonzero, roots_of_unity, vandermonde_det
from .serialize import dump_certificate, dump_state_set, load_state_set
from .tensor_core import nullspace_real

__all__ = ["main", "build_parser"]

_HOMOGENEOUS_GRID = [(n, d) for n in range(3, 7) for d in range(2, 7)]
# Higher-dimension sets whose smallest kept singular value sits well below
# 0.1 of the largest: they certify at the default rank tolerance but expose
# a misconfigured (too coarse) tol_rank as reported failures.
_RANK_STRESS_GRID = [(3, 8), (3, 9)]
_SELFTEST_SEED = 71804623


def _parse_dims(args) -> tuple[int, ...]:
    if args.dims is not None and (args.n is not None or args.d is not None):
        raise ValueError("give either --dims or --n/--d, not both")
    if args.dims is not None:
        try:
            dims = tuple(int(part) for part in args.dims.split(","))
        except ValueError:
            raise ValueError(f"--dims must be comma-separated integers, got {args.dims!r}")
        return dims
    if args.n is None or args.d is None:
        raise ValueError("need --dims, or both --n and --d")
    return (args.d,) * args.n


def _generate_set(theorem: int, dims: tuple[int, ...]):
    if theorem in (1, 2):
        if len(set(dims)) > 1:
            raise ValueError(f"theorem {theorem} needs equal local dimensions, got {dims}")
        n, d = len(dims), dims[0]
        return theorem1_set(n, d) if theorem == 1 else theorem2_set(n, d)
    return theorem3_set(dims) if theorem == 3 else theorem4_set(dims)


def cmd_generate(args) -> int:
    try:
        dims = _parse_dims(args)
        state_set = _generate_set(args.theorem, dims)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        dump_state_set(state_set, args.out, normalize=args.normalize)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(state_set)} states ({state_set.label}) to {args.out}")
    return 0


def cmd_certify(args) -> int:
    try:
        state_set = load_state_set(args.input)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    tol = Tolerances(args.tol_rank, args.tol_active, args.tol_orth)
    cert = certify_nonlocal(state_set, tol)

    print(f"state set     : {cert.label or '(unlabeled)'}")
    print(f"dims          : {'x'.join(str(d) for d in cert.dims)}")
    print(f"states        : {len(state_set)}")
    orth = cert.orthogonality
    print(
        f"orthogonality : {'PASS' if orth.passed else 'FAIL'} "
        f"(max residual {orth.max_residual:.3e}, tol {orth.tol:g})"
    )
    for rep in cert.parties:
        line = (
            f"party {rep.party}  active_pairs={rep.active_pairs}  "
            f"solution_dim={rep.solution_dim}  trivial={'yes' if rep.trivial else 'no'}"
        )
        if rep.witness is not None:
            line += "  (witness recorded)"
        print(line)
    print(f"verdict       : {cert.verdict}")

    if args.out:
        try:
            dump_certificate(cert, args.out)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
        print(f"certificate written to {args.out}")
    return 0 if cert.certified_nonlocal else 1


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------

def _heterogeneous_sample(count: int = 12, seed: int = _SELFTEST_SEED):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(3, 6))
        out.append(tuple(int(x) for x in rng.integers(2, 6, size=n)))
    return out


def _cross_residual(basis: np.ndarray, rows: np.ndarray) -> float:
    if basis.shape[1] == 0 or rows.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(rows @ basis)))


def _selftest_checks(max_total_dim: int, tol: Tolerances):
    """Yield (name, passed, detail) tuples for the whole self-test battery."""
    checks = []

    def add(name, ok, detail=""):
        checks.append((name, bool(ok), detail))

    for d in range(2, 17):
        roots = roots_of_unity(d)
        sep = min(
            abs(roots[i] - roots[j]) for i in range(d) for j in range(i + 1, d)
        )
        powmax = float(np.max(np.abs(roots**d - 1.0)))
        add(f"roots-of-unity d={d}", sep > 1e-9 and powmax <= 1e-12,
            f"min separation {sep:.3e}, max |w^d - 1| {powmax:.3e}")

    for d in range(2, 9):
        val = abs(vandermonde_det(roots_of_unity(d)))
        target = d ** (d / 2)
        add(f"vandermonde-roots-identity d={d}",
            abs(val - target) <= 1e-9 * target,
            f"|det| {val:.12g} vs d^(d/2) {target:.12g}")
        dets = proof_determinants_nonzero(d)
        add(f"leave-one-out-determinants d={d}", float(dets.min()) > 1e-8,
            f"min |det| {dets.min():.3e}")

    rng = np.random.default_rng(_SELFTEST_SEED)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 5))
        while True:
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            if np.linalg.cond(a) < 100:
                break
        b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        diff = np.max(np.abs(cramer_solve(a, b) - np.linalg.solve(a, b)))
        worst = max(worst, float(diff))
    add("cramer-vs-dense-solver", worst <= 1e-9, f"max deviation {worst:.3e}")

    sweep = []
    for n, d in _HOMOGENEOUS_GRID:
        t1, t2 = theorem1_set(n, d), theorem2_set(n, d)
        add(f"count {t1.label}", len(t1) == 2 * n * (d - 1),
            f"{len(t1)} vs {2 * n * (d - 1)}")
        add(f"count {t2.label}", len(t2) == n * (2 * d - 3) + 1,
            f"{len(t2)} vs {n * (2 * d - 3) + 1}")
        sweep.extend([t1, t2])
    for n, d in _RANK_STRESS_GRID:
        sweep.append(theorem1_set(n, d))
    for dims in _heterogeneous_sample():
        t3, t4 = theorem3_set(dims), theorem4_set(dims)
        add(f"count {t3.label}", len(t3) == sum(2 * (d - 1) for d in dims))
        add(f"count {t4.label}", len(t4) == sum(2 * d - 3 for d in dims) + 1)
        sweep.extend([t3, t4])

    for state_set in sweep:
        orth = check_pairwise_orthogonality(state_set, tol.tol_orth)
        add(f"orthogonality {state_set.label}", orth.passed,
            f"max residual {orth.max_residual:.3e}")

    certifiable = [s for s in sweep if prod(s.dims) <= max_total_dim]
    for state_set in certifiable:
        cert = certify_nonlocal(state_set, tol)
        dims_found = [r.solution_dim for r in cert.parties]
        add(f"certify {state_set.label}",
            cert.verdict == "CERTIFIED_NONLOCAL",
            f"verdict {cert.verdict}, solution dims {dims_found}")

    oracle_sets = [s for s in certifiable if prod(s.dims) <= MAX_BRUTE_FORCE_DIM]
    for state_set in oracle_sets:
        ok = True
        detail = ""
        for k in range(state_set.n_parties):
            fast = assemble_constraints(state_set, k, tol.tol_active)
            slow = brute_force_constraints(state_set, k)
            nf = nullspace_real(fast, tol.tol_rank)
            ns = nullspace_real(slow, tol.tol_rank)
            res = max(_cross_residual(nf, slow), _cross_residual(ns, fast))
            if nf.shape[1] != ns.shape[1] or res > 1e-8:
                ok = False
                detail = (
                    f"party {k}: dims {nf.shape[1]} vs {ns.shape[1]}, residual {res:.3e}"
                )
                break
        add(f"oracle-equivalence {state_set.label}", ok, detail)

    for dims in [(2, 2), (2, 2, 2)]:
        basis_set = product_basis(dims)
        cert = certify_nonlocal(basis_set, tol)
        expected = list(dims)
        found = [r.solution_dim for r in cert.parties]
        oracle_dims = [
            nullspace_real(brute_force_constraints(basis_set, k), tol.tol_rank).shape[1]
            for k in range(len(dims))
        ]
        add(f"negative-control {basis_set.label}",
            cert.verdict == "NOT_CERTIFIED" and found == expected and oracle_dims == expected,
            f"verdict {cert.verdict}, dims {found}, oracle {oracle_dims}")

    return checks


def cmd_selftest(args) -> int:
    tol = Tolerances(args.tol_rank, args.tol_active, args.tol_orth)
    checks = _selftest_checks(args.max_total_dim, tol)
    failures = 0
    for name, ok, detail in checks:
        tag = "PASS" if ok else "FAIL"
        suffix = f"  {detail}" if (detail and not ok) else ""
        print(f"[{tag}] {name}{suffix}")
        failures += 0 if ok else 1
    print(f"selftest: {len(checks) - failures}/{len(checks)} checks passed")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlops",
        description="Generate orthogonal product-state families and certify "
                    "that no single party can measure them informatively.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a family and write it to a file")
    gen.add_argument("--theorem", type=int, choices=(1, 2, 3, 4), required=True,
                     help="which family to generate")
    gen.add_argument("--n", type=int, help="number of parties (equal-dimension families)")
    gen.add_argument("--d", type=int, help="local dimension (equal-dimension families)")
    gen.add_argument("--dims", help="comma-separated local dimensions, e.g. 2,3,4")
    gen.add_argument("--out", required=True, help="output path for the state-set file")
    gen.add_argument("--normalize", action="store_true",
                     help="normalize each local vector on export")
    gen.set_defaults(func=cmd_generate)

    cert = sub.add_parser("certify", help="certify a state-set file")
    cert.add_argument("input", help="state-set file to certify")
    cert.add_argument("--out", help="also write a machine-readable certificate")
    cert.add_argument("--tol-rank", type=float, default=Tolerances.tol_rank)
    cert.add_argument("--tol-active", type=float, default=Tolerances.tol_active)
    cert.add_argument("--tol-orth", type=float, default=Tolerances.tol_orth)
    cert.set_defaults(func=cmd_certify)

    st = sub.add_parser("selftest", help="run the built-in verification battery")
    st.add_argument("--max-total-dim", type=int, default=MAX_BRUTE_FORCE_DIM,
                    help="skip certification sweeps above this composite dimension")
    st.add_argument("--tol-rank", type=float, default=Tolerances.tol_rank)
    st.add_argument("--tol-active", type=float, default=Tolerances.tol_active)
    st.add_argument("--tol-orth", type=float, default=Tolerances.tol_orth)
    st.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
