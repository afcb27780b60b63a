"""Identity-verification battery for the assembled representation.

Every check computes a scale-free residual
``|LHS - RHS|_F / max(1, |LHS|_F, |RHS|_F)`` with both sides restricted to
interior columns: an identity whose operator words raise the level at most k
times is asserted on levels <= n_max - k, where truncation cannot reach it.

The suite covers: all 105 generator commutators and the ladder commutators,
the 21 + 15 restrictive tensor components (plus the hand-expanded component
shapes and the anticommutator-derived forms), Casimir values, the spectrum
with its degeneracies and the paired su(2) Casimirs, the position/momentum
contract, ladder structure and eigenstate construction, the Gamma-ratio
recursion with its operator chains, tensor covariance, and the spin one-half
demonstration of a restriction selecting one representation.
"""

from __future__ import annotations

import math
import time
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import algebra
from .algebra import GENERATORS, GeneratorIndex, metric
from .hilbert import Polynomial4, laplacian, orthonormalize
from .operators import OperatorRep, OperatorSet, j_full, level_function
from .report import CheckResult, VerificationReport

DEFAULT_N = 6

DEFAULT_TOLERANCES: dict[str, float] = {
    "commutator": 1e-10,
    "restrictive": 1e-10,
    "casimir": 1e-10,
    "spectrum": 1e-10,
    "su2": 1e-10,
    "position": 1e-10,
    "ladder": 1e-10,
    "v_route": 1e-10,
    "f_scalar": 1e-12,
    "f_matrix": 1e-8,
    "covariance": 1e-10,
    "eigenstate": 1e-10,
    "so3": 1e-12,
}


def f_scalar(h: float) -> float:
    """Gamma-ratio function f(h) = 2 Gamma(h/2 + 3/4) / Gamma(h/2 + 1/4)."""
    return 2.0 * math.exp(math.lgamma(h / 2 + 0.75) - math.lgamma(h / 2 + 0.25))


def interior_cut(space, k: int) -> int:
    """Number of basis columns spanning levels <= n_max - k."""
    top = space.n_max - k
    if top < 0:
        return 0
    return space.offsets[top + 1]


def rel_residual(lhs: np.ndarray, rhs: np.ndarray, cut: int) -> float:
    """Scale-free Frobenius residual on the first ``cut`` columns."""
    if cut == 0:
        return 0.0
    diff = lhs[:, :cut] - rhs[:, :cut]
    denom = max(1.0, np.linalg.norm(lhs[:, :cut]), np.linalg.norm(rhs[:, :cut]))
    return float(np.linalg.norm(diff) / denom)


def _levels(space, k: int) -> tuple[int, int]:
    return (0, max(space.n_max - k, -1))


def _tol(tolerances: Mapping[str, float] | None, key: str) -> float:
    if tolerances and key in tolerances:
        return float(tolerances[key])
    return DEFAULT_TOLERANCES[key]


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        return False


def _check(name, lhs, rhs, k, tol, space, seconds, note="") -> CheckResult:
    cut = interior_cut(space, k)
    res = rel_residual(lhs, rhs, cut)
    if cut == 0:
        note = (note + " " if note else "") + "vacuous"
    return CheckResult(
        name=name, residual=res, tolerance=tol, levels=_levels(space, k), note=note.strip(), seconds=seconds
    )


# ---------------------------------------------------------------------------
# commutators
# ---------------------------------------------------------------------------


def _combo_matrix(combo, gens: Mapping[GeneratorIndex, OperatorRep], dim: int) -> np.ndarray:
    acc = np.zeros((dim, dim), dtype=complex)
    for idx, coeff in combo.terms:
        acc += coeff * gens[idx].matrix
    if combo.scalar:
        acc += combo.scalar * np.eye(dim)
    return acc


def check_commutators(ops: OperatorSet, tolerances=None) -> list[CheckResult]:
    """All 105 generator commutators against the structure constants, plus
    the ladder-operator commutation relations."""
    tol = _tol(tolerances, "commutator")
    space = ops.space
    gens = ops.generators
    results = []
    for g1, g2 in combinations(GENERATORS, 2):
        with _Timer() as tm:
            m1, m2 = gens[g1].matrix, gens[g2].matrix
            lhs = m1 @ m2 - m2 @ m1
            rhs = _combo_matrix(algebra.commutator_rhs(g1, g2), gens, space.dim)
        results.append(_check(f"comm:[{g1},{g2}]", lhs, rhs, 2, tol, space, tm.seconds))

    zero = np.zeros((space.dim, space.dim), dtype=complex)
    with _Timer() as tm:
        res_pp = max(
            rel_residual(
                ops.a_plus[i].matrix @ ops.a_plus[j].matrix - ops.a_plus[j].matrix @ ops.a_plus[i].matrix,
                zero, interior_cut(space, 2),
            )
            for i, j in combinations(range(4), 2)
        )
    results.append(CheckResult("comm:[A+,A+]", res_pp, tol, levels=_levels(space, 2), seconds=tm.seconds))

    with _Timer() as tm:
        res_mm = max(
            rel_residual(
                ops.a_minus[i].matrix @ ops.a_minus[j].matrix - ops.a_minus[j].matrix @ ops.a_minus[i].matrix,
                zero, interior_cut(space, 2),
            )
            for i, j in combinations(range(4), 2)
        )
    results.append(CheckResult("comm:[A-,A-]", res_mm, tol, levels=_levels(space, 2), seconds=tm.seconds))

    with _Timer() as tm:
        eye = np.eye(space.dim, dtype=complex)
        res_pm = -1.0
        for i in range(4):
            for j in range(4):
                lhs = ops.a_plus[i].matrix @ ops.a_minus[j].matrix - ops.a_minus[j].matrix @ ops.a_plus[i].matrix
                rhs = -2j * j_full(ops.J, i + 1, j + 1)
                if i == j:
                    rhs = rhs - 2.0 * ops.h.matrix
                res_pm = max(res_pm, rel_residual(lhs, rhs, interior_cut(space, 2)))
    results.append(CheckResult("comm:[A+,A-]", res_pm, tol, levels=_levels(space, 2), seconds=tm.seconds))
    return results


# ---------------------------------------------------------------------------
# restrictive tensors
# ---------------------------------------------------------------------------


def check_restrictive(ops: OperatorSet, c: float = 2.0, tolerances=None) -> list[CheckResult]:
    """Vanishing of both invariant tensors on the representation, of the
    hand-expanded component shapes, and of the anticommutator-derived forms."""
    tol = _tol(tolerances, "restrictive")
    space = ops.space
    dim = space.dim
    zero = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(dim, dtype=complex)
    results = []

    with _Timer() as tm:
        t_tensor = algebra.tensor_T(ops.generators, c=c)
    per = tm.seconds / 21.0
    for a in range(1, 7):
        for b in range(a, 7):
            results.append(_check(f"T~_{a}{b}", t_tensor[(a, b)], zero, 2, tol, space, per))

    with _Timer() as tm:
        r_tensor = algebra.tensor_R(ops.generators)
    per = tm.seconds / 15.0
    for a in range(1, 7):
        for b in range(a + 1, 7):
            results.append(_check(f"R_{a}{b}", r_tensor[(a, b)], zero, 2, tol, space, per))

    K = [k.matrix for k in ops.K]
    L = [l.matrix for l in ops.L]
    h = ops.h.matrix

    # hand-expanded component shapes of the antisymmetric tensor
    with _Timer() as tm:
        worst = 0.0
        for i in range(1, 5):
            for j in range(i + 1, 5):
                expr = (
                    K[i - 1] @ L[j - 1] + L[j - 1] @ K[i - 1]
                    - (L[i - 1] @ K[j - 1] + K[j - 1] @ L[i - 1])
                    - 2.0 * h @ j_full(ops.J, i, j)
                )
                worst = max(worst, rel_residual(expr, zero, interior_cut(space, 2)))
    results.append(CheckResult("Rform_KL_J", worst, tol, levels=_levels(space, 2), seconds=tm.seconds))

    with _Timer() as tm:
        worst5 = worst6 = 0.0
        for i in range(1, 5):
            acc5 = np.zeros((dim, dim), dtype=complex)
            acc6 = np.zeros((dim, dim), dtype=complex)
            for p in permutations([x for x in range(1, 5) if x != i]):
                sign = algebra.epsilon_sign((i,) + p)
                jm = j_full(ops.J, p[1], p[2])
                acc5 += sign * (L[p[0] - 1] @ jm + jm @ L[p[0] - 1])
                acc6 += sign * (K[p[0] - 1] @ jm + jm @ K[p[0] - 1])
            worst5 = max(worst5, rel_residual(acc5, zero, interior_cut(space, 2)))
            worst6 = max(worst6, rel_residual(acc6, zero, interior_cut(space, 2)))
    results.append(CheckResult("Rform_LJ", worst5, tol, levels=_levels(space, 2), seconds=tm.seconds / 2))
    results.append(CheckResult("Rform_KJ", worst6, tol, levels=_levels(space, 2), seconds=tm.seconds / 2))

    with _Timer() as tm:
        acc = np.zeros((dim, dim), dtype=complex)
        for p in permutations(range(1, 5)):
            acc += algebra.epsilon_sign(p) * j_full(ops.J, p[0], p[1]) @ j_full(ops.J, p[2], p[3])
    results.append(_check("Rform_JJ", acc, zero, 2, tol, space, tm.seconds))

    # anticommutator-derived forms, each matched against its tensor counterpart
    k2 = sum(K[i] @ K[i] for i in range(4))
    l2 = sum(L[i] @ L[i] for i in range(4))
    h2 = h @ h

    def add(name, expr, counterpart=None, k=2):
        # each derived form must vanish and, where a tensor component matches
        # it algebraically, agree with that component
        with _Timer() as tm:
            res = rel_residual(expr, zero, interior_cut(space, k))
            if counterpart is not None:
                res = max(res, rel_residual(expr, counterpart, interior_cut(space, k)))
        results.append(CheckResult(name, res, tol, levels=_levels(space, k), seconds=tm.seconds))

    for i in range(1, 5):
        jl = sum(
            j_full(ops.J, i, k_) @ L[k_ - 1] + L[k_ - 1] @ j_full(ops.J, i, k_) for k_ in range(1, 5) if k_ != i
        )
        add(f"alt:JL_is_hK_{i}", jl - (h @ K[i - 1] + K[i - 1] @ h), -t_tensor[(i, 6)])
        jk = sum(
            j_full(ops.J, i, k_) @ K[k_ - 1] + K[k_ - 1] @ j_full(ops.J, i, k_) for k_ in range(1, 5) if k_ != i
        )
        add(f"alt:JK_is_mhL_{i}", jk + (h @ L[i - 1] + L[i - 1] @ h), -t_tensor[(i, 5)])
    add("alt:K2_3L2", k2 - 3.0 * l2 + 2.0 * h2 + 2.0 * eye)
    add("alt:L2_3K2", l2 - 3.0 * k2 + 2.0 * h2 + 2.0 * eye)
    add("alt:K2_is_h2p1", k2 - h2 - eye, 0.5 * t_tensor[(5, 5)])
    add("alt:L2_is_h2p1", l2 - h2 - eye, 0.5 * t_tensor[(6, 6)])
    add("alt:KL_anticomm", sum(K[i] @ L[i] + L[i] @ K[i] for i in range(4)), t_tensor[(5, 6)])
    for i in range(1, 5):
        for j in range(i, 5):
            jj = sum(
                j_full(ops.J, i, k_) @ j_full(ops.J, j, k_) + j_full(ops.J, j, k_) @ j_full(ops.J, i, k_)
                for k_ in range(1, 5)
            )
            expr = (
                L[i - 1] @ L[j - 1] + L[j - 1] @ L[i - 1]
                + K[i - 1] @ K[j - 1] + K[j - 1] @ K[i - 1]
                - jj - (2.0 if i == j else 0.0) * eye
            )
            add(f"alt:quad_{i}{j}", expr, -t_tensor[(i, j)])

    # trace identity: (1/2) J.J = h^2 - 1
    with _Timer() as tm:
        jj_full = sum(
            j_full(ops.J, i, j) @ j_full(ops.J, i, j) for i in range(1, 5) for j in range(1, 5)
        )
    results.append(
        _check("alt:halfJJ_is_h2m1", 0.5 * jj_full, h2 - eye, 2, tol, space, tm.seconds)
    )
    return results


# ---------------------------------------------------------------------------
# Casimirs
# ---------------------------------------------------------------------------


def _casimir_chain(gens_table, dim: int) -> np.ndarray:
    acc = np.zeros((dim, dim), dtype=complex)
    for a in range(1, 7):
        for b in range(1, 7):
            if b == a:
                continue
            m_ab = algebra.full_matrix(gens_table, a, b)
            for c_ in range(1, 7):
                if c_ == b or c_ == a:
                    continue
                acc += (
                    metric(a, a) * metric(b, b) * metric(c_, c_)
                    * m_ab @ (algebra.full_matrix(gens_table, b, c_) @ algebra.full_matrix(gens_table, c_, a))
                )
    return acc


def check_casimirs(ops: OperatorSet, tolerances=None) -> list[CheckResult]:
    """Quadratic Casimir value, the dual contraction, and the cubic Casimir.

    The cubic cyclic contraction needs an operator-ordering prescription; the
    Hermitian average of the chain with its adjoint is used, which removes a
    pure reordering constant (the raw chain is -12i times the identity).
    """
    tol = _tol(tolerances, "casimir")
    space = ops.space
    dim = space.dim
    gens = ops.generators
    table = {(g.a, g.b): gens[g].matrix for g in GENERATORS}
    eye = np.eye(dim, dtype=complex)
    results = []

    with _Timer() as tm:
        c2 = np.zeros((dim, dim), dtype=complex)
        for g in GENERATORS:
            m = gens[g].matrix
            c2 += 2.0 * metric(g.a, g.a) * metric(g.b, g.b) * (m @ m)
    results.append(_check("casimir:C2", c2, -6.0 * eye, 2, tol, space, tm.seconds))

    with _Timer() as tm:
        r_tensor = algebra.tensor_R(gens)
        dual = sum(metric(a, a) * r_tensor[(a, a)] for a in range(1, 7))
    results.append(_check("casimir:C2_dual", dual, np.zeros_like(eye), 2, tol, space, tm.seconds))

    with _Timer() as tm:
        chain = _casimir_chain(table, dim)
        c3 = 0.5 * (chain + chain.conj().T)
    results.append(_check("casimir:C3", c3, np.zeros_like(eye), 3, tol, space, tm.seconds))
    results.append(
        _check("casimir:C3_ordering_constant", chain, -12j * eye, 3, tol, space, 0.0)
    )
    return results


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def spectrum_table(ops: OperatorSet) -> list[dict]:
    """Per-level rows: expected energy, degeneracy, measured eigenvalue, residual."""
    space = ops.space
    eigenvalues = np.linalg.eigvalsh(ops.H.matrix)
    rows = []
    pos = 0
    for n in range(space.n_max + 1):
        mult = (n + 1) ** 2
        block = eigenvalues[pos : pos + mult]
        pos += mult
        exact = float(n * (n + 2))
        rows.append(
            {
                "n": n,
                "energy": exact,
                "degeneracy": mult,
                "measured": float(block.mean()),
                "residual": float(np.abs(block - exact).max()),
            }
        )
    return rows


def check_spectrum(ops: OperatorSet, tolerances=None) -> list[CheckResult]:
    """Spectrum n(n+2) with multiplicities (n+1)^2, and the paired su(2)
    Casimirs taking the value j(j+1) with j = n/2 on every level."""
    space = ops.space
    tol = _tol(tolerances, "spectrum")
    results = []

    with _Timer() as tm:
        eigenvalues = np.linalg.eigvalsh(ops.H.matrix)
        worst = 0.0
        note = ""
        pos = 0
        for n in range(space.n_max + 1):
            mult = (n + 1) ** 2
            block = eigenvalues[pos : pos + mult]
            pos += mult
            exact = n * (n + 2)
            worst = max(worst, float(np.abs(block - exact).max()))
            # nearest-integer-root assignment must agree with the bucket
            assigned = np.rint(np.sqrt(np.maximum(block + 1.0, 0.0)) - 1.0).astype(int)
            if not np.all(assigned == n):
                worst = max(worst, 1.0)
                note = "level assignment mismatch"
    results.append(
        CheckResult("spectrum", worst, tol, levels=(0, space.n_max), note=note, seconds=tm.seconds)
    )

    tol_su2 = _tol(tolerances, "su2")
    with _Timer() as tm:
        J = ops.J
        r_vec = [J[(2, 3)].matrix, -J[(1, 3)].matrix, J[(1, 2)].matrix]
        s_vec = [J[(1, 4)].matrix, J[(2, 4)].matrix, J[(3, 4)].matrix]
        m_vec = [(r + s) / 2.0 for r, s in zip(r_vec, s_vec)]
        n_vec = [(r - s) / 2.0 for r, s in zip(r_vec, s_vec)]
        m2 = sum(m @ m for m in m_vec)
        n2 = sum(n @ n for n in n_vec)
        worst = 0.0
        for n in range(space.n_max + 1):
            sl = space.level_slice(n)
            jval = n / 2.0
            target = jval * (jval + 1.0) * np.eye((n + 1) ** 2)
            worst = max(worst, float(np.abs(m2[sl, sl] - target).max()))
            worst = max(worst, float(np.abs(n2[sl, sl] - target).max()))
    results.append(
        CheckResult("su2:casimirs", worst, tol_su2, levels=(0, space.n_max), seconds=tm.seconds)
    )
    return results


# ---------------------------------------------------------------------------
# position / momentum contract
# ---------------------------------------------------------------------------


def check_position_momentum(ops: OperatorSet, tolerances=None) -> list[CheckResult]:
    tol = _tol(tolerances, "position")
    space = ops.space
    dim = space.dim
    X = [x.matrix for x in ops.X]
    P = [p.matrix for p in ops.P]
    eye = np.eye(dim, dtype=complex)
    zero = np.zeros((dim, dim), dtype=complex)
    cut2 = interior_cut(space, 2)
    results = []

    with _Timer() as tm:
        res = max(
            rel_residual(X[i] @ X[j] - X[j] @ X[i], zero, cut2) for i, j in combinations(range(4), 2)
        )
    results.append(CheckResult("pos:[X,X]", res, tol, levels=_levels(space, 2), seconds=tm.seconds))

    with _Timer() as tm:
        sum_x2 = sum(x @ x for x in X)
    results.append(_check("pos:sumX2", sum_x2, eye, 2, tol, space, tm.seconds))

    xp = sum(X[i] @ P[i] for i in range(4))
    px = sum(P[i] @ X[i] for i in range(4))
    results.append(_check("pos:XP+PX", xp + px, zero, 2, tol, space, 0.0))
    results.append(_check("pos:XP", xp, 1.5j * eye, 2, tol, space, 0.0))
    results.append(_check("pos:PX", px, -1.5j * eye, 2, tol, space, 0.0))

    with _Timer() as tm:
        p2 = sum(p @ p for p in P)
    results.append(_check("pos:H_is_P2_minus_94", ops.H.matrix, p2 - 2.25 * eye, 2, tol, space, tm.seconds))

    with _Timer() as tm:
        res = 0.0
        for j in range(4):
            for k in range(4):
                lhs = P[j] @ X[k] - X[k] @ P[j]
                rhs = -1j * ((eye if j == k else zero) - X[j] @ X[k])
                res = max(res, rel_residual(lhs, rhs, cut2))
    results.append(CheckResult("pos:[P,X]", res, tol, levels=_levels(space, 2), seconds=tm.seconds))

    with _Timer() as tm:
        res = max(
            rel_residual(P[i] @ P[j] - P[j] @ P[i], -1j * j_full(ops.J, i + 1, j + 1), cut2)
            for i, j in combinations(range(4), 2)
        )
    results.append(CheckResult("pos:[P,P]", res, tol, levels=_levels(space, 2), seconds=tm.seconds))

    with _Timer() as tm:
        res = max(
            rel_residual(ops.H.matrix @ X[i] - X[i] @ ops.H.matrix, -2j * P[i], cut2) for i in range(4)
        )
    results.append(CheckResult("pos:[H,X]", res, tol, levels=_levels(space, 2), seconds=tm.seconds))

    with _Timer() as tm:
        res = max(
            rel_residual(
                X[i] @ P[j] - X[j] @ P[i], ops.J[(i + 1, j + 1)].matrix, cut2
            )
            for i, j in combinations(range(4), 2)
        )
    results.append(CheckResult("pos:J_is_XP_antisym", res, tol, levels=_levels(space, 2), seconds=tm.seconds))

    with _Timer() as tm:
        # momentum from the boost pair: P_i = (1/2) h^(-1/2) (h L_i + L_i h) h^(-1/2)
        inv_sqrt = level_function(space, lambda n: (n + 1.0) ** -0.5)
        h = ops.h.matrix
        res = max(
            rel_residual(
                P[i], 0.5 * inv_sqrt @ (h @ ops.L[i].matrix + ops.L[i].matrix @ h) @ inv_sqrt,
                interior_cut(space, 1),
            )
            for i in range(4)
        )
    results.append(CheckResult("pos:P_from_boost", res, tol, levels=_levels(space, 1), seconds=tm.seconds))

    # vector transformation laws under the rotation subalgebra
    for label, vec in (("X", X), ("P", P)):
        with _Timer() as tm:
            res = 0.0
            for i in range(1, 5):
                for k in range(i + 1, 5):
                    jm = ops.J[(i, k)].matrix
                    for l in range(1, 5):
                        lhs = jm @ vec[l - 1] - vec[l - 1] @ jm
                        rhs = -1j * (
                            (vec[i - 1] if k == l else zero) - (vec[k - 1] if i == l else zero)
                        )
                        res = max(res, rel_residual(lhs, rhs, cut2))
        results.append(
            CheckResult(f"vector:J_{label}", res, tol, levels=_levels(space, 2), seconds=tm.seconds)
        )
    return results


# ---------------------------------------------------------------------------
# ladder structure
# ---------------------------------------------------------------------------


def check_ladder(ops: OperatorSet, tolerances=None) -> list[CheckResult]:
    tol = _tol(tolerances, "ladder")
    space = ops.space
    dim = space.dim
    ap = [a.matrix for a in ops.a_plus]
    am = [a.matrix for a in ops.a_minus]
    h = ops.h.matrix
    eye = np.eye(dim, dtype=complex)
    zero = np.zeros((dim, dim), dtype=complex)
    results = []

    with _Timer() as tm:
        res = max(float(np.linalg.norm(am[i][:, : space.offsets[1]])) for i in range(4))
    results.append(CheckResult("ladder:annihilates_vacuum", res, tol, levels=(0, 0), seconds=tm.seconds))

    with _Timer() as tm:
        cut1 = interior_cut(space, 1)
        res = 0.0
        for i in range(4):
            res = max(res, rel_residual(h @ ap[i] - ap[i] @ h, ap[i], cut1))
            res = max(res, rel_residual(h @ am[i] - am[i] @ h, -am[i], cut1))
    results.append(CheckResult("ladder:level_shift", res, tol, levels=_levels(space, 1), seconds=tm.seconds))

    with _Timer() as tm:
        res = max(float(np.abs(ap[i].conj().T - am[i]).max()) for i in range(4))
    results.append(CheckResult("ladder:adjoint_pair", res, tol, levels=(0, space.n_max), seconds=tm.seconds))

    with _Timer() as tm:
        res_p = rel_residual(sum(a @ a for a in ap), zero, interior_cut(space, 2))
        res_m = rel_residual(sum(a @ a for a in am), zero, interior_cut(space, 2))
    results.append(
        CheckResult("ladder:sum_sq_plus", res_p, tol, levels=_levels(space, 2), seconds=tm.seconds / 2)
    )
    results.append(
        CheckResult("ladder:sum_sq_minus", res_m, tol, levels=_levels(space, 2), seconds=tm.seconds / 2)
    )

    with _Timer() as tm:
        num_down = sum(ap[i] @ am[i] for i in range(4))
        target_down = 2.0 * h @ h + 2.0 * eye - 4.0 * h
        res_down = rel_residual(num_down, target_down, interior_cut(space, 1))
        num_up = sum(am[i] @ ap[i] for i in range(4))
        target_up = 2.0 * h @ h + 2.0 * eye + 4.0 * h
        res_up = rel_residual(num_up, target_up, interior_cut(space, 1))
    results.append(
        CheckResult("ladder:number_down", res_down, tol, levels=_levels(space, 1), seconds=tm.seconds / 2)
    )
    results.append(
        CheckResult("ladder:number_up", res_up, tol, levels=_levels(space, 1), seconds=tm.seconds / 2)
    )

    with _Timer() as tm:
        res = 0.0
        for i in range(4):
            up_only = np.zeros_like(ap[i])
            for n in range(space.n_max):
                sl_t, sl_s = space.level_slice(n + 1), space.level_slice(n)
                up_only[sl_t, sl_s] = ap[i][sl_t, sl_s]
            res = max(res, float(np.linalg.norm(ap[i] - up_only)))
    results.append(
        CheckResult("ladder:strictly_raising", res, tol, levels=(0, space.n_max), seconds=tm.seconds)
    )

    k2 = sum(k.matrix @ k.matrix for k in ops.K)
    l2 = sum(l.matrix @ l.matrix for l in ops.L)
    results.append(_check("ladder:K2_sum_rule", k2, h @ h + eye, 2, tol, space, 0.0))
    results.append(_check("ladder:L2_sum_rule", l2, h @ h + eye, 2, tol, space, 0.0))
    return results


# ---------------------------------------------------------------------------
# the eigenoperator (V) route
# ---------------------------------------------------------------------------

V_ROUTE_PHASES = (-1j, 1j)  # raising, lowering: the two constructions differ
                            # by one global phase per sign


def check_v_route(ops: OperatorSet, tolerances=None) -> list[CheckResult]:
    tol = _tol(tolerances, "v_route")
    space = ops.space
    dim = space.dim
    vp = [v.matrix for v in ops.v_plus]
    vm = [v.matrix for v in ops.v_minus]
    h = ops.h.matrix
    eye = np.eye(dim, dtype=complex)
    zero = np.zeros((dim, dim), dtype=complex)
    cut1 = interior_cut(space, 1)
    results = []

    with _Timer() as tm:
        res = max(rel_residual((h - eye) @ vp[i], vp[i] @ h, cut1) for i in range(4))
        res = max(res, max(rel_residual((h + eye) @ vm[i], vm[i] @ h, cut1) for i in range(4)))
    results.append(CheckResult("v:eigen_shift", res, tol, levels=_levels(space, 1), seconds=tm.seconds))

    with _Timer() as tm:
        ratio = level_function(space, lambda n: (n + 2.0) / (n + 1.0))
        res = max(rel_residual(vp[i].conj().T, ratio @ vm[i], interior_cut(space, 0)) for i in range(4))
    results.append(CheckResult("v:adjoint", res, tol, levels=(0, space.n_max), seconds=tm.seconds))

    with _Timer() as tm:
        res = 0.0
        for i in range(4):
            for j in range(4):
                lhs = vm[i] @ vp[j] - vp[j] @ vm[i]
                rhs = -2j * j_full(ops.J, i + 1, j + 1)
                if i == j:
                    rhs = rhs + 2.0 * h
                res = max(res, rel_residual(lhs, rhs, cut1))
    results.append(CheckResult("v:commutator", res, tol, levels=_levels(space, 1), seconds=tm.seconds))

    with _Timer() as tm:
        res = max(
            rel_residual(vp[i] @ vp[j] - vp[j] @ vp[i], zero, interior_cut(space, 2))
            for i, j in combinations(range(4), 2)
        )
        res = max(
            res,
            max(
                rel_residual(vm[i] @ vm[j] - vm[j] @ vm[i], zero, interior_cut(space, 2))
                for i, j in combinations(range(4), 2)
            ),
        )
    results.append(CheckResult("v:same_sign_commute", res, tol, levels=_levels(space, 2), seconds=tm.seconds))

    with _Timer() as tm:
        inv_sqrt = level_function(space, lambda n: (n + 1.0) ** -0.5)
        sqrt_h = level_function(space, lambda n: (n + 1.0) ** 0.5)
        phase_p, phase_m = V_ROUTE_PHASES
        res = max(
            rel_residual(inv_sqrt @ vp[i] @ sqrt_h, phase_p * ops.a_plus[i].matrix, interior_cut(space, 1))
            for i in range(4)
        )
        res = max(
            res,
            max(
                rel_residual(inv_sqrt @ vm[i] @ sqrt_h, phase_m * ops.a_minus[i].matrix, interior_cut(space, 1))
                for i in range(4)
            ),
        )
    results.append(CheckResult("v:ladder_match", res, tol, levels=_levels(space, 1), seconds=tm.seconds))
    return results


# ---------------------------------------------------------------------------
# Gamma-ratio recursion and its operator chains
# ---------------------------------------------------------------------------


def check_f_recursion(ops: OperatorSet | None = None, h_max: int = 20, tolerances=None) -> list[CheckResult]:
    tol_s = _tol(tolerances, "f_scalar")
    results = []
    with _Timer() as tm:
        worst = max(
            abs(f_scalar(hh) * f_scalar(hh + 1) - (2 * hh + 1)) / (2 * hh + 1)
            for hh in range(1, h_max + 1)
        )
    results.append(CheckResult("f:recursion", worst, tol_s, seconds=tm.seconds))

    with _Timer() as tm:
        direct = 2.0 * math.gamma(1.25) / math.gamma(0.75)
        res = abs(f_scalar(1.0) - direct) / direct
    results.append(CheckResult("f:value_at_one", res, tol_s, seconds=tm.seconds))

    if ops is None:
        return results

    tol_m = _tol(tolerances, "f_matrix")
    space = ops.space
    cut1 = interior_cut(space, 1)
    f_mat = level_function(space, lambda n: f_scalar(n + 1.0))
    sqrt_h = level_function(space, lambda n: (n + 1.0) ** 0.5)

    with _Timer() as tm:
        res = 0.0
        for i in range(1, 5):
            rhs = np.zeros((space.dim, space.dim), dtype=complex)
            for j in range(1, 5):
                if j == i:
                    continue
                jm = j_full(ops.J, i, j)
                rhs += jm @ ops.X[j - 1].matrix + ops.X[j - 1].matrix @ jm
            lhs = f_mat @ ops.L[i - 1].matrix @ f_mat
            res = max(res, rel_residual(lhs, -sqrt_h @ rhs @ sqrt_h, cut1))
    results.append(CheckResult("f:boost_chain", res, tol_m, levels=_levels(space, 1), seconds=tm.seconds))

    with _Timer() as tm:
        w = level_function(space, lambda n: f_scalar(n + 1.0) / math.sqrt(2.0 * (n + 1.0)))
        inv_sqrt = level_function(space, lambda n: (n + 1.0) ** -0.5)
        res = 0.0
        for i in range(4):
            a_tilde_p = inv_sqrt @ ops.v_plus[i].matrix @ sqrt_h
            a_tilde_m = inv_sqrt @ ops.v_minus[i].matrix @ sqrt_h
            rhs = -0.5 * w @ (a_tilde_p + a_tilde_m) @ w
            res = max(res, rel_residual(ops.P[i].matrix, rhs, cut1))
    results.append(CheckResult("f:momentum_chain", res, tol_m, levels=_levels(space, 1), seconds=tm.seconds))
    return results


# ---------------------------------------------------------------------------
# covariance of the symmetric tensor
# ---------------------------------------------------------------------------


def check_covariance(ops: OperatorSet, c: float = 2.0, tolerances=None) -> list[CheckResult]:
    """[M_ab, T~_cd] = i(g_ac T~_bd - g_bc T~_ad + g_ad T~_cb - g_bd T~_ca)."""
    tol = _tol(tolerances, "covariance")
    space = ops.space
    with _Timer() as tm:
        t_tensor = algebra.tensor_T(ops.generators, c=c)
        cut3 = interior_cut(space, 3)
        res = 0.0
        for g in GENERATORS:
            m = ops.generators[g].matrix
            a, b = g.a, g.b
            for cc in range(1, 7):
                for dd in range(cc, 7):
                    lhs = m @ t_tensor[(cc, dd)] - t_tensor[(cc, dd)] @ m
                    rhs = 1j * (
                        metric(a, cc) * t_tensor[(b, dd)]
                        - metric(b, cc) * t_tensor[(a, dd)]
                        + metric(a, dd) * t_tensor[(cc, b)]
                        - metric(b, dd) * t_tensor[(cc, a)]
                    )
                    res = max(res, rel_residual(lhs, rhs, cut3))
    return [CheckResult("covariance:T", res, tol, levels=_levels(space, 3), seconds=tm.seconds)]


# ---------------------------------------------------------------------------
# eigenstates
# ---------------------------------------------------------------------------


def eigenstate_vector(ops: OperatorSet, indices: Sequence[int]) -> np.ndarray:
    """Coordinates of A+_{mu_1} ... A+_{mu_n} applied to the ground state."""
    space = ops.space
    n = len(indices)
    if n > space.n_max - 1:
        raise ValueError(f"{n} raisings exceed the interior of a space with n_max={space.n_max}")
    if any(not 1 <= mu <= 4 for mu in indices):
        raise IndexError(f"ladder indices must lie in 1..4, got {list(indices)}")
    v = np.zeros(space.dim, dtype=complex)
    v[0] = 1.0
    for mu in reversed(list(indices)):
        v = ops.a_plus[mu - 1].matrix @ v
    return v


def build_eigenstates(ops: OperatorSet, indices: Sequence[int]) -> Polynomial4:
    """Polynomial form of the ladder-built eigenstate at level len(indices)."""
    v = eigenstate_vector(ops, indices)
    return ops.space.vector_to_poly(v, len(indices))


def check_eigenstates(ops: OperatorSet, levels: Iterable[int] | None = None, tolerances=None) -> list[CheckResult]:
    tol = _tol(tolerances, "eigenstate")
    space = ops.space
    if levels is None:
        levels = range(1, min(4, space.n_max - 1) + 1)
    results = []
    for n in levels:
        multisets = list(combinations_with_replacement(range(1, 5), n))
        with _Timer() as tm:
            vectors = []
            harm_worst = 0.0
            for ms in multisets:
                vec = eigenstate_vector(ops, ms)
                vectors.append(vec[space.level_slice(n)])
                poly = ops.space.vector_to_poly(vec, n)
                if poly.coeff_norm() > 0:
                    harm_worst = max(harm_worst, laplacian(poly).coeff_norm() / poly.coeff_norm())
            stack = np.array(vectors)
            svals = np.linalg.svd(stack, compute_uv=False)
            rank = int(np.sum(svals > 1e-8 * svals.max()))
        results.append(
            CheckResult(
                f"eigen:rank_level{n}", float(abs(rank - (n + 1) ** 2)), 0.5, levels=(n, n), seconds=tm.seconds
            )
        )
        results.append(
            CheckResult(f"eigen:harmonic_level{n}", harm_worst, tol, levels=(n, n), seconds=0.0)
        )
        if n >= 2:
            with _Timer() as tm:
                sym_worst = 0.0
                base = (1, 2) + tuple(1 for _ in range(n - 2))
                v1 = eigenstate_vector(ops, base)
                for perm in set(permutations(base)):
                    v2 = eigenstate_vector(ops, perm)
                    scale = max(1.0, float(np.linalg.norm(v1)))
                    sym_worst = max(sym_worst, float(np.linalg.norm(v1 - v2)) / scale)
                trace = np.zeros(space.dim, dtype=complex)
                rest = tuple(1 for _ in range(n - 2))
                for mu in range(1, 5):
                    trace += eigenstate_vector(ops, (mu, mu) + rest)
                norm_scale = max(1.0, float(np.linalg.norm(v1)))
                tr_res = float(np.linalg.norm(trace)) / norm_scale
            results.append(
                CheckResult(f"eigen:symmetric_level{n}", sym_worst, tol, levels=(n, n), seconds=tm.seconds / 2)
            )
            results.append(
                CheckResult(f"eigen:traceless_level{n}", tr_res, tol, levels=(n, n), seconds=tm.seconds / 2)
            )
    return results


# ---------------------------------------------------------------------------
# spin demonstration: a quadratic restriction picks one representation
# ---------------------------------------------------------------------------


def spin_matrices(two_s: int) -> list[np.ndarray]:
    """Standard spin matrices (Sx, Sy, Sz) for spin s = two_s / 2."""
    s = two_s / 2.0
    dim = two_s + 1
    m_vals = [s - k for k in range(dim)]
    sz = np.diag(m_vals).astype(complex)
    sp = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        m = m_vals[k]
        sp[k - 1, k] = math.sqrt(s * (s + 1) - m * (m + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2.0
    sy = (sp - sm) / 2j
    return [sx, sy, sz]


def _so3_tensor(spins: list[np.ndarray]) -> dict[tuple[int, int], np.ndarray]:
    dim = spins[0].shape[0]
    eye = np.eye(dim, dtype=complex)
    return {
        (i, j): spins[i] @ spins[j] + spins[j] @ spins[i] - 0.5 * (eye if i == j else 0 * eye)
        for i in range(3)
        for j in range(3)
    }


def so3_demo(tolerances=None) -> list[CheckResult]:
    """Spin one-half satisfies the quadratic restriction exactly; spin one
    violates it; the restriction transforms covariantly either way."""
    tol = _tol(tolerances, "so3")
    results = []

    with _Timer() as tm:
        t_half = _so3_tensor(spin_matrices(1))
        res = max(float(np.abs(v).max()) for v in t_half.values())
    results.append(CheckResult("so3:spin_half_restriction", res, tol, seconds=tm.seconds))

    with _Timer() as tm:
        t_one = _so3_tensor(spin_matrices(2))
        largest = max(float(np.linalg.norm(v)) for v in t_one.values())
        res = max(0.0, 0.5 - largest)
    results.append(
        CheckResult("so3:spin_one_violation", res, tol, note=f"largest component norm {largest:.3f}", seconds=tm.seconds)
    )

    eps3 = np.zeros((3, 3, 3))
    for p in permutations(range(3)):
        eps3[p] = algebra.epsilon_sign(tuple(x + 1 for x in p))
    with _Timer() as tm:
        res = 0.0
        for spins in (spin_matrices(1), spin_matrices(2)):
            t = _so3_tensor(spins)
            for l in range(3):
                for i in range(3):
                    for j in range(3):
                        lhs = spins[l] @ t[(i, j)] - t[(i, j)] @ spins[l]
                        rhs = 1j * sum(
                            eps3[l, i, k] * t[(k, j)] + eps3[l, j, k] * t[(i, k)] for k in range(3)
                        )
                        res = max(res, float(np.abs(lhs - rhs).max()))
    results.append(CheckResult("so3:covariance", res, tol, seconds=tm.seconds))
    return results


# ---------------------------------------------------------------------------
# suite driver
# ---------------------------------------------------------------------------


def run_suite(
    n_max: int = DEFAULT_N,
    c: float = 2.0,
    tolerances: Mapping[str, float] | None = None,
    ops: OperatorSet | None = None,
) -> VerificationReport:
    """Build the representation at the given truncation and run every check."""
    if ops is not None:
        n_max = ops.space.n_max
    if n_max < 2:
        raise ValueError("verification needs n_max >= 2 so that interior levels exist")
    t0 = time.perf_counter()
    if ops is None:
        ops = OperatorSet.build(orthonormalize(n_max))
    build_seconds = time.perf_counter() - t0

    checks: list[CheckResult] = []
    checks += check_spectrum(ops, tolerances)
    checks += check_commutators(ops, tolerances)
    checks += check_restrictive(ops, c=c, tolerances=tolerances)
    checks += check_casimirs(ops, tolerances)
    checks += check_position_momentum(ops, tolerances)
    checks += check_ladder(ops, tolerances)
    checks += check_v_route(ops, tolerances)
    checks += check_f_recursion(ops, tolerances=tolerances)
    checks += check_covariance(ops, c=c, tolerances=tolerances)
    checks += check_eigenstates(ops, tolerances=tolerances)
    checks += so3_demo(tolerances)

    return VerificationReport(
        n_max=n_max,
        dimension=ops.space.dim,
        checks=checks,
        build_seconds=build_seconds,
        config={"c": c},
    )
