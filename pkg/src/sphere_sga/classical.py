"""Classical constrained dynamics on the three-sphere.

Phase space is the surface x.x = 1, x.p = 0 in R^4 x R^4 with Dirac brackets
{x_i,x_j} = 0, {p_i,x_j} = delta_ij - x_i x_j, {p_i,p_j} = J_ij.  The same
bracket arises as the canonical Poisson bracket of an unconstrained ambient
chart (xi, pi) pulled back through x = xi/|xi|, p = |xi| pi - (pi.xi) xi/|xi|^2;
a finite-difference bracket in that chart serves as an independent oracle.

Free motion is a great circle with frequency 2 sqrt(H); the generator
functions M_ab supply time-dependent constants of motion that solve the
dynamics algebraically, and the classical restrictive tensors vanish along
every trajectory.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import epsilon_sign, metric
from .report import CheckResult, format_float

CONSTRAINT_TOLERANCE = 1e-12
DEGENERATE_ENERGY = 1e-14

TRAJECTORY_COLUMNS = (
    "t", "x1", "x2", "x3", "x4", "p1", "p2", "p3", "p4",
    "H", "J12", "J13", "J14", "J23", "J24", "J34",
)


@dataclass(frozen=True)
class PhaseState:
    """Point (x, p) on the constraint surface x.x = 1, x.p = 0."""

    x: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float).copy()
        p = np.asarray(self.p, dtype=float).copy()
        if x.shape != (4,) or p.shape != (4,):
            raise ValueError("x and p must be 4-vectors")
        if abs(x @ x - 1.0) > CONSTRAINT_TOLERANCE:
            raise ValueError(f"|x|^2 = {x @ x} violates the unit-sphere constraint")
        if abs(x @ p) > CONSTRAINT_TOLERANCE:
            raise ValueError(f"x.p = {x @ p} violates the transversality constraint")
        x.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)

    @property
    def energy(self) -> float:
        return float(self.p @ self.p)


def project_state(x: Sequence[float], p: Sequence[float]) -> PhaseState:
    """Nearest constraint-satisfying state: normalize x, remove the radial p."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    nx = np.linalg.norm(x)
    if nx == 0:
        raise ValueError("cannot project a zero position vector")
    x = x / nx
    p = p - (x @ p) * x
    return PhaseState(x=x, p=p)


@dataclass(frozen=True)
class AmbientState:
    """Unconstrained chart point (xi, pi), xi != 0."""

    xi: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=float).copy()
        pi = np.asarray(self.pi, dtype=float).copy()
        if xi.shape != (4,) or pi.shape != (4,):
            raise ValueError("xi and pi must be 4-vectors")
        if np.linalg.norm(xi) < 1e-12:
            raise ValueError("ambient position must be nonzero")
        xi.setflags(write=False)
        pi.setflags(write=False)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "pi", pi)


def ambient_map(a: AmbientState) -> PhaseState:
    """x = xi/|xi|, p = |xi| pi - (pi.xi) xi/|xi|^2; lands on the surface exactly."""
    r = float(np.linalg.norm(a.xi))
    x = a.xi / r
    p = r * a.pi - float(a.pi @ a.xi) * a.xi / r**2
    p = p - (x @ p) * x  # remove float residue of the exact identity x.p = 0
    return PhaseState(x=x, p=p)


def _pack(a: AmbientState) -> np.ndarray:
    return np.concatenate([a.xi, a.pi])


def _eval_pulled_back(f: Callable[[PhaseState], float], z: np.ndarray) -> float:
    state = ambient_map(AmbientState(xi=z[:4], pi=z[4:]))
    return float(f(state))


def poisson_oracle(
    f: Callable[[PhaseState], float],
    g: Callable[[PhaseState], float],
    a: AmbientState,
    step: float = 1e-5,
) -> float:
    """Finite-difference canonical bracket of the pulled-back observables.

    Convention: {f,g} = sum_i df/dpi_i dg/dxi_i - dg/dpi_i df/dxi_i, so that
    d/dt along the flow is {H, .}.  Central differences, error O(step^2).
    """
    z0 = _pack(a)

    def grad(fn) -> tuple[np.ndarray, np.ndarray]:
        d = np.empty(8)
        for k in range(8):
            zp = z0.copy(); zp[k] += step
            zm = z0.copy(); zm[k] -= step
            d[k] = (_eval_pulled_back(fn, zp) - _eval_pulled_back(fn, zm)) / (2 * step)
        return d[:4], d[4:]

    df_dxi, df_dpi = grad(f)
    dg_dxi, dg_dpi = grad(g)
    return float(df_dpi @ dg_dxi - dg_dpi @ df_dxi)


def dirac_bracket_basis(state: PhaseState, kind: str, i: int, j: int) -> float:
    """Closed-form Dirac bracket of basis observables; indices are 1-based.

    kind 'xx': {x_i, x_j} = 0; 'px': {p_i, x_j} = delta_ij - x_i x_j;
    'pp': {p_i, p_j} = J_ij.
    """
    if not (1 <= i <= 4 and 1 <= j <= 4):
        raise IndexError("indices must lie in 1..4")
    if kind == "xx":
        return 0.0
    if kind == "px":
        return float((1.0 if i == j else 0.0) - state.x[i - 1] * state.x[j - 1])
    if kind == "pp":
        return float(state.x[i - 1] * state.p[j - 1] - state.x[j - 1] * state.p[i - 1])
    raise ValueError(f"unknown bracket kind {kind!r}")


def coordinate(i: int) -> Callable[[PhaseState], float]:
    return lambda s: float(s.x[i - 1])


def momentum(i: int) -> Callable[[PhaseState], float]:
    return lambda s: float(s.p[i - 1])


def random_ambient_states(count: int, seed: int = 0, min_energy: float = 0.05) -> list[AmbientState]:
    """Reproducible ambient sample with bounded coordinates and H bounded below."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        xi = rng.uniform(-1.5, 1.5, size=4)
        if np.linalg.norm(xi) < 0.4:
            continue
        pi = rng.uniform(-1.5, 1.5, size=4)
        a = AmbientState(xi=xi, pi=pi)
        if ambient_map(a).energy < min_energy:
            continue
        out.append(a)
    return out


# ---------------------------------------------------------------------------
# generators and invariant tensors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalGenerators:
    """Generator functions evaluated at one phase-space point.

    J_ij = x_i p_j - x_j p_i; K_i = J_ik x_k; L_i = sqrt(H) x_i; h = sqrt(H),
    arranged antisymmetrically as M_ij = J_ij, M_i5 = K_i, M_i6 = L_i, M_56 = h.
    """

    J: np.ndarray
    K: np.ndarray
    L: np.ndarray
    h: float
    H: float

    def generator(self, a: int, b: int) -> float:
        if not (1 <= a <= 6 and 1 <= b <= 6):
            raise IndexError("generator indices lie in 1..6")
        if a == b:
            return 0.0
        if a > b:
            return -self.generator(b, a)
        if b <= 4:
            return float(self.J[a - 1, b - 1])
        if b == 5:
            return float(self.K[a - 1])
        if a <= 4:
            return float(self.L[a - 1])
        return float(self.h)

    def casimir_quadratic(self) -> float:
        """M^ab M_ab = J.J + 2 h^2 - 2(K.K + L.L); vanishes on the surface."""
        total = 0.0
        for a in range(1, 7):
            for b in range(1, 7):
                total += metric(a, a) * metric(b, b) * self.generator(a, b) ** 2
        return total

    def tensor_T(self) -> np.ndarray:
        """T_ab = M_ac M_bd g^cd; identically zero on the constraint surface."""
        out = np.zeros((6, 6))
        for a in range(1, 7):
            for b in range(1, 7):
                out[a - 1, b - 1] = sum(
                    metric(c, c) * self.generator(a, c) * self.generator(b, c) for c in range(1, 7)
                )
        return out

    def tensor_R(self) -> np.ndarray:
        """R^ab = eps^abcdef M_cd M_ef; identically zero on the constraint surface."""
        out = np.zeros((6, 6))
        for a in range(1, 7):
            for b in range(a + 1, 7):
                rest = [x for x in range(1, 7) if x not in (a, b)]
                total = 0.0
                c = rest[0]
                for k in range(1, 4):
                    d = rest[k]
                    e, f = (rest[m] for m in range(1, 4) if m != k)
                    total += (
                        8.0
                        * epsilon_sign((a, b, c, d, e, f))
                        * self.generator(c, d)
                        * self.generator(e, f)
                    )
                out[a - 1, b - 1] = total
                out[b - 1, a - 1] = -total
        return out

    def ladder(self, sign: int) -> np.ndarray:
        """Complex 4-vector A_j(+-) = M_5j -+ i M_6j."""
        m5 = -self.K
        m6 = -self.L
        return m5 - 1j * sign * m6


def classical_generators(state: PhaseState) -> ClassicalGenerators:
    x, p = state.x, state.p
    J = np.outer(x, p) - np.outer(p, x)
    K = J @ x
    H = float(p @ p)
    h = math.sqrt(H)
    L = h * x
    return ClassicalGenerators(J=J, K=K, L=L, h=h, H=H)


# ---------------------------------------------------------------------------
# motion
# ---------------------------------------------------------------------------


@dataclass
class Trajectory:
    """Uniformly sampled motion; method is 'analytic' or 'rk4'."""

    times: np.ndarray
    xs: np.ndarray
    ps: np.ndarray
    method: str

    def __len__(self) -> int:
        return len(self.times)

    def state(self, k: int) -> PhaseState:
        return project_state(self.xs[k], self.ps[k])

    @property
    def states(self) -> list[PhaseState]:
        return [self.state(k) for k in range(len(self))]

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0]) if len(self.times) > 1 else 0.0

    def constraint_residual(self) -> float:
        rx = np.abs(np.einsum("ki,ki->k", self.xs, self.xs) - 1.0).max()
        rp = np.abs(np.einsum("ki,ki->k", self.xs, self.ps)).max()
        return float(max(rx, rp))


def analytic_solution(state0: PhaseState, t: float) -> PhaseState:
    """Closed-form great-circle motion with frequency 2 sqrt(H)."""
    H = state0.energy
    if H <= DEGENERATE_ENERGY:
        return state0
    root = math.sqrt(H)
    w = 2.0 * root
    x = math.cos(w * t) * state0.x + math.sin(w * t) * state0.p / root
    p = -root * math.sin(w * t) * state0.x + math.cos(w * t) * state0.p
    return project_state(x, p)


def analytic_trajectory(state0: PhaseState, t_end: float, dt: float) -> Trajectory:
    steps = max(1, int(round(t_end / dt)))
    times = np.arange(steps + 1) * dt
    H = state0.energy
    if H <= DEGENERATE_ENERGY:
        xs = np.tile(state0.x, (len(times), 1))
        ps = np.tile(state0.p, (len(times), 1))
        return Trajectory(times=times, xs=xs, ps=ps, method="analytic")
    root = math.sqrt(H)
    w = 2.0 * root
    cos = np.cos(w * times)[:, None]
    sin = np.sin(w * times)[:, None]
    xs = cos * state0.x + sin * state0.p / root
    ps = -root * sin * state0.x + cos * state0.p
    return Trajectory(times=times, xs=xs, ps=ps, method="analytic")


def period(state0: PhaseState) -> float:
    H = state0.energy
    if H <= DEGENERATE_ENERGY:
        return math.inf
    return math.pi / math.sqrt(H)


def integrate(state0: PhaseState, t_end: float, dt: float) -> Trajectory:
    """Fixed-step RK4 on xdot = 2p, pdot = -2(p.p)x with post-step projection.

    Rejects dt at or above a tenth of the period as under-resolved; a zero
    momentum state is a fixed point and yields a constant trajectory.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    H = state0.energy
    if H <= DEGENERATE_ENERGY:
        steps = max(1, int(round(t_end / dt)))
        times = np.arange(steps + 1) * dt
        xs = np.tile(state0.x, (len(times), 1))
        ps = np.tile(state0.p, (len(times), 1))
        return Trajectory(times=times, xs=xs, ps=ps, method="rk4")
    if dt >= period(state0) / 10.0:
        raise ValueError(
            f"dt={dt} under-resolves the motion (period {period(state0):.6g}); need dt < period/10"
        )

    def rhs(y: np.ndarray) -> np.ndarray:
        x, p = y[:4], y[4:]
        return np.concatenate([2.0 * p, -2.0 * float(p @ p) * x])

    steps = max(1, int(round(t_end / dt)))
    times = np.arange(steps + 1) * dt
    xs = np.empty((steps + 1, 4))
    ps = np.empty((steps + 1, 4))
    y = np.concatenate([state0.x, state0.p])
    xs[0], ps[0] = y[:4], y[4:]
    for k in range(1, steps + 1):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        x, p = y[:4], y[4:]
        x = x / np.linalg.norm(x)
        p = p - (x @ p) * x
        y = np.concatenate([x, p])
        xs[k], ps[k] = x, p
    return Trajectory(times=times, xs=xs, ps=ps, method="rk4")


def measured_frequency(traj: Trajectory) -> float:
    """Angular frequency from a linear fit of the unwrapped great-circle phase."""
    x0 = traj.xs[0]
    p0 = traj.ps[0]
    pn = np.linalg.norm(p0)
    if pn == 0:
        return 0.0
    e1, e2 = x0, p0 / pn
    c = traj.xs @ e1
    s = traj.xs @ e2
    phase = np.unwrap(np.arctan2(s, c))
    coeffs = np.polyfit(traj.times, phase, 1)
    return float(abs(coeffs[0]))


def measured_period(traj: Trajectory) -> float:
    w = measured_frequency(traj)
    return math.inf if w == 0 else 2.0 * math.pi / w


# ---------------------------------------------------------------------------
# constants-of-motion report
# ---------------------------------------------------------------------------


def check_motion_constants(traj: Trajectory, tolerance: float | None = None) -> list[CheckResult]:
    """Verify the algebraic constants along a trajectory.

    (a) A_j(+-)(t) e^(-+ 2 i t sqrt(H)) is constant; (b) A+.A- = 2H;
    (c) the quadratic Casimir vanishes; (d) both restrictive tensors vanish;
    (e) p = xdot/2 by fourth-order finite differences; plus per-sample
    constraint residuals.  Default tolerance: 1e-10 analytic, 1e-6 rk4.
    """
    if tolerance is None:
        tolerance = 1e-10 if traj.method == "analytic" else 1e-6
    state0 = traj.state(0)
    H = state0.energy
    if H <= DEGENERATE_ENERGY:
        return [
            CheckResult(
                "motion:degenerate_fixed_point",
                residual=float(np.abs(traj.ps).max()),
                tolerance=max(tolerance, 1e-12),
                note="degenerate",
            )
        ]

    root = math.sqrt(H)
    gens = [classical_generators(traj.state(k)) for k in range(len(traj))]

    a_plus0 = gens[0].ladder(+1)
    a_minus0 = gens[0].ladder(-1)
    scale = max(1.0, float(np.abs(a_plus0).max()))
    worst = 0.0
    for k, g in enumerate(gens):
        t = traj.times[k]
        drift_p = g.ladder(+1) * np.exp(-2j * t * root) - a_plus0
        drift_m = g.ladder(-1) * np.exp(+2j * t * root) - a_minus0
        worst = max(worst, float(np.abs(drift_p).max()) / scale, float(np.abs(drift_m).max()) / scale)
    results = [CheckResult("motion:ladder_phase_constants", worst, tolerance)]

    worst = max(abs(complex(np.sum(g.ladder(+1) * g.ladder(-1))) - 2.0 * H) for g in gens) / max(1.0, 2 * H)
    results.append(CheckResult("motion:amplitude_product", worst, tolerance))

    worst = max(abs(g.casimir_quadratic()) for g in gens) / max(1.0, 2 * H)
    results.append(CheckResult("motion:quadratic_casimir", worst, tolerance))

    worst_t = max(float(np.abs(g.tensor_T()).max()) for g in gens) / max(1.0, H)
    results.append(CheckResult("motion:tensor_T", worst_t, tolerance))
    worst_r = max(float(np.abs(g.tensor_R()).max()) for g in gens) / max(1.0, H)
    results.append(CheckResult("motion:tensor_R", worst_r, tolerance))

    # p = xdot/2 via 4th-order central differences on interior samples
    if len(traj) >= 5:
        dt = traj.dt
        xdot = (
            -traj.xs[4:] + 8.0 * traj.xs[3:-1] - 8.0 * traj.xs[1:-3] + traj.xs[:-4]
        ) / (12.0 * dt)
        diff = np.abs(traj.ps[2:-2] - 0.5 * xdot).max()
        fd_budget = 10.0 * (2.0 * root * dt) ** 4
        tol_e = max(tolerance, fd_budget)
        results.append(
            CheckResult(
                "motion:p_is_half_xdot",
                float(diff) / max(1.0, root),
                tol_e,
                note=f"fd budget {fd_budget:.2e}",
            )
        )

    results.append(CheckResult("motion:constraints", traj.constraint_residual(), max(tolerance, 1e-12)))
    return results


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def _trajectory_rows(traj: Trajectory):
    for k in range(len(traj)):
        x, p = traj.xs[k], traj.ps[k]
        J = np.outer(x, p) - np.outer(p, x)
        yield [
            traj.times[k], *x, *p, float(p @ p),
            J[0, 1], J[0, 2], J[0, 3], J[1, 2], J[1, 3], J[2, 3],
        ]


def trajectory_to_csv(traj: Trajectory, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRAJECTORY_COLUMNS)
        for row in _trajectory_rows(traj):
            writer.writerow([repr(float(v)) for v in row])


def trajectory_to_json(traj: Trajectory, path) -> None:
    cols = json.dumps(list(TRAJECTORY_COLUMNS))
    lines = [f'{{\n"method": "{traj.method}",\n"columns": {cols},\n"rows": [']
    rows = [
        "[" + ", ".join(format_float(float(v)) for v in row) + "]"
        for row in _trajectory_rows(traj)
    ]
    lines.append(",\n".join(rows))
    lines.append("]\n}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
