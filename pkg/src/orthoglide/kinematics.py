"""Machine model and closed-form kinematics of the orthogonal-slider machine.

Model conventions (zero-offset reduction):

* the fixed frame's axes coincide with the three slider directions, so the
  unit axis vectors are e_1, e_2, e_3 = columns of the identity;
* slider i sits at b_i = rho_i * e_i, its axis origin a_i is the frame
  origin (the physical slider/tool offsets visible on the real machine only
  shift the origins of rho and p by constants, so they are absorbed here);
* the tool point is c_i = p for every leg, and each parallelogram leg keeps
  a fixed length:  ||c_i - b_i|| = L;
* working mode: eta_i = (c_i - b_i) . e_i > 0 for all legs (slider behind
  the tool along each axis), the branch that contains the isotropic pose.

All lengths are millimetres, speeds mm/s, accelerations mm/s^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateInput,
    InconsistentPair,
    NoAssemblyMode,
    SerialSingularity,
    Unreachable,
)

#: eta_i below SERIAL_TOL * L counts as a serial singularity.
SERIAL_TOL = 1e-9
#: pose/joint pairs with closure residual above CLOSURE_TOL * L are rejected.
CLOSURE_TOL = 1e-6

_EYE = np.eye(3)


def as_point(p) -> np.ndarray:
    """Normalize a pose/vector argument to a float array of shape (3,)."""
    v = np.asarray(p, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a length-3 vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"vector components must be finite, got {v}")
    return v


@dataclass
class DesignParams:
    """Geometric identity and motor capability of one machine instance.

    stroke_min/stroke_max are per-axis slider travel limits (mm); scalars
    are broadcast to the three axes.  motor_vmax is mm/s, motor_amax mm/s^2
    (defaults: the prototype motor sizing, 1.2 m/s and 20 m/s^2).
    """

    leg_length: float
    stroke_min: tuple[float, float, float] = (-np.inf, -np.inf, -np.inf)
    stroke_max: tuple[float, float, float] = (np.inf, np.inf, np.inf)
    motor_vmax: float = 1200.0
    motor_amax: float = 20000.0

    def __post_init__(self):
        self.leg_length = float(self.leg_length)
        self.stroke_min = _per_axis(self.stroke_min)
        self.stroke_max = _per_axis(self.stroke_max)
        if not self.leg_length > 0:
            raise ValueError("leg_length must be positive")
        for lo, hi in zip(self.stroke_min, self.stroke_max):
            if not lo < hi:
                raise ValueError("stroke_min must be below stroke_max on each axis")
        if not self.motor_vmax > 0:
            raise ValueError("motor_vmax must be positive")
        if not self.motor_amax > 0:
            raise ValueError("motor_amax must be positive")


def _per_axis(value) -> tuple[float, float, float]:
    arr = np.asarray(value, dtype=float)
    if arr.shape == ():
        return (float(arr),) * 3
    if arr.shape == (3,):
        return tuple(float(x) for x in arr)
    raise ValueError("per-axis value must be a scalar or length 3")


@dataclass
class LegState:
    """Points and transmission scalar of one leg at a consistent pose.

    a is the slider-axis origin, b the slider point, c the tool point;
    eta = (c - b) . e_i; closure_residual = | ||c - b|| - L |.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    eta: float
    closure_residual: float = field(default=0.0)


def leg_radicands(p: np.ndarray, leg_length: float) -> np.ndarray:
    """Per-leg radicand L^2 - p_j^2 - p_k^2 of the IK square root.

    Broadcasts over leading dimensions of `p` (shape (..., 3)).  The two
    cross terms are summed pairwise so the result is exactly equivariant
    under coordinate permutations.
    """
    sq = np.asarray(p, dtype=float) ** 2
    cross = sq[..., (1, 0, 0)] + sq[..., (2, 2, 1)]
    return leg_length**2 - cross


def inverse_kinematics(p, d: DesignParams, *, serial_tol: float = SERIAL_TOL) -> np.ndarray:
    """Slider coordinates reaching pose `p` in the working mode.

    Closed form rho_i = p_i - sqrt(L^2 - p_j^2 - p_k^2), the branch with
    eta_i > 0.  Stroke-limit violations never raise (see `within_stroke`);
    unreachable poses raise Unreachable, workspace-boundary poses raise
    SerialSingularity.
    """
    p = as_point(p)
    L = d.leg_length
    rad = leg_radicands(p, L)
    bad = np.where(rad < 0.0)[0]
    if bad.size:
        i = int(bad[0])
        raise Unreachable(
            f"pose {tuple(p)} unreachable: leg {i} radicand {rad[i]:.6g} < 0", leg=i
        )
    eta = np.sqrt(rad)
    low = np.where(eta <= serial_tol * L)[0]
    if low.size:
        i = int(low[0])
        raise SerialSingularity(
            f"pose {tuple(p)} on workspace boundary: eta_{i + 1} = {eta[i]:.6g}", leg=i
        )
    return p - eta


def within_stroke(rho, d: DesignParams) -> np.ndarray:
    """Per-axis boolean flags: slider coordinate inside its travel limits."""
    rho = np.asarray(rho, dtype=float)
    lo = np.asarray(d.stroke_min)
    hi = np.asarray(d.stroke_max)
    return (rho >= lo) & (rho <= hi)


def forward_kinematics(rho, d: DesignParams, *, serial_tol: float = SERIAL_TOL) -> np.ndarray:
    """Tool pose from slider coordinates (working-mode assembly).

    Solves the sphere system through the scalar w = ||p||^2 - L^2, which the
    pairwise sphere differences make common to all legs: w = 2 rho_i p_i -
    rho_i^2.  Substituting p_i = (w + rho_i^2) / (2 rho_i) into the norm
    gives a quadratic in w; among real roots with all eta_i > 0 the one with
    smaller ||p||^2 (closer to the isotropic assembly) is returned.
    """
    rho = as_point(rho)
    L = d.leg_length

    zero = np.abs(rho) <= 1e-13 * L
    n_zero = int(zero.sum())
    if n_zero >= 2:
        raise DegenerateInput(
            f"{n_zero} sliders at the axis origin: leg spheres coincide and the "
            "assembly point is underdetermined"
        )
    if n_zero == 1:
        p = _fk_one_zero_slider(rho, int(np.where(zero)[0][0]), L)
        return _fk_accept([p], rho, L, serial_tol)

    # quadratic A w^2 + B w + C = 0; A > 0 and B = 1/2 always
    a_coef = float(np.sum(1.0 / (4.0 * rho**2)))
    c_coef = float(np.sum(rho**2) / 4.0 - L**2)
    disc = 0.25 - 4.0 * a_coef * c_coef
    if disc < 0.0:
        raise NoAssemblyMode(f"joints {tuple(rho)}: leg spheres do not intersect")
    # cancellation-free pair of roots; q <= -1/4 so both divisions are safe
    q = -(0.5 + np.sqrt(disc)) / 2.0
    candidates = [(w + rho**2) / (2.0 * rho) for w in (q / a_coef, c_coef / q)]
    return _fk_accept(candidates, rho, L, serial_tol)


def _fk_one_zero_slider(rho: np.ndarray, i: int, L: float) -> np.ndarray:
    # sphere i is centred at the origin, so ||p||^2 = L^2 exactly (w = 0)
    p = np.zeros(3)
    others = [k for k in range(3) if k != i]
    for k in others:
        p[k] = rho[k] / 2.0
    rad = L**2 - p[others[0]] ** 2 - p[others[1]] ** 2
    if rad < 0.0:
        raise NoAssemblyMode(f"joints {tuple(rho)}: leg spheres do not intersect")
    p[i] = np.sqrt(rad)  # + branch: the working mode needs eta_i = p_i > 0
    return p


def _fk_accept(candidates, rho: np.ndarray, L: float, serial_tol: float) -> np.ndarray:
    admissible = []
    for p in candidates:
        eta = p - rho
        if np.all(eta > -serial_tol * L):
            resid = np.abs(np.linalg.norm(p[None, :] - rho[:, None] * _EYE, axis=1) - L)
            if np.max(resid) <= 1e-9 * L:
                admissible.append((float(p @ p), p))
    if not admissible:
        raise NoAssemblyMode(
            f"joints {tuple(rho)}: no assembly point in the working mode"
        )
    return min(admissible, key=lambda sp: sp[0])[1]


def leg_states(
    p, rho, d: DesignParams, *, closure_tol: float = CLOSURE_TOL
) -> tuple[LegState, LegState, LegState]:
    """Per-leg points a_i, b_i, c_i and transmission scalar eta_i.

    Raises InconsistentPair when the pose/joint pair violates leg closure
    by more than closure_tol * L.
    """
    p = as_point(p)
    rho = as_point(rho)
    L = d.leg_length
    states = []
    for i in range(3):
        b = rho[i] * _EYE[i]
        leg = p - b
        resid = abs(float(np.linalg.norm(leg)) - L)
        if resid > closure_tol * L:
            raise InconsistentPair(
                f"leg {i}: closure residual {resid:.6g} mm exceeds "
                f"{closure_tol * L:.6g} mm"
            )
        states.append(
            LegState(a=np.zeros(3), b=b, c=p.copy(), eta=float(leg[i]), closure_residual=resid)
        )
    return tuple(states)


def inverse_jacobian(
    p, rho, d: DesignParams, *, serial_tol: float = SERIAL_TOL
) -> np.ndarray:
    """3x3 inverse Jacobian: row i = (c_i - b_i)^T / eta_i.

    Maps tool velocity to joint velocity.  Diagonal entries are exactly 1
    in the working mode.  Raises SerialSingularity when some eta_i falls
    below serial_tol * L.
    """
    p = as_point(p)
    rho = as_point(rho)
    eta = p - rho
    low = np.where(eta <= serial_tol * d.leg_length)[0]
    if low.size:
        i = int(low[0])
        raise SerialSingularity(f"eta_{i + 1} = {eta[i]:.6g} mm too small", leg=i)
    return batch_inverse_jacobian(p, rho)


def batch_inverse_jacobian(points: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Inverse Jacobians for consistent (points, rho) arrays of shape (..., 3).

    No singularity guard: rows blow up near serial singularities, which grid
    sweeps treat as data.  Returns shape (..., 3, 3).
    """
    points = np.asarray(points, dtype=float)
    rho = np.asarray(rho, dtype=float)
    eta = points - rho
    rows = points[..., None, :] - rho[..., :, None] * _EYE
    return rows / eta[..., :, None]
