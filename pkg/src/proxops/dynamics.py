"""Coupled translational/rotational rigid body dynamics in a central field.

Both satellites follow the same unified model: with the generalized inertia
P = blockdiag(J, m I) and the body velocity xi = [omega; v],

    P xidot = ad*_xi (P xi) + sum of applied wrenches

which expands componentwise to the familiar pair

    J wdot = (J w) x w + torques
    m vdot = m (v x w) + forces

The follower simply carries two extra wrenches (control and guidance) on top
of gravity and disturbance. Relative quantities are expressed in the
follower body frame: H = pose_target^-1 o pose_follower and
xi_rel = xi_f - Ad_{H^-1} xi_t.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import liegroup as lg


class SingularFieldError(ValueError):
    """Gravity evaluated at the field singularity (position at origin)."""


@dataclass(frozen=True)
class BodyParams:
    """Mass and inertia of one rigid body."""

    mass: float
    inertia: np.ndarray

    def __post_init__(self):
        inertia = np.asarray(self.inertia, dtype=float)
        object.__setattr__(self, "inertia", inertia)
        if not self.mass > 0.0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if inertia.shape != (3, 3) or not np.allclose(inertia, inertia.T, atol=1e-9):
            raise ValueError("inertia must be a symmetric 3x3 matrix")
        lam = np.linalg.eigvalsh(inertia)
        if lam[0] <= 0.0:
            raise ValueError("inertia must be positive definite")
        if lam[2] > lam[0] + lam[1] + 1e-9:
            raise ValueError("principal moments violate the triangle inequality")

    def generalized_inertia(self) -> np.ndarray:
        """P = blockdiag(J, m I)."""
        p = np.zeros((6, 6))
        p[:3, :3] = self.inertia
        p[3:, 3:] = self.mass * np.eye(3)
        return p

    def generalized_inertia_inv(self) -> np.ndarray:
        pinv = np.zeros((6, 6))
        pinv[:3, :3] = np.linalg.inv(self.inertia)
        pinv[3:, 3:] = np.eye(3) / self.mass
        return pinv


@dataclass
class RigidBodyState:
    """Pose (body-to-inertial) plus body-frame unified velocity."""

    pose: lg.Pose
    xi: np.ndarray

    def copy(self) -> "RigidBodyState":
        return RigidBodyState(
            lg.Pose(self.pose.rotation.copy(), self.pose.position.copy()),
            self.xi.copy(),
        )


@dataclass
class RelativeState:
    """Follower configuration and velocity relative to the target."""

    pose: lg.Pose
    rho: np.ndarray
    xi_rel: np.ndarray


def gravity_wrench(state: RigidBodyState, params: BodyParams, mu: float) -> np.ndarray:
    """Point-mass gravity force plus gravity-gradient torque, body frame.

    force  = -(mu m / |r|^3) r_b         with r_b the position in body axes
    torque = (3 mu / |r|^5) r_b x (J r_b)
    """
    p = state.pose.position
    rn = float(np.linalg.norm(p))
    if rn == 0.0:
        raise SingularFieldError("gravity wrench undefined at the origin")
    r_b = state.pose.rotation.T @ p
    rn3 = rn * rn * rn
    force = (-mu * params.mass / rn3) * r_b
    torque = (3.0 * mu / (rn3 * rn * rn)) * np.cross(r_b, params.inertia @ r_b)
    return np.concatenate([torque, force])


def body_acceleration(state: RigidBodyState, params: BodyParams, wrenches) -> np.ndarray:
    """xidot for the unified dynamics under a list of applied wrenches."""
    p = params.generalized_inertia()
    total = lg.coad_star(state.xi, p @ state.xi)
    for w in wrenches:
        total = total + np.asarray(w, dtype=float)
    return params.generalized_inertia_inv() @ total


def follower_acceleration(
    state: RigidBodyState,
    params: BodyParams,
    gravity,
    disturbance,
    control,
    apf,
) -> np.ndarray:
    """Follower xidot with its four applied wrenches summed."""
    return body_acceleration(state, params, [gravity, disturbance, control, apf])


def pose_rate(state: RigidBodyState) -> tuple[np.ndarray, np.ndarray]:
    """(Rdot, pdot) of the kinematics Rdot = R hat(w), pdot = R v."""
    r = state.pose.rotation
    return r @ lg.hat3(state.xi[:3]), r @ state.xi[3:]


def relative_pose(target: RigidBodyState, follower: RigidBodyState) -> RelativeState:
    """Relative configuration, exponential coordinates and relative velocity."""
    h = target.pose.inverse().compose(follower.pose)
    rho = lg.log_se3(h)
    xi_rel = follower.xi - lg.adjoint(h.inverse()) @ target.xi
    return RelativeState(h, rho, xi_rel)


def relative_acceleration(
    rel: RelativeState,
    target_xi: np.ndarray,
    follower_xidot: np.ndarray,
    target_xidot: np.ndarray,
) -> np.ndarray:
    """Rate of the relative velocity.

    xidot_rel = xidot_f + ad_{xi_rel} Ad_{H^-1} xi_t - Ad_{H^-1} xidot_t
    """
    ad_hinv = lg.adjoint(rel.pose.inverse())
    return (
        follower_xidot
        + lg.ad_matrix(rel.xi_rel) @ (ad_hinv @ target_xi)
        - ad_hinv @ target_xidot
    )


def kinetic_energy(state: RigidBodyState, params: BodyParams) -> float:
    p = params.generalized_inertia()
    return 0.5 * float(state.xi @ (p @ state.xi))


def step_free_body(state: RigidBodyState, params: BodyParams, dt: float, wrench_fn=None):
    """One RK4 step of a single body, pose advanced through the exp chart.

    The step integrates (rho_local, xi) where the pose is held at the step
    start and rho_local is the body-frame increment, so rotations stay
    exactly orthonormal. wrench_fn(pose, xi) -> list of wrenches; None means
    free motion.
    """

    def rates(rho_local, xi):
        pose = state.pose.compose(lg.exp_se3(rho_local))
        current = RigidBodyState(pose, xi)
        wrenches = wrench_fn(pose, xi) if wrench_fn is not None else []
        rho_dot = lg.kinematics_jacobian(rho_local) @ xi
        return rho_dot, body_acceleration(current, params, wrenches)

    r0 = np.zeros(6)
    x0 = state.xi
    k1r, k1x = rates(r0, x0)
    k2r, k2x = rates(r0 + 0.5 * dt * k1r, x0 + 0.5 * dt * k1x)
    k3r, k3x = rates(r0 + 0.5 * dt * k2r, x0 + 0.5 * dt * k2x)
    k4r, k4x = rates(r0 + dt * k3r, x0 + dt * k3x)
    rho_new = (dt / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
    xi_new = x0 + (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
    return RigidBodyState(state.pose.compose(lg.exp_se3(rho_new)), xi_new)


def integrate_free_body(
    state: RigidBodyState,
    params: BodyParams,
    dt: float,
    n_steps: int,
    wrench_fn=None,
) -> RigidBodyState:
    out = state.copy()
    for _ in range(n_steps):
        out = step_free_body(out, params, dt, wrench_fn)
    return out
