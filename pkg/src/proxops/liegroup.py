"""SO(3)/SE(3) primitives used throughout the simulator.

Conventions (fixed once, used everywhere):

* A rotation matrix ``R`` maps body coordinates to inertial coordinates,
  so the attitude kinematics read ``Rdot = R @ hat3(omega)`` with ``omega``
  the body-frame angular rate, and ``pdot = R @ v`` with ``v`` the
  body-frame linear velocity.
* 6-vectors stack the rotational part first: a velocity is
  ``xi = [omega; v]``, exponential coordinates are ``rho = [gamma; b]``,
  a wrench is ``phi = [torque; force]``.
* ``exp_se3``/``log_se3`` use the principal branch; the chart is only
  valid for ``norm(gamma) < pi``.

All functions are pure and operate on plain float64 numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Below this angle the closed-form trig coefficients are replaced by their
# 4th-order Taylor expansions. The crossover is set where the series is
# already at machine precision while the closed forms (which subtract
# nearly equal trig terms) still have ~6 clean digits to spare.
SMALL_ANGLE = 1e-2

# Logarithms this close to the pi branch point are rejected.
BRANCH_TOL = 1e-9


class OutOfChartError(ValueError):
    """Rotation angle at or beyond pi: the principal logarithm is ambiguous."""


def hat3(w) -> np.ndarray:
    """Skew-symmetric matrix of a 3-vector: hat3(w) @ u == cross(w, u)."""
    w = np.asarray(w, dtype=float)
    return np.array(
        [
            [0.0, -w[2], w[1]],
            [w[2], 0.0, -w[0]],
            [-w[1], w[0], 0.0],
        ]
    )


def vee3(W) -> np.ndarray:
    """Inverse of hat3 (takes the skew part as given, no symmetrization)."""
    return np.array([W[2, 1], W[0, 2], W[1, 0]])


def _so3_coeffs(theta: float) -> tuple[float, float, float]:
    """Coefficients A = sin(t)/t, B = (1-cos(t))/t^2, C = (t-sin(t))/t^3."""
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        t4 = t2 * t2
        a = 1.0 - t2 / 6.0 + t4 / 120.0
        b = 0.5 - t2 / 24.0 + t4 / 720.0
        c = 1.0 / 6.0 - t2 / 120.0 + t4 / 5040.0
    else:
        t2 = theta * theta
        a = np.sin(theta) / theta
        b = (1.0 - np.cos(theta)) / t2
        c = (theta - np.sin(theta)) / (t2 * theta)
    return a, b, c


def exp_so3(gamma) -> np.ndarray:
    """Rotation matrix for a rotation vector (Rodrigues formula)."""
    gamma = np.asarray(gamma, dtype=float)
    theta = float(np.linalg.norm(gamma))
    a, b, _ = _so3_coeffs(theta)
    gx = hat3(gamma)
    return np.eye(3) + a * gx + b * (gx @ gx)


def rotation_angle(r) -> float:
    """Principal rotation angle of a rotation matrix, in [0, pi]."""
    c = 0.5 * (np.trace(r) - 1.0)
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def log_so3(r) -> np.ndarray:
    """Rotation vector of a rotation matrix (principal branch).

    Raises OutOfChartError within BRANCH_TOL of the pi branch point.
    """
    r = np.asarray(r, dtype=float)
    theta = rotation_angle(r)
    if theta >= np.pi - BRANCH_TOL:
        raise OutOfChartError(f"rotation angle {theta:.12f} too close to pi")
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        factor = 0.5 + t2 / 12.0 + 7.0 * t2 * t2 / 720.0
    else:
        factor = theta / (2.0 * np.sin(theta))
    return factor * vee3(r - r.T)


def so3_left_jacobian(gamma) -> np.ndarray:
    """V(gamma) with exp_se3 translation p = V(gamma) @ b."""
    gamma = np.asarray(gamma, dtype=float)
    theta = float(np.linalg.norm(gamma))
    _, b, c = _so3_coeffs(theta)
    gx = hat3(gamma)
    return np.eye(3) + b * gx + c * (gx @ gx)


def so3_left_jacobian_inv(gamma) -> np.ndarray:
    """Closed-form inverse of so3_left_jacobian."""
    gamma = np.asarray(gamma, dtype=float)
    theta = float(np.linalg.norm(gamma))
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        d = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0
    else:
        t2 = theta * theta
        d = (1.0 - 0.5 * theta * np.sin(theta) / (1.0 - np.cos(theta))) / t2
    gx = hat3(gamma)
    return np.eye(3) - 0.5 * gx + d * (gx @ gx)


@dataclass(frozen=True)
class Pose:
    """SE(3) element: body-to-inertial rotation plus inertial position."""

    rotation: np.ndarray
    position: np.ndarray

    @staticmethod
    def identity() -> "Pose":
        return Pose(np.eye(3), np.zeros(3))

    def compose(self, other: "Pose") -> "Pose":
        return Pose(
            self.rotation @ other.rotation,
            self.rotation @ other.position + self.position,
        )

    def inverse(self) -> "Pose":
        rt = self.rotation.T
        return Pose(rt, -(rt @ self.position))

    def matrix(self) -> np.ndarray:
        h = np.eye(4)
        h[:3, :3] = self.rotation
        h[:3, 3] = self.position
        return h

    def apply(self, point) -> np.ndarray:
        return self.rotation @ np.asarray(point, dtype=float) + self.position


def rotation_valid(r, tol: float = 1e-9) -> bool:
    r = np.asarray(r, dtype=float)
    return (
        np.allclose(r.T @ r, np.eye(3), atol=tol)
        and abs(np.linalg.det(r) - 1.0) < tol
    )


def exp_se3(rho) -> Pose:
    """Pose for exponential coordinates rho = [gamma; b]."""
    rho = np.asarray(rho, dtype=float)
    gamma = rho[:3]
    b = rho[3:]
    return Pose(exp_so3(gamma), so3_left_jacobian(gamma) @ b)


def log_se3(pose: Pose) -> np.ndarray:
    """Exponential coordinates of a pose (principal branch)."""
    gamma = log_so3(pose.rotation)
    b = so3_left_jacobian_inv(gamma) @ pose.position
    return np.concatenate([gamma, b])


def adjoint(pose: Pose) -> np.ndarray:
    """Adjoint matrix Ad_H with the [omega; v] stacking: [[R, 0], [px R, R]]."""
    ad = np.zeros((6, 6))
    r = pose.rotation
    ad[:3, :3] = r
    ad[3:, 3:] = r
    ad[3:, :3] = hat3(pose.position) @ r
    return ad


def ad_matrix(xi) -> np.ndarray:
    """Algebra commutator matrix ad_xi = [[wx, 0], [vx, wx]]."""
    xi = np.asarray(xi, dtype=float)
    wx = hat3(xi[:3])
    vx = hat3(xi[3:])
    out = np.zeros((6, 6))
    out[:3, :3] = wx
    out[3:, 3:] = wx
    out[3:, :3] = vx
    return out


def coad_star(xi, momentum) -> np.ndarray:
    """Coadjoint term ad*_xi mu = ad_xi^T mu, generating the gyroscopic wrench.

    For mu = P xi = [J w; m v] the rotational block reduces to (J w) x w and
    the translational block to m (v x w), matching the componentwise rigid
    body equations.
    """
    xi = np.asarray(xi, dtype=float)
    momentum = np.asarray(momentum, dtype=float)
    w, v = xi[:3], xi[3:]
    mw, mv = momentum[:3], momentum[3:]
    return np.concatenate([np.cross(mw, w) + np.cross(mv, v), np.cross(mv, w)])


def _coupling_q(gamma, b) -> np.ndarray:
    """Coupling block of the SE(3) left Jacobian (closed form).

    Coefficient functions were identified against the quadrature identity
    J_l(rho) = int_0^1 Ad_{exp(s rho)} ds, which the tests re-check.
    """
    theta = float(np.linalg.norm(gamma))
    gx = hat3(gamma)
    bx = hat3(b)
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        c1 = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0
        k2 = 1.0 / 24.0 - t2 / 720.0 + t2 * t2 / 40320.0
        k3 = 1.0 / 120.0 - t2 / 5040.0 + t2 * t2 / 362880.0
    else:
        t2 = theta * theta
        t4 = t2 * t2
        s, c = np.sin(theta), np.cos(theta)
        c1 = (theta - s) / (t2 * theta)
        k2 = (0.5 * t2 + c - 1.0) / t4
        k3 = (t2 * theta / 6.0 - theta + s) / (t4 * theta)
    gb = gx @ bx
    bg = bx @ gx
    return (
        0.5 * bx
        + c1 * (gb + bg)
        + (c1 - 3.0 * k2) * (gx @ bg)
        + k2 * (gx @ gb + bg @ gx)
        + 0.5 * (k2 - 3.0 * k3) * (gb @ gx @ gx + gx @ gx @ bg)
    )


def se3_left_jacobian(rho) -> np.ndarray:
    """Left Jacobian of the SE(3) exponential (block lower-triangular)."""
    rho = np.asarray(rho, dtype=float)
    jl3 = so3_left_jacobian(rho[:3])
    out = np.zeros((6, 6))
    out[:3, :3] = jl3
    out[3:, 3:] = jl3
    out[3:, :3] = _coupling_q(rho[:3], rho[3:])
    return out


def se3_left_jacobian_inv(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    jinv = so3_left_jacobian_inv(rho[:3])
    q = _coupling_q(rho[:3], rho[3:])
    out = np.zeros((6, 6))
    out[:3, :3] = jinv
    out[3:, 3:] = jinv
    out[3:, :3] = -jinv @ q @ jinv
    return out


def kinematics_jacobian(rho) -> np.ndarray:
    """G(rho) with rhodot = G(rho) @ xi along Hdot = H hat(xi).

    This is the inverse right Jacobian of the SE(3) exponential, computed in
    closed form as the inverse left Jacobian at -rho.
    """
    rho = np.asarray(rho, dtype=float)
    theta = float(np.linalg.norm(rho[:3]))
    if theta >= np.pi - BRANCH_TOL:
        raise OutOfChartError(f"rotation angle {theta:.12f} outside the chart")
    return se3_left_jacobian_inv(-rho)
