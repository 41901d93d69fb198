"""Keplerian element conversions and LVLH-aligned initial states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import liegroup as lg
from .dynamics import RigidBodyState

MU_EARTH = 3.986004418e14  # m^3/s^2


@dataclass(frozen=True)
class OrbitElements:
    """Classical elements, angles in radians, semimajor axis in meters."""

    semimajor_axis: float
    eccentricity: float
    inclination: float
    raan: float
    arg_perigee: float
    true_anomaly: float

    def __post_init__(self):
        if not 0.0 <= self.eccentricity < 1.0:
            raise ValueError(
                f"eccentricity must be in [0, 1), got {self.eccentricity}"
            )
        if self.semimajor_axis <= 0.0:
            raise ValueError("semimajor axis must be positive")

    def period(self, mu: float = MU_EARTH) -> float:
        return 2.0 * np.pi * np.sqrt(self.semimajor_axis**3 / mu)


def _rot_z(a: float) -> np.ndarray:
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_x(a: float) -> np.ndarray:
    c, s = np.cos(a), np.sin(a)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def elements_to_rv(el: OrbitElements, mu: float = MU_EARTH):
    """Inertial position and velocity on the conic."""
    slr = el.semimajor_axis * (1.0 - el.eccentricity**2)
    nu = el.true_anomaly
    r = slr / (1.0 + el.eccentricity * np.cos(nu))
    r_pf = r * np.array([np.cos(nu), np.sin(nu), 0.0])
    v_pf = np.sqrt(mu / slr) * np.array(
        [-np.sin(nu), el.eccentricity + np.cos(nu), 0.0]
    )
    c = _rot_z(el.raan) @ _rot_x(el.inclination) @ _rot_z(el.arg_perigee)
    return c @ r_pf, c @ v_pf


def rv_to_elements(p, v, mu: float = MU_EARTH) -> OrbitElements:
    """Inverse conversion. Near-singular geometries (e ~ 0, i ~ 0) are not
    special-cased; callers stay away from them."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    rn = np.linalg.norm(p)
    h = np.cross(p, v)
    hn = np.linalg.norm(h)
    energy = 0.5 * v @ v - mu / rn
    if energy >= 0.0:
        raise ValueError("state is not on an elliptic orbit")
    a = -mu / (2.0 * energy)
    e_vec = np.cross(v, h) / mu - p / rn
    e = np.linalg.norm(e_vec)
    inc = np.arccos(np.clip(h[2] / hn, -1.0, 1.0))
    node = np.cross([0.0, 0.0, 1.0], h)
    nn = np.linalg.norm(node)
    raan = np.arctan2(node[1], node[0]) % (2.0 * np.pi)
    argp = np.arccos(np.clip(node @ e_vec / (nn * e), -1.0, 1.0))
    if e_vec[2] < 0.0:
        argp = 2.0 * np.pi - argp
    nu = np.arccos(np.clip(e_vec @ p / (e * rn), -1.0, 1.0))
    if p @ v < 0.0:
        nu = 2.0 * np.pi - nu
    return OrbitElements(a, e, inc, raan, argp, nu)


def lvlh_rotation(p, v) -> np.ndarray:
    """Body-to-inertial rotation with x radial out, z along orbit normal."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    x = p / np.linalg.norm(p)
    h = np.cross(p, v)
    z = h / np.linalg.norm(h)
    y = np.cross(z, x)
    return np.column_stack([x, y, z])


def initial_body_state(el: OrbitElements, mu: float = MU_EARTH) -> RigidBodyState:
    """Rigid body on the orbit, LVLH-aligned and rotating at the orbit rate."""
    p, v = elements_to_rv(el, mu)
    r = lvlh_rotation(p, v)
    omega_inertial = np.cross(p, v) / (p @ p)
    xi = np.concatenate([r.T @ omega_inertial, r.T @ v])
    return RigidBodyState(lg.Pose(r, p), xi)
