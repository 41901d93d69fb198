"""Collision-avoidance guidance forces.

Two force laws are provided on the same primitives:

* conventional: position-only field, attraction mu_a * b toward the goal and
  repulsion mu_r / d^3 away from each obstacle. Attractive and repulsive
  contributions can balance, trapping the follower off-goal.
* physics-informed: adds the momentum terms mu_a * vdot_rel (attractive) and
  -mu_r * vdot_obs / |v_obs|^2 (repulsive), so the net force keeps a
  velocity/acceleration-dependent component when the static parts cancel.

Direction conventions (the force laws themselves are scalar in the source
material): b points follower -> target, so the attractive terms act toward
the target; b_obs points obstacle -> follower, so static repulsion pushes
away from the obstacle; the repulsive momentum term opposes the follower's
acceleration relative to the obstacle.

Repulsion is gated to the obstacle's influence sphere with a C1 smoothstep
blend over the outer 10% of the influence radius, and the inverse relative
speed is floored at speed_floor to keep the momentum term finite for a
co-moving obstacle.

All forces are 3-vectors in the frame the inputs are expressed in (the
simulator uses inertial axes and rotates the result into the follower body
frame). Guidance produces no torque.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np


class CollisionError(RuntimeError):
    """Follower at or inside an obstacle hard radius."""


@dataclass(frozen=True)
class Obstacle:
    """Ball-shaped obstacle with an influence sphere around it."""

    position: np.ndarray
    velocity: np.ndarray
    hard_radius: float
    influence_radius: float

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "velocity", np.asarray(self.velocity, dtype=float))
        if not self.hard_radius > 0.0:
            raise ValueError("hard_radius must be positive")
        if not self.influence_radius > self.hard_radius:
            raise ValueError("influence_radius must exceed hard_radius")


@dataclass(frozen=True)
class ApfGains:
    """Gains of both force laws.

    attractive_gain serves the static and the momentum attractive terms, as
    in the source law; set attractive_gain_vel to tune them separately.
    """

    attractive_gain: float
    repulsive_gain: float
    speed_floor: float = 1e-3
    accel_window: float = 0.05
    attractive_gain_vel: float | None = None

    def __post_init__(self):
        for name in ("attractive_gain", "repulsive_gain", "speed_floor", "accel_window"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.attractive_gain_vel is not None and not self.attractive_gain_vel > 0.0:
            raise ValueError("attractive_gain_vel must be positive")

    @property
    def mu_a_pos(self) -> float:
        return self.attractive_gain

    @property
    def mu_a_vel(self) -> float:
        if self.attractive_gain_vel is None:
            return self.attractive_gain
        return self.attractive_gain_vel


@dataclass
class ObstacleKinematics:
    """Follower state relative to one obstacle."""

    obstacle: Obstacle
    b_obs: np.ndarray       # follower position relative to obstacle
    v_obs: np.ndarray       # follower velocity relative to obstacle
    v_obs_dot: np.ndarray   # its rate (finite-differenced by the caller)


@dataclass
class RelativeKinematics:
    """Snapshot of everything the guidance laws consume."""

    b: np.ndarray           # target position relative to follower
    v_rel: np.ndarray       # d/dt b
    v_rel_dot: np.ndarray   # d/dt v_rel
    obstacles: list[ObstacleKinematics] = field(default_factory=list)


@dataclass
class GuidanceDiagnostics:
    hamiltonian_attractive: float
    hamiltonian_repulsive: float
    momentum_attractive: np.ndarray
    momentum_repulsive: np.ndarray
    obstacle_distances: np.ndarray


def influence_weight(dist: float, influence_radius: float) -> float:
    """C1 gate: 1 inside 90% of the influence radius, 0 outside it."""
    if dist >= influence_radius:
        return 0.0
    edge = 0.9 * influence_radius
    if dist <= edge:
        return 1.0
    x = (influence_radius - dist) / (influence_radius - edge)
    return x * x * (3.0 - 2.0 * x)


def attractive_hamiltonian(b, v_rel, gains: ApfGains):
    """Energy of the attractive field and its momentum factor."""
    b = np.asarray(b, dtype=float)
    v_rel = np.asarray(v_rel, dtype=float)
    h = 0.5 * gains.mu_a_vel * float(v_rel @ v_rel) + 0.5 * gains.mu_a_pos * float(b @ b)
    return h, gains.mu_a_vel * v_rel


def attractive_force(b, v_rel, v_rel_dot, gains: ApfGains) -> np.ndarray:
    """mu_a * vdot_rel + mu_a * b (v_rel enters the energy, not the force)."""
    del v_rel
    return gains.mu_a_vel * np.asarray(v_rel_dot, dtype=float) + gains.mu_a_pos * np.asarray(
        b, dtype=float
    )


def repulsive_hamiltonian(kin: ObstacleKinematics, gains: ApfGains):
    """Energy of one obstacle's repulsive field and its momentum factor."""
    dist = float(np.linalg.norm(kin.b_obs))
    if dist >= kin.obstacle.influence_radius:
        return 0.0, 0.0
    w = influence_weight(dist, kin.obstacle.influence_radius)
    speed = max(float(np.linalg.norm(kin.v_obs)), gains.speed_floor)
    h = w * (
        0.5 * gains.repulsive_gain / (speed * speed)
        + 0.5 * gains.repulsive_gain / (dist * dist)
    )
    return h, w * gains.repulsive_gain / speed


def repulsive_force(b_obs, v_obs, v_obs_dot, gains: ApfGains, obstacle: Obstacle) -> np.ndarray:
    """Gated repulsion: static push away plus the momentum term."""
    b_obs = np.asarray(b_obs, dtype=float)
    dist = float(np.linalg.norm(b_obs))
    if dist <= obstacle.hard_radius:
        raise CollisionError(
            f"obstacle distance {dist:.3f} m within hard radius {obstacle.hard_radius:.3f} m"
        )
    if dist >= obstacle.influence_radius:
        return np.zeros(3)
    w = influence_weight(dist, obstacle.influence_radius)
    speed = max(float(np.linalg.norm(v_obs)), gains.speed_floor)
    unit_away = b_obs / dist
    static = (gains.repulsive_gain / dist**3) * unit_away
    momentum = (-gains.repulsive_gain / (speed * speed)) * np.asarray(v_obs_dot, dtype=float)
    return w * (static + momentum)


def conventional_apf_force(b, obstacles: list[ObstacleKinematics], gains: ApfGains) -> np.ndarray:
    """Position-only field: the physics-informed law with momenta zeroed."""
    zero = np.zeros(3)
    force = attractive_force(b, zero, zero, gains)
    for kin in obstacles:
        force = force + repulsive_force(kin.b_obs, zero, zero, gains, kin.obstacle)
    return force


def pi_apf_total(kin: RelativeKinematics, gains: ApfGains):
    """Physics-informed force and a 6-vector wrench (torque part zero)."""
    force = attractive_force(kin.b, kin.v_rel, kin.v_rel_dot, gains)
    dists = np.empty(len(kin.obstacles))
    h_r = 0.0
    p_r = np.empty(len(kin.obstacles))
    for i, ok in enumerate(kin.obstacles):
        dists[i] = np.linalg.norm(ok.b_obs)
        force = force + repulsive_force(ok.b_obs, ok.v_obs, ok.v_obs_dot, gains, ok.obstacle)
        hr_i, pr_i = repulsive_hamiltonian(ok, gains)
        h_r += hr_i
        p_r[i] = pr_i
    h_a, p_a = attractive_hamiltonian(kin.b, kin.v_rel, gains)
    wrench = np.concatenate([np.zeros(3), force])
    diag = GuidanceDiagnostics(h_a, h_r, p_a, p_r, dists)
    return wrench, diag


class LocalMinimumDetector:
    """Sliding-window trap detector for one rollout.

    Fires when, over a full window, the mean relative speed and the mean net
    guidance force are both negligible while the follower stays off-goal.
    """

    def __init__(self, window_steps: int, speed_eps: float, goal_eps: float, force_eps: float):
        if window_steps < 1:
            raise ValueError("window_steps must be >= 1")
        self.window_steps = window_steps
        self.speed_eps = speed_eps
        self.goal_eps = goal_eps
        self.force_eps = force_eps
        self._speeds: deque = deque(maxlen=window_steps)
        self._dists: deque = deque(maxlen=window_steps)
        self._forces: deque = deque(maxlen=window_steps)

    def update(self, speed: float, goal_distance: float, force_norm: float):
        """Push one sample; returns a report dict when the trap fires."""
        self._speeds.append(speed)
        self._dists.append(goal_distance)
        self._forces.append(force_norm)
        if len(self._speeds) < self.window_steps:
            return None
        mean_speed = float(np.mean(self._speeds))
        mean_force = float(np.mean(self._forces))
        min_dist = float(np.min(self._dists))
        if mean_speed < self.speed_eps and min_dist > self.goal_eps and mean_force < self.force_eps:
            return {
                "mean_speed": mean_speed,
                "mean_force": mean_force,
                "goal_distance": min_dist,
                "window_steps": self.window_steps,
            }
        return None
