"""Scenario description: everything one simulation run depends on."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .control import SmcGains
from .dynamics import BodyParams
from .guidance import ApfGains
from .orbits import MU_EARTH, OrbitElements

GUIDANCE_MODES = ("none", "conventional", "physics_informed")
OBSTACLE_MODELS = ("linear", "two_body")


@dataclass(frozen=True)
class ObstacleSpec:
    """Obstacle initial state, expressed relative to the target's initial
    inertial position and velocity (inertial axes)."""

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
class DisturbanceSpec:
    """Constant wrench plus a seeded band-limited random wrench, per body."""

    constant_torque: np.ndarray = field(default_factory=lambda: np.zeros(3))
    constant_force: np.ndarray = field(default_factory=lambda: np.zeros(3))
    random_torque_amp: float = 0.0
    random_force_amp: float = 0.0
    band_low_hz: float = 0.005
    band_high_hz: float = 0.05
    harmonics: int = 4

    def __post_init__(self):
        object.__setattr__(
            self, "constant_torque", np.asarray(self.constant_torque, dtype=float)
        )
        object.__setattr__(
            self, "constant_force", np.asarray(self.constant_force, dtype=float)
        )
        if self.random_torque_amp < 0.0 or self.random_force_amp < 0.0:
            raise ValueError("random disturbance amplitudes must be non-negative")
        if not 0.0 < self.band_low_hz < self.band_high_hz:
            raise ValueError("need 0 < band_low_hz < band_high_hz")
        if self.harmonics < 1:
            raise ValueError("harmonics must be >= 1")


@dataclass(frozen=True)
class EventThresholds:
    capture_dist: float = 0.05
    capture_speed: float = 0.01
    stall_window: float = 60.0
    stall_speed_eps: float = 1e-3
    stall_goal_eps: float = 0.5
    stall_force_eps: float = 0.05
    hold_to_end: bool = False

    def __post_init__(self):
        for name in (
            "capture_dist",
            "capture_speed",
            "stall_window",
            "stall_speed_eps",
            "stall_goal_eps",
            "stall_force_eps",
        ):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class Scenario:
    orbit: OrbitElements
    target: BodyParams
    follower: BodyParams
    initial_rho: np.ndarray
    initial_xi_rel: np.ndarray
    apf: ApfGains
    smc: SmcGains
    obstacles: tuple[ObstacleSpec, ...] = ()
    obstacle_model: str = "two_body"
    guidance_mode: str = "physics_informed"
    control_enabled: bool = True
    disturbance_known: bool = True
    target_disturbance: DisturbanceSpec = field(default_factory=DisturbanceSpec)
    follower_disturbance: DisturbanceSpec = field(default_factory=DisturbanceSpec)
    events: EventThresholds = field(default_factory=EventThresholds)
    mu_earth: float = MU_EARTH
    dt: float = 0.05
    t_end: float = 300.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "initial_rho", np.asarray(self.initial_rho, dtype=float))
        object.__setattr__(
            self, "initial_xi_rel", np.asarray(self.initial_xi_rel, dtype=float)
        )
        if self.initial_rho.shape != (6,) or self.initial_xi_rel.shape != (6,):
            raise ValueError("initial relative state must be a pair of 6-vectors")
        if self.guidance_mode not in GUIDANCE_MODES:
            raise ValueError(f"guidance_mode must be one of {GUIDANCE_MODES}")
        if self.obstacle_model not in OBSTACLE_MODELS:
            raise ValueError(f"obstacle_model must be one of {OBSTACLE_MODELS}")
        if not self.dt > 0.0:
            raise ValueError("dt must be positive")
        if not self.t_end > self.dt:
            raise ValueError("t_end must exceed dt")
        if not isinstance(self.seed, int):
            raise ValueError("seed must be an integer")

    def with_overrides(self, **kwargs) -> "Scenario":
        return replace(self, **kwargs)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))
