"""Flat array layouts shared by the compiled and pure steppers.

State vector (length 36 + 6 * n_obstacles):
    [0:9]    target rotation, row-major
    [9:12]   target position
    [12:18]  target xi = [omega; v]
    [18:27]  follower rotation
    [27:30]  follower position
    [30:36]  follower xi
    [36:]    per obstacle: position (3), velocity (3)

Diagnostics row (length DIAG_FIXED + n_obstacles): sampled quantities at the
row time, wrenches as used over the following step.
"""

BODY_T = 0
BODY_F = 18
OBS0 = 36


def state_size(n_obstacles: int) -> int:
    return 36 + 6 * n_obstacles


DIAG_T = 0
DIAG_RT = 1          # 9: target rotation
DIAG_PT = 10         # 3: target position
DIAG_XIT = 13        # 6: target xi
DIAG_RF = 19         # 9: follower rotation
DIAG_PF = 28         # 3: follower position
DIAG_XIF = 31        # 6: follower xi
DIAG_RHO = 37        # 6: relative exponential coordinates
DIAG_XIREL = 43      # 6: relative velocity
DIAG_S = 49          # 6: sliding surface
DIAG_PHIC = 55       # 6: control wrench
DIAG_PHIAPF = 61     # 6: guidance wrench (follower body frame)
DIAG_V1 = 67
DIAG_HA = 68
DIAG_HR = 69
DIAG_GOALDIST = 70
DIAG_SPEED = 71
DIAG_APFNORM = 72
DIAG_FIXED = 73      # obstacle distances follow


def diag_size(n_obstacles: int) -> int:
    return DIAG_FIXED + n_obstacles


# step status codes
STATUS_OK = 0
STATUS_CHART_EXIT = 1
STATUS_NONFINITE = 2

# guidance mode codes
MODE_NONE = 0
MODE_CONVENTIONAL = 1
MODE_PHYSICS_INFORMED = 2

# obstacle propagation models
OBS_LINEAR = 0
OBS_TWO_BODY = 1
