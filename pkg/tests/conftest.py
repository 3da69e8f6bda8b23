"""Shared canonical configurations.

The three dilemma setups below were located by grid search over the
classifier's conditions and then frozen; each sits comfortably inside its
regime (the guaranteed-dilemma one survives +-0.05 jitter on every
coordinate, the forcing one keeps both reachability sets nonempty).
"""

import pytest

from turretgame.model import AttackerPolar, GameState, SpeedParams

# guaranteed dilemma: runner attacker 2 on the CW side, fast duel with
# attacker 1 on the CCW side (witness "21")
GD_PARAMS = SpeedParams(0.2, 0.7)
GD_STATE = GameState(
    theta_t=0.0,
    attackers=(AttackerPolar(2.2, 0.2), AttackerPolar(1.3, -2.0)),
)

# forcing dilemma with both reachability targets alive and wide: the
# fast-overlap target is a single arc CCW of the pointer (d1 ~ 0.49), the
# team-slow overlap CW (d2 ~ 0.69, measure > 3.5)
FD_PARAMS = SpeedParams(0.25, 0.7)
FD_STATE = GameState(
    theta_t=0.0,
    attackers=(AttackerPolar(2.6, -1.1), AttackerPolar(1.85, 1.75)),
)

# avoid dilemma, deep interior (label survives +-0.04 jitter everywhere)
AV_PARAMS = SpeedParams(0.25, 0.7)
AV_STATE = GameState(
    theta_t=0.0,
    attackers=(AttackerPolar(1.15, 0.25), AttackerPolar(1.8, -0.5)),
)

# sweep frame showing all six interesting labels on a 200x200 grid
SWEEP_PARAMS = SpeedParams(0.25, 0.7)
SWEEP_A1 = AttackerPolar(2.0, 0.45)
SWEEP_THETA_T = 0.0


@pytest.fixture
def gd_state():
    return GD_STATE


@pytest.fixture
def gd_params():
    return GD_PARAMS


@pytest.fixture
def fd_state():
    return FD_STATE


@pytest.fixture
def fd_params():
    return FD_PARAMS
