"""The dampened-gradient learning process and its comparison dynamics.

One learning round from profile x at step index n:

* exploration: each player i draws a sign eps_i and deviates to
  x_i + alpha(n) * eps_i, where alpha(n) = scale / (n+1)^gamma;
* update: after observing the payoff change du_i between the exploration
  profile and x, the player moves to x_i * (1 + eps_i * du_i).

The multiplicative factor dampens moves near the boundary, so the state
stays strictly positive. The averaged motion is the mean-field system
xdot_i = x_i * du_i/dx_i, integrated here with fixed-step RK4; the module
also integrates the projected-gradient and weighted-gradient comparison
systems (forward Euler with clamping, their fields are boundary-discontinuous)
and continuous-time best-response dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .games import Game, as_profile, _box_array


class StartConditionError(ValueError):
    """An exploration step would leave the orthant; the run cannot start here.

    Remedies: raise start_index so that alpha(start_index) <= min_i x0_i, or
    start from a profile with every coordinate above the first step size.
    """


class PositivityError(RuntimeError):
    """A state coordinate became non-positive mid-run (internal error)."""


class UnboundedBestResponseError(RuntimeError):
    """No sign change of the own-gradient found within the bracket limit."""


class DivergenceError(RuntimeError):
    """An ODE trajectory left the bounding box."""

    def __init__(self, exit_time: float, state: np.ndarray):
        self.exit_time = exit_time
        self.state = state
        super().__init__(
            f"trajectory left the bounding box at t={exit_time:g}, state={state.tolist()}"
        )


@dataclass(frozen=True)
class StepSchedule:
    """Step sizes alpha(n) = scale / (n+1)^gamma with gamma in (0.5, 1].

    Within this family the steps always sum to infinity and vanish, which is
    what the learning process requires; gamma <= 0.5 would break the
    summable-variance condition and is rejected.
    """

    gamma: float = 1.0
    scale: float = 1.0

    def __post_init__(self):
        if not (0.5 < self.gamma <= 1.0):
            raise ValueError(f"gamma must be in (0.5, 1], got {self.gamma}")
        if not (self.scale > 0.0):
            raise ValueError(f"scale must be > 0, got {self.scale}")

    @classmethod
    def harmonic(cls) -> "StepSchedule":
        return cls()

    @classmethod
    def power(cls, gamma: float, scale: float = 1.0) -> "StepSchedule":
        return cls(gamma=gamma, scale=scale)

    def alpha(self, n: int) -> float:
        if self.gamma == 1.0:
            return self.scale / (n + 1.0)
        return self.scale / (n + 1.0) ** self.gamma


@dataclass(frozen=True)
class DgapConfig:
    """Configuration of one stochastic run."""

    n_steps: int
    seed: int
    schedule: StepSchedule = field(default_factory=StepSchedule)
    start_index: int = 0

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if self.start_index < 0:
            raise ValueError("start_index must be >= 0")
        if not (0 <= self.seed < 2 ** 64):
            raise ValueError("seed must fit in 64 bits")

    def to_dict(self) -> dict:
        return {
            "n_steps": self.n_steps,
            "seed": self.seed,
            "schedule": {"gamma": self.schedule.gamma, "scale": self.schedule.scale},
            "start_index": self.start_index,
        }


@dataclass(eq=False)
class Trajectory:
    """Recorded states of a stochastic run or an ODE integration."""

    steps: np.ndarray    # recorded step indices (dgap) or time-step counts (ode)
    states: np.ndarray   # (K, N) one row per recorded state
    kind: str            # dgap | ode_dampened | ode_arrow | ode_rosen | ode_brd
    game_name: str
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.states.shape[0]

    @property
    def n_players(self) -> int:
        return self.states.shape[1]

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def mean_field(game: Game, x) -> np.ndarray:
    """Dampened-gradient field: component i is x_i * du_i/dx_i."""
    x = as_profile(x, game.n_players)
    return np.array([x[i] * game.own_gradient(i, x) for i in range(game.n_players)])


def dgap_step(game: Game, x, n: int, signs, schedule: StepSchedule = StepSchedule()):
    """One explore-update round; returns (x_next, exploration_point)."""
    x = as_profile(x, game.n_players)
    if np.any(x <= 0.0):
        raise ValueError(f"state must be strictly positive, got {x.tolist()}")
    signs = np.asarray(signs, dtype=float)
    if signs.shape != x.shape or not np.all(np.abs(signs) == 1.0):
        raise ValueError("signs must be a vector of +-1, one per player")

    a = schedule.alpha(n)
    exploration = x + a * signs
    if np.any(exploration < 0.0):
        raise StartConditionError(
            f"exploration {exploration.tolist()} leaves the orthant at step {n} "
            f"(alpha={a:g}); raise start_index or the initial point"
        )
    x_next = np.empty_like(x)
    for i in range(game.n_players):
        du = game.payoff(i, exploration) - game.payoff(i, x)
        x_next[i] = x[i] * (1.0 + signs[i] * du)
    if np.any(x_next <= 0.0):
        raise PositivityError(
            f"update from {x.tolist()} at step {n} produced a non-positive "
            f"coordinate: {x_next.tolist()}"
        )
    return x_next, exploration


@dataclass(eq=False)
class StepDecomposition:
    """Drift / martingale-noise / remainder split of one realized step.

    x_next = x + alpha * (drift + noise + remainder) holds exactly because
    the remainder is defined as the residual.
    """

    drift: np.ndarray
    noise: np.ndarray
    remainder: np.ndarray
    alpha: float
    x_next: np.ndarray


def decompose_step(game: Game, x, n: int, signs,
                   schedule: StepSchedule = StepSchedule()) -> StepDecomposition:
    """Split the realized step into drift, zero-mean noise and O(1/n) remainder."""
    x = as_profile(x, game.n_players)
    signs = np.asarray(signs, dtype=float)
    a = schedule.alpha(n)
    n_players = game.n_players

    drift = mean_field(game, x)
    noise = np.empty(n_players)
    for i in range(n_players):
        acc = 0.0
        for j in range(n_players):
            if j != i:
                acc += signs[j] * game.cross_gradient(i, j, x)
        noise[i] = signs[i] * x[i] * acc

    x_next, _ = dgap_step(game, x, n, signs, schedule)
    remainder = (x_next - x) / a - drift - noise
    return StepDecomposition(drift=drift, noise=noise, remainder=remainder,
                             alpha=a, x_next=x_next)


def run_dgap(game: Game, x0, cfg: DgapConfig, record_every: int = 1) -> Trajectory:
    """Run the learning process; deterministic given (game, x0, cfg).

    Records the initial state, every record_every-th state and the final
    state. Uses the compiled kernel when the game carries one; custom games
    run on the pure-Python reference engine with the identical contract.
    """
    from . import engine  # deferred: pulls in the compiler

    x0 = as_profile(x0, game.n_players)
    if np.any(x0 <= 0.0):
        raise ValueError(f"x0 must be strictly positive, got {x0.tolist()}")
    if record_every < 1:
        raise ValueError("record_every must be >= 1")

    no_box = np.full(game.n_players, np.inf)
    if game.kernel is not None:
        status, stop, rec_n, rec_states, min_coord = engine.run_with_kernel(
            game.kernel, x0, cfg.seed, cfg.n_steps, cfg.start_index,
            cfg.schedule.gamma, cfg.schedule.scale, record_every, no_box,
        )
    else:
        status, stop, rec_n, rec_states, min_coord = engine.run_pure_python(
            game, x0, cfg.seed, cfg.n_steps, cfg.start_index,
            cfg.schedule.gamma, cfg.schedule.scale, record_every, no_box,
        )

    if status == engine.STATUS_START_CONDITION:
        raise StartConditionError(
            f"exploration leaves the orthant at step {cfg.start_index + stop} "
            f"from state {rec_states[-1].tolist()}; raise start_index so that "
            f"alpha(start_index) <= min_i x0_i, or start further inside"
        )
    if status == engine.STATUS_NONPOSITIVE:
        raise PositivityError(
            f"state became non-positive after step {cfg.start_index + stop}; "
            f"this indicates a start-condition bug, states are never clamped"
        )

    return Trajectory(
        steps=rec_n,
        states=rec_states,
        kind="dgap",
        game_name=game.name,
        meta={"config": cfg.to_dict(), "record_every": record_every,
              "min_coordinate": min_coord},
    )


def best_response(game: Game, i: int, x_minus_i, bracket_max: float = 10.0) -> float:
    """Unique maximizer of player i's payoff against the others' profile.

    Under the single-peaked hypothesis the own-gradient crosses zero once;
    the root is bracketed by doubling from [0, bracket_max] and then
    bisected to absolute tolerance 1e-10.
    """
    others = np.asarray(x_minus_i, dtype=float)
    if others.shape != (game.n_players - 1,):
        raise ValueError(f"x_minus_i must have {game.n_players - 1} coordinates")

    def g(t: float) -> float:
        prof = np.insert(others, i, t)
        return game.own_gradient(i, prof)

    if g(0.0) <= 0.0:
        return 0.0
    hi = float(bracket_max)
    limit = float(bracket_max) * 2.0 ** 10
    while g(hi) > 0.0:
        hi *= 2.0
        if hi > limit:
            raise UnboundedBestResponseError(
                f"own-gradient of player {i + 1} stays positive up to {limit:g}"
            )
    lo = 0.0
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def best_response_profile(game: Game, x, bracket_max: float = 10.0) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.empty(game.n_players)
    for i in range(game.n_players):
        out[i] = best_response(game, i, np.delete(x, i), bracket_max)
    return out


def _arrow_field(game: Game, x: np.ndarray) -> np.ndarray:
    out = np.empty(game.n_players)
    for i in range(game.n_players):
        g = game.own_gradient(i, x)
        out[i] = 0.0 if (x[i] == 0.0 and g < 0.0) else g
    return out


def integrate_ode(game: Game, x0, field: str, T: float, dt: float = 0.01,
                  weights=None, box=None, bracket_max: float = 10.0) -> Trajectory:
    """Integrate a comparison dynamic from x0 over [0, T].

    ``dampened`` and ``brd`` are smooth and use fixed-step RK4; ``arrow``
    and ``rosen`` have boundary-discontinuous fields and use forward Euler
    with a clamp to 0 after each step. Every step is recorded. A state
    leaving the bounding box raises :class:`DivergenceError` with the exit
    time.
    """
    x0 = as_profile(x0, game.n_players)
    if dt <= 0.0 or T < dt:
        raise ValueError("need dt > 0 and T >= dt")
    known = ("dampened", "arrow", "rosen", "brd")
    if field not in known:
        raise ValueError(f"unknown field {field!r} (known: {', '.join(known)})")
    hi = _box_array(box, game.n_players)
    r = np.ones(game.n_players) if weights is None else np.asarray(weights, dtype=float)
    if field == "rosen" and (r.shape != (game.n_players,) or np.any(r <= 0.0)):
        raise ValueError("rosen weights must be strictly positive, one per player")

    if field == "dampened":
        f = lambda y: mean_field(game, y)
    elif field == "brd":
        f = lambda y: best_response_profile(game, y, bracket_max) - y
    elif field == "rosen":
        f = lambda y: r * np.array(
            [game.own_gradient(i, y) for i in range(game.n_players)])
    else:
        f = lambda y: _arrow_field(game, y)

    n_steps = int(round(T / dt))
    states = np.empty((n_steps + 1, game.n_players))
    states[0] = x0
    x = x0.copy()
    rk4 = field in ("dampened", "brd")
    for k in range(n_steps):
        if rk4:
            k1 = f(x)
            k2 = f(x + 0.5 * dt * k1)
            k3 = f(x + 0.5 * dt * k2)
            k4 = f(x + dt * k3)
            x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        else:
            x = x + dt * f(x)
            np.clip(x, 0.0, None, out=x)
        if np.any(x > hi) or np.any(x < -1e-12):
            raise DivergenceError(exit_time=(k + 1) * dt, state=x)
        states[k + 1] = x

    meta = {"T": T, "dt": dt, "field": field}
    if field == "rosen":
        meta["weights"] = r.tolist()
    return Trajectory(
        steps=np.arange(n_steps + 1, dtype=np.int64),
        states=states,
        kind=f"ode_{field}",
        game_name=game.name,
        meta=meta,
    )
