"""Continuous N-player games on the non-negative orthant.

A :class:`Game` bundles per-player payoff evaluators with first- and
second-derivative evaluators. Analytic derivatives are used when supplied
(all built-in games ship them); missing evaluators are filled in with
central finite differences. Player indices are 0-based throughout the code;
serialized artifacts and printed reports label players 1..N.

Built-in game families
----------------------
``public_good``
    u_i(x) = b_i(x_i + sum_j delta_ij x_j) - c_i x_i with b_i increasing
    concave. Constant interaction graph given by the delta matrix.
``diamond_search``
    Search-externality game u_i(x) = alpha x_i sum_j delta_ij x_j - c(x_i).
    The interaction graph depends on the profile: row i empty when x_i = 0.
``appendix_example_1``
    Four players on a cycle with a quadratic benefit tuned so the symmetric
    profile (1/3, 1/3, 1/3, 1/3) is an equilibrium of strategic substitutes.
``appendix_example_2``
    Two-player fixture with anti-symmetric externalities and the closed-form
    equilibrium (1, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .rng import SplitMix64

FD_GRAD_STEP = 1e-5
FD_HESS_STEP = 1e-4
SIGN_TOL = 1e-9
DEFAULT_BOX_HI = 10.0


class EvaluationDomainError(ValueError):
    """A payoff or derivative evaluator produced a non-finite value."""


def as_profile(x, n_players: Optional[int] = None) -> np.ndarray:
    """Validate and convert an action profile (all coordinates >= 0)."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"action profile must be a 1-D vector, got shape {arr.shape}")
    if n_players is not None and arr.shape[0] != n_players:
        raise ValueError(f"expected {n_players} coordinates, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"action profile has non-finite coordinates: {arr}")
    if np.any(arr < 0.0):
        raise ValueError(f"action profile leaves the non-negative orthant: {arr}")
    return arr


def default_box(game: "Game", hi: float = DEFAULT_BOX_HI) -> np.ndarray:
    """Per-coordinate upper bounds of the trusted region (lower bounds are 0)."""
    return np.full(game.n_players, float(hi))


def _box_array(box, n: int) -> np.ndarray:
    if box is None:
        return np.full(n, DEFAULT_BOX_HI)
    arr = np.asarray(box, dtype=float)
    if arr.ndim == 0:
        arr = np.full(n, float(arr))
    if arr.shape != (n,) or np.any(arr <= 0.0) or not np.all(np.isfinite(arr)):
        raise ValueError(f"box must be {n} positive upper bounds, got {box!r}")
    return arr


# ---------------------------------------------------------------------------
# Benefit / cost families (closed-form derivatives, JSON-representable)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogBenefit:
    """b(y) = scale * log(1 + y); strictly increasing and concave."""

    scale: float = 1.0

    def value(self, y: float) -> float:
        return self.scale * math.log1p(y)

    def slope(self, y: float) -> float:
        return self.scale / (1.0 + y)

    def curvature(self, y: float) -> float:
        return -self.scale / ((1.0 + y) * (1.0 + y))


@dataclass(frozen=True)
class QuadraticBenefit:
    """b(y) = a*y + q*(y - y0)^2 with constant second derivative 2q."""

    a: float
    q: float
    y0: float

    def value(self, y: float) -> float:
        d = y - self.y0
        return self.a * y + self.q * d * d

    def slope(self, y: float) -> float:
        return self.a + 2.0 * self.q * (y - self.y0)

    def curvature(self, y: float) -> float:
        return 2.0 * self.q


@dataclass(frozen=True)
class QuadraticCost:
    """c(x) = q2*x^2 + q1*x; the default x^2/2 - x has c(0) = 0."""

    q2: float = 0.5
    q1: float = -1.0

    def value(self, x: float) -> float:
        return self.q2 * x * x + self.q1 * x

    def slope(self, x: float) -> float:
        return 2.0 * self.q2 * x + self.q1

    def curvature(self, x: float) -> float:
        return 2.0 * self.q2


def _benefit_to_json(b) -> dict:
    if isinstance(b, LogBenefit):
        return {"form": "log1p", "scale": b.scale}
    if isinstance(b, QuadraticBenefit):
        return {"form": "quadratic", "a": b.a, "q": b.q, "y0": b.y0}
    raise ValueError(f"benefit {b!r} has no JSON form")


def benefit_from_json(doc: dict):
    form = doc.get("form")
    if form == "log1p":
        return LogBenefit(scale=float(doc.get("scale", 1.0)))
    if form == "quadratic":
        return QuadraticBenefit(a=float(doc["a"]), q=float(doc["q"]), y0=float(doc["y0"]))
    raise ValueError(f"unknown benefit form {form!r} (known: log1p, quadratic)")


def cost_from_json(doc: dict) -> QuadraticCost:
    form = doc.get("form", "quadratic")
    if form != "quadratic":
        raise ValueError(f"unknown cost form {form!r} (known: quadratic)")
    return QuadraticCost(q2=float(doc.get("q2", 0.5)), q1=float(doc.get("q1", -1.0)))


# ---------------------------------------------------------------------------
# Game type
# ---------------------------------------------------------------------------

# Payoff families understood by the compiled simulation kernel.
KERNEL_AGGREGATE = 0   # u_i = b_i(sum_j W_ij x_j) - c_i x_i, W_ii = 1
KERNEL_SEARCH = 1      # u_i = alpha x_i (sum_j delta_ij x_j) - (q2 x_i^2 + q1 x_i)
KERNEL_TWO_PLAYER = 2  # closed-form two-player fixture

BENEFIT_LOG = 0
BENEFIT_QUADRATIC = 1


@dataclass(frozen=True, eq=False)
class KernelSpec:
    """Flat parameterization of a built-in game for the compiled runner."""

    code: int
    W: np.ndarray          # (N, N) aggregation weights / interaction matrix
    bkind: np.ndarray      # (N,) int64 benefit family per player
    bparams: np.ndarray    # (N, 3) benefit parameters per player
    ccoef: np.ndarray      # (N,) linear cost coefficient per player
    alpha: float = 0.0
    q2: float = 0.0
    q1: float = 0.0


@dataclass(frozen=True, eq=False)
class Game:
    """An N-player game given by payoff and derivative evaluators.

    Evaluators are pure functions of (player indices, profile) with no
    shared mutable state, so concurrent evaluation is safe. ``payoff_hessian``
    exposes the full second-derivative tensor of each payoff (needed by the
    concavity diagnostics); the other evaluators match their usual meaning:
    ``own_gradient(i, x)`` is du_i/dx_i, ``cross_gradient(i, j, x)`` is
    du_i/dx_j for j != i and ``second_derivative(i, j, x)`` is
    d^2 u_i / dx_i dx_j.
    """

    n_players: int
    payoff: Callable[[int, np.ndarray], float]
    own_gradient: Callable[[int, np.ndarray], float]
    cross_gradient: Callable[[int, int, np.ndarray], float]
    second_derivative: Callable[[int, int, np.ndarray], float]
    payoff_hessian: Callable[[int, int, int, np.ndarray], float]
    name: str = "custom"
    declared_properties: frozenset = frozenset()
    kernel: Optional[KernelSpec] = None
    descriptor: Optional[dict] = field(default=None, repr=False)

    def gradient(self, k: int, i: int, x: np.ndarray) -> float:
        """du_k/dx_i regardless of whether i is the own coordinate."""
        if i == k:
            return self.own_gradient(k, x)
        return self.cross_gradient(k, i, x)


def _central(f: Callable[[float], float], t: float, h: float) -> float:
    return (f(t + h) - f(t - h)) / (2.0 * h)


def _subst(x: np.ndarray, i: int, t: float) -> np.ndarray:
    y = np.array(x, dtype=float)
    y[i] = t
    return y


def make_game(
    n_players: int,
    payoff: Callable[[int, np.ndarray], float],
    own_gradient=None,
    cross_gradient=None,
    second_derivative=None,
    payoff_hessian=None,
    name: str = "custom",
    declared_properties=(),
    kernel: Optional[KernelSpec] = None,
    descriptor: Optional[dict] = None,
) -> Game:
    """Build a Game, filling missing derivative evaluators by central differences."""
    if n_players < 1:
        raise ValueError("n_players must be >= 1")

    if own_gradient is None:
        def own_gradient(i, x, _p=payoff):
            return _central(lambda t: _p(i, _subst(x, i, t)), x[i], FD_GRAD_STEP)

    if cross_gradient is None:
        def cross_gradient(i, j, x, _p=payoff):
            return _central(lambda t: _p(i, _subst(x, j, t)), x[j], FD_GRAD_STEP)

    def _grad(k, i, x):
        return own_gradient(k, x) if i == k else cross_gradient(k, i, x)

    if second_derivative is None:
        def second_derivative(i, j, x, _g=own_gradient):
            return _central(lambda t: _g(i, _subst(x, j, t)), x[j], FD_HESS_STEP)

    if payoff_hessian is None:
        def payoff_hessian(k, i, j, x, _g=_grad):
            return _central(lambda t: _g(k, i, _subst(x, j, t)), x[j], FD_HESS_STEP)

    return Game(
        n_players=n_players,
        payoff=payoff,
        own_gradient=own_gradient,
        cross_gradient=cross_gradient,
        second_derivative=second_derivative,
        payoff_hessian=payoff_hessian,
        name=name,
        declared_properties=frozenset(declared_properties),
        kernel=kernel,
        descriptor=descriptor,
    )


# ---------------------------------------------------------------------------
# Basic operations
# ---------------------------------------------------------------------------

def eval_payoff(game: Game, x) -> np.ndarray:
    """All players' payoffs at profile x."""
    x = as_profile(x, game.n_players)
    out = np.empty(game.n_players)
    for i in range(game.n_players):
        u = game.payoff(i, x)
        if not math.isfinite(u):
            raise EvaluationDomainError(
                f"payoff of player {i + 1} is non-finite at {x.tolist()}"
            )
        out[i] = u
    return out


@dataclass(frozen=True, eq=False)
class InteractionGraph:
    """0/1 adjacency of nonzero cross-gradients at a base profile."""

    adjacency: np.ndarray
    base_point: np.ndarray
    tolerance: float

    @property
    def n_vertices(self) -> int:
        return self.adjacency.shape[0]

    def edges(self):
        n = self.n_vertices
        return [(i, j) for i in range(n) for j in range(i + 1, n)
                if self.adjacency[i, j] or self.adjacency[j, i]]


def build_interaction_graph(game: Game, x, tol: float = SIGN_TOL) -> InteractionGraph:
    """Graph with an edge (i, j) when |du_i/dx_j| exceeds tol at x."""
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    x = as_profile(x, game.n_players)
    n = game.n_players
    adj = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if i != j and abs(game.cross_gradient(i, j, x)) > tol:
                adj[i, j] = 1
    return InteractionGraph(adjacency=adj, base_point=x, tolerance=tol)


def _sign_band(v: float, tol: float) -> int:
    if v > tol:
        return 1
    if v < -tol:
        return -1
    return 0


@dataclass(frozen=True, eq=False)
class HypothesisReport:
    """Sampled screens for the standing assumptions; failures carry a witness.

    These are necessary-condition checks at finitely many points, not proofs.
    ``payoff_lipschitz_inf`` is the largest sampled 1-norm of a payoff
    gradient, an empirical sup-norm Lipschitz constant over the box.
    """

    single_peaked: bool
    symmetric_externalities: bool
    boundary_condition: bool
    strategic_complements: bool
    witnesses: dict
    payoff_lipschitz_inf: float

    @property
    def flags(self):
        return (self.single_peaked, self.symmetric_externalities,
                self.boundary_condition, self.strategic_complements)


def check_hypotheses(
    game: Game,
    box=None,
    samples: int = 100,
    seed: int = 0,
    tol: float = SIGN_TOL,
    grid: int = 41,
) -> HypothesisReport:
    """Screen the structural hypotheses on sampled profiles inside the box."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = game.n_players
    hi = _box_array(box, n)
    rng = SplitMix64(seed)

    single_peaked = True
    symmetric = True
    complements = True
    witnesses: dict = {}
    lip = 0.0

    origin = np.zeros(n)
    boundary = True
    for i in range(n):
        if game.own_gradient(i, origin) <= tol:
            boundary = False
            witnesses.setdefault(
                "boundary_condition",
                {"player": i, "point": origin.tolist(),
                 "value": game.own_gradient(i, origin)},
            )
            break

    for _ in range(samples):
        x = np.array([rng.next_uniform(0.0, hi[i]) for i in range(n)])

        grads = np.array([[game.gradient(i, j, x) for j in range(n)] for i in range(n)])
        lip = max(lip, float(np.abs(grads).sum(axis=1).max()))

        if single_peaked:
            for i in range(n):
                ts = np.linspace(0.0, hi[i], grid)
                signs = [_sign_band(game.own_gradient(i, _subst(x, i, t)), tol)
                         for t in ts]
                seq = [s for s in signs if s != 0]
                if any(a < b for a, b in zip(seq, seq[1:])):
                    single_peaked = False
                    witnesses["single_peaked"] = {"player": i, "point": x.tolist()}
                    break

        if symmetric:
            for i in range(n):
                for j in range(i + 1, n):
                    if _sign_band(grads[i, j], tol) != _sign_band(grads[j, i], tol):
                        symmetric = False
                        witnesses["symmetric_externalities"] = {
                            "players": (i, j), "point": x.tolist(),
                            "values": (grads[i, j], grads[j, i]),
                        }
                        break
                if not symmetric:
                    break

        if complements:
            for i in range(n):
                for j in range(n):
                    if i != j and game.second_derivative(i, j, x) < -tol:
                        complements = False
                        witnesses["strategic_complements"] = {
                            "players": (i, j), "point": x.tolist(),
                            "value": game.second_derivative(i, j, x),
                        }
                        break
                if not complements:
                    break

    return HypothesisReport(
        single_peaked=single_peaked,
        symmetric_externalities=symmetric,
        boundary_condition=boundary,
        strategic_complements=complements,
        witnesses=witnesses,
        payoff_lipschitz_inf=lip,
    )


# ---------------------------------------------------------------------------
# Built-in games
# ---------------------------------------------------------------------------

def _check_delta(delta, n: Optional[int] = None) -> np.ndarray:
    d = np.asarray(delta, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"delta must be a square matrix, got shape {d.shape}")
    if n is not None and d.shape[0] != n:
        raise ValueError(f"delta must be {n}x{n}, got {d.shape[0]}x{d.shape[0]}")
    if np.any(d < 0.0):
        raise ValueError("delta entries must be non-negative")
    if np.any(np.diag(d) != 0.0):
        raise ValueError("delta must have a zero diagonal")
    return d


def complete_graph_delta(n: int) -> np.ndarray:
    return np.ones((n, n)) - np.eye(n)


def cycle_delta(n: int) -> np.ndarray:
    d = np.zeros((n, n))
    for i in range(n):
        d[i, (i + 1) % n] = 1.0
        d[i, (i - 1) % n] = 1.0
    return d


def _per_player(value, n: int, kinds) -> list:
    if isinstance(value, kinds):
        return [value] * n
    vals = list(value)
    if len(vals) != n:
        raise ValueError(f"expected {n} per-player values, got {len(vals)}")
    return vals


def public_good_game(benefits, costs, delta, name: str = "public_good") -> Game:
    """Effort-contribution game u_i = b_i(x_i + sum_j delta_ij x_j) - c_i x_i."""
    delta = _check_delta(delta)
    n = delta.shape[0]
    bs = _per_player(benefits, n, (LogBenefit, QuadraticBenefit))
    cs = [float(c) for c in _per_player(costs, n, (int, float))]
    W = np.eye(n) + delta

    def aggregate(i, x):
        s = 0.0
        for j in range(n):
            s += W[i, j] * x[j]
        return s

    def payoff(i, x):
        return bs[i].value(aggregate(i, x)) - cs[i] * x[i]

    def own_gradient(i, x):
        return bs[i].slope(aggregate(i, x)) - cs[i]

    def cross_gradient(i, j, x):
        return bs[i].slope(aggregate(i, x)) * W[i, j]

    def second_derivative(i, j, x):
        return bs[i].curvature(aggregate(i, x)) * W[i, j]

    def payoff_hessian(k, i, j, x):
        return bs[k].curvature(aggregate(k, x)) * W[k, i] * W[k, j]

    bkind = np.array(
        [BENEFIT_LOG if isinstance(b, LogBenefit) else BENEFIT_QUADRATIC for b in bs],
        dtype=np.int64,
    )
    bparams = np.zeros((n, 3))
    for i, b in enumerate(bs):
        if isinstance(b, LogBenefit):
            bparams[i, 0] = b.scale
        else:
            bparams[i] = (b.a, b.q, b.y0)
    kernel = KernelSpec(
        code=KERNEL_AGGREGATE, W=W, bkind=bkind, bparams=bparams,
        ccoef=np.array(cs),
    )
    descriptor = {
        "type": "public_good",
        "params": {
            "b": [_benefit_to_json(b) for b in bs],
            "c": cs,
            "delta": delta.tolist(),
        },
    }
    return make_game(
        n, payoff, own_gradient, cross_gradient, second_derivative, payoff_hessian,
        name=name,
        declared_properties={"symmetric_externalities", "lopg"},
        kernel=kernel,
        descriptor=descriptor,
    )


def diamond_search_game(
    alpha: float,
    delta,
    cost: QuadraticCost = QuadraticCost(),
    name: str = "diamond_search",
) -> Game:
    """Search-externality game u_i = alpha x_i sum_j delta_ij x_j - c(x_i)."""
    delta = _check_delta(delta)
    n = delta.shape[0]
    alpha = float(alpha)

    def neighbor_sum(i, x):
        s = 0.0
        for j in range(n):
            s += delta[i, j] * x[j]
        return s

    def payoff(i, x):
        return alpha * x[i] * neighbor_sum(i, x) - (cost.q2 * x[i] * x[i] + cost.q1 * x[i])

    def own_gradient(i, x):
        return alpha * neighbor_sum(i, x) - cost.slope(x[i])

    def cross_gradient(i, j, x):
        return alpha * x[i] * delta[i, j]

    def second_derivative(i, j, x):
        if i == j:
            return -cost.curvature(x[i])
        return alpha * delta[i, j]

    def payoff_hessian(k, i, j, x):
        if i == k and j == k:
            return -cost.curvature(x[k])
        if i == k:
            return alpha * delta[k, j]
        if j == k:
            return alpha * delta[k, i]
        return 0.0

    kernel = KernelSpec(
        code=KERNEL_SEARCH, W=delta,
        bkind=np.zeros(n, dtype=np.int64), bparams=np.zeros((n, 3)),
        ccoef=np.zeros(n), alpha=alpha, q2=cost.q2, q1=cost.q1,
    )
    descriptor = {
        "type": "diamond_search",
        "params": {
            "alpha": alpha,
            "delta": delta.tolist(),
            "cost": {"form": "quadratic", "q2": cost.q2, "q1": cost.q1},
        },
    }
    declared = {"symmetric_externalities", "lopg"}
    if alpha > 0.0:
        declared.add("strategic_complements")
    if np.array_equal(delta, delta.T):
        declared.add("rosen")
    return make_game(
        n, payoff, own_gradient, cross_gradient, second_derivative, payoff_hessian,
        name=name, declared_properties=declared, kernel=kernel, descriptor=descriptor,
    )


def appendix_example_1_game(
    a: float = 1.0, q: float = -1.5, y0: float = 1.0, c: float = 1.0
) -> Game:
    """Four players on a cycle with quadratic benefit; strategic substitutes.

    The parameters must keep the defining constraints b'(1) = c and
    b''(1) = -3, which pin the symmetric stationary profile at 1/3 and its
    closed-form spectrum.
    """
    b = QuadraticBenefit(a=a, q=q, y0=y0)
    if abs(b.slope(1.0) - c) > 1e-12:
        raise ValueError(f"parameters must satisfy b'(1) = c, got {b.slope(1.0)} != {c}")
    if abs(b.curvature(1.0) + 3.0) > 1e-12:
        raise ValueError(f"parameters must satisfy b''(1) = -3, got {b.curvature(1.0)}")
    game = public_good_game([b] * 4, [c] * 4, cycle_delta(4), name="appendix_example_1")
    return replace(
        game,
        declared_properties=frozenset(),
        descriptor={"type": "appendix_example_1",
                    "params": {"a": a, "q": q, "y0": y0, "c": c}},
    )


def appendix_example_2_game() -> Game:
    """Two-player fixture with anti-symmetric externalities; (1, 1) is a zero."""

    def payoff(i, x):
        x1 = x[0]
        x2 = x[1]
        d = 2.0 - x2
        if i == 0:
            return -0.5 * x1 * x1 + 2.0 * x1 - x1 * d * d
        return -0.5 * x2 * x2 - x1 * x1 * d

    def own_gradient(i, x):
        if i == 0:
            d = 2.0 - x[1]
            return -x[0] + 2.0 - d * d
        return -x[1] + x[0] * x[0]

    def cross_gradient(i, j, x):
        d = 2.0 - x[1]
        if i == 0:
            return 2.0 * x[0] * d
        return -2.0 * x[0] * d

    def second_derivative(i, j, x):
        if i == j:
            return -1.0
        return 2.0 * (2.0 - x[1]) if i == 0 else 2.0 * x[0]

    def payoff_hessian(k, i, j, x):
        if k == 0:
            h = np.array([[-1.0, 2.0 * (2.0 - x[1])],
                          [2.0 * (2.0 - x[1]), -2.0 * x[0]]])
        else:
            h = np.array([[-2.0 * (2.0 - x[1]), 2.0 * x[0]],
                          [2.0 * x[0], -1.0]])
        return h[i, j]

    kernel = KernelSpec(
        code=KERNEL_TWO_PLAYER, W=np.zeros((2, 2)),
        bkind=np.zeros(2, dtype=np.int64), bparams=np.zeros((2, 3)),
        ccoef=np.zeros(2),
    )
    return make_game(
        2, payoff, own_gradient, cross_gradient, second_derivative, payoff_hessian,
        name="appendix_example_2",
        declared_properties={"strategic_complements"},
        kernel=kernel,
        descriptor={"type": "appendix_example_2", "params": {}},
    )


def builtin_game(kind: str, **params) -> Game:
    """Construct a built-in game from its descriptor type and parameters."""
    if kind == "public_good":
        b = params["b"]
        if isinstance(b, dict):
            b = benefit_from_json(b)
        elif isinstance(b, (list, tuple)) and b and isinstance(b[0], dict):
            b = [benefit_from_json(d) for d in b]
        return public_good_game(b, params["c"], params["delta"])
    if kind == "diamond_search":
        cost = params.get("cost", QuadraticCost())
        if isinstance(cost, dict):
            cost = cost_from_json(cost)
        return diamond_search_game(params["alpha"], params["delta"], cost)
    if kind == "appendix_example_1":
        return appendix_example_1_game(
            a=params.get("a", 1.0), q=params.get("q", -1.5),
            y0=params.get("y0", 1.0), c=params.get("c", 1.0),
        )
    if kind == "appendix_example_2":
        return appendix_example_2_game()
    raise ValueError(
        f"unknown game type {kind!r} (known: public_good, diamond_search, "
        f"appendix_example_1, appendix_example_2)"
    )


def game_from_json(doc: dict) -> Game:
    """Load a game from its JSON document {"type": ..., "params": {...}}."""
    if "type" not in doc:
        raise ValueError('game document must have a "type" field')
    return builtin_game(doc["type"], **doc.get("params", {}))


# Named, fully configured instances available to the CLI and tests.
GAME_REGISTRY: dict[str, Callable[[], Game]] = {
    "appendix_example_1": appendix_example_1_game,
    "appendix_example_2": appendix_example_2_game,
    "diamond_search_k3": lambda: diamond_search_game(
        0.2, complete_graph_delta(3), name="diamond_search_k3"
    ),
    "diamond_search_k4": lambda: diamond_search_game(
        0.15, complete_graph_delta(4), name="diamond_search_k4"
    ),
    "public_good_pair": lambda: public_good_game(
        LogBenefit(), 0.5, [[0.0, 1.0], [1.0, 0.0]], name="public_good_pair"
    ),
    "public_good_decoupled": lambda: public_good_game(
        LogBenefit(), 0.5, np.zeros((2, 2)), name="public_good_decoupled"
    ),
    "public_good_trio": lambda: public_good_game(
        LogBenefit(), 0.5, 0.25 * complete_graph_delta(3), name="public_good_trio"
    ),
}

GAME_DESCRIPTIONS: dict[str, str] = {
    "appendix_example_1": "4-player cycle, quadratic benefit, strategic substitutes",
    "appendix_example_2": "2-player fixture with anti-symmetric externalities",
    "diamond_search_k3": "search externalities, alpha=0.2, complete triangle",
    "diamond_search_k4": "search externalities, alpha=0.15, complete 4-clique",
    "public_good_pair": "2 players, log benefit, c=0.5, fully substitutable efforts",
    "public_good_decoupled": "2 players, log benefit, c=0.5, no interaction",
    "public_good_trio": "3 players, log benefit, c=0.5, delta=0.25 everywhere",
}


def registry_game(name: str) -> Game:
    try:
        return GAME_REGISTRY[name]()
    except KeyError:
        raise ValueError(
            f"unknown game {name!r} (known: {', '.join(sorted(GAME_REGISTRY))})"
        ) from None


def fixture_games() -> list[Game]:
    """The canonical instances exercised by the cross-cutting property tests."""
    return [
        registry_game("diamond_search_k3"),
        registry_game("appendix_example_1"),
        registry_game("appendix_example_2"),
        registry_game("public_good_pair"),
    ]


def interior_samples(game: Game, count: int, seed: int, box=None, margin: float = 0.05):
    """Seeded interior sample profiles, bounded away from the boundary."""
    hi = _box_array(box, game.n_players)
    rng = SplitMix64(seed)
    pts = []
    for _ in range(count):
        pts.append(np.array([
            rng.next_uniform(margin * hi[i], hi[i] * (1.0 - margin))
            for i in range(game.n_players)
        ]))
    return pts
