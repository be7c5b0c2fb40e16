"""Stationary points of the dampened-gradient field and their structure.

A profile is stationary when every player either sits at 0 or has a
vanishing own-gradient. Stationary points split into Nash equilibria and
"other zeros", where some idle player would strictly gain by moving: those
always carry the idle player's positive own-gradient as an eigenvalue of
the linearization, so they are never linearly stable.

Zeros are located per support pattern: for each subset of active players,
the reduced square system du_i/dx_i = 0 (i active, everyone else at 0) is
solved by multi-start damped Newton seeded from a grid on that face.
Connected continua of zeros are detected by probing segments between found
zeros and are reported as clusters; no stability claim is made for cluster
members.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .dynamics import mean_field
from .games import Game, InteractionGraph, SIGN_TOL, _box_array, as_profile
from .rng import SplitMix64

ZERO_TOL = 1e-8
SUPPORT_TOL = 1e-7
SPEC_TOL = 1e-7
DEDUPE_TOL = 1e-6
CLUSTER_DIST_TOL = 1e-4
CLUSTER_PATH_TOL = 1e-7
_PROBE_POINTS = 21
_MAX_STARTS_PER_SUPPORT = 512


class NumericalFailureError(RuntimeError):
    """An eigenvalue or linear-algebra routine failed to converge."""


class NotAZeroError(ValueError):
    """The profile is not a stationary point of the dampened-gradient field."""


class ZeroClass(str, Enum):
    NASH = "NashEquilibrium"
    OTHER = "OtherZero"


class Stability(str, Enum):
    STABLE = "LinearlyStable"
    UNSTABLE = "LinearlyUnstable"
    MARGINAL = "Marginal"


# ---------------------------------------------------------------------------
# Linearization and spectra
# ---------------------------------------------------------------------------

def mean_field_jacobian(game: Game, x) -> np.ndarray:
    """Jacobian of the dampened-gradient field at x.

    Entry (i, j) is delta_ij * du_i/dx_i + x_i * d^2 u_i / dx_i dx_j; rows of
    idle players collapse to their own-gradient on the diagonal.
    """
    x = as_profile(x, game.n_players)
    n = game.n_players
    J = np.empty((n, n))
    for i in range(n):
        gi = game.own_gradient(i, x)
        for j in range(n):
            J[i, j] = x[i] * game.second_derivative(i, j, x)
            if i == j:
                J[i, j] += gi
    return J


@dataclass(eq=False)
class Spectrum:
    """Eigenvalues (sorted by real part, then imaginary part) and real
    eigenvectors for the simple real eigenvalues, keyed by position."""

    values: np.ndarray
    real_eigenvectors: dict

    def unstable_indices(self, tol: float = SPEC_TOL):
        return [k for k, v in enumerate(self.values) if v.real > tol]


def _inverse_iteration(m: np.ndarray, lam: float, iters: int = 8) -> np.ndarray:
    n = m.shape[0]
    scale = max(1.0, float(np.abs(m).max()))
    shift = lam + 1e-9 * scale
    a = m - shift * np.eye(n)
    v = np.ones(n) / math.sqrt(n)
    for _ in range(iters):
        try:
            w = np.linalg.solve(a, v)
        except np.linalg.LinAlgError:
            shift += 1e-9 * scale
            a = m - shift * np.eye(n)
            continue
        nw = np.linalg.norm(w)
        if not np.isfinite(nw) or nw == 0.0:
            break
        v = w / nw
    k = int(np.argmax(np.abs(v)))
    if v[k] < 0.0:
        v = -v
    return v


def eigen_spectrum(m, sep_tol: float = 1e-7) -> Spectrum:
    """Spectrum of a small dense real matrix, plus eigenvectors where simple.

    Backed by the LAPACK Hessenberg-reduction / shifted-QR driver; real
    eigenvectors are recovered by inverse iteration whenever a real
    eigenvalue is separated from the rest of the spectrum.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"need a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    try:
        vals = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"eigenvalue iteration failed: {exc}") from exc

    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]

    scale = max(1.0, float(np.abs(vals).max()))
    vectors = {}
    for k, lam in enumerate(vals):
        if abs(lam.imag) > sep_tol * scale:
            continue
        gaps = [abs(lam - mu) for j, mu in enumerate(vals) if j != k]
        if gaps and min(gaps) <= sep_tol * scale:
            continue
        v = _inverse_iteration(m, float(lam.real))
        resid = np.linalg.norm(m @ v - lam.real * v)
        if resid <= 1e-6 * scale:
            vectors[k] = v
    return Spectrum(values=vals, real_eigenvectors=vectors)


# ---------------------------------------------------------------------------
# Classification and stability
# ---------------------------------------------------------------------------

def classify_zero(game: Game, x, tol: float = SUPPORT_TOL,
                  zero_tol: float = ZERO_TOL) -> ZeroClass:
    """Nash equilibrium or other zero; requires x to be a verified zero."""
    x = as_profile(x, game.n_players)
    f = mean_field(game, x)
    if np.max(np.abs(f)) > zero_tol:
        raise NotAZeroError(
            f"{x.tolist()} is not a zero: |field|={np.max(np.abs(f)):.3g}"
        )
    for i in range(game.n_players):
        if x[i] <= tol and game.own_gradient(i, x) > tol:
            return ZeroClass.OTHER
    return ZeroClass.NASH


@dataclass(eq=False)
class StationaryPoint:
    """A located isolated zero with its classification and linearization."""

    location: np.ndarray
    support: tuple
    klass: ZeroClass
    eigenvalues: np.ndarray
    stability: Stability
    unstable_directions: list

    @property
    def is_nash(self) -> bool:
        return self.klass is ZeroClass.NASH


def stability_of(game: Game, x, spec_tol: float = SPEC_TOL,
                 support_tol: float = SUPPORT_TOL) -> StationaryPoint:
    """Classify a verified zero and compute its spectral stability."""
    x = as_profile(x, game.n_players)
    klass = classify_zero(game, x, tol=support_tol)
    spec = eigen_spectrum(mean_field_jacobian(game, x))
    re = spec.values.real
    if np.any(re > spec_tol):
        stab = Stability.UNSTABLE
    elif np.all(re < -spec_tol):
        stab = Stability.STABLE
    else:
        stab = Stability.MARGINAL
    if klass is ZeroClass.OTHER and stab is Stability.STABLE:
        raise NumericalFailureError(
            f"other zero at {x.tolist()} classified stable; spectrum "
            f"{spec.values.tolist()} contradicts the idle-player eigenvalue"
        )
    directions = [spec.real_eigenvectors[k] for k in spec.unstable_indices(spec_tol)
                  if k in spec.real_eigenvectors]
    support = tuple(i for i in range(game.n_players) if x[i] > support_tol)
    return StationaryPoint(
        location=x,
        support=support,
        klass=klass,
        eigenvalues=spec.values,
        stability=stab,
        unstable_directions=directions,
    )


# ---------------------------------------------------------------------------
# Zero finding
# ---------------------------------------------------------------------------

def _damped_newton(residual: Callable, jacobian: Callable, z0: np.ndarray,
                   max_iter: int = 200, max_backtracks: int = 40,
                   step_tol: float = 1e-12) -> Optional[np.ndarray]:
    z = z0.copy()
    r = residual(z)
    rn = np.linalg.norm(r)
    if not np.isfinite(rn):
        return None
    for _ in range(max_iter):
        if rn <= 1e-14:
            return z
        J = jacobian(z)
        if not np.all(np.isfinite(J)):
            return None
        try:
            p = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            p = np.linalg.lstsq(J, -r, rcond=None)[0]
        if not np.all(np.isfinite(p)):
            return None
        if np.linalg.norm(p) <= step_tol:
            return z
        t = 1.0
        accepted = False
        for _ in range(max_backtracks + 1):
            zt = z + t * p
            rt = residual(zt)
            rtn = np.linalg.norm(rt)
            if np.isfinite(rtn) and rtn < rn:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            return None
        moved = t * np.linalg.norm(p)
        z, r, rn = zt, rt, rtn
        if moved <= step_tol:
            return z
    return None


def _face_starts(hi_sub: np.ndarray, grid_per_dim: int, seed: int):
    """Interior grid on a face, subsampled deterministically when too large."""
    dims = hi_sub.shape[0]
    total = grid_per_dim ** dims
    axes = [hi_sub[d] * (np.arange(grid_per_dim) + 1.0) / (grid_per_dim + 1.0)
            for d in range(dims)]
    if total <= _MAX_STARTS_PER_SUPPORT:
        return [np.array(pt) for pt in itertools.product(*axes)]
    rng = SplitMix64(seed)
    return [np.array([rng.next_uniform(0.0, hi_sub[d]) for d in range(dims)])
            for _ in range(_MAX_STARTS_PER_SUPPORT)]


@dataclass(eq=False)
class ZeroCluster:
    """A connected set of zeros reported as one record; no stability claim."""

    members: list
    klass: str  # NashEquilibrium | OtherZero | Mixed

    @property
    def representative(self) -> np.ndarray:
        return self.members[0]


@dataclass(eq=False)
class ZeroCatalog:
    """All located stationary points of a game over a box."""

    points: list
    clusters: list
    unresolved_supports: list
    game_name: str
    box: np.ndarray

    def entries(self):
        """(id, location, klass) triples for matching; cluster members share an id."""
        out = []
        for k, p in enumerate(self.points):
            out.append((f"z{k}", p.location, p.klass.value))
        for k, c in enumerate(self.clusters):
            for m in c.members:
                out.append((f"c{k}", m, c.klass))
        return out


def _segment_is_flat(game: Game, a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    for t in np.linspace(0.0, 1.0, _PROBE_POINTS):
        p = (1.0 - t) * a + t * b
        if np.max(np.abs(mean_field(game, p))) > tol:
            return False
    return True


def find_zeros(game: Game, box=None, grid_per_dim: int = 4,
               zero_tol: float = ZERO_TOL, support_tol: float = SUPPORT_TOL,
               dedupe_tol: float = DEDUPE_TOL, seed: int = 0) -> ZeroCatalog:
    """Locate stationary points over the box by per-support Newton solves.

    Supports whose starts all fail to converge are listed as unresolved.
    Zeros connected by a segment of (numerically) vanishing field, or closer
    than 1e-4, merge into clusters.
    """
    n = game.n_players
    if n > 12:
        raise ValueError("support enumeration needs n_players <= 12")
    if grid_per_dim < 2:
        raise ValueError("grid_per_dim must be >= 2")
    hi = _box_array(box, n)

    candidates = []
    unresolved = []
    for mask in range(1 << n):
        support = [i for i in range(n) if mask & (1 << i)]
        if not support:
            candidates.append(np.zeros(n))  # the origin is always stationary
            continue
        idx = np.array(support)

        def embed(z):
            x = np.zeros(n)
            x[idx] = z
            return x

        def residual(z):
            x = embed(z)
            out = np.empty(len(support))
            for k, i in enumerate(support):
                try:
                    out[k] = game.own_gradient(i, x)
                except (ValueError, OverflowError, ZeroDivisionError):
                    out[k] = np.inf
            return out

        def jacobian(z):
            x = embed(z)
            J = np.empty((len(support), len(support)))
            for k, i in enumerate(support):
                for l, j in enumerate(support):
                    try:
                        J[k, l] = game.second_derivative(i, j, x)
                    except (ValueError, OverflowError, ZeroDivisionError):
                        J[k, l] = np.inf
            return J

        converged_any = False
        for z0 in _face_starts(hi[idx], grid_per_dim, seed ^ mask):
            z = _damped_newton(residual, jacobian, z0)
            if z is None:
                continue
            converged_any = True
            z = np.where((z < 0.0) & (z > -1e-12), 0.0, z)
            if np.any(z < 0.0) or np.any(z > hi[idx] + 1e-9):
                continue
            x = embed(z)
            if np.max(np.abs(mean_field(game, x))) <= zero_tol:
                candidates.append(x)
        if not converged_any:
            unresolved.append(tuple(support))

    # dedupe: identical zeros up to dedupe_tol, keep the smaller-residual one
    uniq = []
    for x in sorted(candidates, key=lambda v: tuple(v)):
        placed = False
        for k, y in enumerate(uniq):
            if np.max(np.abs(x - y)) < dedupe_tol:
                if np.max(np.abs(mean_field(game, x))) < np.max(np.abs(mean_field(game, y))):
                    uniq[k] = x
                placed = True
                break
        if not placed:
            uniq.append(x)

    # union-find over probe-connected zeros
    parent = list(range(len(uniq)))

    def root(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(uniq)):
        for b in range(a + 1, len(uniq)):
            if root(a) == root(b):
                continue
            close = np.max(np.abs(uniq[a] - uniq[b])) < CLUSTER_DIST_TOL
            if close or _segment_is_flat(game, uniq[a], uniq[b], CLUSTER_PATH_TOL):
                parent[root(b)] = root(a)

    groups: dict = {}
    for k in range(len(uniq)):
        groups.setdefault(root(k), []).append(uniq[k])

    points = []
    clusters = []
    for members in groups.values():
        if len(members) == 1:
            points.append(stability_of(game, members[0], support_tol=support_tol))
        else:
            members = sorted(members, key=lambda v: tuple(v))
            klasses = {classify_zero(game, m, tol=support_tol).value for m in members}
            klass = klasses.pop() if len(klasses) == 1 else "Mixed"
            clusters.append(ZeroCluster(members=members, klass=klass))

    points.sort(key=lambda p: (p.support, tuple(p.location)))
    clusters.sort(key=lambda c: tuple(c.members[0]))
    return ZeroCatalog(points=points, clusters=clusters,
                       unresolved_supports=sorted(unresolved),
                       game_name=game.name, box=hi)


# ---------------------------------------------------------------------------
# Graph structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    partition: Optional[tuple] = None  # (side_a, side_b) as sorted tuples


def is_bipartite(graph) -> BipartiteResult:
    """BFS 2-coloring per connected component; no odd cycle iff bipartite."""
    adj = graph.adjacency if isinstance(graph, InteractionGraph) else np.asarray(graph)
    n = adj.shape[0]
    sym = (adj != 0) | (adj.T != 0)
    color = np.full(n, -1, dtype=np.int64)
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop(0)
            for w in range(n):
                if not sym[v, w]:
                    continue
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return BipartiteResult(bipartite=False)
    side_a = tuple(int(i) for i in range(n) if color[i] == 0)
    side_b = tuple(int(i) for i in range(n) if color[i] == 1)
    return BipartiteResult(bipartite=True, partition=(side_a, side_b))


# ---------------------------------------------------------------------------
# Noise geometry
# ---------------------------------------------------------------------------

def noise_excitation(game: Game, x, v) -> float:
    """Conditional second moment of the exploration noise along direction v.

    Closed form: sum over pairs i<j of
    (v_i x_i du_i/dx_j + v_j x_j du_j/dx_i)^2. A zero value means the
    stochastic process cannot be pushed along v at x.
    """
    x = as_profile(x, game.n_players)
    v = np.asarray(v, dtype=float)
    if v.shape != x.shape:
        raise ValueError("direction must have one coordinate per player")
    if np.linalg.norm(v) == 0.0:
        raise ValueError("direction must be nonzero")
    total = 0.0
    for i in range(game.n_players):
        for j in range(i + 1, game.n_players):
            term = (v[i] * x[i] * game.cross_gradient(i, j, x)
                    + v[j] * x[j] * game.cross_gradient(j, i, x))
            total += term * term
    return total


# ---------------------------------------------------------------------------
# Potential structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PotentialFunction:
    """A scalar function with a per-coordinate gradient evaluator."""

    eval: Callable[[np.ndarray], float]
    gradient: Callable[[int, np.ndarray], float]


def make_potential(fn: Callable[[np.ndarray], float],
                   gradient=None) -> PotentialFunction:
    if gradient is None:
        def gradient(i, x, _f=fn):
            h = 1e-5
            xp = np.array(x, dtype=float)
            xm = np.array(x, dtype=float)
            xp[i] += h
            xm[i] -= h
            return (_f(xp) - _f(xm)) / (2.0 * h)
    return PotentialFunction(eval=fn, gradient=gradient)


def diamond_potential(alpha: float, delta, cost) -> PotentialFunction:
    """Exact potential of the search game when delta is symmetric."""
    delta = np.asarray(delta, dtype=float)
    if not np.array_equal(delta, delta.T):
        raise ValueError("exact potential needs a symmetric delta")
    n = delta.shape[0]

    def eval_p(x):
        total = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                total += delta[i, j] * x[i] * x[j]
        total *= alpha
        for i in range(n):
            total -= cost.value(x[i])
        return total

    def gradient(i, x):
        s = 0.0
        for j in range(n):
            s += delta[i, j] * x[j]
        return alpha * s - cost.slope(x[i])

    return PotentialFunction(eval=eval_p, gradient=gradient)


@dataclass(frozen=True)
class LopgReport:
    holds: bool
    witness: Optional[dict] = None


def check_lopg(game: Game, p: PotentialFunction, box=None, samples: int = 1000,
               seed: int = 0, tol: float = SIGN_TOL) -> LopgReport:
    """Sampled sign-agreement screen between own-gradients and the potential."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = game.n_players
    hi = _box_array(box, n)
    rng = SplitMix64(seed)
    for _ in range(samples):
        x = np.array([rng.next_uniform(0.0, hi[i]) for i in range(n)])
        for i in range(n):
            su = _sign(game.own_gradient(i, x), tol)
            sp = _sign(p.gradient(i, x), tol)
            if su != sp:
                return LopgReport(holds=False, witness={
                    "player": i, "point": x.tolist(),
                    "own_gradient": game.own_gradient(i, x),
                    "potential_gradient": p.gradient(i, x),
                })
    return LopgReport(holds=True)


def _sign(v: float, tol: float) -> int:
    if v > tol:
        return 1
    if v < -tol:
        return -1
    return 0


# ---------------------------------------------------------------------------
# Concavity structure
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class RosenSample:
    point: np.ndarray
    eigenvalues: np.ndarray   # of G(x,r) + G(x,r)^T, ascending
    A: np.ndarray
    B_sum: np.ndarray
    C: np.ndarray
    decomposition_residual: float


@dataclass(eq=False)
class RosenReport:
    pairwise_holds: bool
    matrix_holds: bool
    witness: Optional[dict]
    samples: list
    weights: np.ndarray


def _weighted_gradient(game: Game, x: np.ndarray, r: np.ndarray) -> np.ndarray:
    return np.array([r[i] * game.own_gradient(i, x) for i in range(game.n_players)])


def check_rosen(game: Game, r=None, box=None, samples: int = 20,
                seed: int = 0) -> RosenReport:
    """Sampled falsifier for diagonal strict concavity with weights r.

    ``pairwise_holds`` checks the defining inner-product inequality on
    sampled pairs; ``matrix_holds`` checks negative definiteness of
    G(x,r) + G(x,r)^T at sampled points. Each sample also carries the
    A - sum_k B^k + C split of G(x,1) + G(x,1)^T for diagnostics (its
    residual should vanish identically). Passing every sample is evidence,
    not proof.
    """
    n = game.n_players
    r = np.ones(n) if r is None else np.asarray(r, dtype=float)
    if r.shape != (n,) or np.any(r <= 0.0):
        raise ValueError("weights must be strictly positive, one per player")
    hi = _box_array(box, n)
    rng = SplitMix64(seed)

    pairwise = True
    matrix = True
    witness = None
    out_samples = []
    for _ in range(samples):
        x = np.array([rng.next_uniform(0.0, hi[i]) for i in range(n)])
        y = np.array([rng.next_uniform(0.0, hi[i]) for i in range(n)])

        if pairwise and np.max(np.abs(x - y)) > 0.0:
            val = float(np.dot(y - x, _weighted_gradient(game, x, r))
                        + np.dot(x - y, _weighted_gradient(game, y, r)))
            if val <= 0.0:
                pairwise = False
                witness = {"kind": "pairwise", "x0": x.tolist(), "x1": y.tolist(),
                           "value": val}

        G = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                G[i, j] = r[i] * game.second_derivative(i, j, x)
        M = G + G.T
        eigs = np.linalg.eigvalsh(M)
        if matrix and eigs[-1] >= 0.0:
            matrix = False
            if witness is None:
                witness = {"kind": "matrix", "point": x.tolist(),
                           "max_eigenvalue": float(eigs[-1])}

        H = np.empty((n, n, n))  # H[k, i, j] = d^2 u_k / dx_i dx_j
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    H[k, i, j] = game.payoff_hessian(k, i, j, x)
        A = np.diag([H[i, i, i] for i in range(n)])
        B_sum = np.zeros((n, n))
        for k in range(n):
            Bk = H[k].copy()
            Bk[k, :] = 0.0
            Bk[:, k] = 0.0
            B_sum += Bk
        C = H.sum(axis=0)
        G1 = np.array([[game.second_derivative(i, j, x) for j in range(n)]
                       for i in range(n)])
        resid = float(np.max(np.abs(A - B_sum + C - (G1 + G1.T))))
        out_samples.append(RosenSample(point=x, eigenvalues=eigs, A=A,
                                       B_sum=B_sum, C=C,
                                       decomposition_residual=resid))

    return RosenReport(pairwise_holds=pairwise, matrix_holds=matrix,
                       witness=witness, samples=out_samples, weights=r)


def local_max_check(p: PotentialFunction, x, radius: float, samples: int,
                    seed: int = 0, tol: float = 1e-9) -> bool:
    """True when no sampled point of the orthant-intersected ball beats P(x)."""
    if radius <= 0.0:
        raise ValueError("radius must be > 0")
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    rng = SplitMix64(seed)
    base = p.eval(x)
    for _ in range(samples):
        d = rng.next_gaussians(n)
        norm = np.linalg.norm(d)
        if norm == 0.0:
            continue
        u = rng.next_uniform()
        y = x + d / norm * radius * u ** (1.0 / n)
        if np.any(y < 0.0):
            continue
        if p.eval(y) > base + tol:
            return False
    return True
