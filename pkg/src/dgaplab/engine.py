"""Compiled single-run simulator for the built-in game families.

The payoff families are re-implemented here in nopython mode, keyed by the
integer code carried on a game's :class:`~dgaplab.games.KernelSpec`. The
expressions mirror the pure-Python evaluators term for term so both paths
produce the same floats for the polynomial families. Kernels release the
GIL, so chunked runs can execute on worker threads; results never depend
on the chunking because every run owns a counter-based stream.

Status codes returned by :func:`dgap_run`:
  0  completed n_steps
  1  an exploration point left the orthant (start condition too weak)
  2  the state left the bounding box (divergence)
  3  a state coordinate became non-positive (internal error upstream)
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

STATUS_OK = 0
STATUS_START_CONDITION = 1
STATUS_ESCAPED = 2
STATUS_NONPOSITIVE = 3

_GOLDEN = uint64(0x9E3779B97F4A7C15)
_MIX1 = uint64(0xBF58476D1CE4E5B9)
_MIX2 = uint64(0x94D049BB133111EB)


@njit(cache=True, nogil=True, inline="always")
def _word(seed, k):
    z = uint64(seed) + (uint64(k) + uint64(1)) * _GOLDEN
    z = (z ^ (z >> uint64(30))) * _MIX1
    z = (z ^ (z >> uint64(27))) * _MIX2
    return z ^ (z >> uint64(31))


@njit(cache=True, nogil=True)
def _payoffs(code, W, bkind, bparams, ccoef, alpha, q2, q1, x, out):
    n = x.shape[0]
    if code == 0:
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += W[i, j] * x[j]
            if bkind[i] == 0:
                b = bparams[i, 0] * np.log1p(s)
            else:
                d = s - bparams[i, 2]
                b = bparams[i, 0] * s + bparams[i, 1] * d * d
            out[i] = b - ccoef[i] * x[i]
    elif code == 1:
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += W[i, j] * x[j]
            out[i] = alpha * x[i] * s - (q2 * x[i] * x[i] + q1 * x[i])
    else:
        x1 = x[0]
        x2 = x[1]
        d = 2.0 - x2
        out[0] = -0.5 * x1 * x1 + 2.0 * x1 - x1 * d * d
        out[1] = -0.5 * x2 * x2 - x1 * x1 * d


@njit(cache=True, nogil=True)
def dgap_run(code, W, bkind, bparams, ccoef, alpha_g, q2, q1,
             x0, seed, n_steps, start_index, gamma, scale,
             record_every, box_hi, rec_n, rec_states):
    """Run one trajectory; fill the record buffers in place.

    Returns (status, stop_step, n_recorded, min_coordinate) where stop_step
    is the number of completed updates and min_coordinate the smallest state
    coordinate seen over the whole run (recorded or not).
    """
    n = x0.shape[0]
    x = x0.copy()
    xn = np.empty(n)
    expl = np.empty(n)
    u0 = np.empty(n)
    u1 = np.empty(n)
    signs = np.empty(n)

    nrec = 0
    rec_n[nrec] = start_index
    for i in range(n):
        rec_states[nrec, i] = x[i]
    nrec += 1

    min_coord = x[0]
    for i in range(n):
        if x[i] < min_coord:
            min_coord = x[i]

    status = STATUS_OK
    stop = 0
    for m in range(n_steps):
        idx = start_index + m
        if gamma == 1.0:
            a = scale / (idx + 1.0)
        else:
            a = scale / (idx + 1.0) ** gamma

        bad = False
        for i in range(n):
            w = _word(seed, m * n + i)
            s = 1.0 if w & uint64(1) else -1.0
            signs[i] = s
            e = x[i] + a * s
            if e < 0.0:
                status = STATUS_START_CONDITION
                bad = True
                break
            expl[i] = e
        if bad:
            stop = m
            break

        _payoffs(code, W, bkind, bparams, ccoef, alpha_g, q2, q1, x, u0)
        _payoffs(code, W, bkind, bparams, ccoef, alpha_g, q2, q1, expl, u1)

        for i in range(n):
            du = u1[i] - u0[i]
            xi = x[i] * (1.0 + signs[i] * du)
            if xi <= 0.0 or not np.isfinite(xi):
                status = STATUS_NONPOSITIVE
                bad = True
                break
            if xi > box_hi[i]:
                status = STATUS_ESCAPED
                bad = True
                break
            xn[i] = xi
        if bad:
            stop = m
            break

        for i in range(n):
            x[i] = xn[i]
            if x[i] < min_coord:
                min_coord = x[i]
        stop = m + 1

        if (m + 1) % record_every == 0:
            rec_n[nrec] = idx + 1
            for i in range(n):
                rec_states[nrec, i] = x[i]
            nrec += 1

    if rec_n[nrec - 1] != start_index + stop:
        rec_n[nrec] = start_index + stop
        for i in range(n):
            rec_states[nrec, i] = x[i]
        nrec += 1

    return status, stop, nrec, min_coord


def record_capacity(n_steps: int, record_every: int) -> int:
    return 2 + n_steps // record_every


def run_with_kernel(kernel, x0, seed, n_steps, start_index, gamma, scale,
                    record_every, box_hi):
    """Allocate record buffers and execute one compiled run."""
    n = x0.shape[0]
    cap = record_capacity(n_steps, record_every)
    rec_n = np.zeros(cap, dtype=np.int64)
    rec_states = np.zeros((cap, n))
    status, stop, nrec, min_coord = dgap_run(
        kernel.code, kernel.W, kernel.bkind, kernel.bparams, kernel.ccoef,
        kernel.alpha, kernel.q2, kernel.q1,
        np.asarray(x0, dtype=float), np.uint64(seed),
        n_steps, start_index, gamma, scale, record_every,
        np.asarray(box_hi, dtype=float), rec_n, rec_states,
    )
    return status, stop, rec_n[:nrec], rec_states[:nrec], min_coord


def run_pure_python(game, x0, seed, n_steps, start_index, gamma, scale,
                    record_every, box_hi):
    """Reference implementation for games without a kernel; same contract."""
    from .rng import word as _pyword

    n = game.n_players
    x = np.asarray(x0, dtype=float).copy()
    cap = record_capacity(n_steps, record_every)
    rec_n = np.zeros(cap, dtype=np.int64)
    rec_states = np.zeros((cap, n))
    nrec = 0
    rec_n[nrec] = start_index
    rec_states[nrec] = x
    nrec += 1
    min_coord = float(x.min())
    box_hi = np.asarray(box_hi, dtype=float)

    status = STATUS_OK
    stop = 0
    signs = np.empty(n)
    expl = np.empty(n)
    xn = np.empty(n)
    for m in range(n_steps):
        idx = start_index + m
        if gamma == 1.0:
            a = scale / (idx + 1.0)
        else:
            a = scale / (idx + 1.0) ** gamma

        bad = False
        for i in range(n):
            s = 1.0 if _pyword(seed, m * n + i) & 1 else -1.0
            signs[i] = s
            e = x[i] + a * s
            if e < 0.0:
                status = STATUS_START_CONDITION
                bad = True
                break
            expl[i] = e
        if bad:
            stop = m
            break

        for i in range(n):
            du = game.payoff(i, expl) - game.payoff(i, x)
            xi = x[i] * (1.0 + signs[i] * du)
            if xi <= 0.0 or not np.isfinite(xi):
                status = STATUS_NONPOSITIVE
                bad = True
                break
            if xi > box_hi[i]:
                status = STATUS_ESCAPED
                bad = True
                break
            xn[i] = xi
        if bad:
            stop = m
            break

        x[:] = xn
        mc = float(x.min())
        if mc < min_coord:
            min_coord = mc
        stop = m + 1

        if (m + 1) % record_every == 0:
            rec_n[nrec] = idx + 1
            rec_states[nrec] = x
            nrec += 1

    if rec_n[nrec - 1] != start_index + stop:
        rec_n[nrec] = start_index + stop
        rec_states[nrec] = x
        nrec += 1

    return status, stop, rec_n[:nrec], rec_states[:nrec], min_coord
