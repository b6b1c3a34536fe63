"""Efficient-frontier structure: efficient set, extreme efficient DMUs, maximal friends."""
from __future__ import annotations

import logging
from itertools import combinations

import numpy as np

from .additive import additive_solve
from .data import DeaData
from .lp import LpBuilder, solve
from .results import EFF_TOL, add_rts_rows, rts_limits

log = logging.getLogger(__name__)


def _scale_weights(Xr: np.ndarray, Yr: np.ndarray):
    """Slack weights 1/mean|row| so the additive objective is unit free."""
    def inv(M):
        mean = np.abs(M).mean(axis=1)
        return np.where(mean > 0, 1.0 / np.where(mean > 0, mean, 1.0), 1.0)
    return inv(Xr), inv(Yr)


def _is_on_frontier(x, y, Xr, Yr, lo, hi, w_in, w_out) -> bool:
    sol = additive_solve(x, y, Xr, Yr, lo, hi, w_in=w_in, w_out=w_out)
    return sol.status == "optimal" and sol.score <= EFF_TOL


def efficient_dmus(data: DeaData, rts: str = "crs", L: float = 1.0, U: float = 1.0,
                   dmu_ref=None) -> np.ndarray:
    """DMUs of ``dmu_ref`` that are (strongly) efficient against ``dmu_ref``."""
    lo, hi = rts_limits(rts, L, U)
    ref = data.index(dmu_ref)
    Xr, Yr = data.input[:, ref], data.output[:, ref]
    w_in, w_out = _scale_weights(Xr, Yr)
    keep = [j for j in ref
            if _is_on_frontier(data.input[:, j], data.output[:, j], Xr, Yr, lo, hi, w_in, w_out)]
    return np.asarray(keep, dtype=int)


def extreme_efficient(data: DeaData, rts: str = "crs", L: float = 1.0, U: float = 1.0,
                      dmu_ref=None) -> np.ndarray:
    """Efficient DMUs that are not a combination (under ``rts``) of the other efficient DMUs.

    Returns sorted data indices.
    """
    lo, hi = rts_limits(rts, L, U)
    eff = efficient_dmus(data, rts, L, U, dmu_ref)
    out = []
    for j in eff:
        others = [k for k in eff if k != j]
        if not others:
            out.append(int(j))
            continue
        b = LpBuilder()
        b.add_vars("lambda", len(others))
        for i in range(data.m):
            b.add_row({"lambda": data.input[i, others]}, "=", data.input[i, j])
        for r in range(data.s):
            b.add_row({"lambda": data.output[r, others]}, "=", data.output[r, j])
        add_rts_rows(b, "lambda", lo, hi)
        if solve(b.build()).status == "infeasible":
            out.append(int(j))
    return np.asarray(out, dtype=int)


def maximal_friends(data: DeaData, rts: str = "crs", L: float = 1.0, U: float = 1.0,
                    dmu_ref=None, silent: bool = True) -> list[tuple[int, ...]]:
    """Maximal friends subsets (facets of the efficient frontier).

    A set of efficient DMUs is a friends set when its barycenter is
    efficient against ``dmu_ref``; friends sets are closed under taking
    subsets, so the search grows sets one DMU at a time and only tests
    candidates whose subsets all passed.

    Returns
    -------
    list of tuple of int
        Data indices, largest facets first, lexicographic within a size.
    """
    lo, hi = rts_limits(rts, L, U)
    ref = data.index(dmu_ref)
    Xr, Yr = data.input[:, ref], data.output[:, ref]
    w_in, w_out = _scale_weights(Xr, Yr)
    eff = sorted(int(j) for j in efficient_dmus(data, rts, L, U, ref))
    level = [(j,) for j in eff]
    friends = set(level)
    levels = [level]
    while level:
        nxt = []
        for a, b in combinations(level, 2):
            if a[:-1] != b[:-1]:
                continue
            cand = a + (b[-1],)
            if any(sub not in friends for sub in combinations(cand, len(cand) - 1)):
                continue
            cols = list(cand)
            x = data.input[:, cols].mean(axis=1)
            y = data.output[:, cols].mean(axis=1)
            if _is_on_frontier(x, y, Xr, Yr, lo, hi, w_in, w_out):
                nxt.append(cand)
        friends.update(nxt)
        if not silent:
            log.info("maximal friends: %d sets of size %d", len(nxt), len(level[0]) + 1 if level else 0)
        levels.append(nxt)
        level = nxt
    maximal = []
    for size_idx in range(len(levels) - 1):
        bigger = levels[size_idx + 1]
        for f in levels[size_idx]:
            if not any(set(f) <= set(g) for g in bigger):
                maximal.append(f)
    maximal.sort(key=lambda f: (-len(f), f))
    return maximal
