"""Additive and additive-Min (closest target) models."""
from __future__ import annotations

import numpy as np

from .data import DeaData
from .lp import LinearProgram, LpBuilder, solve
from .results import (DeaResult, DmuSolution, add_rts_rows, assemble, broadcast, na_solution,
                      parallel_map, rts_limits)


def additive_program(x_o, y_o, Xr, Yr, lo, hi, ki, ko, w_in, w_out,
                     minimize: bool = False) -> LinearProgram:
    """Weighted-slack program over reference columns.

    Discretionary rows: ``X lambda + s- = x_o`` and ``Y lambda - s+ = y_o``.
    Undesirable inputs (good inputs) and outputs (bad outputs) flip the slack
    sign. Non-controllable rows are equalities without slack;
    non-discretionary rows are treated as discretionary. ``minimize`` gives
    the facet program of the additive-Min model.
    """
    m, nref = Xr.shape
    s = Yr.shape[0]
    b = LpBuilder()
    b.add_vars("lambda", nref)
    b.add_vars("s_in", m)
    b.add_vars("s_out", s)
    for i in range(m):
        e = np.zeros(m)
        if ki[i] != "nc":
            e[i] = -1.0 if ki[i] == "ud" else 1.0
        b.add_row({"lambda": Xr[i], "s_in": e}, "=", x_o[i])
    for r in range(s):
        e = np.zeros(s)
        if ko[r] != "nc":
            e[r] = 1.0 if ko[r] == "ud" else -1.0
        b.add_row({"lambda": Yr[r], "s_out": e}, "=", y_o[r])
    add_rts_rows(b, "lambda", lo, hi)
    for i in np.flatnonzero(ki == "nc"):
        b.set_bound("s_in", i, 0.0, 0.0)
    for r in np.flatnonzero(ko == "nc"):
        b.set_bound("s_out", r, 0.0, 0.0)
    b.set_objective({"s_in": w_in, "s_out": w_out})
    return b.build(maximize=not minimize)


def additive_solve(x_o, y_o, Xr, Yr, lo=None, hi=None, ki=None, ko=None, w_in=None, w_out=None,
                   minimize: bool = False) -> DmuSolution:
    m, nref = Xr.shape
    s = Yr.shape[0]
    ki = np.full(m, "d", dtype=object) if ki is None else ki
    ko = np.full(s, "d", dtype=object) if ko is None else ko
    w_in = np.ones(m) if w_in is None else w_in
    w_out = np.ones(s) if w_out is None else w_out
    if nref == 0:
        return na_solution("empty_reference", 0, m, s)
    sol = solve(additive_program(x_o, y_o, Xr, Yr, lo, hi, ki, ko, w_in, w_out, minimize))
    if not sol.ok:
        return na_solution(sol.status, nref, m, s)
    lam = sol.x[:nref]
    lam = np.where(np.abs(lam) < 1e-12, 0.0, lam)
    return DmuSolution(status="optimal", score=sol.objective + 0.0, lambdas=lam,
                       slack_input=sol.x[nref:nref + m] + 0.0, slack_output=sol.x[nref + m:] + 0.0,
                       target_input=Xr @ lam, target_output=Yr @ lam)


def _weights(data, k, weight_slack_i, weight_slack_o, orientation):
    w_in = broadcast(weight_slack_i, data.m, k, "weight_slack_i")
    w_out = broadcast(weight_slack_o, data.s, k, "weight_slack_o")
    if orientation == "io":
        w_out = np.zeros_like(w_out)
    elif orientation == "oo":
        w_in = np.zeros_like(w_in)
    elif orientation is not None:
        raise ValueError(f"orientation must be None, 'io' or 'oo', got {orientation!r}")
    if np.any(w_in < 0) or np.any(w_out < 0) or np.any(~np.isfinite(w_in)) \
            or np.any(~np.isfinite(w_out)):
        raise ValueError("slack weights must be finite and nonnegative")
    if np.any((w_in.sum(axis=1) + w_out.sum(axis=1)) == 0):
        raise ValueError("slack weights are all zero for some evaluated DMU")
    return w_in, w_out


def model_additive(data: DeaData, orientation=None, rts: str = "crs", L: float = 1.0,
                   U: float = 1.0, weight_slack_i=1.0, weight_slack_o=1.0, dmu_eval=None,
                   dmu_ref=None, returnlp: bool = False, n_jobs: int = 1):
    """Additive model: maximize weighted input and output slacks.

    The score is the optimal weighted slack sum (0 for efficient DMUs).
    ``orientation="io"`` zeroes output weights and ``"oo"`` zeroes input
    weights. Unit-invariant variants are obtained through the weights, e.g.
    ``weight_slack_i=1/data.input`` for MIP or range-based weights for RAM.
    """
    lo, hi = rts_limits(rts, L, U)
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    k = len(eval_idx)
    w_in, w_out = _weights(data, k, weight_slack_i, weight_slack_o, orientation)
    ki, ko = data.input_kinds(), data.output_kinds()
    Xr, Yr = data.input[:, ref_idx], data.output[:, ref_idx]
    if returnlp:
        return [additive_program(data.input[:, j], data.output[:, j], Xr, Yr, lo, hi, ki, ko,
                                 w_in[a], w_out[a]) for a, j in enumerate(eval_idx)]

    def one(a):
        j = eval_idx[a]
        return additive_solve(data.input[:, j], data.output[:, j], Xr, Yr, lo, hi, ki, ko,
                              w_in[a], w_out[a])

    sols = parallel_map(one, range(k), n_jobs)
    return assemble(sols, modelname="additive", orientation=orientation, rts=rts, data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx,
                    params={"L": L, "U": U, "efficient_value": 0.0,
                            "weight_slack_i": w_in.T.tolist(), "weight_slack_o": w_out.T.tolist()})


def resolve_facets(data: DeaData, maxfr, rts, L, U, ref_idx) -> list[tuple[int, ...]]:
    """Facets as tuples of data indices, computed when ``maxfr`` is None."""
    if maxfr is None:
        from .frontier import maximal_friends
        return maximal_friends(data, rts=rts, L=L, U=U, dmu_ref=ref_idx, silent=True)
    facets = [tuple(int(j) for j in data.index(list(f))) for f in maxfr]
    allowed = set(int(j) for j in ref_idx)
    for f in facets:
        if not set(f) <= allowed:
            raise ValueError("maxfr facets must only contain DMUs of dmu_ref")
    return facets


def model_addmin(data: DeaData, orientation=None, rts: str = "crs", L: float = 1.0,
                 U: float = 1.0, weight_slack_i=1.0, weight_slack_o=1.0, maxfr=None,
                 method: str = "mf", dmu_eval=None, dmu_ref=None, n_jobs: int = 1) -> DeaResult:
    """Additive-Min model by the maximal-friends method.

    For each facet (maximal friends subset) the weighted L1 distance to the
    face it spans is minimized; the score is the smallest over facets, ties
    resolved by the first facet in order. The facet index used is stored in
    ``result.extra["facet"]``.
    """
    if method != "mf":
        raise ValueError("only the maximal-friends method ('mf') is available")
    if any(data.special_sets().values()):
        raise ValueError("model_addmin does not support special variables")
    lo, hi = rts_limits(rts, L, U)
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    k = len(eval_idx)
    w_in, w_out = _weights(data, k, weight_slack_i, weight_slack_o, orientation)
    facets = resolve_facets(data, maxfr, rts, L, U, ref_idx)
    pos = {int(j): a for a, j in enumerate(ref_idx)}
    ki = np.full(data.m, "d", dtype=object)
    ko = np.full(data.s, "d", dtype=object)

    def one(a):
        j = eval_idx[a]
        x_o, y_o = data.input[:, j], data.output[:, j]
        best, best_f = None, -1
        for f, facet in enumerate(facets):
            cols = list(facet)
            sol = additive_solve(x_o, y_o, data.input[:, cols], data.output[:, cols], lo, hi, ki,
                                 ko, w_in[a], w_out[a], minimize=True)
            if sol.status == "optimal" and (best is None or sol.score < best.score - 1e-9):
                best, best_f = sol, f
                best.extra["cols"] = cols
        if best is None:
            out = na_solution("infeasible", len(ref_idx), data.m, data.s)
            out.extra["facet"] = np.nan
            return out
        lam = np.zeros(len(ref_idx))
        for c, v in zip(best.extra.pop("cols"), best.lambdas):
            lam[pos[c]] = v
        best.lambdas = lam
        best.extra["facet"] = float(best_f)
        return best

    sols = parallel_map(one, range(k), n_jobs)
    res = assemble(sols, modelname="addmin", orientation=orientation, rts=rts, data=data,
                   dmu_eval=eval_idx, dmu_ref=ref_idx,
                   params={"L": L, "U": U, "efficient_value": 0.0, "method": "mf",
                           "facets": [list(f) for f in facets], "tie_break": "first facet index",
                           "weight_slack_i": w_in.T.tolist(),
                           "weight_slack_o": w_out.T.tolist()})
    return res
