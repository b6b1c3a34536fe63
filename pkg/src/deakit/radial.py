"""Radial and directional envelopment models, FDH and range directional models."""
from __future__ import annotations

import warnings
from typing import Optional

import numpy as np

from .data import DataWarning, DeaData, undesirable_transform
from .lp import LinearProgram, solve
from .results import (DeaResult, DmuSolution, assemble, broadcast, na_solution, parallel_map,
                      rts_limits)

ORIENTATIONS = ("io", "oo", "dir")
TIE_TOL = 1e-9


def _rts_rows(nvar: int, offset: int, nref: int, lo, hi):
    rows, senses, rhs = [], [], []
    if lo is None and hi is None:
        return rows, senses, rhs
    row = np.zeros(nvar)
    row[offset:offset + nref] = 1.0
    if lo is not None and hi is not None and lo == hi:
        return [row], ["="], [lo]
    if lo is not None:
        rows.append(row)
        senses.append(">=")
        rhs.append(lo)
    if hi is not None:
        rows.append(row.copy())
        senses.append("<=")
        rhs.append(hi)
    return rows, senses, rhs


def stage1_program(x_o, y_o, Xr, Yr, orientation: str, lo, hi, ki, ko,
                   g_in=None, g_out=None) -> LinearProgram:
    """First-stage radial/directional program over reference columns ``Xr``, ``Yr``."""
    m, nref = Xr.shape
    s = Yr.shape[0]
    nvar = 1 + nref
    rows, senses, rhs = [], [], []

    def add(coef_score, ref_row, sense, b):
        r = np.empty(nvar)
        r[0] = coef_score
        r[1:] = ref_row
        rows.append(r)
        senses.append(sense)
        rhs.append(b)

    for i in range(m):
        k = ki[i]
        if k == "nc":
            add(0.0, Xr[i], "=", x_o[i])
        elif k == "nd":
            add(0.0, Xr[i], "<=", x_o[i])
        elif orientation == "io":
            add(x_o[i], -Xr[i], ">=", 0.0)
        elif orientation == "oo":
            add(0.0, Xr[i], "<=", x_o[i])
        elif k == "ud":
            add(-g_in[i], Xr[i], "=", x_o[i])
        else:
            add(g_in[i], Xr[i], "<=", x_o[i])
    for r in range(s):
        k = ko[r]
        if k == "nc":
            add(0.0, Yr[r], "=", y_o[r])
        elif k == "nd":
            add(0.0, Yr[r], ">=", y_o[r])
        elif orientation == "io":
            add(0.0, Yr[r], ">=", y_o[r])
        elif orientation == "oo":
            add(y_o[r], -Yr[r], "<=", 0.0)
        elif k == "ud":
            add(g_out[r], Yr[r], "=", y_o[r])
        else:
            add(-g_out[r], Yr[r], ">=", y_o[r])
    rr, rs, rb = _rts_rows(nvar, 1, nref, lo, hi)
    rows += rr
    senses += rs
    rhs += rb
    obj = np.zeros(nvar)
    obj[0] = 1.0
    score_bound = (None, None)
    if orientation == "dir" and not np.any(np.asarray(rows)[:, 0]):
        score_bound = (0.0, 0.0)
    name = {"io": "theta", "oo": "eta", "dir": "beta"}[orientation]
    names = (name,) + tuple(f"lambda[{j}]" for j in range(nref))
    return LinearProgram(obj, np.asarray(rows), tuple(senses), np.asarray(rhs, float),
                         (score_bound,) + ((0.0, None),) * nref,
                         maximize=orientation != "io", names=names)


def _stage2(x_o, y_o, Xr, Yr, orientation, score, lo, hi, ki, ko, g_in, g_out, w_in, w_out):
    m, nref = Xr.shape
    s = Yr.shape[0]
    din = np.flatnonzero(ki == "d")
    dout = np.flatnonzero(ko == "d")
    nvar = nref + len(din) + len(dout)
    rows, senses, rhs = [], [], []
    pos_in = {i: nref + a for a, i in enumerate(din)}
    pos_out = {r: nref + len(din) + a for a, r in enumerate(dout)}
    for i in range(m):
        row = np.zeros(nvar)
        row[:nref] = Xr[i]
        k = ki[i]
        if k == "d":
            row[pos_in[i]] = 1.0
            if orientation == "io":
                b = score * x_o[i]
            elif orientation == "oo":
                b = x_o[i]
            else:
                b = x_o[i] - score * g_in[i]
            sense = "="
        elif k == "nc":
            sense, b = "=", x_o[i]
        elif k == "nd":
            sense, b = "<=", x_o[i]
        else:
            sense, b = "=", x_o[i] + score * g_in[i]
        rows.append(row)
        senses.append(sense)
        rhs.append(b)
    for r in range(s):
        row = np.zeros(nvar)
        row[:nref] = Yr[r]
        k = ko[r]
        if k == "d":
            row[pos_out[r]] = -1.0
            if orientation == "io":
                b = y_o[r]
            elif orientation == "oo":
                b = score * y_o[r]
            else:
                b = y_o[r] + score * g_out[r]
            sense = "="
        elif k == "nc":
            sense, b = "=", y_o[r]
        elif k == "nd":
            sense, b = ">=", y_o[r]
        else:
            sense, b = "=", y_o[r] - score * g_out[r]
        rows.append(row)
        senses.append(sense)
        rhs.append(b)
    rr, rs, rb = _rts_rows(nvar, 0, nref, lo, hi)
    obj = np.zeros(nvar)
    obj[nref:nref + len(din)] = w_in[din]
    obj[nref + len(din):] = w_out[dout]
    p = LinearProgram(obj, np.asarray(rows + rr), tuple(senses + rs), np.asarray(rhs + rb, float),
                      ((0.0, None),) * nvar, maximize=True)
    sol = solve(p)
    if not sol.ok:
        return None
    lam = sol.x[:nref]
    sl_in = np.zeros(m)
    sl_out = np.zeros(s)
    sl_in[din] = sol.x[nref:nref + len(din)]
    sl_out[dout] = sol.x[nref + len(din):]
    return lam, sl_in, sl_out


def radial_solve(x_o, y_o, Xr, Yr, orientation: str = "io", lo=None, hi=None, ki=None, ko=None,
                 g_in=None, g_out=None, w_in=None, w_out=None, maxslack: bool = True) -> DmuSolution:
    """Solve the radial or directional model for one activity ``(x_o, y_o)``.

    ``lo``/``hi`` bound the sum of intensities (see :func:`rts_limits`);
    ``ki``/``ko`` hold per-row kinds ('d', 'nc', 'nd', 'ud').
    """
    x_o = np.asarray(x_o, float)
    y_o = np.asarray(y_o, float)
    m, nref = Xr.shape
    s = Yr.shape[0]
    ki = np.full(m, "d", dtype=object) if ki is None else np.asarray(ki, dtype=object)
    ko = np.full(s, "d", dtype=object) if ko is None else np.asarray(ko, dtype=object)
    g_in = np.zeros(m) if g_in is None else np.asarray(g_in, float)
    g_out = np.zeros(s) if g_out is None else np.asarray(g_out, float)
    if nref == 0:
        return na_solution("empty_reference", 0, m, s)
    p = stage1_program(x_o, y_o, Xr, Yr, orientation, lo, hi, ki, ko, g_in, g_out)
    sol = solve(p)
    if not sol.ok:
        return na_solution(sol.status, nref, m, s)
    score = sol.objective + 0.0
    lam = sol.x[1:]
    sl_in = np.zeros(m)
    sl_out = np.zeros(s)
    two = None
    if maxslack:
        w_in = np.ones(m) if w_in is None else np.asarray(w_in, float)
        w_out = np.ones(s) if w_out is None else np.asarray(w_out, float)
        two = _stage2(x_o, y_o, Xr, Yr, orientation, score, lo, hi, ki, ko, g_in, g_out, w_in, w_out)
    if two is not None:
        lam, sl_in, sl_out = two
    else:
        xt, yt = Xr @ lam, Yr @ lam
        d_in, d_out = ki == "d", ko == "d"
        if orientation == "io":
            sl_in[d_in] = score * x_o[d_in] - xt[d_in]
            sl_out[d_out] = yt[d_out] - y_o[d_out]
        elif orientation == "oo":
            sl_in[d_in] = x_o[d_in] - xt[d_in]
            sl_out[d_out] = yt[d_out] - score * y_o[d_out]
        else:
            sl_in[d_in] = x_o[d_in] - score * g_in[d_in] - xt[d_in]
            sl_out[d_out] = yt[d_out] - y_o[d_out] - score * g_out[d_out]
        sl_in = np.maximum(sl_in, 0.0)
        sl_out = np.maximum(sl_out, 0.0)
    lam = np.where(np.abs(lam) < 1e-12, 0.0, lam)
    return DmuSolution(status="optimal", score=score, lambdas=lam, slack_input=sl_in,
                       slack_output=sl_out, target_input=Xr @ lam, target_output=Yr @ lam,
                       extra={"maxslack_objective": None if two is None else
                              float(np.dot(w_in, sl_in) + np.dot(w_out, sl_out))})


def _directions(data: DeaData, eval_idx, dir_input, dir_output):
    k = len(eval_idx)
    g_in = broadcast(data.input[:, eval_idx] if dir_input is None else dir_input, data.m, k, "dir_input")
    g_out = broadcast(data.output[:, eval_idx] if dir_output is None else dir_output,
                      data.s, k, "dir_output")
    return g_in, g_out


def model_basic(data: DeaData, orientation: str = "io", rts: str = "crs", L: float = 1.0,
                U: float = 1.0, dmu_eval=None, dmu_ref=None, maxslack: bool = True,
                weight_slack_i=1.0, weight_slack_o=1.0, dir_input=None, dir_output=None,
                vtrans_i=None, vtrans_o=None, returnlp: bool = False, n_jobs: int = 1,
                _allow_zero_direction: bool = False, _modelname: str = "basic"):
    """Radial (io/oo) or directional (dir) envelopment model with optional max-slack stage.

    Parameters
    ----------
    data : DeaData
    orientation : {"io", "oo", "dir"}
    rts : {"crs", "vrs", "nirs", "ndrs", "grs"}
    L, U : float
        Bounds on the sum of intensities under ``grs``.
    dmu_eval, dmu_ref : sequence of int or str, optional
        DMUs evaluated and DMUs spanning the reference technology.
    maxslack : bool
        Solve the second stage that maximizes weighted slacks.
    weight_slack_i, weight_slack_o : scalar, vector or matrix
        Second-stage weights; matrices are (variables, len(dmu_eval)).
    dir_input, dir_output : scalar, vector or matrix, optional
        Directions for ``orientation="dir"``; default to the evaluated
        DMU's own inputs and outputs.
    vtrans_i, vtrans_o : scalar or vector, optional
        Translation for undesirable variables in io/oo models.
    returnlp : bool
        Return the unsolved first-stage programs instead of a result.

    Returns
    -------
    DeaResult or list of LinearProgram
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    lo, hi = rts_limits(rts, L, U)
    if orientation != "dir" and (dir_input is not None or dir_output is not None):
        raise ValueError("dir_input/dir_output are only valid with orientation='dir'")
    params = {"maxslack": maxslack, "L": L, "U": U, "efficient_value": 0.0 if orientation == "dir" else 1.0}
    notes = []
    if orientation != "dir" and data.has_undesirable():
        data, vi, vo = undesirable_transform(data, vtrans_i, vtrans_o)
        params.update(vtrans_i=vi.tolist(), vtrans_o=vo.tolist())
        if rts != "vrs":
            msg = "undesirable variables under non-VRS radial models are not translation invariant"
            warnings.warn(msg, DataWarning, stacklevel=2)
            notes.append(msg)
    elif vtrans_i is not None or vtrans_o is not None:
        raise ValueError("vtrans_i/vtrans_o need undesirable variables in a non-directional model")
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    k = len(eval_idx)
    w_in = broadcast(weight_slack_i, data.m, k, "weight_slack_i")
    w_out = broadcast(weight_slack_o, data.s, k, "weight_slack_o")
    g_in = np.zeros((k, data.m))
    g_out = np.zeros((k, data.s))
    if orientation == "dir":
        g_in, g_out = _directions(data, eval_idx, dir_input, dir_output)
        if not _allow_zero_direction and not (np.any(g_in) or np.any(g_out)):
            raise ValueError("directional model with an all-zero direction")
        params.update(dir_input=g_in.T.tolist(), dir_output=g_out.T.tolist())
    params.update(weight_slack_i=w_in.T.tolist(), weight_slack_o=w_out.T.tolist())
    if notes:
        params["notes"] = notes
    ki, ko = data.input_kinds(), data.output_kinds()
    Xr, Yr = data.input[:, ref_idx], data.output[:, ref_idx]

    if returnlp:
        return [stage1_program(data.input[:, j], data.output[:, j], Xr, Yr, orientation, lo, hi,
                               ki, ko, g_in[a], g_out[a]) for a, j in enumerate(eval_idx)]

    def one(a):
        j = eval_idx[a]
        return radial_solve(data.input[:, j], data.output[:, j], Xr, Yr, orientation, lo, hi,
                            ki, ko, g_in[a], g_out[a], w_in[a], w_out[a], maxslack)

    sols = parallel_map(one, range(k), n_jobs)
    return assemble(sols, modelname=_modelname, orientation=orientation, rts=rts, data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx, params=params)


# --------------------------------------------------------------------------- FDH


def _line_search(le, eq, maximize: bool):
    """Best ``t`` subject to ``a*t <= b`` pairs in ``le`` and ``a*t == b`` pairs in ``eq``."""
    lower, upper = -np.inf, np.inf
    for a, b in le:
        if abs(a) <= 1e-15:
            if b < -TIE_TOL:
                return None
        elif a > 0:
            upper = min(upper, b / a)
        else:
            lower = max(lower, b / a)
    for a, b in eq:
        if abs(a) <= 1e-15:
            if abs(b) > TIE_TOL * max(1.0, abs(b)):
                return None
        else:
            t = b / a
            lower, upper = max(lower, t), min(upper, t)
    if lower > upper + TIE_TOL:
        return None
    return upper if maximize else lower


def _fdh_candidate(x_o, y_o, xj, yj, orientation, ki, ko, g_in, g_out):
    """Optimal score when the reference is the single DMU (xj, yj)."""
    le, eq = [], []
    for i in range(len(x_o)):
        k = ki[i]
        if k == "nc":
            eq.append((0.0, x_o[i] - xj[i]))
        elif k == "nd" or orientation == "oo":
            le.append((0.0, x_o[i] - xj[i]))
        elif orientation == "io":
            le.append((-x_o[i], -xj[i]))
        elif k == "ud":
            eq.append((-g_in[i], x_o[i] - xj[i]))
        else:
            le.append((g_in[i], x_o[i] - xj[i]))
    for r in range(len(y_o)):
        k = ko[r]
        if k == "nc":
            eq.append((0.0, yj[r] - y_o[r]))
        elif k == "nd" or orientation == "io":
            le.append((0.0, yj[r] - y_o[r]))
        elif orientation == "oo":
            le.append((y_o[r], yj[r]))
        elif k == "ud":
            eq.append((g_out[r], y_o[r] - yj[r]))
        else:
            le.append((g_out[r], yj[r] - y_o[r]))
    if orientation == "dir" and not any(a for a, _ in le + eq):
        le.append((1.0, 0.0))
        le.append((-1.0, 0.0))
    return _line_search(le, eq, maximize=orientation != "io")


def _fdh_one(x_o, y_o, Xr, Yr, orientation, ki, ko, g_in, g_out, w_in, w_out, maxslack):
    m, nref = Xr.shape
    s = Yr.shape[0]
    scores = np.array([np.nan if (t := _fdh_candidate(x_o, y_o, Xr[:, j], Yr[:, j], orientation,
                                                       ki, ko, g_in, g_out)) is None else t
                       for j in range(nref)])
    feasible = np.isfinite(scores) | np.isinf(scores)
    if not np.any(~np.isnan(scores)):
        return na_solution("infeasible", nref, m, s)
    best = np.nanmax(scores) if orientation != "io" else np.nanmin(scores)
    if not np.isfinite(best):
        return na_solution("unbounded", nref, m, s)
    ties = [j for j in range(nref) if feasible[j] and abs(scores[j] - best) <= TIE_TOL * max(1.0, abs(best))]
    d_in, d_out = ki == "d", ko == "d"

    def slacks(j):
        sl_in = np.zeros(m)
        sl_out = np.zeros(s)
        if orientation == "io":
            sl_in[d_in] = best * x_o[d_in] - Xr[d_in, j]
            sl_out[d_out] = Yr[d_out, j] - y_o[d_out]
        elif orientation == "oo":
            sl_in[d_in] = x_o[d_in] - Xr[d_in, j]
            sl_out[d_out] = Yr[d_out, j] - best * y_o[d_out]
        else:
            sl_in[d_in] = x_o[d_in] - best * g_in[d_in] - Xr[d_in, j]
            sl_out[d_out] = Yr[d_out, j] - y_o[d_out] - best * g_out[d_out]
        return np.maximum(sl_in, 0.0), np.maximum(sl_out, 0.0)

    if maxslack:
        values = [np.dot(w_in, slacks(j)[0]) + np.dot(w_out, slacks(j)[1]) for j in ties]
        pick = ties[int(np.argmax(values))]
    else:
        pick = ties[0]
    lam = np.zeros(nref)
    lam[pick] = 1.0
    sl_in, sl_out = slacks(pick)
    return DmuSolution(status="optimal", score=float(best), lambdas=lam, slack_input=sl_in,
                       slack_output=sl_out, target_input=Xr[:, pick].copy(),
                       target_output=Yr[:, pick].copy())


def model_fdh(data: DeaData, orientation: str = "io", dmu_eval=None, dmu_ref=None,
              maxslack: bool = True, weight_slack_i=1.0, weight_slack_o=1.0, dir_input=None,
              dir_output=None, n_jobs: int = 1) -> DeaResult:
    """Free disposal hull model solved by enumeration of single-DMU references.

    Equivalent to the VRS model with binary intensities: the score is the
    best over reference DMUs ``j`` of the score obtained against ``j`` alone.
    Ties are broken by the largest weighted slack, then by reference order.
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    if orientation != "dir" and data.has_undesirable():
        data, _, _ = undesirable_transform(data)
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    k = len(eval_idx)
    w_in = broadcast(weight_slack_i, data.m, k, "weight_slack_i")
    w_out = broadcast(weight_slack_o, data.s, k, "weight_slack_o")
    g_in = np.zeros((k, data.m))
    g_out = np.zeros((k, data.s))
    if orientation == "dir":
        g_in, g_out = _directions(data, eval_idx, dir_input, dir_output)
        if not (np.any(g_in) or np.any(g_out)):
            raise ValueError("directional model with an all-zero direction")
    ki, ko = data.input_kinds(), data.output_kinds()
    Xr, Yr = data.input[:, ref_idx], data.output[:, ref_idx]

    def one(a):
        j = eval_idx[a]
        return _fdh_one(data.input[:, j], data.output[:, j], Xr, Yr, orientation, ki, ko,
                        g_in[a], g_out[a], w_in[a], w_out[a], maxslack)

    sols = parallel_map(one, range(k), n_jobs)
    return assemble(sols, modelname="fdh", orientation=orientation, rts="vrs", data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx,
                    params={"maxslack": maxslack,
                            "efficient_value": 0.0 if orientation == "dir" else 1.0})


# --------------------------------------------------------------------------- RDM


def rdm_directions(data: DeaData, eval_idx, ref_idx, orientation: str = "no", irdm: bool = False):
    """Range directions, shaped (variables, len(eval_idx))."""
    Xr, Yr = data.input[:, ref_idx], data.output[:, ref_idx]
    g_in = data.input[:, eval_idx] - Xr.min(axis=1, keepdims=True)
    g_out = Yr.max(axis=1, keepdims=True) - data.output[:, eval_idx]
    if orientation == "io":
        g_out = np.zeros_like(g_out)
    elif orientation == "oo":
        g_in = np.zeros_like(g_in)
    elif orientation != "no":
        raise ValueError(f"orientation must be 'no', 'io' or 'oo', got {orientation!r}")
    if irdm:
        with np.errstate(divide="ignore"):
            g_in = np.where(g_in != 0, 1.0 / np.where(g_in != 0, g_in, 1.0), 0.0)
            g_out = np.where(g_out != 0, 1.0 / np.where(g_out != 0, g_out, 1.0), 0.0)
    return g_in, g_out


def model_rdm(data: DeaData, orientation: str = "no", irdm: bool = False, rts: str = "vrs",
              L: float = 1.0, U: float = 1.0, dmu_eval=None, dmu_ref=None, maxslack: bool = True,
              weight_slack_i=1.0, weight_slack_o=1.0, returnlp: bool = False,
              n_jobs: int = 1):
    """Range directional model (inverse ranges with ``irdm=True``); scores are beta.

    A DMU whose range direction is zero gets beta = 0.
    """
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    g_in, g_out = rdm_directions(data, eval_idx, ref_idx, orientation, irdm)
    res = model_basic(data, orientation="dir", rts=rts, L=L, U=U, dmu_eval=eval_idx,
                      dmu_ref=ref_idx, maxslack=maxslack, weight_slack_i=weight_slack_i,
                      weight_slack_o=weight_slack_o, dir_input=g_in, dir_output=g_out,
                      returnlp=returnlp, n_jobs=n_jobs, _allow_zero_direction=True,
                      _modelname="rdm")
    if not returnlp:
        res.params.update(rdm_orientation=orientation, irdm=irdm)
    return res
