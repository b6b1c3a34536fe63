"""Non-radial (Färe-Lovell) and DEA/preference-structure models."""
from __future__ import annotations

import numpy as np

from .data import DeaData
from .lp import LinearProgram, LpBuilder, solve
from .results import (DeaResult, DmuSolution, add_rts_rows, assemble, broadcast, na_solution,
                      parallel_map, rts_limits)


def _factor_rows(kinds: np.ndarray) -> np.ndarray:
    """Rows that get their own factor: the discretionary ones (undesirable rows are too)."""
    return np.flatnonzero((kinds == "d") | (kinds == "ud"))


def stage1_program(x_o, y_o, Xr, Yr, orientation: str, lo, hi, ki, ko, weight_eff,
                   restricted: bool = True) -> LinearProgram:
    """Per-variable factor program.

    io: ``min sum(w*theta)/sum(w)`` with ``theta_i x_io = X_i lambda`` on
    discretionary inputs, ``Y lambda >= y_o``; oo mirrors it with ``eta``.
    Non-controllable rows are equalities, non-discretionary rows plain
    inequalities.
    """
    m, nref = Xr.shape
    s = Yr.shape[0]
    kinds = ki if orientation == "io" else ko
    rows = _factor_rows(kinds)
    w = np.asarray(weight_eff, float)
    b = LpBuilder()
    if orientation == "io":
        b.add_vars("theta", len(rows), 0.0, 1.0 if restricted else None,
                   labels=[f"theta[{i}]" for i in rows])
    else:
        b.add_vars("eta", len(rows), 1.0 if restricted else 0.0, None,
                   labels=[f"eta[{r}]" for r in rows])
    b.add_vars("lambda", nref)
    fac = "theta" if orientation == "io" else "eta"
    pos = {v: k for k, v in enumerate(rows)}
    for i in range(m):
        if ki[i] == "nc":
            b.add_row({"lambda": Xr[i]}, "=", x_o[i])
        elif orientation == "io" and i in pos:
            e = np.zeros(len(rows))
            e[pos[i]] = -x_o[i]
            b.add_row({"lambda": Xr[i], fac: e}, "=", 0.0)
        else:
            b.add_row({"lambda": Xr[i]}, "<=", x_o[i])
    for r in range(s):
        if ko[r] == "nc":
            b.add_row({"lambda": Yr[r]}, "=", y_o[r])
        elif orientation == "oo" and r in pos:
            e = np.zeros(len(rows))
            e[pos[r]] = -y_o[r]
            b.add_row({"lambda": Yr[r], fac: e}, "=", 0.0)
        else:
            b.add_row({"lambda": Yr[r]}, ">=", y_o[r])
    add_rts_rows(b, "lambda", lo, hi)
    b.set_objective({fac: w / w.sum()})
    return b.build(maximize=orientation == "oo")


def _stage2(x_o, y_o, Xr, Yr, orientation, factors, lo, hi, ki, ko, w_slack):
    """Max weighted slacks on the non-oriented side with the factors fixed."""
    m, nref = Xr.shape
    s = Yr.shape[0]
    other = ko if orientation == "io" else ki
    free = np.flatnonzero((other == "d") | (other == "ud"))
    b = LpBuilder()
    b.add_vars("lambda", nref)
    b.add_vars("slack", len(free))
    pos = {v: k for k, v in enumerate(free)}
    for i in range(m):
        if orientation == "io":
            if ki[i] == "nd":
                b.add_row({"lambda": Xr[i]}, "<=", x_o[i])
            else:
                b.add_row({"lambda": Xr[i]}, "=", factors[i] * x_o[i])
        elif i in pos:
            e = np.zeros(len(free))
            e[pos[i]] = 1.0
            b.add_row({"lambda": Xr[i], "slack": e}, "=", x_o[i])
        else:
            b.add_row({"lambda": Xr[i]}, "=" if ki[i] == "nc" else "<=", x_o[i])
    for r in range(s):
        if orientation == "oo":
            if ko[r] == "nd":
                b.add_row({"lambda": Yr[r]}, ">=", y_o[r])
            else:
                b.add_row({"lambda": Yr[r]}, "=", factors[r] * y_o[r])
        elif r in pos:
            e = np.zeros(len(free))
            e[pos[r]] = -1.0
            b.add_row({"lambda": Yr[r], "slack": e}, "=", y_o[r])
        else:
            b.add_row({"lambda": Yr[r]}, "=" if ko[r] == "nc" else ">=", y_o[r])
    add_rts_rows(b, "lambda", lo, hi)
    b.set_objective({"slack": w_slack[free]})
    sol = solve(b.build(maximize=True))
    if not sol.ok:
        return None
    sl = np.zeros(s if orientation == "io" else m)
    sl[free] = sol.x[nref:]
    return sol.x[:nref], sl


def nonradial_solve(x_o, y_o, Xr, Yr, orientation, lo, hi, ki, ko, weight_eff, w_slack,
                    restricted=True, maxslack=True) -> DmuSolution:
    m, nref = Xr.shape
    s = Yr.shape[0]
    p = stage1_program(x_o, y_o, Xr, Yr, orientation, lo, hi, ki, ko, weight_eff, restricted)
    sol = solve(p)
    if not sol.ok:
        out = na_solution(sol.status, nref, m, s)
        out.extra["factor"] = np.full(m if orientation == "io" else s, np.nan)
        return out
    kinds = ki if orientation == "io" else ko
    rows = _factor_rows(kinds)
    size = m if orientation == "io" else s
    factors = np.full(size, np.nan)
    factors[rows] = sol.x[:len(rows)]
    lam = sol.x[len(rows):]
    fixed = np.where(np.isnan(factors), 1.0, factors)
    two = _stage2(x_o, y_o, Xr, Yr, orientation, fixed, lo, hi, ki, ko, w_slack) if maxslack else None
    sl_in, sl_out = np.zeros(m), np.zeros(s)
    if two is not None:
        lam, sl = two
        if orientation == "io":
            sl_out = sl
        else:
            sl_in = sl
    else:
        if orientation == "io":
            d = (ko == "d") | (ko == "ud")
            sl_out[d] = np.maximum(Yr[d] @ lam - y_o[d], 0.0)
        else:
            d = (ki == "d") | (ki == "ud")
            sl_in[d] = np.maximum(x_o[d] - Xr[d] @ lam, 0.0)
    lam = np.where(np.abs(lam) < 1e-12, 0.0, lam)
    return DmuSolution(status="optimal", score=sol.objective + 0.0, lambdas=lam,
                       slack_input=sl_in, slack_output=sl_out, target_input=Xr @ lam,
                       target_output=Yr @ lam, extra={"factor": factors})


def _run(data: DeaData, orientation, rts, L, U, dmu_eval, dmu_ref, weight_eff, restricted,
         maxslack, weight_slack, returnlp, n_jobs, modelname):
    if orientation not in ("io", "oo"):
        raise ValueError(f"orientation must be 'io' or 'oo', got {orientation!r}")
    if data.has_undesirable():
        raise ValueError(f"{modelname} does not support undesirable variables")
    lo, hi = rts_limits(rts, L, U)
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    ki, ko = data.input_kinds(), data.output_kinds()
    kinds = ki if orientation == "io" else ko
    rows = _factor_rows(kinds)
    if len(rows) == 0:
        raise ValueError("no discretionary variable on the oriented side")
    nvar = data.m if orientation == "io" else data.s
    w = np.ones(nvar) if weight_eff is None else np.broadcast_to(
        np.asarray(weight_eff, float), (nvar,)).copy()
    if np.any(w[rows] <= 0):
        raise ValueError("weight_eff must be positive")
    w = w[rows]
    k = len(eval_idx)
    other = data.s if orientation == "io" else data.m
    w_slack = broadcast(weight_slack, other, k, "weight_slack")
    own = data.input if orientation == "io" else data.output
    if np.any(own[np.ix_(rows, eval_idx)] == 0):
        raise ValueError(f"{modelname}: evaluated DMUs need nonzero values on the oriented "
                         "discretionary variables")
    Xr, Yr = data.input[:, ref_idx], data.output[:, ref_idx]
    if returnlp:
        return [stage1_program(data.input[:, j], data.output[:, j], Xr, Yr, orientation, lo, hi,
                               ki, ko, w, restricted) for j in eval_idx]

    def one(a):
        j = eval_idx[a]
        return nonradial_solve(data.input[:, j], data.output[:, j], Xr, Yr, orientation, lo, hi,
                               ki, ko, w, w_slack[a], restricted, maxslack)

    sols = parallel_map(one, range(k), n_jobs)
    return assemble(sols, modelname=modelname, orientation=orientation, rts=rts, data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx,
                    params={"L": L, "U": U, "maxslack": maxslack, "weight_eff": w.tolist(),
                            "restricted_eff": restricted,
                            "weight_slack": w_slack.T.tolist()})


def model_nonradial(data: DeaData, orientation: str = "io", rts: str = "crs", L: float = 1.0,
                    U: float = 1.0, dmu_eval=None, dmu_ref=None, maxslack: bool = True,
                    weight_slack=1.0, returnlp: bool = False, n_jobs: int = 1):
    """Non-radial model with one contraction (io) or expansion (oo) factor per variable.

    The score is the mean factor; the factors are in ``result.extra["factor"]``
    (NaN for non-controllable and non-discretionary rows, which have no factor).
    The second stage maximizes weighted slacks on the other side.
    """
    return _run(data, orientation, rts, L, U, dmu_eval, dmu_ref, None, True, maxslack,
                weight_slack, returnlp, n_jobs, "nonradial")


def model_deaps(data: DeaData, orientation: str = "io", rts: str = "crs", L: float = 1.0,
                U: float = 1.0, weight_eff=1.0, restricted_eff: bool = True, dmu_eval=None,
                dmu_ref=None, maxslack: bool = True, weight_slack=1.0, returnlp: bool = False,
                n_jobs: int = 1):
    """DEA/preference-structure model: weighted mean of the non-radial factors.

    Parameters
    ----------
    weight_eff : scalar or vector
        Positive preference weights, one per input (io) or output (oo).
    restricted_eff : bool
        Keep ``theta <= 1`` (io) or ``eta >= 1`` (oo).
    """
    return _run(data, orientation, rts, L, U, dmu_eval, dmu_ref, weight_eff, restricted_eff,
                maxslack, weight_slack, returnlp, n_jobs, "deaps")
