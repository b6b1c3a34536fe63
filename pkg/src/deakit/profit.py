"""Cost, revenue and profit efficiency models."""
from __future__ import annotations

import numpy as np

from .data import DeaData
from .lp import LinearProgram, LpBuilder, solve
from .results import (DeaResult, DmuSolution, add_rts_rows, assemble, broadcast, na_solution,
                      parallel_map, rts_limits)

DENOM_TOL = 1e-12


def profit_program(x_o, y_o, Xr, Yr, lo, hi, c, p, mode: str, restricted: bool) -> LinearProgram:
    """Optimal activity program; variables ``(lambda, x, y)``.

    cost: ``min c.x`` with ``x >= X lambda``, ``Y lambda >= y_o``;
    revenue: ``max p.y`` with ``X lambda <= x_o``, ``y <= Y lambda``;
    profit: ``max p.y - c.x`` with both and ``x <= x_o``, ``y >= y_o``.
    """
    m, nref = Xr.shape
    s = Yr.shape[0]
    b = LpBuilder()
    b.add_vars("lambda", nref)
    if mode in ("cost", "profit"):
        b.add_vars("x", m, 0.0, None)
    if mode in ("revenue", "profit"):
        b.add_vars("y", s, 0.0, None)
    eye_m, eye_s = np.eye(m), np.eye(s)
    for i in range(m):
        if mode == "revenue":
            b.add_row({"lambda": Xr[i]}, "<=", x_o[i])
        else:
            b.add_row({"x": eye_m[i], "lambda": -Xr[i]}, ">=", 0.0)
            if restricted or mode == "profit":
                b.add_row({"x": eye_m[i]}, "<=", x_o[i])
    for r in range(s):
        if mode == "cost":
            b.add_row({"lambda": Yr[r]}, ">=", y_o[r])
        else:
            b.add_row({"y": eye_s[r], "lambda": -Yr[r]}, "<=", 0.0)
            if restricted or mode == "profit":
                b.add_row({"y": eye_s[r]}, ">=", y_o[r])
    add_rts_rows(b, "lambda", lo, hi)
    if mode == "cost":
        b.set_objective({"x": c})
    elif mode == "revenue":
        b.set_objective({"y": p})
    else:
        b.set_objective({"y": p, "x": -c})
    return b.build(maximize=mode != "cost")


def profit_solve(x_o, y_o, Xr, Yr, lo, hi, c, p, mode, restricted) -> DmuSolution:
    m, nref = Xr.shape
    s = Yr.shape[0]
    sol = solve(profit_program(x_o, y_o, Xr, Yr, lo, hi, c, p, mode, restricted))
    if not sol.ok:
        out = na_solution(sol.status, nref, m, s)
        out.extra.update(optimal_input=np.full(m, np.nan), optimal_output=np.full(s, np.nan))
        return out
    lam = sol.x[:nref]
    lam = np.where(np.abs(lam) < 1e-12, 0.0, lam)
    k = nref
    x_star = y_star = None
    if mode in ("cost", "profit"):
        x_star = sol.x[k:k + m]
        k += m
    if mode in ("revenue", "profit"):
        y_star = sol.x[k:k + s]
    status = "optimal"
    if mode == "cost":
        num, den = float(c @ x_star), float(c @ x_o)
    elif mode == "revenue":
        num, den = float(p @ y_o), float(p @ y_star)
    else:
        num = float(p @ y_o - c @ x_o)
        den = float(p @ y_star - c @ x_star)
    if abs(den) <= DENOM_TOL:
        score = float("nan")
        status = "zero_denominator"
    else:
        score = num / den + 0.0
    extra = {"optimal_input": x_star, "optimal_output": y_star}
    if mode == "profit":
        extra["negative_observed_profit"] = float(p @ y_o < c @ x_o)
    return DmuSolution(status=status, score=score, lambdas=lam,
                       target_input=Xr @ lam, target_output=Yr @ lam, extra=extra)


def model_profit(data: DeaData, price_input=None, price_output=None, rts: str = "crs",
                 L: float = 1.0, U: float = 1.0, restricted_optimal: bool = True, dmu_eval=None,
                 dmu_ref=None, returnlp: bool = False, n_jobs: int = 1):
    """Cost (only input prices), revenue (only output prices) or profit (both) efficiency.

    Prices may be scalars, per-variable vectors or (variables, len(dmu_eval))
    matrices. The optimal activity is in ``extra["optimal_input"]`` /
    ``extra["optimal_output"]``. A profit score whose denominator vanishes is
    NaN with status ``"zero_denominator"``; ``extra["negative_observed_profit"]``
    flags DMUs with ``p.y_o < c.x_o``, whose profit score is not bounded by 1.
    """
    if price_input is None and price_output is None:
        raise ValueError("give price_input (cost), price_output (revenue) or both (profit)")
    mode = "profit" if price_input is not None and price_output is not None else \
        "cost" if price_input is not None else "revenue"
    if any(data.special_sets().values()):
        raise ValueError("model_profit does not support special variables")
    lo, hi = rts_limits(rts, L, U)
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    k = len(eval_idx)
    c = broadcast(0.0 if price_input is None else price_input, data.m, k, "price_input")
    p = broadcast(0.0 if price_output is None else price_output, data.s, k, "price_output")
    notes = []
    if np.any(c < 0) or np.any(p < 0):
        notes.append("negative prices")
    Xr, Yr = data.input[:, ref_idx], data.output[:, ref_idx]
    if returnlp:
        return [profit_program(data.input[:, j], data.output[:, j], Xr, Yr, lo, hi, c[a], p[a],
                               mode, restricted_optimal) for a, j in enumerate(eval_idx)]

    def one(a):
        j = eval_idx[a]
        return profit_solve(data.input[:, j], data.output[:, j], Xr, Yr, lo, hi, c[a], p[a], mode,
                            restricted_optimal)

    sols = parallel_map(one, range(k), n_jobs)
    params = {"L": L, "U": U, "mode": mode, "restricted_optimal": restricted_optimal,
              "price_input": c.T.tolist(), "price_output": p.T.tolist()}
    if notes:
        params["notes"] = notes
    return assemble(sols, modelname=mode, orientation=None, rts=rts, data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx, params=params)
