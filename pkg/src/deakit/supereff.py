"""Super-efficiency models: radial, slacks-based (SSBM) and additive."""
from __future__ import annotations

import numpy as np

from .data import DeaData
from .lp import LinearProgram, LpBuilder, solve
from .radial import model_basic
from .results import (DeaResult, DmuSolution, add_rts_rows, assemble, broadcast, na_solution,
                      parallel_map, rts_limits)
from .sbm import normalize_weights


def _excluded(ref_idx: np.ndarray, j: int) -> np.ndarray:
    return ref_idx[ref_idx != j]


def _embed(lam_sub, sub_idx, ref_idx):
    lam = np.zeros(len(ref_idx))
    pos = {int(k): a for a, k in enumerate(ref_idx)}
    for k, v in zip(sub_idx, lam_sub):
        lam[pos[int(k)]] = v
    return lam


def model_supereff(data: DeaData, orientation: str = "io", rts: str = "crs", L: float = 1.0,
                   U: float = 1.0, dmu_eval=None, dmu_ref=None, n_jobs: int = 1,
                   **kwargs) -> DeaResult:
    """Radial super-efficiency: each DMU is evaluated against ``dmu_ref`` without itself.

    Extra keyword arguments go to :func:`~deakit.radial.model_basic`
    (``maxslack``, weights, directions, translations). Infeasible programs,
    possible under non-constant returns to scale, give NaN with status
    ``"infeasible"``; a DMU whose reference set becomes empty gets
    ``"empty_reference"``.
    """
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    m, s = data.m, data.s

    def one(j):
        sub = _excluded(ref_idx, j)
        if sub.size == 0:
            return na_solution("empty_reference", len(ref_idx), m, s), None
        r = model_basic(data, orientation, rts, L, U, dmu_eval=[j], dmu_ref=sub, **kwargs)
        sol = DmuSolution(status=r.status[0], score=float(r.efficiency[0]),
                          lambdas=_embed(r.lambdas[0], sub, ref_idx),
                          slack_input=r.slack_input[0], slack_output=r.slack_output[0],
                          target_input=r.target_input[0], target_output=r.target_output[0])
        return sol, r.params

    out = parallel_map(one, list(eval_idx), n_jobs)
    sols = [o[0] for o in out]
    params = next((p for _, p in out if p is not None), {})
    params = {k: v for k, v in params.items() if k not in ("weight_slack_i", "weight_slack_o",
                                                          "dir_input", "dir_output")}
    return assemble(sols, modelname="supereff", orientation=orientation, rts=rts, data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx, params=params)


# --------------------------------------------------------------------------- SSBM / additive


def super_program(x_o, y_o, Xr, Yr, lo, hi, c_in, c_out, mode: str, use_in: bool,
                  use_out: bool) -> LinearProgram:
    """Super-slack program over a reference set without the evaluated DMU.

    ``mode="cc"`` is the Charnes-Cooper form of the non-oriented SSBM with
    variables ``(tau, Lambda, T-, T+)``: minimize ``tau + c_in.T-`` subject
    to ``tau - c_out.T+ = 1``. ``mode="linear"`` minimizes
    ``c_in.t- + c_out.t+`` directly. Super-slacks are dropped (fixed at zero)
    on a side with ``use_* = False``; then that side reads ``X lambda <= x_o``
    or ``Y lambda >= y_o``.
    """
    m, nref = Xr.shape
    s = Yr.shape[0]
    cc = mode == "cc"
    b = LpBuilder()
    if cc:
        b.add_vars("tau", 1, 0.0, None)
    b.add_vars("lambda", nref)
    b.add_vars("t_in", m, 0.0, None if use_in else 0.0)
    b.add_vars("t_out", s, 0.0, None if use_out else 0.0)
    eye_m, eye_s = np.eye(m), np.eye(s)
    for i in range(m):
        if cc:
            b.add_row({"lambda": Xr[i], "t_in": -eye_m[i], "tau": [-x_o[i]]}, "<=", 0.0)
        else:
            b.add_row({"lambda": Xr[i], "t_in": -eye_m[i]}, "<=", x_o[i])
    for r in range(s):
        if cc:
            b.add_row({"lambda": Yr[r], "t_out": eye_s[r], "tau": [-y_o[r]]}, ">=", 0.0)
            if use_out:
                b.add_row({"t_out": eye_s[r], "tau": [-y_o[r]]}, "<=", 0.0)
        else:
            b.add_row({"lambda": Yr[r], "t_out": eye_s[r]}, ">=", y_o[r])
            if use_out:
                b.add_row({"t_out": eye_s[r]}, "<=", y_o[r])
    add_rts_rows(b, "lambda", lo, hi, scale="tau" if cc else None)
    if cc:
        b.add_row({"tau": [1.0], "t_out": -c_out}, "=", 1.0)
        b.set_objective({"tau": [1.0], "t_in": c_in})
    else:
        b.set_objective({"t_in": c_in, "t_out": c_out})
    return b.build()


def _ratio_coefs(x_o, y_o, w_in, w_out):
    m, s = len(x_o), len(y_o)
    c_in = np.where(x_o > 0, w_in / (m * np.where(x_o > 0, x_o, 1.0)), 0.0)
    c_out = np.where(y_o > 0, w_out / (s * np.where(y_o > 0, y_o, 1.0)), 0.0)
    return c_in, c_out


def delta_score(x_o, y_o, t_in, t_out, w_in, w_out, use_in, use_out) -> float:
    """SSBM score ``(1 + mean(w t-/x_o)) / (1 - mean(w t+/y_o))`` with unused sides dropped."""
    c_in, c_out = _ratio_coefs(x_o, y_o, w_in, w_out)
    num = 1.0 + (float(c_in @ t_in) if use_in else 0.0)
    den = 1.0 - (float(c_out @ t_out) if use_out else 0.0)
    return num / den if den > 0 else float("nan")


def _sides(orientation):
    if orientation in ("no", None):
        return True, True
    if orientation == "io":
        return True, False
    if orientation == "oo":
        return False, True
    raise ValueError(f"orientation must be 'no', 'io' or 'oo', got {orientation!r}")


def _super_solution(sol, x_o, y_o, Xr, Yr, sub, ref_idx, cc, score):
    m, s = len(x_o), len(y_o)
    x = sol.x
    nsub = len(sub)
    if cc:
        x = x[1:] / sol.x[0]
    lam = np.where(np.abs(x[:nsub]) < 1e-12, 0.0, x[:nsub])
    return DmuSolution(status="optimal", score=score + 0.0, lambdas=_embed(lam, sub, ref_idx),
                       slack_input=x[nsub:nsub + m] + 0.0, slack_output=x[nsub + m:] + 0.0,
                       target_input=Xr @ lam, target_output=Yr @ lam)


def model_sbmsupereff(data: DeaData, orientation: str = "no", rts: str = "crs", L: float = 1.0,
                      U: float = 1.0, weight_slack_i=1.0, weight_slack_o=1.0, dmu_eval=None,
                      dmu_ref=None, n_jobs: int = 1) -> DeaResult:
    """Slacks-based super-efficiency; scores are delta >= 1 and slacks are super-slacks.

    ``orientation="io"`` drops output super-slacks and ``"oo"`` drops input
    super-slacks.
    """
    use_in, use_out = _sides(orientation)
    lo, hi = rts_limits(rts, L, U)
    if any(data.special_sets().values()):
        raise ValueError("model_sbmsupereff does not support special variables")
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    k = len(eval_idx)
    w_in = np.array([normalize_weights(w) for w in broadcast(weight_slack_i, data.m, k,
                                                             "weight_slack_i")])
    w_out = np.array([normalize_weights(w) for w in broadcast(weight_slack_o, data.s, k,
                                                              "weight_slack_o")])

    def one(a):
        j = eval_idx[a]
        sub = _excluded(ref_idx, j)
        if sub.size == 0:
            return na_solution("empty_reference", len(ref_idx), data.m, data.s)
        x_o, y_o = data.input[:, j], data.output[:, j]
        Xr, Yr = data.input[:, sub], data.output[:, sub]
        c_in, c_out = _ratio_coefs(x_o, y_o, w_in[a], w_out[a])
        cc = use_in and use_out
        p = super_program(x_o, y_o, Xr, Yr, lo, hi, c_in, c_out, "cc" if cc else "linear",
                          use_in, use_out)
        sol = solve(p)
        if not sol.ok:
            return na_solution(sol.status, len(ref_idx), data.m, data.s)
        if cc:
            score = sol.objective
        elif use_in:
            score = 1.0 + sol.objective
        else:
            score = 1.0 / (1.0 - sol.objective) if sol.objective < 1 else float("nan")
        return _super_solution(sol, x_o, y_o, Xr, Yr, sub, ref_idx, cc, score)

    sols = parallel_map(one, range(k), n_jobs)
    return assemble(sols, modelname="sbmsupereff", orientation=orientation, rts=rts, data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx,
                    params={"L": L, "U": U, "weight_slack_i": w_in.T.tolist(),
                            "weight_slack_o": w_out.T.tolist()})


def model_addsupereff(data: DeaData, orientation=None, rts: str = "crs", L: float = 1.0,
                      U: float = 1.0, weight_slack_i=None, weight_slack_o=None, dmu_eval=None,
                      dmu_ref=None, n_jobs: int = 1) -> DeaResult:
    """Additive super-efficiency: minimize ``w- t- + w+ t+`` over super-slacks.

    Default weights are ``1/x_o`` and ``1/y_o`` (unit invariant).
    ``orientation="io"`` zeroes output weights and drops output super-slacks;
    ``"oo"`` does the same for inputs. ``efficiency`` holds the slacks-based
    score delta of the optimal solution and ``extra["objective"]`` the
    additive objective.
    """
    use_in, use_out = _sides(orientation)
    lo, hi = rts_limits(rts, L, U)
    if any(data.special_sets().values()):
        raise ValueError("model_addsupereff does not support special variables")
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    k = len(eval_idx)
    Xo, Yo = data.input[:, eval_idx], data.output[:, eval_idx]
    if weight_slack_i is None:
        if use_in and np.any(Xo <= 0):
            raise ValueError("default input weights 1/x_o need positive inputs")
        weight_slack_i = 1.0 / np.where(Xo > 0, Xo, 1.0)
    if weight_slack_o is None:
        if use_out and np.any(Yo <= 0):
            raise ValueError("default output weights 1/y_o need positive outputs")
        weight_slack_o = 1.0 / np.where(Yo > 0, Yo, 1.0)
    w_in = broadcast(weight_slack_i, data.m, k, "weight_slack_i")
    w_out = broadcast(weight_slack_o, data.s, k, "weight_slack_o")
    if not use_in:
        w_in = np.zeros_like(w_in)
    if not use_out:
        w_out = np.zeros_like(w_out)
    if np.any(w_in < 0) or np.any(w_out < 0):
        raise ValueError("slack weights must be nonnegative")
    if np.any(w_in.sum(axis=1) + w_out.sum(axis=1) == 0):
        raise ValueError("slack weights are all zero")

    def one(a):
        j = eval_idx[a]
        sub = _excluded(ref_idx, j)
        if sub.size == 0:
            out = na_solution("empty_reference", len(ref_idx), data.m, data.s)
            out.extra["objective"] = np.nan
            return out
        x_o, y_o = data.input[:, j], data.output[:, j]
        Xr, Yr = data.input[:, sub], data.output[:, sub]
        sol = solve(super_program(x_o, y_o, Xr, Yr, lo, hi, w_in[a], w_out[a], "linear",
                                  use_in, use_out))
        if not sol.ok:
            out = na_solution(sol.status, len(ref_idx), data.m, data.s)
            out.extra["objective"] = np.nan
            return out
        n_sub = len(sub)
        t_in, t_out = sol.x[n_sub:n_sub + data.m], sol.x[n_sub + data.m:]
        delta = delta_score(x_o, y_o, t_in, t_out, np.ones(data.m), np.ones(data.s), use_in,
                            use_out)
        res = _super_solution(sol, x_o, y_o, Xr, Yr, sub, ref_idx, False, delta)
        res.extra["objective"] = sol.objective + 0.0
        return res

    sols = parallel_map(one, range(k), n_jobs)
    return assemble(sols, modelname="addsupereff", orientation=orientation, rts=rts, data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx,
                    params={"L": L, "U": U, "weight_slack_i": w_in.T.tolist(),
                            "weight_slack_o": w_out.T.tolist()})
