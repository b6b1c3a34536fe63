"""Slacks-based measure models: SBM, oriented SBM and SBM-Max (kaizen)."""
from __future__ import annotations

import numpy as np

from .additive import resolve_facets
from .data import DeaData
from .lp import LinearProgram, LpBuilder, solve
from .results import (DeaResult, DmuSolution, add_rts_rows, assemble, broadcast, na_solution,
                      parallel_map, rts_limits)

ZERO_OUTPUT_DIVISOR = 100.0


def normalize_weights(w: np.ndarray) -> np.ndarray:
    """Rescale positive weights so they sum to their count."""
    w = np.asarray(w, float)
    if np.any(w <= 0) or np.any(~np.isfinite(w)):
        raise ValueError("SBM weights must be positive")
    return w * (w.size / w.sum())


def objective_terms(x_o, y_o, Yr):
    """Denominators of the slack ratios, with Tone's zero-data adaptation.

    A zero input drops its term (NaN denominator). A nonpositive output uses
    the smallest positive value of that output in the reference set divided
    by 100; if there is none the term is dropped.
    """
    den_in = np.where(x_o > 0, x_o, np.nan)
    den_out = np.array(y_o, float)
    for r in range(len(y_o)):
        if y_o[r] <= 0:
            pos = Yr[r][Yr[r] > 0]
            den_out[r] = pos.min() / ZERO_OUTPUT_DIVISOR if pos.size else np.nan
    return den_in, den_out


def sbm_program(x_o, y_o, Xr, Yr, orientation, lo, hi, ki, ko, w_in, w_out) -> LinearProgram:
    """SBM program; non-oriented uses the Charnes-Cooper variables ``(t, Lambda, S-, S+)``.

    Oriented programs are linear already: io minimizes
    ``1 - mean(w s-/x_o)`` and oo maximizes ``mean(w s+/y_o)`` (the score is
    then ``1 / (1 + objective)``). Good inputs and bad outputs (undesirable
    flags) flip their slack sign; non-controllable rows have no slack.
    """
    m, nref = Xr.shape
    s = Yr.shape[0]
    den_in, den_out = objective_terms(x_o, y_o, Yr)
    c_in = np.where(np.isnan(den_in), 0.0, w_in / (m * np.where(np.isnan(den_in), 1, den_in)))
    c_out = np.where(np.isnan(den_out), 0.0, w_out / (s * np.where(np.isnan(den_out), 1, den_out)))
    cc = orientation == "no"
    b = LpBuilder()
    if cc:
        b.add_vars("t", 1, 0.0, None)
    b.add_vars("lambda", nref)
    b.add_vars("s_in", m)
    b.add_vars("s_out", s)
    for i in range(m):
        e = np.zeros(m)
        if ki[i] != "nc":
            e[i] = -1.0 if ki[i] == "ud" else 1.0
        else:
            b.set_bound("s_in", i, 0.0, 0.0)
        if cc:
            b.add_row({"lambda": Xr[i], "s_in": e, "t": [-x_o[i]]}, "=", 0.0)
        else:
            b.add_row({"lambda": Xr[i], "s_in": e}, "=", x_o[i])
    for r in range(s):
        e = np.zeros(s)
        if ko[r] != "nc":
            e[r] = 1.0 if ko[r] == "ud" else -1.0
        else:
            b.set_bound("s_out", r, 0.0, 0.0)
        if cc:
            b.add_row({"lambda": Yr[r], "s_out": e, "t": [-y_o[r]]}, "=", 0.0)
        else:
            b.add_row({"lambda": Yr[r], "s_out": e}, "=", y_o[r])
    add_rts_rows(b, "lambda", lo, hi, scale="t" if cc else None)
    if cc:
        b.add_row({"t": [1.0], "s_out": c_out}, "=", 1.0)
        b.set_objective({"t": [1.0], "s_in": -c_in})
        return b.build()
    if orientation == "io":
        b.set_objective({"s_in": -c_in})
        return b.build()
    b.set_objective({"s_out": c_out})
    return b.build(maximize=True)


def _constant(orientation):
    return 1.0 if orientation == "io" else 0.0


def sbm_solve(x_o, y_o, Xr, Yr, orientation="no", lo=None, hi=None, ki=None, ko=None,
              w_in=None, w_out=None) -> DmuSolution:
    m, nref = Xr.shape
    s = Yr.shape[0]
    ki = np.full(m, "d", dtype=object) if ki is None else ki
    ko = np.full(s, "d", dtype=object) if ko is None else ko
    w_in = np.ones(m) if w_in is None else w_in
    w_out = np.ones(s) if w_out is None else w_out
    if nref == 0:
        return na_solution("empty_reference", 0, m, s)
    if orientation != "oo" and not np.any(x_o[ki != "nc"] > 0):
        return na_solution("zero_inputs", nref, m, s)
    sol = solve(sbm_program(x_o, y_o, Xr, Yr, orientation, lo, hi, ki, ko, w_in, w_out))
    if not sol.ok:
        return na_solution(sol.status, nref, m, s)
    x = sol.x
    if orientation == "no":
        t = x[0]
        x = x[1:] / t
        score = sol.objective
    elif orientation == "io":
        score = 1.0 + sol.objective
    else:
        score = 1.0 / (1.0 + sol.objective)
    lam = x[:nref]
    lam = np.where(np.abs(lam) < 1e-12, 0.0, lam)
    extra = {}
    if np.any(ki == "ud"):
        extra["negative_score"] = float(score < 0)
    return DmuSolution(status="optimal", score=score + 0.0, lambdas=lam,
                       slack_input=x[nref:nref + m] + 0.0, slack_output=x[nref + m:] + 0.0,
                       target_input=Xr @ lam, target_output=Yr @ lam, extra=extra)


def model_sbmeff(data: DeaData, orientation: str = "no", rts: str = "crs", L: float = 1.0,
                 U: float = 1.0, weight_input=1.0, weight_output=1.0, kaizen: bool = False,
                 maxfr=None, dmu_eval=None, dmu_ref=None, silent: bool = True,
                 returnlp: bool = False, n_jobs: int = 1):
    """Slacks-based measure of efficiency.

    Parameters
    ----------
    orientation : {"no", "io", "oo"}
    weight_input, weight_output : scalar, vector or matrix
        Positive weights, rescaled per DMU to sum to ``m`` and ``s``.
    kaizen : bool
        SBM-Max: the score is the largest over frontier facets of the SBM
        score computed against that facet alone. Facets come from ``maxfr``
        or :func:`~deakit.frontier.maximal_friends`. Scores may be
        non-monotonic.
    """
    if orientation not in ("no", "io", "oo"):
        raise ValueError(f"orientation must be 'no', 'io' or 'oo', got {orientation!r}")
    lo, hi = rts_limits(rts, L, U)
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    k = len(eval_idx)
    w_in = np.array([normalize_weights(w) for w in broadcast(weight_input, data.m, k, "weight_input")])
    w_out = np.array([normalize_weights(w)
                      for w in broadcast(weight_output, data.s, k, "weight_output")])
    ki, ko = data.input_kinds(), data.output_kinds()
    ki = np.where(ki == "nd", "d", ki)
    ko = np.where(ko == "nd", "d", ko)
    Xr, Yr = data.input[:, ref_idx], data.output[:, ref_idx]
    params = {"L": L, "U": U, "kaizen": kaizen, "weight_input": w_in.T.tolist(),
              "weight_output": w_out.T.tolist()}
    if returnlp:
        return [sbm_program(data.input[:, j], data.output[:, j], Xr, Yr, orientation, lo, hi, ki,
                            ko, w_in[a], w_out[a]) for a, j in enumerate(eval_idx)]
    if not kaizen:
        def one(a):
            j = eval_idx[a]
            return sbm_solve(data.input[:, j], data.output[:, j], Xr, Yr, orientation, lo, hi, ki,
                             ko, w_in[a], w_out[a])
    else:
        if any(data.special_sets().values()):
            raise ValueError("kaizen SBM does not support special variables")
        facets = resolve_facets(data, maxfr, rts, L, U, ref_idx)
        pos = {int(j): a for a, j in enumerate(ref_idx)}
        params.update(facets=[list(f) for f in facets],
                      notes=["SBM-Max scores can be non-monotonic"])

        def one(a):
            j = eval_idx[a]
            best, best_f = None, -1
            for f, facet in enumerate(facets):
                cols = list(facet)
                sol = sbm_solve(data.input[:, j], data.output[:, j], data.input[:, cols],
                                data.output[:, cols], orientation, lo, hi, ki, ko, w_in[a],
                                w_out[a])
                if sol.status == "optimal" and (best is None or sol.score > best.score + 1e-9):
                    best, best_f, best_cols = sol, f, cols
            if best is None:
                out = na_solution("infeasible", len(ref_idx), data.m, data.s)
                out.extra["facet"] = np.nan
                return out
            lam = np.zeros(len(ref_idx))
            for c, v in zip(best_cols, best.lambdas):
                lam[pos[c]] = v
            best.lambdas = lam
            best.extra["facet"] = float(best_f)
            return best

    sols = parallel_map(one, range(k), n_jobs)
    return assemble(sols, modelname="sbmeff", orientation=orientation, rts=rts, data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx, params=params)
