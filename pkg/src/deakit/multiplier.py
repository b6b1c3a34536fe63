"""Radial models in multiplier (dual) form."""
from __future__ import annotations

import numpy as np

from .data import DeaData
from .lp import LinearProgram, solve
from .results import DeaResult, DmuSolution, assemble, parallel_map, rts_limits


def _rts_multipliers(rts: str, L: float, U: float):
    """Return (L, U, use_xiL, use_xiU) for the given regime."""
    lo, hi = rts_limits(rts, L, U)
    if rts == "crs":
        return 0.0, 0.0, False, False
    if rts == "vrs":
        return 1.0, 1.0, True, True
    if rts == "nirs":
        return 0.0, 1.0, False, True
    if rts == "ndrs":
        return 1.0, 0.0, True, False
    return lo, hi, True, True


def multiplier_program(x_o, y_o, Xr, Yr, orientation: str = "io", rts: str = "crs",
                       L: float = 1.0, U: float = 1.0, epsilon: float = 0.0) -> LinearProgram:
    """Multiplier program with variables ``(v, u, xi_L, xi_U)``.

    Input orientation maximizes ``u y_o + L xi_L + U xi_U`` with ``v x_o = 1``;
    output orientation minimizes ``v x_o + L xi_L + U xi_U`` with ``u y_o = 1``.
    Unused rts multipliers are fixed at zero.
    """
    m, nref = Xr.shape
    s = Yr.shape[0]
    Lc, Uc, useL, useU = _rts_multipliers(rts, L, U)
    nvar = m + s + 2
    obj = np.zeros(nvar)
    if orientation == "io":
        obj[m:m + s] = y_o
        obj[-2:] = (Lc, Uc)
        norm = np.concatenate([x_o, np.zeros(s), [0.0, 0.0]])
        body = np.hstack([-Xr.T, Yr.T, np.ones((nref, 2))])
        senses = ("=",) + ("<=",) * nref
        bL = (0.0, None) if useL else (0.0, 0.0)
        bU = (None, 0.0) if useU else (0.0, 0.0)
    elif orientation == "oo":
        obj[:m] = x_o
        obj[-2:] = (Lc, Uc)
        norm = np.concatenate([np.zeros(m), y_o, [0.0, 0.0]])
        body = np.hstack([Xr.T, -Yr.T, np.ones((nref, 2))])
        senses = ("=",) + (">=",) * nref
        bL = (None, 0.0) if useL else (0.0, 0.0)
        bU = (0.0, None) if useU else (0.0, 0.0)
    else:
        raise ValueError(f"orientation must be 'io' or 'oo', got {orientation!r}")
    rows = np.vstack([norm, body])
    rhs = np.concatenate([[1.0], np.zeros(nref)])
    bounds = ((epsilon, None),) * (m + s) + (bL, bU)
    names = tuple(f"v[{i}]" for i in range(m)) + tuple(f"u[{r}]" for r in range(s)) + ("xi_L", "xi_U")
    return LinearProgram(obj, rows, senses, rhs, bounds, maximize=orientation == "io", names=names)


def multiplier_solve(x_o, y_o, Xr, Yr, orientation="io", rts="crs", L=1.0, U=1.0,
                     epsilon=0.0) -> DmuSolution:
    m, s = Xr.shape[0], Yr.shape[0]
    sol = solve(multiplier_program(x_o, y_o, Xr, Yr, orientation, rts, L, U, epsilon))
    if not sol.ok:
        return DmuSolution(status=sol.status, multiplier_input=np.full(m, np.nan),
                           multiplier_output=np.full(s, np.nan),
                           multiplier_rts=np.full(2, np.nan))
    x = sol.x + 0.0
    return DmuSolution(status="optimal", score=sol.objective + 0.0, multiplier_input=x[:m],
                       multiplier_output=x[m:m + s], multiplier_rts=x[m + s:])


def model_multiplier(data: DeaData, orientation: str = "io", rts: str = "crs", L: float = 1.0,
                     U: float = 1.0, epsilon: float = 0.0, dmu_eval=None, dmu_ref=None,
                     returnlp: bool = False, n_jobs: int = 1):
    """Radial model in multiplier form with lower bound ``epsilon`` on the weights.

    Infeasible programs (for instance when ``epsilon`` is too large) give NaN
    scores for the affected DMUs.

    Returns
    -------
    DeaResult
        ``multiplier_input`` (k, m), ``multiplier_output`` (k, s) and
        ``multiplier_rts`` (k, 2) holding ``(xi_L, xi_U)``.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    if any(data.special_sets().values()):
        raise ValueError("the multiplier model does not support special variables")
    rts_limits(rts, L, U)
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    Xr, Yr = data.input[:, ref_idx], data.output[:, ref_idx]
    if returnlp:
        return [multiplier_program(data.input[:, j], data.output[:, j], Xr, Yr, orientation, rts,
                                   L, U, epsilon) for j in eval_idx]

    def one(j):
        return multiplier_solve(data.input[:, j], data.output[:, j], Xr, Yr, orientation, rts,
                                L, U, epsilon)

    sols = parallel_map(one, list(eval_idx), n_jobs)
    return assemble(sols, modelname="multiplier", orientation=orientation, rts=rts, data=data,
                    dmu_eval=eval_idx, dmu_ref=ref_idx,
                    params={"epsilon": epsilon, "L": L, "U": U})
