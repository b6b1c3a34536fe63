"""Cross-efficiency: arbitrary weights, methods II and III, Lim-Zhu correction, Maverick index."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .data import DeaData
from .lp import LinearProgram, solve
from .multiplier import _rts_multipliers, multiplier_program
from .results import parallel_map, rts_limits

BOX = 1e6
METHODS = ("Arbitrary", "M2_agg", "M2_ben", "M3_agg", "M3_ben")


@dataclass(eq=False)
class CrossMethod:
    """Multipliers and cross-efficiency aggregates of one weight-selection method.

    ``cross_eff[o, k]`` rates DMU ``k`` with the weights of DMU ``o`` (both
    positions in ``dmu_eval``).
    """

    multiplier_input: np.ndarray
    multiplier_output: np.ndarray
    multiplier_rts: np.ndarray
    cross_eff: np.ndarray
    e: np.ndarray
    A: np.ndarray
    maverick: np.ndarray
    status: list
    bounded: np.ndarray


@dataclass(eq=False)
class CrossEffResult:
    orientation: str
    rts: str
    L: float
    U: float
    selfapp: bool
    correction: bool
    epsilon: float
    data: DeaData
    dmu_eval: np.ndarray
    dmu_ref: np.ndarray
    efficiency: np.ndarray
    methods: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def eval_names(self) -> list[str]:
        return [self.data.dmunames[j] for j in self.dmu_eval]

    def __getitem__(self, name: str) -> CrossMethod:
        return self.methods[name]


def cross_matrix(v, u, xi, X, Y, orientation, Lc, Uc, corrected: bool) -> np.ndarray:
    """``E[o, k]`` from multipliers (rows ``o``) and data columns ``k``."""
    vx = v @ X
    uy = u @ Y
    shift = (xi[:, 0] * Lc + xi[:, 1] * Uc)[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        if orientation == "io":
            return uy / (vx - shift) if corrected else (uy + shift) / vx
        return (vx + shift) / uy


def aggregates(E: np.ndarray, selfapp: bool):
    """Column means ``e``, row means ``A`` and the Maverick index."""
    M = np.array(E, float)
    if not selfapp:
        np.fill_diagonal(M, np.nan)
    with np.errstate(invalid="ignore", divide="ignore"):
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            e = np.nanmean(M, axis=0) if M.shape[0] > 1 or selfapp else np.diag(E).copy()
            A = np.nanmean(M, axis=1) if M.shape[0] > 1 or selfapp else np.diag(E).copy()
        diag = np.diag(E)
        mav = np.where(e != 0, (diag - e) / np.where(e != 0, e, 1.0), np.nan)
    return e, A, mav


def method_program(o: int, Xe, Ye, Xr, Yr, E_oo, orientation, rts, L, U, epsilon, method: str,
                   aggressive: bool, corrected: bool, box: bool) -> LinearProgram:
    """Method II or III program for the DMU at position ``o`` of the evaluated set."""
    m, s = Xe.shape[0], Ye.shape[0]
    Lc, Uc, _, _ = _rts_multipliers(rts, L, U)
    base = multiplier_program(Xe[:, o], Ye[:, o], Xr, Yr, orientation, rts, L, U, epsilon)
    n = Xe.shape[1]
    others = np.arange(n) != o
    sx, sy = Xe[:, others].sum(axis=1), Ye[:, others].sum(axis=1)
    rts_part = (n - 1) * np.array([Lc, Uc])
    A = np.array(base.A)
    rhs = np.array(base.rhs)
    senses = list(base.senses)
    io = orientation == "io"
    if method == "M2":
        if io:
            obj = np.concatenate([-sx, sy, rts_part])
            diag = np.concatenate([np.zeros(m), Ye[:, o], [Lc, Uc]])
        else:
            obj = np.concatenate([sx, -sy, rts_part])
            diag = np.concatenate([Xe[:, o], np.zeros(s), [Lc, Uc]])
        A = np.vstack([A, diag])
        rhs = np.append(rhs, E_oo)
    else:
        if io:
            if corrected:
                obj = np.concatenate([np.zeros(m), sy, [0.0, 0.0]])
                A[0] = np.concatenate([sx, np.zeros(s), -rts_part])
            else:
                obj = np.concatenate([np.zeros(m), sy, rts_part])
                A[0] = np.concatenate([sx, np.zeros(s), [0.0, 0.0]])
            diag = np.concatenate([-E_oo * Xe[:, o], Ye[:, o], [Lc, Uc]])
        else:
            obj = np.concatenate([sx, np.zeros(s), rts_part])
            A[0] = np.concatenate([np.zeros(m), sy, [0.0, 0.0]])
            diag = np.concatenate([Xe[:, o], -E_oo * Ye[:, o], [Lc, Uc]])
        A = np.vstack([A, diag])
        rhs = np.append(rhs, 0.0)
    senses.append("=")
    bounds = list(base.bounds)
    if box:
        bounds = [(lo, BOX if hi is None else hi) for lo, hi in bounds[:m + s]] + \
                 [(-BOX if lo is None else lo, BOX if hi is None else hi) for lo, hi in bounds[m + s:]]
    # aggressive lowers others' scores: minimize for io, maximize for oo
    maximize = (not aggressive) if io else aggressive
    return LinearProgram(obj, A, tuple(senses), rhs, tuple(bounds), maximize=maximize,
                         names=base.names)


def _solve_method(o, Xe, Ye, Xr, Yr, E_oo, orientation, rts, L, U, epsilon, method, aggressive,
                  corrected):
    m, s = Xe.shape[0], Ye.shape[0]
    if not np.isfinite(E_oo):
        return "NA_self", np.full(m + s + 2, np.nan), False
    p = method_program(o, Xe, Ye, Xr, Yr, E_oo, orientation, rts, L, U, epsilon, method,
                       aggressive, corrected, box=False)
    sol = solve(p)
    bounded = False
    if sol.status == "unbounded":
        bounded = True
        sol = solve(method_program(o, Xe, Ye, Xr, Yr, E_oo, orientation, rts, L, U, epsilon,
                                   method, aggressive, corrected, box=True))
    if not sol.ok:
        return sol.status, np.full(m + s + 2, np.nan), bounded
    return "optimal", sol.x + 0.0, bounded


def cross_efficiency(data: DeaData, orientation: str = "io", rts: str = "crs", L: float = 1.0,
                     U: float = 1.0, epsilon: float = 0.0, selfapp: bool = True,
                     correction: bool = False, M2: bool = True, M3: bool = True, dmu_eval=None,
                     dmu_ref=None, n_jobs: int = 1) -> CrossEffResult:
    """Cross-efficiency matrices for arbitrary weights and methods II/III.

    The matrices are square over ``dmu_eval``; the multiplier programs use
    ``dmu_ref`` as the reference technology. Aggressive methods that turn
    out unbounded are re-solved with multipliers boxed to ``[0, 1e6]``
    (``|xi| <= 1e6``); this is flagged per DMU in ``bounded``. The correction
    of negative scores only applies to input-oriented vrs, nirs and grs
    models.
    """
    if orientation not in ("io", "oo"):
        raise ValueError(f"orientation must be 'io' or 'oo', got {orientation!r}")
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    if any(data.special_sets().values()):
        raise ValueError("cross_efficiency does not support special variables")
    rts_limits(rts, L, U)
    eval_idx = data.index(dmu_eval)
    ref_idx = data.index(dmu_ref)
    Xe, Ye = data.input[:, eval_idx], data.output[:, eval_idx]
    Xr, Yr = data.input[:, ref_idx], data.output[:, ref_idx]
    m, s, n = data.m, data.s, len(eval_idx)
    Lc, Uc, _, _ = _rts_multipliers(rts, L, U)
    corrected = correction and orientation == "io" and rts in ("vrs", "nirs", "grs")
    notes = []
    if correction and not corrected:
        notes.append("correction only applies to input-oriented vrs, nirs and grs models")

    def arbitrary(o):
        sol = solve(multiplier_program(Xe[:, o], Ye[:, o], Xr, Yr, orientation, rts, L, U,
                                       epsilon))
        if not sol.ok:
            return sol.status, np.nan, np.full(m + s + 2, np.nan)
        return "optimal", sol.objective + 0.0, sol.x + 0.0

    out = parallel_map(arbitrary, list(range(n)), n_jobs)
    eff = np.array([o[1] for o in out])

    def pack(rows, status, bounded):
        W = np.vstack(rows) if rows else np.zeros((0, m + s + 2))
        v, u, xi = W[:, :m], W[:, m:m + s], W[:, m + s:]
        E = cross_matrix(v, u, xi, Xe, Ye, orientation, Lc, Uc, corrected)
        e, A, mav = aggregates(E, selfapp)
        return CrossMethod(multiplier_input=v, multiplier_output=u, multiplier_rts=xi,
                           cross_eff=E, e=e, A=A, maverick=mav, status=list(status),
                           bounded=np.asarray(bounded, bool))

    result = CrossEffResult(orientation=orientation, rts=rts, L=L, U=U, selfapp=selfapp,
                            correction=corrected, epsilon=epsilon, data=data, dmu_eval=eval_idx,
                            dmu_ref=ref_idx, efficiency=eff, notes=notes)
    result.methods["Arbitrary"] = pack([o[2] for o in out], [o[0] for o in out], [False] * n)
    for method, flag in (("M2", M2), ("M3", M3)):
        if not flag:
            continue
        for suffix, aggressive in (("agg", True), ("ben", False)):
            res = parallel_map(lambda o: _solve_method(o, Xe, Ye, Xr, Yr, eff[o], orientation,
                                                       rts, L, U, epsilon, method, aggressive,
                                                       corrected and method == "M3"),
                               list(range(n)), n_jobs)
            result.methods[f"{method}_{suffix}"] = pack([r[1] for r in res], [r[0] for r in res],
                                                       [r[2] for r in res])
    return result
