"""Result container shared by the envelopment, multiplier and slack-based models."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .data import DeaData

EFF_TOL = 1e-6
LAMBDA_TOL = 1e-9

RTS_KINDS = ("crs", "vrs", "nirs", "ndrs", "grs")


def rts_limits(rts: str, L: float = 1.0, U: float = 1.0) -> tuple[Optional[float], Optional[float]]:
    """Bounds on the sum of intensities implied by a returns-to-scale regime."""
    if rts == "crs":
        return None, None
    if rts == "vrs":
        return 1.0, 1.0
    if rts == "nirs":
        return None, 1.0
    if rts == "ndrs":
        return 1.0, None
    if rts == "grs":
        if not (0 <= L <= 1 <= U):
            raise ValueError(f"grs requires 0 <= L <= 1 <= U, got L={L}, U={U}")
        return float(L), float(U)
    raise ValueError(f"unknown rts {rts!r}; expected one of {RTS_KINDS}")


def broadcast(w, rows: int, k: int, name: str) -> np.ndarray:
    """Broadcast a scalar, per-variable vector or (rows, k) matrix to shape (k, rows)."""
    a = np.asarray(w, dtype=float)
    if a.ndim == 0:
        return np.full((k, rows), float(a))
    if a.ndim == 1:
        if a.size != rows:
            raise ValueError(f"{name} must have length {rows}")
        return np.tile(a, (k, 1))
    if a.shape == (rows, k):
        return a.T.copy()
    if a.shape == (rows, 1):
        return np.tile(a[:, 0], (k, 1))
    raise ValueError(f"{name} must be a scalar, a vector of length {rows} or a {rows}x{k} matrix")


def parallel_map(fn: Callable, items: Sequence, n_jobs: int = 1) -> list:
    """Ordered map; results do not depend on ``n_jobs``."""
    if n_jobs is None or n_jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(fn, items))


@dataclass
class DmuSolution:
    """Solution of one evaluated DMU, before assembly."""

    status: str = "optimal"
    score: float = float("nan")
    lambdas: Optional[np.ndarray] = None
    slack_input: Optional[np.ndarray] = None
    slack_output: Optional[np.ndarray] = None
    target_input: Optional[np.ndarray] = None
    target_output: Optional[np.ndarray] = None
    multiplier_input: Optional[np.ndarray] = None
    multiplier_output: Optional[np.ndarray] = None
    multiplier_rts: Optional[np.ndarray] = None
    extra: dict = field(default_factory=dict)


@dataclass(eq=False)
class DeaResult:
    """Per-DMU results of one model run.

    Array fields are indexed by position in ``dmu_eval``; ``lambdas`` has
    one column per DMU of ``dmu_ref``. Missing values (infeasible or
    undefined) are NaN and the reason is kept in ``status``.
    """

    modelname: str
    orientation: Optional[str]
    rts: str
    data: DeaData
    dmu_eval: np.ndarray
    dmu_ref: np.ndarray
    efficiency: np.ndarray
    status: list
    lambdas: Optional[np.ndarray] = None
    slack_input: Optional[np.ndarray] = None
    slack_output: Optional[np.ndarray] = None
    target_input: Optional[np.ndarray] = None
    target_output: Optional[np.ndarray] = None
    multiplier_input: Optional[np.ndarray] = None
    multiplier_output: Optional[np.ndarray] = None
    multiplier_rts: Optional[np.ndarray] = None
    extra: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    @property
    def eval_names(self) -> list[str]:
        return [self.data.dmunames[j] for j in self.dmu_eval]

    @property
    def ref_names(self) -> list[str]:
        return [self.data.dmunames[j] for j in self.dmu_ref]

    @property
    def efficient_value(self) -> float:
        """Score value that marks an efficient DMU (1 for ratios, 0 for distances)."""
        return float(self.params.get("efficient_value", 1.0))

    def slack_total(self) -> np.ndarray:
        total = np.zeros(len(self.dmu_eval))
        for sl in (self.slack_input, self.slack_output):
            if sl is not None:
                total = total + np.nansum(np.abs(sl), axis=1)
        bad = ~np.isfinite(self.efficiency)
        total[bad] = np.nan
        return total

    def classification(self) -> list[str]:
        """'efficient', 'weakly efficient', 'inefficient' or 'NA' per evaluated DMU."""
        ref = self.efficient_value
        slacks = self.slack_total()
        out = []
        for score, sl in zip(self.efficiency, slacks):
            if not np.isfinite(score):
                out.append("NA")
            elif abs(score - ref) > EFF_TOL:
                out.append("inefficient")
            elif np.isfinite(sl) and sl > EFF_TOL:
                out.append("weakly efficient")
            else:
                out.append("efficient")
        return out


def _stack(sols: list[DmuSolution], attr: str, width: int) -> Optional[np.ndarray]:
    if all(getattr(s, attr) is None for s in sols):
        return None
    out = np.full((len(sols), width), np.nan)
    for k, s in enumerate(sols):
        v = getattr(s, attr)
        if v is not None:
            out[k] = v
    return out


def assemble(sols: list[DmuSolution], *, modelname: str, orientation, rts: str, data: DeaData,
             dmu_eval: np.ndarray, dmu_ref: np.ndarray, params: Optional[dict] = None,
             nref: Optional[int] = None) -> DeaResult:
    """Collect per-DMU solutions into a :class:`DeaResult`."""
    m, s = data.m, data.s
    nref = len(dmu_ref) if nref is None else nref
    extra: dict = {}
    keys = []
    for sol in sols:
        for key in sol.extra:
            if key not in keys:
                keys.append(key)
    for key in keys:
        vals = [sol.extra.get(key) for sol in sols]
        if all(v is None for v in vals):
            continue
        sample = next(v for v in vals if v is not None)
        if np.ndim(sample) == 0:
            extra[key] = np.array([np.nan if v is None else v for v in vals], dtype=float)
        else:
            width = np.size(sample)
            arr = np.full((len(vals), width), np.nan)
            for k, v in enumerate(vals):
                if v is not None:
                    arr[k] = v
            extra[key] = arr
    return DeaResult(
        modelname=modelname, orientation=orientation, rts=rts, data=data,
        dmu_eval=np.asarray(dmu_eval), dmu_ref=np.asarray(dmu_ref),
        efficiency=np.array([s_.score for s_ in sols], dtype=float),
        status=[s_.status for s_ in sols],
        lambdas=_stack(sols, "lambdas", nref),
        slack_input=_stack(sols, "slack_input", m), slack_output=_stack(sols, "slack_output", s),
        target_input=_stack(sols, "target_input", m), target_output=_stack(sols, "target_output", s),
        multiplier_input=_stack(sols, "multiplier_input", m),
        multiplier_output=_stack(sols, "multiplier_output", s),
        multiplier_rts=_stack(sols, "multiplier_rts", 2),
        extra=extra, params=dict(params or {}),
    )


def na_solution(status: str, nref: int, m: int, s: int, with_lambda: bool = True) -> DmuSolution:
    nan = np.full
    return DmuSolution(status=status, score=float("nan"),
                       lambdas=nan(nref, np.nan) if with_lambda else None,
                       slack_input=nan(m, np.nan), slack_output=nan(s, np.nan),
                       target_input=nan(m, np.nan), target_output=nan(s, np.nan))


def add_rts_rows(b, lam: str, lo, hi, scale: Optional[str] = None):
    """Add ``lo <= e.lambda <= hi`` to an :class:`~deakit.lp.LpBuilder`.

    With ``scale`` the bounds are multiplied by that single variable, as in
    Charnes-Cooper linearized programs.
    """
    if lo is None and hi is None:
        return
    nref = b[lam].stop - b[lam].start
    ones = np.ones(nref)

    def row(bound):
        if scale is None:
            return {lam: ones}, bound
        return {lam: ones, scale: -bound}, 0.0

    if lo is not None and hi is not None and lo == hi:
        coefs, rhs = row(lo)
        b.add_row(coefs, "=", rhs)
        return
    if lo is not None:
        coefs, rhs = row(lo)
        b.add_row(coefs, ">=", rhs)
    if hi is not None:
        coefs, rhs = row(hi)
        b.add_row(coefs, "<=", rhs)
