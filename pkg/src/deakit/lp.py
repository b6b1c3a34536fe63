"""Linear-program container and solver wrapper.

Every model in the package builds a :class:`LinearProgram` and hands it to
:func:`solve`. Solving is delegated to the HiGHS dual simplex shipped with
SciPy, which is deterministic for identical inputs and returns basic
optimal solutions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linprog

FEAS_TOL = 1e-9
OPT_TOL = 1e-9

_SENSES = ("<=", "=", ">=")

Bound = tuple[Optional[float], Optional[float]]


@dataclass(frozen=True)
class LinearProgram:
    """A linear program in row form.

    Parameters
    ----------
    objective : ndarray, shape (nvar,)
    A : ndarray, shape (nrow, nvar)
    senses : sequence of {"<=", "=", ">="}
    rhs : ndarray, shape (nrow,)
    bounds : sequence of (lo, hi)
        ``None`` means unbounded on that side. The default for every
        variable is ``(0, None)``.
    maximize : bool
    names : sequence of str, optional
        Variable names, only used by :func:`dump`.
    """

    objective: np.ndarray
    A: np.ndarray
    senses: tuple[str, ...]
    rhs: np.ndarray
    bounds: tuple[Bound, ...]
    maximize: bool = False
    names: tuple[str, ...] = ()

    def __post_init__(self):
        nvar = len(self.objective)
        if self.A.ndim != 2 or self.A.shape[1] != nvar:
            raise ValueError("constraint rows must have the same length as the objective")
        if len(self.senses) != self.A.shape[0] or len(self.rhs) != self.A.shape[0]:
            raise ValueError("senses and rhs must have one entry per row")
        if any(s not in _SENSES for s in self.senses):
            raise ValueError(f"unknown constraint sense in {self.senses}")
        if len(self.bounds) != nvar:
            raise ValueError("one bound pair per variable is required")
        for lo, hi in self.bounds:
            if lo is not None and hi is not None and lo > hi:
                raise ValueError(f"invalid bound ({lo}, {hi})")
        if self.names and len(self.names) != nvar:
            raise ValueError("names must match the number of variables")

    @property
    def nvar(self) -> int:
        return len(self.objective)

    @property
    def nrow(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class LpSolution:
    status: str
    objective: float = float("nan")
    x: np.ndarray = field(default_factory=lambda: np.empty(0))

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


class LpBuilder:
    """Incremental construction of a :class:`LinearProgram`.

    Variables are declared in named blocks first; rows are then added as
    ``{block: coefficients}`` mappings.
    """

    def __init__(self):
        self._blocks: dict[str, slice] = {}
        self._names: list[str] = []
        self._bounds: list[Bound] = []
        self._rows: list[np.ndarray] = []
        self._senses: list[str] = []
        self._rhs: list[float] = []
        self._obj: Optional[np.ndarray] = None

    def add_vars(self, block: str, size: int, lo: Optional[float] = 0.0,
                 hi: Optional[float] = None, labels: Optional[Sequence[str]] = None) -> slice:
        if self._rows:
            raise RuntimeError("declare all variables before adding rows")
        start = len(self._names)
        sl = slice(start, start + size)
        self._blocks[block] = sl
        if labels is None:
            labels = [block] if size == 1 else [f"{block}[{k}]" for k in range(size)]
        self._names.extend(labels)
        self._bounds.extend([(lo, hi)] * size)
        return sl

    def __getitem__(self, block: str) -> slice:
        return self._blocks[block]

    def set_bounds(self, block: str, lo, hi):
        sl = self._blocks[block]
        for k in range(sl.start, sl.stop):
            self._bounds[k] = (lo, hi)

    def set_bound(self, block: str, k: int, lo, hi):
        """Bounds of the ``k``-th variable of ``block``."""
        self._bounds[self._blocks[block].start + k] = (lo, hi)

    def _vector(self, coefs: dict) -> np.ndarray:
        row = np.zeros(len(self._names))
        for key, val in coefs.items():
            sl = self._blocks[key] if isinstance(key, str) else key
            row[sl] += val
        return row

    def add_row(self, coefs: dict, sense: str, rhs: float):
        self._rows.append(self._vector(coefs))
        self._senses.append(sense)
        self._rhs.append(float(rhs))

    def set_objective(self, coefs: dict):
        self._obj = self._vector(coefs)

    def build(self, maximize: bool = False) -> LinearProgram:
        nvar = len(self._names)
        A = np.vstack(self._rows) if self._rows else np.zeros((0, nvar))
        obj = self._obj if self._obj is not None else np.zeros(nvar)
        return LinearProgram(obj, A, tuple(self._senses), np.asarray(self._rhs, float),
                             tuple(self._bounds), maximize, tuple(self._names))


def solve(p: LinearProgram) -> LpSolution:
    """Solve ``p`` and return its status, optimal value and primal point.

    Status is one of ``"optimal"``, ``"infeasible"``, ``"unbounded"`` or
    ``"error"`` (numerical failure reported by the backend).
    """
    sign = -1.0 if p.maximize else 1.0
    senses = np.asarray(p.senses)
    le, ge, eq = senses == "<=", senses == ">=", senses == "="
    A_ub = np.vstack([p.A[le], -p.A[ge]])
    b_ub = np.concatenate([p.rhs[le], -p.rhs[ge]])
    kwargs = {}
    if A_ub.shape[0]:
        kwargs.update(A_ub=A_ub, b_ub=b_ub)
    if eq.any():
        kwargs.update(A_eq=p.A[eq], b_eq=p.rhs[eq])
    res = linprog(sign * p.objective, bounds=list(p.bounds), method="highs-ds",
                  options={"primal_feasibility_tolerance": FEAS_TOL,
                           "dual_feasibility_tolerance": OPT_TOL}, **kwargs)
    if res.status == 0:
        return LpSolution("optimal", float(sign * res.fun), np.asarray(res.x, float))
    if res.status == 2:
        return LpSolution("infeasible")
    if res.status == 3:
        return LpSolution("unbounded")
    return LpSolution("error")


def _fmt(v: float) -> str:
    return f"{v:.10g}"


def dump(p: LinearProgram) -> str:
    """Plain-text listing: objective, then one constraint per line, then bounds."""
    names = p.names or tuple(f"x{k + 1}" for k in range(p.nvar))

    def linear(coefs):
        terms = [f"{'-' if c < 0 else '+'} {_fmt(abs(c))} {names[k]}"
                 for k, c in enumerate(coefs) if c != 0]
        if not terms:
            return "0"
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else text

    lines = [f"{'max' if p.maximize else 'min'}: {linear(p.objective)}", "subject to"]
    for row, sense, rhs in zip(p.A, p.senses, p.rhs):
        lines.append(f"  {linear(row)} {sense} {_fmt(rhs)}")
    lines.append("bounds")
    for name, (lo, hi) in zip(names, p.bounds):
        if lo == 0 and hi is None:
            continue
        lo_s = "-inf" if lo is None else _fmt(lo)
        hi_s = "inf" if hi is None else _fmt(hi)
        lines.append(f"  {lo_s} <= {name} <= {hi_s}")
    return "\n".join(lines) + "\n"
