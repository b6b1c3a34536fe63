"""Data containers and ingestion for crisp, fuzzy and panel DEA data.

Matrices are stored with variables in rows and DMUs in columns, so
``data.input[:, j]`` is the input vector of DMU ``j``. Special-variable
index sets are 0-based row indices.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import pandas as pd

MAGNITUDE_RATIO = 1e5

ColumnRef = Union[int, str]


class DataWarning(UserWarning):
    """Diagnostic raised for data that is admissible but suspicious."""


def _as_index_set(idx, size: int, what: str) -> tuple[int, ...]:
    if idx is None:
        return ()
    if np.isscalar(idx):
        idx = [idx]
    out = tuple(sorted({int(k) for k in idx}))
    for k in out:
        if not 0 <= k < size:
            raise ValueError(f"{what} index {k} out of range [0, {size - 1}]")
    return out


def _diagnostics(*mats: np.ndarray) -> list[str]:
    vals = np.concatenate([np.ravel(m) for m in mats])
    notes = []
    if np.any(vals <= 0):
        notes.append("There are zero or negative data; results should be interpreted with care.")
    nz = np.abs(vals[vals != 0])
    if nz.size and nz.max() / nz.min() > MAGNITUDE_RATIO:
        notes.append("There are data with very different orders of magnitude. "
                     "Try to redefine the units of measure or some linear problems may be ill-posed.")
    return notes


def _default_names(prefix: str, k: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{j + 1}" for j in range(k))


@dataclass(frozen=True)
class _SpecialSets:
    nc_inputs: tuple[int, ...] = ()
    nc_outputs: tuple[int, ...] = ()
    nd_inputs: tuple[int, ...] = ()
    nd_outputs: tuple[int, ...] = ()
    ud_inputs: tuple[int, ...] = ()
    ud_outputs: tuple[int, ...] = ()

    @classmethod
    def build(cls, m: int, s: int, **sets) -> "_SpecialSets":
        vals = {}
        for key in ("nc_inputs", "nc_outputs", "nd_inputs", "nd_outputs", "ud_inputs", "ud_outputs"):
            size = m if key.endswith("inputs") else s
            vals[key] = _as_index_set(sets.get(key), size, key)
        for side in ("inputs", "outputs"):
            seen: dict[int, str] = {}
            for kind in ("nc", "nd", "ud"):
                for k in vals[f"{kind}_{side}"]:
                    if k in seen:
                        raise ValueError(f"{side[:-1]} {k} carries more than one special flag "
                                         f"({seen[k]} and {kind})")
                    seen[k] = kind
        return cls(**vals)

    def kinds(self, side: str, size: int) -> np.ndarray:
        """Per-row kind labels: 'd', 'nc', 'nd' or 'ud'."""
        out = np.full(size, "d", dtype=object)
        for kind in ("nc", "nd", "ud"):
            out[list(getattr(self, f"{kind}_{side}"))] = kind
        return out


@dataclass(frozen=True, eq=False)
class DeaData(_SpecialSets):
    """Crisp DEA dataset.

    Attributes
    ----------
    input : ndarray, shape (m, n)
    output : ndarray, shape (s, n)
    dmunames : tuple of str
    input_names, output_names : tuple of str
    nc_inputs, nc_outputs, nd_inputs, nd_outputs, ud_inputs, ud_outputs : tuple of int
        0-based rows flagged non-controllable, non-discretionary or undesirable.
    notes : tuple of str
        Diagnostics collected at construction.
    """

    input: np.ndarray = field(default_factory=lambda: np.zeros((1, 1)))
    output: np.ndarray = field(default_factory=lambda: np.zeros((1, 1)))
    dmunames: tuple[str, ...] = ()
    input_names: tuple[str, ...] = ()
    output_names: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def m(self) -> int:
        return self.input.shape[0]

    @property
    def s(self) -> int:
        return self.output.shape[0]

    @property
    def n(self) -> int:
        return self.input.shape[1]

    def input_kinds(self) -> np.ndarray:
        return self.kinds("inputs", self.m)

    def output_kinds(self) -> np.ndarray:
        return self.kinds("outputs", self.s)

    def has_undesirable(self) -> bool:
        return bool(self.ud_inputs or self.ud_outputs)

    def index(self, dmus) -> np.ndarray:
        """Resolve DMU labels or 0-based positions to an index array; ``None`` means all."""
        return resolve_dmus(dmus, self.dmunames)

    def special_sets(self) -> dict:
        return {k: getattr(self, k) for k in ("nc_inputs", "nc_outputs", "nd_inputs",
                                              "nd_outputs", "ud_inputs", "ud_outputs")}

    def with_matrices(self, X: np.ndarray, Y: np.ndarray, **changes) -> "DeaData":
        """Copy with new matrices (same labels and flags unless overridden)."""
        return replace(self, input=np.array(X, float), output=np.array(Y, float), **changes)


def resolve_dmus(dmus, names: Sequence[str]) -> np.ndarray:
    n = len(names)
    if dmus is None:
        return np.arange(n)
    if isinstance(dmus, (str, int, np.integer)):
        dmus = [dmus]
    lookup = {name: j for j, name in enumerate(names)}
    out = []
    for d in dmus:
        if isinstance(d, str):
            if d not in lookup:
                raise KeyError(f"unknown DMU label {d!r}")
            out.append(lookup[d])
        else:
            j = int(d)
            if not 0 <= j < n:
                raise IndexError(f"DMU index {j} out of range [0, {n - 1}]")
            out.append(j)
    if not out:
        raise ValueError("empty DMU selection")
    if len(set(out)) != len(out):
        raise ValueError("duplicate DMUs in selection")
    return np.asarray(out, dtype=int)


def _check_names(names: Sequence[str], what: str):
    if len(set(names)) != len(names):
        dup = pd.Series(list(names))
        raise ValueError(f"duplicate {what}: {sorted(set(dup[dup.duplicated()]))}")


def deadata_from_arrays(inputs, outputs, dmunames: Optional[Sequence[str]] = None,
                        input_names: Optional[Sequence[str]] = None,
                        output_names: Optional[Sequence[str]] = None, **special) -> DeaData:
    """Build :class:`DeaData` from matrices shaped (variables, DMUs)."""
    X = np.array(inputs, dtype=float, ndmin=2)
    Y = np.array(outputs, dtype=float, ndmin=2)
    if X.shape[1] != Y.shape[1]:
        raise ValueError("inputs and outputs must have the same number of DMU columns")
    m, n = X.shape
    s = Y.shape[0]
    if m < 1 or s < 1 or n < 1:
        raise ValueError("at least one input, one output and one DMU are required")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
        raise ValueError("data must be finite numbers")
    dmunames = tuple(str(d) for d in dmunames) if dmunames is not None else _default_names("DMU", n)
    input_names = tuple(map(str, input_names)) if input_names is not None else _default_names("Input", m)
    output_names = tuple(map(str, output_names)) if output_names is not None else _default_names("Output", s)
    if len(dmunames) != n or len(input_names) != m or len(output_names) != s:
        raise ValueError("name vectors must match the matrix dimensions")
    _check_names(dmunames, "DMU labels")
    sets = _SpecialSets.build(m, s, **special)
    notes = tuple(_diagnostics(X, Y))
    for note in notes:
        warnings.warn(note, DataWarning, stacklevel=3)
    X.setflags(write=False)
    Y.setflags(write=False)
    return DeaData(input=X, output=Y, dmunames=dmunames, input_names=input_names,
                   output_names=output_names, notes=notes, **vars(sets))


def _resolve_columns(df: pd.DataFrame, refs) -> list:
    cols = []
    for r in refs:
        if isinstance(r, (int, np.integer)):
            cols.append(df.columns[int(r)])
        elif r in df.columns:
            cols.append(r)
        else:
            raise KeyError(f"column {r!r} not found")
    return cols


def _numeric_block(df: pd.DataFrame, cols: list) -> np.ndarray:
    try:
        block = df[cols].apply(pd.to_numeric, errors="raise")
    except (ValueError, TypeError) as exc:
        raise ValueError(f"non-numeric cell in columns {cols}: {exc}") from None
    return block.to_numpy(dtype=float).T


def read_table(path) -> pd.DataFrame:
    """Read a CSV with a header row and dot decimals; floats parse exactly."""
    return pd.read_csv(path, sep=",", decimal=".", float_precision="round_trip")


def _pick_columns(df, dmus, inputs, outputs, ni, no):
    if inputs is None:
        if ni is None:
            raise ValueError("either inputs or ni is required")
        start = 0 if dmus is None else 1
        inputs = list(range(start, start + ni))
    if outputs is None:
        if no is None:
            raise ValueError("either outputs or no is required")
        start = (0 if dmus is None else 1) + len(list(inputs))
        outputs = list(range(start, start + no))
    in_cols = _resolve_columns(df, list(inputs))
    out_cols = _resolve_columns(df, list(outputs))
    overlap = set(in_cols) & set(out_cols)
    if overlap:
        raise ValueError(f"columns selected both as inputs and outputs: {sorted(map(str, overlap))}")
    return in_cols, out_cols


def make_deadata(table=None, dmus: Optional[ColumnRef] = 0, inputs=None, outputs=None,
                 ni: Optional[int] = None, no: Optional[int] = None,
                 dmunames: Optional[Sequence[str]] = None, **special) -> DeaData:
    """Build a :class:`DeaData` from a table or from matrices.

    Parameters
    ----------
    table : DataFrame or path, optional
        Standard layout: one DMU label column followed by the inputs and
        then the outputs. When omitted, ``inputs`` and ``outputs`` must be
        matrices shaped (variables, DMUs).
    dmus : int or str or None
        Column holding DMU labels; ``None`` auto-generates ``DMU1, ...``.
    inputs, outputs : sequence of column refs, optional
        Positions (0-based) or names. Default to ``ni``/``no`` consecutive
        columns after the label column.
    **special
        ``nc_inputs``, ``nd_outputs``, ... as 0-based variable indices.
    """
    if table is None:
        if inputs is None or outputs is None:
            raise ValueError("matrix construction needs both inputs and outputs")
        return deadata_from_arrays(inputs, outputs, dmunames=dmunames, **special)
    df = table if isinstance(table, pd.DataFrame) else read_table(table)
    in_cols, out_cols = _pick_columns(df, dmus, inputs, outputs, ni, no)
    if dmus is None:
        names = dmunames
    else:
        names = df[_resolve_columns(df, [dmus])[0]].astype(str).tolist()
    return deadata_from_arrays(_numeric_block(df, in_cols), _numeric_block(df, out_cols),
                               dmunames=names, input_names=[str(c) for c in in_cols],
                               output_names=[str(c) for c in out_cols], **special)


# --------------------------------------------------------------------------- fuzzy


@dataclass(frozen=True, eq=False)
class Trapezoid:
    """Matrices of trapezoidal parameters, each shaped (variables, DMUs)."""

    mL: np.ndarray
    mR: np.ndarray
    dL: np.ndarray
    dR: np.ndarray

    def __post_init__(self):
        shapes = {a.shape for a in (self.mL, self.mR, self.dL, self.dR)}
        if len(shapes) != 1:
            raise ValueError("mL, mR, dL and dR must share one shape")
        if np.any(self.mL > self.mR):
            raise ValueError("mL must not exceed mR")
        if np.any(self.dL < 0) or np.any(self.dR < 0):
            raise ValueError("spreads dL and dR must be nonnegative")

    @classmethod
    def crisp(cls, values) -> "Trapezoid":
        v = np.atleast_2d(np.asarray(values, float))
        return cls(v, v.copy(), np.zeros_like(v), np.zeros_like(v))

    def cut(self, alpha: float) -> tuple[np.ndarray, np.ndarray]:
        return self.mL - (1 - alpha) * self.dL, self.mR + (1 - alpha) * self.dR

    def is_crisp(self) -> bool:
        return bool(np.all(self.mL == self.mR) and not self.dL.any() and not self.dR.any())


@dataclass(frozen=True, eq=False)
class FuzzyDeaData(_SpecialSets):
    input: Trapezoid = None
    output: Trapezoid = None
    dmunames: tuple[str, ...] = ()
    input_names: tuple[str, ...] = ()
    output_names: tuple[str, ...] = ()

    @property
    def m(self) -> int:
        return self.input.mL.shape[0]

    @property
    def s(self) -> int:
        return self.output.mL.shape[0]

    @property
    def n(self) -> int:
        return self.input.mL.shape[1]

    def special_sets(self) -> dict:
        return {k: getattr(self, k) for k in ("nc_inputs", "nc_outputs", "nd_inputs",
                                              "nd_outputs", "ud_inputs", "ud_outputs")}


def fuzzy_from_arrays(inputs: Trapezoid, outputs: Trapezoid, dmunames=None, input_names=None,
                      output_names=None, **special) -> FuzzyDeaData:
    m, n = inputs.mL.shape
    s, n2 = outputs.mL.shape
    if n != n2:
        raise ValueError("inputs and outputs must have the same number of DMU columns")
    dmunames = tuple(map(str, dmunames)) if dmunames is not None else _default_names("DMU", n)
    _check_names(dmunames, "DMU labels")
    input_names = tuple(map(str, input_names)) if input_names is not None else _default_names("Input", m)
    output_names = tuple(map(str, output_names)) if output_names is not None else _default_names("Output", s)
    sets = _SpecialSets.build(m, s, **special)
    return FuzzyDeaData(input=inputs, output=outputs, dmunames=dmunames, input_names=input_names,
                        output_names=output_names, **vars(sets))


def _fuzzy_side(df, mL, mR, dL, dR) -> tuple[Trapezoid, list]:
    mL_cols = _resolve_columns(df, list(mL))
    k = len(mL_cols)
    base = _numeric_block(df, mL_cols)

    def completed(refs, default):
        out = default.copy()
        if refs is None:
            return out
        refs = list(refs)
        if len(refs) != k:
            raise ValueError("parameter column lists must have one entry per variable")
        for i, r in enumerate(refs):
            if r is not None:
                out[i] = _numeric_block(df, _resolve_columns(df, [r]))[0]
        return out

    zeros = np.zeros_like(base)
    trap = Trapezoid(base, completed(mR, base), completed(dL, zeros), completed(dR, zeros))
    return trap, mL_cols


def make_deadata_fuzzy(table, dmus: Optional[ColumnRef] = 0, inputs_mL=(), inputs_mR=None,
                       inputs_dL=None, inputs_dR=None, outputs_mL=(), outputs_mR=None,
                       outputs_dL=None, outputs_dR=None, **special) -> FuzzyDeaData:
    """Build a :class:`FuzzyDeaData` from a table.

    ``inputs_mL``/``outputs_mL`` list one column per variable. The other
    parameter lists, when given, have one entry per variable with ``None``
    marking an absent parameter: absent ``mR`` equals ``mL`` and absent
    spreads are zero.
    """
    df = table if isinstance(table, pd.DataFrame) else read_table(table)
    if not len(inputs_mL) or not len(outputs_mL):
        raise ValueError("inputs_mL and outputs_mL are required")
    tin, in_cols = _fuzzy_side(df, inputs_mL, inputs_mR, inputs_dL, inputs_dR)
    tout, out_cols = _fuzzy_side(df, outputs_mL, outputs_mR, outputs_dL, outputs_dR)
    names = None if dmus is None else df[_resolve_columns(df, [dmus])[0]].astype(str).tolist()
    return fuzzy_from_arrays(tin, tout, dmunames=names, input_names=[str(c) for c in in_cols],
                             output_names=[str(c) for c in out_cols], **special)


# --------------------------------------------------------------------------- panel


@dataclass(frozen=True, eq=False)
class MalmquistSeries:
    periods: tuple[DeaData, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.periods) < 2:
            raise ValueError("a Malmquist series needs at least two periods")
        first = self.periods[0]
        for p in self.periods[1:]:
            if p.dmunames != first.dmunames or p.m != first.m or p.s != first.s:
                raise ValueError("all periods must share DMU labels and dimensions")
        if not self.labels:
            object.__setattr__(self, "labels", _default_names("Period", len(self.periods)))

    def __len__(self) -> int:
        return len(self.periods)

    def __getitem__(self, t: int) -> DeaData:
        return self.periods[t]

    @property
    def dmunames(self) -> tuple[str, ...]:
        return self.periods[0].dmunames


def make_malmquist(table, arrangement: str = "horizontal", dmus: Optional[ColumnRef] = 0,
                   nper: Optional[int] = None, ni: Optional[int] = None, no: Optional[int] = None,
                   percol: Optional[ColumnRef] = None, inputs=None, outputs=None,
                   **special) -> MalmquistSeries:
    """Build a :class:`MalmquistSeries` from a wide or long table.

    Wide (``arrangement="horizontal"``): after the DMU column, ``nper``
    consecutive blocks, each holding ``ni`` inputs then ``no`` outputs.
    Long (``arrangement="vertical"``): a period column ``percol`` whose
    sorted distinct values define the periods, with ``inputs``/``outputs``
    columns shared by all periods.
    """
    df = table if isinstance(table, pd.DataFrame) else read_table(table)
    if arrangement == "horizontal":
        if nper is None or ni is None or no is None:
            raise ValueError("wide layout needs nper, ni and no")
        start = 0 if dmus is None else 1
        width = ni + no
        if df.shape[1] - start != nper * width:
            raise ValueError(f"wide table has {df.shape[1] - start} data columns, "
                             f"expected nper*(ni+no) = {nper * width}")
        periods = []
        for t in range(nper):
            base = start + t * width
            periods.append(make_deadata(df, dmus=dmus, inputs=range(base, base + ni),
                                        outputs=range(base + ni, base + width), **special))
        return MalmquistSeries(tuple(periods))
    if arrangement == "vertical":
        if percol is None:
            raise ValueError("long layout needs percol")
        pcol = _resolve_columns(df, [percol])[0]
        dcol = _resolve_columns(df, [dmus])[0]
        labels = sorted(df[pcol].unique())
        order = list(dict.fromkeys(df[dcol].astype(str)))
        periods = []
        for lab in labels:
            sub = df[df[pcol] == lab].copy()
            sub[dcol] = sub[dcol].astype(str)
            if set(sub[dcol]) != set(order) or len(sub) != len(order):
                missing = sorted(set(order) - set(sub[dcol]))
                raise ValueError(f"period {lab!r} does not contain every DMU exactly once "
                                 f"(missing {missing})")
            sub = sub.set_index(dcol).loc[order].reset_index()
            periods.append(make_deadata(sub, dmus=dcol, inputs=inputs, outputs=outputs,
                                        ni=ni, no=no, **special))
        return MalmquistSeries(tuple(periods), tuple(str(x) for x in labels))
    raise ValueError(f"unknown arrangement {arrangement!r}")


# --------------------------------------------------------------------------- undesirable


def _translation(values: Optional[Iterable], rows: tuple[int, ...], maxima: np.ndarray,
                 what: str) -> np.ndarray:
    if values is None:
        return maxima[list(rows)] + 1.0
    if not rows:
        raise ValueError(f"{what} given but no variable on that side is flagged undesirable")
    v = np.atleast_1d(np.asarray(values, dtype=float))
    if v.size == 1:
        v = np.full(len(rows), v[0])
    if v.size != len(rows):
        raise ValueError(f"{what} must be a scalar or have one entry per undesirable variable")
    auto = maxima[list(rows)] + 1.0
    return np.where(np.isnan(v), auto, v)


def undesirable_transform(data, vtrans_i=None, vtrans_o=None):
    """Translate undesirable rows to ``-value + v`` and clear the flags.

    Missing translation values (``None`` or NaN entries) use the row
    maximum plus one. Returns ``(transformed, vtrans_i, vtrans_o)``; the
    translation vectors have one entry per undesirable variable.
    """
    if isinstance(data, FuzzyDeaData):
        return _undesirable_fuzzy(data, vtrans_i, vtrans_o)
    ui, uo = data.ud_inputs, data.ud_outputs
    vi = _translation(vtrans_i, ui, data.input.max(axis=1), "vtrans_i")
    vo = _translation(vtrans_o, uo, data.output.max(axis=1), "vtrans_o")
    if not ui and not uo:
        return data, vi, vo
    X = np.array(data.input)
    Y = np.array(data.output)
    X[list(ui)] = -X[list(ui)] + vi[:, None]
    Y[list(uo)] = -Y[list(uo)] + vo[:, None]
    notes = list(data.notes)
    if (ui and np.any(X[list(ui)] <= 0)) or (uo and np.any(Y[list(uo)] <= 0)):
        msg = "translated undesirable data are not strictly positive"
        warnings.warn(msg, DataWarning, stacklevel=2)
        notes.append(msg)
    X.setflags(write=False)
    Y.setflags(write=False)
    out = replace(data, input=X, output=Y, ud_inputs=(), ud_outputs=(), notes=tuple(notes))
    return out, vi, vo


def _undesirable_fuzzy(data: FuzzyDeaData, vtrans_i, vtrans_o):
    ui, uo = data.ud_inputs, data.ud_outputs
    vi = _translation(vtrans_i, ui, (data.input.mR + data.input.dR).max(axis=1), "vtrans_i")
    vo = _translation(vtrans_o, uo, (data.output.mR + data.output.dR).max(axis=1), "vtrans_o")
    if not ui and not uo:
        return data, vi, vo

    def flip(t: Trapezoid, rows, v) -> Trapezoid:
        mL, mR, dL, dR = (np.array(a) for a in (t.mL, t.mR, t.dL, t.dR))
        r = list(rows)
        mL[r], mR[r] = -t.mR[r] + v[:, None], -t.mL[r] + v[:, None]
        dL[r], dR[r] = t.dR[r], t.dL[r]
        return Trapezoid(mL, mR, dL, dR)

    out = replace(data, input=flip(data.input, ui, vi), output=flip(data.output, uo, vo),
                  ud_inputs=(), ud_outputs=())
    return out, vi, vo
