"""Malmquist productivity index and its decompositions."""
from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np
import pandas as pd

from .data import MalmquistSeries, resolve_dmus
from .radial import radial_solve
from .results import parallel_map, rts_limits

TYPE1 = ("cont", "seq", "glob")
TYPE2 = ("fgnz", "rd", "gl", "bias")
INDEX_NAMES = ("mi", "ec", "tc", "pech", "sech", "obtech", "ibtech", "matech")


def _frontier(series: MalmquistSeries, which, ref_idx):
    """Stacked reference columns for one period, a sequential prefix or the global set."""
    if which == "glob":
        periods = range(len(series))
    elif isinstance(which, tuple):
        periods = range(which[1] + 1)
    else:
        periods = [which]
    X = np.hstack([series[t].input[:, ref_idx] for t in periods])
    Y = np.hstack([series[t].output[:, ref_idx] for t in periods])
    return X, Y


def distance(x, y, X, Y, orientation: str = "io", rts: str = "crs") -> float:
    """Input distance ``min theta`` or output distance ``1 / max eta`` of ``(x, y)``.

    Returns NaN when the program has no finite optimum.
    """
    lo, hi = rts_limits(rts)
    sol = radial_solve(np.asarray(x, float), np.asarray(y, float), X, Y, orientation, lo, hi,
                       maxslack=False)
    if sol.status != "optimal":
        return float("nan")
    if orientation == "io":
        return sol.score
    return 1.0 / sol.score if sol.score > 0 else float("nan")


@dataclass(eq=False)
class MalmquistResult:
    """Indices shaped (len(dmu_eval), T-1); ``eff_all`` holds the distances.

    ``eff_all["efficiency.crs"]`` and ``"efficiency.glob.crs"`` are shaped
    (len(dmu_eval), T); the cross-period entries are (len(dmu_eval), T-1).
    """

    orientation: str
    rts: str
    type1: str
    type2: str
    tc_vrs: bool
    series: MalmquistSeries
    dmu_eval: np.ndarray
    dmu_ref: np.ndarray
    indices: dict
    eff_all: dict = field(default_factory=dict)

    def __getattr__(self, name):
        if name in INDEX_NAMES:
            return self.__dict__["indices"].get(name)
        raise AttributeError(name)

    @property
    def eval_names(self) -> list[str]:
        return [self.series.dmunames[j] for j in self.dmu_eval]

    @property
    def period_labels(self) -> list[str]:
        lab = self.series.labels
        return [f"{lab[t]}-{lab[t + 1]}" for t in range(len(lab) - 1)]

    def to_long(self) -> pd.DataFrame:
        """Long table with columns dmu, period, index_name, value."""
        rows = []
        for name, arr in self.indices.items():
            for a, dmu in enumerate(self.eval_names):
                for t, period in enumerate(self.period_labels):
                    rows.append((dmu, period, name, float(arr[a, t])))
        return pd.DataFrame(rows, columns=["dmu", "period", "index_name", "value"])


def _validate(orientation, rts, type1, type2):
    if orientation not in ("io", "oo"):
        raise ValueError(f"orientation must be 'io' or 'oo', got {orientation!r}")
    if rts not in ("crs", "vrs"):
        raise ValueError(f"rts must be 'crs' or 'vrs', got {rts!r}")
    if type1 not in TYPE1:
        raise ValueError(f"type1 must be one of {TYPE1}, got {type1!r}")
    if type2 not in TYPE2:
        raise ValueError(f"type2 must be one of {TYPE2}, got {type2!r}")
    if type1 != "glob" and type2 in ("rd", "gl") and rts != "vrs":
        raise ValueError(f"combination type2={type2!r} with rts={rts!r} is not defined; "
                         f"{type2!r} needs rts='vrs'")


def malmquist_index(series: MalmquistSeries, orientation: str = "io", rts: str = "crs",
                    type1: str = "cont", type2: str = "fgnz", tc_vrs: bool = False,
                    dmu_eval=None, dmu_ref=None, n_jobs: int = 1) -> MalmquistResult:
    """Malmquist index between consecutive periods with the requested decomposition.

    Parameters
    ----------
    type1 : {"cont", "seq", "glob"}
        Contemporary, sequential (all periods up to t) or global frontiers.
    type2 : {"fgnz", "rd", "gl", "bias"}
        Index definition; ignored when ``type1="glob"``. ``rd`` and ``gl``
        need ``rts="vrs"``.
    tc_vrs : bool
        Biased technical change under VRS distances (only with
        ``type2="bias"`` and ``rts="vrs"``).

    Any missing distance makes the indices that use it NaN.
    """
    _validate(orientation, rts, type1, type2)
    T = len(series)
    names = series.dmunames
    eval_idx = resolve_dmus(dmu_eval, names)
    ref_idx = resolve_dmus(dmu_ref, names)
    k = len(eval_idx)
    kinds = ["crs"] + (["vrs"] if rts == "vrs" or tc_vrs else [])

    def frontier(t):
        return _frontier(series, (0, t) if type1 == "seq" else t, ref_idx)

    fronts = [frontier(t) for t in range(T)]
    glob = _frontier(series, "glob", ref_idx)

    tasks = []
    for kind in kinds:
        for a, o in enumerate(eval_idx):
            for t in range(T):
                tasks.append(("efficiency", kind, a, t, series[t].input[:, o],
                              series[t].output[:, o], fronts[t]))
                if type1 == "glob":
                    tasks.append(("efficiency.glob", kind, a, t, series[t].input[:, o],
                                  series[t].output[:, o], glob))
            for t in range(T - 1):
                x0, y0 = series[t].input[:, o], series[t].output[:, o]
                x1, y1 = series[t + 1].input[:, o], series[t + 1].output[:, o]
                tasks += [("efficiency_t_t1", kind, a, t, x1, y1, fronts[t]),
                          ("efficiency_t1_t", kind, a, t, x0, y0, fronts[t + 1]),
                          ("efficiency_t_xt1", kind, a, t, x1, y0, fronts[t]),
                          ("efficiency_t1_xt1", kind, a, t, x1, y0, fronts[t + 1])]
    values = parallel_map(lambda task: distance(task[4], task[5], task[6][0], task[6][1],
                                                orientation, task[1]), tasks, n_jobs)
    eff_all: dict = {}
    for task, val in zip(tasks, values):
        name, kind, a, t = task[:4]
        key = f"{name}.{kind}"
        if key not in eff_all:
            width = T if name in ("efficiency", "efficiency.glob") else T - 1
            eff_all[key] = np.full((k, width), np.nan)
        eff_all[key][a, t] = val

    def D(name, kind):
        arr = eff_all[f"{name}.{kind}"]
        if name in ("efficiency", "efficiency.glob"):
            return arr[:, :-1], arr[:, 1:]
        return arr

    dc_t, dc_t1 = D("efficiency", "crs")
    ind: dict = {}
    if type1 == "glob":
        g_t, g_t1 = D("efficiency.glob", "crs")
        if rts == "crs":
            ind["ec"] = dc_t1 / dc_t
            ind["tc"] = (dc_t * g_t1) / (dc_t1 * g_t)
            ind["mi"] = ind["tc"] * ind["ec"]
        else:
            dv_t, dv_t1 = D("efficiency", "vrs")
            gv_t, gv_t1 = D("efficiency.glob", "vrs")
            ind["pech"] = dv_t1 / dv_t
            ind["sech"] = (g_t1 * gv_t) / (g_t * gv_t1)
            ind["tc"] = (dv_t * gv_t1) / (dv_t1 * gv_t)
            ind["mi"] = ind["tc"] * ind["pech"] * ind["sech"]
    else:
        c_t_t1 = D("efficiency_t_t1", "crs")
        c_t1_t = D("efficiency_t1_t", "crs")
        mi_fgnz = np.sqrt((c_t_t1 * dc_t1) / (dc_t * c_t1_t))
        tc_fgnz = np.sqrt((c_t_t1 * dc_t) / (dc_t1 * c_t1_t))
        ec = dc_t1 / dc_t
        if rts == "vrs":
            dv_t, dv_t1 = D("efficiency", "vrs")
            pech = dv_t1 / dv_t
            sech = (dc_t1 * dv_t) / (dc_t * dv_t1)
        if type2 == "fgnz":
            ind["mi"] = mi_fgnz
            ind["tc"] = tc_fgnz
            if rts == "crs":
                ind["ec"] = ec
            else:
                ind["pech"], ind["sech"] = pech, sech
        elif type2 in ("rd", "gl"):
            v_t_t1 = D("efficiency_t_t1", "vrs")
            ind["pech"] = pech
            ind["tc"] = v_t_t1 / dv_t1
            if type2 == "rd":
                ind["sech"] = (c_t_t1 * dv_t) / (dc_t * v_t_t1)
                ind["mi"] = c_t_t1 / dc_t
            else:
                c_t_xt1 = D("efficiency_t_xt1", "crs")
                v_t_xt1 = D("efficiency_t_xt1", "vrs")
                ind["sech"] = (c_t_xt1 * dv_t) / (dc_t * v_t_xt1)
                ind["mi"] = ind["tc"] * ind["pech"] * ind["sech"]
        else:
            kind = "vrs" if (rts == "vrs" and tc_vrs) else "crs"
            b_t, b_t1 = D("efficiency", kind)
            b_t_t1 = D("efficiency_t_t1", kind)
            b_t1_t = D("efficiency_t1_t", kind)
            b_t_xt1 = D("efficiency_t_xt1", kind)
            b_t1_xt1 = D("efficiency_t1_xt1", kind)
            ind["matech"] = b_t / b_t1_t
            ind["obtech"] = np.sqrt((b_t_t1 * b_t1_xt1) / (b_t1 * b_t_xt1))
            ind["ibtech"] = np.sqrt((b_t1_t * b_t_xt1) / (b_t * b_t1_xt1))
            ind["tc"] = ind["matech"] * ind["obtech"] * ind["ibtech"]
            if rts == "crs":
                ind["ec"] = ec
                ind["mi"] = mi_fgnz
            else:
                ind["pech"], ind["sech"] = pech, sech
                ind["mi"] = ind["tc"] * pech * sech
    return MalmquistResult(orientation=orientation, rts=rts, type1=type1, type2=type2,
                           tc_vrs=tc_vrs, series=series, dmu_eval=eval_idx, dmu_ref=ref_idx,
                           indices=ind, eff_all=eff_all)
