"""Alpha-cuts of trapezoidal data and the Kao-Liu worst/best scenario metamodel."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .data import DeaData, FuzzyDeaData, undesirable_transform
from .results import DeaResult, parallel_map


@dataclass(frozen=True, eq=False)
class AlphaCutData:
    """Interval data of one alpha-cut; matrices shaped like the crisp data."""

    alpha: float
    input_lower: np.ndarray
    input_upper: np.ndarray
    output_lower: np.ndarray
    output_upper: np.ndarray


def alpha_cut(f: FuzzyDeaData, alpha: float) -> AlphaCutData:
    """Intervals ``[mL - (1-alpha) dL, mR + (1-alpha) dR]`` for every entry."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    il, iu = f.input.cut(alpha)
    ol, ou = f.output.cut(alpha)
    return AlphaCutData(float(alpha), il, iu, ol, ou)


def alpha_levels(alpha) -> np.ndarray:
    """Alpha values; an integer ``N > 1`` gives ``N`` equispaced cuts on [0, 1]."""
    a = np.atleast_1d(np.asarray(alpha, float))
    if a.size == 1 and a[0] > 1:
        if a[0] != int(a[0]):
            raise ValueError("a number of alpha-cuts must be an integer")
        return np.linspace(0.0, 1.0, int(a[0]))
    if np.any(a < 0) or np.any(a > 1):
        raise ValueError("alpha values must lie in [0, 1]")
    return a


def _submodels() -> dict[str, Callable]:
    from .additive import model_additive
    from .multiplier import model_multiplier
    from .nonradial import model_deaps, model_nonradial
    from .profit import model_profit
    from .radial import model_basic, model_fdh, model_rdm
    from .sbm import model_sbmeff
    from .supereff import model_addsupereff, model_sbmsupereff, model_supereff
    return {"basic": model_basic, "additive": model_additive, "addsupereff": model_addsupereff,
            "deaps": model_deaps, "fdh": model_fdh, "multiplier": model_multiplier,
            "nonradial": model_nonradial, "profit": model_profit, "rdm": model_rdm,
            "sbmeff": model_sbmeff, "sbmsupereff": model_sbmsupereff, "supereff": model_supereff}


KAOLIU_MODELS = ("basic", "additive", "addsupereff", "deaps", "fdh", "multiplier", "nonradial",
                 "profit", "rdm", "sbmeff", "sbmsupereff", "supereff")
SCENARIOS = ("Worst", "Best")


def scenario_matrices(cut: AlphaCutData, o: int, scenario: str, ud_in=(), ud_out=()):
    """Crisp matrices for one scenario of DMU ``o``.

    Worst: ``o`` at its largest inputs and smallest outputs, the others at
    their smallest inputs and largest outputs. Best is the mirror case.
    Good inputs and bad outputs (undesirable flags) swap their endpoints.
    """
    worst = scenario == "Worst"
    X = np.array(cut.input_lower if worst else cut.input_upper)
    Y = np.array(cut.output_upper if worst else cut.output_lower)
    X[:, o] = (cut.input_upper if worst else cut.input_lower)[:, o]
    Y[:, o] = (cut.output_lower if worst else cut.output_upper)[:, o]
    for i in ud_in:
        X[i] = np.where(np.arange(X.shape[1]) == o,
                        (cut.input_lower if worst else cut.input_upper)[i, o],
                        (cut.input_upper if worst else cut.input_lower)[i])
    for r in ud_out:
        Y[r] = np.where(np.arange(Y.shape[1]) == o,
                        (cut.output_upper if worst else cut.output_lower)[r, o],
                        (cut.output_lower if worst else cut.output_upper)[r])
    return X, Y


@dataclass(eq=False)
class FuzzyDeaResult:
    """Kao-Liu results: ``alphacut[k][scenario][DMU label]`` is a one-DMU :class:`DeaResult`."""

    modelname: str
    alphas: np.ndarray
    data: FuzzyDeaData
    dmu_eval: np.ndarray
    dmu_ref: np.ndarray
    alphacut: list
    params: dict = field(default_factory=dict)

    @property
    def eval_names(self) -> list[str]:
        return [self.data.dmunames[j] for j in self.dmu_eval]

    def _alpha_pos(self, alpha) -> int:
        hits = np.flatnonzero(np.isclose(self.alphas, alpha, rtol=0, atol=1e-12))
        if not hits.size:
            raise KeyError(f"alpha {alpha} not computed; available {self.alphas.tolist()}")
        return int(hits[0])

    def result(self, alpha, scenario: str, dmu) -> DeaResult:
        name = dmu if isinstance(dmu, str) else self.data.dmunames[int(dmu)]
        return self.alphacut[self._alpha_pos(alpha)][scenario][name]

    def efficiency(self, alpha, scenario: str) -> np.ndarray:
        """Scores of every evaluated DMU for one alpha and scenario."""
        tree = self.alphacut[self._alpha_pos(alpha)][scenario]
        return np.array([tree[name].efficiency[0] for name in self.eval_names])

    def bands(self) -> list[tuple[str, float, float, float]]:
        """Plot data: ``(DMU, alpha, lower, upper)`` of the score interval."""
        rows = []
        for name in self.eval_names:
            for a, alpha in enumerate(self.alphas):
                w = self.alphacut[a]["Worst"][name].efficiency[0]
                b = self.alphacut[a]["Best"][name].efficiency[0]
                lo, hi = (np.nan, np.nan) if np.isnan(w) or np.isnan(b) else (min(w, b), max(w, b))
                rows.append((name, float(alpha), float(lo), float(hi)))
        return rows


def modelfuzzy_kaoliu(f: FuzzyDeaData, kaoliu_modelname: str = "basic", alpha=1.0,
                      dmu_eval=None, dmu_ref=None, n_jobs: int = 1, **params) -> FuzzyDeaResult:
    """Run a crisp model in the worst and best scenario of each DMU at each alpha-cut.

    Parameters
    ----------
    f : FuzzyDeaData
    kaoliu_modelname : str
        One of ``KAOLIU_MODELS``.
    alpha : float, sequence of float, or int > 1
        Cut levels, or the number of equispaced levels on [0, 1].
    **params
        Passed to the crisp model (orientation, rts, weights, ...).
    """
    if kaoliu_modelname not in KAOLIU_MODELS:
        raise ValueError(f"kaoliu_modelname must be one of {KAOLIU_MODELS}")
    model = _submodels()[kaoliu_modelname]
    alphas = alpha_levels(alpha)
    names = f.dmunames
    from .data import resolve_dmus
    eval_idx = resolve_dmus(dmu_eval, names)
    ref_idx = resolve_dmus(dmu_ref, names)
    translated = (kaoliu_modelname in ("basic", "fdh") and params.get("orientation", "io") != "dir"
                  and (f.ud_inputs or f.ud_outputs))
    vt = {}
    if translated:
        f, vi, vo = undesirable_transform(f, params.pop("vtrans_i", None), params.pop("vtrans_o", None))
        vt = {"vtrans_i": vi.tolist(), "vtrans_o": vo.tolist()}
    sets = f.special_sets()
    cuts = [alpha_cut(f, a) for a in alphas]

    def run(task):
        a, o, scenario = task
        X, Y = scenario_matrices(cuts[a], o, scenario, f.ud_inputs, f.ud_outputs)
        X.setflags(write=False)
        Y.setflags(write=False)
        crisp = DeaData(input=X, output=Y, dmunames=names, input_names=f.input_names,
                        output_names=f.output_names, **sets)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return model(crisp, dmu_eval=[o], dmu_ref=ref_idx, **params)

    tasks = [(a, int(o), sc) for a in range(len(alphas)) for o in eval_idx for sc in SCENARIOS]
    out = parallel_map(run, tasks, n_jobs)
    tree = [{sc: {} for sc in SCENARIOS} for _ in alphas]
    for (a, o, sc), res in zip(tasks, out):
        tree[a][sc][names[o]] = res
    return FuzzyDeaResult(modelname=kaoliu_modelname, alphas=alphas, data=f, dmu_eval=eval_idx,
                          dmu_ref=ref_idx, alphacut=tree, params={**params, **vt})
