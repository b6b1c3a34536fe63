"""Result extraction, reference sets, serialization and reference graphs."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from .bootstrap import BootstrapResult
from .cross import CrossEffResult
from .fuzzy import FuzzyDeaResult
from .malmquist import MalmquistResult
from .metafrontier import MetafrontierResult
from .results import LAMBDA_TOL, DeaResult

SCHEMA_VERSION = 1
FACETS = ("efficiencies", "lambdas", "slacks", "targets", "multipliers")


class ExportError(OSError):
    """Writing an output file failed."""


def _select(result, alpha, scenario, dmu):
    if isinstance(result, FuzzyDeaResult):
        if alpha is None or scenario is None:
            raise ValueError("fuzzy results need an alpha and a scenario selector")
        if dmu is not None:
            return result.result(alpha, scenario, dmu)
        return None
    return result


def extract(result, facet: str, alpha=None, scenario: Optional[str] = None, dmu=None):
    """Labeled view of one facet of a model result.

    ``efficiencies`` is a Series keyed by evaluated DMU. The other facets are
    DataFrames with one column per evaluated DMU: ``lambdas`` has one row
    per reference DMU; ``slacks``, ``targets`` and ``multipliers`` return a
    dict of input and output frames with one row per variable.

    Fuzzy results need ``alpha`` and ``scenario``; without ``dmu`` only
    ``efficiencies`` is available for the whole cut.
    """
    if facet not in FACETS:
        raise ValueError(f"unknown facet {facet!r}; expected one of {FACETS}")
    res = _select(result, alpha, scenario, dmu)
    if res is None:
        if facet != "efficiencies":
            raise ValueError("select a DMU to extract facets other than efficiencies "
                             "from a fuzzy result")
        return pd.Series(result.efficiency(alpha, scenario), index=result.eval_names,
                         name="efficiency")
    if not isinstance(res, DeaResult):
        raise TypeError(f"extract needs a model result, got {type(res).__name__}")
    cols = res.eval_names
    if facet == "efficiencies":
        return pd.Series(res.efficiency, index=cols, name="efficiency")
    if facet == "lambdas":
        if res.lambdas is None:
            raise ValueError(f"model {res.modelname!r} has no lambdas")
        return pd.DataFrame(res.lambdas.T, index=res.ref_names, columns=cols)
    attrs = {"slacks": ("slack_input", "slack_output"), "targets": ("target_input", "target_output"),
             "multipliers": ("multiplier_input", "multiplier_output")}[facet]
    a_in, a_out = (getattr(res, a) for a in attrs)
    if a_in is None and a_out is None:
        raise ValueError(f"model {res.modelname!r} has no {facet}")
    out = {}
    for side, arr, names in (("input", a_in, res.data.input_names),
                             ("output", a_out, res.data.output_names)):
        if arr is not None:
            out[side] = pd.DataFrame(arr.T, index=list(names), columns=cols)
    if facet == "multipliers" and res.multiplier_rts is not None:
        out["rts"] = pd.DataFrame(res.multiplier_rts.T, index=["xi_L", "xi_U"], columns=cols)
    return out


def references(result: DeaResult, dmu_eval=None) -> dict[str, dict[str, float]]:
    """Reference set of each DMU that is not efficient: positive intensities by label."""
    classes = result.classification()
    out = {}
    for a, name in enumerate(result.eval_names):
        if classes[a] == "efficient" or result.lambdas is None:
            continue
        lam = result.lambdas[a]
        if not np.all(np.isfinite(lam)):
            continue
        refs = {result.ref_names[k]: float(lam[k]) for k in np.flatnonzero(lam > LAMBDA_TOL)}
        out[name] = refs
    return out


def eff_dmus(result: DeaResult, weakly: bool = False) -> np.ndarray:
    """Data indices of the efficient evaluated DMUs (plus weakly efficient ones if asked)."""
    keep = {"efficient", "weakly efficient"} if weakly else {"efficient"}
    return np.array([j for j, c in zip(result.dmu_eval, result.classification()) if c in keep],
                    dtype=int)


# --------------------------------------------------------------------------- documents


def _num(v):
    v = float(v)
    return None if math.isnan(v) else v


def _vec(arr, keys):
    return {k: _num(v) for k, v in zip(keys, arr)}


def _mat(arr, rows, cols):
    return {r: _vec(arr[a], cols) for a, r in enumerate(rows)}


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def _dea_document(res: DeaResult) -> dict:
    names = res.eval_names
    doc = {"kind": "dea", "model": res.modelname, "orientation": res.orientation, "rts": res.rts,
           "params": _clean(res.params), "dmus": names,
           "efficiency": _vec(res.efficiency, names),
           "status": dict(zip(names, res.status)),
           "classification": dict(zip(names, res.classification()))}
    if res.lambdas is not None:
        doc["lambdas"] = _mat(res.lambdas, names, res.ref_names)
    for attr, vars_ in (("slack_input", res.data.input_names), ("slack_output", res.data.output_names),
                        ("target_input", res.data.input_names),
                        ("target_output", res.data.output_names),
                        ("multiplier_input", res.data.input_names),
                        ("multiplier_output", res.data.output_names),
                        ("multiplier_rts", ("xi_L", "xi_U"))):
        arr = getattr(res, attr)
        if arr is not None:
            doc[attr] = _mat(arr, names, list(vars_))
    if res.extra:
        doc["extra"] = {key: (_vec(val, names) if val.ndim == 1
                              else {n: _clean(row) for n, row in zip(names, val)})
                        for key, val in res.extra.items()}
    return doc


def _cross_document(res: CrossEffResult) -> dict:
    names = res.eval_names
    methods = {}
    for key, m in res.methods.items():
        methods[key] = {"e": _vec(m.e, names), "A": _vec(m.A, names),
                        "maverick": _vec(m.maverick, names),
                        "cross_eff": _mat(m.cross_eff, names, names),
                        "status": dict(zip(names, m.status)),
                        "bounded": dict(zip(names, map(bool, m.bounded)))}
    return {"kind": "cross", "orientation": res.orientation, "rts": res.rts,
            "params": _clean({"L": res.L, "U": res.U, "selfapp": res.selfapp,
                              "correction": res.correction, "epsilon": res.epsilon}),
            "dmus": names, "efficiency": _vec(res.efficiency, names), "methods": methods,
            "notes": list(res.notes)}


def _malmquist_document(res: MalmquistResult) -> dict:
    names, periods = res.eval_names, res.period_labels
    labels = list(res.series.labels)
    eff = {}
    for key, arr in res.eff_all.items():
        cols = labels if arr.shape[1] == len(labels) else periods
        eff[key] = _mat(arr, names, cols)
    return {"kind": "malmquist", "orientation": res.orientation, "rts": res.rts,
            "params": {"type1": res.type1, "type2": res.type2, "tc_vrs": res.tc_vrs},
            "dmus": names, "periods": periods,
            "indices": {k: _mat(v, names, periods) for k, v in res.indices.items()},
            "eff_all": eff}


def _bootstrap_document(res: BootstrapResult) -> dict:
    names = res.dmunames
    return {"kind": "bootstrap", "orientation": res.orientation, "rts": res.rts,
            "params": _clean(res.params), "dmus": names,
            "score": _vec(res.score, names), "score_bc": _vec(res.score_bc, names),
            "bias": _vec(res.bias, names),
            "descriptives": {k: _vec(v, names) for k, v in res.descriptives.items()},
            "CI": _mat(res.CI, names, ["CI_low", "CI_up"]),
            "failures": {n: int(c) for n, c in zip(names, res.failures)},
            "estimates_bootstrap": _clean(res.estimates_bootstrap)}


def _meta_document(res: MetafrontierResult) -> dict:
    names = res.dmunames
    return {"kind": "metafrontier", "params": _clean(res.params), "dmus": names,
            "groups": {g: [res.data.dmunames[j] for j in idx] for g, idx in res.groups.items()},
            "group_scores": _mat(res.group_scores, names, list(res.groups)),
            "nonconcave": _vec(res.nonconcave, names), "concave": _vec(res.concave, names)}


def _fuzzy_document(res: FuzzyDeaResult) -> dict:
    names = res.eval_names
    cuts = []
    for a, alpha in enumerate(res.alphas):
        cuts.append({"alpha": float(alpha),
                     "scenarios": {sc: {n: _dea_document(tree[n]) for n in names}
                                   for sc, tree in res.alphacut[a].items()}})
    return {"kind": "fuzzy", "model": res.modelname, "params": _clean(res.params), "dmus": names,
            "alphacut": cuts,
            "bands": [{"dmu": d, "alpha": a, "lower": _num(lo), "upper": _num(hi)}
                      for d, a, lo, hi in res.bands()]}


def to_document(result) -> dict:
    """JSON-ready dict; per-DMU maps are keyed by label and NaN becomes null."""
    for cls, fn in ((DeaResult, _dea_document), (CrossEffResult, _cross_document),
                    (MalmquistResult, _malmquist_document), (BootstrapResult, _bootstrap_document),
                    (MetafrontierResult, _meta_document), (FuzzyDeaResult, _fuzzy_document)):
        if isinstance(result, cls):
            return {"schema_version": SCHEMA_VERSION, **fn(result)}
    raise TypeError(f"cannot export {type(result).__name__}")


def to_json(result) -> str:
    return json.dumps(to_document(result), indent=1, allow_nan=False)


def _restore(obj):
    if isinstance(obj, dict):
        return {k: _restore(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_restore(v) for v in obj]
    return float("nan") if obj is None else obj


def read_json(path) -> dict:
    """Read an exported document back; nulls become NaN."""
    with open(path, encoding="utf-8") as fh:
        return _restore(json.load(fh))


# --------------------------------------------------------------------------- tables


def dea_frames(res: DeaResult) -> dict[str, pd.DataFrame]:
    """One table per facet, rows keyed by evaluated DMU."""
    names = res.eval_names
    frames = {"efficiency": pd.DataFrame({"efficiency": res.efficiency, "status": res.status,
                                          "classification": res.classification()}, index=names)}
    if res.lambdas is not None:
        frames["lambdas"] = pd.DataFrame(res.lambdas, index=names, columns=res.ref_names)
    for facet, pair in (("slacks", ("slack_input", "slack_output")),
                        ("targets", ("target_input", "target_output")),
                        ("multipliers", ("multiplier_input", "multiplier_output"))):
        parts = []
        for attr, vars_ in zip(pair, (res.data.input_names, res.data.output_names)):
            arr = getattr(res, attr)
            if arr is not None:
                parts.append(pd.DataFrame(arr, index=names, columns=list(vars_)))
        if parts:
            frames[facet] = pd.concat(parts, axis=1)
    for key, val in res.extra.items():
        if val.ndim == 1:
            frames["efficiency"][key] = val
    for frame in frames.values():
        frame.index.name = "dmu"
    return frames


def result_frames(result) -> dict[str, pd.DataFrame]:
    """Tables for CSV export of any supported result type."""
    if isinstance(result, DeaResult):
        return dea_frames(result)
    if isinstance(result, CrossEffResult):
        frames = {}
        names = result.eval_names
        summary = pd.DataFrame({"efficiency": result.efficiency}, index=names)
        for key, m in result.methods.items():
            summary[f"{key}.e"] = m.e
            summary[f"{key}.A"] = m.A
            summary[f"{key}.maverick"] = m.maverick
            frames[f"cross_{key}"] = pd.DataFrame(m.cross_eff, index=names, columns=names)
        frames = {"summary": summary, **frames}
        for frame in frames.values():
            frame.index.name = "dmu"
        return frames
    if isinstance(result, MalmquistResult):
        return {"indices": result.to_long()}
    if isinstance(result, MetafrontierResult):
        return {"metafrontier": result.to_frame()}
    if isinstance(result, BootstrapResult):
        names = result.dmunames
        summary = pd.DataFrame({"score": result.score, "score_bc": result.score_bc,
                                "bias": result.bias, "CI_low": result.CI[:, 0],
                                "CI_up": result.CI[:, 1], "failures": result.failures,
                                **result.descriptives}, index=names)
        summary.index.name = "dmu"
        est = pd.DataFrame(result.estimates_bootstrap, columns=names)
        est.index.name = "replication"
        return {"summary": summary, "estimates_bootstrap": est}
    if isinstance(result, FuzzyDeaResult):
        bands = pd.DataFrame(result.bands(), columns=["dmu", "alpha", "lower", "upper"])
        return {"bands": bands}
    raise TypeError(f"cannot export {type(result).__name__}")


def merged_frame(result) -> pd.DataFrame:
    """Single per-DMU table; matrices such as cross-efficiency stay in the split export."""
    frames = result_frames(result)
    if not isinstance(result, DeaResult):
        return next(iter(frames.values()))
    parts = [frame if facet == "efficiency" else frame.add_prefix(f"{facet}.")
             for facet, frame in frames.items()]
    return pd.concat(parts, axis=1)


def default_name(now: Optional[datetime] = None) -> str:
    return "ResultsDEA" + (now or datetime.now()).strftime("%Y%m%d%H%M%S")


def _write(path: Path, text: str):
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc.strerror or exc}") from exc


def summary_export(result, path=None, fmt: str = "json", split: bool = False) -> list[Path]:
    """Write ``result`` as JSON or CSV and return the written paths.

    Without ``path`` the name ``ResultsDEA<timestamp>`` in the working
    directory is used. With ``split`` one file per facet is written with the
    facet name appended to the stem.
    """
    if fmt not in ("json", "csv"):
        raise ValueError(f"format must be 'json' or 'csv', got {fmt!r}")
    base = Path(path) if path is not None else Path(default_name())
    stem = base.with_suffix("") if base.suffix in (".json", ".csv") else base
    written = []
    if fmt == "json":
        if split:
            doc = to_document(result)
            head = {k: doc[k] for k in ("schema_version", "kind") if k in doc}
            for key, val in doc.items():
                if key in head:
                    continue
                target = stem.with_name(f"{stem.name}_{key}.json")
                _write(target, json.dumps({**head, key: val}, indent=1, allow_nan=False))
                written.append(target)
        else:
            target = stem.with_suffix(".json")
            _write(target, to_json(result))
            written.append(target)
        return written
    if split:
        for facet, frame in result_frames(result).items():
            target = stem.with_name(f"{stem.name}_{facet}.csv")
            _write(target, frame.to_csv(float_format="%.17g"))
            written.append(target)
    else:
        target = stem.with_suffix(".csv")
        _write(target, merged_frame(result).to_csv(float_format="%.17g"))
        written.append(target)
    return written


# --------------------------------------------------------------------------- graphs


@dataclass
class ReferenceGraph:
    """Nodes ``(label, class, relevance)`` and edges ``(from, to, lambda)``."""

    nodes: list
    edges: list


def reference_graph(result: DeaResult) -> ReferenceGraph:
    refs = references(result)
    relevance: dict[str, int] = {}
    edges = []
    for src in result.eval_names:
        for dst, lam in refs.get(src, {}).items():
            if dst == src:
                continue
            edges.append((src, dst, lam))
            relevance[dst] = relevance.get(dst, 0) + 1
    classes = dict(zip(result.eval_names, result.classification()))
    labels = list(result.eval_names) + [r for r in result.ref_names if r not in classes]
    nodes = [(lab, classes.get(lab, "reference"), relevance.get(lab, 0)) for lab in labels]
    return ReferenceGraph(nodes=nodes, edges=edges)


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def reference_graph_dot(result: DeaResult) -> str:
    """DOT text; efficient nodes are sized by how often they are referenced."""
    graph = reference_graph(result)
    lines = ["digraph references {", "  node [shape=circle];"]
    for label, cls, rel in graph.nodes:
        attrs = [f'class="{cls}"', f"relevance={rel}"]
        if cls == "efficient":
            attrs.append(f"width={0.5 + 0.25 * rel:g}")
            attrs.append("style=filled")
        lines.append(f"  {_quote(label)} [{', '.join(attrs)}];")
    for src, dst, lam in graph.edges:
        lines.append(f'  {_quote(src)} -> {_quote(dst)} [label="{lam:.6g}", lambda="{lam:.10g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
