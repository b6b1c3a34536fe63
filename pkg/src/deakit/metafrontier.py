"""Non-parametric metafrontier built from group-restricted radial runs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import pandas as pd

from .data import DeaData
from .radial import model_basic
from .results import DeaResult


def resolve_groups(data: DeaData, grouping: Mapping) -> dict[str, np.ndarray]:
    """Validate a named partition of DMUs given by labels or 0-based positions."""
    if not grouping:
        raise ValueError("at least one group is required")
    groups = {str(name): data.index(list(members)) for name, members in grouping.items()}
    seen: dict[int, str] = {}
    for name, idx in groups.items():
        for j in idx:
            if j in seen:
                raise ValueError(f"DMU {data.dmunames[j]!r} belongs to groups {seen[j]!r} "
                                 f"and {name!r}")
            seen[j] = name
    return groups


@dataclass(eq=False)
class MetafrontierResult:
    """Scores of the grouped DMUs against each group frontier and the pooled one.

    ``group_scores`` is (len(dmus), k) with column ``g`` holding the scores
    against the frontier of group ``g``; NaN marks infeasible evaluations.
    """

    data: DeaData
    groups: dict
    dmus: np.ndarray
    group_of: list
    group_scores: np.ndarray
    nonconcave: np.ndarray
    concave: np.ndarray
    blocks: dict = field(default_factory=dict)
    pooled: DeaResult = None
    params: dict = field(default_factory=dict)

    @property
    def dmunames(self) -> list[str]:
        return [self.data.dmunames[j] for j in self.dmus]

    def to_frame(self) -> pd.DataFrame:
        """One row per DMU with its group, the k group scores and both metafrontier scores."""
        frame = pd.DataFrame(self.group_scores, columns=list(self.groups), index=self.dmunames)
        frame.insert(0, "group", self.group_of)
        frame["nonconcave"] = self.nonconcave
        frame["concave"] = self.concave
        frame.index.name = "dmu"
        return frame


def metafrontier(data: DeaData, grouping: Mapping, orientation: str = "io", rts: str = "vrs",
                 n_jobs: int = 1, **params) -> MetafrontierResult:
    """Concave and non-concave metafrontier scores with radial models.

    Every (evaluated group, reference group) block is one radial run with
    ``dmu_eval``/``dmu_ref`` set to the two groups. The non-concave score of a
    DMU is the minimum of its finite group scores (NaN if none is finite);
    the concave score is taken against all DMUs.
    """
    fixed = sorted({"dmu_eval", "dmu_ref"} & set(params))
    if fixed:
        raise ValueError(f"{', '.join(fixed)} is set by the grouping and cannot be passed")
    groups = resolve_groups(data, grouping)
    order = np.sort(np.concatenate(list(groups.values())))
    pos = {j: a for a, j in enumerate(order)}
    names = list(groups)
    group_of = [next(g for g in names if j in set(groups[g])) for j in order]
    scores = np.full((order.size, len(names)), np.nan)
    blocks = {}
    for ge in names:
        for c, gr in enumerate(names):
            res = model_basic(data, orientation=orientation, rts=rts, dmu_eval=groups[ge],
                              dmu_ref=groups[gr], n_jobs=n_jobs, **params)
            blocks[(ge, gr)] = res
            for j, val in zip(res.dmu_eval, res.efficiency):
                scores[pos[j], c] = val
    finite = np.isfinite(scores)
    nonconcave = np.where(finite.any(axis=1),
                          np.min(np.where(finite, scores, np.inf), axis=1), np.nan)
    pooled = model_basic(data, orientation=orientation, rts=rts, dmu_eval=order, n_jobs=n_jobs,
                         **params)
    return MetafrontierResult(data=data, groups=groups, dmus=order, group_of=group_of,
                              group_scores=scores, nonconcave=nonconcave,
                              concave=pooled.efficiency.copy(), blocks=blocks, pooled=pooled,
                              params={"orientation": orientation, "rts": rts, **params})
