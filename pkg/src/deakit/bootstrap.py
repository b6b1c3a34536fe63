"""Smoothed bootstrap of radial efficiency scores."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy import sparse
from scipy.optimize import linprog
from scipy.stats import gaussian_kde

from .data import DeaData
from .lp import FEAS_TOL, OPT_TOL
from .radial import radial_solve
from .results import parallel_map, rts_limits

DEFAULT_H = 0.014
RULES = ("h1", "h2", "h3", "h4")


def _reflected(delta: np.ndarray) -> np.ndarray:
    return np.concatenate([delta, 2.0 - delta])


def _robust_scale(sample: np.ndarray) -> float:
    q75, q25 = np.percentile(sample, [75, 25])
    return min(np.std(sample, ddof=1), (q75 - q25) / 1.349)


def bandwidth(delta, rule: Union[float, str] = DEFAULT_H) -> float:
    """Smoothing bandwidth for Farrell scores ``delta >= 1``.

    A number is returned unchanged. ``"h1"`` is the robust normal-reference
    rule on the reflected sample, ``"h2"`` the same with factor 0.9,
    ``"h3"`` rescales ``h1`` from the reflected sample back to the original
    one and ``"h4"`` is the Scott bandwidth of a Gaussian KDE.
    """
    if not isinstance(rule, str):
        h = float(rule)
    else:
        if rule not in RULES:
            raise ValueError(f"unknown bandwidth rule {rule!r}; expected a number or one of {RULES}")
        delta = np.asarray(delta, float)
        delta = delta[np.isfinite(delta)]
        if delta.size < 2:
            raise ValueError("data-driven bandwidth rules need at least two finite scores")
        refl = _reflected(delta)
        n = refl.size
        if rule == "h4":
            if np.ptp(refl) == 0:
                raise ValueError("bandwidth must be positive; the scores are constant")
            kde = gaussian_kde(refl)
            h = float(kde.factor * np.sqrt(kde.covariance[0, 0]))
        else:
            factor = 0.9 if rule == "h2" else 1.06
            h = factor * _robust_scale(refl) * n ** (-0.2)
            if rule == "h3":
                s_refl = np.std(refl, ddof=1)
                h = h * 2 ** 0.2 * (np.std(delta, ddof=1) / s_refl) if s_refl > 0 else 0.0
    if not np.isfinite(h) or h <= 0:
        raise ValueError(f"bandwidth must be positive, got {h}")
    return h


@dataclass(eq=False)
class BootstrapResult:
    """Bootstrap output on the score scale of the radial model.

    ``estimates_bootstrap`` is (B, n); replications whose program failed are
    NaN and counted in ``failures``.
    """

    data: DeaData
    orientation: str
    rts: str
    score: np.ndarray
    score_bc: np.ndarray
    bias: np.ndarray
    descriptives: dict
    CI: np.ndarray
    estimates_bootstrap: np.ndarray
    failures: np.ndarray
    params: dict = field(default_factory=dict)

    @property
    def dmunames(self) -> list[str]:
        return list(self.data.dmunames)


def batch_scores(X, Y, Xr, Yr, orientation: str, lo, hi) -> Optional[np.ndarray]:
    """Radial first-stage scores of every column of ``(X, Y)`` in one program.

    The per-DMU programs share no variables, so minimizing the sum of their
    objectives solves all of them at once. Returns None when the combined
    program is not optimal so the caller can fall back to single solves.
    """
    m, n = X.shape
    s = Y.shape[0]
    nref = Xr.shape[1]
    width = nref + 1
    eye = sparse.identity(n, format="csr")
    lam_in = sparse.kron(eye, sparse.hstack([sparse.csr_matrix((m, 1)), sparse.csr_matrix(Xr)]))
    lam_out = sparse.kron(eye, sparse.hstack([sparse.csr_matrix((s, 1)), sparse.csr_matrix(Yr)]))
    pick = sparse.csr_matrix((np.ones(n), (np.arange(n), np.arange(n) * width)),
                             shape=(n, n * width))
    if orientation == "io":
        rad_in = sparse.diags(X.T.ravel()) @ sparse.kron(sparse.identity(n), np.ones((m, 1))) @ pick
        A_ub = sparse.vstack([lam_in - rad_in, -lam_out])
        b_ub = np.concatenate([np.zeros(n * m), -Y.T.ravel()])
        sign = 1.0
    else:
        rad_out = sparse.diags(Y.T.ravel()) @ sparse.kron(sparse.identity(n), np.ones((s, 1))) @ pick
        A_ub = sparse.vstack([lam_in, rad_out - lam_out])
        b_ub = np.concatenate([X.T.ravel(), np.zeros(n * s)])
        sign = -1.0
    sums = sparse.kron(eye, sparse.csr_matrix(np.concatenate([[0.0], np.ones(nref)])))
    A_eq = b_eq = None
    if lo is not None and hi is not None and lo == hi:
        A_eq, b_eq = sums, np.full(n, lo)
    else:
        if hi is not None:
            A_ub, b_ub = sparse.vstack([A_ub, sums]), np.concatenate([b_ub, np.full(n, hi)])
        if lo is not None:
            A_ub, b_ub = sparse.vstack([A_ub, -sums]), np.concatenate([b_ub, np.full(n, -lo)])
    c = sign * (pick.T @ np.ones(n))
    bounds = np.tile(np.concatenate([[-np.inf], np.zeros(nref)]), n)
    res = linprog(c, A_ub=A_ub.tocsc(), b_ub=b_ub, A_eq=None if A_eq is None else A_eq.tocsc(),
                  b_eq=b_eq, bounds=np.column_stack([bounds, np.full(bounds.size, np.inf)]),
                  method="highs-ds", options={"primal_feasibility_tolerance": FEAS_TOL,
                                              "dual_feasibility_tolerance": OPT_TOL})
    if res.status != 0:
        return None
    return res.x[::width] + 0.0


def _replicate(data: DeaData, orientation, lo, hi, delta_hat, h, seq: np.random.SeedSequence):
    """One pseudo sample and the scores of the observed DMUs against it."""
    rng = np.random.default_rng(seq)
    n = delta_hat.size
    beta = rng.choice(delta_hat, size=n, replace=True)
    smooth = beta + h * rng.standard_normal(n)
    smooth = np.where(smooth < 1.0, 2.0 - smooth, smooth)
    sigma2 = np.var(delta_hat, ddof=1) if n > 1 else 0.0
    shrink = 1.0 / np.sqrt(1.0 + h * h / sigma2) if sigma2 > 0 else 0.0
    star = beta.mean() + (smooth - beta.mean()) * shrink
    ratio = star / delta_hat
    if orientation == "io":
        Xs, Ys = data.input * ratio, data.output
    else:
        Xs, Ys = data.input, data.output / ratio
    fast = batch_scores(data.input, data.output, Xs, Ys, orientation, lo, hi)
    if fast is not None:
        return fast
    out = np.full(n, np.nan)
    for o in range(n):
        sol = radial_solve(data.input[:, o], data.output[:, o], Xs, Ys, orientation, lo, hi,
                           maxslack=False)
        if sol.status == "optimal":
            out[o] = sol.score
    return out


def bootstrap_basic(data: DeaData, orientation: str = "io", rts: str = "crs", L: float = 1.0,
                    U: float = 1.0, B: int = 2000, alpha: float = 0.05,
                    h: Union[float, str] = DEFAULT_H, seed: Optional[int] = None,
                    n_jobs: int = 1) -> BootstrapResult:
    """Smoothed bootstrap of the radial scores with reflection about the frontier.

    Observed scores come from the first stage of the radial model. In each
    replication the Farrell scores are resampled, perturbed with a Gaussian
    kernel of bandwidth ``h``, reflected at 1 and variance-corrected. The
    pseudo data move each DMU from its frontier projection by the drawn score
    and the observed DMUs are scored against them.

    ``bias = mean(estimates) - score`` and ``score_bc = score - bias``. The
    confidence interval uses the quantiles of ``delta* - delta_hat`` on the
    Farrell scale and is mapped back to the score scale.

    Replications use independent substreams spawned from ``seed``, so the
    output does not depend on ``n_jobs``.
    """
    if orientation not in ("io", "oo"):
        raise ValueError(f"orientation must be 'io' or 'oo', got {orientation!r}")
    if int(B) != B or B < 1:
        raise ValueError("B must be a positive integer")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if any(data.special_sets().values()):
        raise ValueError("the bootstrap does not support special variables")
    lo, hi = rts_limits(rts, L, U)
    n = data.n
    score = np.array([radial_solve(data.input[:, o], data.output[:, o], data.input, data.output,
                                   orientation, lo, hi, maxslack=False).score for o in range(n)])
    if not np.all(np.isfinite(score)) or np.any(score <= 0):
        raise ValueError("the bootstrap needs finite positive radial scores for every DMU")
    delta_hat = 1.0 / score if orientation == "io" else score.copy()
    h_value = bandwidth(delta_hat, h)
    root = np.random.SeedSequence(seed)
    streams = root.spawn(int(B))
    reps = parallel_map(lambda sq: _replicate(data, orientation, lo, hi, delta_hat, h_value, sq),
                        streams, n_jobs)
    est = np.vstack(reps)
    failures = np.isnan(est).sum(axis=0)
    mean = np.nanmean(est, axis=0)
    bias = mean - score
    score_bc = score - bias
    delta_star = 1.0 / est if orientation == "io" else est
    diff = delta_star - delta_hat
    q_lo = np.nanquantile(diff, alpha / 2, axis=0)
    q_hi = np.nanquantile(diff, 1 - alpha / 2, axis=0)
    d_low, d_up = delta_hat - q_hi, delta_hat - q_lo
    if orientation == "io":
        ci = np.column_stack([1.0 / d_up, 1.0 / d_low])
    else:
        ci = np.column_stack([d_low, d_up])
    descriptives = {"mean_estimates_boot": mean,
                    "var_estimates_boot": np.nanvar(est, axis=0, ddof=1) if B > 1
                    else np.zeros(n),
                    "median_estimates_boot": np.nanmedian(est, axis=0)}
    params = {"B": int(B), "alpha": alpha, "h": h, "h_value": h_value, "seed": root.entropy,
              "L": L, "U": U}
    return BootstrapResult(data=data, orientation=orientation, rts=rts, score=score,
                           score_bc=score_bc, bias=bias, descriptives=descriptives, CI=ci,
                           estimates_bootstrap=est, failures=failures, params=params)
