"""Independent brute-force oracles used to check the models.

None of these call the package's LP layer; small programs are solved by
enumerating the vertices of the feasible polyhedron.
"""
from itertools import combinations, product

import numpy as np
from scipy.optimize import nnls


def vertex_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, free=(), maximize=False, tol=1e-9):
    """Optimum of a tiny LP by enumerating vertices.

    Variables are nonnegative except those listed in ``free``. The feasible
    set must be pointed and the optimum finite.
    """
    c = np.asarray(c, float)
    nvar = c.size
    rows, rhs, is_eq = [], [], []
    if A_ub is not None:
        rows += list(np.asarray(A_ub, float))
        rhs += list(np.asarray(b_ub, float))
        is_eq += [False] * len(rhs)
    if A_eq is not None:
        rows += list(np.asarray(A_eq, float))
        rhs += list(np.asarray(b_eq, float))
        is_eq += [True] * (len(rhs) - len(is_eq))
    for k in range(nvar):
        if k not in free:
            e = np.zeros(nvar)
            e[k] = -1.0
            rows.append(e)
            rhs.append(0.0)
            is_eq.append(False)
    A = np.array(rows)
    b = np.array(rhs)
    eq_idx = [k for k, e in enumerate(is_eq) if e]
    ineq_idx = [k for k, e in enumerate(is_eq) if not e]
    best = None
    for extra in combinations(ineq_idx, nvar - len(eq_idx)):
        act = eq_idx + list(extra)
        M = A[act]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, b[act])
        ok = np.all(A[ineq_idx] @ x <= b[ineq_idx] + tol) and \
            np.all(np.abs(A[eq_idx] @ x - b[eq_idx]) <= tol)
        if not ok:
            continue
        val = c @ x
        if best is None or (val > best if maximize else val < best):
            best = val
    return best


def ratio_ccr(x, y):
    """CCR scores of one-input one-output data: productivity over the best productivity."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    prod = y / x
    return prod / prod.max()


def vrs_input_1d(x, y, o):
    """Minimal input producing ``y[o]`` on the convex hull of pairs; returns theta."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    best = np.inf
    n = x.size
    for a in range(n):
        if y[a] >= y[o]:
            best = min(best, x[a])
        for b in range(n):
            if y[b] > y[a] and y[a] <= y[o] <= y[b]:
                t = (y[o] - y[a]) / (y[b] - y[a])
                best = min(best, x[a] + t * (x[b] - x[a]))
    return best / x[o]


def fdh_binary(X, Y, o, orientation="io"):
    """FDH score by exhaustive search over binary intensity vectors summing to one."""
    m, n = X.shape
    best = np.inf if orientation == "io" else -np.inf
    for lam in product((0, 1), repeat=n):
        lam = np.array(lam)
        if lam.sum() != 1:
            continue
        xr, yr = X @ lam, Y @ lam
        if orientation == "io":
            if np.all(yr >= Y[:, o] - 1e-12):
                best = min(best, np.max(xr / X[:, o]))
        elif np.all(xr <= X[:, o] + 1e-12):
            best = max(best, np.min(yr / Y[:, o]))
    return best


def in_hull(point, P, convex: bool, tol=1e-8) -> bool:
    """Whether ``point`` is a nonnegative (and, if ``convex``, convex) combination of columns of P."""
    if P.shape[1] == 0:
        return False
    A = P
    b = point
    if convex:
        A = np.vstack([A, np.ones(P.shape[1])])
        b = np.concatenate([b, [1.0]])
    scale = np.maximum(np.abs(b), 1.0)
    _, res = nnls(A / scale[:, None], b / scale)
    return res <= tol


def extreme_exhaustive(X, Y, eff, rts="vrs"):
    """Efficient DMUs that are not combinations of any subset of the other efficient DMUs."""
    P = np.vstack([X, Y])
    out = []
    for o in eff:
        others = [j for j in eff if j != o and not np.allclose(P[:, j], P[:, o])]
        expressible = False
        for size in range(1, len(others) + 1):
            for sub in combinations(others, size):
                if in_hull(P[:, o], P[:, list(sub)], convex=rts == "vrs"):
                    expressible = True
                    break
            if expressible:
                break
        if not expressible:
            out.append(o)
    return out


def additive_vertex_score(xo, yo, X, Y, rts="vrs"):
    """Unit-weight additive score of an arbitrary activity by vertex enumeration."""
    m, n = X.shape
    s = Y.shape[0]
    nvar = n + m + s
    A_eq = np.zeros((m + s, nvar))
    A_eq[:m, :n] = X
    A_eq[:m, n:n + m] = np.eye(m)
    A_eq[m:, :n] = Y
    A_eq[m:, n + m:] = -np.eye(s)
    b_eq = np.concatenate([xo, yo])
    if rts == "vrs":
        A_eq = np.vstack([A_eq, np.concatenate([np.ones(n), np.zeros(m + s)])])
        b_eq = np.concatenate([b_eq, [1.0]])
    c = np.concatenate([np.zeros(n), np.ones(m + s)])
    return vertex_lp(c, A_eq=A_eq, b_eq=b_eq, maximize=True)


def friends_exhaustive(X, Y, eff, rts="vrs", tol=1e-7):
    """Maximal subsets of efficient DMUs whose barycenter is efficient."""
    good = []
    for size in range(1, len(eff) + 1):
        for sub in combinations(eff, size):
            sub = list(sub)
            xo, yo = X[:, sub].mean(axis=1), Y[:, sub].mean(axis=1)
            if additive_vertex_score(xo, yo, X[:, eff], Y[:, eff], rts) <= tol:
                good.append(frozenset(sub))
    return {g for g in good if not any(g < h for h in good)}


def segment_l1_oracle(x_o, y_o, a, c, n=20001):
    """Smallest L1 distance from (x_o, y_o) to the part of segment a-c that dominates it."""
    best = np.inf
    for t in np.linspace(0.0, 1.0, n):
        px, py = a[0] + t * (c[0] - a[0]), a[1] + t * (c[1] - a[1])
        if px <= x_o + 1e-12 and py >= y_o - 1e-12:
            best = min(best, (x_o - px) + (py - y_o))
    return best


def sbm_ray_oracle(x, y, k, n=4001):
    """Smallest SBM ratio over targets (a, k a) on a crs ray with a <= x and k a >= y."""
    best = np.inf
    for a in np.linspace(y / k, x, n):
        best = min(best, (a / x) / (k * a / y))
    return best
