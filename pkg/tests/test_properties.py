"""Property-based checks of model invariants on generated instances."""
import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from deakit import (MalmquistSeries, Trapezoid, cross_efficiency, deadata_from_arrays,
                    fuzzy_from_arrays, malmquist_index, model_additive, model_basic, model_fdh,
                    model_multiplier, model_sbmeff, model_supereff, modelfuzzy_kaoliu)

from oracles import ratio_ccr

SETTINGS = settings(max_examples=25, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])
value = st.floats(1.0, 10.0, allow_nan=False, allow_infinity=False).map(lambda v: round(v, 3))


@st.composite
def instances(draw, n_max=8, dim_max=3):
    n = draw(st.integers(2, n_max))
    m = draw(st.integers(1, dim_max))
    s = draw(st.integers(1, dim_max))
    X = np.array(draw(st.lists(value, min_size=m * n, max_size=m * n))).reshape(m, n)
    Y = np.array(draw(st.lists(value, min_size=s * n, max_size=s * n))).reshape(s, n)
    return deadata_from_arrays(X, Y)


@st.composite
def scales(draw, size):
    return np.array(draw(st.lists(st.floats(0.01, 100.0), min_size=size, max_size=size)))


@SETTINGS
@given(instances())
def test_rts_monotone(data):
    crs = model_basic(data, rts="crs", maxslack=False).efficiency
    nirs = model_basic(data, rts="nirs", maxslack=False).efficiency
    vrs = model_basic(data, rts="vrs", maxslack=False).efficiency
    assert np.all(crs <= nirs + 1e-9) and np.all(nirs <= vrs + 1e-9)


@SETTINGS
@given(instances(), st.data())
def test_unit_invariance(data, draw):
    ci = draw.draw(scales(data.m))
    co = draw.draw(scales(data.s))
    scaled = deadata_from_arrays(data.input * ci[:, None], data.output * co[:, None])
    for rts in ("crs", "vrs"):
        a = model_basic(data, rts=rts, maxslack=False).efficiency
        b = model_basic(scaled, rts=rts, maxslack=False).efficiency
        assert b == pytest.approx(a, abs=1e-7)
        a = model_sbmeff(data, rts=rts).efficiency
        b = model_sbmeff(scaled, rts=rts).efficiency
        assert b == pytest.approx(a, abs=1e-7)


@SETTINGS
@given(instances(), st.floats(0.0, 50.0), st.floats(0.0, 50.0))
def test_additive_translation(data, tx, ty):
    a = model_additive(data, rts="vrs").efficiency
    moved = deadata_from_arrays(data.input + tx, data.output + ty)
    b = model_additive(moved, rts="vrs").efficiency
    assert b == pytest.approx(a, abs=1e-7)


@SETTINGS
@given(instances())
def test_oriented_sbm(data):
    rho = model_sbmeff(data, "no").efficiency
    assert np.all(model_sbmeff(data, "io").efficiency >= rho - 1e-9)
    assert np.all(model_sbmeff(data, "oo").efficiency >= rho - 1e-9)


@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(instances(n_max=6))
def test_kaizen(data):
    a = model_sbmeff(data, rts="vrs").efficiency
    b = model_sbmeff(data, rts="vrs", kaizen=True).efficiency
    assert np.all(b >= a - 1e-9)


@SETTINGS
@given(instances())
def test_fdh_above_vrs(data):
    for o in ("io", "oo"):
        fdh = model_fdh(data, o, maxslack=False).efficiency
        vrs = model_basic(data, o, "vrs", maxslack=False).efficiency
        assert np.all(fdh >= vrs - 1e-9) if o == "io" else np.all(fdh <= vrs + 1e-9)


@SETTINGS
@given(instances())
def test_supereff(data):
    plain = model_basic(data, maxslack=False).efficiency
    sup = model_supereff(data, maxslack=False).efficiency
    eff = plain >= 1 - 1e-9
    assert np.all(sup[eff] >= 1 - 1e-9)
    assert sup[~eff] == pytest.approx(plain[~eff], abs=1e-9)


@SETTINGS
@given(instances(n_max=6))
def test_cross_diagonal(data):
    res = cross_efficiency(data, M2=False, M3=False)
    self_eff = model_multiplier(data).efficiency
    assert np.diag(res["Arbitrary"].cross_eff) == pytest.approx(self_eff, abs=1e-7)


@SETTINGS
@given(st.lists(st.tuples(value, value), min_size=1, max_size=10))
def test_cross_one_in_one_out(pairs):
    x, y = np.array(pairs).T
    res = cross_efficiency(deadata_from_arrays([x], [y]), M2=False, M3=False)
    assert res["Arbitrary"].e == pytest.approx(ratio_ccr(x, y), abs=1e-9)


@st.composite
def fuzzy_instances(draw):
    data = draw(instances(n_max=5, dim_max=2))
    spread = st.floats(0.0, 0.9)
    m, s, n = data.m, data.s, data.n
    dL = np.array(draw(st.lists(spread, min_size=m * n, max_size=m * n))).reshape(m, n)
    dR = np.array(draw(st.lists(spread, min_size=m * n, max_size=m * n))).reshape(m, n)
    oL = np.array(draw(st.lists(spread, min_size=s * n, max_size=s * n))).reshape(s, n)
    oR = np.array(draw(st.lists(spread, min_size=s * n, max_size=s * n))).reshape(s, n)
    return fuzzy_from_arrays(Trapezoid(data.input, data.input.copy(), dL, dR),
                             Trapezoid(data.output, data.output.copy(), oL, oR))


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(fuzzy_instances())
def test_kaoliu_nesting(f):
    alphas = [0.0, 0.5, 1.0]
    res = modelfuzzy_kaoliu(f, "basic", alpha=alphas, rts="vrs")
    worst = [res.efficiency(a, "Worst") for a in alphas]
    best = [res.efficiency(a, "Best") for a in alphas]
    for w, b in zip(worst, best):
        assert np.all(w <= b + 1e-9)
    for k in range(len(alphas) - 1):
        assert np.all(worst[k] <= worst[k + 1] + 1e-9)
        assert np.all(best[k] >= best[k + 1] - 1e-9)


@st.composite
def panels(draw):
    base = draw(instances(n_max=5, dim_max=2))
    factor = st.floats(0.7, 1.4)
    periods = [base]
    for _ in range(draw(st.integers(1, 2))):
        prev = periods[-1]
        fx = np.array(draw(st.lists(factor, min_size=prev.input.size,
                                    max_size=prev.input.size))).reshape(prev.input.shape)
        fy = np.array(draw(st.lists(factor, min_size=prev.output.size,
                                    max_size=prev.output.size))).reshape(prev.output.shape)
        periods.append(deadata_from_arrays(prev.input * fx, prev.output * fy))
    return MalmquistSeries(tuple(periods))


def _close(lhs, rhs):
    ok = np.isfinite(lhs) & np.isfinite(rhs)
    assert lhs[ok] == pytest.approx(rhs[ok], rel=1e-9)


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(panels(), st.sampled_from(["io", "oo"]), st.sampled_from(["cont", "seq", "glob"]))
def test_malmquist_identities(panel, orientation, type1):
    r = malmquist_index(panel, orientation, "crs", type1)
    _close(r.mi, r.tc * r.ec)
    r = malmquist_index(panel, orientation, "vrs", type1)
    _close(r.mi, r.tc * r.pech * r.sech)
    if type1 != "glob":
        r = malmquist_index(panel, orientation, "vrs", type1, "bias")
        _close(r.tc, r.matech * r.obtech * r.ibtech)


@settings(max_examples=10, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(instances(n_max=5, dim_max=2))
def test_malmquist_identical_periods(data):
    panel = MalmquistSeries((data, data))
    for rts in ("crs", "vrs"):
        for name, arr in malmquist_index(panel, rts=rts).indices.items():
            assert arr == pytest.approx(np.ones_like(arr), abs=1e-9), name
