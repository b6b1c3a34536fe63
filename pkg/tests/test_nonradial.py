import numpy as np
import pytest

from deakit import deadata_from_arrays, dump, model_basic, model_deaps, model_nonradial

from conftest import CORPUS
from oracles import vertex_lp


class TestNonradial:
    def test_single_input_equals_radial(self, m1):
        assert model_nonradial(m1).efficiency == pytest.approx([1, 0.5, 0.8, 0.25], abs=1e-9)

    def test_two_input_micro(self):
        d = deadata_from_arrays([[1, 4, 4], [4, 1, 4]], [[1, 1, 1]], list("ABC"))
        res = model_nonradial(d)
        # vertex oracle: min (t1 + t2)/2 s.t. X lam <= t x_C, lam >= 0, y lam >= 1
        X = d.input
        c = np.array([0.5, 0.5, 0, 0, 0])
        A_ub = np.array([[-4, 0, 1, 4, 4], [0, -4, 4, 1, 4], [0, 0, -1, -1, -1]], float)
        oracle = vertex_lp(c, A_ub, [0, 0, -1])
        assert res.efficiency[2] == pytest.approx(oracle, abs=1e-9)
        assert res.efficiency[2] == pytest.approx(0.625, abs=1e-9)
        assert res.extra["factor"][2] == pytest.approx([0.25, 1.0], abs=1e-9)

    def test_oo_factors_at_least_one(self):
        for data in CORPUS[:20]:
            res = model_nonradial(data, "oo")
            assert np.all(res.extra["factor"] >= 1 - 1e-9)

    def test_io_factors_and_radial_bound(self):
        for data in CORPUS[:20]:
            res = model_nonradial(data, "io")
            theta = model_basic(data, "io").efficiency
            assert np.all(res.extra["factor"] <= 1 + 1e-9)
            assert np.all(res.efficiency <= theta + 1e-9)

    @pytest.mark.filterwarnings("ignore::deakit.data.DataWarning")
    def test_zero_input_rejected(self):
        d = deadata_from_arrays([[1, 0], [1, 1]], [[1, 1]])
        with pytest.raises(ValueError):
            model_nonradial(d)


class TestDeaps:
    def test_unit_weights_match_nonradial(self):
        for data in CORPUS[:15]:
            a = model_deaps(data).efficiency
            b = model_nonradial(data).efficiency
            assert a == pytest.approx(b, abs=1e-9)

    def test_weighted_objective(self):
        rng = np.random.default_rng(1)
        d = deadata_from_arrays(rng.uniform(1, 5, (3, 4)), rng.uniform(1, 5, (1, 4)))
        prog = model_deaps(d, rts="vrs", weight_eff=[1, 2, 3], returnlp=True)[0]
        first = dump(prog).splitlines()[0]
        assert first.startswith("min: 0.1666666667 theta[0] + 0.3333333333 theta[1] + 0.5 theta[2]")

    def test_unrestricted_m1(self, m1):
        a = model_deaps(m1, restricted_eff=False).efficiency
        assert a == pytest.approx(model_deaps(m1).efficiency, abs=1e-9)

    def test_nonpositive_weights(self, m1):
        with pytest.raises(ValueError):
            model_deaps(m1, weight_eff=0)
