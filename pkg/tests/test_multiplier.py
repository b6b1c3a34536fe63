import numpy as np
import pytest

from deakit import deadata_from_arrays, model_basic, model_multiplier

from conftest import CORPUS


class TestMultiplier:
    def test_m1_duality(self, m1):
        res = model_multiplier(m1, "io", "crs")
        assert res.efficiency == pytest.approx([1, 0.5, 0.8, 0.25], abs=1e-9)

    def test_single_dmu(self):
        d = deadata_from_arrays([[3.0]], [[7.0]])
        res = model_multiplier(d)
        assert res.efficiency[0] == pytest.approx(1.0)
        assert res.multiplier_input[0, 0] == pytest.approx(1 / 3)

    @pytest.mark.parametrize("rts", ["crs", "vrs", "nirs", "ndrs", "grs"])
    @pytest.mark.parametrize("orientation", ["io", "oo"])
    def test_duality_on_corpus(self, rts, orientation):
        for data in CORPUS[:25]:
            kw = {"L": 0.8, "U": 1.2} if rts == "grs" else {}
            env = model_basic(data, orientation, rts, maxslack=False, **kw).efficiency
            mul = model_multiplier(data, orientation, rts, **kw).efficiency
            assert mul == pytest.approx(env, rel=1e-6)

    def test_normalization(self, meta):
        res = model_multiplier(meta, "io", "vrs")
        assert (res.multiplier_input[:, 0] * meta.input[0]) == pytest.approx(np.ones(23))

    def test_epsilon_monotone(self):
        data = CORPUS[7]
        prev = None
        for eps in (0.0, 1e-4, 1e-3, 1e-2):
            score = model_multiplier(data, epsilon=eps).efficiency
            if prev is not None:
                ok = np.isfinite(score) & np.isfinite(prev)
                assert np.all(score[ok] <= prev[ok] + 1e-9)
            prev = score

    def test_large_epsilon_gives_na(self, m1):
        res = model_multiplier(m1, epsilon=10.0)
        assert np.all(np.isnan(res.efficiency))
        assert set(res.status) == {"infeasible"}

    def test_shapes(self, meta):
        res = model_multiplier(meta, dmu_eval=range(5))
        assert res.multiplier_input.shape == (5, 1)
        assert res.multiplier_rts.shape == (5, 2)

    def test_rejects_negative_epsilon(self, m1):
        with pytest.raises(ValueError):
            model_multiplier(m1, epsilon=-1)
