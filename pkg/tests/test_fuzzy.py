import numpy as np
import pytest

from deakit import (Trapezoid, alpha_cut, alpha_levels, fuzzy_from_arrays, model_basic,
                    modelfuzzy_kaoliu)
from deakit.fuzzy import KAOLIU_MODELS


def crisp_fuzzy(data):
    return fuzzy_from_arrays(Trapezoid.crisp(data.input), Trapezoid.crisp(data.output),
                             data.dmunames)


class TestAlphaCut:
    def test_endpoints(self):
        f = fuzzy_from_arrays(Trapezoid(np.array([[4.0]]), np.array([[4.0]]), np.ones((1, 1)),
                                        np.ones((1, 1))), Trapezoid.crisp([[1.0]]))
        cut = alpha_cut(f, 0)
        assert (cut.input_lower[0, 0], cut.input_upper[0, 0]) == (3.0, 5.0)
        assert cut.output_lower[0, 0] == cut.output_upper[0, 0] == 1.0

    def test_interpolation(self):
        t = Trapezoid(np.array([[2.0]]), np.array([[3.0]]), np.array([[1.0]]), np.array([[2.0]]))
        f = fuzzy_from_arrays(t, Trapezoid.crisp([[1.0]]))
        cut = alpha_cut(f, 0.5)
        assert (cut.input_lower[0, 0], cut.input_upper[0, 0]) == (1.5, 4.0)

    def test_out_of_range(self, m3):
        with pytest.raises(ValueError):
            alpha_cut(m3, 1.5)

    def test_levels(self):
        assert alpha_levels(5).tolist() == [0, 0.25, 0.5, 0.75, 1]
        assert alpha_levels([0.3]).tolist() == [0.3]


class TestKaoLiu:
    def test_alpha_one_crisp(self, m3):
        res = modelfuzzy_kaoliu(m3, "basic", alpha=1)
        assert res.efficiency(1, "Worst") == pytest.approx([1, 0.5])
        assert res.efficiency(1, "Best") == pytest.approx([1, 0.5])

    def test_alpha_zero_b(self, m3):
        res = modelfuzzy_kaoliu(m3, "basic", alpha=0)
        assert res.result(0, "Worst", "B").efficiency[0] == pytest.approx(0.2)
        assert res.result(0, "Best", "B").efficiency[0] == pytest.approx(1.0)

    def test_tree_layout(self, m3):
        res = modelfuzzy_kaoliu(m3, alpha=3)
        assert len(res.alphacut) == 3
        assert set(res.alphacut[0]) == {"Worst", "Best"}
        assert set(res.alphacut[0]["Worst"]) == {"A", "B"}

    def test_bands(self, m3):
        bands = modelfuzzy_kaoliu(m3, alpha=[0, 1]).bands()
        assert ("B", 0.0, pytest.approx(0.2), pytest.approx(1.0)) == bands[2]

    def test_crisp_data_all_models(self, meta):
        f = crisp_fuzzy(meta)
        idx = [0, 3, 9]
        for name in ("basic", "fdh", "multiplier", "nonradial", "sbmeff", "supereff"):
            res = modelfuzzy_kaoliu(f, name, alpha=[0, 0.5], dmu_eval=idx)
            for a in (0, 0.5):
                assert res.efficiency(a, "Worst") == pytest.approx(res.efficiency(a, "Best"))
        plain = model_basic(meta, dmu_eval=idx).efficiency
        assert modelfuzzy_kaoliu(f, alpha=0, dmu_eval=idx).efficiency(0, "Worst") == \
            pytest.approx(plain)

    def test_unknown_model(self, m3):
        with pytest.raises(ValueError):
            modelfuzzy_kaoliu(m3, "malmquist")

    def test_all_models_run(self, m3):
        for name in KAOLIU_MODELS:
            kw = {"price_input": 1} if name == "profit" else {}
            res = modelfuzzy_kaoliu(m3, name, alpha=[0.5], **kw)
            assert len(res.alphacut[0]["Best"]) == 2

    def test_missing_alpha(self, m3):
        res = modelfuzzy_kaoliu(m3, alpha=[0, 1])
        with pytest.raises(KeyError):
            res.efficiency(0.5, "Worst")
