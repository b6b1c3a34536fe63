import numpy as np
import pandas as pd
import pytest

from deakit import (DataWarning, Trapezoid, deadata_from_arrays, make_deadata, make_deadata_fuzzy,
                    make_malmquist, undesirable_transform)
from deakit.fuzzy import alpha_cut


FORTUNE_HEAD = pd.DataFrame({
    "Company": ["Mitsubishi", "Mitsui", "Itochu"],
    "Assets": [91920.6, 68770.9, 65708.9],
    "Equity": [10950.0, 5553.9, 4271.1],
    "Employees": [36000, 80000, 7182],
    "Revenue": [184365.2, 181518.7, 169164.6],
    "Profit": [346.2, 314.8, 121.2],
})


class TestMakeDeadata:
    def test_counts_layout(self):
        d = make_deadata(FORTUNE_HEAD, ni=3, no=2)
        assert d.input.shape == (3, 3)
        assert d.input[d.input_names.index("Assets"), d.dmunames.index("Mitsubishi")] == 91920.6
        assert d.output[d.output_names.index("Profit"), 0] == 346.2

    def test_named_columns(self):
        d = make_deadata(FORTUNE_HEAD, inputs=["Equity", "Employees"], outputs=["Profit"])
        assert d.input.shape == (2, 3)
        assert d.output.shape == (1, 3)

    def test_positional_columns(self):
        d = make_deadata(FORTUNE_HEAD, inputs=[2, 3], outputs=[5])
        assert d.input_names == ("Equity", "Employees")

    def test_auto_names(self):
        d = deadata_from_arrays([[1.0]], [[1.0]])
        assert d.dmunames == ("DMU1",)
        assert d.input_names == ("Input1",)
        assert d.output_names == ("Output1",)

    def test_overlap_rejected(self):
        with pytest.raises(ValueError, match="both as inputs and outputs"):
            make_deadata(FORTUNE_HEAD, inputs=["Equity"], outputs=["Equity"])

    def test_non_numeric_rejected(self):
        bad = FORTUNE_HEAD.copy()
        bad["Profit"] = bad["Profit"].astype(object)
        bad.loc[1, "Profit"] = "n/a"
        with pytest.raises(ValueError, match="non-numeric"):
            make_deadata(bad, ni=3, no=2)

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            deadata_from_arrays([[1, 2]], [[1, 2]], ["A", "A"])

    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(0)
        X, Y = rng.uniform(1, 9, (2, 5)), rng.uniform(1, 9, (3, 5))
        table = pd.DataFrame(np.vstack([X, Y]).T, columns=["i1", "i2", "o1", "o2", "o3"])
        table.insert(0, "dmu", list("abcde"))
        path = tmp_path / "t.csv"
        table.to_csv(path, index=False, float_format="%.17g")
        d = make_deadata(path, ni=2, no=3)
        assert np.array_equal(d.input, X)
        assert np.array_equal(d.output, Y)

    def test_diagnostics_are_warnings(self):
        with pytest.warns(DataWarning, match="orders of magnitude"):
            d = deadata_from_arrays([[1, 1e6]], [[1, 1]])
        assert d.notes
        with pytest.warns(DataWarning, match="zero or negative"):
            deadata_from_arrays([[1, 0]], [[1, 1]])

    def test_special_flags(self):
        d = deadata_from_arrays([[1, 2], [3, 4]], [[1, 1]], nd_inputs=[1])
        assert list(d.input_kinds()) == ["d", "nd"]
        with pytest.raises(ValueError, match="out of range"):
            deadata_from_arrays([[1, 2]], [[1, 1]], nc_inputs=[3])
        with pytest.raises(ValueError, match="more than one special flag"):
            deadata_from_arrays([[1, 2]], [[1, 1]], nc_inputs=[0], nd_inputs=[0])

    def test_immutable(self):
        X = np.array([[1.0, 2.0]])
        d = deadata_from_arrays(X, [[1, 1]])
        X[0, 0] = 9
        assert d.input[0, 0] == 1
        with pytest.raises(ValueError):
            d.input[0, 0] = 5


class TestFuzzy:
    def test_kao_liu_layout(self):
        t = pd.DataFrame({"dmu": ["a", "b"], "x": [1.0, 2.0], "y1": [3.0, 4.0], "y2": [5.0, 6.0],
                          "y2l": [0.5, 0.5], "y2r": [1.0, 1.0]})
        f = make_deadata_fuzzy(t, inputs_mL=["x"], outputs_mL=["y1", "y2"],
                               outputs_dL=[None, "y2l"], outputs_dR=[None, "y2r"])
        assert f.input.is_crisp()
        assert np.array_equal(f.output.mR, f.output.mL)
        assert f.output.dL[1].tolist() == [0.5, 0.5]
        assert f.output.dL[0].tolist() == [0.0, 0.0]

    def test_all_crisp_completion(self):
        t = pd.DataFrame({"dmu": ["a", "b"], "x": [1.0, 2.0], "y": [3.0, 4.0]})
        f = make_deadata_fuzzy(t, inputs_mL=["x"], outputs_mL=["y"])
        assert not f.input.dL.any() and not f.output.dR.any()

    def test_alpha_cut_endpoints(self, m3):
        cut = alpha_cut(m3, 0.0)
        lo, hi = cut.input_lower, cut.input_upper
        assert (lo[0, 1], hi[0, 1]) == (3.0, 5.0)
        t = Trapezoid(np.array([[2.0]]), np.array([[3.0]]), np.array([[1.0]]), np.array([[2.0]]))
        assert [float(v[0, 0]) for v in t.cut(0.5)] == [1.5, 4.0]

    def test_invalid_trapezoid(self):
        one = np.ones((1, 1))
        with pytest.raises(ValueError):
            Trapezoid(2 * one, one, one, one)
        with pytest.raises(ValueError):
            Trapezoid(one, one, -one, one)


class TestMalmquistData:
    def test_wide_and_long_agree(self):
        wide = pd.DataFrame({"dmu": ["A", "B"], "x1": [2, 4], "y1": [2, 2], "x2": [2, 4],
                             "y2": [2.5, 3]})
        long = pd.DataFrame({"dmu": ["A", "B", "A", "B"], "t": [1, 1, 2, 2], "x": [2, 4, 2, 4],
                             "y": [2, 2, 2.5, 3]})
        sw = make_malmquist(wide, nper=2, ni=1, no=1)
        sl = make_malmquist(long, "vertical", percol="t", inputs=["x"], outputs=["y"])
        assert len(sw) == len(sl) == 2
        for a, b in zip(sw.periods, sl.periods):
            assert np.array_equal(a.input, b.input)
            assert np.array_equal(a.output, b.output)

    def test_missing_dmu(self):
        long = pd.DataFrame({"dmu": ["A", "B", "A"], "t": [1, 1, 2], "x": [2, 4, 2],
                             "y": [2, 2, 2.5]})
        with pytest.raises(ValueError, match="every DMU"):
            make_malmquist(long, "vertical", percol="t", inputs=["x"], outputs=["y"])

    def test_non_rectangular_wide(self):
        wide = pd.DataFrame({"dmu": ["A"], "x1": [2], "y1": [2], "x2": [2]})
        with pytest.raises(ValueError, match="expected"):
            make_malmquist(wide, nper=2, ni=1, no=1)


class TestUndesirable:
    def test_max_plus_one(self):
        d = deadata_from_arrays([[1, 1, 1]], [[1, 1, 1], [3, 5, 2]], ud_outputs=[1])
        out, _, vo = undesirable_transform(d)
        assert vo.tolist() == [6.0]
        assert out.output[1].tolist() == [3.0, 1.0, 4.0]
        assert out.ud_outputs == ()

    def test_explicit_translation(self):
        d = deadata_from_arrays([[1, 1]], [[1, 1], [100, 200]], ud_outputs=[1])
        out, _, _ = undesirable_transform(d, vtrans_o=1500)
        assert out.output[1].tolist() == [1400.0, 1300.0]

    def test_identity_without_flags(self, m1):
        out, _, _ = undesirable_transform(m1)
        assert out is m1

    def test_second_call_is_identity(self):
        d = deadata_from_arrays([[1, 1]], [[1, 1], [100, 200]], ud_outputs=[1])
        once, _, _ = undesirable_transform(d, vtrans_o=1500)
        twice, _, _ = undesirable_transform(once)
        assert np.array_equal(once.output, twice.output)

    def test_translation_without_flag(self, m1):
        with pytest.raises(ValueError, match="flagged undesirable"):
            undesirable_transform(m1, vtrans_o=5)

    def test_nonpositive_warns(self):
        d = deadata_from_arrays([[1, 1]], [[1, 1], [100, 200]], ud_outputs=[1])
        with pytest.warns(DataWarning):
            undesirable_transform(d, vtrans_o=150)
