import numpy as np
import pytest

from deakit import cross_efficiency, deadata_from_arrays, model_multiplier

from conftest import CORPUS
from oracles import ratio_ccr

CCR_M1 = [1, 0.5, 0.8, 0.25]


class TestCross:
    def test_m1_rows(self, m1):
        res = cross_efficiency(m1)
        for name in ("Arbitrary", "M2_agg", "M2_ben", "M3_agg", "M3_ben"):
            E = res[name].cross_eff
            for row in E:
                assert row == pytest.approx(CCR_M1, abs=1e-9)
            assert res[name].e == pytest.approx(CCR_M1, abs=1e-9)
            assert res[name].maverick == pytest.approx(np.zeros(4), abs=1e-9)

    def test_single_dmu(self):
        res = cross_efficiency(deadata_from_arrays([[2.0]], [[3.0]]))
        m = res["Arbitrary"]
        assert m.cross_eff.ravel() == pytest.approx([1.0])
        assert m.e == pytest.approx([1.0])
        assert m.A == pytest.approx([1.0])
        assert m.maverick == pytest.approx([0.0])

    def test_selfapp_off(self, m1):
        res = cross_efficiency(m1, selfapp=False)
        assert res["Arbitrary"].e == pytest.approx(CCR_M1, abs=1e-9)

    def test_one_in_one_out_equals_ccr(self):
        rng = np.random.default_rng(5)
        x = rng.uniform(1, 10, 7)
        y = rng.uniform(1, 10, 7)
        res = cross_efficiency(deadata_from_arrays([x], [y]))
        assert res["Arbitrary"].e == pytest.approx(ratio_ccr(x, y), abs=1e-9)

    @pytest.mark.parametrize("rts", ["crs", "vrs"])
    def test_diagonal(self, rts):
        for data in CORPUS[:12]:
            res = cross_efficiency(data, rts=rts)
            self_eff = model_multiplier(data, "io", rts).efficiency
            assert res.efficiency == pytest.approx(self_eff, abs=1e-7)
            for name, m in res.methods.items():
                ok = np.isfinite(np.diag(m.cross_eff))
                assert np.diag(m.cross_eff)[ok] == pytest.approx(self_eff[ok], abs=1e-6), name

    def test_selfapp_relation(self):
        for data in CORPUS[:10]:
            on = cross_efficiency(data, rts="vrs", M2=False, M3=False)["Arbitrary"]
            off = cross_efficiency(data, rts="vrs", selfapp=False, M2=False, M3=False)["Arbitrary"]
            n = data.n
            assert on.e == pytest.approx(((n - 1) * off.e + np.diag(on.cross_eff)) / n, abs=1e-9)

    def test_correction_nonnegative(self):
        for data in CORPUS[:12]:
            res = cross_efficiency(data, rts="vrs", correction=True)
            assert res.correction
            for m in res.methods.values():
                E = m.cross_eff[np.isfinite(m.cross_eff)]
                assert np.all(E >= -1e-9)

    def test_correction_note_when_not_applicable(self, m1):
        res = cross_efficiency(m1, rts="crs", correction=True)
        assert not res.correction and res.notes

    def test_bounded_flag_shape(self, meta):
        res = cross_efficiency(meta, rts="vrs")
        assert res["M2_agg"].bounded.shape == (23,)

    def test_special_rejected(self):
        d = deadata_from_arrays([[1, 2], [1, 1]], [[1, 1]], nc_inputs=[1])
        with pytest.raises(ValueError):
            cross_efficiency(d)
