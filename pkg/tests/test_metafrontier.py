import numpy as np
import pytest

from deakit import deadata_from_arrays, metafrontier, model_basic

from conftest import META_CONCAVE, META_GROUPS, META_NONCONCAVE, CORPUS


class TestMetafrontier:
    def test_meta_vectors(self, meta):
        res = metafrontier(meta, META_GROUPS, "io", "vrs")
        assert res.concave == pytest.approx(META_CONCAVE, abs=1e-4)
        assert res.nonconcave == pytest.approx(META_NONCONCAVE, abs=1e-4)

    def test_single_group(self, meta):
        res = metafrontier(meta, {"all": range(23)})
        assert res.nonconcave == pytest.approx(res.concave, abs=1e-12)

    def test_orderings(self):
        for data in CORPUS[:20]:
            n = data.n
            groups = {"a": list(range(0, n // 2)), "b": list(range(n // 2, n))}
            res = metafrontier(data, groups, "io", "vrs")
            assert np.all(res.concave <= res.nonconcave + 1e-9)
            for row, g in enumerate(res.group_of):
                col = list(res.groups).index(g)
                own = res.group_scores[row, col]
                assert own >= res.nonconcave[row] - 1e-9

    def test_blocks_match_basic(self, meta):
        res = metafrontier(meta, META_GROUPS)
        want = model_basic(meta, "io", "vrs", dmu_eval=META_GROUPS["G1"],
                           dmu_ref=META_GROUPS["G2"]).efficiency
        assert res.group_scores[:8, 1] == pytest.approx(want, abs=1e-12, nan_ok=True)

    def test_na_removed(self):
        d = deadata_from_arrays([[1, 5, 6]], [[1, 1, 2]], list("ABC"))
        res = metafrontier(d, {"g1": [0], "g2": [1], "g3": [2]}, "oo", "vrs")
        # A has the smallest input, so both foreign vrs frontiers are infeasible for it
        assert np.isnan(res.group_scores[0, 1:]).all()
        assert res.nonconcave[0] == pytest.approx(1.0)

    def test_eval_sets_rejected(self, meta):
        with pytest.raises(ValueError, match="dmu_eval"):
            metafrontier(meta, META_GROUPS, dmu_eval=[0])

    def test_frame(self, meta):
        df = metafrontier(meta, META_GROUPS).to_frame()
        assert list(df.columns) == ["group", "G1", "G2", "G3", "nonconcave", "concave"]
        assert df.index.name == "dmu"
        assert df.loc["C", "nonconcave"] == pytest.approx(0.8, abs=1e-9)

    def test_overlapping_groups(self, meta):
        with pytest.raises(ValueError):
            metafrontier(meta, {"a": [0, 1], "b": [1, 2]})
