import numpy as np
import pytest

from deakit import deadata_from_arrays, dump, model_basic, model_fdh, model_rdm
from deakit.radial import rdm_directions

from conftest import CORPUS, META_CONCAVE
from oracles import fdh_binary, ratio_ccr, vertex_lp, vrs_input_1d


class TestBasicM1:
    def test_ccr_io(self, m1):
        res = model_basic(m1, "io", "crs")
        assert res.efficiency == pytest.approx(ratio_ccr([2, 4, 5, 8], [2, 2, 4, 2]), abs=1e-9)
        assert res.efficiency == pytest.approx([1, 0.5, 0.8, 0.25], abs=1e-9)

    def test_bcc_io(self, m1):
        res = model_basic(m1, "io", "vrs")
        oracle = [vrs_input_1d([2, 4, 5, 8], [2, 2, 4, 2], o) for o in range(4)]
        assert res.efficiency == pytest.approx(oracle, abs=1e-9)

    def test_ccr_oo_is_reciprocal(self, m1):
        res = model_basic(m1, "oo", "crs")
        assert res.efficiency[1] == pytest.approx(2.0)
        assert res.efficiency == pytest.approx(1 / np.array([1, 0.5, 0.8, 0.25]))

    def test_targets_and_lambdas(self, m1):
        res = model_basic(m1, "io", "vrs")
        assert np.all(res.lambdas >= -1e-9)
        assert res.target_input == pytest.approx((m1.input @ res.lambdas.T).T, abs=1e-7)
        assert res.target_output == pytest.approx((m1.output @ res.lambdas.T).T, abs=1e-7)
        scaled = res.efficiency[:, None] * m1.input.T
        assert np.all(res.target_input <= scaled + 1e-7)
        assert np.all(res.target_output >= m1.output.T - 1e-7)

    def test_hand_lp_oracle(self, m1):
        # min theta s.t. theta*x_o - X lam >= 0, Y lam >= y_o, theta free
        X, Y = m1.input[0], m1.output[0]
        for o in range(4):
            c = np.concatenate([[1.0], np.zeros(4)])
            A_ub = np.vstack([np.concatenate([[-X[o]], X]), np.concatenate([[0.0], -Y])])
            val = vertex_lp(c, A_ub, [0.0, -Y[o]], free=(0,))
            assert model_basic(m1).efficiency[o] == pytest.approx(val, abs=1e-9)

    def test_classification(self):
        # B is radially efficient but has an input slack against A
        d = deadata_from_arrays([[1, 1], [1, 2]], [[1, 1]], ["A", "B"])
        res = model_basic(d, "io", "crs")
        assert res.efficiency == pytest.approx([1, 1])
        assert res.classification() == ["efficient", "weakly efficient"]

    def test_returnlp(self, m1):
        progs = model_basic(m1, returnlp=True)
        assert len(progs) == 4
        assert dump(progs[1]).startswith("min: 1 theta")


class TestMeta:
    def test_bcc_scores(self, meta):
        res = model_basic(meta, "io", "vrs")
        assert res.efficiency == pytest.approx(META_CONCAVE, abs=1e-5)

    def test_group_frontier(self, meta):
        res = model_basic(meta, "io", "vrs", dmu_eval=range(8), dmu_ref=range(8, 14))
        assert res.efficiency[2] == pytest.approx(0.8, abs=1e-9)
        assert res.lambdas.shape == (8, 6)

    def test_na_propagation(self, meta):
        # outputs of G2 exceed every G1 output: infeasible under vrs io
        res = model_basic(meta, "io", "vrs", dmu_eval=range(8, 14), dmu_ref=range(8))
        assert np.all(np.isnan(res.efficiency))
        assert set(res.status) == {"infeasible"}
        assert np.all(np.isnan(res.lambdas))
        assert res.classification() == ["NA"] * 6


class TestSpecialVariables:
    def test_nd_input_blocks_projection(self):
        d = deadata_from_arrays([[2, 4], [10, 5]], [[2, 2]], ["A", "B"], nd_inputs=[1])
        res = model_basic(d, "io", "crs")
        assert res.efficiency[1] == pytest.approx(1.0)

    def test_nc_input_fixed(self):
        d = deadata_from_arrays([[2, 4], [3, 3]], [[2, 2]], ["A", "B"], nc_inputs=[1])
        res = model_basic(d, "io", "crs")
        assert res.target_input[1, 1] == pytest.approx(3.0)

    def test_undesirable_vrs_translation(self):
        d = deadata_from_arrays([[1, 1, 1]], [[2, 3, 4], [1, 2, 5]], ud_outputs=[1])
        res = model_basic(d, "oo", "vrs")
        assert res.params["vtrans_o"] == [6.0]
        assert np.all(np.isfinite(res.efficiency))


class TestDirectional:
    def test_input_direction_matches_theta(self, meta):
        theta = model_basic(meta, "io", "vrs").efficiency
        beta = model_basic(meta, "dir", "vrs", dir_input=meta.input, dir_output=0).efficiency
        assert beta == pytest.approx(1 - theta, abs=1e-9)

    def test_output_direction_matches_eta(self, meta):
        eta = model_basic(meta, "oo", "vrs").efficiency
        beta = model_basic(meta, "dir", "vrs", dir_input=0, dir_output=meta.output).efficiency
        assert beta == pytest.approx(eta - 1, abs=1e-9)

    def test_zero_direction_rejected(self, m1):
        with pytest.raises(ValueError, match="all-zero"):
            model_basic(m1, "dir", dir_input=0, dir_output=0)

    def test_direction_only_with_dir(self, m1):
        with pytest.raises(ValueError):
            model_basic(m1, "io", dir_input=1)

    def test_weight_matrix_broadcast(self, m1):
        res = model_basic(m1, weight_slack_i=np.ones((1, 4)), weight_slack_o=[2.0])
        assert np.array(res.params["weight_slack_o"]).shape == (1, 4)
        with pytest.raises(ValueError):
            model_basic(m1, weight_slack_i=np.ones((2, 4)))


class TestFdh:
    def test_m1(self, m1):
        assert model_fdh(m1).efficiency[1] == pytest.approx(0.5)

    def test_self_reference(self, meta):
        for j in (0, 5, 17):
            assert model_fdh(meta, dmu_eval=[j], dmu_ref=[j]).efficiency[0] == pytest.approx(1)

    def test_fdh_at_least_bcc(self, meta):
        assert np.all(model_fdh(meta).efficiency >= model_basic(meta, rts="vrs").efficiency - 1e-9)

    @pytest.mark.parametrize("orientation", ["io", "oo"])
    def test_binary_brute_force(self, orientation):
        for data in CORPUS[:30]:
            if data.n > 8:
                continue
            res = model_fdh(data, orientation)
            oracle = [fdh_binary(data.input, data.output, o, orientation) for o in range(data.n)]
            assert res.efficiency == pytest.approx(oracle, abs=1e-9)

    def test_dir_line_search(self, m1):
        res = model_fdh(m1, "dir", dir_input=m1.input, dir_output=0)
        assert res.efficiency == pytest.approx([0, 0.5, 0, 0.75])


class TestRdm:
    def test_micro(self):
        d = deadata_from_arrays([[2, 4]], [[2, 2]], ["A", "B"])
        res = model_rdm(d, "io")
        assert res.efficiency[1] == pytest.approx(1.0)
        assert res.target_input[1, 0] == pytest.approx(2.0)

    def test_degenerate_direction(self):
        d = deadata_from_arrays([[1, 2]], [[3, 1]], ["A", "B"])
        assert model_rdm(d).efficiency[0] == 0.0

    def test_irdm_inverts(self):
        d = deadata_from_arrays([[2, 4]], [[2, 2]], ["A", "B"])
        g_in, _ = rdm_directions(d, np.arange(2), np.arange(2), "io", irdm=True)
        assert g_in[0].tolist() == [0.0, 0.5]
