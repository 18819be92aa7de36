"""Unit tests for the BP decoders, the ML oracle, Cyc_list and the decoder handles."""

import numpy as np
import pytest

from code_factory import (
    build_stacked,
    encode_batch,
    enumerate_codewords,
    eq1_check_matrix,
    extended_eq1_check_matrix,
    index_map,
    is_codeword,
    sigma,
)
from decoder import (
    LLR_CLAMP,
    ClassicDecoder,
    CycListDecoder,
    DecodingError,
    MlDecoder,
    PuncturedDecoder,
    StackedDecoder,
    WeightBank,
    classic_bp,
    correlation_score,
    cyc_list_decode,
    gather_edges,
    graph_syndrome_ok,
    hard_decision,
    ingest_llr,
    leave_one_out_product,
    make_decoder,
    ml_oracle,
    neural_bp_forward,
    puncture_adapter,
    run_bp,
    scatter_edges,
)
from tanner import TannerGraph, build_graph


def noisy_llr(spec, frames, seed, scale=1.5):
    """Random codewords and Gaussian-perturbed LLRs; no channel model needed here."""
    gen = np.random.default_rng(seed)
    bits = encode_batch(spec, gen.integers(0, 2, (frames, spec.k)))
    llr = 4.0 * (1.0 - 2.0 * bits) + scale * gen.standard_normal(bits.shape)
    return bits, llr


@pytest.mark.unit
class TestPrimitives:
    """Test the building blocks of the message passing."""

    def test_leave_one_out_product(self):
        assert leave_one_out_product(np.array([2.0, 3.0, 4.0])).tolist() == [12.0, 8.0, 6.0]
        assert leave_one_out_product(np.array([0.0, 3.0, 4.0])).tolist() == [12.0, 0.0, 0.0]

    def test_leave_one_out_product_batched(self):
        values = np.array([[[2.0, 3.0], [5.0, 7.0]]])
        assert leave_one_out_product(values).tolist() == [[[3.0, 2.0], [7.0, 5.0]]]

    def test_hard_decision_ties_to_zero(self):
        """Bit 1 iff the output is negative."""
        assert hard_decision([1.0, -0.5, 0.0, -0.0]).tolist() == [0, 1, 0, 0]

    def test_ingest_clamps(self):
        llr, single = ingest_llr([1e6, -1e6, np.inf, 2.0], 4)
        assert single is True
        assert llr.shape == (1, 4)
        assert llr[0].tolist() == [LLR_CLAMP, -LLR_CLAMP, LLR_CLAMP, 2.0]

    def test_ingest_rejects_nan_and_wrong_length(self):
        with pytest.raises(DecodingError):
            ingest_llr([0.0, np.nan, 1.0], 3)
        with pytest.raises(DecodingError):
            ingest_llr(np.zeros((2, 5)), 4)

    def test_gather_and_scatter_with_padding(self):
        x = np.array([[10.0, 20.0, 30.0]])
        groups = np.array([[0, 2], [1, -1]])
        assert gather_edges(x, groups, 0.0).tolist() == [[[10.0, 30.0], [20.0, 0.0]]]
        assert gather_edges(x, groups, 1.0).tolist() == [[[10.0, 30.0], [20.0, 1.0]]]
        out = np.zeros_like(x)
        scatter_edges(out, groups, np.array([[[1.0, 2.0], [3.0, 4.0]]]))
        assert out.tolist() == [[1.0, 3.0, 2.0]]

    def test_correlation_score(self):
        bits = np.array([0, 1, 1])
        llr = np.array([2.0, -1.0, 3.0])
        assert correlation_score(bits, llr) == 2.0 + 1.0 - 3.0


@pytest.mark.unit
class TestWeightBank:
    """Test the tied weight container."""

    def test_unit_bank(self):
        bank = WeightBank.unit(u=4, t=3)
        assert (bank.t, bank.u) == (3, 4)
        assert bank.num_trainable == 3 * 16 + 4
        assert np.all(bank.to_vector() == 1.0)
        assert np.all(np.diagonal(bank.cross_weights, axis1=1, axis2=2) == 0.0)

    def test_diagonal_forced_to_zero(self):
        bank = WeightBank(np.ones((1, 2)), np.full((1, 2, 2), 5.0), np.ones(2))
        assert bank.cross_weights[0].tolist() == [[0.0, 5.0], [5.0, 0.0]]

    def test_vector_round_trip(self, random_bank):
        bank = random_bank(u=5, t=2)
        other = WeightBank.zeros(5, 2)
        other.load_vector(bank.to_vector())
        assert np.array_equal(other.self_weights, bank.self_weights)
        assert np.array_equal(other.cross_weights, bank.cross_weights)
        assert np.array_equal(other.output_weights, bank.output_weights)

    def test_vector_length_checked(self):
        with pytest.raises(ValueError):
            WeightBank.unit(3, 1).load_vector(np.ones(5))

    def test_inconsistent_shapes(self):
        with pytest.raises(ValueError):
            WeightBank(np.ones((2, 3)), np.ones((2, 3, 3)), np.ones(4))

    def test_copy_is_independent(self):
        bank = WeightBank.unit(3, 1)
        clone = bank.copy()
        clone.self_weights[0, 0] = 9.0
        assert bank.self_weights[0, 0] == 1.0


@pytest.mark.unit
class TestNeuralBp:
    """Test the forward pass of the stacked decoder."""

    @pytest.mark.parametrize("P", [1, 2, 4, 8])
    @pytest.mark.parametrize("code", ["ext_84", "ext_16_7"])
    def test_unit_weights_equal_classic_bp(self, request, graph_factory, code, P):
        """All weights 1 reduce the neural decoder to sum-product BP, message for message."""
        spec = request.getfixturevalue(code)
        graph = graph_factory(spec, P)
        _, llr = noisy_llr(spec, 100, seed=P, scale=2.5)
        neural = neural_bp_forward(graph, WeightBank.unit(graph.u, 5), llr, return_trace=True)

        d = graph.var_groups.shape[1]
        _, classic_trace = run_bp(
            graph,
            ingest_llr(llr, spec.n)[0],
            np.ones((5, d)),
            np.broadcast_to(1.0 - np.eye(d), (5, d, d)),
            np.ones(d),
            keep_trace=True,
        )
        assert len(neural.trace.messages) == len(classic_trace.messages) == 11
        for ours, theirs in zip(neural.trace.messages, classic_trace.messages):
            np.testing.assert_allclose(ours, theirs, rtol=0, atol=1e-9)

        classic = classic_bp(graph, llr, 10)
        np.testing.assert_allclose(neural.soft_outputs, classic.soft_outputs, rtol=0, atol=1e-9)
        assert np.array_equal(neural.hard_bits, classic.hard_bits)

    def test_graph_syndrome_matches_matrix(self, ext_84):
        # the all-ones row is longer than the band rows, so check groups are padded
        H = extended_eq1_check_matrix(ext_84)
        graph = TannerGraph.from_matrix(H)
        words = np.random.default_rng(4).integers(0, 2, (50, 8)).astype(np.uint8)
        expected = ~np.any((words.astype(np.int64) @ H.T.astype(np.int64)) % 2, axis=1)
        assert np.array_equal(graph_syndrome_ok(graph, words), expected)
        assert graph_syndrome_ok(graph, enumerate_codewords(ext_84)).all()

    def test_batch_equals_frame_by_frame(self, ext_16_7, graph_factory, random_bank):
        graph = graph_factory(ext_16_7, 3)
        bank = random_bank(graph.u, 3)
        _, llr = noisy_llr(ext_16_7, 6, seed=11, scale=2.0)
        batch = neural_bp_forward(graph, bank, llr)
        for f in range(6):
            single = neural_bp_forward(graph, bank, llr[f])
            assert single.soft_outputs.shape == (16,)
            assert isinstance(single.is_valid_codeword, bool)
            np.testing.assert_allclose(single.soft_outputs, batch.soft_outputs[f], atol=1e-12)
            assert np.array_equal(single.hard_bits, batch.hard_bits[f])

    def test_zero_llr_gives_zero_output(self, ext_84, graph_factory, random_bank):
        """Without channel evidence every message stays 0 and ties decode to 0."""
        graph = graph_factory(ext_84, 4)
        result = neural_bp_forward(graph, random_bank(graph.u, 2), np.zeros(8))
        assert np.all(result.soft_outputs == 0.0)
        assert not result.hard_bits.any()
        assert result.is_valid_codeword is True

    def test_strong_all_zero_word(self, ext_16_7, graph_factory):
        graph = graph_factory(ext_16_7, 4)
        result = neural_bp_forward(graph, WeightBank.unit(graph.u, 5), np.full(16, 20.0))
        assert not result.hard_bits.any()
        assert np.all(result.soft_outputs > 20.0)

    def test_saturated_inputs_stay_finite(self, ext_16_7, graph_factory):
        """Clamped LLRs drive check products to +-1 without producing inf."""
        graph = graph_factory(ext_16_7, 2)
        llr = np.full(16, 1e9)
        llr[3] = -1e9
        result = neural_bp_forward(graph, WeightBank.unit(graph.u, 5), llr)
        assert np.all(np.isfinite(result.soft_outputs))

    def test_decodes_noisy_codewords(self, ext_16_7, graph_factory):
        """At moderate noise the stacked decoder recovers nearly every frame."""
        graph = graph_factory(ext_16_7, 8)
        bits, llr = noisy_llr(ext_16_7, 50, seed=2, scale=1.0)
        result = neural_bp_forward(graph, WeightBank.unit(graph.u, 5), llr)
        assert np.mean(np.all(result.hard_bits == bits, axis=1)) >= 0.9

    def test_equivariant_under_sigma_when_p_is_n(self, ext_84, graph_factory, random_bank):
        """With all n permutations, sigma_a on the input permutes the output."""
        graph = graph_factory(ext_84, 8)
        bank = random_bank(graph.u, 3, seed=3)
        _, llr = noisy_llr(ext_84, 4, seed=5, scale=2.5)
        base = neural_bp_forward(graph, bank, llr).soft_outputs
        imap = index_map(3)
        for a in range(1, 8):
            s = sigma(a, imap)
            moved = neural_bp_forward(graph, bank, s.apply(llr)).soft_outputs
            np.testing.assert_allclose(moved, s.apply(base), rtol=1e-9, atol=1e-9)

    def test_trace_has_every_iteration(self, ext_84, graph_factory):
        graph = graph_factory(ext_84, 2)
        result = neural_bp_forward(graph, WeightBank.unit(graph.u, 3), np.ones(8), True)
        assert len(result.trace.messages) == 7
        assert sorted(result.trace.check_products) == [2, 4, 6]
        assert result.iterations_used == 6

    def test_rejects_mismatched_bank(self, ext_84, graph_factory):
        graph = graph_factory(ext_84, 2)
        with pytest.raises(DecodingError):
            neural_bp_forward(graph, WeightBank.unit(graph.u + 1, 2), np.zeros(8))

    def test_rejects_plain_graph(self, code_74):
        graph = TannerGraph.from_matrix(eq1_check_matrix(code_74))
        with pytest.raises(DecodingError):
            neural_bp_forward(graph, WeightBank.unit(4, 1), np.zeros(7))

    def test_rejects_wrong_length(self, ext_84, graph_factory):
        graph = graph_factory(ext_84, 1)
        with pytest.raises(DecodingError):
            neural_bp_forward(graph, WeightBank.unit(graph.u, 1), np.zeros(7))


@pytest.mark.unit
class TestClassicBp:
    """Test plain sum-product BP on arbitrary matrices."""

    @pytest.mark.parametrize("j", range(7))
    def test_corrects_one_weakly_wrong_bit(self, code_74, j):
        """A wrong bit with weak evidence is overruled by its checks."""
        llr = np.full(7, 6.0)
        llr[j] = -1.0
        result = classic_bp(eq1_check_matrix(code_74), llr, 10)
        assert not result.hard_bits.any()
        assert result.is_valid_codeword is True
        assert np.array_equal(result.hard_bits, ml_oracle(code_74, llr))

    def test_accepts_graph_or_matrix(self, code_74):
        H = eq1_check_matrix(code_74)
        _, llr = noisy_llr(code_74, 5, seed=4)
        a = classic_bp(H, llr, 6)
        b = classic_bp(TannerGraph.from_matrix(H), llr, 6)
        assert np.array_equal(a.soft_outputs, b.soft_outputs)

    @pytest.mark.parametrize("iterations", [0, 3, 7])
    def test_iterations_must_be_even(self, code_74, iterations):
        with pytest.raises(ValueError):
            classic_bp(eq1_check_matrix(code_74), np.zeros(7), iterations)


@pytest.mark.unit
class TestMlOracle:
    """Test brute-force maximum-likelihood decoding."""

    def test_zero_llr_gives_zero_word(self, ext_84):
        assert not ml_oracle(ext_84, np.zeros(8)).any()

    def test_recovers_clean_codewords(self, ext_16_7):
        for word in enumerate_codewords(ext_16_7)[::9]:
            llr = 5.0 * (1.0 - 2.0 * word)
            assert np.array_equal(ml_oracle(ext_16_7, llr), word)

    def test_maximizes_correlation(self, ext_16_7):
        bits, llr = noisy_llr(ext_16_7, 30, seed=8, scale=3.0)
        decoded = ml_oracle(ext_16_7, llr)
        assert np.all(is_codeword(ext_16_7, decoded))
        book = enumerate_codewords(ext_16_7)
        best = (llr @ (1.0 - 2.0 * book.T)).max(axis=1)
        np.testing.assert_allclose(correlation_score(decoded, llr), best)
        assert np.all(correlation_score(decoded, llr) >= correlation_score(bits, llr) - 1e-12)

    def test_too_large_to_enumerate(self):
        from code_factory import build_bch, extend

        spec = extend(build_bch(6, 5))
        with pytest.raises(DecodingError):
            ml_oracle(spec, np.zeros(64))


@pytest.mark.unit
class TestCycList:
    """Test the list-decoding baseline."""

    def test_list_size_one_equals_p1_decoder(self, ext_16_7, graph_factory, random_bank):
        graph = graph_factory(ext_16_7, 1)
        bank = random_bank(graph.u, 3)
        _, llr = noisy_llr(ext_16_7, 10, seed=6, scale=2.5)
        listed = cyc_list_decode(ext_16_7, llr, 1, bank, graph)
        direct = neural_bp_forward(graph, bank, llr)
        assert np.array_equal(listed.soft_outputs, direct.soft_outputs)
        assert np.array_equal(listed.hard_bits, direct.hard_bits)

    def test_codeword_beats_higher_scoring_miss(self, ext_16_7, graph_factory):
        """A weak wrong bit on coordinate 0 is invisible to H_0 but corrected by H_1."""
        graph = graph_factory(ext_16_7, 1)
        bank = WeightBank.unit(graph.u, 5)
        llr = np.full(16, 6.0)
        llr[0] = -1.0
        short = cyc_list_decode(ext_16_7, llr, 1, bank, graph)
        assert short.hard_bits.tolist() == [1] + [0] * 15
        assert short.is_valid_codeword is False
        long = cyc_list_decode(ext_16_7, llr, 2, bank, graph)
        assert not long.hard_bits.any()
        assert long.is_valid_codeword is True
        # the miss correlates better than the codeword and still loses
        assert correlation_score(short.hard_bits, llr) > correlation_score(long.hard_bits, llr)

    def test_longer_list_never_loses_a_codeword(self, ext_16_7, graph_factory):
        graph = graph_factory(ext_16_7, 1)
        bank = WeightBank.unit(graph.u, 5)
        _, llr = noisy_llr(ext_16_7, 40, seed=9, scale=3.0)
        short = cyc_list_decode(ext_16_7, llr, 1, bank, graph)
        long = cyc_list_decode(ext_16_7, llr, 4, bank, graph)
        assert np.array_equal(long.is_valid_codeword, is_codeword(ext_16_7, long.hard_bits))
        assert np.all(long.is_valid_codeword >= short.is_valid_codeword)
        same_tier = long.is_valid_codeword == short.is_valid_codeword
        gain = correlation_score(long.hard_bits, llr) - correlation_score(short.hard_bits, llr)
        assert np.all(gain[same_tier] >= 0)
        assert long.iterations_used == 4 * short.iterations_used

    def test_single_frame(self, ext_84, graph_factory):
        graph = graph_factory(ext_84, 1)
        result = cyc_list_decode(ext_84, np.full(8, 3.0), 2, WeightBank.unit(graph.u, 2))
        assert result.hard_bits.shape == (8,)
        assert not result.hard_bits.any()

    def test_list_size_bounds(self, ext_84, graph_factory):
        graph = graph_factory(ext_84, 1)
        with pytest.raises(ValueError):
            cyc_list_decode(ext_84, np.zeros(8), 0, WeightBank.unit(graph.u, 1), graph)
        with pytest.raises(ValueError):
            cyc_list_decode(ext_84, np.zeros(8), 9, WeightBank.unit(graph.u, 1), graph)

    def test_needs_p1_graph(self, ext_84, graph_factory):
        graph = graph_factory(ext_84, 2)
        with pytest.raises(DecodingError):
            cyc_list_decode(ext_84, np.zeros(8), 2, WeightBank.unit(graph.u, 1), graph)


@pytest.mark.unit
class TestPuncturing:
    """Test decoding the cyclic code through the extended decoder."""

    def test_adapter_prepends_zero(self):
        assert puncture_adapter([1.0, 2.0]).tolist() == [0.0, 1.0, 2.0]
        assert puncture_adapter(np.ones((3, 2))).shape == (3, 3)

    def test_punctured_stacked_decoder(self, bch_15_7):
        handle = make_decoder("stacked", bch_15_7, P=4, punctured=True)
        assert isinstance(handle, PuncturedDecoder)
        assert handle.name == "stacked(P=4)+punct"
        bits, llr = noisy_llr(bch_15_7, 8, seed=12, scale=0.5)
        result = handle.decode_batch(llr)
        assert result.hard_bits.shape == (8, 15)
        assert np.array_equal(result.hard_bits, bits)

    def test_punctured_length_checked(self, bch_15_7):
        handle = make_decoder("stacked", bch_15_7, P=1, punctured=True)
        with pytest.raises(DecodingError):
            handle.decode_batch(np.zeros((1, 16)))


@pytest.mark.unit
class TestMakeDecoder:
    """Test the decoder factory."""

    def test_kinds_and_names(self, ext_84):
        assert isinstance(make_decoder("stacked", ext_84, P=2), StackedDecoder)
        assert make_decoder("stacked", ext_84, P=2).name == "stacked(P=2)"
        cyc = make_decoder("cyclist", ext_84, list_size=3)
        assert isinstance(cyc, CycListDecoder)
        assert cyc.name == "cyclist(l=3)"
        assert cyc.graph_p1.P == 1
        assert isinstance(make_decoder("classic", ext_84, P=2), ClassicDecoder)
        assert isinstance(make_decoder("ml", ext_84), MlDecoder)

    def test_unit_bank_uses_t(self, ext_84):
        handle = make_decoder("stacked", ext_84, P=1, t=2)
        assert handle.weights.t == 2
        assert make_decoder("classic-eq1", ext_84, t=2).iterations == 4

    def test_accepts_cyclic_spec(self, code_74):
        """The extended form is used for decoding whichever flavour is passed."""
        handle = make_decoder("stacked", code_74, P=2)
        assert handle.graph.n == 8

    def test_stacked_unit_matches_classic(self, ext_84):
        _, llr = noisy_llr(ext_84, 10, seed=13, scale=2.5)
        a = make_decoder("stacked", ext_84, P=3).decode_batch(llr)
        b = make_decoder("classic", ext_84, P=3).decode_batch(llr)
        assert np.array_equal(a.hard_bits, b.hard_bits)

    def test_ml_handle(self, ext_84):
        bits, llr = noisy_llr(ext_84, 10, seed=14, scale=1.0)
        result = make_decoder("ml", ext_84).decode_batch(llr)
        assert np.all(result.is_valid_codeword)
        assert np.array_equal(result.hard_bits, ml_oracle(ext_84, llr))

    def test_classic_eq1_handles(self, code_74, ext_84):
        ext_handle = make_decoder("classic-eq1", ext_84)
        assert ext_handle.graph.num_checks == 4
        cyclic = make_decoder("classic-eq1", code_74, punctured=True)
        assert cyclic.graph.n == 7
        result = cyclic.decode_batch(np.full((2, 7), 4.0))
        assert not result.hard_bits.any()

    def test_unknown_kind(self, ext_84):
        with pytest.raises(ValueError):
            make_decoder("turbo", ext_84)

    def test_ml_graph_for_punctured(self, code_74):
        handle = make_decoder("ml", code_74, punctured=True)
        assert handle.spec.n == 7
        result = handle.decode_batch(np.full(7, 2.0))
        assert result.hard_bits.shape == (1, 7)


def test_build_graph_is_reused_by_handles(ext_84):
    """Handles wrap a graph built from the same stacked matrix."""
    handle = make_decoder("stacked", ext_84, P=2)
    reference = build_graph(build_stacked(ext_84, 2))
    assert np.array_equal(handle.graph.edge_var, reference.edge_var)
