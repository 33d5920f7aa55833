import random

import pytest

from helpers import jacobson_quiver, random_no_source_quiver, rose, \
    toeplitz_quiver
from leavittk.filtration import (block_profile, expected_inclusion_matrix,
                                 expected_phi_matrix, filtration_span_dim,
                                 inclusion_k0_matrix, phi_k0_matrix,
                                 stabilized_block_difference)
from leavittk.groups import SizeLimitError
from leavittk.ktheory import leavitt_matrix
from leavittk.matrices import IntMatrix
from leavittk.quiver import SourcesPresentError, order_sinks_first, parse_quiver

FIXTURE_QUIVERS = [
    toeplitz_quiver(),
    jacobson_quiver(1),
    jacobson_quiver(2),
    rose(1),
    rose(2),
    rose(3),
    rose(4),
]


class TestBlockProfile:
    def test_toeplitz_level_two(self):
        prof = block_profile(toeplitz_quiver(), 2)
        labels = [(b.level, b.vertex, b.size) for b in prof.blocks]
        assert labels == [(0, "2", 1), (1, "2", 1), (2, "2", 1), (2, "1", 1)]
        assert prof.sum_of_squares == 4

    def test_rose_single_block(self):
        for n in range(4):
            prof = block_profile(rose(n + 1), 1)
            assert [(b.level, b.size) for b in prof.blocks] == [(1, n + 1)]
            assert prof.sum_of_squares == (n + 1) ** 2

    def test_level_zero_is_vertices(self):
        rng = random.Random(0)
        for _ in range(10):
            q = random_no_source_quiver(rng)
            prof = block_profile(q, 0)
            assert prof.count == q.v
            assert all(b.size == 1 for b in prof.blocks)

    def test_block_count_formula(self):
        rng = random.Random(1)
        quivers = FIXTURE_QUIVERS + [random_no_source_quiver(rng)
                                     for _ in range(10)]
        for q in quivers:
            for n in range(4):
                prof = block_profile(q, n)
                assert prof.count == (n + 1) * q.v_prime + (q.v - q.v_prime)

    def test_sources_rejected(self):
        q = order_sinks_first(parse_quiver("vertices a b\narrow x a b\narrow l b b"))
        with pytest.raises(SourcesPresentError):
            block_profile(q, 1)


class TestSpanDimension:
    def test_toeplitz(self):
        assert filtration_span_dim(toeplitz_quiver(), 2) == 4

    def test_rose_two_petals(self):
        assert filtration_span_dim(rose(2), 1) == 4

    def test_level_zero(self):
        for q in FIXTURE_QUIVERS:
            assert filtration_span_dim(q, 0) == q.v

    @pytest.mark.parametrize("q", FIXTURE_QUIVERS, ids=lambda q: "-".join(q.vertices)
                             + f"-{len(q.arrows)}")
    def test_matches_block_sizes(self, q):
        for n in range(4):
            assert filtration_span_dim(q, n) == block_profile(q, n).sum_of_squares

    def test_guard(self):
        with pytest.raises(SizeLimitError):
            filtration_span_dim(rose(4), 3, limit=50)


class TestTransitionMatrices:
    def test_toeplitz_inclusion_level_one(self):
        m = inclusion_k0_matrix(toeplitz_quiver(), 1)
        assert m.tolists() == [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]]

    def test_rose_inclusion_counts_petals(self):
        for n in range(4):
            for level in range(3):
                assert inclusion_k0_matrix(rose(n + 1), level).tolists() \
                    == [[n + 1]]

    def test_toeplitz_phi_level_one(self):
        m = phi_k0_matrix(toeplitz_quiver(), 1)
        assert m.tolists() == [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_rose_phi_identity(self):
        for n in range(4):
            for level in range(3):
                assert phi_k0_matrix(rose(n + 1), level) == IntMatrix([[1]])

    @pytest.mark.parametrize("q", FIXTURE_QUIVERS, ids=lambda q: "-".join(q.vertices)
                             + f"-{len(q.arrows)}")
    def test_match_expected_forms(self, q):
        for n in range(3):
            assert inclusion_k0_matrix(q, n) == expected_inclusion_matrix(q, n)
            assert phi_k0_matrix(q, n) == expected_phi_matrix(q, n)

    def test_random_quivers_match(self):
        rng = random.Random(2)
        for _ in range(10):
            q = random_no_source_quiver(rng, max_arrows=4)
            for n in range(3):
                assert inclusion_k0_matrix(q, n) == expected_inclusion_matrix(q, n)
                assert phi_k0_matrix(q, n) == expected_phi_matrix(q, n)


class TestStabilizedDifference:
    def test_stabilized_difference_equals_leavitt_matrix(self):
        rng = random.Random(3)
        quivers = FIXTURE_QUIVERS + [random_no_source_quiver(rng, max_arrows=4)
                                     for _ in range(8)]
        for q in quivers:
            expected = leavitt_matrix(q)
            for n in range(3):
                assert stabilized_block_difference(q, n) == expected
