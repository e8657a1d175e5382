"""MIS computation, answer policies, and transcript recording."""

import random

import pytest

from misrecon.graphs import Graph, VertexSet, gen_bounded_degree, sample_clique_family, sample_blocked_clique_family
from misrecon.oracle import (
    AdversarialCliquePolicy,
    GreedyLexPolicy,
    RandomMisPolicy,
    Transcript,
    adversarial_clique_answer,
    greedy_mis,
    is_mis,
    make_policy,
    random_mis,
    run_scheme,
)
from misrecon.schemes import QueryScheme, random_queries


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def vs(n, *members):
    return VertexSet.from_members(n, members)


class TestIsMis:
    def test_triangle_singleton(self):
        assert is_mis(Graph.complete(3), VertexSet.full(3), vs(3, 0))

    def test_empty_not_maximal(self):
        assert not is_mis(Graph.complete(3), VertexSet.full(3), VertexSet(3))

    def test_path_endpoints(self):
        assert is_mis(path_graph(3), VertexSet.full(3), vs(3, 0, 2))

    def test_dependent_set_rejected(self):
        assert not is_mis(path_graph(3), VertexSet.full(3), vs(3, 0, 1))

    def test_candidate_must_be_inside_query(self):
        with pytest.raises(ValueError):
            is_mis(path_graph(3), vs(3, 0), vs(3, 2))


class TestGreedyMis:
    def test_triangle_ascending_takes_first(self):
        assert greedy_mis(Graph.complete(3), VertexSet.full(3), range(3)) == vs(3, 0)

    def test_empty_query(self):
        assert greedy_mis(path_graph(4), VertexSet(4), range(4)) == VertexSet(4)

    def test_independent_query_returned_whole(self):
        assert greedy_mis(path_graph(3), vs(3, 0, 2), range(3)) == vs(3, 0, 2)

    def test_deterministic(self):
        g = gen_bounded_degree(30, 5, 0.7, seed=1)
        q = vs(30, *range(0, 30, 2))
        assert greedy_mis(g, q, range(30)) == greedy_mis(g, q, range(30))

    def test_order_respected(self):
        assert greedy_mis(Graph.complete(3), VertexSet.full(3), [2, 1, 0]) == vs(3, 2)


class TestRandomMis:
    def test_clique_answer_is_singleton(self):
        ans = random_mis(Graph.complete(4), VertexSet.full(4), seed=5)
        assert len(ans) == 1

    def test_no_edges_returns_query(self):
        assert random_mis(Graph.empty(6), vs(6, 1, 3, 5), seed=0) == vs(6, 1, 3, 5)

    def test_triangle_distribution_uniform(self):
        # symmetry of a uniform permutation: each singleton wins 1/3 of seeds
        counts = {0: 0, 1: 0, 2: 0}
        trials = 3000
        for seed in range(trials):
            ans = random_mis(Graph.complete(3), VertexSet.full(3), seed=seed)
            counts[ans.members()[0]] += 1
        for v in range(3):
            assert abs(counts[v] / trials - 1 / 3) < 0.05


class TestAdversarialAnswer:
    def test_query_outside_clique_returned_whole(self):
        g, desc = sample_clique_family(9, 2, seed=3)
        q = desc.clique.complement()
        assert adversarial_clique_answer(g, desc, q) == q

    def test_query_equal_to_clique_gives_lowest_vertex(self):
        g, desc = sample_clique_family(10, 4, seed=8)  # |U| = 2
        assert len(desc.clique) >= 2
        ans = adversarial_clique_answer(g, desc, desc.clique)
        assert ans == vs(10, min(desc.clique.members()))

    def test_block_query_forces_outside_answer(self):
        g, desc = sample_blocked_clique_family(12, 3, seed=6)
        q = VertexSet.full(12)
        ans = adversarial_clique_answer(g, desc, q)
        assert ans == q - desc.clique

    @pytest.mark.parametrize("seed", range(50))
    def test_answer_is_mis_and_reveals_at_most_one(self, seed):
        g, desc = sample_clique_family(11, 3, seed=seed)
        rng = random.Random(seed)
        q = VertexSet(11, rng.getrandbits(11))
        ans = adversarial_clique_answer(g, desc, q)
        assert is_mis(g, q, ans)
        assert len(ans & desc.clique) <= 1


class TestPolicies:
    def test_factory(self):
        assert isinstance(make_policy("greedy-lex"), GreedyLexPolicy)
        assert isinstance(make_policy("random", seed=1), RandomMisPolicy)
        _, desc = sample_clique_family(9, 2, seed=0)
        assert isinstance(
            make_policy("adversarial-clique", desc=desc), AdversarialCliquePolicy
        )
        with pytest.raises(ValueError):
            make_policy("random")
        with pytest.raises(ValueError):
            make_policy("nope")

    def test_random_policy_depends_on_query_index_only(self):
        g = gen_bounded_degree(20, 4, 0.8, seed=2)
        q = vs(20, *range(0, 20, 3))
        pol = RandomMisPolicy(seed=7)
        assert pol.answer(g, q, 3) == pol.answer(g, q, 3)


class TestRunScheme:
    def test_empty_graph_answers_equal_queries(self):
        scheme = random_queries(8, 5, 0.5, seed=4)
        transcript = run_scheme(Graph.empty(8), scheme, GreedyLexPolicy())
        for q, a in transcript.entries:
            assert a == q

    def test_triangle_single_query(self):
        scheme = QueryScheme(3, (VertexSet.full(3),))
        transcript = run_scheme(Graph.complete(3), scheme, GreedyLexPolicy())
        assert transcript.entries == ((VertexSet.full(3), vs(3, 0)),)

    @pytest.mark.parametrize("seed", range(100))
    def test_all_recorded_answers_are_mis(self, seed):
        g = gen_bounded_degree(15, 4, 0.6, seed=seed)
        scheme = random_queries(15, 6, 0.4, seed=seed + 1)
        transcript = run_scheme(g, scheme, RandomMisPolicy(seed + 2))
        assert len(transcript) == 6
        for q, a in transcript.entries:
            assert is_mis(g, q, a)

    def test_universe_mismatch_rejected(self):
        with pytest.raises(ValueError):
            run_scheme(Graph.empty(4), random_queries(5, 2, 0.5, 0), GreedyLexPolicy())

    def test_policy_descriptor_mismatch_rejected(self):
        _, desc = sample_clique_family(9, 2, seed=0)
        g = Graph.empty(8)
        scheme = random_queries(8, 2, 0.5, seed=1)
        with pytest.raises(ValueError):
            run_scheme(g, scheme, AdversarialCliquePolicy(desc))


class TestTranscript:
    def test_answer_within_query_enforced(self):
        with pytest.raises(ValueError):
            Transcript(4, ((vs(4, 0), vs(4, 1)),))

    def test_text_round_trip(self):
        g = gen_bounded_degree(10, 3, 0.5, seed=5)
        scheme = random_queries(10, 4, 0.5, seed=6)
        transcript = run_scheme(g, scheme, GreedyLexPolicy())
        text = transcript.to_text()
        back = Transcript.from_text(10, text)
        assert back == transcript
        assert back.to_text() == text

    def test_parse_error(self):
        with pytest.raises(ValueError):
            Transcript.from_text(4, "not json\n")
