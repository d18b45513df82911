import json
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hybrid_oracles.graphcore import (
    INF,
    Graph,
    bipartite_double_cover,
    complete_bipartite,
    cycle_graph,
    girth,
    hop_distances,
    petersen,
)
from hybrid_oracles.lowerbound import (
    GammaInstance,
    GirthTooSmall,
    InfeasibleEpsilon,
    Kind,
    LowerBoundError,
    PresetInvalid,
    Problem,
    STATEFUL_TABLE,
    TargetUnreachable,
    WeightPreset,
    bit_accuracy,
    check_inequalities,
    decode_from_oracle,
    decode_from_routing,
    gen_unweighted,
    gen_weighted,
    high_girth_greedy,
    make_preset,
    random_bits,
    verify_unweighted,
    verify_weighted,
)
from hybrid_oracles.surd import Surd

from strategies import floyd_warshall, path_weight, simple_paths


def shortest_routes(g, s, t):
    paths = simple_paths(g, s, t)
    best = min(path_weight(g, p) for p in paths)
    return best, [p for p in paths if path_weight(g, p) == best]


def brute_check(inst):
    """Per-pair (distance, v on some, v on all) from explicit path enumeration."""
    v = inst.roles.v
    out = {}
    for i, j in inst.index:
        d, routes = shortest_routes(inst.graph, inst.s(i), inst.t(j))
        on = [v in p for p in routes]
        out[(i, j)] = (d, any(on), all(on))
    return out


def exact_estimates(inst):
    D = floyd_warshall(inst.graph)
    return {(i, j): D[inst.s(i)][inst.t(j)] for i, j in inst.index}


def k22_preset():
    return WeightPreset.custom(4, 2, 1, 1)


class TestUnweightedGeneration:
    def test_smallest_instance(self):
        inst = gen_unweighted(1, 1, X=[1])
        g, r = inst.graph, inst.roles
        assert g.n == 5 and g.m == 5
        s, u, t = inst.s(0), inst.u(0), inst.t(0)
        for a, b in [(s, u), (u, t), (r.v, r.v_prime), (r.v, s), (r.v_prime, t)]:
            assert g.has_edge(a, b)

    @pytest.mark.parametrize("k,h", [(1, 1), (2, 2), (3, 5), (6, 1)])
    def test_node_count(self, k, h):
        inst = gen_unweighted(k, h, seed=0)
        # sources, transits and chain interiors: k(h+1); targets: k; path: h+1
        assert inst.graph.n == k * (h + 1) + k + (h + 1) == k * (h + 2) + h + 1
        assert len(inst.graph.nodes) == inst.graph.n

    def test_k2_h2(self):
        assert gen_unweighted(2, 2, seed=1).graph.n == 11

    def test_all_zeros_has_no_transit_target_edges(self):
        inst = gen_unweighted(3, 2, X="0" * 9)
        for i in range(3):
            for j in range(3):
                assert not inst.graph.has_edge(inst.u(i), inst.t(j))
        D = floyd_warshall(inst.graph)
        assert all(D[inst.s(i)][inst.t(j)] == 4 for i in range(3) for j in range(3))

    def test_chain_and_path_lengths(self):
        inst = gen_unweighted(3, 4, seed=2)
        hops = hop_distances(inst.graph, [inst.roles.v])
        assert hops[inst.roles.v_prime] == 4
        for i in range(3):
            assert len(inst.roles.chains[i]) - 1 == 4

    def test_bit_index_is_row_major(self):
        X = random_bits(16, 5)
        inst = gen_unweighted(4, 2, X=X)
        for i in range(4):
            for j in range(4):
                assert inst.bit(i, j) == X[i * 4 + j]
                assert inst.graph.has_edge(inst.u(i), inst.t(j)) == bool(X[i * 4 + j])

    @pytest.mark.parametrize("X", ["01", [1, 0, 1], "0a11"])
    def test_bad_bits(self, X):
        with pytest.raises(LowerBoundError):
            gen_unweighted(2, 1, X=X)

    def test_bad_params(self):
        with pytest.raises(LowerBoundError):
            gen_unweighted(0, 1, seed=0)
        with pytest.raises(LowerBoundError):
            gen_unweighted(1, 0, seed=0)

    def test_seeded_bits_reproducible(self):
        assert gen_unweighted(5, 2, seed=9).X == gen_unweighted(5, 2, seed=9).X
        assert random_bits(200, 1) != random_bits(200, 2)


class TestVerifyUnweighted:
    def test_single_bit(self):
        one = verify_unweighted(gen_unweighted(1, 1, X=[1]))
        zero = verify_unweighted(gen_unweighted(1, 1, X=[0]))
        assert one.passed and one.records[0].measured == 2
        assert zero.passed and zero.records[0].measured == 3

    def test_k8_h5_random(self):
        rep = verify_unweighted(gen_unweighted(8, 5, seed=3))
        assert rep.passed and len(rep.records) == 64
        assert rep.hop_ab == 5

    @given(st.integers(1, 2), st.integers(1, 3), st.data())
    def test_matches_path_enumeration(self, k, h, data):
        X = data.draw(st.lists(st.integers(0, 1), min_size=k * k, max_size=k * k))
        inst = gen_unweighted(k, h, X=X)
        brute = brute_check(inst)
        rep = verify_unweighted(inst)
        for r in rep.records:
            d, some, every = brute[(r.i, r.j)]
            assert (r.measured, r.via_v_some, r.via_v_all) == (d, some, every)
            assert d == (h + 1 if r.x else h + 2)
            # bit 1: v avoided; bit 0: v on every shortest route
            assert (not some) if r.x else every
        assert rep.passed

    def test_rejects_weighted(self):
        inst = gen_weighted(complete_bipartite(2), 2, k22_preset(), seed=0)
        with pytest.raises(LowerBoundError):
            verify_unweighted(inst)

    def test_tampered_instance_fails(self):
        inst = gen_unweighted(2, 2, X="1111")
        edges = [e for e in inst.graph.edges() if {e[0], e[1]} != {inst.u(0), inst.t(1)}]
        inst.graph = Graph(inst.graph.n, edges)
        rep = verify_unweighted(inst)
        assert not rep.passed
        assert [(r.i, r.j) for r in rep.failures] == [(0, 1)]
        assert "first failure" in rep.summary()


class TestWeightedGeneration:
    def test_k22_all_ones(self):
        inst = gen_weighted(complete_bipartite(2), 2, k22_preset(), X="1111")
        assert all(inst.graph.has_edge(inst.u(i), inst.t(j)) for i in range(2) for j in range(2))

    def test_k33_bits(self):
        inst = gen_weighted(complete_bipartite(3), 3, k22_preset(), seed=4)
        assert inst.m == 9

    def test_petersen_cover(self):
        G = bipartite_double_cover(petersen())
        pre = make_preset("stateful", 6, 0.1, 3)
        inst = gen_weighted(G, 3, pre, seed=0)
        assert inst.m == 30 and inst.k == 10
        assert inst.graph.n == 10 * 5 + 3

    def test_weights_on_edges(self):
        pre = WeightPreset.custom(4, 7, 4, 3)
        inst = gen_weighted(complete_bipartite(2), 4, pre, X="1011")
        g, r = inst.graph, inst.roles
        for i in range(2):
            chain = r.chains[i]
            assert g.weight(chain[0], chain[1]) == 3
            assert all(g.weight(a, b) == 1 for a, b in zip(chain[1:], chain[2:]))
            assert g.weight(r.v, inst.s(i)) == 3
            assert g.weight(r.v_prime, inst.t(i)) == 7
        assert g.weight(inst.u(0), inst.t(0)) == 4
        assert not g.has_edge(inst.u(0), inst.t(1))
        assert hop_distances(g, [r.v])[r.v_prime] == 3

    def test_bits_follow_base_edges(self):
        G = high_girth_greedy(6, 6, seed=1)
        inst = gen_weighted(G, 2, make_preset("stateful", 6, 0.5, 2), seed=3)
        left, right = inst.sides
        pos_l = {a: i for i, a in enumerate(left)}
        pos_r = {b: j for j, b in enumerate(right)}
        for b, (a, c, _) in enumerate(G.edges()):
            i, j = pos_l[a], pos_r[c]
            assert inst.index[b] == (i, j)
            assert inst.graph.has_edge(inst.u(i), inst.t(j)) == bool(inst.X[b])

    def test_girth_too_small(self):
        with pytest.raises(GirthTooSmall):
            gen_weighted(complete_bipartite(3), 2, make_preset("stateful", 6, 0.5, 2), seed=0)

    @pytest.mark.parametrize("w", [(1, 1, 1), (3, 1, 1), (0, 1, 1)])
    def test_preset_invalid(self, w):
        with pytest.raises(PresetInvalid):
            gen_weighted(complete_bipartite(2), 2, WeightPreset.custom(4, *w), seed=0)

    def test_shape_errors(self):
        pre = k22_preset()
        with pytest.raises(LowerBoundError):
            gen_weighted(complete_bipartite(2), 1, pre, seed=0)
        with pytest.raises(LowerBoundError):
            gen_weighted(cycle_graph(5), 2, pre, seed=0)
        unbalanced = Graph(3, [(0, 1, 1), (0, 2, 1)])
        with pytest.raises(LowerBoundError):
            gen_weighted(unbalanced, 2, pre, seed=0)


class TestVerifyWeighted:
    def test_k22_distances(self):
        inst = gen_weighted(complete_bipartite(2), 2, k22_preset(), X="1011")
        rep = verify_weighted(inst)
        assert rep.passed
        got = {(r.i, r.j): r.measured for r in rep.records}
        assert got[(0, 0)] == 3 and got[(0, 1)] == 4

    @given(st.integers(2, 3), st.data())
    def test_stateful_matches_enumeration(self, h, data):
        pre = make_preset("stateful", 4, data.draw(st.sampled_from([0.1, 0.5])), h)
        X = data.draw(st.lists(st.integers(0, 1), min_size=4, max_size=4))
        inst = gen_weighted(complete_bipartite(2), h, pre, X=X)
        brute = brute_check(inst)
        rep = verify_weighted(inst)
        for r in rep.records:
            assert (r.measured, r.via_v_some, r.via_v_all) == brute[(r.i, r.j)]
        assert rep.passed

    @pytest.mark.parametrize("seed", range(20))
    def test_stateful_random_triples(self, seed):
        G = [complete_bipartite(3), complete_bipartite(5), bipartite_double_cover(petersen()),
             high_girth_greedy(8, 6, seed=seed)][seed % 4]
        ell = 4 if seed % 4 < 2 else 6
        pre = make_preset("stateful", ell, [0.1, 0.5][seed % 2], 2 + seed % 5)
        assert verify_weighted(gen_weighted(G, pre_h(seed), pre, seed=seed)).passed

    @pytest.mark.parametrize("problem", ["oracle", "stateless"])
    def test_light_source_edges_open_a_shortcut(self, problem):
        # w2 = 1 makes s_i - v - s_i' - ... - u_i' - t_j cheaper than the v' route
        h = 3
        pre = make_preset(problem, 4, 0.5, h)
        w0, w1, w2 = pre.weights
        inst = gen_weighted(complete_bipartite(2), h, pre, X="0111")
        rep = verify_weighted(inst)
        bad = {(r.i, r.j): r for r in rep.failures}
        assert list(bad) == [(0, 0)]
        assert bad[(0, 0)].measured == w1 + 3 * w2 + h - 1 < inst.d0
        assert bad[(0, 0)].via_v_all
        assert brute_check(inst)[(0, 0)][0] == w1 + 3 * w2 + h - 1

    @pytest.mark.parametrize("problem", ["oracle", "stateless"])
    def test_isolated_zero_bits_still_pass(self, problem):
        # a zero bit whose target has no planted neighbour keeps the v' route
        pre = make_preset(problem, 4, 0.5, 3)
        for X in ["1010", "0101", "0000", "1111"]:
            assert verify_weighted(gen_weighted(complete_bipartite(2), 3, pre, X=X)).passed

    def test_rejects_unweighted(self):
        with pytest.raises(LowerBoundError):
            verify_weighted(gen_unweighted(2, 2, seed=0))


def pre_h(seed):
    return 2 + seed % 5


class TestPresets:
    def test_oracle_example(self):
        pre = make_preset("oracle", 4, 0.5, 10)
        assert pre.t == 61 and pre.w1 == 61 and pre.w2 == 1
        assert pre.w0 == 168  # ceil(2.75 * 61)
        assert pre.alpha == Surd(Fraction(5, 2))

    def test_stateless_alpha(self):
        pre = make_preset("stateless", 4, 0.2, 5)
        assert pre.alpha == Surd.sqrt(3) - Fraction(1, 5)
        assert pre.w0 == Surd.sqrt(3).floor_times(pre.t)

    def test_stateful_l6_ratios(self):
        pre = make_preset("stateful", 6, 0.1, 5)
        t = pre.t
        assert (pre.w1, pre.w2) == (t, round(Fraction(5, 4) * t))
        assert pre.w0 == round(Fraction(5, 2) * t)
        assert check_inequalities(pre, 5).ok

    def test_stateful_l10(self):
        pre = make_preset("stateful", 10, 0.1, 10)
        rep = check_inequalities(pre, 10)
        assert rep.ok and set(rep.slacks) >= {"(1)", "(2)", "(3)", "(4)", "(5)"}

    def test_initial_scale_clears_strict_bound(self):
        for h in (2, 10, 50):
            pre = make_preset("oracle", 6, 0.1, h)
            assert pre.t > 2 * (6 - 2 - Fraction(1, 10)) / Fraction(1, 10) * h
            pre = make_preset("stateless", 6, 0.1, h)
            assert pre.t > h / Fraction(1, 10)

    @pytest.mark.parametrize("problem", list(Problem))
    @pytest.mark.parametrize("ell", [4, 6, 8, 10, 12])
    def test_precondition(self, problem, ell):
        pre = make_preset(problem, ell, 0.1, 6)
        assert pre.w1 < pre.w0 < (ell - 1) * pre.w1
        assert check_inequalities(pre, 6).ok

    def test_infeasible(self):
        with pytest.raises(InfeasibleEpsilon):
            make_preset("stateful", 4, 2, 3)
        with pytest.raises(InfeasibleEpsilon):
            make_preset("oracle", 4, 0, 3)

    def test_bad_params(self):
        with pytest.raises(LowerBoundError):
            make_preset("oracle", 5, 0.1, 3)
        with pytest.raises(LowerBoundError):
            make_preset("oracle", 4, 0.1, 1)

    def test_to_dict(self):
        d = make_preset("stateful", 4, 0.5, 2).to_dict()
        assert d["problem"] == "stateful" and len(d["weights"]) == 3
        json.dumps(d)


class TestInequalities:
    def test_alpha_without_epsilon_fails(self):
        pre = make_preset("oracle", 4, 0.5, 10).with_alpha(3)
        assert not check_inequalities(pre, 10).ok

    def test_stateless_l8_overweight_w0(self):
        t = 1000
        w0 = (1 + Surd.sqrt(2) + Fraction(1, 10)).floor_times(t)
        pre = WeightPreset.custom(8, w0, t, 1, alpha=Surd(w0) / t - Fraction(1, 100), problem="stateless")
        rep = check_inequalities(pre, 5)
        assert "(3)" in rep.failing()

    def test_values_by_hand(self):
        pre = WeightPreset.custom(6, 10, 4, 3, alpha=Fraction(3, 2), problem="stateful")
        rep = check_inequalities(pre, 2)
        assert (rep.d1, rep.d0) == (8, 14)
        assert rep.d == {1: 14, 2: 24, 3: 28, 4: 20, 5: 14}
        assert rep.slacks["(1)"] == Surd(14 - 12)
        assert rep.slacks["(4)"] == Surd(20 - 21)
        assert rep.failing() == ["(4)"]

    @pytest.mark.parametrize("ell", [4, 6, 8, 10])
    @pytest.mark.parametrize("eps", ["0.05", "0.1", "0.5"])
    def test_stateful_strictness_witness(self, ell, eps):
        e = Fraction(eps)
        for h in (2, 10, 50):
            pre = make_preset("stateful", ell, e, h)
            assert check_inequalities(pre, h).ok
            assert not check_inequalities(pre.with_alpha(pre.alpha + 2 * e), h).ok

    def test_table_rows(self):
        assert STATEFUL_TABLE[10][3] == (3 + Surd.sqrt(17)) / 4
        assert float(STATEFUL_TABLE[4][0]) == pytest.approx(2 * 2**0.5 - 1)

    @given(st.sampled_from([4, 6, 8, 10]), st.sampled_from(["0.05", "0.1", "0.25", "0.5"]),
           st.integers(2, 50))
    def test_presets_sound(self, ell, eps, h):
        for problem in Problem:
            assert check_inequalities(make_preset(problem, ell, Fraction(eps), h), h).ok


class TestDecoding:
    def setup_method(self):
        self.pre = make_preset("stateful", 4, 0.1, 3)
        self.inst = gen_weighted(complete_bipartite(4), 3, self.pre, seed=5)

    def test_exact_estimates(self):
        assert decode_from_oracle(self.inst, exact_estimates(self.inst)) == self.inst.X

    def test_worst_legal_inflation(self):
        est = exact_estimates(self.inst)
        a = float(self.pre.alpha)
        # largest integer estimate within stretch alpha
        worst = {p: int(d * a) if int(d * a) >= d else d for p, d in est.items()}
        assert decode_from_oracle(self.inst, worst) == self.inst.X

    def test_threshold_boundary(self):
        est = {p: self.inst.d1 for p in self.inst.index}
        first = self.inst.index[0]
        est[first] = self.inst.d0
        got = decode_from_oracle(self.inst, est)
        assert got[0] == 0 and set(got[1:]) == {1}
        est[first] = self.inst.d0 - 1
        assert decode_from_oracle(self.inst, est)[0] == 1

    def test_routing_extremes(self):
        inst = self.inst
        v = inst.roles.v
        assert decode_from_routing(inst, {p: v for p in inst.index}) == (0,) * inst.m
        assert decode_from_routing(inst, {p: inst.roles.chains[p[0]][1] for p in inst.index}) == (1,) * inst.m

    def test_unweighted_flag_irrelevant(self):
        inst = gen_unweighted(3, 2, seed=1)
        hops = {(i, j): inst.roles.v if not inst.bit(i, j) else inst.roles.chains[i][1] for i, j in inst.index}
        assert decode_from_routing(inst, hops, True) == decode_from_routing(inst, hops) == inst.X

    def test_bit_accuracy(self):
        assert bit_accuracy((1, 0, 1, 1), (1, 1, 1, 1)) == 0.75
        assert bit_accuracy((), ()) == 1.0
        with pytest.raises(ValueError):
            bit_accuracy((1,), ())


class TestGreedyGirth:
    def test_l4_is_complete(self):
        for k in (1, 3, 5):
            g = high_girth_greedy(k, 4, seed=k)
            assert g.m == k * k and sorted(g.edges()) == sorted(complete_bipartite(k).edges())

    def test_l6(self):
        g = high_girth_greedy(20, 6, seed=0)
        assert girth(g) >= 6 and g.m > 20
        assert all(a < 20 <= b for a, b, _ in g.edges())

    def test_forest(self):
        g = high_girth_greedy(10, 1000, seed=0)
        assert girth(g) == INF and g.m <= 19

    def test_warns_on_saturation(self):
        with pytest.warns(TargetUnreachable):
            high_girth_greedy(6, 8, target_edges=36)

    def test_saturation_without_target_is_silent(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            high_girth_greedy(6, 8)

    def test_target_stops_early(self):
        assert high_girth_greedy(10, 6, target_edges=7, seed=2).m == 7

    @given(st.integers(1, 9), st.sampled_from([4, 6, 8, 10]), st.integers(0, 100))
    def test_girth_property(self, k, ell, seed):
        g = high_girth_greedy(k, ell, seed=seed)
        assert g.n == 2 * k and girth(g) >= ell
        # saturation: every missing cross edge would close a short cycle
        D = floyd_warshall(Graph(g.n, [(a, b, 1) for a, b, _ in g.edges()]))
        for a in range(k):
            for b in range(k, 2 * k):
                if not g.has_edge(a, b):
                    assert D[a][b] + 1 < ell


class TestSerialization:
    def test_unweighted_round_trip(self):
        inst = gen_unweighted(3, 2, seed=4)
        back = GammaInstance.from_json(inst.to_json())
        assert back.to_json() == inst.to_json()
        assert back.graph == inst.graph and back.X == inst.X and back.kind is Kind.UNWEIGHTED

    def test_weighted_round_trip(self):
        inst = gen_weighted(bipartite_double_cover(petersen()), 3, make_preset("stateful", 6, 0.1, 3), seed=1)
        back = GammaInstance.from_json(inst.to_json())
        assert back.to_json() == inst.to_json()
        assert back.weights == inst.weights and back.sides == inst.sides
        assert verify_weighted(back).passed

    def test_json_fields(self):
        d = json.loads(gen_unweighted(2, 1, X="1001").to_json())
        assert d["X"] == "1001" and d["kind"] == "unweighted"
        assert {"sources", "transits", "targets", "v", "v_prime"} <= set(d["roles"])
