from itertools import combinations
from random import Random

import pytest

from conjlab import (
    AtLeast,
    DihedralInf,
    FreeGroup,
    UsageError,
    bc_probe,
    conj_distance,
    conj_neighbors,
    explore_component,
    export_dot,
    get_model,
    parse_word,
)
from conjlab.sampling import random_element


class TestNeighbors:
    def test_h3_ap_neighbors(self, h3):
        Ap = h3.element((1, 0, 0))
        nbrs = dict((g.label(), w) for g, w in conj_neighbors(h3, Ap))
        assert nbrs["Ax"] == h3.element((1, 0, -1))
        assert nbrs["Ax^-1"] == h3.element((1, 0, 1))
        assert nbrs["Ap"] == Ap and nbrs["A1"] == Ap  # loops

    def test_identity_all_loops(self, model):
        e = model.identity()
        assert all(w == e for _, w in conj_neighbors(model, e))

    def test_dinf_chain(self):
        d = DihedralInf()
        nbrs = dict((g.label(), w) for g, w in conj_neighbors(d, d.decode("a")))
        assert nbrs["b"] == d.decode("bab")


class TestExplore:
    def test_central_path_ball(self, h3):
        ball = explore_component(h3, h3.element((1, 0, 0)), radius=3)
        assert ball.vertices == {h3.element((1, 0, k)) for k in range(-3, 4)}
        assert ball.complete and not ball.closed
        for k in range(-3, 4):
            assert ball.dist[h3.element((1, 0, k))] == abs(k)

    def test_identity_component(self, model):
        ball = explore_component(model, model.identity(), radius=4)
        assert ball.vertices == {model.identity()}
        assert ball.closed
        assert all(e.is_loop() for e in ball.edges)

    def test_dsemi_c_component(self):
        m = get_model("dsemi")
        ball = explore_component(m, m.decode("c"), radius=2)
        d1 = {v.encode() for v, d in ball.dist.items() if d == 1}
        assert d1 == {"ab;c", "ba;c"}
        assert {v.encode() for v, d in ball.dist.items() if d == 2} == {
            "abab;c",
            "baba;c",
        }

    def test_dinf_finite_class(self):
        d = DihedralInf()
        ball = explore_component(d, d.decode("ababab"), radius=10)
        assert ball.closed
        assert {v.encode() for v in ball.vertices} == {"ababab", "bababa"}

    def test_edge_symmetry(self, model):
        rng = Random(11)
        base = random_element(model, rng, max_len=3)
        ball = explore_component(model, base, radius=3)
        keys = {(e.src, e.label.gid, e.label.inverse_flag, e.dst) for e in ball.edges}
        for src, gid, inv, dst in keys:
            assert (dst, gid, not inv, src) in keys

    def test_dist_matches_conj_distance(self, model):
        rng = Random(12)
        base = random_element(model, rng, max_len=3)
        ball = explore_component(model, base, radius=3)
        for v, dv in ball.dist.items():
            assert conj_distance(model, base, v, budget=8) == dv

    def test_budget_flagged(self, h3):
        ball = explore_component(h3, h3.element((1, 0, 0)), radius=50, node_budget=5)
        assert not ball.complete

    def test_h3_component_preserves_ab(self, h3):
        rng = Random(13)
        for _ in range(10):
            base = random_element(h3, rng, max_len=4)
            a, b, _ = base.payload
            ball = explore_component(h3, base, radius=3)
            for v in ball.vertices:
                assert v.payload[0] == a and v.payload[1] == b


class TestDistance:
    def test_reflexive(self, model):
        g = random_element(model, Random(14))
        assert conj_distance(model, g, g, budget=4) == 0

    def test_dinf_adjacent(self):
        d = DihedralInf()
        assert conj_distance(d, d.decode("a"), d.decode("bab"), budget=4) == 1

    def test_free_group_stretch(self):
        f2 = FreeGroup(2)
        x = f2.decode("x1")
        # x^3 (y x y^-1) x^-3 is 4 conjugation steps from x
        far = f2.normal_form(parse_word(f2, "x1.x1.x1.x2.x1.x2^-1.x1^-1.x1^-1.x1^-1"))
        assert conj_distance(f2, f2.decode("x2.x1.x2^-1"), x, budget=8) == 1
        assert conj_distance(f2, x, far, budget=8) == 4

    def test_disconnected_sentinel(self, h3):
        # distinct (a, b) coordinates are in different components
        d = conj_distance(h3, h3.element((1, 0, 0)), h3.element((0, 1, 0)), budget=5)
        assert d == AtLeast(5)

    def test_symmetry_and_triangle(self):
        d = DihedralInf()
        ball = explore_component(d, d.decode("a"), radius=5)
        verts = sorted(ball.vertices)
        dist = {
            (u, v): conj_distance(d, u, v, budget=12)
            for u in verts
            for v in verts
        }
        for u, v in combinations(verts, 2):
            assert dist[(u, v)] == dist[(v, u)]
        for u in verts:
            for v in verts:
                for w in verts:
                    assert dist[(u, w)] <= dist[(u, v)] + dist[(v, w)]


class TestBCProbe:
    def test_h3_plateau(self, h3):
        K = [h3.element((1, 0, 0)), h3.element((1, 0, 1))]
        report = bc_probe(h3, K, max_cayley_radius=4, diam_budget=16)
        assert all(d == 1 for _, d in report.shells)
        assert report.verdict == "Plateau(1)"

    def test_singleton_plateau_zero(self, model):
        g = random_element(model, Random(15), max_len=3)
        report = bc_probe(model, [g], max_cayley_radius=3, diam_budget=8)
        assert report.verdict == "Plateau(0)"

    def test_h3semi_growing(self):
        m = get_model("h3semi")
        K = [m.decode("H3(0,1,0)"), m.decode("H3(1,0,0)")]
        report = bc_probe(m, K, max_cayley_radius=4, diam_budget=16)
        assert report.verdict == "Growing"
        vals = [d for _, d in report.shells]
        assert vals == sorted(vals)

    def test_shells_monotone(self):
        d = DihedralInf()
        K = [d.decode("a"), d.decode("bab")]
        report = bc_probe(d, K, max_cayley_radius=5, diam_budget=16)
        vals = [x for _, x in report.shells]
        assert vals == sorted(vals)

    def test_empty_k_rejected(self, h3):
        with pytest.raises(UsageError):
            bc_probe(h3, [], 3, 8)

    def test_json_schema(self, h3):
        report = bc_probe(h3, [h3.element((1, 0, 0))], 2, 8)
        data = report.to_json()
        assert set(data) == {"K", "shells", "verdict"}
        assert data["shells"] == [[0, 0], [1, 0], [2, 0]]


class TestDot:
    def test_single_vertex(self, h3):
        ball = explore_component(h3, h3.identity(), radius=2)
        dot = export_dot(ball, suppress_loops=True)
        assert dot.count("->") == 0
        assert '"H3(0,0,0)";' in dot

    def test_central_path_edges(self, h3):
        ball = explore_component(h3, h3.element((1, 0, 0)), radius=2)
        dot = export_dot(ball, suppress_loops=True)
        # 5 nodes, Ax edges shifting k downward plus their reverses
        assert dot.count(";") == 5 + 8
        assert '"H3(1,0,0)" -> "H3(1,0,-1)" [label="Ax"];' in dot
        assert '"H3(1,0,-1)" -> "H3(1,0,0)" [label="Ax^-1"];' in dot

    def test_deterministic(self):
        m = get_model("dsemi")
        b1 = explore_component(m, m.decode("a"), radius=2)
        b2 = explore_component(m, m.decode("a"), radius=2)
        assert export_dot(b1) == export_dot(b2)

    def test_dsemi_ladder_rungs(self):
        m = get_model("dsemi")
        ball = explore_component(m, m.decode("a"), radius=2)
        dot = export_dot(ball, suppress_loops=True)
        # rungs of the ladder carry the label c
        assert '"a" -> "b" [label="c"];' in dot
