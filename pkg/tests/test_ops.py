import random

import pytest

from fillgraph import families
from fillgraph.core import FatGraph
from fillgraph.ops import (OperationError, connected_sum, join,
                           new_join_boundaries, plumbing)


def torus():
    return families.build(families.TORUS_PAIR)


def g1():
    return families.build(families.G1)


def g2():
    return families.build(families.G2)


class TestJoin:
    def test_theorem_one_step(self):
        # joining the size-2g family with a torus adds a disc and a curve
        for g in (2, 3):
            gam = families.build(families.GAMMA_G, g)
            rep = join(gam, torus(), gam.labels[0], "a")
            assert rep.recomputed.triple == (g, 2, 2 * g + 1)
            ok, _ = rep.result.is_filling_system()
            assert ok

    def test_curve_count_law(self):
        rep = join(g1(), torus(), "f1", "a")
        assert rep.recomputed.standard_cycle_count == 3 + 2 - 1

    def test_two_tori_same_same(self):
        rep = join(torus(), torus(), "a", "a")
        assert rep.case == "SAME/SAME"
        assert rep.recomputed.boundary_count == 2
        assert rep.recomputed.genus == 1

    def test_new_boundaries_longer_than_two(self):
        for x in g1().labels:
            rep = join(g1(), torus(), x, "b")
            for cyc in new_join_boundaries(rep):
                assert len(cyc) > 2

    def test_bigon_only_from_monogon_splices(self):
        # short new boundaries can appear, but only when a spliced dart sat
        # on a monogon face of its input; the sphere circle's two faces are
        # both monogons, so joining onto it produces one
        sphereish = FatGraph.from_vertex_cycles([["a+", "a-", "b+", "b-"]])
        sphere = families.build(families.SPHERE_CIRCLE)

        def monogon_splice(gl, gr, x, y):
            for g, lab in ((gl, x), (gr, y)):
                comp = g.boundary_component_of
                for d in g.darts_of(lab):
                    if len(g.boundary_cycles[comp[d]]) < 2:
                        return True
            return False

        short_seen = False
        for x in sphereish.labels:
            rep = join(sphereish, sphere, x, "a")
            shortest = min(len(c) for c in new_join_boundaries(rep))
            if shortest <= 2:
                short_seen = True
                assert monogon_splice(sphereish, sphere, x, "a")
        assert short_seen

    def test_bad_edge(self):
        with pytest.raises(OperationError, match="zz"):
            join(g1(), torus(), "zz", "a")

    def test_self_value_rejected(self):
        t = torus()
        with pytest.raises(OperationError):
            join(t, t, "a", "a")


class TestConnectedSum:
    def test_triple_growth(self):
        # summing the genus-3 triple with the 4-disc pair graph at the
        # right vertex pair climbs two genus steps at fixed size
        gamma0 = families.build(families.GAMMA0)
        triples = {}
        for w in range(gamma0.num_vertices):
            for u in range(g2().num_vertices):
                try:
                    rep = connected_sum(gamma0, g2(), w, u)
                except OperationError:
                    continue
                triples.setdefault(rep.recomputed.triple, rep)
        rep = triples[(5, 1, 3)]
        ok, _ = rep.result.is_filling_system()
        assert ok
        assert rep.recomputed.standard_cycle_count == 3 + 2 - 2

    def test_branch_audit_all_vertices(self):
        # every 4-valent loop-free vertex choice verifies exactly
        left = g1()
        lw = next(w for w in range(3) if not left.loops_at(w))
        for u in range(6):
            rep = connected_sum(left, g2(), lw, u)
            assert rep.predicted_b == rep.recomputed.boundary_count
            assert rep.predicted_g == rep.recomputed.genus
            assert rep.chi["hypothesis"]

    def test_loop_vertex_rejected(self):
        a, b = g1(), g1()
        looped = next(v for v in range(3) if a.loops_at(v))
        clean = next(v for v in range(3) if not a.loops_at(v))
        with pytest.raises(OperationError, match="loop"):
            connected_sum(a, b, looped, clean)
        with pytest.raises(OperationError, match="loop"):
            connected_sum(a, b, clean, looped)

    def test_non_four_valent_rejected(self):
        sphere = families.build(families.SPHERE_CIRCLE)
        with pytest.raises(OperationError, match="degree"):
            connected_sum(sphere, g2(), 0, 0)

    def test_disconnecting_sum_rejected(self):
        # dumbbell: the center is a cut vertex; strands 1,2 hold one lobe
        # and strands 3,4 the other, so the crosswise splice of two
        # dumbbells pairs the four lobes into two separate components
        dumbbell = FatGraph.from_vertex_cycles([
            ["e1+", "e2+", "e3+", "e4+"],
            ["e1-", "e2-", "a+", "a-"],
            ["e3-", "e4-", "b+", "b-"],
        ])
        assert dumbbell.is_connected
        other = dumbbell.relabeled({n: n + "'" for n in dumbbell.labels})
        with pytest.raises(OperationError, match="disconnect"):
            connected_sum(dumbbell, other, 0, 0)


class TestPlumbing:
    def test_genus_step(self):
        quad = families.build(families.QUADRUPLE_F3)
        rep = plumbing(quad, torus(), "f1", "a")
        assert rep.recomputed.triple == (4, 1, 6)
        ok, _ = rep.result.is_filling_system()
        assert ok

    def test_two_tori(self):
        rep = plumbing(torus(), torus(), "a", "b")
        sig = rep.recomputed
        assert (sig.vertex_count, sig.edge_count) == (3, 6)
        assert sig.triple == (2, 1, 4)

    def test_two_disc_pair_with_sphere_circle(self):
        gam22 = families.build(families.GAMMA_2_B, 2)
        comp = gam22.boundary_component_of
        x = next(nm for k, nm in enumerate(gam22.labels)
                 if comp[2 * k] != comp[2 * k + 1])
        sphere = families.build(families.SPHERE_CIRCLE)
        rep = plumbing(gam22, sphere, x, "a")
        assert rep.case == "ALL-DIFFERENT"
        assert rep.recomputed.boundary_count == 2 + 2 - 3

    def test_bad_edge(self):
        with pytest.raises(OperationError):
            plumbing(torus(), torus(), "nope", "a")

    def test_curves_pass_straight_through(self):
        # the curve through x persists, running through both halves
        quad = families.build(families.QUADRUPLE_F3)
        rep = plumbing(quad, torus(), "f1", "a")
        x1, x2, y1, y2 = rep.selectors["new_vertex_edges"]
        g = rep.result
        coe = g.curve_of_edge
        assert coe[g.edge_id(x1)] == coe[g.edge_id(x2)]
        assert coe[g.edge_id(y1)] == coe[g.edge_id(y2)]
        assert coe[g.edge_id(x1)] != coe[g.edge_id(y1)]


class TestRelabelingEquivariance:
    def test_ops_commute_with_relabeling(self):
        # relabeling can reverse stored edge directions, which swaps the
        # flip variants; compare the variant sets
        rng = random.Random(3)
        left, right = g1(), families.build(families.GAMMA_2_B, 2)
        rl, rr = left.shuffled(rng), right.shuffled(rng)
        for op in (join, plumbing):
            a = {op(left, right, "f2", "e1", flip).result.canonical_form()
                 for flip in (False, True)}
            b = {op(rl, rr, "f2", "e1", flip).result.canonical_form()
                 for flip in (False, True)}
            assert a == b

    def test_join_flip_variants_can_differ(self):
        a = join(g1(), g1(), "f1", "f1", flip=False).result
        b = join(g1(), g1(), "f1", "f1", flip=True).result
        assert a.signature() == b.signature()

    def test_consum_commutes_with_relabeling(self):
        # dart relabeling permutes vertex indices and rotation alignments,
        # so compare the sets of reachable isomorphism classes over all
        # (w, u, align) choices
        rng = random.Random(5)
        left, right = families.build(families.GAMMA0), g2()
        rl, rr = left.shuffled(rng), right.shuffled(rng)

        def reachable(a, b):
            out = set()
            for w in range(a.num_vertices):
                for u in range(b.num_vertices):
                    for align in range(4):
                        try:
                            rep = connected_sum(a, b, w, u, align)
                        except OperationError:
                            continue
                        out.add(rep.result.canonical_form())
            return out

        assert reachable(left, right) == reachable(rl, rr)
