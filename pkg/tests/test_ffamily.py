import pytest

from fulkerson_lab.budget import Budget
from fulkerson_lab.generators import (
    DotProductSpec,
    flower_snark,
    goldberg,
    k4,
    petersen,
    ten_vertex_c5_example,
    ten_vertex_c5_names,
)
from fulkerson_lab.graph_core import (
    CubicGraph,
    GraphError,
    Matching,
    cyclic_edge_connectivity_at_least,
    is_bridgeless,
)
from fulkerson_lab.matchcolor import (
    PerfectMatching,
    enumerate_perfect_matchings,
    three_edge_coloring,
    two_factor_cycles,
)
from fulkerson_lab.fulkerson import is_proper, verify_covering
from fulkerson_lab.ffamily import (
    C5StructureResult,
    DotStep,
    FFamily,
    TransportError,
    covering_from_c5_structure,
    covering_from_ffamily,
    derive_n,
    dot_preserve_type1,
    dot_preserve_type2,
    enumerate_ffamilies,
    find_ffamily,
    iterate_dot_sequence,
    petersen_expansion,
    verify_ffamily,
)


def ten_vertex_family():
    g = ten_vertex_c5_example()
    names = ten_vertex_c5_names()

    def eid(a, b):
        edges = g.edges_between(names[a], names[b])
        assert len(edges) == 1
        return edges[0]

    m = PerfectMatching(g, [eid(*p) for p in
                            (("a", "2"), ("b", "4"), ("c", "3"), ("d", "5"), ("e", "1"))])
    members = [Matching(g, [eid(*p)])
               for p in (("a", "2"), ("b", "4"), ("c", "3"), ("d", "5"))]
    n = derive_n(g, m, members)
    return g, FFamily(m, *members, n), eid


class TestVerifyFFamily:
    def test_ten_vertex_witness_verifies(self):
        g, fam, _ = ten_vertex_family()
        report = verify_ffamily(g, fam)
        assert report.ok, report.diagnostics

    def test_searched_petersen_family_verifies(self):
        g = petersen()
        res = find_ffamily(g)
        assert res.found
        assert verify_ffamily(g, res.value).ok

    def test_all_empty_members_fail_on_petersen(self):
        g = petersen()
        m = enumerate_perfect_matchings(g)[0]
        empty = [Matching(g, []) for _ in range(4)]
        fam = FFamily(m, *empty, Matching(g, []))
        report = verify_ffamily(g, fam)
        assert not report.ok
        assert report.diagnostics

    def test_rejects_member_outside_matching(self):
        g = petersen()
        m = enumerate_perfect_matchings(g)[0]
        outside = next(e for e in g.edge_ids() if e not in m.members)
        with pytest.raises(GraphError):
            FFamily(m, Matching(g, [outside]), Matching(g, []), Matching(g, []),
                    Matching(g, []), Matching(g, []))

    def test_rejects_overlapping_members(self):
        g, fam, eid = ten_vertex_family()
        with pytest.raises(GraphError):
            FFamily(fam.m, fam.a, fam.a, fam.c, fam.d, fam.n_edges)


class TestDeriveN:
    def test_ten_vertex_hand_values(self):
        g, fam, eid = ten_vertex_family()
        expected = {eid("a", "b"), eid("c", "d"), eid("2", "3"), eid("4", "5")}
        assert fam.n_edges.members == expected

    def test_petersen_family_has_two_edges_per_pentagon(self):
        g = petersen()
        fam = find_ffamily(g).value
        cycles = two_factor_cycles(g, fam.m)
        for cyc in cycles:
            assert len(fam.n_edges.members & set(cyc.edges)) == 2
        assert len(fam.n_edges) == 4

    def test_violating_families_raise(self):
        g = petersen()
        m = enumerate_perfect_matchings(g)[0]
        members = [Matching(g, []) for _ in range(4)]
        with pytest.raises(GraphError):
            derive_n(g, m, members)  # odd cycles unmet

    def test_non_adjacent_determined_vertices_give_none(self):
        # on a C6 2-factor, pick two members with interleaved single...
        # build it directly: K4 has a C4 2-factor; 2+2 pattern with opposite
        # vertices has no adjacent pairing
        g = k4()
        m = enumerate_perfect_matchings(g)[0]
        e1, e2 = sorted(m.members)
        members = [Matching(g, [e1]), Matching(g, [e2]), Matching(g, []), Matching(g, [])]
        # the two chords determine all four C4 vertices; pairings exist here,
        # so instead check the documented None path via a crafted position set
        from fulkerson_lab.ffamily import _pairing_candidates
        cycles = two_factor_cycles(g, m)
        # positions 0 and 2 on a 4-cycle twice: no two adjacent pairs
        assert _pairing_candidates(cycles.cycles[0], [0, 0, 2, 2]) == []


class TestCoveringFromFFamily:
    def test_ten_vertex_proper_covering(self):
        g, fam, _ = ten_vertex_family()
        covering = covering_from_ffamily(g, fam)
        assert verify_covering(g, covering).ok
        assert is_proper(covering)

    def test_petersen_covering_is_the_six_matchings(self):
        g = petersen()
        fam = find_ffamily(g).value
        covering = covering_from_ffamily(g, fam)
        assert {m.members for m in covering.matchings} == \
            {m.members for m in enumerate_perfect_matchings(g)}

    def test_first_member_of_covering_is_m(self):
        g, fam, _ = ten_vertex_family()
        covering = covering_from_ffamily(g, fam)
        assert covering.matchings[0].members == fam.m.members

    def test_rejects_invalid_family(self):
        g = petersen()
        m = enumerate_perfect_matchings(g)[0]
        empty = [Matching(g, []) for _ in range(4)]
        fam = FFamily(m, *empty, Matching(g, []))
        with pytest.raises(GraphError):
            covering_from_ffamily(g, fam)

    @pytest.mark.parametrize("k", [5, 7])
    def test_flower_families_assemble(self, k):
        g = flower_snark(k)
        fam = find_ffamily(g).value
        covering = covering_from_ffamily(g, fam)
        assert verify_covering(g, covering).ok
        assert is_proper(covering)


class TestFindFFamily:
    def test_petersen_found(self):
        assert find_ffamily(petersen()).found

    def test_k4_definitely_absent(self):
        res = find_ffamily(k4())
        assert not res.found
        assert res.definitely_absent

    def test_members_all_nonempty(self):
        fam = find_ffamily(petersen()).value
        assert all(len(mem) >= 1 for mem in fam.members)

    def test_fixed_matching_variant(self):
        g = petersen()
        m = enumerate_perfect_matchings(g)[0]
        res = find_ffamily(g, m=m)
        assert res.found
        assert res.value.m.members == m.members

    def test_fixed_matching_without_family_is_absent(self):
        g = k4()
        m = enumerate_perfect_matchings(g)[0]
        res = find_ffamily(g, m=m)
        assert res.definitely_absent

    def test_budget_exhaustion_reports_unknown(self):
        res = find_ffamily(flower_snark(5), budget=Budget(limit=3))
        assert res.unknown

    def test_enumerate_families_petersen(self):
        res = enumerate_ffamilies(petersen())
        assert res.complete
        for fam in res.value[:3]:
            assert verify_ffamily(petersen(), fam).ok
        # members are four of the matching's five edges, so exactly five
        # families per matching, uniformly across matchings
        from collections import Counter

        per_matching = Counter(tuple(sorted(f.m.members)) for f in res.value)
        assert sorted(per_matching.values()) == [5] * 6


class TestDotTransports:
    def _petersen_type1_parts(self):
        g1 = petersen()
        m1 = enumerate_perfect_matchings(g1)[0]
        cycles1 = two_factor_cycles(g1, m1)
        g2 = petersen()
        fam2 = find_ffamily(g2).value
        member_edges = {e for mem in fam2.members for e in mem}
        xy = next(e for e in sorted(fam2.m.members) if e not in member_edges)
        spec = DotProductSpec(e1=min(cycles1.cycles[0].edges),
                              e2=min(cycles1.cycles[1].edges), e3=xy)
        return g1, m1, g2, fam2, xy, spec

    def test_type1_petersen_petersen(self):
        g1, m1, g2, fam2, xy, spec = self._petersen_type1_parts()
        result = dot_preserve_type1(g1, m1, g2, fam2, xy, spec)
        assert result.graph.num_vertices == 18
        assert verify_ffamily(result.graph, result.family).ok
        covering = covering_from_ffamily(result.graph, result.family)
        assert verify_covering(result.graph, covering).ok

    def test_type1_rejects_xy_in_member(self):
        g1, m1, g2, fam2, xy, spec = self._petersen_type1_parts()
        bad = next(iter(fam2.a.members))
        with pytest.raises(TransportError):
            dot_preserve_type1(g1, m1, g2, fam2, bad,
                               DotProductSpec(e1=spec.e1, e2=spec.e2, e3=bad))

    def test_type1_rejects_wrong_cycle_count(self):
        # K3,3 admits matchings with a single 6-cycle complement
        from fulkerson_lab.generators import k33
        g1 = k33()
        m1 = enumerate_perfect_matchings(g1)[0]
        g2 = petersen()
        fam2 = find_ffamily(g2).value
        member_edges = {e for mem in fam2.members for e in mem}
        xy = next(e for e in sorted(fam2.m.members) if e not in member_edges)
        with pytest.raises(TransportError):
            dot_preserve_type1(g1, m1, g2, fam2, xy, DotProductSpec(0, 2, xy))

    def test_type1_rejects_e1_off_the_cycles(self):
        g1, m1, g2, fam2, xy, spec = self._petersen_type1_parts()
        e_in_m = min(m1.members)
        bad_spec = DotProductSpec(e1=e_in_m, e2=spec.e2, e3=xy)
        with pytest.raises(TransportError):
            dot_preserve_type1(g1, m1, g2, fam2, xy, bad_spec)

    def _type2_parts(self):
        g1 = petersen()
        fam1 = find_ffamily(g1).value
        g2 = petersen()
        m2 = enumerate_perfect_matchings(g2)[0]
        cycles2 = two_factor_cycles(g2, m2)
        first = set(cycles2.cycles[0].vertices)
        e3 = next(e for e in sorted(m2.members)
                  if len(set(g2.endpoints(e)) & first) == 1)
        return g1, fam1, g2, m2, e3

    def test_type2_petersen_petersen(self):
        g1, fam1, g2, m2, e3 = self._type2_parts()
        forbidden = fam1.m.members | fam1.n_edges.members
        candidates = [e for e in sorted(g1.edge_ids()) if e not in forbidden]
        done = False
        for i, xy in enumerate(candidates):
            for zt in candidates[i + 1:]:
                if set(g1.endpoints(xy)) & set(g1.endpoints(zt)):
                    continue
                result = dot_preserve_type2(
                    g1, fam1, xy, zt, g2, m2, e3,
                    DotProductSpec(e1=xy, e2=zt, e3=e3))
                done = True
                break
            if done:
                break
        assert done
        assert result.graph.num_vertices == 18
        assert verify_ffamily(result.graph, result.family).ok

    def test_type2_rejects_xy_in_n(self):
        g1, fam1, g2, m2, e3 = self._type2_parts()
        bad = min(fam1.n_edges.members)
        other = next(e for e in sorted(g1.edge_ids())
                     if e not in fam1.m.members and e not in fam1.n_edges.members
                     and not set(g1.endpoints(e)) & set(g1.endpoints(bad)))
        with pytest.raises(TransportError):
            dot_preserve_type2(g1, fam1, bad, other, g2, m2, e3,
                               DotProductSpec(e1=bad, e2=other, e3=e3))

    def test_type2_rejects_e3_outside_m2(self):
        g1, fam1, g2, m2, e3 = self._type2_parts()
        outside = next(e for e in sorted(g2.edge_ids()) if e not in m2.members)
        forbidden = fam1.m.members | fam1.n_edges.members
        xy, zt = [e for e in sorted(g1.edge_ids()) if e not in forbidden][:2]
        with pytest.raises(TransportError):
            dot_preserve_type2(g1, fam1, xy, zt, g2, m2, outside,
                               DotProductSpec(e1=xy, e2=zt, e3=outside))


class TestIteratePipeline:
    def test_empty_pipeline_is_the_base(self):
        result = iterate_dot_sequence(petersen(), [])
        assert result.graph == petersen()
        assert verify_covering(result.graph, result.covering).ok

    def test_one_step_18_vertices(self):
        result = iterate_dot_sequence(petersen(), [DotStep("type1", petersen())])
        assert result.graph.num_vertices == 18
        assert verify_ffamily(result.graph, result.family).ok
        assert verify_covering(result.graph, result.covering).ok

    def test_two_steps_26_vertices(self):
        result = iterate_dot_sequence(
            petersen(), [DotStep("type1", petersen()), DotStep("type2", petersen())])
        assert result.graph.num_vertices == 26
        assert verify_covering(result.graph, result.covering).ok

    def test_outputs_stay_snarks(self):
        result = iterate_dot_sequence(petersen(), [DotStep("type1", petersen())])
        g = result.graph
        assert is_bridgeless(g)
        assert three_edge_coloring(g) is None
        assert cyclic_edge_connectivity_at_least(g, 4)

    def test_step_failures_name_the_step(self):
        with pytest.raises(TransportError, match="step 1"):
            iterate_dot_sequence(petersen(), [DotStep("type1", k4())])

    def test_unknown_kind_rejected(self):
        with pytest.raises(GraphError):
            iterate_dot_sequence(petersen(), [DotStep("type9", petersen())])


class TestC5StructurePipeline:
    def test_petersen(self):
        result = covering_from_c5_structure(petersen())
        assert result.found
        assert verify_covering(petersen(), result.covering).ok
        # Petersen's whole covering space is its six matchings
        assert {m.members for m in result.covering.matchings} == \
            {m.members for m in enumerate_perfect_matchings(petersen())}

    def test_ten_vertex(self):
        g = ten_vertex_c5_example()
        result = covering_from_c5_structure(g)
        assert result.found
        assert verify_covering(g, result.covering).ok

    def test_k4_has_no_c5_factor(self):
        result = covering_from_c5_structure(k4())
        assert not result.found
        assert "no 2-factor" in result.reason

    def test_flower_snark_j5_reports_reason(self):
        # J5 has 20 vertices but no chordless-C5 2-factor
        result = covering_from_c5_structure(flower_snark(5))
        assert isinstance(result, C5StructureResult)
        if not result.found:
            assert result.reason


class TestPetersenExpansion:
    def test_build_and_certify(self):
        exp = petersen_expansion()
        g = exp.graph
        assert g.num_vertices == 50
        assert g.num_edges == 75
        assert is_bridgeless(g)
        assert sorted(len(c) for c in exp.cycles) == [5] * 10
        assert three_edge_coloring(g) is None

    def test_two_factor_is_chordless(self):
        from fulkerson_lab.matchcolor import _chordless

        exp = petersen_expansion()
        assert all(_chordless(exp.graph, c) for c in exp.cycles)

    def test_contracted_graph_is_5_regular_and_bridgeless(self):
        from fulkerson_lab.matchcolor import shrink_to_gstar

        exp = petersen_expansion()
        shrunk = shrink_to_gstar(exp.graph, exp.matching, exp.cycles)
        assert shrunk.graph.num_vertices == 10
        assert all(shrunk.graph.degree(v) == 5 for v in shrunk.graph.vertices())
        assert is_bridgeless(shrunk.graph)


class TestCompositesStayClassTwo:
    def test_class_two_preserved_up_to_30_vertices(self):
        composites = [
            iterate_dot_sequence(petersen(), [DotStep("type1", petersen())]).graph,
            iterate_dot_sequence(petersen(), [DotStep("type1", petersen()),
                                              DotStep("type2", petersen())]).graph,
            iterate_dot_sequence(petersen(), [DotStep("type1", flower_snark(5))]).graph,
        ]
        assert [g.num_vertices for g in composites] == [18, 26, 28]
        for g in composites:
            assert three_edge_coloring(g) is None
            assert is_bridgeless(g)


def pentagons_and_hexagon(chords=True):
    """Two pentagons (0-4, 5-9) and a hexagon (10-15) wired by a matching.

    With chords=True the hexagon carries the matching chords 11-14 and
    12-15; otherwise the edges 10-11 and 12-13 are doubled instead and the
    pentagon tails attach at 14 and 15.
    """
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 1) % 5) for i in range(5)]
    edges += [(10 + i, 10 + (i + 1) % 6) for i in range(6)]
    edges += [(0, 5), (1, 6), (2, 7), (3, 8)]
    if chords:
        edges += [(4, 10), (9, 13), (11, 14), (12, 15)]
    else:
        edges += [(4, 14), (9, 15), (10, 11), (12, 13)]
    return CubicGraph(16, edges)


class TestEvenCyclePatterns:
    """Families that meet an even cycle: untouched, 2+2 and 4+0 shapes."""

    @staticmethod
    def _edge(g, u, v, idx=0):
        return g.edges_between(u, v)[idx]

    def _chorded(self):
        g = pentagons_and_hexagon(chords=True)
        e = lambda u, v: self._edge(g, u, v)
        m = PerfectMatching(g, [e(0, 5), e(1, 6), e(2, 7), e(3, 8),
                                e(4, 10), e(9, 13), e(11, 14), e(12, 15)])
        return g, e, m

    def _family_case(self, g, m, member_edge_sets):
        members = [Matching(g, edges) for edges in member_edge_sets]
        n = derive_n(g, m, members)
        assert n is not None
        return FFamily(m, *members, n)

    def test_untouched_even_cycle(self):
        g, e, m = self._chorded()
        fam = self._family_case(g, m, [[e(0, 5)], [e(1, 6)], [e(2, 7)], [e(3, 8)]])
        assert verify_ffamily(g, fam).ok
        covering = covering_from_ffamily(g, fam)
        assert verify_covering(g, covering).ok and is_proper(covering)

    def test_two_plus_two_pattern(self):
        g, e, m = self._chorded()
        fam = self._family_case(g, m, [[e(0, 5)], [e(1, 6)],
                                       [e(2, 7), e(12, 15)],
                                       [e(3, 8), e(11, 14)]])
        from fulkerson_lab.ffamily import _member_positions

        cycles = two_factor_cycles(g, fam.m)
        positions = _member_positions(g, cycles, fam.members)
        even = next(i for i, c in enumerate(cycles) if not c.is_odd)
        assert sorted(len(p) for p in positions[even]) == [0, 0, 2, 2]
        assert verify_ffamily(g, fam).ok
        covering = covering_from_ffamily(g, fam)
        assert verify_covering(g, covering).ok and is_proper(covering)

    def test_four_from_one_member_pattern(self):
        g = pentagons_and_hexagon(chords=False)
        e = lambda u, v, i=0: self._edge(g, u, v, i)
        m = PerfectMatching(g, [e(0, 5), e(1, 6), e(2, 7), e(3, 8),
                                e(4, 14), e(9, 15), e(10, 11, 1), e(12, 13, 1)])
        fam = self._family_case(g, m, [[e(0, 5)], [e(1, 6)], [e(2, 7)],
                                       [e(3, 8), e(10, 11, 1), e(12, 13, 1)]])
        from fulkerson_lab.ffamily import _member_positions

        cycles = two_factor_cycles(g, fam.m)
        positions = _member_positions(g, cycles, fam.members)
        even = next(i for i, c in enumerate(cycles) if not c.is_odd)
        assert sorted(len(p) for p in positions[even]) == [0, 0, 0, 4]
        assert verify_ffamily(g, fam).ok
        covering = covering_from_ffamily(g, fam)
        assert verify_covering(g, covering).ok and is_proper(covering)

    def test_two_endpoints_only_violate_the_even_condition(self):
        g, e, m = self._chorded()
        members = [Matching(g, [e(0, 5)]), Matching(g, [e(1, 6)]),
                   Matching(g, [e(2, 7), e(11, 14)]), Matching(g, [e(3, 8)])]
        with pytest.raises(GraphError):
            derive_n(g, m, members)

    def test_unbalanced_four_pattern_fails_verification(self):
        # both hexagon chords in one member: a valid 4+0 incidence shape,
        # but the chord endpoints cut the hexagon into even arcs
        g, e, m = self._chorded()
        members = [Matching(g, [e(0, 5)]), Matching(g, [e(1, 6)]),
                   Matching(g, [e(2, 7), e(11, 14), e(12, 15)]),
                   Matching(g, [e(3, 8)])]
        n = derive_n(g, m, members)
        fam = FFamily(m, *[Matching(g, mm.members) for mm in members], n)
        report = verify_ffamily(g, fam)
        assert not report.ok
        assert any("balanced" in d for d in report.diagnostics)


class TestGoldbergFamilies:
    def test_goldberg3_has_no_ffamily(self):
        # every 2-factor of the block graph contains a triangle, which the
        # odd-cycle condition cannot satisfy
        res = find_ffamily(goldberg(3))
        assert not res.found
        assert res.definitely_absent
