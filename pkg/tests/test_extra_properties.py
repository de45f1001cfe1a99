"""Cross-cutting property checks beyond the per-module suites: randomized
model/oracle agreement, automorphisms that reverse edge orientations, sink
variants, product antisymmetry, and two-coordinate families."""

import random

import pytest

from graphconf import (
    Graph,
    ModelError,
    SummandSpec,
    betti_numbers,
    build_model,
    generation_degree_check,
    homology,
    make_cycle_graph,
    make_path_graph,
    make_star,
    make_spider,
    normalize_loops,
    oracle_betti_numbers,
    permutation_action_map,
    product_cycle,
    realize_family,
    star_cycle,
    wedge_family,
)


def random_connected_graph(rng, n_vertices, extra_edges):
    """Random tree plus a few extra edges (loops possible, then normalized)."""
    edges = []
    for v in range(1, n_vertices):
        edges.append((rng.randrange(v), v))
    for _ in range(extra_edges):
        a = rng.randrange(n_vertices)
        b = rng.randrange(n_vertices)
        edges.append((a, b))
    g = Graph(vertices=tuple(range(n_vertices)), edges=tuple(edges))
    return normalize_loops(g)


class TestRandomizedAgreement:
    def test_random_graphs_agree_with_oracle(self):
        rng = random.Random(42)
        for trial in range(12):
            g = random_connected_graph(rng, rng.randint(2, 5),
                                       rng.randint(0, 2))
            n = rng.randint(1, 2)
            qmax = min(n, 2)
            model = betti_numbers(build_model(g, n), qmax)
            oracle = oracle_betti_numbers(g, n, qmax)
            assert model == oracle, (trial, g.edges, n, model, oracle)

    def test_random_graphs_satisfy_dd_zero(self):
        rng = random.Random(7)
        for _ in range(8):
            g = random_connected_graph(rng, rng.randint(2, 5),
                                       rng.randint(0, 2))
            assert build_model(g, 2).boundary_square_is_zero()


class TestReversedEdgeAutomorphism:
    def test_triangle_reflection(self):
        cx = build_model(make_cycle_graph(3), 2)
        pres = homology(cx, 1)
        # the reflection fixing vertex 0 maps edge (0,1) onto edge (2,0)
        # against its stored orientation
        cm = permutation_action_map(cx, {0: 0, 1: 2, 2: 1})
        assert cm.reversed_edges
        assert cm.commutes_with_boundary()
        mat = cm.homology_matrix(pres)
        assert mat.multiply(mat).to_dense() == [
            [1 if i == j else 0 for j in range(pres.betti)]
            for i in range(pres.betti)]

    def test_square_rotation_preserves_orientation(self):
        cx = build_model(make_cycle_graph(4), 2)
        cm = permutation_action_map(cx, {0: 1, 1: 2, 2: 3, 3: 0})
        assert not cm.reversed_edges
        assert cm.commutes_with_boundary()

    def test_reflection_action_has_unit_determinant_square(self):
        cx = build_model(make_cycle_graph(4), 2)
        pres = homology(cx, 1)
        cm = permutation_action_map(cx, {0: 0, 1: 3, 2: 2, 3: 1})
        assert cm.commutes_with_boundary()
        mat = cm.homology_matrix(pres)
        assert mat.multiply(mat).to_dense() == [
            [1 if i == j else 0 for j in range(pres.betti)]
            for i in range(pres.betti)]


class TestSinkVariants:
    def test_one_sink_interval_is_contractible(self):
        cx = build_model(make_path_graph(1), 2, sinks=(0,))
        assert betti_numbers(cx) == [1, 0, 0]
        assert cx.boundary_square_is_zero()

    def test_one_sink_interval_three_particles(self):
        cx = build_model(make_path_graph(1), 3, sinks=(0,))
        assert betti_numbers(cx)[0] == 1
        assert cx.boundary_square_is_zero()

    def test_all_sinks_star(self):
        g = make_star(3)
        cx = build_model(g, 2, sinks=tuple(g.vertices))
        assert cx.boundary_square_is_zero()
        assert betti_numbers(cx)[0] == 1

    def test_circle_with_one_sink_connected(self):
        cx = build_model(make_cycle_graph(3), 2, sinks=(0,))
        b = betti_numbers(cx)
        assert b[0] == 1
        assert cx.boundary_square_is_zero()

    def test_sinks_never_remove_cells(self):
        g = make_star(3)
        plain = build_model(g, 2)
        sunk = build_model(g, 2, sinks=(0,))
        for q in range(plain.top_dimension + 1):
            assert set(plain.cells[q]) <= set(sunk.cells[q])


class TestProductSigns:
    def test_odd_factors_anticommute(self):
        graph = make_spider(2, 2, 3)
        cx = build_model(graph, 4)
        v, w = graph.essential_vertices()
        ev = tuple(e for e, _ in graph.incident(v))
        ew = tuple(e for e, _ in graph.incident(w))
        a = star_cycle(cx, v, ev, 1, 2, parking={3: 2, 4: 6})
        b = star_cycle(cx, w, ew, 3, 4, parking={1: 4, 2: 5})
        ab = product_cycle(cx, [a, b])
        ba = product_cycle(cx, [b, a])
        assert ba.coeffs == {k: -v for k, v in ab.coeffs.items()}


class TestErrors:
    def test_disconnected_graph_rejected(self):
        g = Graph(vertices=(0, 1, 2, 3), edges=((0, 1), (2, 3)))
        with pytest.raises(ModelError):
            build_model(g, 1)

    def test_sink_outside_graph_rejected(self):
        with pytest.raises(ModelError):
            build_model(make_star(3), 1, sinks=(9,))


@pytest.fixture(scope="module")
def two_leg_family():
    point = Graph(vertices=(0,), edges=(), basepoint=0)
    interval = make_path_graph(1)
    return wedge_family(point, [
        SummandSpec(interval, (0,), (0,)),
        SummandSpec(interval, (0,), (0,)),
    ])


@pytest.fixture(scope="module")
def reports():
    from graphconf import SummandSpec, character_report, homology, wedge_family
    point = Graph(vertices=(0,), edges=(), basepoint=0)
    fam = wedge_family(point, [SummandSpec(make_cycle_graph(3), (0,), (0,))])
    out = []
    for k in (3, 4, 5, 6):
        inst = realize_family(fam, (k,))
        cx = build_model(inst.graph, 2)
        out.append(character_report(cx, homology(cx, 1), inst))
    return fam, out


class TestTriangleWedgeStability:
    """Wedging triangles onto a point: a summand with a loop class, richer
    than the interval family.  Values frozen from exact runs."""

    def test_betti_growth_is_quadratic(self, reports):
        from graphconf import dimension_polynomial_check
        fam, reps = reports
        assert [r.betti for r in reps] == [19, 37, 61, 91]
        fit = dimension_polynomial_check(fam, 2, 1, [3, 4, 5, 6], 2, 1,
                                         betti_values=[r.betti for r in reps])
        assert fit["fits"] and fit["coefficients"] == ["1", "-3", "3"]

    def test_multiplicities_stabilize_from_four(self, reports):
        from graphconf import stability_verdict
        _, reps = reports
        for rep in reps[1:]:
            assert dict(rep.multiplicities) == {
                (): 4, (1,): 6, (1, 1): 3, (2,): 3}
        verdict = stability_verdict(reps[1:])
        assert verdict["stable"]

    def test_unpaddable_row_is_excluded_not_failed(self, reports):
        from graphconf import stability_verdict
        _, reps = reports
        verdict = stability_verdict(reps[:3])   # window 3..5
        assert (2,) in verdict["excluded"]      # (k-2, 2) is no partition at k=3
        assert verdict["stable"]


class TestTwoCoordinateFamilies:
    def test_realization_is_a_star(self, two_leg_family):
        inst = realize_family(two_leg_family, (2, 3))
        assert inst.graph.valence(0) == 5
        labels = {l for _, l in inst.graph.edge_labels}
        assert labels == {(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)}

    def test_componentwise_generation(self, two_leg_family):
        rep = generation_degree_check(two_leg_family, 2, 1, (2, 2), (3, 3),
                                      search_d_min=False)
        assert rep.degree == (2, 2)
        assert rep.generates_over_Z
        assert rep.asserted_bound == 4    # trees in every coordinate

    def test_low_degree_fails_componentwise(self, two_leg_family):
        rep = generation_degree_check(two_leg_family, 2, 1, (1, 1), (3, 3),
                                      search_d_min=False)
        assert not rep.generates_over_Z

    def test_support_count_is_product_of_binomials(self, two_leg_family):
        from math import comb
        from graphconf import support_subgraphs
        inst = realize_family(two_leg_family, (2, 3))
        subs = support_subgraphs(inst, (1, 2))
        assert len(subs) == comb(2, 1) * comb(3, 2)
