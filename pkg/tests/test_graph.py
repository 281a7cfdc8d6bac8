import io

import pytest

from nbu.graph import (GraphError, Multigraph, ParseError, as_circle, bipartite, bouquet,
                       complete_bipartite, complete_graph, connected_components,
                       cycle_graph, cycle_rank, disjoint_union, format_graph, glue,
                       is_bipartite, is_connected, parse_graph, read_graph, subdivide,
                       theta_graph, two_core, write_graph)

from conftest import isomorphic

K4 = complete_graph(4)


class TestParse:
    def test_triangle(self):
        g = parse_graph("0 1\n1 2\n2 0")
        assert (g.n, g.m) == (3, 3)

    def test_self_loop_counts_twice(self):
        g = parse_graph("0 0")
        assert (g.n, g.m) == (1, 1)
        assert g.degrees == [2]

    def test_double_edge(self):
        g = parse_graph("0 1\n0 1")
        assert (g.n, g.m) == (2, 2)
        assert g.degrees == [2, 2]

    def test_comments_blank_lines_and_stream(self):
        g = parse_graph(io.StringIO("# header\n\n5 9\n  9 5  \n"))
        assert g.labels == (5, 9)
        assert g.edges == ((0, 1), (1, 0))

    @pytest.mark.parametrize("text, line", [("0 1\n1\n", 2), ("0 x", 1),
                                             ("0 1\n1 2 3", 2), ("0 -1", 1)])
    def test_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_graph(text)
        assert exc.value.lineno == line

    def test_round_trip(self, tmp_path):
        g = parse_graph("3 7\n7 7\n7 3\n")
        path = tmp_path / "g.nbg"
        write_graph(g, str(path))
        assert path.read_text() == "3 7\n7 7\n7 3\n"
        h = read_graph(str(path))
        assert h.edges == g.edges and h.labels == g.labels
        assert format_graph(h) == format_graph(g)

    def test_bad_edge_reference(self):
        with pytest.raises(GraphError):
            Multigraph(2, ((0, 2),))


class TestTwoCore:
    def test_path_is_empty(self):
        core = two_core(parse_graph("0 1\n1 2"))
        assert core.graph.n == 0 and core.graph.m == 0

    def test_pendant_stripped(self):
        g = parse_graph("0 1\n1 2\n2 0\n2 3")
        core = two_core(g)
        assert isomorphic(core.graph, cycle_graph(3))
        assert sorted(core.edges) == [0, 1, 2]
        assert 3 not in core.nodes

    def test_identity_on_k4(self):
        core = two_core(K4)
        assert core.graph.edges == K4.edges
        assert core.nodes == (0, 1, 2, 3)

    def test_loop_survives(self):
        g = parse_graph("0 0\n0 1")
        assert two_core(g).graph.m == 1


class TestComponents:
    def test_triangle_and_square(self):
        g = disjoint_union(cycle_graph(3), cycle_graph(4))
        sizes = sorted((c.graph.n, c.graph.m) for c in connected_components(g))
        assert sizes == [(3, 3), (4, 4)]

    def test_connected_is_itself(self):
        (c,) = connected_components(K4)
        assert c.graph is K4

    def test_empty(self):
        assert connected_components(Multigraph(0, ())) == []

    def test_isolated_nodes_are_singletons(self):
        g = Multigraph(3, ((0, 1),))
        comps = connected_components(g)
        assert sorted((c.graph.n, c.graph.m) for c in comps) == [(1, 0), (2, 1)]
        assert not is_connected(g)


class TestBipartite:
    def test_examples(self):
        assert bipartite(complete_bipartite(3, 3))
        assert not bipartite(K4)
        assert not bipartite(bouquet(1))
        assert bipartite(parse_graph("0 1\n0 1"))

    @pytest.mark.parametrize("g", [K4, bouquet(1), cycle_graph(7),
                                   theta_graph(1, 2, 2), subdivide(K4, 3).graph])
    def test_witness_is_odd_closed_walk(self, g):
        ok, walk = is_bipartite(g)
        assert not ok
        assert walk[0] == walk[-1]
        assert (len(walk) - 1) % 2 == 1
        adjacent = {(a, b) for a, b in g.edges} | {(b, a) for a, b in g.edges}
        assert all((x, y) in adjacent for x, y in zip(walk, walk[1:]))


def test_cycle_rank():
    assert cycle_rank(K4) == 3
    assert cycle_rank(cycle_graph(9)) == 1
    assert cycle_rank(parse_graph("0 1\n1 2\n1 3")) == 0


def test_as_circle():
    assert as_circle(cycle_graph(7)) == 7
    assert as_circle(parse_graph("0 1\n0 1")) == 2
    assert as_circle(bouquet(1)) == 1
    assert as_circle(K4) is None
    assert as_circle(disjoint_union(cycle_graph(3), cycle_graph(3))) is None


class TestSubdivide:
    def test_k4_by_3(self):
        s = subdivide(K4, 3)
        assert (s.graph.n, s.graph.m) == (16, 18)
        assert s.true_nodes == (0, 1, 2, 3)

    @pytest.mark.parametrize("r", [1, 2, 5])
    def test_loop_becomes_circle(self, r):
        assert as_circle(subdivide(bouquet(1), r).graph) == r

    def test_composition(self):
        g = theta_graph(1, 2, 2)
        twice = subdivide(subdivide(g, 2).graph, 3).graph
        assert isomorphic(twice, subdivide(g, 6).graph)

    def test_identity(self):
        assert subdivide(K4, 1).graph is K4

    def test_invalid(self):
        with pytest.raises(GraphError):
            subdivide(K4, 0)

    def test_fresh_labels(self):
        g = parse_graph("10 20\n20 10")
        labels = subdivide(g, 2).graph.labels
        assert labels[:2] == (10, 20) and min(labels[2:]) > 20


class TestGlue:
    def test_counts(self):
        x = glue(cycle_graph(6), K4, [(0, 0)])
        assert (x.n, x.m) == (9, 12)

    def test_empty_pairing_is_disjoint_union(self):
        x = glue(cycle_graph(6), K4, [])
        assert isomorphic(x, disjoint_union(cycle_graph(6), K4))

    def test_two_pairs(self):
        x = glue(cycle_graph(6), cycle_graph(6), [(0, 0), (3, 3)])
        assert (x.n, x.m) == (10, 12)
        assert sorted(x.degrees)[-2:] == [4, 4]

    @pytest.mark.parametrize("pairs", [[(0, 0), (0, 1)], [(0, 0), (1, 0)],
                                       [(9, 0)], [(0, 9)]])
    def test_bad_pairing(self, pairs):
        with pytest.raises(GraphError):
            glue(cycle_graph(6), K4, pairs)

    def test_min_degree(self):
        with pytest.raises(GraphError):
            glue(parse_graph("0 1"), K4, [(0, 0)])


def test_generators():
    c5 = cycle_graph(5)
    assert (c5.n, c5.m) == (5, 5)
    assert (bouquet(1).n, bouquet(1).m) == (1, 1)
    t = theta_graph(3, 3, 3)
    assert (t.n, t.m) == (8, 9)
    assert complete_bipartite(2, 3).m == 6
    assert complete_graph(5).m == 10
