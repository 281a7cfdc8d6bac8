import numpy as np
import pytest

from nbu.chains import collapse
from nbu.eigenfunctions import (circle_basis, export_basis, lift_through_subdivision,
                                minus_one_basis, plus_one_basis, root_of_unity, unitary_basis,
                                verify_eigenfunction)
from nbu.graph import (GraphError, complete_bipartite, complete_graph, cycle_graph, glue,
                       parse_graph, subdivide, theta_graph)
from nbu.nb_operator import apply_nb, inflow
from nbu.multiplicity import gm

K4 = complete_graph(4)
K33 = complete_bipartite(3, 3)


def assert_eigen(g, basis, lam, count):
    assert len(basis) == count
    for v in basis.functions:
        res, leaky = verify_eigenfunction(g, v, lam)
        assert res <= 1e-9
        assert not leaky
    if count:
        assert np.linalg.matrix_rank(basis.matrix()) == count
        assert basis.pivots_certified()


class TestPlusOne:
    def test_k4(self):
        b = plus_one_basis(K4)
        assert_eigen(K4, b, 1, 3)
        for v in b.functions:
            assert np.allclose(inflow(K4, v), 0)
            assert np.allclose(v[0::2], -v[1::2])

    def test_multigraph(self):
        g = parse_graph("0 0\n0 1\n0 1\n1 1")
        assert_eigen(g, plus_one_basis(g), 1, 3)

    def test_circle_rejected(self):
        with pytest.raises(GraphError):
            plus_one_basis(cycle_graph(4))


class TestMinusOne:
    def test_k33(self):
        b = minus_one_basis(K33)
        assert_eigen(K33, b, -1, 4)
        for v in b.functions:
            assert np.allclose(v[0::2], v[1::2])

    def test_theta_with_odd_cycle(self):
        g = theta_graph(1, 2, 2)
        assert_eigen(g, minus_one_basis(g), -1, 1)

    def test_k4_non_bipartite(self):
        assert_eigen(K4, minus_one_basis(K4), -1, 2)

    def test_four_cycle_pattern(self):
        # alternating signs around a 4-cycle w, x, y, z
        g = theta_graph(2, 2, 2)
        v = np.zeros(2 * g.m)
        for e, s in zip(range(4), (1, -1, -1, 1)):
            v[2 * e] = v[2 * e + 1] = s
        assert np.allclose(apply_nb(g, v), -v)

    def test_circle_rejected(self):
        with pytest.raises(GraphError):
            minus_one_basis(cycle_graph(4))


class TestCircle:
    def test_order_three(self):
        g = cycle_graph(3)
        c = circle_basis(3, 3)
        lam = root_of_unity(3)
        for v in (c.forward, c.backward):
            assert verify_eigenfunction(g, v, lam).residual <= 1e-12
        assert abs(inflow(g, c.combination)[0]) <= 1e-12

    def test_real_alternating(self):
        c = circle_basis(6, 2)
        assert np.allclose(c.forward.imag, 0)
        assert np.allclose(c.forward[0::2], [1, -1, 1, -1, 1, -1])

    def test_requires_divisibility(self):
        with pytest.raises(ValueError):
            circle_basis(5, 3)


class TestLift:
    def test_identity(self):
        b = plus_one_basis(K4)
        assert np.array_equal(lift_through_subdivision(b.functions[0], K4, 1, 1), b.functions[0])

    def test_k4_order_three(self):
        lam = root_of_unity(3)
        h = subdivide(K4, 3).graph
        lifted = [lift_through_subdivision(u, K4, 3, lam) for u in plus_one_basis(K4).functions]
        for v in lifted:
            assert verify_eigenfunction(h, v, lam).residual <= 1e-9
        assert np.linalg.matrix_rank(np.vstack(lifted)) == 3

    def test_theta_order_six(self):
        lam = np.exp(1j * np.pi / 3)
        g = theta_graph(3, 3, 3)
        c = collapse(g, 3).graph
        h = subdivide(c, 3).graph
        for u in minus_one_basis(c).functions:
            v = lift_through_subdivision(u, c, 3, lam)
            assert verify_eigenfunction(h, v, lam).residual <= 1e-9

    def test_rejects_non_eigenfunction(self):
        with pytest.raises(ValueError):
            lift_through_subdivision(np.ones(12), K4, 3, root_of_unity(3))


class TestUnitaryBasis:
    def test_subdivided_k4(self):
        g = subdivide(K4, 3).graph
        assert_eigen(g, unitary_basis(g, 3), root_of_unity(3), 3)
        assert_eigen(g, unitary_basis(g, 6), root_of_unity(6), 2)

    def test_glued(self):
        s = subdivide(K4, 3).graph
        x = glue(s, K4, [(0, 0)])
        b = unitary_basis(x, 3)
        assert_eigen(x, b, root_of_unity(3), 3)
        k4_side = 2 * s.m
        for v in b.functions:
            assert np.abs(v[k4_side:]).max() == 0

    def test_empty(self):
        assert len(unitary_basis(K4, 5)) == 0

    @pytest.mark.parametrize("q", [1, 2, 3, 6])
    def test_circle_components(self, q):
        g = cycle_graph(6)
        assert_eigen(g, unitary_basis(g, q), root_of_unity(q), 2)

    def test_attached_cycle(self):
        # K4 with a 6-cycle hanging at node 0 carries one order-6 function
        g = parse_graph("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 4\n4 5\n5 6\n6 7\n7 8\n8 0")
        b = unitary_basis(g, 6)
        assert_eigen(g, b, root_of_unity(6), gm(g, 6))
        assert len(b) == 1

    def test_dangling_chain_carries_zero(self):
        # theta(3,3,3) plus a length-3 path to a K4: the path is a dangling
        # part of the order-3 component
        g = parse_graph("0 2\n2 3\n3 1\n0 4\n4 5\n5 1\n0 6\n6 7\n7 1\n"
                        "1 8\n8 9\n9 10\n10 11\n10 12\n10 13\n11 12\n11 13\n12 13")
        b = unitary_basis(g, 3)
        assert_eigen(g, b, root_of_unity(3), gm(g, 3))
        for v in b.functions:
            assert np.abs(v[18:]).max() == 0

    @pytest.mark.parametrize("j", [1, 2, 4, 5])
    def test_other_primitive_roots(self, j):
        g = theta_graph(3, 3, 3)
        b = unitary_basis(g, 6, j) if j in (1, 5) else unitary_basis(g, 3, j)
        q = 6 if j in (1, 5) else 3
        assert_eigen(g, b, root_of_unity(q, j), gm(g, q))

    def test_pendant_trees(self):
        # values flow outward into a tree attached to the support
        g = parse_graph("0 0\n0 1\n1 2\n1 3")
        b = unitary_basis(g, 1)
        assert len(b) == 2
        for v in b.functions:
            assert verify_eigenfunction(g, v, 1).residual <= 1e-12


def test_verify_errors_and_random():
    with pytest.raises(ValueError):
        verify_eigenfunction(K4, np.zeros(12), 1)
    v = np.random.default_rng(1).normal(size=12)
    res, leaky = verify_eigenfunction(K4, v, 1)
    assert res > 0.1 and leaky
    assert verify_eigenfunction(K4, v, 3).leaky is None


def test_export():
    g = subdivide(K4, 3).graph
    d = export_basis(unitary_basis(g, 3))
    assert d["q"] == 3 and len(d["functions"]) == 3
    for f in d["functions"]:
        for edge_id, direction, re, im in f["support_edges"]:
            assert 0 <= edge_id < g.m and direction in (0, 1)
            assert re or im
