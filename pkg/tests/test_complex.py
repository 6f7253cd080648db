from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from grtbv.complex import (
    HbarGraphVector,
    OffBasisError,
    add_edges_fast,
    apply_op,
    basis,
    block_of,
    cohomology_dims,
    coords_to_vector,
    differential_d,
    differential_delta,
    differential_dhbar,
    format_graph_vector,
    format_hbar_vector,
    matrix_of,
    parse_graph_vectors,
    parse_hbar_vector,
    split_vertices_fast,
    vector_to_coords,
)
from grtbv.graphs import EDGE, TADPOLE, BasisSpec, Graph, complete_graph, wheel_graph
from grtbv.lift import find_degree0_cocycles
from grtbv.operad import GraphVector

from strategies import graphs, trivalent_graphs


def v(g, c=1):
    return GraphVector.from_graph(g, c)


def test_generators_are_closed():
    assert not differential_d(v(EDGE))
    assert not differential_delta(v(TADPOLE))
    assert not differential_d(v(TADPOLE))


def test_tetrahedron_is_closed_under_both_differentials():
    k4 = v(complete_graph(4))
    assert not differential_d(k4)
    assert not differential_delta(k4)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=5, max_l=7, simple=True))
def test_differentials_square_to_zero_and_anticommute(g):
    x = v(g)
    assert not differential_d(differential_d(x))
    assert not differential_delta(differential_delta(x))
    assert not (differential_d(differential_delta(x)) + differential_delta(differential_d(x)))


@settings(max_examples=80, deadline=None)
@given(trivalent_graphs())
def test_vertex_splitting_agrees_with_the_bracket(g):
    assert split_vertices_fast(g) == differential_d(v(g))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=5, max_l=8, simple=True))
def test_edge_addition_agrees_with_the_bracket(g):
    assert add_edges_fast(g) == differential_delta(v(g))


def test_block_bookkeeping():
    assert block_of(0, 3) == (4, 6)
    assert block_of(0, 5) == (6, 10)
    assert block_of(-1, 3) == (3, 5)


@pytest.mark.parametrize("op", ["d", "delta"])
@pytest.mark.parametrize("nl", [(4, 6), (6, 10), (6, 11), (5, 8)])
def test_matrix_columns_are_images_of_basis_vectors(op, nl):
    spec = BasisSpec.gc2(*nl)
    m = matrix_of(op, spec)
    tgt = BasisSpec.gc2(nl[0] + 1, nl[1] + 1) if op == "d" else BasisSpec.gc2(nl[0], nl[1] + 1)
    for j, g in enumerate(basis(spec)):
        col = [m.entries.get((i, j), 0) for i in range(m.rows)]
        assert col == vector_to_coords(apply_op(op, v(g)), tgt)


def test_matrix_rejects_wrong_target():
    with pytest.raises(ValueError):
        matrix_of("d", BasisSpec.gc2(4, 6), BasisSpec.gc2(4, 7))
    with pytest.raises(ValueError):
        matrix_of("laplacian", BasisSpec.gc2(4, 6))


def test_off_basis_vectors_are_rejected():
    with pytest.raises(OffBasisError):
        vector_to_coords(v(EDGE), BasisSpec.gc2(4, 6))


def test_coords_round_trip():
    spec = BasisSpec.gc2(6, 10)
    x = [Fraction(5, 2), Fraction(-1)]
    assert vector_to_coords(coords_to_vector(x, spec), spec) == x


@pytest.mark.parametrize(
    "degree, loop_order, dim",
    [(0, 3, 1), (-1, 3, 0), (-2, 3, 0), (0, 4, 0), (0, 5, 1), (-1, 5, 0), (1, 3, 0)],
)
def test_cohomology_desk_values(degree, loop_order, dim):
    assert cohomology_dims(degree, loop_order)[2] == dim


def test_pentagon_wheel_cocycle():
    (s5,) = find_degree0_cocycles(5)
    w5 = v(wheel_graph(5))
    assert not differential_d(s5)
    assert not differential_delta(s5)
    # normalised on the wheel: the class is W5 plus 5/2 of the other graph
    assert s5.coefficient(next(iter(w5.graphs()))) * w5.coefficient(next(iter(w5.graphs()))) in (1, -1)


def test_hbar_vectors():
    k4 = v(complete_graph(4))
    a = HbarGraphVector({0: k4, 1: v(EDGE), 5: v(EDGE)}, 3)
    assert a.powers() == [0, 1]
    assert a + a == 2 * a
    assert not differential_dhbar(HbarGraphVector({0: k4}, 3))
    assert not differential_dhbar(HbarGraphVector({0: v(EDGE), 1: v(TADPOLE)}, 3))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(graphs(max_n=5, max_l=6, simple=True), st.fractions(max_denominator=9)), max_size=5))
def test_graph_vector_text_round_trip(terms):
    x = GraphVector()
    for g, c in terms:
        x.add_term(g, c)
    (back,) = parse_graph_vectors(format_graph_vector(x)) or [GraphVector()]
    assert back == x


def test_several_vectors_in_one_file():
    text = "1/2 * 2 1 : 1-2\n\n# second\n-3 * 4 6 : 1-2 1-3 1-4 2-3 2-4 3-4\n"
    a, b = parse_graph_vectors(text)
    assert a == v(EDGE, Fraction(1, 2)) and b == v(complete_graph(4), -3)


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.integers(0, 3), graphs(max_n=4, max_l=5, simple=True), max_size=3), st.integers(1, 4))
def test_hbar_vector_text_round_trip(comps, order):
    x = HbarGraphVector({p: v(g) for p, g in comps.items()}, order)
    assert parse_hbar_vector(format_hbar_vector(x)) == x
