import itertools
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from grtbv.graphs import EDGE, TADPOLE, UNIT, Graph, canonicalize, complete_graph
from grtbv.operad import GraphVector, bracket, compose, insertions, prelie, symmetrize, vector_sum

from strategies import graphs


def v(g, c=1):
    return GraphVector.from_graph(g, c)


def test_edge_into_edge_labelled_summands():
    got = sorted(h.edges for h in insertions(EDGE, 1, EDGE))
    # the two 3-vertex paths; edge order E(g1) then E(g2)
    assert got == [((1, 3), (1, 2)), ((2, 3), (1, 2))]


def test_edge_into_edge_is_a_zero_class():
    assert not compose(EDGE, 1, EDGE)


def test_unit_is_a_two_sided_identity():
    for g in [EDGE, complete_graph(4), Graph(3, ((1, 2), (1, 3)))]:
        cg, s = canonicalize(g)
        if cg.zero:
            continue
        assert compose(UNIT, 1, cg) == v(cg)
        for i in range(1, cg.n + 1):
            assert compose(cg, i, UNIT) == v(cg)


def test_generator_relations():
    e, t = v(EDGE), v(TADPOLE)
    assert not bracket(e, e)
    assert not bracket(t, t)
    assert not bracket(t, e)


def test_vector_arithmetic():
    a = v(EDGE, Fraction(1, 2))
    assert a + a == v(EDGE)
    assert not (a - a)
    assert 4 * a == v(EDGE, 2)
    assert -a == v(EDGE, Fraction(-1, 2))
    assert vector_sum([a, a, a]) == v(EDGE, Fraction(3, 2))
    assert a.degree() == 1 and GraphVector().degree() is None


def test_storing_a_graph_uses_its_orientation_sign():
    g = complete_graph(4)
    cg, s = canonicalize(g.swap_edges(0, 1))
    assert v(g.swap_edges(0, 1)) == (-1 if canonicalize(g)[1] == 1 else 1) * v(g)
    assert v(g.swap_edges(0, 1)).coefficient(cg) == s


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=4, max_l=5), graphs(max_n=3, max_l=4), st.data())
def test_compose_matches_summed_insertions(a, b, data):
    i = data.draw(st.integers(1, a.n))
    expected = GraphVector()
    for h in insertions(a, i, b):
        expected.add_term(h, 1)
    assert compose(a, i, b) == expected


def _labelled_bracket_oracle(a: Graph, b: Graph) -> GraphVector:
    """Bracket of the symmetrised labelled elements, computed fully on labels."""
    out = GraphVector()
    sign = -1 if ((2 * (a.n - 1) - a.l) * (2 * (b.n - 1) - b.l)) % 2 else 1
    scale = Fraction(1, 1)
    for x, y, s in ((a, b, 1), (b, a, -sign)):
        pa = list(itertools.permutations(range(1, x.n + 1)))
        pb = list(itertools.permutations(range(1, y.n + 1)))
        w = scale / (len(pa) * len(pb))
        for p in pa:
            for q in pb:
                xr, yr = x.relabel(p), y.relabel(q)
                for i in range(1, x.n + 1):
                    for h in insertions(xr, i, yr):
                        out.add_term(h, s * w)
    return out


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=3, max_l=3, simple=True), graphs(max_n=3, max_l=3, simple=True))
def test_bracket_matches_labelled_oracle(a, b):
    assert bracket(v(a), v(b)) == _labelled_bracket_oracle(a, b)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=4, max_l=5, simple=True), graphs(max_n=4, max_l=5, simple=True))
def test_bracket_graded_antisymmetry(a, b):
    x, y = v(a), v(b)
    if not x or not y:
        return
    s = -1 if (x.degree() * y.degree()) % 2 else 1
    assert bracket(x, y) == -s * bracket(y, x)


@settings(max_examples=40, deadline=None)
@given(st.lists(graphs(max_n=3, max_l=3, simple=True), min_size=3, max_size=3))
def test_graded_jacobi(gs):
    from grtbv.selftest import jacobi_defect

    x, y, z = (v(g) for g in gs)
    if x and y and z:
        assert not jacobi_defect(x, y, z)


def test_prelie_respects_orientation():
    g = complete_graph(4)
    assert prelie(g.swap_edges(0, 1), EDGE) == -1 * prelie(g, EDGE)


def test_symmetrize():
    assert symmetrize(complete_graph(4)) == v(complete_graph(4))
    assert not symmetrize(complete_graph(5))
