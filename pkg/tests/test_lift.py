import pytest

from grtbv.complex import HbarGraphVector, differential_d, differential_delta, differential_dhbar
from grtbv.graphs import EDGE, BasisSpec, complete_graph, parse_graph
from grtbv.lift import NotACocycleError, find_degree0_cocycles, lift
from grtbv.operad import GraphVector

LOOPED = BasisSpec(1, 0, allow_loops=True)


def v(g, c=1):
    return GraphVector.from_graph(g, c)


def test_tetrahedron_lifts_at_order_zero():
    k4 = v(complete_graph(4))
    lk = lift(k4, 3)
    assert lk == HbarGraphVector({0: k4}, 3)
    assert not differential_dhbar(lk)


def test_cocycle_spaces():
    assert len(find_degree0_cocycles(3)) == 1
    assert find_degree0_cocycles(4) == []
    (s5,) = find_degree0_cocycles(5)
    assert len(s5) == 2


def test_pentagon_wheel_lift_is_certified():
    (s5,) = find_degree0_cocycles(5)
    ls = lift(s5, 3)
    assert not differential_dhbar(ls)
    assert differential_d(ls[1]) == -1 * differential_delta(ls[0])
    assert ls.powers() == [0]  # Delta s5 = 0, so the series stops at order 0


def test_lift_solves_a_nontrivial_correction():
    # an exact degree-0 cocycle with Delta != 0 once tadpoles are allowed
    x = parse_graph("3 5 : 1-1 1-3 2-2 2-3 3-3")
    g0 = differential_d(v(x))
    assert g0 and differential_delta(g0)
    lg = lift(g0, 3, LOOPED)
    assert lg.powers() == [0, 1]
    assert differential_d(lg[1]) == -1 * differential_delta(lg[0])
    assert not differential_dhbar(lg)


def test_lift_preconditions():
    with pytest.raises(NotACocycleError):
        lift(v(EDGE), 2)  # degree 1
    with pytest.raises(NotACocycleError):
        lift(v(parse_graph("3 4 : 1-1 1-2 2-3 3-3")), 2, LOOPED)  # degree 0 but not d-closed
    with pytest.raises(ValueError):
        lift(v(complete_graph(4)), 0)
    assert not lift(GraphVector(), 2)
