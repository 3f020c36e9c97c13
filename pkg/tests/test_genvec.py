import pytest

from equisym.errors import CapabilityError, ParseError, ShapeError
from equisym.genvec import (
    GeneratingVector,
    count_vectors,
    enumerate_vectors,
    find_vector,
    is_surface_kernel,
    iter_flat_vectors,
    parse_vector,
    period_orderings,
    vector_array,
)
from equisym.group import build_group, cyclic, dihedral, from_table
from equisym.signature import parse_signature
from oracles import naive_vectors, pooled_vectors


def test_known_vector_is_surface_kernel():
    G = dihedral(5)
    sig = parse_signature("0;2^6")
    assert is_surface_kernel(G, sig, "s,s,s,s,sr,sr")


def test_failure_reasons():
    G = dihedral(5)
    sig = parse_signature("0;2^6")
    assert "generation" in is_surface_kernel(G, sig, "s,s,s,s,s,s").reason
    assert "relation" in is_surface_kernel(G, sig, "s,s,s,s,s,sr").reason
    sig7 = parse_signature("0;2^6,5")
    assert "order" in is_surface_kernel(G, sig7, "s,s,s,s,s,s,r^0").reason


def test_shape_errors():
    G = dihedral(3)
    with pytest.raises(ShapeError):
        parse_vector(G, parse_signature("0;2^6"), "s,s,s")
    with pytest.raises(ParseError):
        parse_vector(G, parse_signature("1;2^4"), "s,s,s,s")
    with pytest.raises(ShapeError):
        GeneratingVector(G, parse_signature("0;2,3"), (), (1, 3), periods=(2, 2))


def test_round_trip_text():
    G = cyclic(6)
    sig = parse_signature("1;2^4")
    v = parse_vector(G, sig, "t,1;t^3,t^3,t^3,t^3")
    assert str(v) == "t,1;t^3,t^3,t^3,t^3"
    assert parse_vector(G, sig, str(v)) == v


def test_no_vector_for_cyclic_with_involutions():
    # C_{2q} is not generated by involutions
    assert find_vector(cyclic(10), parse_signature("0;2^6")) is None
    assert find_vector(dihedral(5), parse_signature("0;2^6")) is not None


def test_non_admissible_pair_gives_nothing():
    assert enumerate_vectors(dihedral(3), parse_signature("0;2,3,7")) == []


@pytest.mark.parametrize("spec,text", [
    ("D:2", "0;2^6"), ("D:3", "0;2^6"), ("D:3", "0;2^6,3"), ("C:4", "1;2^4"),
    ("D:2", "1;2^4"), ("C:6", "1;2^4"), ("D:2", "0;2^7"),
])
def test_enumeration_matches_naive(spec, text):
    G = build_group(spec)
    sig = parse_signature(text)
    ours = iter_flat_vectors(G, sig)
    assert ours == sorted(pooled_vectors(G.table, sig.h, sig.periods))
    if G.order ** (2 * sig.h + sig.l) <= 2_000_000:
        assert ours == naive_vectors(G.table, sig.h, sig.periods)


def test_threads_do_not_change_result():
    G = dihedral(5)
    sig = parse_signature("0;2^6,5")
    assert iter_flat_vectors(G, sig, threads=1) == iter_flat_vectors(G, sig, threads=3)
    assert count_vectors(G, sig, threads=2) == count_vectors(G, sig) == 12500


def test_vector_array_other_arrangement():
    G = dihedral(3)
    sig = parse_signature("0;2^6,3")
    for p in period_orderings(sig):
        arr = vector_array(G, sig, periods=p)
        orders = [[G.element_orders[x] for x in row] for row in arr.tolist()]
        assert all(tuple(o) == p for o in orders)
    assert len(period_orderings(sig)) == 7
    assert period_orderings(parse_signature("2;-")) == [()]


def test_find_vector_budget():
    G = dihedral(40)
    with pytest.raises(CapabilityError):
        find_vector(G, parse_signature("0;2^6"), budget=3)


def test_enumeration_limit():
    with pytest.raises(CapabilityError):
        count_vectors(dihedral(30), parse_signature("0;2^12"))


def test_external_group_vectors():
    V4 = from_table([[a ^ b for b in range(4)] for a in range(4)], name="V4")
    sig = parse_signature("0;2^5")
    assert count_vectors(V4, sig) == len(pooled_vectors(V4.table, 0, sig.periods))
