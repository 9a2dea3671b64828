import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import vector_matroids
from ndetach.catalog import load_fixture, uniform, wheel, whirl
from ndetach.connectivity import (
    NotThreeConnectedError,
    bixby_classify,
    cyclic_3_separations,
    enumerate_k_separations,
    find_cosegments,
    find_fans4,
    find_paddles,
    find_quads,
    find_segments,
    find_triads,
    find_triangles,
    full_closure,
    is_3_connected,
    is_k_separating,
    is_k_separation,
    lam,
    lambda_table,
    local_connectivity,
    vertical_3_separations,
)
from ndetach.matroid import bits, dual, elems

K4 = wheel(3)


def sets(family):
    return sorted(tuple(elems(x)) for x in family)


# [DERIVED] from the oracle's circuit and cocircuit enumeration
def test_k4_triangles_and_triads():
    assert sets(find_triangles(K4)) == [(0, 1, 2), (0, 4, 5), (1, 3, 5), (2, 3, 4)]
    assert sets(find_triads(K4)) == [(0, 1, 5), (0, 2, 4), (1, 2, 3), (3, 4, 5)]
    assert len(find_fans4(K4)) == 12


def test_lambda_values():
    assert lam(K4, bits([0, 1, 2])) == 2
    assert lam(uniform(2, 4), bits([0, 1])) == 2
    assert lam(K4, 0) == 0
    # [DERIVED] local connectivity of two disjoint pairs in U(3,6)
    assert local_connectivity(uniform(3, 6), bits([0, 1]), bits([2, 3])) == 1


def test_separating_vs_separation():
    U = uniform(2, 4)
    assert is_k_separating(U, bits([0]), 2)
    assert not is_k_separation(U, bits([0]), 2)
    assert not is_k_separation(U, bits([0, 1]), 3)
    assert is_k_separation(K4, bits([0, 1, 2]), 3)


@pytest.mark.parametrize(
    "M,expected",
    [
        (uniform(2, 4), True),
        (uniform(1, 3), True),
        (uniform(2, 5), True),
        (wheel(3), True),
        (whirl(4), True),
        (uniform(0, 2), False),
        (uniform(1, 4), False),
    ],
)
def test_three_connected(M, expected):
    ref = oracle.from_masks(M.n, M.bases)
    assert ref.three_connected() == expected
    assert is_3_connected(M) == expected


def test_k4_three_separations_containing_zero():
    seps = enumerate_k_separations(K4, 3)
    with_zero = sorted(tuple(elems(s.side)) for s in seps if s.side & 1 and len(elems(s.side)) == 3)
    assert with_zero == [(0, 1, 2), (0, 1, 5), (0, 2, 4), (0, 4, 5)]


def test_w4_vertical_separations_match_oracle():
    W4 = wheel(4)
    ours = vertical_3_separations(W4)
    ref = oracle.vertical_3_separations(oracle.wheel(4))
    assert len(ours) == len(ref) == 8
    assert {(s.X, s.z, s.Y) for s in ours} == {(oracle.mask(X), z, oracle.mask(Y)) for X, z, Y in ref}
    first = ours[0]
    assert (elems(first.X), first.z, elems(first.Y)) == ((1, 2, 3), 0, (4, 5, 6, 7))


def test_cyclic_is_vertical_in_dual():
    W4 = wheel(4)
    ours = {(s.X, s.z, s.Y) for s in cyclic_3_separations(W4)}
    theirs = {(s.X, s.z, s.Y) for s in vertical_3_separations(dual(W4))}
    assert ours == theirs


def test_full_closure():
    assert full_closure(K4, 1) == 1
    assert full_closure(K4, bits([0, 1])) == K4.ground


def test_v8_quads():
    V8 = load_fixture("V8.mtx")
    assert is_3_connected(V8)
    assert sets(find_quads(V8)) == [(0, 1, 4, 5), (0, 1, 6, 7), (2, 3, 4, 5), (2, 3, 6, 7)]


def test_segments():
    assert sets(find_segments(uniform(2, 5), 4)) == [tuple(range(5))]
    assert find_cosegments(uniform(3, 5), 5) == [bits(range(5))]


@pytest.mark.parametrize("M", [uniform(2, 4), wheel(3)])
def test_no_paddles(M):
    assert find_paddles(M) == []
    assert oracle.paddles(oracle.from_masks(M.n, M.bases)) == set()


def test_paddle_host():
    M = load_fixture("PaddleHost.mtx")
    found = find_paddles(M)
    assert [sorted(elems(p) for p in pad.parts) for pad in found] == [[(0, 1, 2), (3, 4, 5), (6, 7, 8)]]


def test_bixby_records():
    r = bixby_classify(K4, 1)
    assert r.si_contract_3conn and r.co_delete_3conn
    r = bixby_classify(wheel(4), 0)
    assert (r.si_contract_3conn, r.co_delete_3conn) == (False, True)


def test_bixby_requires_three_connected():
    with pytest.raises(NotThreeConnectedError):
        bixby_classify(uniform(1, 4), 0)


@given(vector_matroids(), st.data())
def test_lambda_properties(M, data):
    X = data.draw(st.integers(0, M.ground))
    lt = lambda_table(M)
    assert lt[X] == lt[M.ground ^ X] == lam(dual(M), X)
    ref = oracle.from_masks(M.n, M.bases)
    assert lt[X] == ref.lam(elems(X))


@given(vector_matroids(max_n=6))
def test_three_connectivity_matches_oracle(M):
    assert is_3_connected(M) == oracle.from_masks(M.n, M.bases).three_connected()
