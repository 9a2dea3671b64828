import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from ndetach.catalog import FIXTURE_FILES, FIXTURE_SETS, load_fixture, uniform, wheel
from ndetach.matroid import bits, dual, elems, relabel
from ndetach.separators import (
    DETECTORS,
    SELF_DUAL_KINDS,
    Kind,
    defining_sets,
    detect_double_quad,
    detect_spike_like,
    detect_vamos_like,
    match_roles,
    scan_all_separators,
    twisted_cube_in,
)

KIND_OF = {
    "spike_like": Kind.SPIKE_LIKE,
    "skew_whiff": Kind.SKEW_WHIFF,
    "elongated_quad": Kind.ELONGATED_QUAD,
    "double_quad": Kind.DOUBLE_QUAD,
    "twisted_cube": Kind.TWISTED_CUBE_LIKE,
    "vamos_like": Kind.VAMOS_LIKE,
}


@pytest.fixture(scope="module", params=sorted(FIXTURE_FILES))
def fixture(request):
    key = request.param
    return key, load_fixture(FIXTURE_FILES[key]), bits(FIXTURE_SETS[key])


def test_fixture_detected_as_its_kind_only(fixture):
    key, M, P = fixture
    hits = [k for k in Kind if DETECTORS[k](M, P)]
    assert hits == [KIND_OF[key]]


def test_fixture_scan_has_one_report_of_its_kind(fixture):
    key, M, P = fixture
    reps = [r for r in scan_all_separators(M) if r.kind is KIND_OF[key]]
    assert [r.P for r in reps] == [P]


def test_defining_sets_are_exact(fixture):
    key, M, P = fixture
    rep = DETECTORS[KIND_OF[key]](M, P)
    circ, cocirc = defining_sets(rep)
    ref = oracle.from_masks(M.n, M.bases)
    if rep.dual_side:
        ref = ref.dual()
    inside = lambda fam: {oracle.mask(c) for c in fam if oracle.mask(c) & ~P == 0}
    assert set(circ) == inside(ref.circuits())
    assert set(cocirc) == inside(ref.cocircuits())


def test_double_quad_partition():
    M = load_fixture("DoubleQuadHost.mtx")
    rep = detect_double_quad(M, bits(range(8)))
    A, B = rep.partition()
    assert A | B == bits(range(8)) and A & B == 0
    assert {A, B} == {bits(range(4)), bits(range(4, 8))}


def test_dual_behaviour(fixture):
    key, M, P = fixture
    D = dual(M)
    kind = KIND_OF[key]
    if kind in SELF_DUAL_KINDS:
        assert DETECTORS[kind](D, P)
    if kind is Kind.TWISTED_CUBE_LIKE:
        assert not twisted_cube_in(D, P)
        rep = DETECTORS[kind](D, P)
        assert rep and rep.dual_side


def test_v8_two_reports():
    V8 = load_fixture("V8.mtx")
    reps = scan_all_separators(V8)
    assert [(r.kind, elems(r.P)) for r in reps] == [
        (Kind.VAMOS_LIKE, (0, 1, 2, 3, 4, 5)),
        (Kind.VAMOS_LIKE, (0, 1, 2, 3, 6, 7)),
    ]


@pytest.mark.parametrize("M", [uniform(2, 6), uniform(3, 6), wheel(3), wheel(4)])
def test_nothing_in_small_symmetric_matroids(M):
    assert scan_all_separators(M) == []


def test_absent_carries_reason():
    res = detect_spike_like(uniform(2, 4), bits(range(4)))
    assert not res and "6" in res.reason
    res = detect_vamos_like(uniform(3, 6), bits(range(6)))
    assert not res and "not 4" in res.reason


def test_must_contain():
    M = load_fixture("DoubleQuadHost.mtx")
    reps = scan_all_separators(M, must_contain=1 << 8)
    assert [r.kind for r in reps] == [Kind.ELONGATED_QUAD, Kind.ELONGATED_QUAD]


def test_match_roles_size_mismatch():
    assert match_roles(bits(range(3)), ("a", "b"), (), (), set(), set()) is None


@settings(max_examples=15)
@given(st.sampled_from(sorted(FIXTURE_FILES)), st.data())
def test_detection_survives_relabelling(key, data):
    M = load_fixture(FIXTURE_FILES[key])
    perm = tuple(data.draw(st.permutations(range(M.n))))
    image = relabel(M, perm)
    P = sum(1 << perm[e] for e in FIXTURE_SETS[key])
    rep = DETECTORS[KIND_OF[key]](image, P)
    assert rep
    circ, cocirc = defining_sets(rep)
    assert all(c & ~P == 0 for c in circ + cocirc)
