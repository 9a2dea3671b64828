import pytest

import oracle
from ndetach.catalog import load_fixture, sweep_hosts, uniform, wheel, whirl
from ndetach.connectivity import is_3_connected
from ndetach.detach import (
    Branch,
    Mode,
    PreconditionError,
    admissible_reports,
    check_cosegment_lemma,
    check_hypotheses,
    find_detachable_pairs,
    find_structured_X,
    first_detachable_pair,
    verify_dichotomy,
    verify_nontriad_theorem,
    verify_triad_theorem,
)
from ndetach.matroid import bits, elems, minor

U24 = uniform(2, 4)


@pytest.fixture(scope="module")
def hosts():
    return {e.name: e.matroid for e in sweep_hosts()}


def test_pairs_in_u26():
    pairs = find_detachable_pairs(uniform(2, 6), U24)
    assert len(pairs) == 15
    assert {p.mode for p in pairs} == {Mode.DELETE_BOTH}
    assert pairs[0].pair == (0, 1)


def test_no_pairs_in_u36():
    # every pair removal leaves U(3,4) or U(1,4)
    assert first_detachable_pair(uniform(3, 6), U24) is None


def test_pair_witness_is_valid():
    M = uniform(3, 7)
    p = first_detachable_pair(M, U24)
    D, C = p.removal()
    m, emap = minor(M, D | p.witness.delete_set, C | p.witness.contract_set)
    assert m == U24
    assert set(p.witness.iso) == {emap[i] for i in range(4)}


def test_mode_major_order(hosts):
    pairs = find_detachable_pairs(hosts["SkewWhiffPlaneHost"], U24)
    modes = [p.mode for p in pairs]
    assert modes == sorted(modes, key=lambda m: list(Mode).index(m))
    assert Mode.CONTRACT_BOTH in modes


def test_no_pairs_in_w5_over_k4():
    assert find_detachable_pairs(wheel(5), wheel(3)) == []


@pytest.mark.parametrize(
    "M,N",
    [(uniform(1, 4), U24), (uniform(2, 5), uniform(1, 3)), (U24, uniform(0, 2))],
)
def test_preconditions(M, N):
    with pytest.raises(PreconditionError):
        find_detachable_pairs(M, N)


def test_parallel_matches_serial():
    M = load_fixture("SpikeLikePlaneHost.mtx")
    a = find_detachable_pairs(M, U24, jobs=1)
    b = find_detachable_pairs(M, U24, jobs=2)
    assert [(p.pair, p.mode, p.witness) for p in a] == [(p.pair, p.mode, p.witness) for p in b]


def test_plane_host_pairs_against_oracle(hosts):
    M = hosts["SpikeLikePlaneHost"]
    pairs = {(p.pair, p.mode) for p in find_detachable_pairs(M, U24)}
    ref = oracle.from_masks(M.n, M.bases)
    # [DERIVED] sample: a pair across P and W, and one inside P
    for pair in [(0, 6), (0, 1)]:
        small = ref.minor(delete=pair)
        expect = small.three_connected() and oracle.has_minor(small, oracle.uniform(2, 4))
        assert ((pair, Mode.DELETE_BOTH) in pairs) == expect
    assert ((0, 6), Mode.DELETE_BOTH) in pairs


def test_hypotheses_report_failures():
    r = check_hypotheses(wheel(5), wheel(3), 0, 1)
    assert not r.ok
    names = [c.name for c in r.failed()]
    assert "triangles and triads N-grounded" in names


def test_hypotheses_need_distinct_elements():
    with pytest.raises(ValueError):
        check_hypotheses(wheel(4), U24, 0, 0)


def test_double_quad_host_structured_set(hosts):
    M = hosts["DoubleQuadHost"]
    r = next(r for r in admissible_reports(M, U24, 0) if r.ok)
    assert r.d_prime == 2
    assert [elems(Y) for Y in r.feasible_Y] == [(4, 5, 6, 7)]
    xs = find_structured_X(M, U24, 0, r.feasible_Y[0])
    assert [(elems(s.X), s.minimal, s.contains_triad) for s in xs] == [((4, 5, 6, 7), True, False)]


@pytest.mark.parametrize("d", range(8))
def test_double_quad_host_verdicts(hosts, d):
    v = verify_dichotomy(hosts["DoubleQuadHost"], U24, d)
    assert v.branch is Branch.SEPARATOR_FOUND
    assert v.separator.kind.value == "DoubleQuad"
    assert v.X in v.separator.partition()
    assert d in elems(v.separator.P)


@pytest.mark.parametrize("name", ["SpikeLikePlaneHost", "SkewWhiffPlaneHost", "ElongatedQuadPlaneHost"])
def test_plane_host_verdicts(hosts, name):
    M = hosts[name]
    v = verify_dichotomy(M, U24, 0)
    assert v.branch is Branch.PAIR_FOUND
    assert (v.pair.pair, v.pair.mode) == ((0, 6), Mode.DELETE_BOTH)
    assert verify_dichotomy(M, U24, 9).branch is Branch.HYPOTHESIS_FAILED


def test_hypothesis_failed_keeps_best_report():
    v = verify_dichotomy(wheel(5), wheel(3), 0)
    assert v.branch is Branch.HYPOTHESIS_FAILED
    assert v.hypotheses is not None and not v.hypotheses.ok


def test_nontriad_theorem_on_double_quad(hosts):
    M = hosts["DoubleQuadHost"]
    t = verify_nontriad_theorem(M, U24, 0, bits(range(4, 8)))
    assert t.status == "holds"
    assert t.separator is not None and t.separator.kind.value == "DoubleQuad"
    assert verify_triad_theorem(M, U24, 0, bits(range(4, 8))).status == "precondition"


def test_nontriad_precondition_reasons(hosts):
    t = verify_nontriad_theorem(hosts["DoubleQuadHost"], U24, 0, bits([1, 2, 3]))
    assert t.status == "precondition"
    assert any("contains d" in s or "< 4" in s for s in t.details)


def test_cosegment_lemma(hosts):
    for M in hosts.values():
        for d in range(M.n):
            assert check_cosegment_lemma(M, U24, d) == []


def test_whirl_hypotheses_fail():
    v = verify_dichotomy(whirl(5), whirl(3), 0)
    assert v.branch is Branch.HYPOTHESIS_FAILED
    assert is_3_connected(whirl(5))


def test_triad_case_host(hosts):
    # [DERIVED] checked against the reference implementation: M and M\0 are
    # 3-connected, ({4,5,6,8,9},{7},Z) is cyclic in M\0, {4,8,9} is a triad
    # of M\0, every element of X passes its certificate, and deleting
    # {0,10} keeps M 3-connected with a U(2,4)-minor.
    M = hosts["TriadCaseHostA"]
    X = bits([4, 5, 6, 8, 9])
    rep = check_hypotheses(M, U24, 0, 7)
    assert rep.ok and X in rep.feasible_Y
    xs = [s for s in find_structured_X(M, U24, 0, X) if s.X == X]
    assert len(xs) == 1 and xs[0].minimal and xs[0].contains_triad
    t = verify_triad_theorem(M, U24, 0, X)
    assert t.status == "holds"
    assert (t.pair.pair, t.pair.mode) == ((0, 10), Mode.DELETE_BOTH)
