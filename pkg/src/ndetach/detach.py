"""Detachable pairs, hypothesis checks, structured sets, and the dichotomy
verifier that ties them together."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from ndetach.connectivity import (
    cyclic_3_separations,
    find_cosegments,
    find_triads,
    is_3_connected,
    lam,
    lambda_table,
)
from ndetach.matroid import (
    Matroid,
    MatroidError,
    circuits,
    coclosure,
    cocircuits,
    cosimplify,
    delete,
    elems,
    fmt_set,
    lift,
    lower,
    minor,
    popcount,
)
from ndetach.minors import (
    MinorWitness,
    has_minor,
    minor_grounds,
    n_labels,
    ungrounded,
)
from ndetach.separators import (
    Kind,
    SeparatorReport,
    detect_double_quad,
    detect_elongated_quad,
    detect_spike_like,
    scan_all_separators,
    twisted_cube_in,
)


class PreconditionError(MatroidError):
    pass


class Mode(str, Enum):
    DELETE_BOTH = "DeleteBoth"
    CONTRACT_BOTH = "ContractBoth"


@dataclass(frozen=True)
class DetachablePair:
    """``witness`` is in M's labels; its delete/contract sets exclude the pair."""

    pair: tuple[int, int]
    mode: Mode
    witness: MinorWitness
    conn_certificate: bool = True

    def removal(self) -> tuple[int, int]:
        """(delete_set, contract_set) for the pair itself."""
        m = 1 << self.pair[0] | 1 << self.pair[1]
        return (m, 0) if self.mode is Mode.DELETE_BOTH else (0, m)


# -- detachable pairs ---------------------------------------------------------


def _pair_preconditions(M: Matroid, N: Matroid) -> None:
    if not is_3_connected(M):
        raise PreconditionError("M is not 3-connected")
    if not is_3_connected(N):
        raise PreconditionError("N is not 3-connected")
    if N.n < 4:
        raise PreconditionError(f"|E(N)| = {N.n} < 4")


def _lift_witness(w: MinorWitness, emap) -> MinorWitness:
    return MinorWitness(
        lift(w.delete_set, emap),
        lift(w.contract_set, emap),
        {emap[e]: v for e, v in w.iso.items()},
    )


def _test_pair(M: Matroid, N: Matroid, pair: tuple[int, int], mode: Mode) -> Optional[DetachablePair]:
    m = 1 << pair[0] | 1 << pair[1]
    if mode is Mode.DELETE_BOTH:
        small, emap = minor(M, delete_set=m)
    else:
        small, emap = minor(M, contract_set=m)
    if not is_3_connected(small):
        return None
    w = has_minor(small, N)
    if w is None:
        return None
    return DetachablePair(pair, mode, _lift_witness(w, emap), True)


def _pair_jobs(M: Matroid) -> list[tuple[tuple[int, int], Mode]]:
    return [(p, mode) for mode in Mode for p in combinations(range(M.n), 2)]


def _test_job(args) -> Optional[DetachablePair]:
    M, N, pair, mode = args
    return _test_pair(M, N, pair, mode)


def iter_detachable_pairs(M: Matroid, N: Matroid) -> Iterator[DetachablePair]:
    _pair_preconditions(M, N)
    for pair, mode in _pair_jobs(M):
        found = _test_pair(M, N, pair, mode)
        if found is not None:
            yield found


def find_detachable_pairs(M: Matroid, N: Matroid, jobs: int = 1) -> list[DetachablePair]:
    """All N-detachable pairs: every DeleteBoth pair, then every
    ContractBoth pair, each in lexicographic order."""
    if jobs <= 1:
        return list(iter_detachable_pairs(M, N))
    _pair_preconditions(M, N)
    tasks = [(M, N, p, mode) for p, mode in _pair_jobs(M)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        # map preserves task order, so the result does not depend on jobs
        results = list(ex.map(_test_job, tasks, chunksize=8))
    return [r for r in results if r is not None]


def first_detachable_pair(M: Matroid, N: Matroid) -> Optional[DetachablePair]:
    return next(iter_detachable_pairs(M, N), None)


# -- hypotheses ----------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class HypothesisReport:
    d: int
    d_prime: int
    ok: bool
    checks: list[Check]
    feasible_Y: list[int] = field(default_factory=list)  # M labels

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


@lru_cache(maxsize=None)
def _deleted(M: Matroid, d: int):
    return delete(M, 1 << d)


@lru_cache(maxsize=None)
def _cyclic_by_coguts(Md: Matroid) -> dict[int, list[tuple[int, int]]]:
    """coguts element -> list of (Y, Z), both orientations, M\\d labels."""
    out: dict[int, list[tuple[int, int]]] = {}
    for sep in cyclic_3_separations(Md):
        out.setdefault(sep.z, []).extend([(sep.X, sep.Y), (sep.Y, sep.X)])
    return out


@lru_cache(maxsize=None)
def _global_checks(M: Matroid, N: Matroid, d: int) -> tuple[Check, ...]:
    checks = [
        Check("M 3-connected", is_3_connected(M)),
        Check("N 3-connected", is_3_connected(N)),
        Check("|E(N)| >= 4", N.n >= 4, f"|E(N)| = {N.n}"),
    ]
    bad = ungrounded(M, N)
    checks.append(
        Check(
            "triangles and triads N-grounded",
            not bad,
            "" if not bad else "not grounded: " + " ".join(fmt_set(t) for t in bad),
        )
    )
    Md, _ = _deleted(M, d)
    checks.append(Check("M\\d 3-connected", is_3_connected(Md), f"d = {d}"))
    return tuple(checks)


def check_hypotheses(M: Matroid, N: Matroid, d: int, d_prime: int) -> HypothesisReport:
    """Evaluate every hypothesis of the main dichotomy for (d, d').

    All cyclic 3-separations (Y, {d'}, Z) of M\\d with |Y| >= 4 are tried;
    the ones admitting an N-minor of M\\d\\d' that meets Y in at most one
    element are reported as ``feasible_Y``.
    """
    M.check(1 << d | 1 << d_prime)
    if d == d_prime:
        raise MatroidError("d and d' must be distinct")
    checks = list(_global_checks(M, N, d))
    Md, emap = _deleted(M, d)
    feasible: list[int] = []
    if not checks[-1].passed:
        checks.append(Check("cyclic 3-separation (Y,{d'},Z), |Y| >= 4", False, "needs M\\d 3-connected"))
        checks.append(Check("N-minor of M\\d\\d' meeting Y in <= 1", False, "skipped"))
        return HypothesisReport(d, d_prime, False, checks)

    zl = lower(1 << d_prime, emap).bit_length() - 1
    cands = [lift(Y, emap) for Y, _ in _cyclic_by_coguts(Md).get(zl, []) if popcount(Y) >= 4]
    cands = sorted(set(cands), key=lambda y: (popcount(y), y))
    checks.append(
        Check(
            "cyclic 3-separation (Y,{d'},Z), |Y| >= 4",
            bool(cands),
            f"{len(cands)} candidate Y",
        )
    )
    Mdd, emap2 = minor(M, delete_set=1 << d | 1 << d_prime)
    grounds = [lift(g, emap2) for g in sorted(minor_grounds(Mdd, N))]
    for Y in cands:
        if any(popcount(g & Y) <= 1 for g in grounds):
            feasible.append(Y)
    if not grounds:
        detail = "M\\d\\d' has no N-minor"
    else:
        detail = f"{len(feasible)} feasible Y"
    checks.append(Check("N-minor of M\\d\\d' meeting Y in <= 1", bool(feasible), detail))
    ok = all(c.passed for c in checks)
    return HypothesisReport(d, d_prime, ok, checks, feasible if ok else [])


def admissible_reports(M: Matroid, N: Matroid, d: int) -> list[HypothesisReport]:
    return [check_hypotheses(M, N, d, dp) for dp in range(M.n) if dp != d]


# -- structured X --------------------------------------------------------------


@dataclass(frozen=True)
class ElementCertificate:
    element: int
    co_delete_3conn: bool
    contract_3conn: bool
    doubly_labelled: bool

    @property
    def good(self) -> bool:
        return self.co_delete_3conn and self.contract_3conn and self.doubly_labelled


@dataclass(frozen=True)
class StructuredX:
    X: int
    certificates: tuple[ElementCertificate, ...]
    minimal: bool
    contains_triad: bool


@lru_cache(maxsize=None)
def _certificates(M: Matroid, N: Matroid, d: int) -> dict[int, ElementCertificate]:
    """Certificates for every element of M\\d, keyed by M label."""
    Md, emap = _deleted(M, d)
    labels = n_labels(Md, N)
    out = {}
    for i in range(Md.n):
        co = cosimplify(minor(Md, delete_set=1 << i)[0])[0]
        con = minor(Md, contract_set=1 << i)[0]
        out[emap[i]] = ElementCertificate(
            emap[i], is_3_connected(co), is_3_connected(con), labels.doubly(i)
        )
    return out


def _triads_of_deletion(M: Matroid, d: int) -> list[int]:
    Md, emap = _deleted(M, d)
    return [lift(t, emap) for t in find_triads(Md)]


def find_structured_X(M: Matroid, N: Matroid, d: int, Y: int) -> list[StructuredX]:
    """All X within Y, |X| >= 4, 3-separating in M\\d, with every element
    passing the three per-element conditions.  Y is in M labels."""
    M.check(Y)
    if Y >> d & 1:
        raise MatroidError("Y must avoid d")
    certs = _certificates(M, N, d)
    good = sum(1 << x for x in elems(Y) if certs[x].good)
    if popcount(good) < 4:
        return []
    Md, emap = _deleted(M, d)
    lt = lambda_table(Md)
    qualifying = []
    sub = good
    while sub:
        if popcount(sub) >= 4 and lt[lower(sub, emap)] <= 2:
            qualifying.append(sub)
        sub = (sub - 1) & good
    qualifying.sort(key=lambda m: (popcount(m), m))
    triads = _triads_of_deletion(M, d)
    out = []
    for X in qualifying:
        minimal = not any(S != X and S & ~X == 0 for S in qualifying)
        out.append(
            StructuredX(
                X,
                tuple(certs[x] for x in elems(X)),
                minimal,
                any(t & ~X == 0 for t in triads),
            )
        )
    return out


# -- dichotomy -------------------------------------------------------------------


class Branch(str, Enum):
    PAIR_FOUND = "PairFound"
    SEPARATOR_FOUND = "SeparatorFound"
    HYPOTHESIS_FAILED = "HypothesisFailed"
    COUNTEREXAMPLE = "Counterexample"


@dataclass
class DichotomyVerdict:
    branch: Branch
    pair: Optional[DetachablePair] = None
    separator: Optional[SeparatorReport] = None
    c: Optional[int] = None
    X: Optional[int] = None
    Y: Optional[int] = None
    hypotheses: Optional[HypothesisReport] = None
    dump: Optional[dict] = None


def coclosure_in_deletion(M: Matroid, d: int, X: int) -> int:
    """cl*_{M\\d}(X) in M labels."""
    Md, emap = _deleted(M, d)
    return lift(coclosure(Md, lower(X, emap)), emap)


DICHOTOMY_KINDS = (Kind.SKEW_WHIFF, Kind.SPIKE_LIKE, Kind.TWISTED_CUBE_LIKE, Kind.ELONGATED_QUAD)


def theorem_shape(
    M: Matroid, d: int, rep: SeparatorReport, Ys: list[int]
) -> Optional[tuple[int, int, int]]:
    """(X, c, Y) exhibiting ``rep`` as an outcome of the dichotomy, if any."""
    if not rep.P >> d & 1:
        return None
    if rep.kind in DICHOTOMY_KINDS:
        splits = [(rep.P & ~(1 << c | 1 << d), c) for c in elems(rep.P) if c != d]
    elif rep.kind is Kind.DOUBLE_QUAD:
        splits = []
        for X, Q in (rep.partition(), rep.partition()[::-1]):
            if Q >> d & 1:
                splits += [(X, c) for c in elems(Q) if c != d]
    else:
        return None
    for X, c in splits:
        if not coclosure_in_deletion(M, d, X) >> c & 1:
            continue
        for Y in Ys:
            if X & ~Y == 0:
                return X, c, Y
    return None


def counterexample_dump(M: Matroid, N: Matroid, d: int, reports: list[HypothesisReport]) -> dict:
    Md, _ = _deleted(M, d)
    labels = n_labels(M, N)
    labels_d = n_labels(Md, N)
    return {
        "M": {"name": M.name, "n": M.n, "rank": M.rank, "bases": sorted(M.bases)},
        "N": {"name": N.name, "n": N.n, "rank": N.rank, "bases": sorted(N.bases)},
        "d": d,
        "lambda": [int(v) for v in lambda_table(M)],
        "circuits": list(circuits(M)),
        "cocircuits": list(cocircuits(M)),
        "labels_M": {"deletable": list(labels.deletable), "contractible": list(labels.contractible)},
        "labels_M_minus_d": {
            "deletable": list(labels_d.deletable),
            "contractible": list(labels_d.contractible),
        },
        "feasible": [{"d_prime": r.d_prime, "Y": r.feasible_Y} for r in reports if r.ok],
    }


def verify_dichotomy(M: Matroid, N: Matroid, d: int, jobs: int = 1) -> DichotomyVerdict:
    M.check(1 << d)
    reports = admissible_reports(M, N, d)
    passing = [r for r in reports if r.ok]
    if not passing:
        if not reports:
            rep = HypothesisReport(d, -1, False, [Check("d' exists", False, "M has one element")])
        else:
            rep = max(reports, key=lambda r: (sum(c.passed for c in r.checks), -r.d_prime))
        return DichotomyVerdict(Branch.HYPOTHESIS_FAILED, hypotheses=rep)

    if jobs > 1:
        pairs = find_detachable_pairs(M, N, jobs)
        pair = pairs[0] if pairs else None
    else:
        pair = first_detachable_pair(M, N)
    if pair is not None:
        return DichotomyVerdict(Branch.PAIR_FOUND, pair=pair, hypotheses=passing[0])

    Ys = sorted({Y for r in passing for Y in r.feasible_Y}, key=lambda y: (popcount(y), y))
    for rep in scan_all_separators(M, must_contain=1 << d):
        shape = theorem_shape(M, d, rep, Ys)
        if shape is not None:
            X, c, Y = shape
            owner = next(r for r in passing if Y in r.feasible_Y)
            return DichotomyVerdict(
                Branch.SEPARATOR_FOUND, separator=rep, c=c, X=X, Y=Y, hypotheses=owner
            )
    return DichotomyVerdict(
        Branch.COUNTEREXAMPLE,
        hypotheses=passing[0],
        dump=counterexample_dump(M, N, d, reports),
    )


# -- the two halves ------------------------------------------------------------


@dataclass
class TheoremCheck:
    status: str  # "precondition" | "holds" | "violated"
    details: list[str]
    pair: Optional[DetachablePair] = None
    separator: Optional[SeparatorReport] = None
    c: Optional[int] = None


def _structured_member(M: Matroid, N: Matroid, d: int, X: int) -> tuple[Optional[StructuredX], list[str]]:
    why = []
    Md, emap = _deleted(M, d)
    if X >> d & 1:
        return None, ["X contains d"]
    if popcount(X) < 4:
        why.append(f"|X| = {popcount(X)} < 4")
    if lam(Md, lower(X, emap)) > 2:
        why.append(f"{fmt_set(X)} is not 3-separating in M\\d")
    if why:
        return None, why
    for r in admissible_reports(M, N, d):
        for Y in r.feasible_Y:
            if X & ~Y:
                continue
            for sx in find_structured_X(M, N, d, Y):
                if sx.X == X:
                    return sx, []
    return None, [f"{fmt_set(X)} is not a structured set for any admissible (Y, d')"]


def verify_triad_theorem(M: Matroid, N: Matroid, d: int, X: int) -> TheoremCheck:
    """A minimal structured X holding a triad of M\\d forces a pair."""
    sx, why = _structured_member(M, N, d, X)
    if sx is None:
        return TheoremCheck("precondition", why)
    if not sx.minimal:
        return TheoremCheck("precondition", [f"{fmt_set(X)} is not minimal"])
    if not sx.contains_triad:
        return TheoremCheck("precondition", [f"{fmt_set(X)} contains no triad of M\\d"])
    pair = first_detachable_pair(M, N)
    if pair is None:
        return TheoremCheck("violated", ["no N-detachable pair"])
    return TheoremCheck("holds", [], pair=pair)


def _nontriad_outcome(M: Matroid, d: int, X: int) -> Optional[tuple[SeparatorReport, int]]:
    cocl = coclosure_in_deletion(M, d, X)
    for c in elems(cocl & ~X):
        if c == d:
            continue
        P = X | 1 << c | 1 << d
        for detect in (detect_spike_like, detect_elongated_quad, twisted_cube_in):
            rep = detect(M, P)
            if rep:
                return rep, c
        rest = M.ground & ~P
        for a, b in combinations(elems(rest), 2):
            rep = detect_double_quad(M, P | 1 << a | 1 << b)
            if rep and X in rep.partition():
                return rep, c
    return None


def verify_nontriad_theorem(M: Matroid, N: Matroid, d: int, X: int) -> TheoremCheck:
    """A structured X holding no triad of M\\d gives a pair or a separator."""
    sx, why = _structured_member(M, N, d, X)
    if sx is None:
        return TheoremCheck("precondition", why)
    if sx.contains_triad:
        return TheoremCheck("precondition", [f"{fmt_set(X)} contains a triad of M\\d"])
    pair = first_detachable_pair(M, N)
    if pair is not None:
        return TheoremCheck("holds", [], pair=pair)
    found = _nontriad_outcome(M, d, X)
    if found is None:
        return TheoremCheck("violated", ["no pair and no separator outcome"])
    rep, c = found
    return TheoremCheck("holds", [], separator=rep, c=c)


def check_cosegment_lemma(M: Matroid, N: Matroid, d: int) -> list[str]:
    """Violations of: a 4-element cosegment of M\\d inside a feasible Y
    (with a structured X present) forces a pair.  Empty means it holds."""
    out = []
    Md, emap = _deleted(M, d)
    cosegs = [lift(s, emap) for s in find_cosegments(Md, 4)]
    pair_known: Optional[bool] = None
    for r in admissible_reports(M, N, d):
        for Y in r.feasible_Y:
            if not any(popcount(s & Y) >= 4 for s in cosegs):
                continue
            if not find_structured_X(M, N, d, Y):
                continue
            if pair_known is None:
                pair_known = first_detachable_pair(M, N) is not None
            if not pair_known:
                out.append(f"d'={r.d_prime} Y={fmt_set(Y)}: cosegment in Y but no pair")
    return out
