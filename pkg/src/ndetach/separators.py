"""Detectors for the particular 3-separators.

Each detector takes (M, P) and returns a ``SeparatorReport`` or an
``Absent`` carrying the reason.  For the kinds defined by explicit lists,
the circuits (cocircuits) of M inside P must be exactly the listed sets,
whatever their size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Union

from ndetach.connectivity import find_quads, lam, lambda_table
from ndetach.matroid import (
    Matroid,
    circuits,
    cocircuits,
    corank_of,
    dual,
    elems,
    fmt_set,
    popcount,
)


class Kind(str, Enum):
    SPIKE_LIKE = "SpikeLike"
    SKEW_WHIFF = "SkewWhiff"
    ELONGATED_QUAD = "ElongatedQuad"
    DOUBLE_QUAD = "DoubleQuad"
    TWISTED_CUBE_LIKE = "TwistedCubeLike"
    VAMOS_LIKE = "VamosLike"


KIND_ORDER = list(Kind)
SELF_DUAL_KINDS = (Kind.SPIKE_LIKE, Kind.SKEW_WHIFF, Kind.ELONGATED_QUAD, Kind.DOUBLE_QUAD)


@dataclass(frozen=True)
class SeparatorReport:
    kind: Kind
    P: int
    labelling: dict = field(hash=False)
    dual_side: bool = False

    def __bool__(self):
        return True

    @property
    def legs(self) -> tuple[int, ...]:
        return tuple(self.labelling.get("legs", ()))

    def role_set(self, *roles: str) -> int:
        return sum(1 << self.labelling[r] for r in roles)

    def partition(self) -> Optional[tuple[int, int]]:
        if self.kind is not Kind.DOUBLE_QUAD:
            return None
        return (
            self.role_set("p1", "p2", "p3", "p4"),
            self.role_set("q1", "q2", "q3", "q4"),
        )


@dataclass(frozen=True)
class Absent:
    reason: str

    def __bool__(self):
        return False


Detection = Union[SeparatorReport, Absent]


# -- role patterns -------------------------------------------------------------

SKEW_WHIFF_ROLES = ("s1", "s2", "t1", "t2", "u1", "u2")
SKEW_WHIFF_CIRCUITS = (
    ("s1", "s2", "t2", "u1"),
    ("s1", "t1", "t2", "u2"),
    ("s2", "t1", "u1", "u2"),
)
SKEW_WHIFF_COCIRCUITS = (
    ("s1", "s2", "t1", "t2"),
    ("s1", "s2", "u1", "u2"),
    ("t1", "t2", "u1", "u2"),
)

ELONGATED_ROLES = ("p1", "p2", "q1", "q2", "q3", "q4")
ELONGATED_CIRCUITS = (
    ("q1", "q2", "q3", "q4"),
    ("p1", "p2", "q1", "q2"),
    ("p1", "p2", "q3", "q4"),
)
ELONGATED_COCIRCUITS = (
    ("q1", "q2", "q3", "q4"),
    ("p1", "p2", "q1", "q3"),
    ("p1", "p2", "q2", "q4"),
)

DOUBLE_QUAD_ROLES = ("p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4")
DOUBLE_QUAD_CIRCUITS = (
    ("p1", "p2", "p3", "p4"),
    ("q1", "q2", "q3", "q4"),
    ("p1", "p2", "q1", "q2"),
    ("p1", "p2", "q3", "q4"),
    ("p3", "p4", "q1", "q2"),
    ("p3", "p4", "q3", "q4"),
)
DOUBLE_QUAD_COCIRCUITS = (
    ("p1", "p2", "p3", "p4"),
    ("q1", "q2", "q3", "q4"),
    ("p1", "p3", "q1", "q3"),
    ("p1", "p3", "q2", "q4"),
    ("p2", "p4", "q1", "q3"),
    ("p2", "p4", "q2", "q4"),
)

CUBE_ROLES = ("p1", "p2", "q1", "q2", "s1", "s2")
CUBE_CIRCUITS = (
    ("p1", "p2", "s1", "s2"),
    ("q1", "q2", "s1", "s2"),
    ("p1", "p2", "q1", "q2"),
)
TWISTED_COCIRCUITS = (
    ("p1", "q1", "s1", "s2"),
    ("p2", "q2", "s1", "s2"),
    ("p1", "p2", "q1", "q2", "s1"),
    ("p1", "p2", "q1", "q2", "s2"),
)
VAMOS_COCIRCUITS = (
    ("p1", "p2", "s1", "s2"),
    ("q1", "q2", "s1", "s2"),
    ("p1", "p2", "q1", "q2", "s1"),
    ("p1", "p2", "q1", "q2", "s2"),
)


def circuits_inside(M: Matroid, P: int) -> set[int]:
    return set(circuits(M).inside(P))


def cocircuits_inside(M: Matroid, P: int) -> set[int]:
    return set(cocircuits(M).inside(P))


def match_roles(
    P: int,
    roles: Sequence[str],
    circuit_patterns: Sequence[Sequence[str]],
    cocircuit_patterns: Sequence[Sequence[str]],
    circs: set[int],
    cocircs: set[int],
) -> Optional[dict]:
    """First assignment of the elements of P to ``roles`` (in increasing
    element order) under which the patterns are exactly ``circs`` and
    ``cocircs``."""
    if len(circs) != len(circuit_patterns) or len(cocircs) != len(cocircuit_patterns):
        return None
    pos = {r: i for i, r in enumerate(roles)}
    # pattern becomes checkable once its last role (in role order) is set
    due: list[list[tuple[tuple[int, ...], set[int]]]] = [[] for _ in roles]
    for pats, fam in ((circuit_patterns, circs), (cocircuit_patterns, cocircs)):
        for pat in pats:
            idx = tuple(pos[r] for r in pat)
            due[max(idx)].append((idx, fam))
    items = elems(P)
    assign: list[int] = []
    used: set[int] = set()

    def go(k: int) -> bool:
        if k == len(roles):
            return True
        for e in items:
            if e in used:
                continue
            assign.append(e)
            if all(
                sum(1 << assign[i] for i in idx) in fam for idx, fam in due[k]
            ):
                used.add(e)
                if go(k + 1):
                    return True
                used.discard(e)
            assign.pop()
        return False

    if len(items) != len(roles) or not go(0):
        return None
    return {r: assign[i] for i, r in enumerate(roles)}


def _exact_three(M: Matroid, P: int) -> Optional[Absent]:
    M.check(P)
    if lam(M, P) != 2:
        return Absent(f"lambda({fmt_set(P)}) = {lam(M, P)}, not exactly 3-separating")
    return None


def _listed(
    M: Matroid,
    P: int,
    kind: Kind,
    roles,
    circuit_patterns,
    cocircuit_patterns,
    dual_side: bool = False,
) -> Detection:
    if popcount(P) != len(roles):
        return Absent(f"{kind.value} needs |P| = {len(roles)}, got {popcount(P)}")
    bad = _exact_three(M, P)
    if bad:
        return bad
    lab = match_roles(
        P,
        roles,
        circuit_patterns,
        cocircuit_patterns,
        circuits_inside(M, P),
        cocircuits_inside(M, P),
    )
    if lab is None:
        return Absent(f"no labelling of {fmt_set(P)} realizes the {kind.value} lists")
    return SeparatorReport(kind, P, lab, dual_side)


# -- detectors -----------------------------------------------------------------


def detect_spike_like(M: Matroid, P: int) -> Detection:
    size = popcount(P)
    if size % 2 or size < 6:
        return Absent(f"spike-like needs |P| even and >= 6, got {size}")
    bad = _exact_three(M, P)
    if bad:
        return bad
    quads = set(find_quads(M))
    legs: list[int] = []

    def go(rest: int) -> bool:
        if not rest:
            return True
        a = rest & -rest
        for b in elems(rest & ~a):
            leg = a | 1 << b
            if all(leg | other in quads for other in legs):
                legs.append(leg)
                if go(rest & ~leg):
                    return True
                legs.pop()
        return False

    if not go(P):
        return Absent(f"no partition of {fmt_set(P)} into legs with every leg pair a quad")
    return SeparatorReport(Kind.SPIKE_LIKE, P, {"legs": tuple(legs)})


def detect_skew_whiff(M: Matroid, P: int) -> Detection:
    return _listed(M, P, Kind.SKEW_WHIFF, SKEW_WHIFF_ROLES, SKEW_WHIFF_CIRCUITS, SKEW_WHIFF_COCIRCUITS)


def detect_elongated_quad(M: Matroid, P: int) -> Detection:
    return _listed(M, P, Kind.ELONGATED_QUAD, ELONGATED_ROLES, ELONGATED_CIRCUITS, ELONGATED_COCIRCUITS)


def detect_double_quad(M: Matroid, P: int) -> Detection:
    return _listed(M, P, Kind.DOUBLE_QUAD, DOUBLE_QUAD_ROLES, DOUBLE_QUAD_CIRCUITS, DOUBLE_QUAD_COCIRCUITS)


def twisted_cube_in(M: Matroid, P: int) -> Detection:
    """Twisted cube-like 3-separator of M itself (no dual fallback)."""
    return _listed(M, P, Kind.TWISTED_CUBE_LIKE, CUBE_ROLES, CUBE_CIRCUITS, TWISTED_COCIRCUITS)


def detect_twisted_cube(M: Matroid, P: int) -> Detection:
    """Tries M first, then M*; ``dual_side`` marks a detection in M*."""
    rep = twisted_cube_in(M, P)
    if rep:
        return rep
    rep_d = twisted_cube_in(dual(M), P)
    if rep_d:
        return SeparatorReport(rep_d.kind, P, rep_d.labelling, dual_side=True)
    return Absent(f"{rep.reason}; also absent in the dual")


def detect_vamos_like(M: Matroid, P: int) -> Detection:
    if popcount(P) != 6:
        return Absent(f"Vamos-like needs |P| = 6, got {popcount(P)}")
    if M.r(P) != 4:
        return Absent(f"r({fmt_set(P)}) = {M.r(P)}, not 4")
    if corank_of(M, P) != 4:
        return Absent(f"r*({fmt_set(P)}) = {corank_of(M, P)}, not 4")
    return _listed(M, P, Kind.VAMOS_LIKE, CUBE_ROLES, CUBE_CIRCUITS, VAMOS_COCIRCUITS)


DETECTORS = {
    Kind.SPIKE_LIKE: detect_spike_like,
    Kind.SKEW_WHIFF: detect_skew_whiff,
    Kind.ELONGATED_QUAD: detect_elongated_quad,
    Kind.DOUBLE_QUAD: detect_double_quad,
    Kind.TWISTED_CUBE_LIKE: detect_twisted_cube,
    Kind.VAMOS_LIKE: detect_vamos_like,
}


def exactly_3_separating_sets(M: Matroid, sizes=None) -> list[int]:
    if M.n == 0:
        return []
    lt = lambda_table(M)
    out = []
    for P in range(1 << M.n):
        if lt[P] == 2 and (sizes is None or popcount(P) in sizes):
            out.append(P)
    return out


def scan_all_separators(M: Matroid, must_contain: int = 0) -> list[SeparatorReport]:
    """Every detector over every exactly 3-separating P of admissible size
    containing ``must_contain``; sorted by (|P|, P, kind)."""
    M.check(must_contain)
    sizes = set(range(6, M.n + 1, 2))
    out = []
    for P in exactly_3_separating_sets(M, sizes):
        if must_contain & ~P:
            continue
        for kind in KIND_ORDER:
            rep = DETECTORS[kind](M, P)
            if rep:
                out.append(rep)
    out.sort(key=lambda r: (popcount(r.P), r.P, KIND_ORDER.index(r.kind)))
    return out


def defining_sets(rep: SeparatorReport) -> tuple[list[int], list[int]]:
    """The circuit and cocircuit lists a report claims, as bit vectors."""
    lab = rep.labelling

    def sets(patterns):
        return [sum(1 << lab[r] for r in pat) for pat in patterns]

    if rep.kind is Kind.SPIKE_LIKE:
        legs = rep.legs
        quads = [a | b for i, a in enumerate(legs) for b in legs[i + 1:]]
        return quads, quads
    table = {
        Kind.SKEW_WHIFF: (SKEW_WHIFF_CIRCUITS, SKEW_WHIFF_COCIRCUITS),
        Kind.ELONGATED_QUAD: (ELONGATED_CIRCUITS, ELONGATED_COCIRCUITS),
        Kind.DOUBLE_QUAD: (DOUBLE_QUAD_CIRCUITS, DOUBLE_QUAD_COCIRCUITS),
        Kind.TWISTED_CUBE_LIKE: (CUBE_CIRCUITS, TWISTED_COCIRCUITS),
        Kind.VAMOS_LIKE: (CUBE_CIRCUITS, VAMOS_COCIRCUITS),
    }
    cp, kp = table[rep.kind]
    return sets(cp), sets(kp)
