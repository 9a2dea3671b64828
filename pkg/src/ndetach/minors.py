"""Brute-force N-minor testing and the element labels built on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from ndetach.connectivity import (
    GutsSeparation,
    find_triads,
    find_triangles,
    is_3_connected,
    is_cyclic_3_separation,
)
from ndetach.matroid import (
    ElementMap,
    Matroid,
    MatroidError,
    closure,
    coclosure,
    delete,
    dual,
    elems,
    fmt_set,
    is_isomorphic,
    lift,
    minor,
    popcount,
)


@dataclass(frozen=True)
class MinorWitness:
    """M / contract_set \\ delete_set is isomorphic to N via ``iso``.

    ``iso`` maps each remaining element of M (original labels) to its
    element of N.
    """

    delete_set: int
    contract_set: int
    iso: dict = field(hash=False, compare=True)

    @property
    def kept(self) -> int:
        return sum(1 << e for e in self.iso)


@dataclass(frozen=True)
class NLabelTable:
    deletable: tuple[bool, ...]
    contractible: tuple[bool, ...]

    def doubly(self, e: int) -> bool:
        return self.deletable[e] and self.contractible[e]

    @property
    def doubly_labelled(self) -> int:
        return sum(1 << e for e in range(len(self.deletable)) if self.doubly(e))


# Isomorphism results keyed by (N, minor basis family); the values are
# canonical for the key so concurrent writers agree.
_iso_memo: dict = {}


def _iso_to(N: Matroid, small: Matroid) -> Optional[ElementMap]:
    key = (N, small)
    if key not in _iso_memo:
        _iso_memo[key] = is_isomorphic(small, N)
    return _iso_memo[key]


def clear_caches() -> None:
    _iso_memo.clear()
    _has_minor_cached.cache_clear()


def _candidate_pairs(M: Matroid, N: Matroid) -> Iterator[tuple[int, int]]:
    """(D, C) with D coindependent, C independent in M \\ D, and sizes
    matching N; deletions vary slowest."""
    nc = M.rank - N.rank
    nd = (M.n - M.rank) - (N.n - N.rank)
    if nc < 0 or nd < 0:
        return
    full = M.ground
    for dset in combinations(range(M.n), nd):
        D = sum(1 << e for e in dset)
        if M.r(full & ~D) != M.rank:
            continue
        rest = full & ~D
        for cset in combinations(elems(rest), nc):
            C = sum(1 << e for e in cset)
            if M.r(C) == nc:
                yield D, C


def minor_witnesses(M: Matroid, N: Matroid) -> Iterator[MinorWitness]:
    """Every (D, C) decomposition giving an isomorphic copy of N."""
    if N.n > M.n:
        return
    for D, C in _candidate_pairs(M, N):
        small, keep = minor(M, delete_set=D, contract_set=C)
        if len(small.bases) != len(N.bases):
            continue
        f = _iso_to(N, small)
        if f is not None:
            yield MinorWitness(D, C, {keep[i]: f[i] for i in range(small.n)})


@lru_cache(maxsize=None)
def _has_minor_cached(M: Matroid, N: Matroid) -> Optional[MinorWitness]:
    return next(minor_witnesses(M, N), None)


def has_minor(M: Matroid, N: Matroid) -> Optional[MinorWitness]:
    """First witness in canonical order, or None when M has no N-minor."""
    if N.n > M.n or N.rank > M.rank or N.n - N.rank > M.n - M.rank:
        return None
    return _has_minor_cached(M, N)


def minor_grounds(M: Matroid, N: Matroid) -> frozenset[int]:
    """All sets E - D - C over witnesses of an N-minor in M."""
    return frozenset(w.kept for w in minor_witnesses(M, N))


@lru_cache(maxsize=None)
def n_labels(M: Matroid, N: Matroid) -> NLabelTable:
    dl, cl = [], []
    for e in range(M.n):
        dl.append(has_minor(minor(M, delete_set=1 << e)[0], N) is not None)
        cl.append(has_minor(minor(M, contract_set=1 << e)[0], N) is not None)
    return NLabelTable(tuple(dl), tuple(cl))


# -- grounded triangles and triads --------------------------------------------


def _pair_minors_free(M: Matroid, N: Matroid, T: int) -> bool:
    for a, b in combinations(elems(T), 2):
        A, B = 1 << a, 1 << b
        for D, C in ((0, A | B), (B, A), (A, B), (A | B, 0)):
            if has_minor(minor(M, delete_set=D, contract_set=C)[0], N) is not None:
                return False
    return True


def is_grounded_triangle(M: Matroid, N: Matroid, T: int) -> bool:
    if T not in find_triangles(M):
        raise MatroidError(f"{fmt_set(T)} is not a triangle")
    return _pair_minors_free(M, N, T)


def is_grounded_triad(M: Matroid, N: Matroid, T: int) -> bool:
    if T not in find_triads(M):
        raise MatroidError(f"{fmt_set(T)} is not a triad")
    return _pair_minors_free(M, N, T)


@lru_cache(maxsize=None)
def all_triangles_triads_grounded(M: Matroid, N: Matroid) -> bool:
    return all(_pair_minors_free(M, N, T) for T in find_triangles(M)) and all(
        _pair_minors_free(M, N, T) for T in find_triads(M)
    )


def ungrounded(M: Matroid, N: Matroid) -> list[int]:
    """Triangles and triads of M that are not N-grounded."""
    out = [T for T in find_triangles(M) if not _pair_minors_free(M, N, T)]
    out += [T for T in find_triads(M) if not _pair_minors_free(M, N, T)]
    return out


# -- doubly-labelled lemma ----------------------------------------------------


@dataclass
class DoublyLabelReport:
    status: str  # "precondition" | "holds" | "violated"
    details: list[str]
    X_prime: int = 0
    not_contractible: int = 0


def check_doubly_label_lemma(
    M: Matroid,
    N: Matroid,
    sep: GutsSeparation,
    witness: Optional[MinorWitness] = None,
) -> DoublyLabelReport:
    """Check the conclusions about N-deletable and N-contractible elements
    near a cyclic 3-separation (X, {z}, Y) whose X side meets the N-minor of
    M \\ z in at most one element.

    ``witness`` is an N-minor witness of M \\ z in M\\z labels.  Without one,
    the hypothesis holds if any witness qualifies.
    """
    X, z, Y = sep.X, sep.z, sep.Y
    pre = []
    if not is_3_connected(M):
        pre.append("M is not 3-connected")
    if not is_3_connected(N):
        pre.append("N is not 3-connected")
    if not is_cyclic_3_separation(M, X, z, Y):
        pre.append(f"({fmt_set(X)}, {{{z}}}, {fmt_set(Y)}) is not a cyclic 3-separation")
    if pre:
        return DoublyLabelReport("precondition", pre)
    Mz, emap = delete(M, 1 << z)
    if witness is not None:
        grounds = [lift(witness.kept, emap)]
    else:
        grounds = [lift(g, emap) for g in minor_grounds(Mz, N)]
    if not any(popcount(g & X) <= 1 for g in grounds):
        return DoublyLabelReport(
            "precondition", [f"no N-minor of M\\{z} meets X in at most one element"]
        )

    labels = n_labels(M, N)
    zb = 1 << z
    X_prime = X & ~coclosure(M, Y)
    Y_prime = coclosure(M, Y) & ~zb
    details = []
    for x in elems(X_prime):
        if not labels.deletable[x]:
            details.append(f"element {x} of X' is not N-deletable")
    region = coclosure(M, X) & ~zb
    bad = sum(1 << x for x in elems(region) if not labels.contractible[x])
    if popcount(bad) > 1:
        details.append(f"{fmt_set(bad)} in cl*(X)-z are not N-contractible")
    elif bad:
        x = elems(bad)[0]
        if not (X_prime >> x & 1 and closure(M, Y_prime) >> x & 1):
            details.append(f"non-contractible {x} is not in X' n cl(Y')")
        if not coclosure(M, X_prime & ~bad) >> z & 1:
            details.append(f"z={z} is not in cl*(X'-{x})")
    status = "violated" if details else "holds"
    return DoublyLabelReport(status, details, X_prime, bad)
