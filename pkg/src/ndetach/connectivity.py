"""Connectivity function, separations, and small 3-connected structures."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from ndetach.matroid import (
    Matroid,
    MatroidError,
    SetFamily,
    circuits,
    closure,
    coclosure,
    cocircuits,
    contract,
    cosimplify,
    delete,
    dual,
    elems,
    fmt_set,
    popcount,
    simplify,
)


class NotThreeConnectedError(MatroidError):
    def __init__(self, M: Matroid, side: int):
        super().__init__(
            f"{M.name or 'matroid'} is not 3-connected: "
            f"({fmt_set(side)}, {fmt_set(M.ground & ~side)}) is a "
            f"{lam(M, side) + 1}-separation"
        )
        self.side = side


class InconsistencyError(MatroidError):
    """A well-known theorem failed on a concrete input; indicates a bug."""


@dataclass(frozen=True)
class Separation:
    side: int
    lam: int
    k: int

    @property
    def exact(self) -> bool:
        return self.lam == self.k - 1


@dataclass(frozen=True)
class GutsSeparation:
    """(X, {z}, Y): z is a guts element (vertical) or coguts element (cyclic)."""

    X: int
    z: int
    Y: int
    kind: str


@dataclass(frozen=True)
class Paddle:
    parts: tuple[int, int, int]


# -- connectivity function ---------------------------------------------------


def lam(M: Matroid, X: int) -> int:
    """lambda_M(X) = r(X) + r(E - X) - r(M)."""
    M.check(X)
    return M.r(X) + M.r(M.ground & ~X) - M.rank


def lambda_table(M: Matroid) -> np.ndarray:
    r = M.rank_table().astype(np.int16)
    return r + r[::-1] - M.rank


def local_connectivity(M: Matroid, X: int, Y: int) -> int:
    M.check(X | Y)
    return M.r(X) + M.r(Y) - M.r(X | Y)


def is_k_separating(M: Matroid, X: int, k: int) -> bool:
    return lam(M, X) <= k - 1


def is_k_separation(M: Matroid, X: int, k: int) -> bool:
    return (
        lam(M, X) <= k - 1
        and popcount(X) >= k
        and popcount(M.ground & ~X) >= k
    )


def enumerate_k_separations(M: Matroid, k: int) -> list[Separation]:
    if k < 1:
        raise ValueError("k must be positive")
    if M.n == 0:
        return []
    lt = lambda_table(M)
    out = []
    # canonical side: the one holding element 0
    for X in range(1, 1 << M.n, 2):
        lx = int(lt[X])
        if lx <= k - 1 and popcount(X) >= k and M.n - popcount(X) >= k:
            out.append(Separation(X, lx, k))
    out.sort(key=lambda s: (popcount(s.side), s.side))
    return out


def _first_separation(M: Matroid, below: int) -> Optional[int]:
    if M.n == 0:
        return None
    lt = lambda_table(M)
    for k in range(1, below):
        for X in range(1, 1 << M.n, 2):
            if lt[X] <= k - 1 and popcount(X) >= k and M.n - popcount(X) >= k:
                return X
    return None


def is_n_connected(M: Matroid, n: int) -> bool:
    if n < 2:
        raise ValueError("n must be at least 2")
    cache = M.__dict__.setdefault("_nconn", {})
    if n not in cache:
        cache[n] = _first_separation(M, n) is None
    return cache[n]


def is_3_connected(M: Matroid) -> bool:
    return is_n_connected(M, 3)


def require_3_connected(M: Matroid) -> None:
    side = _first_separation(M, 3)
    if side is not None:
        raise NotThreeConnectedError(M, side)


# -- vertical and cyclic 3-separations ---------------------------------------


def vertical_3_separations(M: Matroid) -> list[GutsSeparation]:
    """All (X, {z}, Y) with (X u z, Y) and (X, Y u z) vertical 3-separations
    and z in cl(X) n cl(Y).  X holds the least element of E - z."""
    require_3_connected(M)
    return _vertical(M, "vertical")


def _vertical(M: Matroid, kind: str) -> list[GutsSeparation]:
    out = []
    full = M.ground
    for z in range(M.n):
        rest = full & ~(1 << z)
        if not rest:
            continue
        low = rest & -rest
        others = rest & ~low
        sub = others
        while True:
            X = sub | low
            Y = rest & ~X
            if Y and _is_vertical_triple(M, X, z, Y):
                out.append(GutsSeparation(X, z, Y, kind))
            if sub == 0:
                break
            sub = (sub - 1) & others
    out.sort(key=lambda g: (g.z, popcount(g.X), g.X))
    return out


def _vertical_sep(M: Matroid, A: int, B: int) -> bool:
    return (
        lam(M, A) <= 2
        and popcount(A) >= 3
        and popcount(B) >= 3
        and M.r(A) >= 3
        and M.r(B) >= 3
    )


def _is_vertical_triple(M: Matroid, X: int, z: int, Y: int) -> bool:
    zb = 1 << z
    if not (_vertical_sep(M, X | zb, Y) and _vertical_sep(M, X, Y | zb)):
        return False
    return M.r(X | zb) == M.r(X) and M.r(Y | zb) == M.r(Y)


def is_vertical_3_separation(M: Matroid, X: int, z: int, Y: int) -> bool:
    if X & Y or (X | Y) >> z & 1 or (X | Y | 1 << z) != M.ground:
        return False
    return _is_vertical_triple(M, X, z, Y)


def is_cyclic_3_separation(M: Matroid, X: int, z: int, Y: int) -> bool:
    return is_vertical_3_separation(dual(M), X, z, Y)


def cyclic_3_separations(M: Matroid) -> list[GutsSeparation]:
    require_3_connected(M)
    return _vertical(dual(M), "cyclic")


# -- closures ----------------------------------------------------------------


def full_closure(M: Matroid, X: int) -> int:
    M.check(X)
    cur = X
    while True:
        nxt = coclosure(M, closure(M, cur))
        if nxt == cur:
            return cur
        cur = nxt


def is_fully_closed(M: Matroid, X: int) -> bool:
    return closure(M, X) == X and coclosure(M, X) == X


# -- small structures --------------------------------------------------------


def find_triangles(M: Matroid) -> SetFamily:
    return SetFamily(circuits(M).of_size(3), "triangles")


def find_triads(M: Matroid) -> SetFamily:
    return SetFamily(cocircuits(M).of_size(3), "triads")


def find_quads(M: Matroid) -> SetFamily:
    cocirc = set(cocircuits(M).of_size(4))
    return SetFamily(tuple(c for c in circuits(M).of_size(4) if c in cocirc), "quads")


def find_fans4(M: Matroid) -> list[tuple[int, int]]:
    """(triangle, triad) pairs whose union has four elements."""
    out = []
    for t in find_triangles(M):
        for s in find_triads(M):
            if popcount(t | s) == 4:
                out.append((t, s))
    return out


def find_segments(M: Matroid, k: int = 3) -> list[int]:
    """Maximal S with M|S isomorphic to U_{2,|S|}, |S| >= k."""
    nonloops = [e for e in range(M.n) if M.r(1 << e) == 1]
    out = []
    for F in _rank2_flats(M):
        pts = [e for e in nonloops if F >> e & 1]
        classes: list[list[int]] = []
        for e in pts:
            for cls in classes:
                if M.r(1 << e | 1 << cls[0]) == 1:
                    cls.append(e)
                    break
            else:
                classes.append([e])
        if len(classes) < max(k, 3):
            continue
        # one representative from each parallel class
        reps = [[]]
        for cls in classes:
            reps = [r + [e] for r in reps for e in cls]
        for r in reps:
            out.append(sum(1 << e for e in r))
    return sorted(set(out), key=lambda m: (popcount(m), m))


def _rank2_flats(M: Matroid) -> list[int]:
    flats = set()
    for a, b in combinations(range(M.n), 2):
        S = 1 << a | 1 << b
        if M.r(S) == 2:
            flats.add(closure(M, S))
    return sorted(flats)


def find_cosegments(M: Matroid, k: int = 3) -> list[int]:
    return find_segments(dual(M), k)


def find_paddles(M: Matroid) -> list[Paddle]:
    """Unordered partitions into three 3-separating parts, pairwise local
    connectivity 2."""
    lt = lambda_table(M)
    out = []
    full = M.ground
    if M.n < 3:
        return out
    # P1 holds element 0; P2 holds the least element outside P1.
    for P1 in range(1, 1 << M.n, 2):
        if lt[P1] > 2 or M.r(P1) < 2:
            continue
        rest = full & ~P1
        if not rest:
            continue
        low = rest & -rest
        others = rest & ~low
        sub = others
        while True:
            P2 = sub | low
            P3 = rest & ~P2
            if P3 and lt[P2] <= 2 and lt[P3] <= 2:
                if (
                    local_connectivity(M, P1, P2) == 2
                    and local_connectivity(M, P1, P3) == 2
                    and local_connectivity(M, P2, P3) == 2
                ):
                    out.append(Paddle((P1, P2, P3)))
            if sub == 0:
                break
            sub = (sub - 1) & others
    out.sort(key=lambda p: p.parts)
    return out


# -- Bixby -------------------------------------------------------------------


@dataclass(frozen=True)
class BixbyRecord:
    element: int
    si_contract_3conn: bool
    co_delete_3conn: bool


def bixby_classify(M: Matroid, e: int) -> BixbyRecord:
    require_3_connected(M)
    M.check(1 << e)
    si = simplify(contract(M, 1 << e)[0])[0]
    co = cosimplify(delete(M, 1 << e)[0])[0]
    rec = BixbyRecord(e, is_3_connected(si), is_3_connected(co))
    if not (rec.si_contract_3conn or rec.co_delete_3conn):
        raise InconsistencyError(
            f"Bixby's Lemma fails for element {e} of {M.name or M!r}"
        )
    return rec
