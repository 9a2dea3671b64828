"""Matroids on at most 16 elements, stored by their basis family.

Element sets are plain ``int`` bit vectors throughout: bit ``i`` set means
element ``i`` is in the set.  ``bits`` and ``elems`` convert to and from
iterables.  Minors are re-indexed densely and come back with an
``ElementMap``: a tuple whose ``i``-th entry is the original label of the
minor's element ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

import numpy as np

MAX_ELEMENTS = 16

ElementMap = tuple[int, ...]


class MatroidError(ValueError):
    pass


class InvalidElementError(MatroidError):
    pass


class AxiomError(MatroidError):
    def __init__(self, message: str, pair: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


def bits(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        if i < 0:
            raise InvalidElementError(f"negative element {i}")
        mask |= 1 << i
    return mask


def elems(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def fmt_set(mask: int) -> str:
    return "{" + ",".join(map(str, elems(mask))) + "}"


def subsets_of(mask: int):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def k_subsets(mask: int, k: int):
    for combo in combinations(elems(mask), k):
        yield bits(combo)


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int8)
    for i in range(n):
        pc.reshape(-1, 2, 1 << i)[:, 1, :] += 1
    return pc


@dataclass(frozen=True, eq=False)
class Matroid:
    """A matroid given by its bases.

    Construction checks the basis axioms and raises ``AxiomError`` on a
    family that is not the basis family of a matroid.  Instances are
    immutable; the rank table is built lazily on first use.
    """

    n: int
    bases: frozenset[int]
    name: str = ""

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ELEMENTS:
            raise MatroidError(f"element count {self.n} outside 0..{MAX_ELEMENTS}")
        if not self.bases:
            raise AxiomError("a matroid needs at least one basis")
        full = (1 << self.n) - 1
        sizes = set()
        for b in self.bases:
            if b & ~full:
                raise InvalidElementError(
                    f"basis {fmt_set(b)} uses an element >= {self.n}"
                )
            sizes.add(popcount(b))
        if len(sizes) != 1:
            raise AxiomError(f"bases of unequal size {sorted(sizes)}")
        if not self._locally_submodular():
            raise AxiomError(
                "basis exchange fails for bases "
                f"{fmt_set(self._exchange_violation()[0])} and "
                f"{fmt_set(self._exchange_violation()[1])}",
                pair=self._exchange_violation(),
            )

    # -- validation -------------------------------------------------------

    def _locally_submodular(self) -> bool:
        # The rank function induced by the down-closure of an equicardinal
        # family is a matroid rank iff r(S+e) + r(S+f) >= r(S+e+f) + r(S).
        r = self._table.astype(np.int16)
        for e in range(self.n):
            for f in range(e + 1, self.n):
                v = r.reshape(-1, 2, 1 << (f - e - 1), 2, 1 << e)
                s = v[:, 0, :, 0, :]
                se = v[:, 0, :, 1, :]
                sf = v[:, 1, :, 0, :]
                sef = v[:, 1, :, 1, :]
                if np.any(se + sf < sef + s):
                    return False
        return True

    def _exchange_violation(self) -> tuple[int, int]:
        for b1 in sorted(self.bases):
            for b2 in sorted(self.bases):
                for x in elems(b1 & ~b2):
                    if not any(
                        (b1 & ~(1 << x)) | (1 << y) in self.bases
                        for y in elems(b2 & ~b1)
                    ):
                        return b1, b2
        raise AssertionError("no exchange violation found")

    # -- rank machinery ---------------------------------------------------

    @cached_property
    def _table(self) -> np.ndarray:
        n = self.n
        size = 1 << n
        indep = np.zeros(size, dtype=bool)
        indep[np.fromiter(self.bases, dtype=np.int64)] = True
        for e in range(n):
            v = indep.reshape(-1, 2, 1 << e)
            v[:, 0, :] |= v[:, 1, :]
        r = np.where(indep, _popcounts(n), 0).astype(np.int8)
        for e in range(n):
            v = r.reshape(-1, 2, 1 << e)
            np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
        r.setflags(write=False)
        return r

    @cached_property
    def rank(self) -> int:
        return popcount(next(iter(self.bases)))

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def check(self, S: int) -> int:
        if S < 0 or S >> self.n:
            raise InvalidElementError(
                f"set {fmt_set(S) if S >= 0 else S} is not inside E = {{0..{self.n - 1}}}"
            )
        return S

    def r(self, S: int) -> int:
        return int(self._table[self.check(S)])

    def rank_table(self) -> np.ndarray:
        """Read-only array of r(S) for every S in 0 .. 2**n - 1."""
        return self._table

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self.bases == other.bases

    def __hash__(self):
        return hash((self.n, self.bases))

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<Matroid {label}n={self.n} r={self.rank} bases={len(self.bases)}>"

    def renamed(self, name: str) -> "Matroid":
        return Matroid._trusted(self.n, self.bases, name)

    @classmethod
    def _trusted(cls, n: int, bases: frozenset[int], name: str = "") -> "Matroid":
        # Skips validation; only for families derived from a valid matroid.
        m = cls.__new__(cls)
        object.__setattr__(m, "n", n)
        object.__setattr__(m, "bases", bases)
        object.__setattr__(m, "name", name)
        return m

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]], name: str = "") -> "Matroid":
        return cls(n, frozenset(bits(b) for b in bases), name)


# -- rank and closure ------------------------------------------------------


def rank_of(M: Matroid, S: int) -> int:
    return M.r(S)


def corank_of(M: Matroid, S: int) -> int:
    M.check(S)
    return popcount(S) + M.r(M.ground & ~S) - M.rank


def is_independent(M: Matroid, S: int) -> bool:
    return M.r(S) == popcount(S)


def closure(M: Matroid, S: int) -> int:
    rs = M.r(S)
    out = S
    for e in range(M.n):
        if not S >> e & 1 and M.r(S | 1 << e) == rs:
            out |= 1 << e
    return out


def coclosure(M: Matroid, S: int) -> int:
    cs = corank_of(M, S)
    out = S
    for e in range(M.n):
        if not S >> e & 1 and corank_of(M, S | 1 << e) == cs:
            out |= 1 << e
    return out


# -- duality and minors ------------------------------------------------------


def dual(M: Matroid) -> Matroid:
    full = M.ground
    if not M.name:
        name = ""
    elif M.name.endswith("-dual"):
        name = M.name[:-5]
    else:
        name = M.name + "-dual"
    return Matroid._trusted(M.n, frozenset(full & ~b for b in M.bases), name)


def _reindex(mask: int, keep: ElementMap) -> int:
    out = 0
    for new, old in enumerate(keep):
        if mask >> old & 1:
            out |= 1 << new
    return out


def lift(mask: int, emap: ElementMap) -> int:
    """Translate a set of minor labels back to the original labels."""
    out = 0
    for new, old in enumerate(emap):
        if mask >> new & 1:
            out |= 1 << old
    return out


def lower(mask: int, emap: ElementMap) -> int:
    """Translate original labels into minor labels (dropping removed ones)."""
    return _reindex(mask, emap)


def minor(M: Matroid, delete_set: int = 0, contract_set: int = 0) -> tuple[Matroid, ElementMap]:
    """M / contract_set \\ delete_set, re-indexed, with its element map."""
    if delete_set & contract_set:
        raise MatroidError("delete and contract sets overlap")
    M.check(delete_set | contract_set)
    keep_mask = M.ground & ~(delete_set | contract_set)
    keep = elems(keep_mask)
    indep = _basis_of(M, contract_set)
    cands = [b & keep_mask for b in M.bases if b & indep == indep]
    top = max(popcount(c) for c in cands)
    new_bases = frozenset(_reindex(c, keep) for c in cands if popcount(c) == top)
    return Matroid._trusted(len(keep), new_bases), keep


def _basis_of(M: Matroid, S: int) -> int:
    out = 0
    for e in elems(S):
        if M.r(out | 1 << e) > popcount(out):
            out |= 1 << e
    return out


def delete(M: Matroid, S: int) -> tuple[Matroid, ElementMap]:
    return minor(M, delete_set=S)


def contract(M: Matroid, S: int) -> tuple[Matroid, ElementMap]:
    return minor(M, contract_set=S)


def restrict(M: Matroid, S: int) -> tuple[Matroid, ElementMap]:
    return delete(M, M.ground & ~S)


# -- circuits ----------------------------------------------------------------


@dataclass(frozen=True)
class SetFamily:
    members: tuple[int, ...]
    kind: str

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, S):
        return S in self.members

    def of_size(self, k: int) -> tuple[int, ...]:
        return tuple(m for m in self.members if popcount(m) == k)

    def inside(self, S: int) -> tuple[int, ...]:
        return tuple(m for m in self.members if m & ~S == 0)


def _circuit_masks(M: Matroid) -> tuple[int, ...]:
    r = M.rank_table()
    pc = _popcounts(M.n)
    indep = r == pc
    circ = ~indep
    for e in range(M.n):
        v_c = circ.reshape(-1, 2, 1 << e)
        v_i = indep.reshape(-1, 2, 1 << e)
        v_c[:, 1, :] &= v_i[:, 0, :]
    idx = np.flatnonzero(circ)
    return tuple(sorted(map(int, idx), key=lambda m: (popcount(m), m)))


def circuits(M: Matroid) -> SetFamily:
    return _cached_family(M, "circuits")


def cocircuits(M: Matroid) -> SetFamily:
    return _cached_family(M, "cocircuits")


def _cached_family(M: Matroid, kind: str) -> SetFamily:
    cache = M.__dict__.setdefault("_families", {})
    if kind not in cache:
        src = M if kind == "circuits" else dual(M)
        cache[kind] = SetFamily(_circuit_masks(src), kind)
    return cache[kind]


def loops(M: Matroid) -> int:
    return bits(e for e in range(M.n) if M.r(1 << e) == 0)


def coloops(M: Matroid) -> int:
    return loops(dual(M))


def parallel_classes(M: Matroid) -> list[int]:
    """Parallel classes of non-loop elements, in order of least element."""
    seen = loops(M)
    out = []
    for e in range(M.n):
        if seen >> e & 1:
            continue
        cls = 1 << e
        for f in range(e + 1, M.n):
            if not seen >> f & 1 and M.r(1 << e | 1 << f) == 1:
                cls |= 1 << f
        seen |= cls
        out.append(cls)
    return out


def series_classes(M: Matroid) -> list[int]:
    return parallel_classes(dual(M))


def simplify(M: Matroid) -> tuple[Matroid, ElementMap]:
    """si(M): drop loops and all but the least element of each parallel class."""
    drop = loops(M)
    for cls in parallel_classes(M):
        drop |= cls & ~(cls & -cls)
    return delete(M, drop)


def cosimplify(M: Matroid) -> tuple[Matroid, ElementMap]:
    """co(M): contract coloops and all but the least element of each series class."""
    drop = coloops(M)
    for cls in series_classes(M):
        drop |= cls & ~(cls & -cls)
    return contract(M, drop)


# -- isomorphism -------------------------------------------------------------


def _degrees(M: Matroid) -> list[int]:
    return [sum(1 for b in M.bases if b >> e & 1) for e in range(M.n)]


def _signature(M: Matroid) -> list[tuple]:
    circs = circuits(M)
    cocircs = cocircuits(M)
    deg = _degrees(M)
    sig = []
    for e in range(M.n):
        cs = tuple(sorted(popcount(c) for c in circs if c >> e & 1))
        ks = tuple(sorted(popcount(c) for c in cocircs if c >> e & 1))
        sig.append((deg[e], cs, ks))
    return sig


def is_isomorphic(M1: Matroid, M2: Matroid) -> Optional[ElementMap]:
    """A bijection ``f`` (``f[e]`` is the image of ``e``) carrying the bases
    of ``M1`` onto those of ``M2``, or ``None``.

    Backtracking over element images, restricted to elements with equal
    signatures, and pruned by comparing ranks of every subset of the
    partial domain against its image.
    """
    if M1.n != M2.n or M1.rank != M2.rank or len(M1.bases) != len(M2.bases):
        return None
    s1, s2 = _signature(M1), _signature(M2)
    if sorted(s1) != sorted(s2):
        return None
    n = M1.n
    r1, r2 = M1.rank_table(), M2.rank_table()
    # Map rarer signatures first: smaller candidate lists prune earlier.
    freq: dict = {}
    for s in s1:
        freq[s] = freq.get(s, 0) + 1
    order = sorted(range(n), key=lambda e: (freq[s1[e]], s1[e], e))
    image = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        # Check all subsets of order[:k+1] containing order[k].
        e = order[k]
        fe = image[e]
        prev = order[:k]
        for sub in range(1 << k):
            a = 1 << e
            b = 1 << fe
            for j in range(k):
                if sub >> j & 1:
                    a |= 1 << prev[j]
                    b |= 1 << image[prev[j]]
            if r1[a] != r2[b]:
                return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        e = order[k]
        for f in range(n):
            if used[f] or s2[f] != s1[e]:
                continue
            image[e] = f
            used[f] = True
            if consistent(k) and extend(k + 1):
                return True
            used[f] = False
            image[e] = -1
        return False

    if not extend(0):
        return None
    f = tuple(image)
    if frozenset(_apply(b, f) for b in M1.bases) != M2.bases:
        raise AssertionError("isomorphism search produced an invalid map")
    return f


def _apply(mask: int, f: ElementMap) -> int:
    out = 0
    for e, fe in enumerate(f):
        if mask >> e & 1:
            out |= 1 << fe
    return out


def relabel(M: Matroid, f: ElementMap) -> Matroid:
    """Image of ``M`` under the permutation ``f`` of its ground set."""
    if sorted(f) != list(range(M.n)):
        raise MatroidError("relabelling must be a permutation of the ground set")
    return Matroid._trusted(M.n, frozenset(_apply(b, f) for b in M.bases), M.name)


def apply_map(mask: int, f: ElementMap) -> int:
    return _apply(mask, f)
