"""Named constructions, the ``.mtx`` text format, and the built-in catalog."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Iterable, Optional, Sequence

from ndetach.matroid import (
    MAX_ELEMENTS,
    AxiomError,
    InvalidElementError,
    Matroid,
    MatroidError,
    bits,
    dual,
    elems,
)

NAME_RE = re.compile(r"[A-Za-z0-9_()+,-]+")


class ParseError(MatroidError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# -- constructions -----------------------------------------------------------


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n <= MAX_ELEMENTS:
        raise MatroidError(f"U({r},{n}) needs 0 <= r <= n <= {MAX_ELEMENTS}")
    return Matroid.from_bases(n, combinations(range(n), r), f"U({r},{n})")


def graphic(num_vertices: int, edges: Sequence[tuple[int, int]], name: str = "") -> Matroid:
    """Cycle matroid of a graph; element ``i`` is ``edges[i]``."""

    def forest_rank(subset):
        parent = list(range(num_vertices))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        rk = 0
        for i in subset:
            a, b = find(edges[i][0]), find(edges[i][1])
            if a != b:
                parent[a] = b
                rk += 1
        return rk

    m = len(edges)
    full = forest_rank(range(m))
    bases = [c for c in combinations(range(m), full) if forest_rank(c) == full]
    return Matroid.from_bases(m, bases, name)


def _wheel_edges(k: int) -> list[tuple[int, int]]:
    # Hub is vertex k; element 2i is the spoke to v_i, 2i+1 the rim edge v_i v_{i+1}.
    edges = []
    for i in range(k):
        edges.append((k, i))
        edges.append((i, (i + 1) % k))
    return edges


def wheel(k: int) -> Matroid:
    if k < 3 or 2 * k > MAX_ELEMENTS:
        raise MatroidError(f"wheel needs 3 <= k <= {MAX_ELEMENTS // 2}")
    return graphic(k + 1, _wheel_edges(k), f"W({k})")


def whirl(k: int) -> Matroid:
    w = wheel(k)
    rim = bits(2 * i + 1 for i in range(k))
    return Matroid(w.n, w.bases | {rim}, f"Whirl({k})")


def tipless_free_spike(r: int) -> Matroid:
    """Legs are {2i, 2i+1}; an r-set is a basis unless it holds two legs."""
    if r < 3 or 2 * r > MAX_ELEMENTS:
        raise MatroidError(f"spike rank must be in 3..{MAX_ELEMENTS // 2}")
    legs = [bits((2 * i, 2 * i + 1)) for i in range(r)]
    quads = [a | b for a, b in combinations(legs, 2)]
    bases = []
    for c in combinations(range(2 * r), r):
        m = bits(c)
        if not any(q & m == q for q in quads):
            bases.append(m)
    return Matroid(2 * r, frozenset(bases), f"Spike({r})")


def vamos() -> Matroid:
    """V8: pairs a={0,1}, b={2,3}, c={4,5}, d={6,7}; every union of two
    pairs except c u d is a non-spanning circuit."""
    a, b, c, d = (bits((2 * i, 2 * i + 1)) for i in range(4))
    planes = {a | b, a | c, a | d, b | c, b | d}
    bases = [bits(s) for s in combinations(range(8), 4) if bits(s) not in planes]
    return Matroid(8, frozenset(bases), "V8")


def sparse_paving(n: int, r: int, circuit_hyperplanes: Iterable[Iterable[int]], name: str = "") -> Matroid:
    """Rank-r matroid whose only non-spanning circuits are the given r-sets."""
    chs = {bits(c) for c in circuit_hyperplanes}
    bases = [bits(c) for c in combinations(range(n), r) if bits(c) not in chs]
    return Matroid(n, frozenset(bases), name)


def principal_extension(M: Matroid, flat: int, name: str = "") -> Matroid:
    """Add element ``M.n`` freely on the closure of ``flat``."""
    n = M.n
    bases = set(M.bases)
    for b in M.bases:
        for x in elems(b):
            rest = b & ~(1 << x)
            # rest + new is a basis iff flat is not spanned by rest
            if M.r(rest | flat) > M.r(rest):
                bases.add(rest | 1 << n)
    return Matroid(n + 1, frozenset(bases), name)


def _rank_of_columns(cols: Sequence[Sequence], modulus: Optional[int]) -> int:
    rows = [list(v) for v in cols]
    if not rows:
        return 0
    if modulus is None:
        rows = [[Fraction(x) for x in v] for v in rows]
    else:
        rows = [[x % modulus for x in v] for v in rows]
    rk = 0
    width = len(rows[0])
    for col in range(width):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        p = rows[rk][col]
        inv = (1 / p) if modulus is None else pow(p, -1, modulus)
        for i in range(len(rows)):
            if i != rk and rows[i][col] != 0:
                f = rows[i][col] * inv
                rows[i] = [
                    (a - f * b) if modulus is None else (a - f * b) % modulus
                    for a, b in zip(rows[i], rows[rk])
                ]
        rk += 1
    return rk


def vector_matroid(
    vectors: Sequence[Sequence], name: str = "", modulus: Optional[int] = None
) -> Matroid:
    """Column matroid of ``vectors`` over the rationals, or over GF(modulus)."""
    n = len(vectors)
    full = _rank_of_columns(vectors, modulus)
    bases = [
        bits(c)
        for c in combinations(range(n), full)
        if _rank_of_columns([vectors[i] for i in c], modulus) == full
    ]
    return Matroid(n, frozenset(bases), name)


# -- file format -------------------------------------------------------------


def serialize_matroid(M: Matroid) -> str:
    name = M.name or "unnamed"
    if not NAME_RE.fullmatch(name):
        raise MatroidError(f"name {name!r} is not representable in the file format")
    lines = [
        f"MATROID {name}",
        f"ELEMENTS {M.n}",
        f"RANK {M.rank}",
        f"BASES {len(M.bases)}",
    ]
    for b in sorted(elems(b) for b in M.bases):
        lines.append(" ".join(map(str, b)))
    return "\n".join(lines) + "\n"


def _header(line: str, lineno: int, keyword: str) -> str:
    if not line.startswith(keyword + " "):
        raise ParseError(lineno, 1, f"expected '{keyword} <value>'")
    value = line[len(keyword) + 1:]
    if value != value.strip() or not value:
        raise ParseError(lineno, len(keyword) + 2, "malformed value")
    return value


def _int_field(line: str, lineno: int, keyword: str) -> int:
    value = _header(line, lineno, keyword)
    if not value.isdigit():
        raise ParseError(lineno, len(keyword) + 2, f"{keyword} expects a non-negative integer")
    return int(value)


def parse_matroid(text: str) -> Matroid:
    if "\r" in text:
        col = text.split("\n")[text[: text.index("\r")].count("\n")].index("\r") + 1
        raise ParseError(text[: text.index("\r")].count("\n") + 1, col, "CR characters are not allowed")
    raw = text.split("\n")
    if raw and raw[-1] == "":
        raw.pop()
    body = [(i + 1, s) for i, s in enumerate(raw) if not s.startswith("#")]
    for lineno, s in body:
        if s != s.rstrip(" \t"):
            raise ParseError(lineno, len(s.rstrip(" \t")) + 1, "trailing whitespace")
    if len(body) < 4:
        at = body[-1][0] + 1 if body else 1
        raise ParseError(at, 1, "truncated header")
    (l1, s1), (l2, s2), (l3, s3), (l4, s4) = body[:4]
    name = _header(s1, l1, "MATROID")
    if not NAME_RE.fullmatch(name):
        raise ParseError(l1, 9, f"invalid name {name!r}")
    n = _int_field(s2, l2, "ELEMENTS")
    if n > MAX_ELEMENTS:
        raise ParseError(l2, 10, f"at most {MAX_ELEMENTS} elements are supported")
    rank = _int_field(s3, l3, "RANK")
    count = _int_field(s4, l4, "BASES")
    rows = body[4:]
    if len(rows) != count:
        at = rows[-1][0] if rows else l4
        raise ParseError(at, 1, f"expected {count} basis lines, found {len(rows)}")
    bases = []
    prev = None
    for lineno, s in rows:
        tokens = s.split(" ") if s else []
        items = []
        col = 1
        for tok in tokens:
            if not tok.isdigit():
                raise ParseError(lineno, col, f"bad element token {tok!r}")
            e = int(tok)
            if e >= n:
                raise InvalidElementError(f"line {lineno}: element {e} out of range 0..{n - 1}")
            if items and e <= items[-1]:
                raise ParseError(lineno, col, "elements must be strictly ascending")
            items.append(e)
            col += len(tok) + 1
        if len(items) != rank:
            raise AxiomError(f"line {lineno}: basis of size {len(items)} but RANK is {rank}")
        key = tuple(items)
        if prev is not None and key <= prev:
            raise ParseError(lineno, 1, "basis lines must be sorted and distinct")
        prev = key
        bases.append(items)
    return Matroid.from_bases(n, bases, name)


def load_matroid(path) -> Matroid:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return parse_matroid(fh.read())


def save_matroid(M: Matroid, path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(serialize_matroid(M))


# -- catalog -----------------------------------------------------------------

FIXTURE_FILES = {
    "spike_like": "SpikeLikeHost.mtx",
    "skew_whiff": "SkewWhiffHost.mtx",
    "elongated_quad": "ElongatedQuadHost.mtx",
    "double_quad": "DoubleQuadHost.mtx",
    "twisted_cube": "TwistedCubeHost.mtx",
    "vamos_like": "VamosLikeHost.mtx",
}

# Where each fixture's separator sits; checked on load.
FIXTURE_SETS = {
    "spike_like": (0, 1, 2, 3, 4, 5),
    "skew_whiff": (0, 1, 2, 3, 4, 5),
    "elongated_quad": (0, 1, 2, 3, 4, 5),
    "double_quad": (0, 1, 2, 3, 4, 5, 6, 7),
    "twisted_cube": (0, 1, 2, 3, 4, 5),
    "vamos_like": (0, 1, 2, 3, 4, 5),
}

OTHER_FILES = {
    "paddle": "PaddleHost.mtx",
}

VAMOS_FILE = "V8.mtx"

# Ten- and eleven-element hosts kept out of the main catalog; the dichotomy
# sweep adds them because below ten elements its hypotheses never hold on
# the catalog.  The TriadCase hosts exercise the triad case.
SWEEP_FILES = (
    "DoubleQuadHost.mtx",
    "SpikeLikePlaneHost.mtx",
    "SkewWhiffPlaneHost.mtx",
    "ElongatedQuadPlaneHost.mtx",
    "TriadCaseHostA.mtx",
    "TriadCaseHostB.mtx",
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matroid: Matroid
    tags: frozenset[str] = field(default_factory=frozenset)
    provenance: str = "construction"


def data_path(filename: str):
    return resources.files("ndetach") / "data" / filename


def load_fixture(filename: str) -> Matroid:
    return parse_matroid(data_path(filename).read_text(encoding="ascii"))


def _dual_name(name: str) -> str:
    m = re.fullmatch(r"U\((\d+),(\d+)\)", name)
    if m:
        r, n = int(m.group(1)), int(m.group(2))
        return f"U({n - r},{n})"
    return name[:-5] if name.endswith("-dual") else name + "-dual"


def _validate_fixture(kind: str, M: Matroid, filename: str) -> None:
    from ndetach.connectivity import is_3_connected
    from ndetach.separators import DETECTORS, Kind

    if not is_3_connected(M):
        raise MatroidError(f"fixture {filename} is not 3-connected")
    P = bits(FIXTURE_SETS[kind])
    target = Kind(_KIND_NAMES[kind])
    if not DETECTORS[target](M, P):
        raise MatroidError(f"fixture {filename}: {sorted(FIXTURE_SETS[kind])} is not {target.value}")


_KIND_NAMES = {
    "spike_like": "SpikeLike",
    "skew_whiff": "SkewWhiff",
    "elongated_quad": "ElongatedQuad",
    "double_quad": "DoubleQuad",
    "twisted_cube": "TwistedCubeLike",
    "vamos_like": "VamosLike",
}


def builtin_catalog() -> list[CatalogEntry]:
    """Deterministic list of catalog matroids; fixture files are validated on load."""
    base: list[CatalogEntry] = []
    for n in range(1, 10):
        for r in range(0, min(4, n) + 1):
            base.append(CatalogEntry(f"U({r},{n})", uniform(r, n), frozenset({"uniform"})))
    for k in range(3, 6):
        base.append(CatalogEntry(f"W({k})", wheel(k), frozenset({"wheel"})))
        base.append(CatalogEntry(f"Whirl({k})", whirl(k), frozenset({"whirl"})))
    for r in range(3, 6):
        base.append(CatalogEntry(f"Spike({r})", tipless_free_spike(r), frozenset({"spike"})))
    base.append(CatalogEntry("V8", vamos(), frozenset({"vamos"})))

    out = list(base)
    seen = {e.matroid for e in out}
    for e in base:
        d = dual(e.matroid)
        if d in seen:
            continue
        seen.add(d)
        name = _dual_name(e.name)
        tags = frozenset(e.tags | {"dual"}) if not name.startswith("U(") else e.tags
        out.append(CatalogEntry(name, d.renamed(name), tags))

    if load_fixture(VAMOS_FILE) != out[len(base) - 1].matroid:
        raise MatroidError(f"{VAMOS_FILE} does not match the built-in V8")
    for kind, filename in FIXTURE_FILES.items():
        m = load_fixture(filename)
        _validate_fixture(kind, m, filename)
        out.append(CatalogEntry(m.name, m, frozenset({f"fixture:{kind}"}), f"file({filename})"))
    for tag, filename in OTHER_FILES.items():
        m = load_fixture(filename)
        out.append(CatalogEntry(m.name, m, frozenset({f"file:{tag}"}), f"file({filename})"))

    names = [e.name for e in out]
    if len(names) != len(set(names)):
        raise MatroidError("catalog names are not unique")
    return out


def sweep_hosts() -> list[CatalogEntry]:
    out = []
    for filename in SWEEP_FILES:
        m = load_fixture(filename)
        out.append(CatalogEntry(m.name, m, frozenset({"sweep"}), f"file({filename})"))
    return out


def catalog_by_name() -> dict[str, CatalogEntry]:
    return {e.name: e for e in builtin_catalog()}


def parse_element_list(text: str) -> int:
    """'0,3,5' -> bit vector; raises ValueError on malformed input."""
    text = text.strip()
    if not text:
        return 0
    items: Iterable[int] = (int(tok) for tok in text.split(","))
    return bits(items)
