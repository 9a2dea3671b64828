"""Build the separator host fixtures shipped in src/ndetach/data/.

Most 6-element separators P are placed in Q^4 (the double-quad in Q^5); the
cocircuits of the host inside P are the cocircuits of M/W on P, so the
kind is fixed by the circuits of M|P together with a 2-dimensional
subspace L = span(P) n span(W) that collapses P onto the right parallel
classes.  W is glued on as three generic vectors spanning L + <e_last>
(a triad), or as two vectors inside L.  The twisted cube-like and
Vamos-like hosts are not representable this way and are built from their
circuit-hyperplanes instead.

Run from the repository root:  python scripts/build_fixtures.py [--check]
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction as F
from pathlib import Path

from ndetach.catalog import (
    parse_matroid,
    principal_extension,
    save_matroid,
    sparse_paving,
    vamos,
    vector_matroid,
)
from ndetach.connectivity import find_paddles, is_3_connected
from ndetach.matroid import bits, fmt_set
from ndetach.separators import scan_all_separators

DATA = Path(__file__).resolve().parents[1] / "src" / "ndetach" / "data"


def add(*vs):
    return [sum(x) for x in zip(*vs)]


def scale(c, v):
    return [c * x for x in v]


def pad(v, width):
    return list(v) + [0] * (width - len(v))


def with_triad(P, L, coeffs=((1, 2, 1), (3, -1, 2), (2, 5, -3))):
    """P vectors in Q^k plus a triad W spanning L + <e_{k+1}>."""
    k = len(P[0])
    out = [pad(v, k + 1) for v in P]
    for a, b, c in coeffs:
        w = add(scale(a, L[0]), scale(b, L[1]))
        out.append(pad(w, k) + [c])
    return out


def with_plane(P, L, coeffs=((1, 2, 1), (3, -1, 2), (2, 5, -3), (-4, 1, 5))):
    """Four generic points in a plane through L: a 4-cocircuit, no triad."""
    return with_triad(P, L, coeffs)


def with_pair(P, L, coeffs=((1, 2), (3, -1))):
    """P vectors plus two points on the line L (no rank increase)."""
    out = [list(v) for v in P]
    for a, b in coeffs:
        out.append(add(scale(a, L[0]), scale(b, L[1])))
    return out


def cube_frame():
    # Legs {p1,p2}, {q1,q2}, {s1,s2} on three lines through the tip e1.
    t = [1, 0, 0, 0]
    p1, p2 = add(t, [0, 1, 0, 0]), add(t, [0, 3, 0, 0])
    q1, q2 = add(t, [0, 0, 2, 0]), add(t, [0, 0, -1, 0])
    s1, s2 = add(t, [0, 0, 0, 5]), add(t, [0, 0, 0, -2])
    return p1, p2, q1, q2, s1, s2


def spike_like_frame():
    L = ([1, 0, 0, 0], [0, 1, 2, 3])  # through the tip: each leg collapses
    return list(cube_frame()), L


def spike_like_host():
    return with_triad(*spike_like_frame())


def spike_like_plane_host():
    return with_plane(*spike_like_frame())


def skew_whiff_frame():
    s1, s2, t2, t1 = [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]
    u1, u2 = [1, 3, 2, 0], [2, 0, 4, 5]  # {s2,t1,u1,u2} dependent: 1*4 = 2*2
    L = ([1, -3, 0, 0], [0, 0, F(2, 5), 1])  # s1~s2, t1~t2, u1~u2
    return [s1, s2, t1, t2, u1, u2], L


def skew_whiff_host():
    return with_triad(*skew_whiff_frame())


def skew_whiff_plane_host():
    return with_plane(*skew_whiff_frame())


def elongated_quad_frame():
    q1, q2, q3, q4 = [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 0]
    # p-line passes through q1q2 n q3q4 = (1,1,0,0)
    p1, p2 = [1, 1, 0, 1], [2, 2, 0, -3]
    L = ([1, 0, 1, 0], add(p1, scale(-2, p2)))  # q1~q3, q2~q4, p1~p2
    return [p1, p2, q1, q2, q3, q4], L


def elongated_quad_host():
    return with_triad(*elongated_quad_frame())


def elongated_quad_plane_host():
    return with_plane(*elongated_quad_frame())


def double_quad_host():
    # Quad planes meet in x = e5; the diagonal points y1 = p1p3 n p2p4 and
    # y2 = q1q3 n q2q4 span L.
    e = [[int(i == j) for j in range(5)] for i in range(5)]
    p1, p3 = e[0], e[1]
    p2, p4 = add(e[0], scale(2, e[4])), add(e[1], e[4])
    q1, q3 = e[2], e[3]
    q2, q4 = add(e[2], scale(-3, e[4])), add(e[3], scale(-1, e[4]))
    y1 = add(p1, scale(-2, p3))
    y2 = add(q1, scale(-3, q3))
    return with_pair([p1, p2, p3, p4, q1, q2, q3, q4], (y1, y2))


def paddle_host():
    # Three petals of three points, each in a plane through the line <e1,e2>.
    return [
        [-2, 4, 5, 0, 0], [-3, 0, 5, 0, 0], [2, 5, 5, 0, 0],
        [-4, 4, 0, 1, 0], [2, -1, 0, 5, 0], [-2, -2, 0, 4, 0],
        [3, 3, 0, 0, 4], [1, 5, 0, 0, 2], [-2, 5, 0, 0, 2],
    ]


def twisted_cube_host():
    # No field works here: L would have to lie in the plane of the p and q
    # legs, merging them in M/W.  Use a sparse paving matroid with legs
    # p={0,1}, q={2,3}, s={4,5}, W={6,7}, then a point on the line W to
    # break the s <-> W symmetry.
    planes = [(0, 1, 4, 5), (2, 3, 4, 5), (0, 1, 2, 3), (0, 2, 6, 7), (1, 3, 6, 7)]
    return principal_extension(sparse_paving(8, 4, planes), bits((6, 7)), "TwistedCubeHost")


def vamos_like_host():
    # V8 carries two Vamos-like sets (a u b u c and a u b u d); a new point
    # on the line d leaves only the first 3-separating.
    return principal_extension(vamos(), bits((6, 7)), "VamosLikeHost")


BUILDERS = {
    "SpikeLikeHost": spike_like_host,
    "SkewWhiffHost": skew_whiff_host,
    "ElongatedQuadHost": elongated_quad_host,
    "DoubleQuadHost": double_quad_host,
    "PaddleHost": paddle_host,
    # ten-element hosts where the dichotomy hypotheses can hold
    "SpikeLikePlaneHost": spike_like_plane_host,
    "SkewWhiffPlaneHost": skew_whiff_plane_host,
    "ElongatedQuadPlaneHost": elongated_quad_plane_host,
}


# Eleven-element GF(7) hosts from scripts/search_triad_case.py (seeds 278
# and 298): a structured set of M\0 there holds a triad of M\0.
MODULAR = {
    "TriadCaseHostA": (
        [
            [2, 3, 2, 0, 3, 5], [5, 3, 2, 1, 3, 4], [1, 2, 2, 6, 2, 1], [3, 4, 0, 4, 3, 5],
            [6, 0, 1, 5, 3, 0], [4, 6, 4, 2, 5, 0], [6, 5, 1, 5, 2, 0], [3, 2, 3, 0, 1, 0],
            [4, 5, 0, 4, 3, 0], [1, 5, 1, 3, 5, 0], [0, 2, 1, 2, 3, 0],
        ],
        7,
    ),
    "TriadCaseHostB": (
        [
            [1, 4, 5, 4, 1, 4], [1, 2, 5, 6, 3, 3], [6, 3, 4, 4, 4, 5], [0, 2, 2, 4, 3, 1],
            [0, 5, 0, 3, 5, 0], [3, 4, 5, 4, 2, 0], [0, 5, 4, 6, 0, 0], [1, 5, 5, 2, 2, 0],
            [4, 4, 4, 1, 1, 0], [1, 5, 2, 6, 2, 0], [1, 1, 1, 2, 5, 0],
        ],
        7,
    ),
}


COMBINATORIAL = {
    "TwistedCubeHost": twisted_cube_host,
    "VamosLikeHost": vamos_like_host,
}


def build(name: str):
    if name in COMBINATORIAL:
        return COMBINATORIAL[name]()
    if name in MODULAR:
        vectors, p = MODULAR[name]
        return vector_matroid(vectors, name=name, modulus=p)
    return vector_matroid(BUILDERS[name](), name=name)


def describe(M) -> str:
    lines = [f"{M.name}: n={M.n} r={M.rank} 3-connected={is_3_connected(M)}"]
    for rep in scan_all_separators(M):
        lines.append(f"  {rep.kind.value:16s} P={fmt_set(rep.P)} dual_side={rep.dual_side}")
    for p in find_paddles(M):
        lines.append("  paddle " + " ".join(fmt_set(x) for x in p.parts))
    return "\n".join(lines)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with committed files instead of writing")
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args(argv)
    status = 0
    mats = [build(name) for name in [*BUILDERS, *MODULAR, *COMBINATORIAL]] + [vamos()]
    for M in mats:
        path = DATA / f"{M.name}.mtx"
        if args.check:
            if not path.exists() or parse_matroid(path.read_text()) != M:
                print(f"MISMATCH {path}")
                status = 1
        else:
            save_matroid(M, path)
        if not args.quiet:
            print(describe(M))
    return status


if __name__ == "__main__":
    sys.exit(main())
