"""Random search for dichotomy instances whose structured set holds a triad
of M\\d.  Candidates are GF(p) matroids with a planted 4-element cocircuit
through d = 0 and optional coplanar points.

    python3 scripts/search_triad_case.py --trials 2000 --jobs 8
"""

from __future__ import annotations

import argparse
import random
from concurrent.futures import ProcessPoolExecutor

from ndetach.catalog import serialize_matroid, uniform, vector_matroid
from ndetach.connectivity import is_3_connected
from ndetach.detach import admissible_reports, find_structured_X, first_detachable_pair
from ndetach.matroid import MatroidError, elems
from ndetach.minors import ungrounded

N = uniform(2, 4)


def candidate(seed: int, n: int, r: int, p: int):
    rng = random.Random(seed)
    vecs = []
    for i in range(n):
        v = [rng.randrange(p) for _ in range(r)]
        if i >= 4:
            v[-1] = 0  # elements 4.. span the hyperplane, so {0,1,2,3} is a cocircuit
        elif v[-1] == 0:
            v[-1] = 1
        vecs.append(v)
    for _ in range(rng.randrange(4)):
        # put a hyperplane point into the plane of the triad elements 1,2,3
        x = rng.randrange(4, n)
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        c = (-(a * vecs[1][-1] + b * vecs[2][-1]) * pow(vecs[3][-1], p - 2, p)) % p
        vecs[x] = [(a * u + b * v + c * w) % p for u, v, w in zip(vecs[1], vecs[2], vecs[3])]
    for _ in range(rng.randrange(3)):
        # random extra coplanarity among hyperplane points
        i, j, k, x = rng.sample(range(4, n), 4)
        a, b, c = (rng.randrange(1, p) for _ in range(3))
        vecs[x] = [(a * u + b * v + c * w) % p for u, v, w in zip(vecs[i], vecs[j], vecs[k])]
    try:
        return vector_matroid(vecs, f"T{seed}", modulus=p)
    except MatroidError:
        return None


def examine(job):
    seed, n, r, p = job
    M = candidate(seed, n, r, p)
    if M is None or M.rank != r or not is_3_connected(M) or ungrounded(M, N):
        return seed, "filtered", None
    hits = []
    passed = False
    for rep in admissible_reports(M, N, 0):
        if not rep.ok:
            continue
        passed = True
        for Y in rep.feasible_Y:
            for sx in find_structured_X(M, N, 0, Y):
                if sx.contains_triad and sx.minimal:
                    hits.append((rep.d_prime, Y, sx.X))
    if not hits:
        return seed, "passed" if passed else "failed", None
    pair = first_detachable_pair(M, N)
    return seed, "triad", (serialize_matroid(M), hits, pair is not None)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--r", type=int, default=5)
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--jobs", type=int, default=4)
    args = ap.parse_args(argv)
    jobs = [(s, args.n, args.r, args.p) for s in range(args.start, args.start + args.trials)]
    tally: dict[str, int] = {}
    with ProcessPoolExecutor(max_workers=args.jobs) as ex:
        for seed, status, found in ex.map(examine, jobs, chunksize=4):
            tally[status] = tally.get(status, 0) + 1
            if found:
                text, hits, has_pair = found
                print(f"seed {seed}: pair={has_pair} hits={[(dp, elems(Y), elems(X)) for dp, Y, X in hits]}")
                print(text)
    print(tally)


if __name__ == "__main__":
    main()
