"""Small-matroid connectivity toolkit for N-detachable pairs and particular 3-separators."""

from ndetach.matroid import (
    Matroid,
    SetFamily,
    bits,
    closure,
    coclosure,
    contract,
    corank_of,
    circuits,
    cocircuits,
    cosimplify,
    delete,
    dual,
    elems,
    is_isomorphic,
    minor,
    rank_of,
    simplify,
)

__all__ = [
    "Matroid",
    "SetFamily",
    "bits",
    "closure",
    "coclosure",
    "contract",
    "corank_of",
    "circuits",
    "cocircuits",
    "cosimplify",
    "delete",
    "dual",
    "elems",
    "is_isomorphic",
    "minor",
    "rank_of",
    "simplify",
]
