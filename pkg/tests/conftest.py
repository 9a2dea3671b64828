import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ndetach.catalog import builtin_catalog, vector_matroid  # noqa: E402
from ndetach.matroid import relabel  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

# criterion number -> (passed, detail); printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


@pytest.fixture(scope="session")
def by_name(catalog):
    return {e.name: e.matroid for e in catalog}


@pytest.fixture
def record():
    def _record(k: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[k] = (ok, detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})")


@st.composite
def vector_matroids(draw, max_n=7, max_rank=4):
    """Column matroids of random matrices over GF(2) or GF(3)."""
    p = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, max_rank))
    cols = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=r, max_size=r), min_size=n, max_size=n))
    if all(x == 0 for c in cols for x in c):
        cols[0][0] = 1
    return vector_matroid(cols, f"GF{p}", modulus=p)


@st.composite
def relabelled(draw, M_strategy):
    M = draw(M_strategy)
    perm = draw(st.permutations(range(M.n)))
    return M, tuple(perm), relabel(M, tuple(perm))
