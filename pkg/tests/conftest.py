import itertools
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from panelcollapse.complex import CubeComplex
from panelcollapse.pocset import Wallspace

settings.register_profile("suite", max_examples=25, deadline=None)
settings.load_profile("suite")

DATA = Path(__file__).parent / "data"


@st.composite
def wallspaces(draw, max_points=6, max_walls=5):
    """Random finite wallspaces; their duals realize arbitrary small
    CAT(0) cube complexes."""
    n = draw(st.integers(min_value=2, max_value=max_points))
    points = [f"p{i}" for i in range(n)]
    k = draw(st.integers(min_value=1, max_value=max_walls))
    walls = []
    seen = set()
    for _ in range(k):
        bits = draw(
            st.lists(st.booleans(), min_size=n, max_size=n).filter(
                lambda bs: any(bs) and not all(bs)
            )
        )
        side = frozenset(p for p, b in zip(points, bits) if b)
        other = frozenset(points) - side
        key = min(
            (tuple(sorted(side)), tuple(sorted(other))),
            (tuple(sorted(other)), tuple(sorted(side))),
        )
        if key not in seen:
            seen.add(key)
            walls.append((side, other))
    return Wallspace.from_data(points, walls)


def hypercube_complex(d: int) -> CubeComplex:
    """The d-cube with vertices named by their coordinate bitstrings."""
    if d == 0:
        return CubeComplex(["0"], [])
    vs = ["".join(b) for b in itertools.product("01", repeat=d)]
    es = [
        (u, v)
        for u, v in itertools.combinations(vs, 2)
        if sum(a != b for a, b in zip(u, v)) == 1
    ]
    return CubeComplex(vs, es)


def grid_complex(w: int, h: int) -> CubeComplex:
    """The w-by-h grid of squares."""
    vs = [(i, j) for i in range(w + 1) for j in range(h + 1)]
    es = [((i, j), (i + 1, j)) for i in range(w) for j in range(h + 1)]
    es += [((i, j), (i, j + 1)) for i in range(w + 1) for j in range(h)]
    return CubeComplex(vs, es)


def path_complex(n_edges: int) -> CubeComplex:
    vs = list(range(n_edges + 1))
    return CubeComplex(vs, [(i, i + 1) for i in range(n_edges)])


def box_complex(*sides: int) -> CubeComplex:
    """Product of paths: a solid box of cubes with the given side lengths."""
    vs = list(itertools.product(*(range(s + 1) for s in sides)))
    es = []
    for v in vs:
        for axis in range(len(sides)):
            if v[axis] < sides[axis]:
                w = v[:axis] + (v[axis] + 1,) + v[axis + 1 :]
                es.append((v, w))
    return CubeComplex(vs, es)


@pytest.fixture(scope="session")
def cube3():
    return hypercube_complex(3)


@pytest.fixture(scope="session")
def cube4():
    return hypercube_complex(4)


@pytest.fixture(scope="session")
def square():
    return hypercube_complex(2)


@pytest.fixture(scope="session")
def domino():
    return grid_complex(2, 1)


@pytest.fixture(scope="session")
def strip3():
    return grid_complex(3, 1)


@pytest.fixture(scope="session")
def tree4():
    return CubeComplex(["r", "a", "b", "c"], [("r", "a"), ("r", "b"), ("b", "c")])
