"""Blocks, panels, and extremality.

A pair of crossing walls H, E spans a codimension-2 wall whose carrier is a
*block*.  Each block has four codimension-1 faces, the *panels*; the panel
with abutting wall H, extremalising wall E and side s consists of the closed
cubes that are dual to H, not dual to E, and lie in the side-s halfspace of E.
Its *internal* edges are its H-dual edges.

The pair is *extremal in H on side s* when every H-dual edge on side s of E
lies in a square dual to both H and E; the side-s half of H then sits inside
the carrier of the codimension-2 wall, which is what makes the panel
collapsible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .complex import CubeComplex
from .errors import PreconditionError

__all__ = [
    "Block",
    "Panel",
    "SIDES",
    "build_panel",
    "codim2_hyperplanes",
    "extremal_panels",
    "find_extremal_panel",
    "is_extremal",
    "no_facing_panels",
]

SIDES = ("-", "+")


def codim2_hyperplanes(cx: CubeComplex) -> tuple[tuple[int, int], ...]:
    """Unordered pairs of walls that cross (share a square)."""
    pairs = set()
    for sq in cx.cube_vertexsets(2):
        h1, h2 = sorted(cx.cube_axes(sq))
        pairs.add((h1, h2))
    return tuple(sorted(pairs))


def hyperplanes_cross(cx: CubeComplex, h: int, e: int) -> bool:
    return tuple(sorted((h, e))) in set(codim2_hyperplanes(cx))


def is_extremal(cx: CubeComplex, h: int, e: int, side: str) -> bool:
    """Whether the codimension-2 wall H∩E is extremal in H on the given side
    of E: the side-s halfspace of the wall-complex of H must lie inside the
    carrier of H∩E there."""
    if side not in SIDES:
        raise PreconditionError(f"side must be one of {SIDES}, got {side!r}")
    if h == e or not hyperplanes_cross(cx, h, e):
        raise PreconditionError(f"hyperplanes {h} and {e} do not cross")
    plane_e = cx.hyperplane(e)
    chosen = plane_e.side(side)
    for u, v in cx.hyperplane(h).edges:
        if u in chosen and v in chosen:
            if e not in cx.edge_square_mates(u, v):
                return False
    return True


@dataclass(frozen=True)
class Block:
    """Carrier of a codimension-2 wall: the cubes dual to both walls."""

    first: int
    second: int
    cubes: tuple[frozenset, ...]
    maximal_cubes: frozenset

    @property
    def panel_descriptors(self) -> tuple[tuple[int, int, str], ...]:
        """The four (abutting, extremalising, side) faces of the block."""
        return (
            (self.first, self.second, "-"),
            (self.first, self.second, "+"),
            (self.second, self.first, "-"),
            (self.second, self.first, "+"),
        )


def block(cx: CubeComplex, h: int, e: int) -> Block:
    if h == e or not hyperplanes_cross(cx, h, e):
        raise PreconditionError(f"hyperplanes {h} and {e} do not cross")
    a, b = sorted((h, e))
    members = [
        vs
        for vs in cx.all_cube_vertexsets()
        if {a, b} <= cx.cube_axes(vs)
    ]
    maximal = frozenset(
        vs for vs in members if not any(vs < other for other in members)
    )
    return Block(first=a, second=b, cubes=tuple(members), maximal_cubes=maximal)


@dataclass(frozen=True)
class Panel:
    """An extremal panel.  Identity is the triple (abutting, extremalising,
    side): the same subcomplex can be a panel in several ways."""

    abutting: int
    extremalising: int
    side: str
    cube_set: frozenset = field(compare=False)
    internal_edges: frozenset = field(compare=False)
    vertex_set: frozenset = field(compare=False)
    block: Block = field(compare=False)

    @property
    def triple(self) -> tuple[int, int, str]:
        return (self.abutting, self.extremalising, self.side)

    def sort_key(self):
        return (self.abutting, self.extremalising, SIDES.index(self.side))

    def __repr__(self):
        return f"Panel(h{self.abutting}, e{self.extremalising}, {self.side})"


def build_panel(cx: CubeComplex, h: int, e: int, side: str) -> Panel:
    """The extremal panel abutted by H, extremalised by E, on one side of E;
    raises unless the pair is extremal there."""
    if not is_extremal(cx, h, e, side):
        raise PreconditionError(
            f"hyperplane pair ({h}, {e}) is not extremal on side {side!r}"
        )
    chosen = cx.hyperplane(e).side(side)
    members = []
    for vs in cx.all_cube_vertexsets():
        axes = cx.cube_axes(vs)
        if h in axes and e not in axes and vs <= chosen:
            members.append(vs)
    internal = frozenset(
        (u, v) for u, v in cx.hyperplane(h).edges if u in chosen and v in chosen
    )
    vertex_set = frozenset(v for vs in members for v in vs)
    return Panel(
        abutting=h,
        extremalising=e,
        side=side,
        cube_set=frozenset(members),
        internal_edges=internal,
        vertex_set=vertex_set,
        block=block(cx, h, e),
    )


def extremal_panels(cx: CubeComplex) -> tuple[Panel, ...]:
    """Every extremal panel, in canonical (abutting, extremalising, side)
    order."""
    out = []
    for a, b in codim2_hyperplanes(cx):
        for h, e in ((a, b), (b, a)):
            for side in SIDES:
                if is_extremal(cx, h, e, side):
                    out.append(build_panel(cx, h, e, side))
    return tuple(sorted(out, key=Panel.sort_key))


def find_extremal_panel(cx: CubeComplex) -> Panel | None:
    """Deterministic choice: the lowest extremal (H, E, side) triple.
    Returns None exactly when no two walls cross (the complex is a tree)."""
    pairs = codim2_hyperplanes(cx)
    candidates = sorted(
        itertools.chain.from_iterable(((a, b), (b, a)) for a, b in pairs)
    )
    for h, e in candidates:
        for side in SIDES:
            if is_extremal(cx, h, e, side):
                return build_panel(cx, h, e, side)
    if pairs:
        from .errors import InternalInvariantError

        raise InternalInvariantError(
            "walls cross but no extremal panel was found in a finite complex"
        )
    return None


def no_facing_panels(cx: CubeComplex, panels) -> bool:
    """True unless two disjoint panels of the family have blocks sharing a
    maximal cube (such a pair would get collapsed toward each other)."""
    panels = list(panels)
    for p, q in itertools.combinations(panels, 2):
        if p.vertex_set & q.vertex_set:
            continue
        if p.block.maximal_cubes & q.block.maximal_cubes:
            return False
    return True
