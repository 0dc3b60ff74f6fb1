"""Finite group actions on cube complexes and the equivariant collapse driver.

An automorphism is a vertex permutation preserving edges (and hence cubes,
walls, and medians).  A finite action is given by generators and closed to an
explicit element list.  An *inversion* is an element preserving a wall while
swapping its two halfspaces; collapse requires inversion-free actions, and
passing to the first cubical subdivision always removes inversions.

The driver repeatedly collapses the full orbit of one extremal panel, which
strictly decreases the lexicographic complexity (orbit counts of cubes of
each dimension at least 2), until the complex is a tree.
"""

from __future__ import annotations

import functools
import hashlib
import json
from dataclasses import dataclass, field

from .collapse import CollapseResult, collapse, hyperplane_provenance
from .complex import CubeComplex
from .errors import InternalInvariantError, PreconditionError, StructuralError
from .panels import Panel, build_panel, find_extremal_panel, no_facing_panels

__all__ = [
    "ActionReport",
    "Automorphism",
    "ComplexityVector",
    "GroupAction",
    "RunTrace",
    "StepResult",
    "check_action",
    "complexity",
    "equivariant_collapse_step",
    "push_action",
    "run_to_tree",
    "subdivide",
]

GROUP_SIZE_CAP = 20000


class Automorphism:
    """An edge-preserving vertex permutation of a fixed complex."""

    __slots__ = ("complex", "perm")

    def __init__(self, cx: CubeComplex, mapping):
        self.complex = cx
        if isinstance(mapping, tuple):
            perm = mapping
        else:
            mapping = dict(mapping)
            unknown = set(mapping) - set(cx.vertices)
            if unknown:
                raise StructuralError(f"mapping mentions unknown vertices {unknown}")
            perm = tuple(
                cx.index(mapping.get(v, v)) for v in cx.vertices
            )
        if sorted(perm) != list(range(cx.n)):
            raise StructuralError("vertex mapping is not a bijection")
        self.perm = perm

    def __call__(self, v):
        return self.complex.vertices[self.perm[self.complex.index(v)]]

    def apply_set(self, vs) -> frozenset:
        return frozenset(self(v) for v in vs)

    def apply_edge(self, edge) -> tuple:
        return self.complex.edge_key(self(edge[0]), self(edge[1]))

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        # (self * other)(v) == self(other(v))
        return Automorphism(
            self.complex, tuple(self.perm[i] for i in other.perm)
        )

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Automorphism(self.complex, tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def preserves_edges(self):
        """None if edge-preserving, else one broken edge."""
        for u, v in self.complex.edges:
            gu, gv = self(u), self(v)
            if self.complex.index(gv) not in {
                self.complex.index(x) for x in self.complex.neighbors(gu)
            }:
                return (u, v)
        return None

    def fixed_vertices(self) -> frozenset:
        return frozenset(
            v for i, v in enumerate(self.complex.vertices) if self.perm[i] == i
        )

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        moved = sum(1 for i, j in enumerate(self.perm) if i != j)
        return f"Automorphism(moves {moved} of {len(self.perm)})"


@dataclass(frozen=True)
class ActionReport:
    order: int
    edge_preserving: bool
    broken_edge: tuple | None
    inversion_pairs: tuple  # (element index, wall id)
    hyperplane_orbit_count: int

    @property
    def inversion_free(self) -> bool:
        return not self.inversion_pairs


class GroupAction:
    """A finite group of automorphisms, stored as an explicit element list."""

    def __init__(self, cx: CubeComplex, generators):
        self.complex = cx
        gens = []
        for g in generators:
            if not isinstance(g, Automorphism):
                g = Automorphism(cx, g)
            broken = g.preserves_edges()
            if broken is not None:
                raise StructuralError(
                    f"permutation breaks edge {broken[0]!r} {broken[1]!r}"
                )
            gens.append(g)
        self.generators = tuple(gens)
        self.elements = self._close(gens)
        self._wall_images = {}
        self._inversions = None

    def _close(self, gens) -> tuple:
        identity = Automorphism(
            self.complex, tuple(range(self.complex.n))
        )
        seen = {identity.perm: identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = s * g
                    if h.perm not in seen:
                        if len(seen) >= GROUP_SIZE_CAP:
                            raise PreconditionError(
                                f"group closure exceeds {GROUP_SIZE_CAP} elements"
                            )
                        seen[h.perm] = h
                        nxt.append(h)
            frontier = nxt
        return tuple(seen[p] for p in sorted(seen))

    @property
    def order(self) -> int:
        return len(self.elements)

    # -- walls under the action ------------------------------------------------

    def wall_image(self, g: Automorphism, h_id: int) -> int:
        """Id of the wall the element maps wall ``h_id`` onto."""
        key = (g.perm, h_id)
        cached = self._wall_images.get(key)
        if cached is not None:
            return cached
        cx = self.complex
        u, v = next(iter(cx.hyperplane(h_id).edges))
        image = cx.dual_hyperplane(g(u), g(v))
        self._wall_images[key] = image
        return image

    def side_image(self, g: Automorphism, h_id: int, side: str) -> tuple[int, str]:
        cx = self.complex
        target = self.wall_image(g, h_id)
        witness = next(iter(cx.hyperplane(h_id).side(side)))
        new_side = "+" if cx.sign(g(witness), target) > 0 else "-"
        return target, new_side

    def inversions(self) -> tuple:
        """(element index, wall id) pairs where the element preserves the wall
        but swaps its halfspaces."""
        if self._inversions is None:
            out = []
            for i, g in enumerate(self.elements):
                for h in self.complex.hyperplanes():
                    target, side = self.side_image(g, h.id, "+")
                    if target == h.id and side == "-":
                        out.append((i, h.id))
            self._inversions = tuple(out)
        return self._inversions

    @property
    def is_inversion_free(self) -> bool:
        return not self.inversions()

    def hyperplane_orbits(self) -> tuple[frozenset, ...]:
        ids = [h.id for h in self.complex.hyperplanes()]
        return _orbits(ids, lambda g, h: self.wall_image(g, h), self.generators)

    # -- orbits of cubes and panels ----------------------------------------------

    def cube_orbit_count(self, dim: int) -> int:
        cubes = list(self.complex.cube_vertexsets(dim))
        return len(_orbits(cubes, lambda g, vs: g.apply_set(vs), self.generators))

    def panel_orbit(self, panel: Panel) -> tuple[Panel, ...]:
        """Closure of one panel under the group, deduplicated by cube set and
        abutting wall (two triples carving the same subcomplex the same way
        collapse identically)."""
        out = {}
        for g in self.elements:
            h, _ = self.side_image(g, panel.abutting, "+")
            e, s = self.side_image(g, panel.extremalising, panel.side)
            try:
                image = build_panel(self.complex, h, e, s)
            except PreconditionError as exc:
                # extremality is automorphism-invariant, so this cannot happen
                raise InternalInvariantError(
                    f"image panel (h{h}, h{e}, {s}) is not extremal: {exc}"
                ) from exc
            out.setdefault((image.abutting, image.cube_set), image)
        return tuple(sorted(out.values(), key=Panel.sort_key))

    def transfer(self, other: CubeComplex) -> "GroupAction":
        """The same vertex permutations acting on another complex over the
        same vertex set; raises if they fail to preserve its edges."""
        if other.vertices != self.complex.vertices:
            raise PreconditionError("transfer requires the identical vertex set")
        try:
            return GroupAction(
                other, [Automorphism(other, g.perm) for g in self.generators]
            )
        except StructuralError as exc:
            raise InternalInvariantError(
                f"action does not survive onto the collapsed complex: {exc}"
            ) from exc


def check_action(cx: CubeComplex, permutations) -> ActionReport:
    """Validate generators and report closure size and inversion status."""
    gens = []
    for p in permutations:
        g = p if isinstance(p, Automorphism) else Automorphism(cx, p)
        broken = g.preserves_edges()
        if broken is not None:
            raise StructuralError(
                f"permutation breaks edge {broken[0]!r} {broken[1]!r}"
            )
        gens.append(g)
    action = GroupAction(cx, gens)
    inv = action.inversions()
    return ActionReport(
        order=action.order,
        edge_preserving=True,
        broken_edge=None,
        inversion_pairs=inv,
        hyperplane_orbit_count=len(action.hyperplane_orbits()),
    )


def _orbits(items, act, generators):
    remaining = set(items)
    orbits = []
    for x in items:
        if x not in remaining:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in generators:
                z = act(g, y)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        remaining -= orbit
        orbits.append(frozenset(orbit))
    return tuple(orbits)


# ---------------------------------------------------------------------------
# complexity
# ---------------------------------------------------------------------------


@functools.total_ordering
@dataclass(frozen=True)
class ComplexityVector:
    """Orbit counts of cubes of dimension >= 2, highest dimension first,
    compared lexicographically after aligning by cube dimension.  The zero
    (empty) vector characterizes trees."""

    entries: tuple[int, ...]
    top_dimension: int

    @property
    def is_zero(self) -> bool:
        return not self.entries or all(e == 0 for e in self.entries)

    def _aligned(self, other):
        width = max(len(self.entries), len(other.entries))
        pad = lambda t: (0,) * (width - len(t)) + t
        return pad(self.entries), pad(other.entries)

    def __eq__(self, other):
        if not isinstance(other, ComplexityVector):
            return NotImplemented
        a, b = self._aligned(other)
        return a == b

    def __lt__(self, other):
        a, b = self._aligned(other)
        return a < b

    def __hash__(self):
        stripped = tuple(
            self.entries[next((i for i, e in enumerate(self.entries) if e), len(self.entries)):]
        )
        return hash(stripped)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")" if self.entries else "()"


def complexity(cx: CubeComplex, action: GroupAction) -> ComplexityVector:
    """Orbit counts of d-cubes for d from dim down to 2."""
    dim = cx.dimension
    entries = tuple(action.cube_orbit_count(d) for d in range(dim, 1, -1))
    return ComplexityVector(entries=entries, top_dimension=dim)


# ---------------------------------------------------------------------------
# subdivision
# ---------------------------------------------------------------------------


def _subdivision_name(cx: CubeComplex, vs: frozenset) -> str:
    from .fileio import format_vertex

    return "|".join(format_vertex(v) for v in sorted(vs, key=cx.index))


def subdivide(cx: CubeComplex):
    """First cubical subdivision: one vertex per cube, edges along the
    codimension-1 face relation.  Returns (complex, pushforward) where the
    pushforward turns an automorphism-as-dict of the original complex into a
    vertex mapping of the subdivision.  Any action becomes inversion-free."""
    cubes = list(cx.all_cube_vertexsets())
    names = {vs: _subdivision_name(cx, vs) for vs in cubes}
    by_dim: dict[int, list] = {}
    for vs in cubes:
        by_dim.setdefault(len(vs).bit_length() - 1, []).append(vs)
    edges = []
    for d in sorted(by_dim):
        if d == 0:
            continue
        lower = {w for w in by_dim.get(d - 1, ())}
        for vs in by_dim[d]:
            for face in cx.subcubes(vs, d - 1):
                edges.append((names[face], names[vs]))
    sub = CubeComplex([names[vs] for vs in cubes], edges)

    def pushforward(mapping) -> dict:
        g = mapping if isinstance(mapping, Automorphism) else Automorphism(cx, mapping)
        return {
            names[vs]: names[g.apply_set(vs)] for vs in cubes
        }

    return sub, pushforward


def push_action(cx: CubeComplex, action: GroupAction):
    """Subdivide and carry the action over; the result has no inversions."""
    sub, push = subdivide(cx)
    new = GroupAction(sub, [push(g) for g in action.generators])
    return sub, new


# ---------------------------------------------------------------------------
# the driver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepResult:
    result: CollapseResult = field(repr=False)
    action: GroupAction = field(repr=False)
    panel_triple: tuple
    orbit_size: int
    complexity_before: ComplexityVector
    complexity_after: ComplexityVector


def equivariant_collapse_step(cx: CubeComplex, action: GroupAction):
    """Collapse the orbit of the canonical extremal panel.

    Returns None when the complex is already a tree.  Requires an
    inversion-free action (subdivide first otherwise); guarantees the output
    action is edge-preserving, inversion-free, and of strictly lower
    complexity.
    """
    if action.complex is not cx and (
        action.complex.vertices != cx.vertices
        or action.complex.edges != cx.edges
    ):
        raise PreconditionError("action does not act on this complex")
    inv = action.inversions()
    if inv:
        raise PreconditionError(
            f"action inverts hyperplane {inv[0][1]}; subdivide first"
        )
    panel = find_extremal_panel(cx)
    if panel is None:
        return None
    orbit = action.panel_orbit(panel)
    if not no_facing_panels(cx, orbit):
        raise InternalInvariantError(
            "orbit of an extremal panel under an inversion-free action "
            "has facing panels"
        )
    before = complexity(cx, action)
    result = collapse(cx, orbit)
    new_action = action.transfer(result.output_complex)
    new_inv = new_action.inversions()
    if new_inv:
        raise InternalInvariantError(
            f"collapse introduced an inversion on output wall {new_inv[0][1]}"
        )
    after = complexity(result.output_complex, new_action)
    if not after < before:
        raise InternalInvariantError(
            f"complexity did not strictly decrease: {before} -> {after}"
        )
    return StepResult(
        result=result,
        action=new_action,
        panel_triple=panel.triple,
        orbit_size=len(orbit),
        complexity_before=before,
        complexity_after=after,
    )


@dataclass(frozen=True)
class RunTrace:
    """Full record of an iterated equivariant collapse down to a tree."""

    initial_complex: CubeComplex = field(repr=False)
    final_complex: CubeComplex = field(repr=False)
    final_action: GroupAction = field(repr=False)
    steps: tuple  # of StepResult
    edge_origins: dict = field(repr=False)  # final edge -> original wall ids

    @property
    def step_count(self) -> int:
        return len(self.steps)

    def provenance_digest(self) -> str:
        payload = json.dumps(
            sorted(
                (repr(e), sorted(hs)) for e, hs in self.edge_origins.items()
            )
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:12]

    def lines(self) -> list[str]:
        out = []
        for i, s in enumerate(self.steps, 1):
            oc = s.result.output_complex
            counts = " ".join(
                f"{label}={c}"
                for label, c in zip(_count_labels(len(oc.cube_counts)), oc.cube_counts)
            )
            out.append(
                f"step {i}: panel=(h{s.panel_triple[0]},h{s.panel_triple[1]},"
                f"{s.panel_triple[2]}) orbit={s.orbit_size} "
                f"complexity {s.complexity_before} -> {s.complexity_after} {counts}"
            )
        fc = self.final_complex
        out.append(f"tree: V={fc.cube_counts[0]} E={fc.cube_counts[1] if len(fc.cube_counts) > 1 else 0}")
        out.append(f"provenance: {self.provenance_digest()}")
        return out


def _count_labels(k):
    base = ["V", "E", "F", "C"]
    return base[:k] + [f"D{d}" for d in range(4, k)]


def run_to_tree(cx: CubeComplex, action: GroupAction) -> RunTrace:
    """Iterate equivariant collapse until no extremal panel remains.

    Tracks, through every step, the set of original walls each surviving or
    diagonal edge crosses.  Verifies termination within the initial cube
    count, that the result is a tree, and that each element's fixed vertices
    are untouched.
    """
    initial = cx
    initial_action = action
    limit = sum(cx.cube_counts)
    origins = {e: frozenset({cx.dual_hyperplane(*e)}) for e in cx.edges}
    fixed_before = [g.fixed_vertices() for g in action.elements]
    steps = []
    while True:
        step = equivariant_collapse_step(cx, action)
        if step is None:
            break
        if len(steps) >= limit:
            raise InternalInvariantError(
                f"collapse failed to terminate within {limit} steps"
            )
        result = step.result
        # lift per-wall origins: all edges of a wall class carry equal origins
        lift = {}
        for plane in cx.hyperplanes():
            sets = {origins[e] for e in plane.edges}
            if len(sets) != 1:
                raise InternalInvariantError(
                    f"wall {plane.id} has inconsistent composed origins"
                )
            lift[plane.id] = next(iter(sets))
        new_origins = {}
        for e in result.output_complex.edges:
            crossed = result.edge_provenance[e]
            new_origins[e] = frozenset().union(*(lift[h] for h in crossed))
        origins = new_origins
        hyperplane_provenance(result)  # enforce the per-step invariant
        steps.append(step)
        cx = result.output_complex
        action = step.action
    if not cx.is_tree():
        raise InternalInvariantError("driver stopped on a complex that is not a tree")
    fixed_after = [g.fixed_vertices() for g in action.elements]
    if fixed_before != fixed_after:
        raise InternalInvariantError("fixed vertex sets changed during the run")
    return RunTrace(
        initial_complex=initial,
        final_complex=cx,
        final_action=action,
        steps=tuple(steps),
        edge_origins=origins,
    )
