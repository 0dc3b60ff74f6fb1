"""Brute-force oracle for fundaments, independent of the library's algorithm.

Everything here is recomputed literally from first principles on vertex
bitstrings of a single hypercube: panels from their (abutting, extremalising,
side) triples, internality by checking whole parallel classes, persistent
corners by inspecting incident edges, deletions by union-find over overlapping
completely external subcubes, and the fundament by the explicit case split
(deletion when connected; face pieces, diagonals over the salient cube, and
leftover completely external cubes otherwise).

Cells are either ('cube', vertex frozenset) or
('diag', salient w, opposite copy, separator axis frozenset).
"""

import itertools


def cube_vertices(d):
    return [tuple(bits) for bits in itertools.product((0, 1), repeat=d)]


def subcubes(d):
    """All faces of the d-cube as (free axes, fixed assignment) vertex sets."""
    out = []
    for free_size in range(d + 1):
        for free in itertools.combinations(range(d), free_size):
            fixed = [i for i in range(d) if i not in free]
            for values in itertools.product((0, 1), repeat=len(fixed)):
                members = []
                for bits in itertools.product((0, 1), repeat=free_size):
                    v = [0] * d
                    for axis, b in zip(free, bits):
                        v[axis] = b
                    for axis, b in zip(fixed, values):
                        v[axis] = b
                    members.append(tuple(v))
                out.append(frozenset(members))
    return sorted(set(out), key=lambda s: (len(s), sorted(s)))


def edges_of(cube):
    return [
        frozenset((u, v))
        for u, v in itertools.combinations(sorted(cube), 2)
        if sum(a != b for a, b in zip(u, v)) == 1
    ]


def edge_axis(edge):
    u, v = sorted(edge)
    return next(i for i in range(len(u)) if u[i] != v[i])


def axes_of(cube):
    return frozenset(edge_axis(e) for e in edges_of(cube))


def panel_internal_edges(d, h, e, side):
    """Edges dual to axis h whose endpoints sit on the given side of axis e."""
    out = set()
    for edge in edges_of(frozenset(cube_vertices(d))):
        if edge_axis(edge) != h:
            continue
        if all(v[e] == side for v in edge):
            out.add(edge)
    return frozenset(out)


def panel_vertices(d, h, e, side):
    return frozenset(v for edge in panel_internal_edges(d, h, e, side) for v in edge)


def all_panels(d):
    """(h, e, side) triples; inside one cube every pair is extremal."""
    return [
        (h, e, side)
        for h in range(d)
        for e in range(d)
        if h != e
        for side in (0, 1)
    ]


def no_facing(d, family):
    """No two disjoint panels (all blocks share the cube itself)."""
    for p, q in itertools.combinations(family, 2):
        if not panel_vertices(d, *p) & panel_vertices(d, *q):
            return False
    return True


class OracleWorld:
    """All derived data for one panel family on the d-cube."""

    def __init__(self, d, family):
        self.d = d
        self.family = list(family)
        self.internal_by_panel = {
            p: panel_internal_edges(d, *p) for p in self.family
        }
        self.internal_edges = frozenset().union(
            frozenset(), *self.internal_by_panel.values()
        )
        self.all_subcubes = subcubes(d)
        self._fundaments = {}

    # -- classification, straight from the definitions ------------------------

    def edge_internal(self, edge):
        return edge in self.internal_edges

    def is_internal(self, cube):
        for p, internal in self.internal_by_panel.items():
            for axis in axes_of(cube):
                parallel_class = [
                    e for e in edges_of(cube) if edge_axis(e) == axis
                ]
                if parallel_class and all(e in internal for e in parallel_class):
                    return True
        return False

    def is_completely_external(self, cube):
        return not any(self.edge_internal(e) for e in edges_of(cube))

    def deletion(self, cube):
        return [
            s
            for s in self.all_subcubes
            if s <= cube and self.is_completely_external(s)
        ]

    def deletion_connected(self, cube):
        cells = self.deletion(cube)
        parent = list(range(len(cells)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j in itertools.combinations(range(len(cells)), 2):
            if cells[i] & cells[j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
        return len({find(i) for i in range(len(cells))}) <= 1

    # -- persistent and salient, straight from the definitions -----------------

    def persistent_corners(self, cube):
        out = set()
        for v in cube:
            incident = [e for e in edges_of(cube) if v in e]
            if not any(self.edge_internal(e) for e in incident):
                out.add(v)
        return out

    def smallest_subcube_containing(self, cube, vertices):
        vertices = list(vertices)
        agree = {}
        for axis in range(self.d):
            values = {v[axis] for v in vertices}
            if len(values) == 1:
                agree[axis] = next(iter(values))
        return frozenset(
            v
            for v in cube
            if all(v[a] == b for a, b in agree.items())
        )

    def persistent_subcube(self, cube):
        corners = self.persistent_corners(cube)
        assert corners, "external cube with no persistent corner"
        return self.smallest_subcube_containing(cube, corners)

    def salient_data(self, cube):
        h = self.persistent_subcube(cube)
        h_axes = axes_of(h)
        cube_axes = axes_of(cube)
        internal_axes = {
            edge_axis(e) for e in edges_of(cube) if self.edge_internal(e)
        }
        separators = frozenset(
            a for a in cube_axes if a not in h_axes and a in internal_axes
        )

        def flip(v):
            return tuple(
                (1 - b) if i in separators else b for i, b in enumerate(v)
            )

        hbar = frozenset(flip(v) for v in h)
        return h, hbar, separators, flip

    # -- the fundament, by the explicit case analysis -------------------------

    def fundament(self, cube):
        if cube in self._fundaments:
            return self._fundaments[cube]
        if self.is_internal(cube) or self.deletion_connected(cube):
            cells = {("cube", s) for s in self.deletion(cube)}
            self._fundaments[cube] = cells
            return cells

        h, hbar, separators, flip = self.salient_data(cube)
        cells = set()
        # pieces assembled from codimension-1 faces with a persistent corner
        cube_dim = len(cube).bit_length() - 1
        for face in self.all_subcubes:
            if face < cube and len(face) * 2 == len(cube):
                if self.persistent_corners(cube) & face:
                    cells |= self.fundament(face)
        # diagonals over completely external subcubes of the salient cube
        for w in self.all_subcubes:
            if w <= hbar and self.is_completely_external(w):
                wbar = frozenset(flip(v) for v in w)
                cells.add(("diag", w, wbar, separators))
        # any completely external cube not already covered
        for f in self.deletion(cube):
            if not self._covered(f, cells):
                cells.add(("cube", f))
        self._fundaments[cube] = cells
        return cells

    def _covered(self, f, cells):
        for kind, *data in cells:
            if kind == "cube" and f <= data[0]:
                return True
            if kind == "diag":
                w, wbar, _ = data
                if f <= w or f <= wbar:
                    return True
        return False

    # -- normalized comparison shape -------------------------------------------

    def normalize(self, cells):
        """(ordinary completely external subcubes, diagonal pair set)."""
        ordinary = set()
        pairs = set()
        for kind, *data in cells:
            if kind == "cube":
                for s in self.all_subcubes:
                    if s <= data[0]:
                        ordinary.add(s)
            else:
                w, wbar, separators = data
                if len(separators) <= 1:
                    # the hull degenerates to an ordinary cube of the complex
                    span = w | wbar
                    for s in self.all_subcubes:
                        if s <= span:
                            ordinary.add(s)
                else:
                    flip_back = {}
                    for v in w:
                        partner = tuple(
                            (1 - b) if i in separators else b
                            for i, b in enumerate(v)
                        )
                        flip_back[v] = partner
                    for s in self.all_subcubes:
                        if s <= w:
                            ordinary.add(s)
                        if s <= wbar:
                            ordinary.add(s)
                    for v in w:
                        pairs.add(
                            (frozenset((v, flip_back[v])), separators)
                        )
        ordinary = {s for s in ordinary if self.is_completely_external(s)}
        return ordinary, pairs
