"""Finite CAT(0) cube complexes represented by their median 1-skeleta.

A finite cube complex is CAT(0) exactly when its 1-skeleton is a median graph
and every induced hypercube subgraph is filled in, so the canonical
representation here is just (vertices, edges).  Cubes of every dimension and
hyperplanes (wall classes of edges) are derived and cached.  A constructed
``CubeComplex`` is immutable and always validated: connected, simple, median,
flag-filled, Euler characteristic 1.

Conventions used throughout the package:

* vertices are opaque hashable identifiers, ordered canonically (natural sort
  when comparable, by ``repr`` otherwise);
* an edge key is the pair ``(u, v)`` with ``u`` before ``v`` canonically;
* a cube is identified by the frozenset of its vertices (in a median graph an
  induced hypercube is determined by its vertex set);
* each hyperplane splits the vertex set into a ``minus`` side (the one
  containing the canonically-first vertex of the complex) and a ``plus`` side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InternalInvariantError, InvalidComplexError, StructuralError

__all__ = [
    "Cube",
    "CubeComplex",
    "Hyperplane",
    "ValidationReport",
    "validate_graph",
]


def canonical_vertex_order(vertices):
    """Sort opaque vertex ids: natural order when possible, else by repr."""
    vs = list(vertices)
    try:
        return sorted(vs)
    except TypeError:
        return sorted(vs, key=repr)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the CAT(0) checks on a finite graph."""

    vertex_count: int
    edge_count: int
    simple: bool
    connected: bool
    median: bool | None = None
    median_violation: tuple | None = None
    flag_filled: bool | None = None
    cube_counts: tuple[int, ...] = ()
    euler_characteristic: int | None = None

    @property
    def passed(self) -> bool:
        return (
            self.simple
            and self.connected
            and bool(self.median)
            and bool(self.flag_filled)
            and self.euler_characteristic == 1
        )

    def summary(self) -> str:
        if self.passed:
            return "valid"
        if not self.connected:
            return "graph is not connected"
        if self.median is False:
            return f"median check fails on triple {self.median_violation}"
        if self.flag_filled is False:
            return "flag condition fails (a cube corner does not close up)"
        if self.euler_characteristic != 1:
            return f"Euler characteristic is {self.euler_characteristic}, not 1"
        return "invalid"


@dataclass(frozen=True)
class Hyperplane:
    """A wall: an equivalence class of edges under the opposite-in-a-square
    relation, together with the two halfspaces it separates."""

    id: int
    edges: frozenset
    minus: frozenset
    plus: frozenset
    _complex: "CubeComplex" = field(repr=False, compare=False)

    def side(self, sign: str) -> frozenset:
        return self.plus if sign == "+" else self.minus

    @property
    def carrier(self) -> tuple[frozenset, ...]:
        """All cubes (as vertex sets) containing an edge dual to this wall."""
        return self._complex.carrier(self.id)


@dataclass(frozen=True)
class Cube:
    """A single cube, with its corner map.

    ``corners[i]`` is the vertex whose signs on the cube's axes (crossing
    hyperplanes, ascending id) read off the binary digits of ``i``, most
    significant digit first, with 1 meaning the plus side.
    """

    vertices: frozenset
    axes: tuple[int, ...]
    corners: tuple

    @property
    def dimension(self) -> int:
        return len(self.axes)

    def corner(self, bits) -> object:
        bits = tuple(bits)
        if len(bits) != len(self.axes):
            raise ValueError(f"expected {len(self.axes)} bits, got {len(bits)}")
        index = 0
        for b in bits:
            index = (index << 1) | (1 if b else 0)
        return self.corners[index]


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------


def _structural_pass(vertices, edges):
    """Canonicalize raw data; raise StructuralError on malformed input."""
    order = canonical_vertex_order(vertices)
    if not order:
        raise StructuralError("vertex set is empty")
    seen = set()
    for v in order:
        if v in seen:
            raise StructuralError(f"duplicate vertex {v!r}")
        seen.add(v)
    ix = {v: i for i, v in enumerate(order)}
    edge_set = set()
    int_edges = []
    for e in edges:
        try:
            u, v = e
        except (TypeError, ValueError):
            raise StructuralError(f"edge {e!r} is not a pair") from None
        if u not in ix or v not in ix:
            raise StructuralError(f"edge {e!r} references an unknown vertex")
        if u == v:
            raise StructuralError(f"self-loop at vertex {u!r}")
        a, b = ix[u], ix[v]
        if a > b:
            a, b = b, a
        if (a, b) in edge_set:
            raise StructuralError(f"duplicate edge {u!r} {v!r}")
        edge_set.add((a, b))
    int_edges = sorted(edge_set)
    return tuple(order), ix, int_edges


def _distances(n, adj):
    """All-pairs BFS distances; -1 marks unreachable pairs."""
    dist = np.full((n, n), -1, dtype=np.int32)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if row[w] < 0:
                        row[w] = d
                        nxt.append(w)
            frontier = nxt
    return dist


def _median_scan(dist):
    """Check that every triple of vertices has exactly one median.

    Vectorized over the third coordinate: for each pair (u, v) the boolean
    matrix rows give interval membership, and a single numpy reduction counts
    medians for all w at once.  Interval rows are bit-packed when numpy
    supports popcounting.  Returns (ok, violating_triple_indices).
    """
    n = dist.shape[0]
    if n <= 2:
        return True, None
    d = dist.astype(np.int32)
    packed = hasattr(np, "bitwise_count")
    # interval[u][v, x] == True iff x lies on a geodesic from u to v
    intervals = []
    for u in range(n):
        rows = d[u][None, :] + d == d[u][:, None]
        intervals.append(np.packbits(rows, axis=1) if packed else rows)
    for u in range(n - 2):
        A_u = intervals[u]
        for v in range(u + 1, n - 1):
            row = A_u[v]
            block = A_u[v + 1 :] & intervals[v][v + 1 :] & row[None, :]
            if packed:
                counts = np.bitwise_count(block).sum(axis=1)
            else:
                counts = block.sum(axis=1)
            bad = np.nonzero(counts != 1)[0]
            if bad.size:
                return False, (u, v, v + 1 + int(bad[0]))
    return True, None


def _is_induced_hypercube(vs, adj_sets):
    """Decide whether the induced subgraph on ``vs`` is a d-hypercube."""
    k = len(vs)
    if k == 0 or k & (k - 1):
        return False
    d = k.bit_length() - 1
    vs = sorted(vs)
    inside = set(vs)
    base = vs[0]
    # breadth-first labelling: a vertex at depth k gets the union of the
    # direction sets of its depth-(k-1) neighbours
    labels = {base: frozenset()}
    first_ring = sorted(adj_sets[base] & inside)
    if len(first_ring) != d:
        return False
    for i, w in enumerate(first_ring):
        labels[w] = frozenset({i})
    level = first_ring
    while level:
        nxt = {}
        for u in level:
            for w in adj_sets[u] & inside:
                if w not in labels:
                    nxt.setdefault(w, set()).update(labels[u])
        for w in sorted(nxt):
            labels[w] = frozenset(nxt[w])
        level = sorted(nxt)
    if len(labels) != k or len(set(labels.values())) != k:
        return False
    # adjacency must be exactly Hamming distance one on labels
    for a, b in itertools.combinations(vs, 2):
        hamming = len(labels[a] ^ labels[b])
        adjacent = b in adj_sets[a]
        if adjacent != (hamming == 1):
            return False
    return True


def _enumerate_cubes(n, adj_sets, max_branch=64):
    """All induced hypercube subgraphs, as lists of frozensets per dimension.

    Dimension 0 and 1 are vertices and edges; squares are induced 4-cycles;
    higher cubes are grown from lower ones by translating across an edge and
    verifying the result is an induced hypercube.
    """
    verts = [frozenset([v]) for v in range(n)]
    edges = [
        frozenset([u, w]) for u in range(n) for w in adj_sets[u] if u < w
    ]
    if not edges:
        return [verts]
    by_dim = [verts, edges]
    # squares: pairs at distance two with two nonadjacent common neighbours
    squares = set()
    for p in range(n):
        for q in range(p + 1, n):
            if q in adj_sets[p]:
                continue
            common = sorted(adj_sets[p] & adj_sets[q])
            for x, y in itertools.combinations(common, 2):
                if y not in adj_sets[x]:
                    squares.add(frozenset((p, q, x, y)))
    if not squares:
        return [verts, edges]
    by_dim.append(sorted(squares, key=sorted))
    d = 2
    while by_dim[d]:
        found = set()
        for S in by_dim[d]:
            inside = set(S)
            for u in S:
                for w in adj_sets[u] - inside:
                    grown = _translate_cube(S, u, w, adj_sets, max_branch)
                    if grown is not None and grown not in found:
                        if _is_induced_hypercube(grown, adj_sets):
                            found.add(grown)
        if not found:
            break
        by_dim.append(sorted(found, key=sorted))
        d += 1
    return [sorted(c, key=sorted) for c in by_dim]


def _translate_cube(S, u, w, adj_sets, max_branch):
    """Try to extend cube ``S`` to ``S x edge`` in the direction of edge (u, w).

    Builds the translate vertex by vertex in BFS order inside S; the partner
    of each vertex must be its neighbour that is also adjacent to the already
    placed partners of its predecessors.  Ambiguity (possible only on graphs
    that are not median) is resolved by bounded branching.
    """
    inside = set(S)
    # BFS order inside the induced cube
    order = [u]
    depth = {u: 0}
    parents = {u: []}
    frontier = [u]
    while frontier:
        nxt = []
        for a in frontier:
            for b in adj_sets[a] & inside:
                if b not in depth:
                    depth[b] = depth[a] + 1
                    parents[b] = [a]
                    nxt.append(b)
                elif depth[b] == depth[a] + 1:
                    parents[b].append(a)
        frontier = nxt
        order.extend(sorted(nxt))
    if len(depth) != len(S):
        return None

    partial = [{u: w}]
    for v in order[1:]:
        nxt_partial = []
        for ph in partial:
            cand = adj_sets[v] - inside
            for p in parents[v]:
                cand = cand & adj_sets[ph[p]]
                if not cand:
                    break
            for c in cand:
                if c in ph.values():
                    continue
                ext = dict(ph)
                ext[v] = c
                nxt_partial.append(ext)
                if len(nxt_partial) >= max_branch:
                    break
            if len(nxt_partial) >= max_branch:
                break
        if not nxt_partial:
            return None
        partial = nxt_partial
    ph = partial[0]
    return frozenset(inside | set(ph.values()))


def _flag_scan(n, adj_sets, cube_sets):
    """Gromov flag condition on the canonical filling.

    At every vertex, any set of incident edge-directions that pairwise span
    squares must span a cube of the matching dimension.  Squares and lower are
    automatic, so checking starts at triples.
    """
    cubes_by_dim = [set(c) for c in cube_sets]
    if len(cubes_by_dim) < 3:
        return True
    square_lookup = cubes_by_dim[2]

    for v in range(n):
        nbrs = sorted(adj_sets[v])
        if len(nbrs) < 3:
            continue
        pair_ok = {}
        for a, b in itertools.combinations(nbrs, 2):
            common = adj_sets[a] & adj_sets[b] - {v}
            sq = None
            for x in common:
                cand = frozenset((v, a, b, x))
                if cand in square_lookup:
                    sq = cand
                    break
            pair_ok[(a, b)] = sq
        # grow cliques in the square graph at v, checking cube existence
        max_dim = len(cube_sets) - 1
        cliques = [[a] for a in nbrs]
        size = 1
        while cliques and size < len(nbrs):
            size += 1
            nxt = []
            for cl in cliques:
                for b in nbrs:
                    if b <= cl[-1]:
                        continue
                    if all(pair_ok.get((a, b)) for a in cl):
                        new = cl + [b]
                        if size >= 3:
                            spanned = _span_corner(v, new, adj_sets)
                            if spanned is None or (
                                size > max_dim or spanned not in cubes_by_dim[size]
                            ):
                                return False
                        nxt.append(new)
            cliques = nxt
    return True


def _span_corner(v, nbrs, adj_sets):
    """Vertex set of the cube spanned at corner ``v`` by given neighbours,
    or None if it does not close up."""
    all_placed = {frozenset(): v}
    for i, b in enumerate(nbrs):
        all_placed[frozenset([i])] = b
    k = len(nbrs)
    for size in range(2, k + 1):
        for combo in itertools.combinations(range(k), size):
            key = frozenset(combo)
            # common neighbour of all facets
            facets = [all_placed[key - {i}] for i in combo]
            cand = set(adj_sets[facets[0]])
            for f in facets[1:]:
                cand &= adj_sets[f]
            cand -= set(all_placed.values())
            if len(cand) != 1:
                return None
            all_placed[key] = next(iter(cand))
    return frozenset(all_placed.values())


# ---------------------------------------------------------------------------
# the complex
# ---------------------------------------------------------------------------


def validate_graph(vertices, edges) -> ValidationReport:
    """Run the CAT(0) battery on a raw graph and report the outcome.

    Structural defects (duplicates, self-loops, unknown endpoints) raise
    :class:`StructuralError`; everything else is reported, not raised.
    """
    order, ix, int_edges = _structural_pass(vertices, edges)
    return _analyze(order, int_edges)[0]


def _analyze(order, int_edges):
    n = len(order)
    adj_sets = [set() for _ in range(n)]
    for a, b in int_edges:
        adj_sets[a].add(b)
        adj_sets[b].add(a)
    dist = _distances(n, adj_sets)
    connected = bool((dist >= 0).all())
    if not connected:
        report = ValidationReport(
            vertex_count=n,
            edge_count=len(int_edges),
            simple=True,
            connected=False,
        )
        return report, None
    median_ok, violation = _median_scan(dist)
    cube_sets = _enumerate_cubes(n, adj_sets)
    counts = tuple(len(c) for c in cube_sets)
    euler = sum((-1) ** d * c for d, c in enumerate(counts))
    flag = _flag_scan(n, adj_sets, cube_sets) if median_ok else None
    report = ValidationReport(
        vertex_count=n,
        edge_count=len(int_edges),
        simple=True,
        connected=True,
        median=median_ok,
        median_violation=(
            tuple(order[i] for i in violation) if violation is not None else None
        ),
        flag_filled=flag,
        cube_counts=counts,
        euler_characteristic=euler,
    )
    internals = (adj_sets, dist, cube_sets)
    return report, internals


class CubeComplex:
    """A validated finite CAT(0) cube complex, immutable once built."""

    def __init__(self, vertices, edges):
        order, ix, int_edges = _structural_pass(vertices, edges)
        report, internals = _analyze(order, int_edges)
        if not report.passed:
            raise InvalidComplexError(report)
        self._order = order
        self._ix = ix
        self._int_edges = int_edges
        self._adj_int, self._dist, self._cube_sets_int = internals
        self.validation_report = report
        self._hyperplanes = None
        self._signs = None
        self._edge_dual = None
        self._edge_square_mates = None
        self._carrier_cache = {}
        self._maximal = None
        self._cube_objects = {}

    # -- basic structure ----------------------------------------------------

    @classmethod
    def from_data(cls, vertices, edges) -> "CubeComplex":
        return cls(vertices, edges)

    @property
    def vertices(self) -> tuple:
        return self._order

    @property
    def n(self) -> int:
        return len(self._order)

    @property
    def edges(self) -> tuple:
        return tuple((self._order[a], self._order[b]) for a, b in self._int_edges)

    @property
    def dimension(self) -> int:
        return len(self._cube_sets_int) - 1

    @property
    def cube_counts(self) -> tuple[int, ...]:
        return self.validation_report.cube_counts

    @property
    def euler_characteristic(self) -> int:
        return self.validation_report.euler_characteristic

    def index(self, v) -> int:
        try:
            return self._ix[v]
        except KeyError:
            raise StructuralError(f"unknown vertex {v!r}") from None

    def __contains__(self, v) -> bool:
        return v in self._ix

    def neighbors(self, v) -> frozenset:
        return frozenset(self._order[w] for w in self._adj_int[self.index(v)])

    def edge_key(self, u, v) -> tuple:
        """Canonical form of the edge {u, v}; raises if it is not an edge."""
        a, b = self.index(u), self.index(v)
        if a > b:
            a, b = b, a
            u, v = v, u
        if b not in self._adj_int[a]:
            raise StructuralError(f"{u!r} {v!r} is not an edge")
        return (u, v)

    def distance(self, u, v) -> int:
        return int(self._dist[self.index(u), self.index(v)])

    # -- cubes ---------------------------------------------------------------

    def cube_vertexsets(self, dim: int) -> tuple[frozenset, ...]:
        """Vertex sets of all ``dim``-cubes (empty beyond the dimension)."""
        if dim < 0 or dim >= len(self._cube_sets_int):
            return ()
        return tuple(
            frozenset(self._order[i] for i in c) for c in self._cube_sets_int[dim]
        )

    def cubes(self, dim: int) -> tuple[Cube, ...]:
        if dim not in self._cube_objects:
            self._cube_objects[dim] = tuple(
                self._make_cube(vs) for vs in self.cube_vertexsets(dim)
            )
        return self._cube_objects[dim]

    def _make_cube(self, vs: frozenset) -> Cube:
        axes = tuple(sorted(self.cube_axes(vs)))
        signs = self.vertex_signs()
        corners = [None] * (1 << len(axes))
        for v in vs:
            idx = 0
            for h in axes:
                idx = (idx << 1) | (1 if signs[self.index(v), h] > 0 else 0)
            corners[idx] = v
        if any(c is None for c in corners):
            raise InternalInvariantError(f"cube {set(vs)} has an incoherent corner map")
        return Cube(vertices=vs, axes=axes, corners=tuple(corners))

    def all_cube_vertexsets(self):
        for d in range(len(self._cube_sets_int)):
            yield from self.cube_vertexsets(d)

    def maximal_cubes(self) -> tuple[frozenset, ...]:
        """Cubes not properly contained in any other cube."""
        if self._maximal is None:
            result = []
            for d in range(self.dimension, -1, -1):
                bigger = (
                    set(self.cube_vertexsets(d + 1))
                    if d + 1 <= self.dimension
                    else set()
                )
                for vs in self.cube_vertexsets(d):
                    if not any(vs < b for b in bigger):
                        result.append(vs)
            # a cube strictly inside a non-adjacent-dimension cube is also
            # inside one of its faces, so checking one dimension up suffices
            self._maximal = tuple(result)
        return self._maximal

    def cube_edges(self, vs: frozenset) -> tuple:
        """Edge keys of the cube with vertex set ``vs``."""
        out = []
        for u in vs:
            a = self.index(u)
            for b in self._adj_int[a]:
                if a < b and self._order[b] in vs:
                    out.append((u, self._order[b]))
        return tuple(out)

    def cube_axes(self, vs: frozenset) -> frozenset:
        """Hyperplane ids crossing the cube ``vs``."""
        return frozenset(self.dual_hyperplane(*e) for e in self.cube_edges(vs))

    def subcubes(self, vs: frozenset, dim: int | None = None):
        """All faces of the cube ``vs`` (including itself), optionally of one
        dimension, enumerated by fixing signs on subsets of its axes."""
        axes = sorted(self.cube_axes(vs))
        signs = self.vertex_signs()
        vlist = sorted(vs, key=self.index)
        sig = {
            v: tuple(signs[self.index(v), h] for h in axes) for v in vlist
        }
        d = len(axes)
        dims = range(d + 1) if dim is None else [dim]
        for k in dims:
            if k > d or k < 0:
                continue
            for free in itertools.combinations(range(d), k):
                fixed = [i for i in range(d) if i not in free]
                buckets = {}
                for v in vlist:
                    key = tuple(sig[v][i] for i in fixed)
                    buckets.setdefault(key, []).append(v)
                for members in buckets.values():
                    yield frozenset(members)

    def codim1_faces(self, vs: frozenset):
        d = len(self.cube_axes(vs))
        if d == 0:
            return
        yield from self.subcubes(vs, d - 1)

    # -- hyperplanes ----------------------------------------------------------

    def hyperplanes(self) -> tuple[Hyperplane, ...]:
        if self._hyperplanes is None:
            self._compute_hyperplanes()
        return self._hyperplanes

    def hyperplane(self, h_id: int) -> Hyperplane:
        return self.hyperplanes()[h_id]

    def _compute_hyperplanes(self):
        m = len(self._int_edges)
        edge_index = {e: i for i, e in enumerate(self._int_edges)}
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        if len(self._cube_sets_int) > 2:
            for sq in self._cube_sets_int[2]:
                es = [
                    (a, b)
                    for a, b in itertools.combinations(sorted(sq), 2)
                    if b in self._adj_int[a]
                ]
                for e1, e2 in itertools.combinations(es, 2):
                    if not set(e1) & set(e2):
                        union(edge_index[e1], edge_index[e2])
        classes = {}
        for i, e in enumerate(self._int_edges):
            classes.setdefault(find(i), []).append(e)
        ordered = sorted(classes.values(), key=lambda es: min(es))
        planes = []
        signs = np.zeros((self.n, len(ordered)), dtype=np.int8)
        edge_dual = {}
        for h_id, es in enumerate(ordered):
            cut = set(es)
            comp = self._components_without(cut)
            if len(comp) != 2:
                raise InternalInvariantError(
                    f"wall {h_id} separates the complex into {len(comp)} parts"
                )
            side0 = comp[0] if 0 in comp[0] else comp[1]
            side1 = comp[1] if 0 in comp[0] else comp[0]
            for x in side0:
                signs[x, h_id] = -1
            for x in side1:
                signs[x, h_id] = 1
            minus = frozenset(self._order[i] for i in side0)
            plus = frozenset(self._order[i] for i in side1)
            ekeys = frozenset((self._order[a], self._order[b]) for a, b in es)
            planes.append(
                Hyperplane(id=h_id, edges=ekeys, minus=minus, plus=plus, _complex=self)
            )
            for a, b in es:
                edge_dual[(self._order[a], self._order[b])] = h_id
        self._hyperplanes = tuple(planes)
        self._signs = signs
        self._edge_dual = edge_dual
        self._check_cube_axes_sane()

    def _components_without(self, cut_edges):
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = set()
            stack = [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.add(u)
                for w in self._adj_int[u]:
                    e = (u, w) if u < w else (w, u)
                    if e in cut_edges or seen[w]:
                        continue
                    seen[w] = True
                    stack.append(w)
            comps.append(comp)
        return comps

    def _check_cube_axes_sane(self):
        for d in range(2, len(self._cube_sets_int)):
            for c in self._cube_sets_int[d]:
                vs = frozenset(self._order[i] for i in c)
                axes = [self.dual_hyperplane(*e) for e in self.cube_edges(vs)]
                per = {}
                for h in axes:
                    per[h] = per.get(h, 0) + 1
                if len(per) != d or any(cnt != 1 << (d - 1) for cnt in per.values()):
                    raise InternalInvariantError(
                        f"cube {set(vs)} crosses hyperplanes incoherently: {per}"
                    )

    def vertex_signs(self) -> np.ndarray:
        """Matrix of halfspace signs, rows by vertex index, columns by wall id."""
        if self._signs is None:
            self._compute_hyperplanes()
        return self._signs

    def sign(self, v, h_id: int) -> int:
        return int(self.vertex_signs()[self.index(v), h_id])

    def dual_hyperplane(self, u, v) -> int:
        """Wall id of an edge."""
        if self._edge_dual is None:
            self._compute_hyperplanes()
        key = self.edge_key(u, v)
        return self._edge_dual[key]

    def edge_square_mates(self, u, v) -> frozenset:
        """Walls crossing this edge's wall inside a square through the edge."""
        if self._edge_square_mates is None:
            mates = {e: set() for e in self.edges}
            for sq in self.cube_vertexsets(2):
                es = self.cube_edges(sq)
                h1, h2 = sorted({self.dual_hyperplane(*e) for e in es})
                for e in es:
                    mates[e].add(h2 if self.dual_hyperplane(*e) == h1 else h1)
            self._edge_square_mates = {e: frozenset(s) for e, s in mates.items()}
        return self._edge_square_mates[self.edge_key(u, v)]

    def carrier(self, h_id: int) -> tuple[frozenset, ...]:
        """Cubes (all dimensions) containing an edge dual to wall ``h_id``."""
        if h_id not in self._carrier_cache:
            dual = self.hyperplane(h_id).edges
            out = []
            for vs in self.all_cube_vertexsets():
                if any(e[0] in vs and e[1] in vs for e in dual):
                    out.append(vs)
            self._carrier_cache[h_id] = tuple(out)
        return self._carrier_cache[h_id]

    # -- metric / convexity ----------------------------------------------------

    def crossing_set(self, u, v) -> frozenset:
        """Walls separating u from v; its size equals the graph distance."""
        signs = self.vertex_signs()
        a, b = self.index(u), self.index(v)
        return frozenset(int(h) for h in np.nonzero(signs[a] != signs[b])[0])

    def median(self, u, v, w):
        da, db, dc = (self._dist[self.index(x)] for x in (u, v, w))
        duv = self.distance(u, v)
        duw = self.distance(u, w)
        dvw = self.distance(v, w)
        on = (da + db == duv) & (da + dc == duw) & (db + dc == dvw)
        hits = np.nonzero(on)[0]
        if hits.size != 1:
            raise InternalInvariantError(
                f"median of ({u!r}, {v!r}, {w!r}) is not unique"
            )
        return self._order[int(hits[0])]

    def convex_hull(self, vertex_set) -> frozenset:
        """Smallest median-closed vertex set containing the input: cut out by
        every halfspace containing it."""
        vs = [self.index(v) for v in vertex_set]
        if not vs:
            raise StructuralError("convex hull of an empty set")
        signs = self.vertex_signs()
        keep = np.ones(self.n, dtype=bool)
        for h in range(signs.shape[1]):
            col = signs[vs, h]
            if (col > 0).all():
                keep &= signs[:, h] > 0
            elif (col < 0).all():
                keep &= signs[:, h] < 0
        return frozenset(self._order[i] for i in np.nonzero(keep)[0])

    def is_tree(self) -> bool:
        return self.dimension <= 1

    # -- misc -------------------------------------------------------------------

    def __repr__(self):
        return (
            f"CubeComplex(V={self.n}, E={len(self._int_edges)}, "
            f"dim={self.dimension})"
        )

    def isomorphic_signature(self):
        """Cheap invariant tuple used by tests for round-trip comparisons."""
        return (self.cube_counts, tuple(sorted(
            tuple(sorted(map(len, (h.edges, h.minus, h.plus))))
            for h in self.hyperplanes()
        )))
