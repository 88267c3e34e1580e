"""Pants decompositions of low-complexity surfaces and their modular graph.

A pants decomposition of the compact surface S_{g,b} is encoded by its dual
graph: one vertex per pair of pants (degree exactly 3, loops counting
twice), one internal edge per cuff, one half-edge per boundary component.
Decompositions are identified up to homeomorphism of the surface, which at
the graph level is isomorphism of the decorated dual graph; the decoration
records which internal edges are separating curves (the bridges of the
graph -- derivable, but carried explicitly in the canonical key).

Complexity is capped at xi = 3g-3+b <= 4 so enumeration stays exhaustive
and oracle-checkable.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import ComplexityTooLarge
from .qch_bounds import shortpants_global

COMPLEXITY_CAP = 4


def xi(g: int, b: int) -> int:
    return 3 * g - 3 + b


@dataclass(frozen=True)
class TrivalentGraph:
    """Dual graph of a pants decomposition.

    ``edges`` is a sorted multiset of internal edges (i, j) with i <= j
    (i == j for loops); ``half`` counts boundary half-edges per vertex.
    """

    n: int
    edges: tuple
    half: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))
        object.__setattr__(self, "half", tuple(self.half))
        for v in range(self.n):
            if self.degree(v) != 3:
                raise ValueError(
                    f"vertex {v} has degree {self.degree(v)}, every pants has 3 cuffs"
                )

    def degree(self, v: int) -> int:
        d = self.half[v]
        for i, j in self.edges:
            if i == v:
                d += 1
            if j == v:
                d += 1
        return d

    def boundary_count(self) -> int:
        return sum(self.half)

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for i, j in self.edges:
                for u, w in ((i, j), (j, i)):
                    if u == v and w not in seen:
                        seen.add(w)
                        frontier.append(w)
        return len(seen) == self.n

    def cycle_rank(self) -> int:
        """First Betti number; equals the genus of the decomposed surface."""
        return len(self.edges) - self.n + 1

    def bridges(self) -> tuple:
        """Internal edges whose dual curves separate the surface."""
        out = []
        for idx, (i, j) in enumerate(self.edges):
            if i == j:
                continue  # a loop curve never separates
            rest = self.edges[:idx] + self.edges[idx + 1:]
            if not TrivalentGraphView(self.n, rest).connected_pair(i, j):
                out.append((i, j))
        return tuple(sorted(set(out)))

    def surface(self) -> tuple[int, int]:
        """(genus, boundary components) of the decomposed surface."""
        return self.cycle_rank(), self.boundary_count()


class TrivalentGraphView:
    """Connectivity helper on an edge multiset without degree constraints."""

    def __init__(self, n, edges):
        self.n = n
        self.edges = edges

    def connected_pair(self, s, t) -> bool:
        seen = {s}
        frontier = [s]
        while frontier:
            v = frontier.pop()
            if v == t:
                return True
            for i, j in self.edges:
                for u, w in ((i, j), (j, i)):
                    if u == v and w not in seen:
                        seen.add(w)
                        frontier.append(w)
        return t in seen


def canonical_key(g: TrivalentGraph, order: str = "min") -> tuple:
    """Canonical form of the decorated graph: the extremal relabeling over
    all vertex permutations.  ``order`` selects min or max as two independent
    labeling schemes."""
    pick = min if order == "min" else max
    bridges = g.bridges()
    best = None
    for perm in itertools.permutations(range(g.n)):
        edges = tuple(sorted(tuple(sorted((perm[i], perm[j]))) for i, j in g.edges))
        half = tuple(g.half[perm.index(v)] for v in range(g.n))
        deco = tuple(sorted(tuple(sorted((perm[i], perm[j]))) for i, j in bridges))
        key = (g.n, edges, half, deco)
        best = key if best is None else pick(best, key)
    return best


def from_key(key: tuple) -> TrivalentGraph:
    n, edges, half, _ = key
    return TrivalentGraph(n=n, edges=edges, half=half)


def _check_cap(g: int, b: int) -> None:
    x = xi(g, b)
    if x < 1:
        raise ComplexityTooLarge(
            f"surface ({g},{b}) has complexity {x} < 1: no cuffs to decompose"
        )
    if x > COMPLEXITY_CAP:
        raise ComplexityTooLarge(
            f"complexity {x} exceeds the exhaustive-enumeration cap {COMPLEXITY_CAP}"
        )


def _stub_matchings(stubs):
    """All perfect matchings of the list of stub owners (vertex ids)."""
    if not stubs:
        yield []
        return
    first, rest = stubs[0], stubs[1:]
    for idx in range(len(rest)):
        pair = tuple(sorted((first, rest[idx])))
        for tail in _stub_matchings(rest[:idx] + rest[idx + 1:]):
            yield [pair] + tail


def enumerate_decompositions(g: int, b: int, order: str = "min") -> list[TrivalentGraph]:
    """All pants decompositions of S_{g,b} up to homeomorphism.

    Enumerates by distributing boundary legs over the 2g-2+b pants and
    perfect-matching the remaining cuff stubs, then filters to connected
    graphs realizing the requested genus and dedupes by canonical form.
    """
    _check_cap(g, b)
    n = 2 * g - 2 + b
    seen = {}
    for half in itertools.product(range(4), repeat=n):
        if sum(half) != b:
            continue
        stubs = []
        for v in range(n):
            stubs.extend([v] * (3 - half[v]))
        if len(stubs) % 2:
            continue
        for match in _stub_matchings(stubs):
            graph = TrivalentGraph(n=n, edges=tuple(match), half=half)
            if not graph.is_connected() or graph.cycle_rank() != g:
                continue
            key = canonical_key(graph, order=order)
            if key not in seen:
                seen[key] = from_key(key)
    return [seen[k] for k in sorted(seen)]


def _to_darts(g: TrivalentGraph):
    """Dart structure: dart ids with owner map and pairing involution."""
    owner = {}
    pairing = {}
    next_dart = 0
    free = {v: [] for v in range(g.n)}
    for v in range(g.n):
        for _ in range(3):
            owner[next_dart] = v
            free[v].append(next_dart)
            next_dart += 1
    for i, j in g.edges:
        d1 = free[i].pop()
        d2 = free[j].pop()
        pairing[d1] = d2
        pairing[d2] = d1
    # leftover darts are boundary legs
    return owner, pairing


def _from_darts(n, owner, pairing):
    edges = []
    done = set()
    for d1, d2 in pairing.items():
        if d1 in done:
            continue
        done.update((d1, d2))
        edges.append(tuple(sorted((owner[d1], owner[d2]))))
    half = [0] * n
    for d, v in owner.items():
        if d not in pairing:
            half[v] += 1
    return TrivalentGraph(n=n, edges=tuple(edges), half=tuple(half))


def elementary_moves(g: TrivalentGraph, order: str = "min"):
    """Neighbors of a decomposition class under elementary moves.

    Returns (neighbors, annotations).  Each internal edge is replaced inside
    the complement of the remaining cuffs:

    * a loop edge sits in a 1-holed torus; its replacement returns the same
      class, recorded as a ``torus_move`` annotation (never a modular edge);
    * a non-loop edge sits in a 4-holed sphere whose four legs can be
      re-paired across the new curve in the two possible ways (variant A
      keeps each pants' first remaining leg together with the first leg of
      the opposite pants, variant B crosses them); outcomes equal to the
      input class are recorded as ``sphere_move_fixed`` annotations.
    """
    self_key = canonical_key(g, order=order)
    owner, pairing = _to_darts(g)
    neighbors = {}
    annotations = []
    done_edges = set()
    for dp in sorted(pairing):
        dq = pairing[dp]
        if dp > dq:
            continue
        p, q = owner[dp], owner[dq]
        if p == q:
            annotations.append(("torus_move", (p, q)))
            continue
        edge_sig = tuple(sorted((p, q)))
        if edge_sig in done_edges:
            continue  # parallel copies give isomorphic outcomes
        done_edges.add(edge_sig)
        u1, u2 = sorted(d for d in owner if owner[d] == p and d != dp)
        w1, w2 = sorted(d for d in owner if owner[d] == q and d != dq)
        for wa, wb in ((w1, w2), (w2, w1)):
            new_owner = dict(owner)
            new_owner[wa] = p
            new_owner[u2] = q
            moved = _from_darts(g.n, new_owner, pairing)
            key = canonical_key(moved, order=order)
            if key == self_key:
                annotations.append(("sphere_move_fixed", edge_sig))
            else:
                neighbors[key] = from_key(key)
    return [neighbors[k] for k in sorted(neighbors)], annotations


@dataclass(frozen=True)
class ModularPantsGraph:
    genus: int
    boundary: int
    vertices: tuple
    adjacency: tuple  # adjacency[i] = sorted tuple of neighbor indices
    annotations: tuple  # per-vertex move annotations (loops, not edges)
    connected: bool
    diameter: int

    def vertex_count(self) -> int:
        return len(self.vertices)

    def to_adjacency_text(self) -> str:
        lines = [f"# modular pants graph of surface genus={self.genus} boundary={self.boundary}"]
        for i, nbrs in enumerate(self.adjacency):
            lines.append(f"{i}: " + " ".join(str(j) for j in nbrs))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        verts = []
        for v in self.vertices:
            verts.append(
                {
                    "pants": v.n,
                    "edges": [list(e) for e in v.edges],
                    "half_edges": list(v.half),
                    "separating_edges": [list(e) for e in v.bridges()],
                }
            )
        return json.dumps(
            {
                "genus": self.genus,
                "boundary": self.boundary,
                "vertices": verts,
                "adjacency": [list(a) for a in self.adjacency],
                "annotations": [list(map(str, a)) for a in self.annotations],
                "connected": self.connected,
                "diameter": self.diameter,
            },
            sort_keys=True,
        )


def _bfs_dists(adjacency, start):
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for w in adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def modular_pants_graph(g: int, b: int, order: str = "min") -> ModularPantsGraph:
    """The modular pants graph of S_{g,b} with BFS-verified connectivity and
    exact diameter (move annotations are excluded from the metric)."""
    verts = enumerate_decompositions(g, b, order=order)
    keys = {canonical_key(v, order=order): i for i, v in enumerate(verts)}
    adjacency = []
    annotations = []
    for v in verts:
        nbrs, notes = elementary_moves(v, order=order)
        adjacency.append(tuple(sorted(keys[canonical_key(w, order=order)] for w in nbrs)))
        annotations.append(tuple(notes))
    connected = len(_bfs_dists(adjacency, 0)) == len(verts) if verts else False
    diameter = 0
    if connected:
        for i in range(len(verts)):
            diameter = max(diameter, max(_bfs_dists(adjacency, i).values()))
    return ModularPantsGraph(
        genus=g,
        boundary=b,
        vertices=tuple(verts),
        adjacency=tuple(adjacency),
        annotations=tuple(annotations),
        connected=connected,
        diameter=diameter,
    )


def propagate_bounds(graph: ModularPantsGraph, start: int, M: float, m_inj: float) -> dict:
    """Cuff-length bound per vertex: iterate the short-pants step along BFS
    distance from the start vertex; the start keeps exactly M."""
    if start < 0 or start >= graph.vertex_count():
        raise ValueError(f"start vertex {start} not in graph")
    dists = _bfs_dists(graph.adjacency, start)
    return {v: shortpants_global(M, m_inj, d) for v, d in sorted(dists.items())}
