"""Pentagon-tiled surfaces and discrete geodesic certification.

Four copies of the right-angled pentagon with sides (b, b, a, c, a) glue
into a 1-holed square: outer boundary 8b, inner boundary a smooth closed
geodesic of length 4c.  Holed squares tile into rectangular windows; the
grid at level n is 3^(n-1) x 3^(n-1) with 9^(n-1) holes, and level n sits
as the middle block of level n+1.  Gluing the holes pairwise in each row
(each hole to the hole on its right, orientation reversed) closes the
window up into a positive-genus surface.

The discrete model has the pentagon corners as vertices and the pentagon
sides as weighted edges; an optional refinement adds the pentagon diagonals
at their exact hyperbolic lengths.  Certificates are valid for paths inside
the window minus a one-cell safety margin and state their window size.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field

from .errors import EmptySet, ScaleTooLarge, Unreachable
from .hyp_core import (
    PentagonSolution,
    hyp_dist,
    pentagon_vertices,
    solve_pentagon,
)

EDGE_TOL = 1e-12

# face vertex order matches the pentagon side pattern (b, b, a, c, a)
_HOLE_MIRROR = {"N": "N", "S": "S", "E": "W", "W": "E"}


@dataclass(frozen=True)
class HoledSquare:
    """One square tile (side 2b) with a geodesic hole of length 4c."""

    pentagon: PentagonSolution
    outer_boundary_length: float
    inner_boundary_length: float


def build_holed_square(b: float) -> HoledSquare:
    p = solve_pentagon(b)
    return HoledSquare(
        pentagon=p,
        outer_boundary_length=8.0 * p.b,
        inner_boundary_length=4.0 * p.c,
    )


@dataclass
class TiledComplex:
    """Edge-weighted corner graph of a window of holed squares.

    Vertex ids: ('C', r, c) lattice corners, ('HM', r, c) horizontal-side
    midpoints on row line r, ('VM', r, c) vertical-side midpoints on column
    line c, ('H', r, c, pos) hole corners of cell (r, c), pos in NESW.
    """

    pentagon: PentagonSolution
    rows: int
    cols: int
    edges: dict = field(default_factory=dict)  # sorted vertex pair -> length
    faces: list = field(default_factory=list)  # 5-tuples in (b,b,a,c,a) order
    glued_pairs: tuple = ()
    refined: bool = False

    @property
    def b(self) -> float:
        return self.pentagon.b

    def vertices(self) -> set:
        out = set()
        for u, v in self.edges:
            out.add(u)
            out.add(v)
        return out

    def add_edge(self, u, v, length: float) -> None:
        key = tuple(sorted((u, v)))
        old = self.edges.get(key)
        if old is not None and abs(old - length) > EDGE_TOL:
            raise ValueError(
                f"edge {key} assigned inconsistent lengths {old} and {length}"
            )
        self.edges[key] = length

    def inject_edge(self, u, v, length: float) -> "TiledComplex":
        """Copy with an extra (possibly spurious) edge; used by falsifiability
        tests, bypasses the consistency check."""
        clone = TiledComplex(
            pentagon=self.pentagon,
            rows=self.rows,
            cols=self.cols,
            edges=dict(self.edges),
            faces=list(self.faces),
            glued_pairs=self.glued_pairs,
            refined=self.refined,
        )
        clone.edges[tuple(sorted((u, v)))] = length
        return clone

    def adjacency(self) -> dict:
        adj = {}
        for (u, v), w in self.edges.items():
            adj.setdefault(u, []).append((v, w))
            adj.setdefault(v, []).append((u, w))
        return adj

    def alpha_column(self) -> int:
        return self.cols // 2

    def alpha_corner(self, row_line: int):
        return ("C", row_line, self.alpha_column())

    # -- topology -----------------------------------------------------------

    def euler_characteristic(self) -> int:
        face_edges = self._face_edge_incidence()
        return len(self.vertices()) - len(face_edges) + len(self.faces)

    def _face_edge_incidence(self) -> dict:
        inc = {}
        for face in self.faces:
            for i in range(5):
                key = tuple(sorted((face[i], face[(i + 1) % 5])))
                inc[key] = inc.get(key, 0) + 1
        return inc

    def boundary_component_count(self) -> int:
        inc = self._face_edge_incidence()
        boundary = [e for e, n in inc.items() if n == 1]
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in boundary:
            for x in (u, v):
                parent.setdefault(x, x)
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(u) for e in boundary for u in e})

    def genus(self) -> int:
        chi = self.euler_characteristic()
        return (2 - chi - self.boundary_component_count()) // 2


def _cell_faces(r: int, c: int):
    """The four pentagon faces of cell (r, c), each in (b,b,a,c,a) order."""
    C, HM, VM, H = "C", "HM", "VM", "H"
    return [
        ((HM, r, c), (C, r, c + 1), (VM, r, c + 1), (H, r, c, "E"), (H, r, c, "N")),
        ((VM, r, c + 1), (C, r + 1, c + 1), (HM, r + 1, c), (H, r, c, "S"), (H, r, c, "E")),
        ((HM, r + 1, c), (C, r + 1, c), (VM, r, c), (H, r, c, "W"), (H, r, c, "S")),
        ((VM, r, c), (C, r, c), (HM, r, c), (H, r, c, "N"), (H, r, c, "W")),
    ]


def build_grid(b: float, rows: int, cols: int) -> TiledComplex:
    """Window of rows x cols holed squares tiled edge to edge."""
    if rows < 1 or cols < 1:
        raise ValueError(f"window must be at least 1x1, got {rows}x{cols}")
    p = solve_pentagon(b)
    side_lengths = (p.b, p.b, p.a, p.c, p.a)
    t = TiledComplex(pentagon=p, rows=rows, cols=cols)
    for r in range(rows):
        for c in range(cols):
            for face in _cell_faces(r, c):
                t.faces.append(face)
                for i in range(5):
                    t.add_edge(face[i], face[(i + 1) % 5], side_lengths[i])
    return t


def build_Tn(b: float, n: int) -> TiledComplex:
    """Level-n window: a 3^(n-1) x 3^(n-1) grid with 9^(n-1) holes."""
    if not 1 <= n <= 3:
        raise ScaleTooLarge(f"tiling level must be in [1, 3], got {n}")
    m = 3 ** (n - 1)
    return build_grid(b, m, m)


def middle_block_offset(n: int) -> int:
    """Cell (r, c) of the level-n window sits at (r + off, c + off) in the
    level-(n+1) window."""
    return 3 ** (n - 1)


def glue_to_Rb(t: TiledComplex) -> TiledComplex:
    """Identify each hole with the hole to its right, orientation reversed.

    Holes are paired per row in columns (0,1), (2,3), ...; with an odd
    column count the last column's holes stay unglued (they sit in the
    safety margin of any certificate).  The identification matches N to N
    and S to S and swaps E and W, preserving pentagon-edge labels.
    """
    rep = {}

    def canon(v):
        while v in rep:
            v = rep[v]
        return v

    pairs = []
    for r in range(t.rows):
        for c in range(0, t.cols - 1, 2):
            pairs.append(((r, c), (r, c + 1)))
            for pos, mirrored in _HOLE_MIRROR.items():
                rep[("H", r, c + 1, mirrored)] = ("H", r, c, pos)
    out = TiledComplex(
        pentagon=t.pentagon,
        rows=t.rows,
        cols=t.cols,
        glued_pairs=tuple(pairs),
        refined=t.refined,
    )
    for (u, v), w in t.edges.items():
        out.add_edge(canon(u), canon(v), w)
    for face in t.faces:
        out.faces.append(tuple(canon(v) for v in face))
    return out


def dijkstra(t: TiledComplex, sources, targets=None) -> dict:
    """Exact shortest-path distances from the source set; stops early when
    all targets are settled if a target set is given."""
    adj = t.adjacency()
    dist = {}
    heap = []
    for s in sources:
        if s not in adj:
            raise Unreachable(f"vertex {s} not present in the complex")
        heapq.heappush(heap, (0.0, s))
    remaining = set(targets) if targets is not None else None
    while heap:
        d, v = heapq.heappop(heap)
        if v in dist:
            continue
        dist[v] = d
        if remaining is not None:
            remaining.discard(v)
            if not remaining:
                break
        for w, length in adj[v]:
            if w not in dist:
                heapq.heappush(heap, (d + length, w))
    return dist


def discrete_distance(t: TiledComplex, x, y) -> float:
    """Shortest edge-path length between two corners of the complex."""
    if x == y:
        verts = t.vertices()
        if x not in verts:
            raise Unreachable(f"vertex {x} not present in the complex")
        return 0.0
    dist = dijkstra(t, [x], targets=[y])
    if y not in dist:
        raise Unreachable(f"no edge path connects {x} and {y}")
    return dist[y]


def _row_line_vertices(t: TiledComplex, row_line: int):
    return [
        v
        for v in t.vertices()
        if (v[0] == "C" and v[1] == row_line) or (v[0] == "HM" and v[1] == row_line)
    ]


@dataclass(frozen=True)
class VerticalCertificate:
    b: float
    n: int
    window: tuple[int, int]
    refined: bool
    distance: float
    expected: float
    dijkstra_equality: bool
    row_crossing_bound: bool

    @property
    def passes(self) -> bool:
        return self.dijkstra_equality and self.row_crossing_bound

    def to_json(self) -> str:
        return json.dumps(
            {
                "b": self.b,
                "n": self.n,
                "window": list(self.window),
                "refined": self.refined,
                "distance": self.distance,
                "expected": self.expected,
                "dijkstra_equality": self.dijkstra_equality,
                "row_crossing_bound": self.row_crossing_bound,
                "passes": self.passes,
            },
            sort_keys=True,
        )


def certify_vertical_minimizing(t: TiledComplex, n: int, tol: float = 1e-9) -> VerticalCertificate:
    """Certify that the vertical line through the window's middle column
    minimizes distance over n rows.

    Two checks: (1) the Dijkstra distance between vertical-line corners n
    rows apart equals 2nb; (2) the multi-source line-to-line distance shows
    every edge path crossing the n horizontal lines has length >= 2nb.
    Corners stay one row inside the window boundary (safety margin).
    """
    if n < 1:
        raise ValueError(f"row separation must be >= 1, got {n}")
    if n > t.rows - 2:
        raise ScaleTooLarge(
            f"window with {t.rows} rows is too short for n={n} plus margin"
        )
    r0 = max(1, (t.rows - n) // 2)
    x = t.alpha_corner(r0)
    y = t.alpha_corner(r0 + n)
    expected = 2.0 * n * t.b
    d = discrete_distance(t, x, y)
    top = _row_line_vertices(t, r0)
    bottom = set(_row_line_vertices(t, r0 + n))
    line_dist = dijkstra(t, top, targets=bottom)
    min_cross = min(line_dist[v] for v in bottom if v in line_dist)
    return VerticalCertificate(
        b=t.b,
        n=n,
        window=(t.rows, t.cols),
        refined=t.refined,
        distance=d,
        expected=expected,
        dijkstra_equality=abs(d - expected) < tol,
        row_crossing_bound=min_cross >= expected - tol,
    )


def add_diagonals(t: TiledComplex) -> TiledComplex:
    """Refinement adding the five pentagon diagonals, at their exact
    hyperbolic chord lengths, to every face."""
    pts = pentagon_vertices(t.pentagon)
    diag = {
        (i, (i + 2) % 5): hyp_dist(pts[i], pts[(i + 2) % 5]) for i in range(5)
    }
    out = TiledComplex(
        pentagon=t.pentagon,
        rows=t.rows,
        cols=t.cols,
        edges=dict(t.edges),
        faces=list(t.faces),
        glued_pairs=t.glued_pairs,
        refined=True,
    )
    for face in t.faces:
        for (i, j), length in diag.items():
            out.add_edge(face[i], face[j], length)
    return out


def hausdorff_distance(P, Q, metric) -> float:
    """Hausdorff distance between two non-empty finite point sets: the max
    of the two directed sup-inf distances."""
    P, Q = list(P), list(Q)
    if not P or not Q:
        raise EmptySet("Hausdorff distance needs two non-empty sets")
    forward = max(min(metric(p, q) for q in Q) for p in P)
    backward = max(min(metric(p, q) for p in P) for q in Q)
    return max(forward, backward)


def set_distance(P, Q, metric) -> float:
    """min-min distance between two non-empty finite point sets."""
    P, Q = list(P), list(Q)
    if not P or not Q:
        raise EmptySet("set distance needs two non-empty sets")
    return min(metric(p, q) for p in P for q in Q)
