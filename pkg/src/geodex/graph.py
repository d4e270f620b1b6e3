"""Finite simple undirected graphs and their exact invariants.

Vertices are 0-indexed; the vertex order is canonical-by-input and never
silently relabeled.  Distance-based operations require connectivity and raise
Disconnected otherwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    Acyclic,
    BadHeader,
    Disconnected,
    LoopEdge,
    NotCubic,
    NotRegular,
    SExceedsDiameter,
    TruncatedPayload,
    VertexOutOfRange,
)


@dataclass(frozen=True)
class Graph:
    """Immutable graph as a tuple of sorted neighbor tuples."""

    adjacency: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nbrs) for nbrs in self.adjacency)

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    @property
    def valency(self) -> int:
        degs = set(self.degrees())
        if len(degs) != 1:
            raise NotRegular(f"degrees vary: {sorted(degs)}")
        return degs.pop()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets()[u]

    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        if "adjsets" not in self._cache:
            self._cache["adjsets"] = tuple(frozenset(nbrs) for nbrs in self.adjacency)
        return self._cache["adjsets"]

    @property
    def connected(self) -> bool:
        if "connected" not in self._cache:
            if self.n == 0:
                self._cache["connected"] = False
            else:
                seen = _bfs_reach(self.adjacency, 0)
                self._cache["connected"] = len(seen) == self.n
        return self._cache["connected"]

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges()]}

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _bfs_reach(adjacency, root) -> set[int]:
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def build_graph(n: int, edges) -> Graph:
    """Build a simple graph from an edge list (deduplicated, symmetrized)."""
    if n < 0:
        raise VertexOutOfRange("vertex count must be nonnegative")
    nbrs = [set() for _ in range(n)]
    for edge in edges:
        u, v = edge
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge {{{u},{v}}} outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    graph = Graph(tuple(tuple(sorted(s)) for s in nbrs))
    graph.connected  # computed and cached at build
    return graph


def graph_from_json(data: dict) -> Graph:
    return build_graph(data["n"], data["edges"])


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

def distances(graph: Graph, u: int) -> tuple[int, ...]:
    """BFS distance vector from u; requires a connected graph."""
    if not 0 <= u < graph.n:
        raise VertexOutOfRange(f"vertex {u} outside 0..{graph.n - 1}")
    if not graph.connected:
        raise Disconnected("distance vector undefined on a disconnected graph")
    return _distance_row(graph, u)


def _distance_row(graph: Graph, u: int) -> tuple[int, ...]:
    dist = [-1] * graph.n
    dist[u] = 0
    queue = deque([u])
    adjacency = graph.adjacency
    while queue:
        x = queue.popleft()
        dx = dist[x]
        for y in adjacency[x]:
            if dist[y] < 0:
                dist[y] = dx + 1
                queue.append(y)
    return tuple(dist)


def distance_matrix(graph: Graph) -> tuple[tuple[int, ...], ...]:
    if "distmat" not in graph._cache:
        if not graph.connected:
            raise Disconnected("distance matrix undefined on a disconnected graph")
        graph._cache["distmat"] = tuple(_distance_row(graph, u) for u in range(graph.n))
    return graph._cache["distmat"]


def eccentricity(graph: Graph, u: int) -> int:
    return max(distances(graph, u))


def diameter(graph: Graph) -> int:
    if "diameter" not in graph._cache:
        graph._cache["diameter"] = max(max(row) for row in distance_matrix(graph))
    return graph._cache["diameter"]


# ---------------------------------------------------------------------------
# girth
# ---------------------------------------------------------------------------

def girth(graph: Graph) -> int:
    """Length of a shortest cycle; raises Acyclic on forests."""
    return girth_cycle(graph)[0]


def girth_cycle(graph: Graph) -> tuple[int, list[int]]:
    """(girth, one shortest cycle as a vertex list)."""
    if "girth_cycle" in graph._cache:
        return graph._cache["girth_cycle"]
    best = None
    best_cycle = None
    adjacency = graph.adjacency
    n = graph.n
    for root in range(n):
        # BFS with parent tracking; a non-tree edge (x, y) closes a cycle
        # of length dist[x] + dist[y] + 1 through the root.  The minimum over
        # all roots is exact because a shortest cycle realizes it at each of
        # its own vertices.
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            if best is not None and 2 * dx >= best:
                break
            for y in adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dx + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x] and dist[y] >= dx:
                    candidate = dx + dist[y] + 1
                    if best is None or candidate < best:
                        # tree paths may share a prefix, so the real cycle can
                        # be shorter than the candidate bound; measure it
                        cycle = _assemble_cycle(parent, x, y)
                        if best is None or len(cycle) < best:
                            best = len(cycle)
                            best_cycle = cycle
    if best is None:
        raise Acyclic("graph has no cycle")
    graph._cache["girth_cycle"] = (best, best_cycle)
    return best, best_cycle


def _assemble_cycle(parent, x, y) -> list[int]:
    path_x = [x]
    while parent[path_x[-1]] >= 0:
        path_x.append(parent[path_x[-1]])
    path_y = [y]
    while parent[path_y[-1]] >= 0:
        path_y.append(parent[path_y[-1]])
    # strip the common tail above the lowest common ancestor
    while len(path_x) > 1 and len(path_y) > 1 and path_x[-2] == path_y[-2]:
        path_x.pop()
        path_y.pop()
    return path_x[:-1] + list(reversed(path_y))


def shortest_cycle_through_edge(graph: Graph, u: int, v: int) -> list[int] | None:
    """Shortest cycle containing edge {u, v}, or None if the edge is a bridge."""
    if not graph.has_edge(u, v):
        raise VertexOutOfRange(f"{{{u},{v}}} is not an edge")
    dist = [-1] * graph.n
    parent = [-1] * graph.n
    dist[u] = 0
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in graph.adjacency[x]:
            if x == u and y == v:
                continue
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue.append(y)
                if y == v:
                    queue.clear()
                    break
    if dist[v] < 0:
        return None
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return list(reversed(path))


# ---------------------------------------------------------------------------
# arcs and geodesics
# ---------------------------------------------------------------------------

def enumerate_arcs(graph: Graph, s: int) -> list[tuple[int, ...]]:
    """All s-arcs: walks with consecutive adjacency and no immediate backtrack."""
    if s < 1:
        raise ValueError("s must be at least 1")
    adjacency = graph.adjacency
    arcs = [(u, v) for u in range(graph.n) for v in adjacency[u]]
    for _ in range(s - 1):
        arcs = [
            arc + (w,)
            for arc in arcs
            for w in adjacency[arc[-1]]
            if w != arc[-2]
        ]
    return arcs


def count_arcs(graph: Graph, s: int) -> int:
    """Number of s-arcs via dynamic programming on directed edges."""
    if s < 1:
        raise ValueError("s must be at least 1")
    counts = {(u, v): 1 for u in range(graph.n) for v in graph.adjacency[u]}
    for _ in range(s - 1):
        nxt = dict.fromkeys(counts, 0)
        for (u, v), c in counts.items():
            for w in graph.adjacency[v]:
                if w != u:
                    nxt[(v, w)] += c
        counts = nxt
    return sum(counts.values())


def first_arc(graph: Graph, s: int) -> tuple[int, ...] | None:
    """Lexicographically least s-arc, or None."""
    if s < 1:
        raise ValueError("s must be at least 1")
    adjacency = graph.adjacency
    for start in range(graph.n):
        stack = [(start,)]
        while stack:
            arc = stack.pop()
            if len(arc) == s + 1:
                return arc
            prev = arc[-2] if len(arc) >= 2 else -1
            for w in reversed(adjacency[arc[-1]]):
                if w != prev:
                    stack.append(arc + (w,))
    return None


def enumerate_geodesics(graph: Graph, s: int) -> list[tuple[int, ...]]:
    """All s-geodesics: s-arcs whose endpoints are at distance exactly s."""
    _check_geodesic_level(graph, s)
    dist = distance_matrix(graph)
    out = []
    adjacency = graph.adjacency
    for u in range(graph.n):
        du = dist[u]
        stack = [(u,)]
        while stack:
            path = stack.pop()
            if len(path) == s + 1:
                out.append(path)
                continue
            depth = len(path)
            for w in reversed(adjacency[path[-1]]):
                if du[w] == depth:
                    stack.append(path + (w,))
    return out


def count_geodesics(graph: Graph, s: int) -> int:
    _check_geodesic_level(graph, s)
    dist = distance_matrix(graph)
    total = 0
    for u in range(graph.n):
        du = dist[u]
        level = {u: 1}
        for depth in range(1, s + 1):
            nxt: dict[int, int] = {}
            for x, c in level.items():
                for y in graph.adjacency[x]:
                    if du[y] == depth:
                        nxt[y] = nxt.get(y, 0) + c
            level = nxt
        total += sum(level.values())
    return total


def first_geodesic(graph: Graph, s: int) -> tuple[int, ...] | None:
    """Lexicographically least s-geodesic, or None.

    Descends the BFS level structure with backtracking: a branch can dead-end
    on a vertex with no neighbor in the next level, so greedy descent alone
    would be wrong.
    """
    _check_geodesic_level(graph, s)
    dist = distance_matrix(graph)
    for u in range(graph.n):
        du = dist[u]
        stack = [(u,)]
        while stack:
            path = stack.pop()
            if len(path) == s + 1:
                return path
            depth = len(path)
            for w in reversed(graph.adjacency[path[-1]]):
                if du[w] == depth:
                    stack.append(path + (w,))
    return None


def _check_geodesic_level(graph: Graph, s: int) -> None:
    if s < 1:
        raise ValueError("s must be at least 1")
    d = diameter(graph)  # raises Disconnected when appropriate
    if s > d:
        raise SExceedsDiameter(f"s={s} exceeds diameter {d}")


# ---------------------------------------------------------------------------
# intersection parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionData:
    """Per-level (a_i, b_i, c_i) counts around one base vertex.

    levels[i] is an (a, b, c) triple, or None when vertices of the i-th
    distance layer disagree; a disagreeing pair is then recorded in
    witnesses[i].
    """

    base: int
    levels: tuple[tuple[int, int, int] | None, ...]
    witnesses: dict[int, tuple[int, int]]

    @property
    def defined(self) -> bool:
        return all(level is not None for level in self.levels)

    @property
    def eccentricity(self) -> int:
        return len(self.levels) - 1


def intersection_data(graph: Graph, u: int) -> IntersectionData:
    dist = distances(graph, u)
    ecc = max(dist)
    layers: list[list[int]] = [[] for _ in range(ecc + 1)]
    for v, d in enumerate(dist):
        layers[d].append(v)
    levels: list[tuple[int, int, int] | None] = []
    witnesses: dict[int, tuple[int, int]] = {}
    for i, layer in enumerate(layers):
        triple = None
        witness = None
        for v in layer:
            a = b = c = 0
            for w in graph.adjacency[v]:
                if dist[w] == i:
                    a += 1
                elif dist[w] == i + 1:
                    b += 1
                else:
                    c += 1
            if triple is None:
                triple = (a, b, c)
                first = v
            elif triple != (a, b, c):
                witness = (first, v)
                break
        if witness is not None:
            levels.append(None)
            witnesses[i] = witness
        else:
            levels.append(triple)
    return IntersectionData(u, tuple(levels), witnesses)


@dataclass(frozen=True)
class IntersectionArray:
    """Global array {b_0, ..., b_{d-1}; c_1, ..., c_d} of a distance-regular graph."""

    b: tuple[int, ...]
    c: tuple[int, ...]

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"

    @property
    def diameter(self) -> int:
        return len(self.c)


def intersection_array(graph: Graph) -> IntersectionArray | None:
    """The intersection array, or None when the graph is not distance-regular."""
    if not graph.is_regular():
        raise NotRegular("intersection array requires a regular graph")
    reference = None
    for u in range(graph.n):
        data = intersection_data(graph, u)
        if not data.defined:
            return None
        if reference is None:
            reference = data.levels
        elif data.levels != reference:
            return None
    assert reference is not None
    b = tuple(level[1] for level in reference[:-1])
    c = tuple(level[2] for level in reference[1:])
    return IntersectionArray(b, c)


# ---------------------------------------------------------------------------
# structural probes
# ---------------------------------------------------------------------------

def bipartition(graph: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """2-coloring classes (first class holds the least vertex of each component)."""
    color = [-1] * graph.n
    for root in range(graph.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in graph.adjacency[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    part0 = tuple(v for v in range(graph.n) if color[v] == 0)
    part1 = tuple(v for v in range(graph.n) if color[v] == 1)
    return part0, part1


@dataclass(frozen=True)
class ShapeInfo:
    bipartition: tuple[tuple[int, ...], tuple[int, ...]] | None
    complete_multipartite: bool
    parts: tuple[tuple[int, ...], ...] | None

    @property
    def bipartite(self) -> bool:
        return self.bipartition is not None


def classify_shape(graph: Graph) -> ShapeInfo:
    """Bipartiteness (with the 2-coloring) and complete-multipartite structure."""
    two_coloring = bipartition(graph)
    # complete multipartite <=> every component of the complement is an
    # independent set of the graph (the components are then the parts)
    adjsets = graph.neighbor_sets()
    unvisited = set(range(graph.n))
    parts = []
    is_cm = True
    while unvisited and is_cm:
        root = min(unvisited)
        comp = {root}
        queue = [root]
        while queue:
            x = queue.pop()
            non_nbrs = unvisited - adjsets[x] - comp
            comp |= non_nbrs
            queue.extend(non_nbrs)
        unvisited -= comp
        for x in comp:
            if adjsets[x] & comp:
                is_cm = False
                break
        parts.append(tuple(sorted(comp)))
    return ShapeInfo(
        bipartition=two_coloring,
        complete_multipartite=is_cm,
        parts=tuple(parts) if is_cm else None,
    )


def standard_double_cover(graph: Graph) -> Graph:
    """Graph on V x {0,1} with (u,0) ~ (v,1) iff u ~ v; always bipartite."""
    n = graph.n
    edges = []
    for u, v in graph.edges():
        edges.append((u, v + n))
        edges.append((v, u + n))
    return build_graph(2 * n, edges)


# ---------------------------------------------------------------------------
# LCF notation
# ---------------------------------------------------------------------------

def lcf_decode(offsets, repeat: int) -> Graph:
    """Cubic graph from LCF notation: a Hamiltonian n-cycle plus chords
    i -> i + offsets[i mod len(offsets)] (mod n), n = repeat * len(offsets)."""
    offsets = list(offsets)
    if not offsets or repeat < 1:
        raise NotCubic("need a nonempty offset list and repeat >= 1")
    n = len(offsets) * repeat
    if n < 4:
        raise NotCubic(f"{n} vertices cannot form a cubic graph")
    edges = [(i, (i + 1) % n) for i in range(n)]
    for i in range(n):
        off = offsets[i % len(offsets)]
        if off % n == 0:
            raise NotCubic(f"offset {off} at vertex {i} yields a loop")
        if off % n in (1, n - 1):
            raise NotCubic(f"offset {off} at vertex {i} duplicates a cycle edge")
        edges.append((i, (i + off) % n))
    graph = build_graph(n, edges)
    if any(d != 3 for d in graph.degrees()):
        raise NotCubic("chord multiset collides: result is not cubic")
    return graph


def lcf_parse(text: str) -> tuple[list[int], int]:
    """Parse an LCF spec string like "[17,-9,37,-37,9,-17]^15"."""
    s = text.strip()
    if "^" not in s or not s.startswith("["):
        raise ValueError(f"not an LCF spec: {text!r}")
    body, _, exponent = s.partition("^")
    body = body.strip()
    if not body.endswith("]"):
        raise ValueError(f"not an LCF spec: {text!r}")
    offsets = [int(tok) for tok in body[1:-1].replace(" ", "").split(",") if tok]
    return offsets, int(exponent)


# ---------------------------------------------------------------------------
# graph6 / sparse6 codecs
# ---------------------------------------------------------------------------

_G6_MIN, _G6_MAX = 63, 126


def _g6_encode_n(n: int) -> str:
    if n < 0:
        raise BadHeader("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(
            chr(((n >> shift) & 63) + 63) for shift in (30, 24, 18, 12, 6, 0)
        )
    raise BadHeader("vertex count too large for graph6")


def _g6_decode_n(data: str) -> tuple[int, str]:
    if not data:
        raise BadHeader("empty graph6 string")
    if data[0] != "~":
        return ord(data[0]) - 63, data[1:]
    if len(data) >= 2 and data[1] != "~":
        if len(data) < 4:
            raise TruncatedPayload("truncated 3-byte vertex count")
        chunk, rest = data[1:4], data[4:]
    else:
        if len(data) < 8:
            raise TruncatedPayload("truncated 6-byte vertex count")
        chunk, rest = data[2:8], data[8:]
    n = 0
    for ch in chunk:
        n = (n << 6) | (ord(ch) - 63)
    return n, rest


def _strip_header(text: str, kind: str) -> str:
    header = f">>{kind}<<"
    if text.startswith(header):
        return text[len(header):]
    return text


def graph6_encode(graph: Graph) -> str:
    """Encode as graph6 (column-major upper-triangle bit stream)."""
    n = graph.n
    adjsets = graph.neighbor_sets()
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if i in adjsets[j] else 0)
    while len(bits) % 6:
        bits.append(0)
    payload = []
    for k in range(0, len(bits), 6):
        value = 0
        for bit in bits[k:k + 6]:
            value = (value << 1) | bit
        payload.append(chr(value + 63))
    return _g6_encode_n(n) + "".join(payload)


def graph6_decode(text: str) -> Graph:
    """Decode a graph6 string (optional ">>graph6<<" header allowed)."""
    s = _strip_header(text.strip(), "graph6")
    if s.startswith(":"):
        raise BadHeader("sparse6 payload passed to graph6_decode")
    for ch in s:
        if not _G6_MIN <= ord(ch) <= _G6_MAX:
            raise BadHeader(f"invalid graph6 character {ch!r}")
    n, rest = _g6_decode_n(s)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(rest) < need:
        raise TruncatedPayload(f"need {need} payload characters, got {len(rest)}")
    if len(rest) > need:
        raise BadHeader("trailing characters after graph6 payload")
    bits = []
    for ch in rest:
        value = ord(ch) - 63
        bits.extend((value >> shift) & 1 for shift in (5, 4, 3, 2, 1, 0))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def sparse6_decode(text: str) -> Graph:
    """Decode a sparse6 string (":" prefix, optional ">>sparse6<<" header)."""
    s = _strip_header(text.strip(), "sparse6")
    if not s.startswith(":"):
        raise BadHeader("sparse6 strings start with ':'")
    s = s[1:]
    for ch in s:
        if not _G6_MIN <= ord(ch) <= _G6_MAX:
            raise BadHeader(f"invalid sparse6 character {ch!r}")
    n, rest = _g6_decode_n(s)
    k = max(1, (n - 1).bit_length())
    bits = []
    for ch in rest:
        value = ord(ch) - 63
        bits.extend((value >> shift) & 1 for shift in (5, 4, 3, 2, 1, 0))
    edges = []
    v = 0
    pos = 0
    while pos + 1 + k <= len(bits):
        b = bits[pos]
        x = 0
        for bit in bits[pos + 1:pos + 1 + k]:
            x = (x << 1) | bit
        pos += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        elif x != v:
            edges.append((x, v))
    return build_graph(n, edges)


def decode(text: str) -> Graph:
    """Decode either format, keying off the ':' prefix / headers."""
    s = text.strip()
    if s.startswith(">>sparse6<<") or _strip_header(s, "graph6").startswith(":"):
        return sparse6_decode(s)
    return graph6_decode(s)


def is_generalized_polygon(graph: Graph, d: int) -> bool:
    """Bipartite with diameter d and girth 2d."""
    if not graph.connected:
        raise Disconnected("generalized polygons are connected")
    if bipartition(graph) is None:
        return False
    if diameter(graph) != d:
        return False
    try:
        return girth(graph) == 2 * d
    except Acyclic:
        return False
