"""Automorphism search, isomorphism testing, and transitivity/primitivity
deciders for finite graphs with explicit permutation groups.

The automorphism engine is a backtracking search over partial vertex maps,
pruned by equitable-partition colors and full distance consistency against
every mapped vertex.  Transitivity at level s is decided by orbit-size
arithmetic (group order over tuple-stabilizer order against the total tuple
count), never by listing tuple orbits.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from . import graph as graphmod
from . import perm as permmod
from .errors import (
    Acyclic,
    Disconnected,
    GraphTooLarge,
    NotAutomorphisms,
    NotTransitive,
    NotVertexTransitive,
    PreconditionUnverified,
    SExceedsDiameter,
    ValencyNotPrimePowerPlusOne,
)
from .graph import Graph
from .perm import PermGroup, Permutation, build_group

#: automorphism/isomorphism search refuses graphs larger than this
AUTOMORPHISM_VERTEX_CAP = 512


# ---------------------------------------------------------------------------
# colorings
# ---------------------------------------------------------------------------

def _refine(adjacency, colors):
    """Equitable refinement with canonical (label-independent) color ids."""
    n = len(adjacency)
    ncolors = len(set(colors))
    while True:
        sigs = [
            (colors[u], tuple(sorted(colors[w] for w in adjacency[u])))
            for u in range(n)
        ]
        ids = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        colors = [ids[sig] for sig in sigs]
        if len(ids) == ncolors:
            return colors
        ncolors = len(ids)


def _initial_colors(graph: Graph):
    """Degree-based equitable coloring with canonical ids."""
    degs = graph.degrees()
    ids = {d: i for i, d in enumerate(sorted(set(degs)))}
    return _refine(graph.adjacency, [ids[d] for d in degs])


def _distance_rows(graph: Graph):
    """All-pairs BFS distances with -1 for unreachable pairs (cached)."""
    if "distrows" not in graph._cache:
        graph._cache["distrows"] = tuple(
            graphmod._distance_row(graph, u) for u in range(graph.n)
        )
    return graph._cache["distrows"]


# ---------------------------------------------------------------------------
# the backtracking search
# ---------------------------------------------------------------------------

def _search_map(g1, g2, colors1, colors2, seeds):
    """One color/distance-consistent isomorphism g1 -> g2 extending ``seeds``
    (pairs (source, target)), or None.  Both graphs must be connected.

    Backtracking always extends a most-constrained vertex (most mapped
    neighbors, lowest index on ties): refutations close cycles as early as
    possible, which keeps the search shallow even on highly regular graphs.
    """
    n = g1.n
    if g2.n != n:
        return None
    adj1, adj2 = g1.adjacency, g2.adjacency
    dist1, dist2 = _distance_rows(g1), _distance_rows(g2)

    mapping = [-1] * n
    used = [False] * g2.n
    mapped: list[int] = []
    nbr_mapped = [0] * n  # per source vertex: how many neighbors are mapped

    def assign(u, t) -> bool:
        if mapping[u] != -1:
            return mapping[u] == t
        if used[t] or colors1[u] != colors2[t]:
            return False
        d1u = dist1[u]
        d2t = dist2[t]
        for q in mapped:
            if d1u[q] != d2t[mapping[q]]:
                return False
        mapping[u] = t
        used[t] = True
        mapped.append(u)
        for w in adj1[u]:
            nbr_mapped[w] += 1
        return True

    def unassign_to(size) -> None:
        while len(mapped) > size:
            u = mapped.pop()
            used[mapping[u]] = False
            mapping[u] = -1
            for w in adj1[u]:
                nbr_mapped[w] -= 1

    for u, t in seeds:
        if not assign(u, t):
            return None

    if len(_bfs_sources(adj1, [u for u, _ in seeds])) != n:
        return None  # disconnected source side

    def extend() -> bool:
        if len(mapped) == n:
            return True
        u = -1
        best = 0
        for v in range(n):
            if mapping[v] == -1 and nbr_mapped[v] > best:
                best = nbr_mapped[v]
                u = v
        anchor = next(q for q in adj1[u] if mapping[q] != -1)
        checkpoint = len(mapped)
        for t in adj2[mapping[anchor]]:
            if assign(u, t):
                if extend():
                    return True
                unassign_to(checkpoint)
        return False

    if not extend():
        return None
    result = tuple(mapping)
    adjsets2 = g2.neighbor_sets()
    for u in range(n):
        for w in adj1[u]:
            if result[w] not in adjsets2[result[u]]:
                raise AssertionError("search produced a non-isomorphism")
    return result


def _bfs_sources(adjacency, roots):
    seen = set(roots)
    queue = deque(roots)
    while queue:
        x = queue.popleft()
        for y in adjacency[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _closure(gens_raw, seed):
    out = set(seed)
    queue = list(seed)
    while queue:
        p = queue.pop()
        for g in gens_raw:
            q = g[p]
            if q not in out:
                out.add(q)
                queue.append(q)
    return out


def automorphism_group(graph: Graph, cap: int = AUTOMORPHISM_VERTEX_CAP) -> PermGroup:
    """Full automorphism group via individualization plus backtracking.

    Builds generators level by level along a base: at each level it finds one
    automorphism per new orbit point of the chosen branch vertex, skipping
    targets already reachable (or already refuted) under the generators found
    so far.
    """
    if graph.n > cap:
        raise GraphTooLarge(f"{graph.n} vertices exceeds the search cap {cap}")
    if graph.n == 0 or not graph.connected:
        raise Disconnected("automorphism search requires a connected graph")
    base_colors = _initial_colors(graph)
    n = graph.n

    gens_raw: list[tuple[int, ...]] = []
    fixed: list[int] = []
    while True:
        work = list(base_colors)
        shift = n  # individualized points get fresh unique colors
        for f in fixed:
            work[f] = shift
            shift += 1
        level_colors = _refine(graph.adjacency, work)
        cells: dict[int, list[int]] = {}
        for u, c in enumerate(level_colors):
            cells.setdefault(c, []).append(u)
        candidates = [(len(cell), c, cell) for c, cell in cells.items() if len(cell) > 1]
        if not candidates:
            break
        _, _, branch = min(candidates, key=lambda item: item[:2])
        v = min(branch)
        level_gens: list[tuple[int, ...]] = []
        reached = {v}
        failed: set[int] = set()
        seeds_base = [(f, f) for f in fixed]
        for w in sorted(branch):
            if w == v or w in reached:
                continue
            orbit_w = _closure(level_gens, {w})
            if orbit_w & failed:
                failed |= orbit_w
                continue
            found = _search_map(
                graph, graph, level_colors, level_colors, seeds_base + [(v, w)]
            )
            if found is not None:
                level_gens.append(found)
                reached = _closure(level_gens, {v})
            else:
                failed |= orbit_w
        gens_raw.extend(level_gens)
        fixed.append(v)
    return build_group([Permutation(g) for g in gens_raw], degree=n)


def are_isomorphic(g1: Graph, g2: Graph):
    """A vertex bijection g1 -> g2 (as an image tuple), or None.

    Works for disconnected inputs by matching components.
    """
    if g1.n != g2.n or g1.m != g2.m:
        return None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return None
    if g1.n == 0:
        return ()
    if not g1.connected or not g2.connected:
        if g1.connected != g2.connected:
            return None
        return _match_components(g1, g2)

    joint = _joint_colors(g1, g2)
    if joint is None:
        return None
    colors1, colors2 = joint
    cell_of: dict[int, list[int]] = {}
    for t, c in enumerate(colors2):
        cell_of.setdefault(c, []).append(t)
    # branch on a smallest cell for the fewest root candidates
    root = min(range(g1.n), key=lambda u: (len(cell_of.get(colors1[u], ())), colors1[u], u))
    for t in cell_of.get(colors1[root], ()):
        found = _search_map(g1, g2, colors1, colors2, [(root, t)])
        if found is not None:
            return found
    return None


def _joint_colors(g1: Graph, g2: Graph):
    """Comparable color vectors for both graphs.

    Color ids are assigned in sorted-signature order at every stage, which is
    label-independent, so isomorphic graphs get corresponding ids.  On
    non-isomorphic inputs ids may coincide spuriously; the search then simply
    fails on the real constraints.
    """
    colors1 = _initial_colors(g1)
    colors2 = _initial_colors(g2)
    if sorted(colors1) != sorted(colors2):
        return None
    return colors1, colors2


def _components(graph: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for root in range(graph.n):
        if root in seen:
            continue
        comp = sorted(graphmod._bfs_reach(graph.adjacency, root))
        seen.update(comp)
        comps.append(comp)
    return comps


def _subgraph(graph: Graph, vertices: list[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    edges = [
        (index[u], index[v])
        for u, v in graph.edges()
        if u in index and v in index
    ]
    return graphmod.build_graph(len(vertices), edges)


def _match_components(g1: Graph, g2: Graph):
    """Isomorphism between disconnected graphs by greedy component matching.

    Greedy is complete here: isomorphism between components is an equivalence
    relation, so any isomorphic partner is as good as any other.
    """
    comps1 = [_subgraph(g1, c) for c in _components(g1)]
    comps2 = [_subgraph(g2, c) for c in _components(g2)]
    verts1 = _components(g1)
    verts2 = _components(g2)
    unused = list(range(len(comps2)))
    mapping = [-1] * g1.n
    for i, sub1 in enumerate(comps1):
        for j in list(unused):
            sub_map = are_isomorphic(sub1, comps2[j])
            if sub_map is not None:
                for a, b in enumerate(sub_map):
                    mapping[verts1[i][a]] = verts2[j][b]
                unused.remove(j)
                break
        else:
            return None
    return tuple(mapping)


# ---------------------------------------------------------------------------
# transitivity
# ---------------------------------------------------------------------------

def validate_automorphisms(graph: Graph, group: PermGroup) -> None:
    """Raise NotAutomorphisms unless every generator preserves adjacency."""
    if group.degree != graph.n:
        raise NotAutomorphisms(
            f"group degree {group.degree} does not match {graph.n} vertices"
        )
    adjsets = graph.neighbor_sets()
    for g in group.generators:
        images = g.images
        for u, v in graph.edges():
            if images[v] not in adjsets[images[u]]:
                raise NotAutomorphisms(
                    f"generator {g.cycle_string()} breaks edge {{{u},{v}}}"
                )


def _tuple_orbit_matches(graph: Graph, group: PermGroup, rep, total: int) -> bool:
    """True iff the G-orbit of ``rep`` has size ``total`` (orbit-stabilizer)."""
    stab = permmod.pointwise_stabilizer(group, rep)
    return group.order() == total * stab.order()


def is_s_arc_transitive(graph: Graph, group: PermGroup, s: int) -> bool:
    """G transitive on the s-arcs (decided by orbit-size arithmetic)."""
    if s < 1:
        raise ValueError("s must be at least 1")
    validate_automorphisms(graph, group)
    total = graphmod.count_arcs(graph, s)
    if total == 0:
        return False
    rep = graphmod.first_arc(graph, s)
    return _tuple_orbit_matches(graph, group, rep, total)


def is_s_geodesic_transitive(graph: Graph, group: PermGroup, s: int) -> bool:
    """G transitive on i-geodesics for every i <= s."""
    validate_automorphisms(graph, group)
    graphmod._check_geodesic_level(graph, s)
    return all(_geodesic_level_transitive(graph, group, i) for i in range(1, s + 1))


def _geodesic_level_transitive(graph: Graph, group: PermGroup, i: int) -> bool:
    total = graphmod.count_geodesics(graph, i)
    if total == 0:
        return False
    rep = graphmod.first_geodesic(graph, i)
    return _tuple_orbit_matches(graph, group, rep, total)


@dataclass(frozen=True)
class TransitivityReport:
    """Largest arc- and geodesic-transitivity levels of (graph, group)."""

    arc_degree: int
    geodesic_degree: int
    geodesic_transitive: bool
    b_s_shortcut_used: bool
    shortcut_level: int | None = None
    arc_degree_capped: bool = False

    def to_json(self) -> dict:
        return {
            "arc_degree": self.arc_degree,
            "geodesic_degree": self.geodesic_degree,
            "geodesic_transitive": self.geodesic_transitive,
            "b_s_shortcut_used": self.b_s_shortcut_used,
            "shortcut_level": self.shortcut_level,
            "arc_degree_capped": self.arc_degree_capped,
        }


def transitivity_degrees(graph: Graph, group: PermGroup) -> TransitivityReport:
    """Ascending scan of both transitivity levels.

    Once level s is geodesic transitive and the globally defined b_s is at
    most 1, the graph is geodesic transitive outright and deeper levels are
    skipped (recorded in b_s_shortcut_used).
    """
    validate_automorphisms(graph, group)
    if not group.is_transitive():
        raise NotVertexTransitive("transitivity degrees need a vertex-transitive group")

    d = graphmod.diameter(graph)
    order = group.order()

    # cycles are s-arc transitive for every s under the dihedral group, so
    # the scan for valency <= 2 is capped at the diameter
    capped = graph.valency <= 2 if graph.is_regular() else False
    arc_degree = 0
    s = 1
    while True:
        if capped and s > d:
            break
        total = graphmod.count_arcs(graph, s)
        if total == 0 or total > order:
            break
        if not is_s_arc_transitive(graph, group, s):
            break
        arc_degree = s
        s += 1

    array = graphmod.intersection_array(graph) if graph.is_regular() else None
    geodesic_degree = 0
    geodesic_transitive = False
    shortcut_used = False
    shortcut_level = None
    for i in range(1, d + 1):
        if not _geodesic_level_transitive(graph, group, i):
            break
        geodesic_degree = i
        if array is not None and (array.b[i] if i < array.diameter else 0) <= 1:
            geodesic_degree = d
            geodesic_transitive = True
            shortcut_used = True
            shortcut_level = i
            break
    if geodesic_degree == d:
        geodesic_transitive = True
    return TransitivityReport(
        arc_degree=arc_degree,
        geodesic_degree=geodesic_degree,
        geodesic_transitive=geodesic_transitive,
        b_s_shortcut_used=shortcut_used,
        shortcut_level=shortcut_level,
        arc_degree_capped=capped,
    )


# ---------------------------------------------------------------------------
# block systems and primitivity
# ---------------------------------------------------------------------------

def minimal_block_system(group: PermGroup, domain, alpha: int, beta: int):
    """Finest G-congruence on ``domain`` merging alpha and beta (as a block list)."""
    pts = sorted(domain)
    gens = [g.images for g in group.generators]
    parent = {p: p for p in pts}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    root_beta = find(beta)
    parent[root_beta] = find(alpha)
    queue = [beta]
    while queue:
        gamma = queue.pop()
        rep = find(gamma)
        for g in gens:
            d, e = g[gamma], g[rep]
            rd, re = find(d), find(e)
            if rd != re:
                parent[rd] = re
                queue.append(rd)
    cells: dict[int, list[int]] = {}
    for p in pts:
        cells.setdefault(find(p), []).append(p)
    return sorted((tuple(sorted(c)) for c in cells.values()), key=lambda c: c[0])


def block_systems(group: PermGroup, domain=None) -> list[tuple[tuple[int, ...], ...]]:
    """All distinct minimal nontrivial block systems of a transitive action."""
    pts = sorted(domain) if domain is not None else list(range(group.degree))
    if not group.is_transitive(pts):
        raise NotTransitive("block systems need a transitive action")
    if len(pts) <= 1:
        return []
    alpha = pts[0]
    systems = set()
    for beta in pts[1:]:
        blocks = minimal_block_system(group, pts, alpha, beta)
        if 1 < len(blocks[0]) < len(pts):
            systems.add(tuple(blocks))
    return sorted(systems, key=lambda s: (len(s[0]), s))


def is_primitive(group: PermGroup, domain=None) -> bool:
    return not block_systems(group, domain)


@dataclass(frozen=True)
class QuasiprimitivityReport:
    quasiprimitive: bool
    witness: PermGroup | None  # an intransitive nontrivial normal subgroup

    def to_json(self) -> dict:
        return {
            "quasiprimitive": self.quasiprimitive,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def quasiprimitivity(group: PermGroup, domain=None) -> QuasiprimitivityReport:
    """Every nontrivial normal subgroup transitive?  It suffices to test the
    minimal normal subgroups: orbits only coarsen in overgroups."""
    pts = sorted(domain) if domain is not None else list(range(group.degree))
    if not group.is_transitive(pts):
        raise NotTransitive("quasiprimitivity needs a transitive action")
    minimals, _ = permmod.normal_structure(group)
    for m in minimals:
        if not m.is_transitive(pts):
            return QuasiprimitivityReport(False, m)
    return QuasiprimitivityReport(True, None)


# ---------------------------------------------------------------------------
# bipartite analysis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteSetting:
    delta1: tuple[int, ...]
    delta2: tuple[int, ...]
    g_plus: PermGroup
    biprimitive: bool
    biquasiprimitive: bool


@dataclass(frozen=True)
class ActionClass:
    """Primitivity ladder of (G, V) plus the bipartite data when applicable."""

    transitive: bool
    primitive: bool
    quasiprimitive: bool
    quasiprimitive_witness: PermGroup | None
    bipartite_setting: BipartiteSetting | None
    socle_tag: str | None
    x_omega: tuple[PermGroup, tuple[int, ...]] | None
    x_faithful: bool | None

    def to_json(self) -> dict:
        bip = self.bipartite_setting
        return {
            "transitive": self.transitive,
            "primitive": self.primitive,
            "quasiprimitive": self.quasiprimitive,
            "witness": None
            if self.quasiprimitive_witness is None
            else self.quasiprimitive_witness.to_json(),
            "biprimitive": None if bip is None else bip.biprimitive,
            "biquasiprimitive": None if bip is None else bip.biquasiprimitive,
            "socle_tag": self.socle_tag,
        }


def _is_simple(group: PermGroup) -> bool:
    if group.order() == 1:
        return False
    minimals, _ = permmod.normal_structure(group)
    return len(minimals) == 1 and minimals[0].order() == group.order()


def _socle_tag(x: PermGroup, domain_size: int) -> str:
    minimals, socle = permmod.normal_structure(x)
    if not minimals:
        return "other"
    abelian = socle.is_abelian()
    regular = socle.is_transitive() and socle.order() == domain_size
    if abelian and regular:
        return "abelian-regular"
    if len(minimals) == 1 and not abelian and _is_simple(minimals[0]):
        return "simple"
    if not abelian and regular:
        return "nonabelian-regular"
    if minimals and all(not m.is_abelian() for m in minimals):
        return "product-of-simples"
    return "other"


def bi_analysis(graph: Graph, group: PermGroup) -> ActionClass:
    """Primitivity/quasiprimitivity of G on V plus, when the graph is
    bipartite, the bipart stabilizer G+ with its (bi)primitivity flags."""
    validate_automorphisms(graph, group)
    if not graph.connected:
        raise Disconnected("bipartite analysis needs a connected graph")
    if not group.is_transitive():
        raise NotTransitive("bipartite analysis needs a vertex-transitive group")

    primitive = is_primitive(group)
    quasi = quasiprimitivity(group)

    setting = None
    parts = graphmod.bipartition(graph)
    if parts is not None:
        delta1, delta2 = parts
        _, g_plus = permmod.induced_action(group, [delta1, delta2])
        biprimitive = False
        try:
            biprimitive = is_primitive(g_plus, delta1) and is_primitive(g_plus, delta2)
        except NotTransitive:
            biprimitive = False
        minimals, _ = permmod.normal_structure(group)
        orbit_counts = [len(permmod.orbits(m)) for m in minimals]
        biquasi = bool(minimals) and all(c <= 2 for c in orbit_counts) and any(
            c == 2 for c in orbit_counts
        )
        setting = BipartiteSetting(delta1, delta2, g_plus, biprimitive, biquasi)

    x_omega = None
    x_faithful = None
    socle_tag = None
    if quasi.quasiprimitive:
        x_omega = (group, tuple(range(graph.n)))
        x_faithful = True
        socle_tag = _socle_tag(group, graph.n)
    elif setting is not None and setting.biquasiprimitive:
        restricted, faithful = permmod.restriction(setting.g_plus, setting.delta1)
        x_omega = (restricted, setting.delta1)
        x_faithful = faithful
        socle_tag = _socle_tag(restricted, len(setting.delta1))

    return ActionClass(
        transitive=True,
        primitive=primitive,
        quasiprimitive=quasi.quasiprimitive,
        quasiprimitive_witness=quasi.witness,
        bipartite_setting=setting,
        socle_tag=socle_tag,
        x_omega=x_omega,
        x_faithful=x_faithful,
    )


# ---------------------------------------------------------------------------
# stabilizer structure (4-arc transitive graphs)
# ---------------------------------------------------------------------------

def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            return (q, 1)
        if q % p == 0:
            f = 0
            rest = q
            while rest % p == 0:
                rest //= p
                f += 1
            return (p, f) if rest == 1 else None
    return None


def _gl2_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


def _pgl2_order(q: int) -> int:
    return q**3 - q


@dataclass(frozen=True)
class WeissReport:
    """Vertex-stabilizer order checked against the admissible shapes for
    highly arc-transitive graphs, plus the b_0 b_1 ... b_s divisibility."""

    s: int
    valency: int
    q: int
    p: int
    f: int
    stabilizer_order: int
    b_levels: tuple[int | None, ...]
    product: int | None
    product_terms: int
    divides: bool | None
    kernel_order: int
    kernel_is_p_group: bool
    case: str | None
    matched: bool | None
    parameter: int | None

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "valency": self.valency,
            "q": self.q,
            "p": self.p,
            "f": self.f,
            "stabilizer_order": self.stabilizer_order,
            "b_levels": list(self.b_levels),
            "product": self.product,
            "product_terms": self.product_terms,
            "divides": self.divides,
            "kernel_order": self.kernel_order,
            "kernel_is_p_group": self.kernel_is_p_group,
            "case": self.case,
            "matched": self.matched,
            "parameter": self.parameter,
        }


def weiss_divisibility_check(graph: Graph, group: PermGroup, s: int) -> WeissReport:
    """Stabilizer arithmetic for an s-arc transitive graph, s >= 4.

    Verifies s-arc transitivity first (PreconditionUnverified otherwise),
    reports |G_u|, the product of the leading b_i, its divisibility into
    |G_u|, whether the kernel of G_uv on the neighborhood of v is a p-group,
    and the match against the admissible stabilizer orders
    (s=4: q^2 ((q-1)/(3,q-1)) |PGL(2,q)| |o| with |o| dividing (3,q-1) f;
    s=5: q^3 |GL(2,q)| e with e | f and p = 2;
    s=7: q^5 |GL(2,q)| e with e | f and p = 3).
    """
    if s < 4:
        raise PreconditionUnverified("s >= 4", f"got s={s}")
    validate_automorphisms(graph, group)
    k = graph.valency  # NotRegular on irregular graphs
    pf = _prime_power(k - 1)
    if pf is None:
        raise ValencyNotPrimePowerPlusOne(f"valency {k} is not q+1 for a prime power q")
    q = k - 1
    p, f = pf
    if not is_s_arc_transitive(graph, group, s):
        raise PreconditionUnverified(
            "s-arc transitivity",
            f"(G,{s})-arc transitivity does not hold (diameter {graphmod.diameter(graph)})",
        )

    stab_u = permmod.pointwise_stabilizer(group, [0])
    gu = stab_u.order()

    array = graphmod.intersection_array(graph)
    b_levels: list[int | None] = []
    if array is None:
        b_levels = [None] * (s + 1)
    else:
        for i in range(s + 1):
            b_levels.append(array.b[i] if i < array.diameter else 0)
    product = None
    terms = 0
    for b in b_levels:
        if b is None or b <= 0:
            break
        product = b if product is None else product * b
        terms += 1
    divides = None if product is None else gu % product == 0

    # kernel of G_uv acting on the neighborhood of v, for the edge (u, v)
    u = 0
    v = graph.adjacency[0][0]
    kernel = permmod.pointwise_stabilizer(group, [u, v] + list(graph.adjacency[v]))
    korder = kernel.order()
    kernel_is_p = korder == 1 or _is_power_of(korder, p)

    case = None
    matched = None
    parameter = None
    if s == 4:
        case = "s4"
        base = q * q * ((q - 1) // math.gcd(3, q - 1)) * _pgl2_order(q)
        matched, parameter = _match_extension(gu, base, math.gcd(3, q - 1) * f)
    elif s == 5:
        case = "s5"
        base = q**3 * _gl2_order(q)
        matched, parameter = _match_extension(gu, base, f)
        matched = matched and p == 2
    elif s == 7:
        case = "s7"
        base = q**5 * _gl2_order(q)
        matched, parameter = _match_extension(gu, base, f)
        matched = matched and p == 3

    return WeissReport(
        s=s,
        valency=k,
        q=q,
        p=p,
        f=f,
        stabilizer_order=gu,
        b_levels=tuple(b_levels),
        product=product,
        product_terms=terms,
        divides=divides,
        kernel_order=korder,
        kernel_is_p_group=kernel_is_p,
        case=case,
        matched=matched,
        parameter=parameter,
    )


def _is_power_of(value: int, p: int) -> bool:
    while value % p == 0:
        value //= p
    return value == 1


def _match_extension(gu: int, base: int, divisor_bound: int) -> tuple[bool, int | None]:
    """gu == base * e for an integer e >= 1 dividing divisor_bound?"""
    if base <= 0 or gu % base:
        return False, None
    e = gu // base
    return divisor_bound % e == 0, e
