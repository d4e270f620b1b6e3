"""Exact permutation groups with deterministic stabilizer chains.

Points are 0-indexed integers.  The product ``p * q`` means "apply p, then q"
(right action), so ``(p * q)(x) == q(p(x))``.  Cycle notation is accepted only
at parse boundaries; everywhere else a permutation is its image tuple.

Groups are represented by a base and strong generating set built with a
deterministic Schreier-Sims procedure: base points are taken from an optional
hint first and otherwise as the smallest point moved by the offending
residue, so the same generator list always produces the same chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (
    GroupTooLarge,
    MalformedPermutation,
    MixedDegree,
    NotASubgroup,
    NotInvariant,
    PointOutOfRange,
)

#: Hard cap on explicit element enumeration (conjugacy classes, socle search).
ENUMERATION_CAP = 10**6


# ---------------------------------------------------------------------------
# raw image-tuple helpers (internal hot path: no validation, no wrappers)
# ---------------------------------------------------------------------------

def _compose(p, q):
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def _inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _conjugate(x, g):
    """g^-1 * x * g."""
    gi = _inverse(g)
    return tuple(g[x[gi[i]]] for i in range(len(x)))


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., degree-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        seen = [False] * n
        for i in images:
            if not isinstance(i, int) or not 0 <= i < n or seen[i]:
                raise MalformedPermutation(f"not a bijection of 0..{n - 1}: {images}")
            seen[i] = True

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> Permutation:
        """Build from disjoint-or-not cycles, applied left to right."""
        images = list(range(degree))
        for cycle in cycles:
            if any(not 0 <= p < degree for p in cycle):
                raise PointOutOfRange(f"cycle point outside 0..{degree - 1}: {cycle}")
            prior = list(images)
            mapping = {cycle[i]: cycle[(i + 1) % len(cycle)] for i in range(len(cycle))}
            for i in range(degree):
                images[i] = mapping.get(prior[i], prior[i])
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(self.images) != len(other.images):
            raise MixedDegree("cannot compose permutations of different degrees")
        return Permutation(_compose(self.images, other.images))

    def inverse(self) -> Permutation:
        return Permutation(_inverse(self.images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def moved_points(self) -> tuple[int, ...]:
        return tuple(i for i, j in enumerate(self.images) if i != j)

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = math.lcm(result, len(cycle))
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


def parse_cycle_string(text: str, degree: int) -> Permutation:
    """Parse "(0 1 2)(3 4)" (commas or spaces inside cycles) into a Permutation.

    This is the CLI/file boundary form; library code passes image tuples.
    """
    s = text.strip()
    if s in ("()", ""):
        return Permutation.identity(degree)
    if not (s.startswith("(") and s.endswith(")")):
        raise MalformedPermutation(f"not cycle notation: {text!r}")
    cycles = []
    for part in s[1:-1].split(")("):
        points = [tok for tok in part.replace(",", " ").split() if tok]
        try:
            cycle = [int(tok) for tok in points]
        except ValueError as exc:
            raise MalformedPermutation(f"bad cycle entry in {text!r}") from exc
        if len(set(cycle)) != len(cycle):
            raise MalformedPermutation(f"repeated point in cycle {part!r}")
        if cycle:
            cycles.append(cycle)
    return Permutation.from_cycles(cycles, degree)


# ---------------------------------------------------------------------------
# stabilizer chain
# ---------------------------------------------------------------------------

class _Level:
    __slots__ = ("point", "gens", "transversal", "processed")

    def __init__(self, point: int, identity):
        self.point = point
        self.gens = []  # strong generators installed at this level
        # transversal[q] = t with t[point] == q
        self.transversal = {point: identity}
        self.processed = set()  # (orbit point, generator tuple) pairs already closed


class _Chain:
    """Base + strong generating set, built incrementally and deterministically.

    Level i holds the strong generators known to fix base[0..i-1]; the set
    acting at level i is the union of the generators of levels >= i.  After
    every public mutation the full strong-generating property holds: each
    basic orbit is closed under its level's acting set and every Schreier
    generator sifts to the identity.
    """

    def __init__(self, degree: int, base_hint=()):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.levels = []
        for b in base_hint:
            if not 0 <= b < degree:
                raise PointOutOfRange(f"base point {b} outside 0..{degree - 1}")
            if all(lvl.point != b for lvl in self.levels):
                self.levels.append(_Level(b, self.identity))

    def sift(self, g, start: int = 0):
        """Strip g through the chain; return (residue, first failing level)."""
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            p = g[lvl.point]
            if p == lvl.point:
                continue
            t = lvl.transversal.get(p)
            if t is None:
                return g, i
            g = _compose(g, _inverse(t))
        return g, len(self.levels)

    def contains(self, g) -> bool:
        residue, _ = self.sift(g)
        return residue == self.identity

    def order(self) -> int:
        result = 1
        for lvl in self.levels:
            result *= len(lvl.transversal)
        return result

    def gens_from_level(self, k: int) -> list:
        return [g for lvl in self.levels[k:] for g in lvl.gens]

    def add_generator(self, g) -> None:
        if g == self.identity or self.contains(g):
            return
        self._append(g, 0)
        self._reestablish()

    def _append(self, g, k: int) -> None:
        if k == len(self.levels):
            point = min(p for p in range(self.degree) if g[p] != p)
            self.levels.append(_Level(point, self.identity))
        self.levels[k].gens.append(g)

    def _reestablish(self) -> None:
        """Walk the levels deepest-first until every one is closed and sifted.

        Installing a residue at level k dirties levels <= k, so the walk jumps
        down to k and then climbs back up; fully processed levels are cheap to
        revisit thanks to the per-level processed-pair memo.
        """
        i = len(self.levels) - 1
        while i >= 0:
            installed_at = self._process_level(i)
            if installed_at is None:
                i -= 1
            else:
                i = installed_at

    def _process_level(self, i: int):
        """Close the basic orbit at level i and sift its Schreier generators.

        Installs the first non-member residue at its sift level k > i and
        returns k; returns None once the level is fully processed.
        """
        lvl = self.levels[i]
        gens = self.gens_from_level(i)
        processed = lvl.processed
        transversal = lvl.transversal
        pending = [
            (p, s) for p in list(transversal) for s in gens if (p, s) not in processed
        ]
        while pending:
            p, s = pending.pop()
            if (p, s) in processed:
                continue
            processed.add((p, s))
            q = s[p]
            t_p = transversal[p]
            t_q = transversal.get(q)
            if t_q is None:
                transversal[q] = _compose(t_p, s)
                pending.extend((q, g) for g in gens if (q, g) not in processed)
            else:
                schreier = _compose(_compose(t_p, s), _inverse(t_q))
                if schreier != self.identity:
                    residue, k = self.sift(schreier, i + 1)
                    if residue != self.identity:
                        self._append(residue, k)
                        return k
        return None


def _build_chain(degree: int, raw_gens, base_hint=()) -> _Chain:
    chain = _Chain(degree, base_hint)
    for g in raw_gens:
        chain.add_generator(g)
    for g in raw_gens:
        assert chain.contains(g), "stabilizer chain failed to absorb a generator"
    return chain


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group on {0, ..., degree-1}."""

    degree: int
    generators: tuple[Permutation, ...]
    _chain: _Chain = field(compare=False, repr=False, hash=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def order(self) -> int:
        return self._chain.order()

    def __contains__(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            return False
        return self._chain.contains(perm.images)

    def contains_raw(self, images) -> bool:
        return self._chain.contains(tuple(images))

    def is_trivial(self) -> bool:
        return self.order() == 1

    def base(self) -> tuple[int, ...]:
        return tuple(lvl.point for lvl in self._chain.levels)

    def basic_orbit_sizes(self) -> tuple[int, ...]:
        return tuple(len(lvl.transversal) for lvl in self._chain.levels)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    # -- element access ----------------------------------------------------

    def elements(self, cap: int = ENUMERATION_CAP) -> list[Permutation]:
        return [Permutation(t) for t in self.raw_elements(cap)]

    def raw_elements(self, cap: int = ENUMERATION_CAP) -> list[tuple[int, ...]]:
        """All elements as image tuples, deterministically ordered."""
        if "elements" in self._cache:
            return self._cache["elements"]
        if self.order() > cap:
            raise GroupTooLarge(f"order {self.order()} exceeds cap {cap}")
        levels = self._chain.levels
        out = [self._chain.identity]
        for lvl in reversed(levels):
            transversal = [lvl.transversal[p] for p in sorted(lvl.transversal)]
            out = [_compose(deep, t) for t in transversal for deep in out]
        assert len(out) == self.order()
        self._cache["elements"] = out
        return out

    # -- orbits ------------------------------------------------------------

    def orbit(self, point: int) -> frozenset[int]:
        if not 0 <= point < self.degree:
            raise PointOutOfRange(f"point {point} outside 0..{self.degree - 1}")
        gens = [g.images for g in self.generators]
        seen = {point}
        queue = [point]
        while queue:
            p = queue.pop()
            for g in gens:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return frozenset(seen)

    def is_transitive(self, domain=None) -> bool:
        pts = sorted(domain) if domain is not None else range(self.degree)
        pts = list(pts)
        if not pts:
            return True
        orb = self.orbit(pts[0])
        return all(p in orb for p in pts)

    def is_abelian(self) -> bool:
        gens = [g.images for g in self.generators]
        return all(
            _compose(a, b) == _compose(b, a)
            for i, a in enumerate(gens)
            for b in gens[i + 1:]
        )

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [list(g.images) for g in self.generators],
        }

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order()}, ngens={len(self.generators)})"


def build_group(generators, *, degree: int | None = None) -> PermGroup:
    """Build a group (with verified stabilizer chain) from a generator list.

    ``generators`` may contain Permutation objects or plain image sequences.
    An explicit ``degree`` is required when the list is empty.
    """
    perms = []
    for g in generators:
        if not isinstance(g, Permutation):
            g = Permutation(tuple(g))
        perms.append(g)
    degrees = {g.degree for g in perms}
    if len(degrees) > 1:
        raise MixedDegree(f"generator degrees differ: {sorted(degrees)}")
    if degrees:
        inferred = degrees.pop()
        if degree is not None and degree != inferred:
            raise MixedDegree(f"stated degree {degree} != generator degree {inferred}")
        degree = inferred
    if degree is None:
        raise MixedDegree("empty generator list needs an explicit degree")
    if degree < 1:
        raise PointOutOfRange("degree must be at least 1")
    perms = [g for g in perms if not g.is_identity()]
    chain = _build_chain(degree, [g.images for g in perms])
    return PermGroup(degree, tuple(perms), chain)


def group_from_json(data: dict) -> PermGroup:
    """Inverse of PermGroup.to_json; generator entries may be cycle strings."""
    degree = data["degree"]
    gens = []
    for entry in data.get("generators", []):
        if isinstance(entry, str):
            gens.append(parse_cycle_string(entry, degree))
        else:
            gens.append(Permutation(tuple(entry)))
    return build_group(gens, degree=degree)


def _group_from_chain(degree: int, raw_gens, chain: _Chain) -> PermGroup:
    return PermGroup(degree, tuple(Permutation(g) for g in raw_gens), chain)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def orbits(group: PermGroup, domain=None) -> list[tuple[int, ...]]:
    """Orbit partition of ``domain`` (default: all points), sorted by minimum."""
    if domain is None:
        domain = range(group.degree)
    pts = sorted(set(domain))
    for p in pts:
        if not 0 <= p < group.degree:
            raise PointOutOfRange(f"point {p} outside 0..{group.degree - 1}")
    gens = [g.images for g in group.generators]
    seen = set()
    cells = []
    for p in pts:
        if p in seen:
            continue
        cell = {p}
        queue = [p]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g[x]
                if y not in cell:
                    cell.add(y)
                    queue.append(y)
        if not cell.issubset(set(pts)):
            # orbits leaving the domain mean the domain is not invariant
            raise PointOutOfRange(f"domain is not invariant: orbit of {p} leaves it")
        seen |= cell
        cells.append(tuple(sorted(cell)))
    return cells


def pointwise_stabilizer(group: PermGroup, points) -> PermGroup:
    """Subgroup fixing every point of ``points`` (in order)."""
    pts = []
    for p in points:
        if not 0 <= p < group.degree:
            raise PointOutOfRange(f"point {p} outside 0..{group.degree - 1}")
        if p not in pts:
            pts.append(p)
    if not pts:
        return group
    chain = _build_chain(group.degree, [g.images for g in group.generators], base_hint=pts)
    raw = chain.gens_from_level(len(pts))
    # the chain suffix below the fixed points is itself a valid chain
    sub = _Chain(group.degree)
    sub.levels = chain.levels[len(pts):]
    return _group_from_chain(group.degree, raw, sub)


def normal_test_and_closure(group: PermGroup, subgroup) -> tuple[bool, PermGroup]:
    """(is H normal in G, normal closure of H in G).

    ``subgroup`` is a PermGroup or an iterable of Permutation.  Raises
    NotASubgroup when some element of H fails membership in G.
    """
    if isinstance(subgroup, PermGroup):
        h_gens = [g.images for g in subgroup.generators]
        degree = subgroup.degree
    else:
        perms = [g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in subgroup]
        h_gens = [g.images for g in perms]
        degree = perms[0].degree if perms else group.degree
    if degree != group.degree:
        raise MixedDegree("subgroup degree differs from group degree")
    for g in h_gens:
        if not group.contains_raw(g):
            raise NotASubgroup(f"element {Permutation(g).cycle_string()} is not in G")

    g_gens = [g.images for g in group.generators]
    h_chain = _build_chain(group.degree, h_gens)
    is_normal = all(
        h_chain.contains(_conjugate(h, g)) for h in h_gens for g in g_gens
    )

    closure_gens = list(h_gens)
    closure_chain = _build_chain(group.degree, closure_gens)
    queue = list(h_gens)
    while queue:
        x = queue.pop()
        for g in g_gens:
            c = _conjugate(x, g)
            if not closure_chain.contains(c):
                closure_gens.append(c)
                closure_chain.add_generator(c)
                queue.append(c)
    closure = _group_from_chain(group.degree, closure_gens, closure_chain)
    return is_normal, closure


def conjugacy_class_representatives(group: PermGroup, cap: int = ENUMERATION_CAP) -> list[Permutation]:
    """One representative per conjugacy class (the lexicographically least element)."""
    if "class_reps" in group._cache:
        return group._cache["class_reps"]
    if group.order() > cap:
        raise GroupTooLarge(f"order {group.order()} exceeds cap {cap}")
    elements = group.raw_elements(cap)
    gens = [g.images for g in group.generators]
    unseen = set(elements)
    reps = []
    for e in elements:  # deterministic: enumeration order
        if e not in unseen:
            continue
        cls = {e}
        queue = [e]
        while queue:
            x = queue.pop()
            for g in gens:
                y = _conjugate(x, g)
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        unseen -= cls
        reps.append(Permutation(min(cls)))
    group._cache["class_reps"] = reps
    return reps


def is_subgroup_of(sub: PermGroup, group: PermGroup) -> bool:
    return sub.degree == group.degree and all(
        group.contains_raw(g.images) for g in sub.generators
    )


def same_group(a: PermGroup, b: PermGroup) -> bool:
    return a.order() == b.order() and is_subgroup_of(a, b)


def normal_structure(group: PermGroup, cap: int = ENUMERATION_CAP) -> tuple[list[PermGroup], PermGroup]:
    """(minimal normal subgroups, socle).

    Minimal normal subgroups are found as inclusion-minimal normal closures
    of conjugacy-class representatives; every minimal normal subgroup is the
    normal closure of each of its nontrivial elements, so none is missed.
    """
    if "normal_structure" in group._cache:
        return group._cache["normal_structure"]
    if group.order() > cap:
        raise GroupTooLarge(f"order {group.order()} exceeds cap {cap}")
    if group.order() == 1:
        result = ([], build_group([], degree=group.degree))
        group._cache["normal_structure"] = result
        return result

    closures: list[PermGroup] = []
    for rep in conjugacy_class_representatives(group, cap):
        if rep.is_identity():
            continue
        _, closure = normal_test_and_closure(group, [rep])
        if not any(same_group(closure, c) for c in closures):
            closures.append(closure)
    minimal = [
        c
        for c in closures
        if not any(
            other.order() < c.order() and is_subgroup_of(other, c) for other in closures
        )
    ]
    minimal.sort(key=lambda g: (g.order(), tuple(p.images for p in g.generators)))
    socle_gens = [g for m in minimal for g in m.generators]
    socle = build_group(socle_gens, degree=group.degree)
    result = (minimal, socle)
    group._cache["normal_structure"] = result
    return result


def is_semiregular(group: PermGroup, domain) -> bool:
    """True iff the stabilizer of every point of ``domain`` is trivial."""
    pts = sorted(set(domain))
    if not pts:
        raise PointOutOfRange("domain must be nonempty")
    order = group.order()
    seen = set()
    for p in pts:
        if p in seen:
            continue
        orb = group.orbit(p)  # range check happens here
        seen |= orb
        # orbit-stabilizer: trivial stabilizer iff the orbit has full size
        if len(orb) != order:
            return False
    return True


def restriction(group: PermGroup, points) -> tuple[PermGroup, bool]:
    """Action of ``group`` on an invariant point set, relabeled to 0..k-1.

    Returns (restricted group, faithful flag); ``points`` keeps its order as
    the relabeling.
    """
    pts = list(points)
    index = {p: i for i, p in enumerate(pts)}
    if len(index) != len(pts):
        raise PointOutOfRange("restriction points must be distinct")
    gens = []
    for g in group.generators:
        images = [0] * len(pts)
        for p in pts:
            q = g.images[p]
            if q not in index:
                raise PointOutOfRange(f"point set is not invariant: {p} -> {q}")
            images[index[p]] = index[q]
        gens.append(Permutation(tuple(images)))
    restricted = build_group(gens, degree=max(1, len(pts)))
    kernel = pointwise_stabilizer(group, pts)
    return restricted, kernel.order() == 1


def induced_action(group: PermGroup, blocks) -> tuple[PermGroup, PermGroup]:
    """Action of G on the cells of a G-invariant partition.

    Returns (quotient_group acting on cell indices, kernel acting on points).
    ``blocks`` must partition {0, ..., degree-1}; cell order is preserved.
    """
    cells = [tuple(sorted(c)) for c in blocks]
    n = group.degree
    block_of = [-1] * n
    for idx, cell in enumerate(cells):
        for p in cell:
            if not 0 <= p < n:
                raise PointOutOfRange(f"block point {p} outside 0..{n - 1}")
            if block_of[p] != -1:
                raise ValueError(f"point {p} appears in two cells")
            block_of[p] = idx
    if any(b == -1 for b in block_of):
        raise ValueError("blocks must cover every point")

    b = len(cells)
    cell_sets = [frozenset(c) for c in cells]
    quotient_gens = []
    combined_gens = []
    for g in group.generators:
        images = [-1] * b
        for idx, cell in enumerate(cells):
            target = block_of[g.images[cell[0]]]
            if any(block_of[g.images[p]] != target for p in cell):
                raise NotInvariant(
                    f"generator {g.cycle_string()} splits cell {cells[idx]}"
                )
            if len(cell) != len(cell_sets[target]):
                raise NotInvariant(
                    f"generator {g.cycle_string()} maps cell {cells[idx]} onto a smaller cell"
                )
            images[idx] = target
        quotient_gens.append(tuple(images))
        combined_gens.append(tuple(g.images) + tuple(n + i for i in images))

    quotient = build_group([Permutation(q) for q in quotient_gens], degree=b)
    # kernel = pointwise stabilizer of the cell-index points in the combined action
    combined_chain = _build_chain(n + b, combined_gens, base_hint=range(n, n + b))
    kept = min(b, len(combined_chain.levels))
    kernel_raw = [g[:n] for g in combined_chain.gens_from_level(kept)]
    kernel = build_group([Permutation(k) for k in kernel_raw], degree=n)
    assert quotient.order() * kernel.order() == group.order()
    return quotient, kernel
