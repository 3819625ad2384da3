"""Finite simplicial posets.

A :class:`SimplicialPoset` is built from facet lists: every non-bottom element
names its codimension-one faces, vertices have the bottom element as their
only facet.  Validation enforces that every lower interval is boolean.

Internally elements are numbered ``0..N-1`` in rank-non-decreasing order with
``0`` the bottom; the order relation is kept as one down-set bitmask per
element.  Vertices are numbered ``1..m`` (vertex numbers, not element
numbers), and ``vset`` is stored as a bitmask over vertex numbers with bit
``i - 1`` standing for vertex ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

BOTTOM = "0"


class PosetError(ValueError):
    """Base class for invalid poset descriptions and bad queries."""

    def __init__(self, message: str, face: str | None = None):
        super().__init__(message)
        self.face = face


class DuplicateId(PosetError):
    pass


class UnknownElement(PosetError):
    pass


class MissingBottomCover(PosetError):
    pass


class RankMismatch(PosetError):
    pass


class BooleanIntervalViolation(PosetError):
    pass


class DuplicateFacet(BooleanIntervalViolation):
    pass


class RankViolation(PosetError):
    pass


def bits(mask: int) -> Iterable[int]:
    """Positions of set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_vertices(mask: int) -> tuple[int, ...]:
    return tuple(b + 1 for b in bits(mask))


def vertices_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


class SimplicialPoset:
    """An immutable, validated simplicial poset.

    Use :func:`validate` (or :func:`macposet.io.parse_poset`) to build one.
    """

    def __init__(self, name, ids, rank, facets, vertex_elements, vmask, down, origin):
        self.name: str = name
        self.ids: tuple[str, ...] = ids
        self.rank_of: tuple[int, ...] = rank
        self.facets_of: tuple[tuple[int, ...], ...] = facets
        # vertex number i (1-based) is element vertex_elements[i - 1]
        self.vertex_elements: tuple[int, ...] = vertex_elements
        self.vmask: tuple[int, ...] = vmask
        self.down: tuple[int, ...] = down
        self.origin: tuple[int, ...] = origin
        self.index: dict[str, int] = {x: k for k, x in enumerate(ids)}
        up = [0] * len(ids)
        for s, d in enumerate(down):
            for t in bits(d):
                up[t] |= 1 << s
        self.up: tuple[int, ...] = tuple(up)
        covers = [[] for _ in ids]
        for s, fs in enumerate(facets):
            for f in fs:
                covers[f].append(s)
        self.cofacets_of: tuple[tuple[int, ...], ...] = tuple(tuple(c) for c in covers)
        self._by_vmask: dict[int, list[int]] = {}
        for s, v in enumerate(vmask):
            self._by_vmask.setdefault(v, []).append(s)

    # -- basic data ---------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.vertex_elements)

    @property
    def rank(self) -> int:
        return max(self.rank_of)

    @property
    def dimension(self) -> int:
        return self.rank - 1

    def __len__(self) -> int:
        return len(self.ids)

    def __contains__(self, element: str) -> bool:
        return element in self.index

    def __iter__(self):
        return iter(self.ids)

    def __repr__(self) -> str:
        return f"<SimplicialPoset {self.name!r}: m={self.m}, rank={self.rank}, {len(self)} elements>"

    @property
    def bottom(self) -> str:
        return self.ids[0]

    @property
    def vertex_labels(self) -> tuple[str, ...]:
        return tuple(self.ids[e] for e in self.vertex_elements)

    def idx(self, element: str) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise UnknownElement(f"unknown element {element!r}", element) from None

    def element_rank(self, element: str) -> int:
        return self.rank_of[self.idx(element)]

    def facets(self, element: str) -> tuple[str, ...]:
        return tuple(self.ids[f] for f in self.facets_of[self.idx(element)])

    def vset(self, element: str) -> frozenset[int]:
        """Vertex numbers below ``element``."""
        return frozenset(mask_to_vertices(self.vmask[self.idx(element)]))

    def vertex(self, i: int) -> str:
        """Element id of vertex number ``i``."""
        if not 1 <= i <= self.m:
            raise UnknownElement(f"no vertex number {i}")
        return self.ids[self.vertex_elements[i - 1]]

    def leq(self, a: str, b: str) -> bool:
        return bool(self.down[self.idx(b)] >> self.idx(a) & 1)

    def _leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def elements_of_rank(self, k: int) -> list[str]:
        return [x for x, r in zip(self.ids, self.rank_of) if r == k]

    def maximal_elements(self) -> list[str]:
        return [self.ids[s] for s in range(len(self)) if self.up[s] == 1 << s]

    def f_vector(self) -> list[int]:
        """Number of elements of each rank 1..n (the bottom is not counted)."""
        counts = [0] * (self.rank + 1)
        for r in self.rank_of:
            counts[r] += 1
        return counts[1:]

    def is_pure(self) -> bool:
        return len({self.element_rank(x) for x in self.maximal_elements()}) == 1

    def elements_with_vset(self, vmask: int) -> list[int]:
        return self._by_vmask.get(vmask, [])

    def face_below(self, sigma: int, vmask: int) -> int:
        """The unique element below ``sigma`` with the given vertex mask."""
        for t in bits(self.down[sigma]):
            if self.vmask[t] == vmask:
                return t
        raise ValueError("vertex mask is not contained in the element")

    # -- joins and meets ------------------------------------------------------

    def _join(self, a: int, b: int) -> list[int]:
        common = self.up[a] & self.up[b]
        return [u for u in bits(common) if self.down[u] & common == 1 << u]

    def _meet(self, a: int, b: int) -> list[int]:
        common = self.down[a] & self.down[b]
        return [u for u in bits(common) if self.up[u] & common == 1 << u]

    def join_set(self, a: str, b: str) -> set[str]:
        """Minimal common upper bounds of ``a`` and ``b``."""
        return {self.ids[u] for u in self._join(self.idx(a), self.idx(b))}

    def meet_set(self, a: str, b: str) -> set[str]:
        """Maximal common lower bounds of ``a`` and ``b``."""
        return {self.ids[u] for u in self._meet(self.idx(a), self.idx(b))}

    def is_simplicial_complex(self) -> bool:
        n = len(self)
        return all(len(self._join(a, b)) <= 1 for a in range(n) for b in range(a + 1, n))

    # -- structural equality ---------------------------------------------------

    def structure(self) -> tuple:
        """Hashable description: ids, vertex labels and facet id sets."""
        return (
            self.vertex_labels,
            frozenset((self.ids[s], frozenset(self.ids[f] for f in self.facets_of[s]))
                      for s in range(1, len(self)) if self.rank_of[s] > 1),
        )

    def __eq__(self, other):
        if not isinstance(other, SimplicialPoset):
            return NotImplemented
        return self.structure() == other.structure()

    def __hash__(self):
        return hash(self.structure())


@dataclass(frozen=True)
class PosetMap:
    """A map of simplicial posets given on element ids."""

    source: SimplicialPoset
    target: SimplicialPoset
    assignment: Mapping[str, str]

    def __post_init__(self):
        S, T, f = self.source, self.target, self.assignment
        for x in S.ids:
            if x not in f:
                raise RankViolation(f"element {x!r} is not mapped", x)
            T.idx(f[x])
        for x in S.ids:
            if S.element_rank(x) != T.element_rank(f[x]):
                raise RankViolation(f"{x!r} and its image {f[x]!r} have different ranks", x)
            for y in S.facets(x):
                if not T.leq(f[y], f[x]):
                    raise RankViolation(f"map does not preserve {y!r} <= {x!r}", x)

    def __call__(self, x: str) -> str:
        return self.assignment[x]

    def preimage(self, y: str) -> list[str]:
        return [x for x in self.source.ids if self.assignment[x] == y]

    @classmethod
    def identity(cls, S: SimplicialPoset) -> PosetMap:
        return cls(S, S, {x: x for x in S.ids})


# -- construction ----------------------------------------------------------------


def validate(
    m: int | Sequence[str],
    faces: Iterable[tuple[str, Sequence[str]]] = (),
    name: str = "",
    origin: Sequence[int] | None = None,
) -> SimplicialPoset:
    """Check a facet-list description and build the poset.

    ``m`` is either the vertex count (vertices get ids ``"1".."m"``) or the
    list of vertex ids.  ``faces`` holds ``(id, facet_ids)`` pairs; every
    facet must be declared earlier (vertices are declared implicitly).  A
    vertex may be listed with an empty facet list.
    """
    vertex_ids = [str(i) for i in range(1, m + 1)] if isinstance(m, int) else list(m)
    ids = [BOTTOM]
    index = {BOTTOM: 0}
    rank = [0]
    facets: list[tuple[int, ...]] = [()]
    vmask = [0]
    down = [1]
    for v, x in enumerate(vertex_ids):
        if x in index:
            raise DuplicateId(f"duplicate id {x!r}", x)
        index[x] = len(ids)
        ids.append(x)
        rank.append(1)
        facets.append((0,))
        vmask.append(1 << v)
        down.append(1 | 1 << index[x])
    vertex_set = set(vertex_ids)
    declared_vertices = set()
    for face, facet_ids in faces:
        face = str(face)
        facet_ids = [str(f) for f in facet_ids]
        if face in vertex_set:
            if face in declared_vertices:
                raise DuplicateId(f"duplicate id {face!r}", face)
            declared_vertices.add(face)
            if facet_ids and facet_ids != [BOTTOM]:
                raise MissingBottomCover(f"vertex {face!r} must have an empty facet list", face)
            continue
        if face in index:
            raise DuplicateId(f"duplicate id {face!r}", face)
        if not facet_ids:
            raise RankMismatch(f"face {face!r} has no facets", face)
        fidx = []
        for f in facet_ids:
            if f not in index:
                raise UnknownElement(f"face {face!r} refers to undeclared element {f!r}", face)
            fidx.append(index[f])
        if len(set(fidx)) != len(fidx):
            raise DuplicateFacet(f"face {face!r} lists a facet twice", face)
        franks = {rank[f] for f in fidx}
        if len(franks) != 1:
            raise RankMismatch(f"facets of {face!r} have different ranks", face)
        k = franks.pop() + 1
        if k < 2 or len(fidx) != k:
            raise RankMismatch(f"face {face!r} of rank {k} has {len(fidx)} facets", face)
        mask = 0
        d = 1 << len(ids)
        for f in fidx:
            mask |= vmask[f]
            d |= down[f]
        if mask.bit_count() != k:
            raise BooleanIntervalViolation(
                f"face {face!r} of rank {k} spans {mask.bit_count()} vertices", face)
        below = [t for t in bits(d) if t < len(ids)]
        if len(below) + 1 != 1 << k or len({vmask[t] for t in below} | {mask}) != len(below) + 1:
            raise BooleanIntervalViolation(f"lower interval of {face!r} is not boolean", face)
        index[face] = len(ids)
        ids.append(face)
        rank.append(k)
        facets.append(tuple(fidx))
        vmask.append(mask)
        down.append(d)

    # Renumber elements so that ranks do not decrease (declaration order is
    # already rank-compatible for facets, but need not be sorted globally).
    order = sorted(range(len(ids)), key=lambda s: (rank[s], s))
    new = {old: k for k, old in enumerate(order)}

    def remask(d):
        return sum(1 << new[t] for t in bits(d))

    m_count = len(vertex_ids)
    return SimplicialPoset(
        name=name,
        ids=tuple(ids[s] for s in order),
        rank=tuple(rank[s] for s in order),
        facets=tuple(tuple(sorted(new[f] for f in facets[s])) if s else () for s in order),
        vertex_elements=tuple(new[index[x]] for x in vertex_ids),
        vmask=tuple(vmask[s] for s in order),
        down=tuple(remask(down[s]) for s in order),
        origin=tuple(origin) if origin is not None else tuple(range(1, m_count + 1)),
    )


def face_list(S: SimplicialPoset) -> list[tuple[str, tuple[str, ...]]]:
    """Facet lists of all elements of rank >= 2, in rank order."""
    return [(S.ids[s], tuple(S.ids[f] for f in S.facets_of[s]))
            for s in range(len(S)) if S.rank_of[s] >= 2]


def full_subposet(S: SimplicialPoset, a: Iterable[int]) -> SimplicialPoset:
    """Elements whose vertex set lies in ``a``; vertices renumbered 1..|a|.

    Element ids are kept; ``origin[i - 1]`` is the vertex number in ``S`` of
    the new vertex ``i``.
    """
    verts = sorted(set(a))
    for v in verts:
        S.vertex(v)
    amask = vertices_to_mask(verts)
    faces = [(x, fs) for x, fs in face_list(S) if S.vmask[S.index[x]] & ~amask == 0]
    return validate([S.vertex(v) for v in verts], faces, name=S.name,
                    origin=[S.origin[v - 1] for v in verts])


def simplex(n: int, name: str = "") -> SimplicialPoset:
    """The full simplex on vertices 1..n as a simplicial complex."""
    from itertools import combinations

    faces = []
    for k in range(2, n + 1):
        for c in combinations(range(1, n + 1), k):
            faces.append((_set_id(c), [_set_id(c[:j] + c[j + 1:]) for j in range(k)]))
    return validate(n, faces, name=name or f"simplex{n}")


def _set_id(vertices: Sequence) -> str:
    if len(vertices) == 1:
        return str(vertices[0])
    return "{" + ",".join(str(v) for v in vertices) + "}"


def from_simplicial_complex(facets: Iterable[Iterable[int]], m: int | None = None,
                            name: str = "") -> SimplicialPoset:
    """Face poset of the simplicial complex generated by ``facets``."""
    from itertools import combinations

    simplices = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            simplices.update(combinations(f, k))
    if m is None:
        m = max((v for s in simplices for v in s), default=0)
    faces = [(_set_id(s), [_set_id(s[:j] + s[j + 1:]) for j in range(len(s))])
             for s in sorted(simplices, key=lambda s: (len(s), s)) if len(s) >= 2]
    return validate(m, faces, name=name)


def underlying_complex(S: SimplicialPoset) -> tuple[SimplicialPoset, PosetMap]:
    """The simplicial complex K_S of vertex sets, with the folding map S -> K_S."""
    labels = S.vertex_labels
    masks = sorted({v for v in S.vmask if v.bit_count() >= 2},
                   key=lambda v: (v.bit_count(), mask_to_vertices(v)))

    def label(mask):
        vs = mask_to_vertices(mask)
        return labels[vs[0] - 1] if len(vs) == 1 else "{" + ",".join(labels[v - 1] for v in vs) + "}"

    faces = [(label(v), [label(v & ~(1 << b)) for b in bits(v)]) for v in masks]
    K = validate(list(labels), faces, name=f"K({S.name})" if S.name else "", origin=S.origin)
    fold = PosetMap(S, K, {S.ids[s]: (K.bottom if s == 0 else label(S.vmask[s]))
                           for s in range(len(S))})
    return K, fold


def join_product(S1: SimplicialPoset, S2: SimplicialPoset) -> SimplicialPoset:
    """The join S1 * S2: pairs of elements with the componentwise order.

    Vertices of S1 keep numbers 1..m1, those of S2 become m1+1..m1+m2, and
    vertex ids are "1".."m1+m2".  Other elements get ids ``"(x,y)"``.
    """
    m1 = S1.m
    vnum1 = {e: i + 1 for i, e in enumerate(S1.vertex_elements)}
    vnum2 = {e: m1 + i + 1 for i, e in enumerate(S2.vertex_elements)}

    def pid(a: int, b: int) -> str:
        if a == 0 and b == 0:
            return BOTTOM
        if b == 0 and S1.rank_of[a] == 1:
            return str(vnum1[a])
        if a == 0 and S2.rank_of[b] == 1:
            return str(vnum2[b])
        return f"({S1.ids[a]},{S2.ids[b]})"

    pairs = sorted(product(range(len(S1)), range(len(S2))),
                   key=lambda p: (S1.rank_of[p[0]] + S2.rank_of[p[1]], p))
    faces = []
    for a, b in pairs:
        if S1.rank_of[a] + S2.rank_of[b] < 2:
            continue
        fs = [pid(f, b) for f in S1.facets_of[a]] + [pid(a, f) for f in S2.facets_of[b]]
        faces.append((pid(a, b), fs))
    name = f"{S1.name}*{S2.name}" if S1.name or S2.name else ""
    return validate(m1 + S2.m, faces, name=name)


def bottom_only(name: str = "empty") -> SimplicialPoset:
    return validate(0, [], name=name)
