"""The Koszul-type cochain ring R*(S) and the cohomology of Z_S.

R*(S) is free abelian on the monomials ``u_omega v_sigma`` with omega
disjoint from V(sigma).  It splits over multidegrees ``a`` in {0,1}^m: the
summand for ``a`` has basis ``u_{a - V(sigma)} v_sigma`` for sigma in the
full subposet S_a, sitting in Koszul degree ``-i`` with ``i = |a| - |sigma|``.

Exterior generators are ordered by ascending vertex number; moving ``u_j``
to the front of ``u_omega`` costs the sign (-1)^#{j' in omega : j' < j}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .intalg import AbelianGroup, CohomologyGroup, IntMatrix, cohomology_at
from .poset import PosetError, SimplicialPoset, bits, mask_to_vertices, vertices_to_mask


class InhomogeneousInput(ValueError):
    pass


class DifferentPosets(PosetError):
    pass


class KoszulMonomial(NamedTuple):
    omega: frozenset[int]
    sigma: str

    def __str__(self):
        us = "".join(f"u{j}" for j in sorted(self.omega))
        return (us + f"v[{self.sigma}]") if self.sigma != "0" else (us or "1")


Cochain = dict[KoszulMonomial, int]


def km(omega: Iterable[int], sigma: str = "0") -> KoszulMonomial:
    return KoszulMonomial(frozenset(omega), sigma)


def _popcount_below(mask: int, j: int) -> int:
    return (mask & ((1 << (j - 1)) - 1)).bit_count()


def _shuffle_sign(omega: int, psi: int) -> int:
    # sign of u_omega u_psi = sign * u_{omega + psi}
    inversions = sum((omega >> q).bit_count() for q in mask_to_vertices(psi))
    return -1 if inversions % 2 else 1


def _add(acc: dict, key, c: int) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class KoszulRing:
    """Multiplication and differential on R*(S), on internal (mask, index) keys."""

    def __init__(self, poset: SimplicialPoset):
        self.poset = poset

    def _check(self, mono: KoszulMonomial) -> tuple[int, int]:
        S = self.poset
        s = S.idx(mono.sigma)
        w = vertices_to_mask(mono.omega)
        if w >> S.m:
            raise PosetError(f"exterior generator outside 1..{S.m}")
        if w & S.vmask[s]:
            raise ValueError(f"{mono} is not a basis monomial: omega meets V(sigma)")
        return w, s

    def bidegree(self, mono: KoszulMonomial) -> tuple[int, tuple[int, ...]]:
        """(-|omega|, a) where the Z^m-degree is 2a."""
        w, s = self._check(mono)
        a = w | self.poset.vmask[s]
        return -w.bit_count(), tuple((a >> b) & 1 for b in range(self.poset.m))

    def _d(self, w: int, s: int) -> list[tuple[int, int, int]]:
        S = self.poset
        out = []
        for j in mask_to_vertices(w):
            sign = -1 if _popcount_below(w, j) % 2 else 1
            rest = w & ~(1 << (j - 1))
            for eta in S._join(S.vertex_elements[j - 1], s):
                out.append((rest, eta, sign))
        return out

    def _mul(self, w1: int, s1: int, w2: int, s2: int) -> list[tuple[int, int, int]]:
        S = self.poset
        v1, v2 = S.vmask[s1], S.vmask[s2]
        if w1 & v1 or w1 & w2 or w1 & v2 or v1 & w2 or v1 & v2 or w2 & v2:
            return []
        sign = _shuffle_sign(w1, w2)
        return [(w1 | w2, eta, sign) for eta in S._join(s1, s2)]

    def _wrap(self, terms: Iterable[tuple[int, int, int]]) -> Cochain:
        ids = self.poset.ids
        acc: Cochain = {}
        for w, s, c in terms:
            _add(acc, KoszulMonomial(frozenset(mask_to_vertices(w)), ids[s]), c)
        return acc

    def differential(self, x: Mapping[KoszulMonomial, int]) -> Cochain:
        degrees = {self.bidegree(mono) for mono, c in x.items() if c}
        if len(degrees) > 1:
            raise InhomogeneousInput(f"cochain has several bidegrees: {sorted(degrees)}")
        terms = []
        for mono, c in x.items():
            w, s = self._check(mono)
            terms.extend((w2, s2, c * e) for w2, s2, e in self._d(w, s))
        return self._wrap(terms)

    def monomial_product(self, x: KoszulMonomial, y: KoszulMonomial) -> Cochain:
        w1, s1 = self._check(x)
        w2, s2 = self._check(y)
        return self._wrap(self._mul(w1, s1, w2, s2))

    def product(self, x: Mapping[KoszulMonomial, int], y: Mapping[KoszulMonomial, int]) -> Cochain:
        acc: Cochain = {}
        for mx, cx in x.items():
            for my, cy in y.items():
                for mono, c in self.monomial_product(mx, my).items():
                    _add(acc, mono, cx * cy * c)
        return acc


def differential(S: SimplicialPoset, x: Mapping[KoszulMonomial, int]) -> Cochain:
    return KoszulRing(S).differential(x)


def monomial_product(S: SimplicialPoset, x: KoszulMonomial, y: KoszulMonomial) -> Cochain:
    return KoszulRing(S).monomial_product(x, y)


class MultigradedComplex:
    """The summand C^{*,2a} of R*(S) for one square-free multidegree ``a``.

    ``basis[i]`` lists ``(omega_mask, sigma_index)`` in Koszul degree -i and
    ``matrix(i)`` is the differential C^{-i} -> C^{-i+1}.
    """

    def __init__(self, poset: SimplicialPoset, a_mask: int):
        self.poset = poset
        self.a_mask = a_mask
        self.size = a_mask.bit_count()
        self.ring = KoszulRing(poset)
        self.basis: list[list[tuple[int, int]]] = [[] for _ in range(self.size + 1)]
        for s in range(len(poset)):
            v = poset.vmask[s]
            if v & ~a_mask == 0:
                self.basis[self.size - v.bit_count()].append((a_mask & ~v, s))
        self.position = [{key: k for k, key in enumerate(b)} for b in self.basis]

    def dim(self, i: int) -> int:
        return len(self.basis[i]) if 0 <= i <= self.size else 0

    @cached_property
    def _matrices(self) -> dict[int, IntMatrix]:
        out = {}
        for i in range(1, self.size + 1):
            M = IntMatrix.zeros(self.dim(i - 1), self.dim(i))
            pos = self.position[i - 1]
            for col, (w, s) in enumerate(self.basis[i]):
                for w2, s2, c in self.ring._d(w, s):
                    M.data[pos[(w2, s2)]][col] += c
            out[i] = M
        return out

    def matrix(self, i: int) -> IntMatrix:
        """Differential from Koszul degree -i to -i+1."""
        if 1 <= i <= self.size:
            return self._matrices[i]
        return IntMatrix.zeros(self.dim(i - 1), self.dim(i))

    def matrices(self) -> list[IntMatrix]:
        return [self.matrix(i) for i in range(1, self.size + 1)]

    def cohomology(self, i: int) -> CohomologyGroup:
        return cohomology_at(self.matrix(i + 1), self.matrix(i))

    def monomials(self, i: int) -> list[KoszulMonomial]:
        ids = self.poset.ids
        return [KoszulMonomial(frozenset(mask_to_vertices(w)), ids[s]) for w, s in self.basis[i]]

    def to_vector(self, i: int, x: Mapping[KoszulMonomial, int]) -> list[int]:
        v = [0] * self.dim(i)
        pos = self.position[i]
        for mono, c in x.items():
            w, s = self.ring._check(mono)
            try:
                v[pos[(w, s)]] += c
            except KeyError:
                raise InhomogeneousInput(f"{mono} is not in bidegree (-{i}, {self.a_mask:b})") from None
        return v

    def to_cochain(self, i: int, v: Sequence[int]) -> Cochain:
        return self.ring._wrap((w, s, c) for (w, s), c in zip(self.basis[i], v) if c)


def multigraded_complex(S: SimplicialPoset, a: Iterable[int]) -> MultigradedComplex:
    """Complex for the multidegree ``2a``, ``a`` given as a set of vertex numbers."""
    return MultigradedComplex(S, vertices_to_mask(a))


def vector_of(mask: int, m: int) -> tuple[int, ...]:
    return tuple((mask >> b) & 1 for b in range(m))


def mask_of(a: Sequence[int], m: int) -> int:
    """Mask of a 0/1 vector of length m."""
    if len(a) != m or any(x not in (0, 1) for x in a):
        raise ValueError(f"{tuple(a)} is not a vector in {{0,1}}^{m}")
    return sum(1 << b for b, x in enumerate(a) if x)


@dataclass(frozen=True)
class CohomologyClass:
    """A class in H^{-i,2a}(Z_S), in normal-form coordinates of the stored presentation.

    ``multidegree`` is the vector ``a``; an entry >= 2 means the group vanishes.
    """

    multidegree: tuple[int, ...]
    i: int
    coords: tuple[int, ...]
    poset: SimplicialPoset = field(compare=False, repr=False)

    @property
    def degree(self) -> int:
        return 2 * sum(self.multidegree) - self.i

    def is_zero(self) -> bool:
        return not any(self.coords)


class MomentAngleCohomology:
    """H*(Z_S; Z) computed multidegree by multidegree, with cup products."""

    def __init__(self, poset: SimplicialPoset):
        self.poset = poset
        self.ring = KoszulRing(poset)
        self._complexes: dict[int, MultigradedComplex] = {}
        self._groups: dict[tuple[int, int], CohomologyGroup] = {}

    def complex(self, a_mask: int) -> MultigradedComplex:
        if a_mask not in self._complexes:
            self._complexes[a_mask] = MultigradedComplex(self.poset, a_mask)
        return self._complexes[a_mask]

    def group_data(self, a_mask: int, i: int) -> CohomologyGroup:
        key = (a_mask, i)
        if key not in self._groups:
            self._groups[key] = self.complex(a_mask).cohomology(i)
        return self._groups[key]

    def group(self, a: Sequence[int], i: int) -> AbelianGroup:
        """H^{-i,2a} for a 0/1 vector ``a`` (zero outside {0,1}^m)."""
        if any(x not in (0, 1) for x in a):
            return AbelianGroup()
        mask = mask_of(a, self.poset.m)
        if not 0 <= i <= mask.bit_count():
            return AbelianGroup()
        return self.group_data(mask, i).group

    def all_groups(self) -> dict[tuple[int, tuple[int, ...]], AbelianGroup]:
        """Every group H^{-i,2a}, keyed by ``(i, a)``, multidegrees in lexicographic order."""
        m = self.poset.m
        out = {}
        for a in sorted(range(1 << m), key=lambda x: vector_of(x, m)):
            for i in range(a.bit_count() + 1):
                out[(i, vector_of(a, m))] = self.group_data(a, i).group
        return out

    def nonzero_groups(self) -> dict[tuple[int, tuple[int, ...]], AbelianGroup]:
        return {k: g for k, g in self.all_groups().items() if not g.is_zero()}

    @property
    def top_degree(self) -> int:
        return self.poset.m + self.poset.rank

    def betti_numbers(self) -> list[int]:
        out = [0] * (self.top_degree + 1)
        for (i, a), g in self.all_groups().items():
            if g.free_rank:
                out[2 * sum(a) - i] += g.free_rank
        return out

    def graded_groups(self) -> list[AbelianGroup]:
        """H^p(Z_S) for p = 0..m+n, as direct sums of the multigraded pieces."""
        free = [0] * (self.top_degree + 1)
        tors: list[list[int]] = [[] for _ in free]
        for (i, a), g in self.all_groups().items():
            if g.is_zero():
                continue
            p = 2 * sum(a) - i
            free[p] += g.free_rank
            tors[p].extend(g.torsion)
        return [AbelianGroup(f, _invariant_chain(t)) for f, t in zip(free, tors)]

    def homology_rank(self) -> int:
        return sum(self.betti_numbers())

    # -- classes and products -----------------------------------------------------

    def generators(self, a: Sequence[int], i: int) -> list[tuple[CohomologyClass, Cochain]]:
        mask = mask_of(a, self.poset.m)
        data = self.group_data(mask, i)
        cx = self.complex(mask)
        out = []
        for k, g in enumerate(data.generators):
            coords = tuple(int(k == j) for j in range(len(data.generators)))
            out.append((CohomologyClass(vector_of(mask, self.poset.m), i, coords, self.poset),
                        cx.to_cochain(i, g)))
        return out

    def class_of(self, x: Mapping[KoszulMonomial, int]) -> CohomologyClass:
        """The class of a homogeneous cocycle."""
        x = {k: c for k, c in x.items() if c}
        if not x:
            raise InhomogeneousInput("cannot infer the bidegree of the zero cochain")
        degrees = {self.ring.bidegree(mono) for mono in x}
        if len(degrees) != 1:
            raise InhomogeneousInput(f"cochain has several bidegrees: {sorted(degrees)}")
        ((neg_i, a),) = degrees
        mask = mask_of(a, self.poset.m)
        i = -neg_i
        v = self.complex(mask).to_vector(i, x)
        return CohomologyClass(a, i, self.group_data(mask, i).reduce(v), self.poset)

    def zero_class(self, a: Sequence[int], i: int) -> CohomologyClass:
        if any(x not in (0, 1) for x in a):
            return CohomologyClass(tuple(a), i, (), self.poset)
        data = self.group_data(mask_of(a, self.poset.m), i)
        return CohomologyClass(tuple(a), i, (0,) * len(data.orders), self.poset)

    def unit(self) -> CohomologyClass:
        return self.class_of({km(()): 1})

    def representative(self, c: CohomologyClass) -> Cochain:
        if any(x not in (0, 1) for x in c.multidegree):
            return {}
        mask = mask_of(c.multidegree, self.poset.m)
        data = self.group_data(mask, c.i)
        return self.complex(mask).to_cochain(c.i, data.vector(c.coords))

    def cup(self, c1: CohomologyClass, c2: CohomologyClass) -> CohomologyClass:
        if c1.poset is not self.poset or c2.poset is not self.poset:
            raise DifferentPosets("classes belong to different posets")
        a = tuple(x + y for x, y in zip(c1.multidegree, c2.multidegree))
        i = c1.i + c2.i
        if any(x > 1 for x in a):
            return CohomologyClass(a, i, (), self.poset)
        prod = self.ring.product(self.representative(c1), self.representative(c2))
        if not prod:
            return self.zero_class(a, i)
        mask = mask_of(a, self.poset.m)
        v = self.complex(mask).to_vector(i, prod)
        return CohomologyClass(a, i, self.group_data(mask, i).reduce(v), self.poset)


def _invariant_chain(factors: list[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups Z/d."""
    from .intalg import smith_decomposition

    if not factors:
        return ()
    n = len(factors)
    M = IntMatrix(n, n, [[factors[r] if r == c else 0 for c in range(n)] for r in range(n)])
    return AbelianGroup.from_invariants(0, smith_decomposition(M).invariant_factors).torsion


def cohomology_all(S: SimplicialPoset) -> dict[tuple[int, tuple[int, ...]], AbelianGroup]:
    return MomentAngleCohomology(S).all_groups()


@dataclass
class BettiData:
    multigraded: dict[tuple[int, tuple[int, ...]], int]
    sequence: list[int]

    def poincare_polynomial(self) -> str:
        terms = []
        for k, b in enumerate(self.sequence):
            if b:
                coef = "" if b == 1 and k else str(b)
                terms.append(coef + ("" if k == 0 else "t" if k == 1 else f"t^{k}"))
        return " + ".join(terms) or "0"


def betti(S: SimplicialPoset, cohomology: MomentAngleCohomology | None = None) -> BettiData:
    H = cohomology or MomentAngleCohomology(S)
    table = {k: g.free_rank for k, g in H.all_groups().items() if g.free_rank}
    return BettiData(table, H.betti_numbers())


def cup_product(S: SimplicialPoset, c1: CohomologyClass, c2: CohomologyClass,
                cohomology: MomentAngleCohomology | None = None) -> CohomologyClass:
    H = cohomology or MomentAngleCohomology(S)
    return H.cup(c1, c2)
