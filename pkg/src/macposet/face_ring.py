"""The face ring Z[S] in the chain-monomial basis.

A basis monomial is stored as a sorted tuple of element numbers with
repetition, e.g. ``(1, 1, 5)`` for ``v_1^2 v_5``.  Since element numbers are
rank-non-decreasing, a monomial is a chain monomial exactly when every
adjacent pair is comparable.  Products are straightened with the relation
``v_s v_t = v_{s^t} * sum(v_e for e in s v t)``.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .intalg import IntMatrix, rank
from .poset import PosetError, PosetMap, SimplicialPoset, bits

Monomial = tuple[int, ...]


class PosetMismatch(PosetError):
    pass


def _add_into(acc: dict, terms: Mapping, scale: int = 1) -> None:
    for k, c in terms.items():
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


class FaceRing:
    """Arithmetic in Z[S] for one poset; caches straightened monomials."""

    def __init__(self, poset: SimplicialPoset):
        self.poset = poset
        self._straighten = lru_cache(maxsize=None)(self._straighten_uncached)

    def __repr__(self):
        return f"FaceRing({self.poset!r})"

    # -- constructors ------------------------------------------------------------

    def one(self) -> ChainElement:
        return ChainElement(self, {(): 1})

    def zero(self) -> ChainElement:
        return ChainElement(self, {})

    def gen(self, element: str) -> ChainElement:
        s = self.poset.idx(element)
        return ChainElement(self, {(s,) if s else (): 1})

    def v(self, i: int) -> ChainElement:
        """The generator of vertex number ``i``."""
        return self.gen(self.poset.vertex(i))

    def monomial(self, factors: Mapping[str, int] | Iterable[str]) -> ChainElement:
        """Product of generators, straightened."""
        if isinstance(factors, Mapping):
            factors = [x for x, e in factors.items() for _ in range(e)]
        mono = tuple(sorted(s for s in (self.poset.idx(x) for x in factors) if s))
        return ChainElement(self, dict(self._straighten(mono)))

    # -- straightening -----------------------------------------------------------

    def _straighten_uncached(self, mono: Monomial) -> tuple[tuple[Monomial, int], ...]:
        P = self.poset
        for k in range(len(mono) - 1):
            a, b = mono[k], mono[k + 1]
            if a == b or P._leq(a, b):
                continue
            joins = P._join(a, b)
            if not joins:
                return ()
            (meet,) = P._meet(a, b)
            rest = mono[:k] + mono[k + 2:]
            if meet:
                rest = rest + (meet,)
            acc: dict[Monomial, int] = {}
            for eta in joins:
                _add_into(acc, dict(self._straighten(tuple(sorted(rest + (eta,))))))
            return tuple(sorted(acc.items()))
        return ((mono, 1),)

    def straighten(self, mono: Iterable[int]) -> dict[Monomial, int]:
        return dict(self._straighten(tuple(sorted(s for s in mono if s))))

    def multiply(self, x: ChainElement, y: ChainElement) -> ChainElement:
        if x.ring.poset is not self.poset or y.ring.poset is not self.poset:
            raise PosetMismatch("elements belong to different posets")
        acc: dict[Monomial, int] = {}
        for mx, cx in x.terms.items():
            for my, cy in y.terms.items():
                _add_into(acc, dict(self._straighten(tuple(sorted(mx + my)))), cx * cy)
        return ChainElement(self, acc)

    # -- gradings ------------------------------------------------------------------

    def multidegree(self, mono: Monomial) -> tuple[int, ...]:
        """Half the Z^m-degree: the number of times each vertex occurs."""
        out = [0] * self.poset.m
        for s in mono:
            for b in bits(self.poset.vmask[s]):
                out[b] += 1
        return tuple(out)

    def degree(self, mono: Monomial) -> int:
        return 2 * sum(self.poset.rank_of[s] for s in mono)


@dataclass(frozen=True)
class ChainMonomial:
    """A chain ``tau_1 < ... < tau_k`` with exponents (a readable view)."""

    chain: tuple[str, ...]
    exponents: tuple[int, ...]

    def __str__(self):
        if not self.chain:
            return "1"
        return "*".join(f"v[{t}]" + (f"^{e}" if e > 1 else "") for t, e in zip(self.chain, self.exponents))


class ChainElement:
    """An element of Z[S] as ``{monomial: coefficient}`` in the chain basis."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: FaceRing, terms: Mapping[Monomial, int]):
        self.ring = ring
        self.terms = {k: c for k, c in terms.items() if c}

    @property
    def poset(self) -> SimplicialPoset:
        return self.ring.poset

    def _check(self, other: ChainElement) -> None:
        if other.ring.poset is not self.ring.poset:
            raise PosetMismatch("elements belong to different posets")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.one() * other
        self._check(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return ChainElement(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return ChainElement(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ChainElement(self.ring, {k: c * other for k, c in self.terms.items()})
        return self.ring.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.one() * other
        if not isinstance(other, ChainElement):
            return NotImplemented
        return self.ring.poset is other.ring.poset and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def monomials(self) -> list[tuple[ChainMonomial, int]]:
        ids = self.poset.ids
        out = []
        for mono, c in sorted(self.terms.items()):
            cnt = Counter(mono)
            chain = tuple(sorted(cnt))
            out.append((ChainMonomial(tuple(ids[s] for s in chain), tuple(cnt[s] for s in chain)), c))
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.monomials():
            s = str(mono)
            parts.append(s if c == 1 else f"-{s}" if c == -1 else f"{c}*{s}")
        return " + ".join(parts).replace("+ -", "- ")

    def multidegrees(self) -> set[tuple[int, ...]]:
        return {self.ring.multidegree(m) for m in self.terms}


def straighten_product(S: SimplicialPoset, x: ChainElement, y: ChainElement) -> ChainElement:
    if x.poset is not S:
        raise PosetMismatch("x is not an element of Z[S]")
    return x.ring.multiply(x, y)


def is_chain(S: SimplicialPoset, mono: Monomial) -> bool:
    return all(a == b or S._leq(a, b) for a, b in zip(mono, mono[1:]))


# -- enumeration of the chain basis ----------------------------------------------------


def chain_monomials(S: SimplicialPoset, degree_bound: int) -> list[Monomial]:
    """All chain monomials of total degree <= ``degree_bound``."""
    half = degree_bound // 2
    out: list[Monomial] = [()]
    ranks = S.rank_of

    def extend(mono: Monomial, last: int, budget: int):
        # candidates strictly above `last` (or any non-bottom element to start)
        above = S.up[last] & ~(1 << last)
        for t in bits(above):
            r = ranks[t]
            e = 1
            while e * r <= budget:
                new = mono + (t,) * e
                out.append(new)
                extend(new, t, budget - e * r)
                e += 1

    extend((), 0, half)
    return out


@dataclass
class HilbertFunction:
    degree_bound: int
    by_degree: dict[int, int]
    by_multidegree: dict[tuple[int, ...], int]


def hilbert_function(S: SimplicialPoset, degree_bound: int) -> HilbertFunction:
    """Ranks of the graded pieces of Z[S] up to ``degree_bound``.

    Multidegree keys are halved: ``(1, 1)`` stands for mdeg ``(2, 2)``.
    """
    ring = FaceRing(S)
    by_deg: dict[int, int] = {d: 0 for d in range(0, degree_bound + 1, 2)}
    by_mdeg: dict[tuple[int, ...], int] = defaultdict(int)
    for mono in chain_monomials(S, degree_bound):
        by_deg[ring.degree(mono)] += 1
        by_mdeg[ring.multidegree(mono)] += 1
    return HilbertFunction(degree_bound, by_deg, dict(by_mdeg))


# -- restriction to simplices ----------------------------------------------------------

Polynomial = dict[tuple[int, ...], int]


def restriction(S: SimplicialPoset, x: ChainElement, sigma: str) -> Polynomial:
    """Image of ``x`` in Z[sigma] = Z[v_i : i in V(sigma)].

    Generators ``v_t`` with ``t`` not below ``sigma`` are killed; the others
    become the square-free monomial on V(t).  The result maps exponent
    vectors of length m to coefficients.
    """
    s = S.idx(sigma)
    if x.poset is not S:
        raise PosetMismatch("x is not an element of Z[S]")
    return _restrict_terms(S, x.terms, s)


def _restrict_terms(S: SimplicialPoset, terms: Mapping[Monomial, int], s: int) -> Polynomial:
    out: Polynomial = {}
    below = S.down[s]
    for mono, c in terms.items():
        if any(not below >> t & 1 for t in mono):
            continue
        exps = [0] * S.m
        for t in mono:
            for b in bits(S.vmask[t]):
                exps[b] += 1
        key = tuple(exps)
        out[key] = out.get(key, 0) + c
        if not out[key]:
            del out[key]
    return out


def restriction_rank(S: SimplicialPoset, degree_bound: int) -> dict[tuple[int, ...], tuple[int, int]]:
    """Per multidegree: (number of chain monomials, rank of x -> (s_sigma(x))_sigma)."""
    ring = FaceRing(S)
    groups: dict[tuple[int, ...], list[Monomial]] = defaultdict(list)
    for mono in chain_monomials(S, degree_bound):
        groups[ring.multidegree(mono)].append(mono)
    out = {}
    for a, monos in groups.items():
        rows = []
        for s in range(len(S)):
            images = [_restrict_terms(S, {mono: 1}, s).get(a, 0) for mono in monos]
            if any(images):
                rows.append(images)
        out[a] = (len(monos), rank(IntMatrix.from_rows(rows, cols=len(monos))))
    return out


# -- the limit description ---------------------------------------------------------------


@dataclass
class LimitReport:
    degree_bound: int
    entries: dict[tuple[int, ...], tuple[int, int]]  # mdeg -> (hilbert rank, limit rank)

    @property
    def ok(self) -> bool:
        return all(h == lim for h, lim in self.entries.values())


def _multidegrees(m: int, half_bound: int) -> Iterable[tuple[int, ...]]:
    # compositions of 0..half_bound into m nonnegative parts
    for total in range(half_bound + 1):
        for bars in combinations(range(total + m - 1), m - 1):
            prev = -1
            parts = []
            for b in bars + (total + m - 1,):
                parts.append(b - prev - 1)
                prev = b
            yield tuple(parts)


def limit_rank(S: SimplicialPoset, a: tuple[int, ...]) -> int:
    """Rank of the compatible tuples in prod Z[sigma] in multidegree 2a."""
    support = sum(1 << b for b, x in enumerate(a) if x)
    live = [s for s in range(len(S)) if support & ~S.vmask[s] == 0]
    pos = {s: k for k, s in enumerate(live)}
    rows = []
    for tau in live:
        for sigma in bits(S.down[tau]):
            if sigma != tau and sigma in pos:
                row = [0] * len(live)
                row[pos[tau]] = 1
                row[pos[sigma]] = -1
                rows.append(row)
    return len(live) - rank(IntMatrix.from_rows(rows, cols=len(live)))


def limit_check(S: SimplicialPoset, degree_bound: int) -> LimitReport:
    hf = hilbert_function(S, degree_bound)
    entries = {}
    if S.m == 0:
        entries[()] = (hf.by_multidegree.get((), 0), 1)
    else:
        for a in _multidegrees(S.m, degree_bound // 2):
            entries[a] = (hf.by_multidegree.get(a, 0), limit_rank(S, a))
    return LimitReport(degree_bound, entries)


# -- functoriality ---------------------------------------------------------------------------


def induced_map(f: PosetMap, y: ChainElement, source_ring: FaceRing | None = None) -> ChainElement:
    """f^*: Z[T] -> Z[S] with w_t |-> sum of v_s over s in f^-1(t)."""
    if y.poset is not f.target:
        raise PosetMismatch("element is not in the face ring of the target")
    ring = source_ring or FaceRing(f.source)
    S, T = f.source, f.target
    pre: dict[int, list[int]] = defaultdict(list)
    for x in S.ids:
        pre[T.index[f(x)]].append(S.index[x])
    out = ring.zero()
    for mono, c in y.terms.items():
        term = ring.one()
        for t in mono:
            term = term * ChainElement(ring, {(s,): 1 for s in pre[t]})
        out = out + term * c
    return out
