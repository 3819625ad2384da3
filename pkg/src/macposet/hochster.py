"""Reduced cellular cohomology of full subposets and the Hochster comparison.

This side never touches R*(S): it builds the augmented cellular cochain
complex of |S_a| directly from the cover relation, with every cell oriented
by the ascending order of its vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intalg import AbelianGroup, IntMatrix, cohomology_at
from .koszul import MomentAngleCohomology, vector_of
from .poset import SimplicialPoset, vertices_to_mask


class CellularComplex:
    """Augmented cochain complex of |S_a|; cells of dimension k are elements of rank k+1."""

    def __init__(self, poset: SimplicialPoset, a_mask: int):
        self.poset = poset
        self.a_mask = a_mask
        top = a_mask.bit_count()
        self.cells: list[list[int]] = [[] for _ in range(top + 1)]  # index k+1 for dim k
        for s in range(len(poset)):
            if poset.vmask[s] & ~a_mask == 0:
                self.cells[poset.rank_of[s]].append(s)
        self.position = [{s: k for k, s in enumerate(c)} for c in self.cells]

    @property
    def top_dimension(self) -> int:
        return len(self.cells) - 2

    def ncells(self, k: int) -> int:
        return len(self.cells[k + 1]) if -1 <= k <= self.top_dimension else 0

    def coboundary(self, k: int) -> IntMatrix:
        """delta: C^k -> C^{k+1}."""
        M = IntMatrix.zeros(self.ncells(k + 1), self.ncells(k))
        if self.ncells(k + 1) == 0 or self.ncells(k) == 0:
            return M
        P = self.poset
        pos = self.position[k + 1]
        for row, t in enumerate(self.cells[k + 2]):
            vt = P.vmask[t]
            for f in P.facets_of[t]:
                missing = vt & ~P.vmask[f]
                position = (vt & (missing - 1)).bit_count()
                M.data[row][pos[f]] = -1 if position % 2 else 1
        return M

    def cohomology(self, k: int) -> AbelianGroup:
        return cohomology_at(self.coboundary(k - 1), self.coboundary(k)).group


def reduced_cohomology(S: SimplicialPoset, a) -> dict[int, AbelianGroup]:
    """H~^k(|S_a|; Z) for -1 <= k <= |a| - 1; ``a`` is a set of vertex numbers."""
    mask = vertices_to_mask(a)
    cx = CellularComplex(S, mask)
    return {k: cx.cohomology(k) for k in range(-1, mask.bit_count())}


@dataclass
class HochsterEntry:
    multidegree: tuple[int, ...]
    i: int
    koszul: AbelianGroup
    cellular: AbelianGroup

    @property
    def ok(self) -> bool:
        return self.koszul == self.cellular


@dataclass
class HochsterReport:
    entries: list[HochsterEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list[HochsterEntry]:
        return [e for e in self.entries if not e.ok]

    def multidegrees(self) -> set[tuple[int, ...]]:
        return {e.multidegree for e in self.entries}


def hochster_check(S: SimplicialPoset, cohomology: MomentAngleCohomology | None = None) -> HochsterReport:
    """Compare H^{-i,2a}(Z_S) with H~^{|a|-i-1}(|S_a|) for every a and i."""
    H = cohomology or MomentAngleCohomology(S)
    m = S.m
    report = HochsterReport()
    for a in sorted(range(1 << m), key=lambda x: vector_of(x, m)):
        cx = CellularComplex(S, a)
        size = a.bit_count()
        for i in range(size + 1):
            report.entries.append(HochsterEntry(
                vector_of(a, m), i, H.group_data(a, i).group, cx.cohomology(size - i - 1)))
    return report


@dataclass
class AlgebraicBetti:
    table: dict[tuple[int, tuple[int, ...]], int]  # (i, a) -> beta^{-i,2a}
    totals: list[int]  # beta^{-i} for i = 0..m
    beta0: int
    beta0_cellular: int


def algebraic_betti(S: SimplicialPoset, cohomology: MomentAngleCohomology | None = None) -> AlgebraicBetti:
    H = cohomology or MomentAngleCohomology(S)
    table = {k: g.free_rank for k, g in H.all_groups().items() if g.free_rank}
    totals = [0] * (S.m + 1)
    for (i, _), b in table.items():
        totals[i] += b
    cellular = 0
    for a in range(1 << S.m):
        cellular += CellularComplex(S, a).cohomology(a.bit_count() - 1).free_rank
    return AlgebraicBetti(table, totals, totals[0], cellular)

