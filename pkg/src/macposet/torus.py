"""Linear systems of parameters and the toral rank audit.

A degree-two sequence ``t_i = sum_j lambda_ij v_j`` is given by its n x m
coefficient matrix; column j belongs to vertex j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .face_ring import FaceRing, restriction
from .intalg import IntMatrix, rank, smith_decomposition
from .koszul import MomentAngleCohomology
from .poset import SimplicialPoset, bits, underlying_complex


class DimensionMismatch(ValueError):
    pass


@dataclass
class LsopResult:
    ok: bool
    witness: str | None = None  # an element violating the condition

    def __bool__(self):
        return self.ok


def as_matrix(lam) -> IntMatrix:
    if isinstance(lam, IntMatrix):
        return lam
    return IntMatrix.from_rows(lam)


def _check_shape(S: SimplicialPoset, lam: IntMatrix) -> None:
    if lam.rows != S.rank or lam.cols != S.m:
        raise DimensionMismatch(f"expected a {S.rank}x{S.m} matrix, got {lam.rows}x{lam.cols}")


def _elements(S: SimplicialPoset, maximal_only: bool) -> list[int]:
    if maximal_only:
        return [S.index[x] for x in S.maximal_elements()]
    return list(range(len(S)))


def columns_at(S: SimplicialPoset, lam: IntMatrix, s: int) -> IntMatrix:
    """Lambda_sigma: the columns of vertices of sigma."""
    return lam.submatrix(cols=list(bits(S.vmask[s])))


def is_rational_lsop(S: SimplicialPoset, lam, maximal_only: bool = True) -> LsopResult:
    """rank(Lambda_sigma) == |sigma| for every sigma."""
    lam = as_matrix(lam)
    _check_shape(S, lam)
    for s in _elements(S, maximal_only):
        if rank(columns_at(S, lam, s)) != S.rank_of[s]:
            return LsopResult(False, S.ids[s])
    return LsopResult(True)


def is_integral_lsop(S: SimplicialPoset, lam, maximal_only: bool = True) -> LsopResult:
    """The columns of every Lambda_sigma extend to a basis of Z^n."""
    lam = as_matrix(lam)
    _check_shape(S, lam)
    for s in _elements(S, maximal_only):
        factors = smith_decomposition(columns_at(S, lam, s)).invariant_factors
        if len(factors) != S.rank_of[s] or any(d != 1 for d in factors):
            return LsopResult(False, S.ids[s])
    return LsopResult(True)


def _rank_q(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][j]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][j]:
                f = rows[i][j] / rows[r][j]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def check_lsop_restriction(S: SimplicialPoset, lam) -> bool:
    """Do the restrictions s_sigma(t_1..t_n) span Q[sigma] in degree two, for all sigma?

    Over Q, linear forms generate the positive-degree ideal of a polynomial
    ring exactly when they span its degree-two part.
    """
    lam = as_matrix(lam)
    _check_shape(S, lam)
    ring = FaceRing(S)
    ts = []
    for row in lam.data:
        t = ring.zero()
        for j, c in enumerate(row):
            if c:
                t = t + ring.v(j + 1) * c
        ts.append(t)
    for sigma in S.ids:
        verts = sorted(S.vset(sigma))
        if not verts:
            continue
        images = [restriction(S, t, sigma) for t in ts]
        rows = []
        for img in images:
            row = []
            for j in verts:
                e = tuple(int(k == j - 1) for k in range(S.m))
                row.append(Fraction(img.get(e, 0)))
            rows.append(row)
        if _rank_q(rows) != len(verts):
            return False
    return True


def find_rational_lsop(S: SimplicialPoset, attempts: int = 1000, entry_bound: int = 3,
                       seed: int | None = 0) -> IntMatrix | None:
    """Random search for an integer matrix passing :func:`is_rational_lsop`."""
    rng = random.Random(seed)
    n, m = S.rank, S.m
    for _ in range(attempts):
        lam = IntMatrix.from_rows([[rng.randint(-entry_bound, entry_bound) for _ in range(m)]
                                   for _ in range(n)], cols=m)
        if is_rational_lsop(S, lam):
            return lam
    return None


@dataclass
class TrcReport:
    m: int
    n: int
    mrk: int
    trk: int
    hrk: int
    hrk_folded: int
    pure: bool

    @property
    def bound(self) -> int:
        return 2 ** self.trk

    @property
    def sharp_bound(self) -> int:
        return 2 ** (self.m - self.mrk)

    @property
    def passes_bound(self) -> bool:
        return self.hrk >= self.bound

    @property
    def passes_sharp_bound(self) -> bool:
        return self.hrk >= self.sharp_bound

    @property
    def passes_retraction(self) -> bool:
        return self.hrk >= self.hrk_folded

    @property
    def passed(self) -> bool:
        return self.passes_bound and self.passes_sharp_bound and self.passes_retraction

    def to_json(self) -> dict:
        return {
            "m": self.m, "n": self.n, "mrk": self.mrk, "trk": self.trk,
            "hrk": self.hrk, "hrk_folded": self.hrk_folded, "pure": self.pure,
            "bound": self.bound, "sharp_bound": self.sharp_bound,
            "passes_bound": self.passes_bound, "passes_sharp_bound": self.passes_sharp_bound,
            "passes_retraction": self.passes_retraction, "passed": self.passed,
        }


def trc_audit(S: SimplicialPoset, cohomology: MomentAngleCohomology | None = None) -> TrcReport:
    H = cohomology or MomentAngleCohomology(S)
    K, _ = underlying_complex(S)
    mrk = min(S.element_rank(x) for x in S.maximal_elements())
    return TrcReport(
        m=S.m,
        n=S.rank,
        mrk=mrk,
        trk=S.m - S.rank,
        hrk=H.homology_rank(),
        hrk_folded=MomentAngleCohomology(K).homology_rank(),
        pure=mrk == S.rank,
    )


def read_matrix(text: str) -> IntMatrix:
    """Whitespace-separated integers, one matrix row per non-empty line."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if not rows:
        raise ValueError("empty matrix")
    if len({len(r) for r in rows}) != 1:
        raise ValueError("rows have different lengths")
    return IntMatrix.from_rows(rows)


def format_matrix(lam: IntMatrix | Sequence[Sequence[int]]) -> str:
    lam = as_matrix(lam)
    return "\n".join(" ".join(str(x) for x in row) for row in lam.data) + "\n"
