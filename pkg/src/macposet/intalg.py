"""Exact integer linear algebra.

Everything here works over arbitrary-precision Python ints.  The main entry
points are :func:`smith_normal_form` and :func:`cohomology_at`; the latter
returns a :class:`CohomologyGroup` that remembers enough of the reduction to
put any cocycle into normal form (used for cup products).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


class NotAComplex(ValueError):
    """Raised when two consecutive differentials do not compose to zero."""


class NotACocycle(ValueError):
    """Raised when asked to reduce a vector outside the kernel."""


class IntMatrix:
    """A dense integer matrix that keeps its shape even when empty."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: list[list[int]] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError(f"entries do not match shape {rows}x{cols}")
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        data = [list(map(int, row)) for row in rows]
        if cols is None:
            if not data:
                raise ValueError("number of columns is needed for an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def copy(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [row[:] for row in self.data])

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.data[i][j]

    def __setitem__(self, idx: tuple[int, int], value: int) -> None:
        i, j = idx
        self.data[i][j] = value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {self.data!r})"

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.data]
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for matrix with {self.cols} columns")
        return [sum(a * b for a, b in zip(row, v)) for row in self.data]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.rows else
                         [[] for _ in range(self.cols)])

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.data]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def submatrix(self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> IntMatrix:
        r = list(range(self.rows)) if rows is None else list(rows)
        c = list(range(self.cols)) if cols is None else list(cols)
        return IntMatrix(len(r), len(c), [[self.data[i][j] for j in c] for i in r])

    def diagonal(self) -> list[int]:
        return [self.data[i][i] for i in range(min(self.rows, self.cols))]


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, all di >= 2."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion coefficient {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def from_invariants(cls, free_rank: int, factors: Iterable[int]) -> AbelianGroup:
        """Build from arbitrary diagonal entries (units are dropped)."""
        return cls(free_rank, tuple(d for d in sorted(abs(x) for x in factors) if d > 1))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


class _Reducer:
    """Row/column operations on a working copy of a matrix, tracking U, V and inverses."""

    def __init__(self, m: IntMatrix):
        self.A = [row[:] for row in m.data]
        self.r, self.c = m.rows, m.cols
        self.U = IntMatrix.identity(self.r).data
        self.Ui = IntMatrix.identity(self.r).data
        self.V = IntMatrix.identity(self.c).data
        self.Vi = IntMatrix.identity(self.c).data

    # row_i += q * row_j
    def row_add(self, i: int, j: int, q: int) -> None:
        if not q:
            return
        for M in (self.A, self.U):
            ri, rj = M[i], M[j]
            for k, x in enumerate(rj):
                if x:
                    ri[k] += q * x
        for row in self.Ui:
            row[j] -= q * row[i]

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for M in (self.A, self.U):
            M[i], M[j] = M[j], M[i]
        for row in self.Ui:
            row[i], row[j] = row[j], row[i]

    def row_negate(self, i: int) -> None:
        for M in (self.A, self.U):
            M[i] = [-x for x in M[i]]
        for row in self.Ui:
            row[i] = -row[i]

    # col_i += q * col_j
    def col_add(self, i: int, j: int, q: int) -> None:
        if not q:
            return
        for M in (self.A, self.V):
            for row in M:
                if row[j]:
                    row[i] += q * row[j]
        ri, rj = self.Vi[i], self.Vi[j]
        for k, x in enumerate(ri):
            if x:
                rj[k] -= q * x

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for M in (self.A, self.V):
            for row in M:
                row[i], row[j] = row[j], row[i]
        self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

    def run(self) -> None:
        A, r, c = self.A, self.r, self.c
        for t in range(min(r, c)):
            pivot = _min_abs_entry(A, t, r, c)
            if pivot is None:
                break
            self.row_swap(t, pivot[0])
            self.col_swap(t, pivot[1])
            while True:
                # Move the smallest entry of row t / column t to the pivot.
                best = (abs(A[t][t]), t, t)
                for i in range(t + 1, r):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, c):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                self.row_swap(t, best[1])
                self.col_swap(t, best[2])
                p = A[t][t]
                clean = True
                for i in range(t + 1, r):
                    if A[i][t]:
                        self.row_add(i, t, -(A[i][t] // p))
                        clean = clean and A[i][t] == 0
                for j in range(t + 1, c):
                    if A[t][j]:
                        self.col_add(j, t, -(A[t][j] // p))
                        clean = clean and A[t][j] == 0
                if not clean:
                    continue
                bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                self.row_add(t, bad[0], 1)
            if A[t][t] < 0:
                self.row_negate(t)


def _min_abs_entry(A, t, r, c):
    best = None
    for i in range(t, r):
        row = A[i]
        for j in range(t, c):
            x = row[j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else (best[1], best[2])


@dataclass
class SmithForm:
    """U @ M @ V == D with U, V unimodular; U_inv and V_inv are their inverses."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.D.diagonal() if d]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_decomposition(m: IntMatrix) -> SmithForm:
    red = _Reducer(m)
    red.run()
    return SmithForm(
        U=IntMatrix(m.rows, m.rows, red.U),
        D=IntMatrix(m.rows, m.cols, red.A),
        V=IntMatrix(m.cols, m.cols, red.V),
        U_inv=IntMatrix(m.rows, m.rows, red.Ui),
        V_inv=IntMatrix(m.cols, m.cols, red.Vi),
    )


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` in Smith normal form."""
    snf = smith_decomposition(m)
    return snf.U, snf.D, snf.V


def rank(m: IntMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    A = [row[:] for row in m.data]
    rows, cols = m.rows, m.cols
    r = 0
    prev = 1
    for j in range(cols):
        piv = next((i for i in range(r, rows) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][j]
        for i in range(r + 1, rows):
            a = A[i][j]
            A[i] = [(p * x - a * y) // prev for x, y in zip(A[i], A[r])]
        prev = p
        r += 1
        if r == rows:
            break
    return r


def determinant(m: IntMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    A = [row[:] for row in m.data]
    sign, prev = 1, 1
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


@dataclass
class CohomologyGroup:
    """ker(d_out) / im(d_in) together with normal-form data.

    ``generators[k]`` is a cocycle representing the k-th cyclic summand and
    ``orders[k]`` its order (0 for infinite order).  Torsion summands come
    first, in the order of ``group.torsion``.
    """

    group: AbelianGroup
    generators: list[list[int]]
    orders: list[int]
    d_out: IntMatrix
    _to_coords: IntMatrix = field(repr=False)

    @property
    def dimension(self) -> int:
        return self.d_out.cols

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Normal-form coordinates of the class of the cocycle ``v``."""
        v = list(v)
        if len(v) != self.dimension:
            raise ValueError(f"vector of length {len(v)}, expected {self.dimension}")
        if any(self.d_out.apply(v)):
            raise NotACocycle("vector is not in the kernel of the outgoing differential")
        raw = self._to_coords.apply(v)
        return tuple(x % d if d else x for x, d in zip(raw, self.orders))

    def vector(self, coords: Sequence[int]) -> list[int]:
        """A cocycle representing the class with the given coordinates."""
        out = [0] * self.dimension
        for c, g in zip(coords, self.generators):
            if c:
                for k, x in enumerate(g):
                    out[k] += c * x
        return out


def cohomology_at(d_in: IntMatrix, d_out: IntMatrix) -> CohomologyGroup:
    """Cohomology of ``A --d_in--> B --d_out--> C`` at B."""
    n = d_out.cols
    if d_in.rows != n:
        raise ValueError(f"d_in has {d_in.rows} rows, d_out has {n} columns")
    if not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out @ d_in != 0")

    out_snf = smith_decomposition(d_out)
    r = out_snf.rank
    # Rows r.. of V^-1 give coordinates in the kernel basis V[:, r:].
    proj = out_snf.V_inv.submatrix(rows=range(r, n))
    kernel = out_snf.V.submatrix(cols=range(r, n))
    k = n - r

    image = proj @ d_in
    in_snf = smith_decomposition(image)
    diag = in_snf.D.diagonal() + [0] * (k - min(image.rows, image.cols))
    diag = diag[:k]
    basis = kernel @ in_snf.U_inv
    to_coords = in_snf.U @ proj

    keep = [j for j, d in enumerate(diag) if d != 1]
    # Torsion first (ascending, which is the divisibility order), then free.
    keep.sort(key=lambda j: (diag[j] == 0, diag[j]))
    group = AbelianGroup(sum(1 for j in keep if diag[j] == 0),
                         tuple(diag[j] for j in keep if diag[j]))
    return CohomologyGroup(
        group=group,
        generators=[basis.column(j) for j in keep],
        orders=[diag[j] for j in keep],
        d_out=d_out,
        _to_coords=to_coords.submatrix(rows=keep),
    )


def quotient_reduce(v: Sequence[int], group: CohomologyGroup) -> tuple[int, ...]:
    return group.reduce(v)


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for x in values:
        g = gcd(g, x)
    return g
