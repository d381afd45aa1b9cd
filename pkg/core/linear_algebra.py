"""
Exact linear algebra over ℚ and finite windows of cochain complexes.

Matrices are lists of rows of ``Fraction``. Elimination is fraction-free
(Bareiss) with first-nonzero pivoting, so results are deterministic.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

from .errors import ComplexError, WindowError
from .graded_algebra import ScalarLike, to_scalar

logger = logging.getLogger(__name__)

Vector = List[Fraction]
Matrix = List[List[Fraction]]


def zero_matrix(rows: int, columns: int) -> Matrix:
    return [[Fraction(0)] * columns for _ in range(rows)]


def identity_matrix(size: int) -> Matrix:
    matrix = zero_matrix(size, size)
    for i in range(size):
        matrix[i][i] = Fraction(1)
    return matrix


def matrix_from_columns(columns: Sequence[Sequence[ScalarLike]], rows: int) -> Matrix:
    """Assemble a rows × len(columns) matrix from column vectors"""
    matrix = zero_matrix(rows, len(columns))
    for j, column in enumerate(columns):
        if len(column) != rows:
            raise ValueError(f"Column {j} has length {len(column)}, expected {rows}")
        for i, value in enumerate(column):
            matrix[i][j] = to_scalar(value)
    return matrix


def column_count(matrix: Matrix, columns: Optional[int] = None) -> int:
    if columns is not None:
        return columns
    return len(matrix[0]) if matrix else 0


def transpose(matrix: Matrix, columns: Optional[int] = None) -> Matrix:
    width = column_count(matrix, columns)
    return [[matrix[i][j] for i in range(len(matrix))] for j in range(width)]


def mat_vec(matrix: Matrix, vector: Sequence[ScalarLike]) -> Vector:
    values = [to_scalar(v) for v in vector]
    return [sum((a * b for a, b in zip(row, values) if a and b), Fraction(0)) for row in matrix]


def mat_mul(left: Matrix, right: Matrix, inner: Optional[int] = None, columns: Optional[int] = None) -> Matrix:
    width = column_count(right, columns)
    depth = column_count(left, inner)
    product = zero_matrix(len(left), width)
    for i, row in enumerate(left):
        for k in range(depth):
            a = row[k]
            if not a:
                continue
            for j, b in enumerate(right[k]):
                if b:
                    product[i][j] += a * b
    return product


def is_zero_matrix(matrix: Matrix) -> bool:
    return all(not value for row in matrix for value in row)


def row_echelon(matrix: Matrix, columns: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns)"""
    rows = [[to_scalar(v) for v in row] for row in matrix]
    width = column_count(rows, columns)
    pivots: List[int] = []
    rank = 0
    previous = Fraction(1)
    for c in range(width):
        if rank == len(rows):
            break
        found = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if found is None:
            continue
        rows[rank], rows[found] = rows[found], rows[rank]
        pivot = rows[rank][c]
        for i in range(rank + 1, len(rows)):
            factor = rows[i][c]
            rows[i] = [(pivot * rows[i][j] - factor * rows[rank][j]) / previous for j in range(width)]
        previous = pivot
        pivots.append(c)
        rank += 1
    return rows, pivots


def reduced_row_echelon(matrix: Matrix, columns: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    width = column_count(matrix, columns)
    rows, pivots = row_echelon(matrix, width)
    rows = rows[:len(pivots)]
    for r, c in enumerate(pivots):
        lead = rows[r][c]
        rows[r] = [value / lead for value in rows[r]]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        for above in range(r):
            factor = rows[above][c]
            if factor:
                rows[above] = [a - factor * b for a, b in zip(rows[above], rows[r])]
    return rows, pivots


def rank(matrix: Matrix, columns: Optional[int] = None) -> int:
    return len(row_echelon(matrix, columns)[1])


def _normalize_leading(vector: Vector) -> Vector:
    lead = next((v for v in vector if v), None)
    if lead is None or lead == 1:
        return vector
    return [v / lead for v in vector]


def kernel_basis(matrix: Matrix, columns: Optional[int] = None) -> List[Vector]:
    """Basis of {x : Mx = 0}; each vector scaled so its first non-zero entry is 1"""
    width = column_count(matrix, columns)
    reduced, pivots = reduced_row_echelon(matrix, width)
    free = [c for c in range(width) if c not in set(pivots)]
    basis = []
    for f in free:
        vector = [Fraction(0)] * width
        vector[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vector[c] = -reduced[r][f]
        basis.append(_normalize_leading(vector))
    return basis


def solve_linear(
    matrix: Matrix, vector: Sequence[ScalarLike], columns: Optional[int] = None
) -> Optional[Vector]:
    """Some exact solution of Mx = v, or None when the system is inconsistent"""
    width = column_count(matrix, columns)
    target = [to_scalar(v) for v in vector]
    if len(target) != len(matrix):
        raise ValueError(f"Right-hand side has length {len(target)}, matrix has {len(matrix)} rows")
    augmented = [list(row[:width]) + [target[i]] for i, row in enumerate(matrix)]
    reduced, pivots = reduced_row_echelon(augmented, width + 1)
    if pivots and pivots[-1] == width:
        return None
    solution = [Fraction(0)] * width
    for r, c in enumerate(pivots):
        solution[c] = reduced[r][width]
    if mat_vec(matrix, solution) != target:
        raise ArithmeticError("Elimination produced a vector that does not solve the system")
    return solution


def is_invertible(matrix: Matrix) -> bool:
    return len(matrix) == column_count(matrix) and rank(matrix) == len(matrix)


class EchelonSpan:
    """Incrementally maintained reduced basis of a subspace of ℚ^n"""

    def __init__(self, dimension: int, vectors: Sequence[Sequence[ScalarLike]] = ()):
        self.dimension = dimension
        self._rows: Dict[int, Vector] = {}
        for vector in vectors:
            self.add(vector)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Sequence[ScalarLike]) -> Vector:
        residue = [to_scalar(v) for v in vector]
        if len(residue) != self.dimension:
            raise ValueError(f"Vector has length {len(residue)}, span lives in dimension {self.dimension}")
        for pivot, row in self._rows.items():
            factor = residue[pivot]
            if factor:
                residue = [a - factor * b for a, b in zip(residue, row)]
        return residue

    def contains(self, vector: Sequence[ScalarLike]) -> bool:
        return not any(self.reduce(vector))

    def add(self, vector: Sequence[ScalarLike]) -> bool:
        """Add a vector; returns False when it was already in the span"""
        residue = self.reduce(vector)
        pivot = next((i for i, v in enumerate(residue) if v), None)
        if pivot is None:
            return False
        lead = residue[pivot]
        residue = [v / lead for v in residue]
        for other, row in self._rows.items():
            factor = row[pivot]
            if factor:
                self._rows[other] = [a - factor * b for a, b in zip(row, residue)]
        self._rows[pivot] = residue
        return True

    def basis(self) -> List[Vector]:
        return [list(self._rows[p]) for p in sorted(self._rows)]


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise WindowError(f"Empty window [{self.lo}, {self.hi}]")

    @classmethod
    def parse(cls, text: str) -> "DegreeWindow":
        """Parse "lo:hi" (either bound may be negative)"""
        try:
            lo, hi = (int(part) for part in text.split(":"))
        except ValueError:
            raise WindowError(f"Window must look like 'lo:hi', got {text!r}")
        return cls(lo, hi)

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def widen(self, by: int = 1) -> "DegreeWindow":
        return DegreeWindow(self.lo - by, self.hi + by)

    def __contains__(self, degree: int) -> bool:
        return self.lo <= degree <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass
class ComplexWindow:
    """Bases per degree and differential matrices Cⁿ → Cⁿ⁺¹ for lo ≤ n < hi"""
    window: DegreeWindow
    bases: Dict[int, List[Hashable]]
    differentials: Dict[int, Matrix] = field(default_factory=dict)

    def dimension(self, degree: int) -> int:
        return len(self.bases.get(degree, []))

    def differential(self, degree: int) -> Matrix:
        matrix = self.differentials.get(degree)
        if matrix is None:
            return zero_matrix(self.dimension(degree + 1), self.dimension(degree))
        return matrix

    def check(self):
        """Raise ComplexError wherever dⁿ⁺¹∘dⁿ ≠ 0"""
        for n in range(self.window.lo, self.window.hi - 1):
            composite = mat_mul(
                self.differential(n + 1), self.differential(n),
                inner=self.dimension(n + 1), columns=self.dimension(n),
            )
            if not is_zero_matrix(composite):
                raise ComplexError(n)


@dataclass
class CohomologySlice:
    degree: int
    dimension: int
    representatives: List[Vector]
    cocycle_dimension: int
    boundary_rank: int
    edge: Optional[str] = None  # "lower" or "upper" at window boundaries

    @property
    def is_edge(self) -> bool:
        return self.edge is not None

    def as_dict(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "dimension": self.dimension,
            "cocycles": self.cocycle_dimension,
            "boundaries": self.boundary_rank,
            "edge": self.edge,
        }


def cohomology_window(cw: ComplexWindow) -> Dict[int, CohomologySlice]:
    """Exact cohomology on every degree of the window.

    The lowest degree has no incoming differential and the highest has no
    outgoing one; both are flagged as edges and only bound the true value.
    """
    cw.check()
    lo, hi = cw.window.lo, cw.window.hi
    result: Dict[int, CohomologySlice] = {}
    for n in cw.window.degrees():
        size = cw.dimension(n)
        if n < hi:
            cocycles = kernel_basis(cw.differential(n), size)
        else:
            cocycles = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
        boundaries = EchelonSpan(size)
        if n > lo:
            incoming = cw.differential(n - 1)
            for column in transpose(incoming, cw.dimension(n - 1)):
                boundaries.add(column)
        boundary_rank = boundaries.rank
        representatives = [z for z in cocycles if boundaries.add(z)]
        edge = "lower" if n == lo else ("upper" if n == hi else None)
        logger.debug("degree %d: dim C=%d, dim Z=%d, rank B=%d", n, size, len(cocycles), boundary_rank)
        result[n] = CohomologySlice(
            degree=n,
            dimension=len(representatives),
            representatives=representatives,
            cocycle_dimension=len(cocycles),
            boundary_rank=boundary_rank,
            edge=edge,
        )
    return result
