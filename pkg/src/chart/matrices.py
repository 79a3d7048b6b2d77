"""Matrices over the chart's rational-function field (sympy DomainMatrix)."""

from typing import List, Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from src.chart.chart import Chart, ChartFunction

FunctionMatrix = List[List[ChartFunction]]


def to_domain_matrix(chart: Chart, rows: Sequence[Sequence[ChartFunction]]) -> DomainMatrix:
    rows = [list(r) for r in rows]
    shape = (len(rows), len(rows[0]) if rows else 0)
    return DomainMatrix(rows, shape, chart.domain)


def from_domain_matrix(dm: DomainMatrix) -> FunctionMatrix:
    r, c = dm.shape
    return [[dm[i, j].element for j in range(c)] for i in range(r)]


def fmat_inv(chart: Chart, rows: Sequence[Sequence[ChartFunction]]) -> FunctionMatrix:
    """
    Exact inverse over Q(x).

    Raises:
        DMNonInvertibleMatrixError: matrix is singular as a rational-function matrix
    """
    dm = to_domain_matrix(chart, rows)
    if not dm.det():
        raise DMNonInvertibleMatrixError("matrix is singular over the function field")
    return from_domain_matrix(dm.inv())


def fmat_det(chart: Chart, rows: Sequence[Sequence[ChartFunction]]) -> ChartFunction:
    return to_domain_matrix(chart, rows).det()


def fmat_mul(chart: Chart, A, B) -> FunctionMatrix:
    return from_domain_matrix(to_domain_matrix(chart, A) * to_domain_matrix(chart, B))


def fmat_add(A, B) -> FunctionMatrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def fmat_scale(A, factor) -> FunctionMatrix:
    return [[factor * a for a in row] for row in A]


def fmat_transpose(A) -> FunctionMatrix:
    return [list(col) for col in zip(*A)] if A else []


def fmat_matvec(A, vec) -> List[ChartFunction]:
    return [sum((a * v for a, v in zip(row, vec)), start=vec[0] * 0) for row in A]


def fmat_is_zero(A) -> bool:
    return all(not a for row in A for a in row)


def fmat_equal(A, B) -> bool:
    return len(A) == len(B) and all(not (a - b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def fmat_zeros(chart: Chart, r: int, c: int) -> FunctionMatrix:
    return [[chart.zero for _ in range(c)] for _ in range(r)]


def fmat_identity(chart: Chart, n: int) -> FunctionMatrix:
    return [[chart.one if i == j else chart.zero for j in range(n)] for i in range(n)]


# ============================================================================
# SHARED-DENOMINATOR MATRICES
# ============================================================================


class RationalMatrix:
    """
    Matrix over Q(x) stored as polynomial numerators over one denominator.

    Sums, products and directional derivatives never take a gcd; each entry
    is cancelled once, in ``to_rows``. Long sums of curvature terms with a
    non-constant metric stay tractable this way.
    """

    __slots__ = ("chart", "numer", "denom")

    def __init__(self, chart: Chart, numer, denom):
        self.chart = chart
        self.numer = numer
        self.denom = denom

    @property
    def ring(self):
        return self.chart.field.ring

    @property
    def shape(self):
        return len(self.numer), len(self.numer[0]) if self.numer else 0

    @classmethod
    def from_rows(cls, chart: Chart, rows: Sequence[Sequence[ChartFunction]]) -> "RationalMatrix":
        ring = chart.field.ring
        q = ring.one
        for row in rows:
            for f in row:
                if f and f.denom != q and f.denom != ring.one:
                    q = q.lcm(f.denom)
        numer = [[f.numer * q.exquo(f.denom) if f else ring.zero for f in row] for row in rows]
        return cls(chart, numer, q)

    @classmethod
    def zeros(cls, chart: Chart, r: int, c: int) -> "RationalMatrix":
        ring = chart.field.ring
        return cls(chart, [[ring.zero] * c for _ in range(r)], ring.one)

    def to_rows(self) -> FunctionMatrix:
        field = self.chart.field
        return [[field.new(n, self.denom) if n else field.zero for n in row] for row in self.numer]

    def is_zero(self) -> bool:
        return all(not n for row in self.numer for n in row)

    def _aligned(self, other: "RationalMatrix"):
        if self.denom == other.denom:
            return self.numer, other.numer, self.denom
        q = self.denom.lcm(other.denom)
        u, v = q.exquo(self.denom), q.exquo(other.denom)
        return _times(self.numer, u), _times(other.numer, v), q

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        A, B, q = self._aligned(other)
        return RationalMatrix(self.chart, [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)], q)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        A, B, q = self._aligned(other)
        return RationalMatrix(self.chart, [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)], q)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.chart, [[-n for n in row] for row in self.numer], self.denom)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        ring = self.ring
        cols = list(zip(*other.numer))
        numer = []
        for row in self.numer:
            out = []
            for col in cols:
                total = ring.zero
                for a, b in zip(row, col):
                    if a and b:
                        total += a * b
                out.append(total)
            numer.append(out)
        return RationalMatrix(self.chart, numer, self.denom * other.denom)

    def scale(self, factor) -> "RationalMatrix":
        """factor * M for a chart function or a rational constant."""
        f = self.chart.field.field_new(factor)
        if not f:
            return RationalMatrix.zeros(self.chart, *self.shape)
        return RationalMatrix(self.chart, _times(self.numer, f.numer), self.denom * f.denom)

    def derivative(self, X) -> "RationalMatrix":
        """
        X(M) entrywise for a vector field X = sum a_i d_i / e.

        X(n / q) = (X(n) q - n X(q)) / (e q^2); the q^2 drops to q when X(q) = 0.
        """
        ring = self.ring
        comps = RationalMatrix.from_rows(self.chart, [list(X.components)])
        a, e = comps.numer[0], comps.denom

        def apply(p):
            total = ring.zero
            for i, ai in enumerate(a):
                if ai:
                    total += ai * p.diff(ring.gens[i])
            return total

        q = self.denom
        Xq = apply(q)
        if not Xq:
            numer = [[apply(n) if n else ring.zero for n in row] for row in self.numer]
            return RationalMatrix(self.chart, numer, e * q)
        numer = [[apply(n) * q - n * Xq if n else ring.zero for n in row] for row in self.numer]
        return RationalMatrix(self.chart, numer, e * q * q)


def _times(rows, p):
    return [[n * p if n else n for n in row] for row in rows]


__all__ = [
    "DMNonInvertibleMatrixError",
    "FunctionMatrix",
    "RationalMatrix",
    "fmat_add",
    "fmat_det",
    "fmat_equal",
    "fmat_identity",
    "fmat_inv",
    "fmat_is_zero",
    "fmat_matvec",
    "fmat_mul",
    "fmat_scale",
    "fmat_transpose",
    "fmat_zeros",
    "from_domain_matrix",
    "to_domain_matrix",
]
