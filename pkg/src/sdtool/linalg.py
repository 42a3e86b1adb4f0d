"""Exact rational linear algebra.

Matrices are immutable tuples of :class:`fractions.Fraction` rows.  Everything
here is exact; nothing ever falls back to floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class SingularMatrixError(ValueError):
    pass


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing to convert {type(x).__name__} to an exact rational")
    return Fraction(x)


class Matrix:
    """Square matrix with exact rational entries."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(to_rational(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix must have positive size")
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
        self.n = n
        self.rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.scalar(n, 1)

    @classmethod
    def zero(cls, n: int) -> "Matrix":
        return cls.scalar(n, 0)

    @classmethod
    def scalar(cls, n: int, c) -> "Matrix":
        c = to_rational(c)
        return cls([[c if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)
        return f"Matrix([{body}])"

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same_size(self, other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_same_size(self, other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            _check_same_size(self, other)
            cols = list(zip(*other.rows))
            return Matrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                           for r in self.rows])
        c = to_rational(other)
        return Matrix([[c * a for a in r] for r in self.rows])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(v) != self.n:
            raise ValueError("vector length does not match matrix size")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self * other - other * self

    def inverse(self) -> "Matrix":
        n = self.n
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        pivots = _rref_inplace(aug, ncols=n)
        if len(pivots) < n:
            raise SingularMatrixError("matrix is singular")
        return Matrix([row[n:] for row in aug])

    def det(self) -> Fraction:
        a = [list(r) for r in self.rows]
        n = self.n
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] / a[c][c]
                if f:
                    for k in range(c, n):
                        a[r][k] -= f * a[c][k]
        return det

    def rank(self) -> int:
        return len(_rref_inplace([list(r) for r in self.rows]))


def _check_same_size(a: Matrix, b: Matrix) -> None:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")


def _rref_inplace(rows: list, ncols: int | None = None) -> list:
    """Reduce ``rows`` to reduced row-echelon form; return the pivot columns.

    Only the first ``ncols`` columns are used for pivoting.
    """
    if not rows:
        return []
    width = len(rows[0])
    ncols = width if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rref(vectors: Iterable[Sequence]) -> list[tuple]:
    """Reduced row-echelon form of a list of vectors, zero rows dropped."""
    rows = [[to_rational(x) for x in v] for v in vectors]
    pivots = _rref_inplace(rows)
    return [tuple(rows[i]) for i in range(len(pivots))]


class UniPoly:
    """Dense univariate polynomial; ``coeffs[k]`` is the coefficient of u^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = [to_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs or not other.coeffs:
            return UniPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    def deflate(self, root) -> "UniPoly":
        """Synthetic division by (u - root); the remainder must vanish."""
        root = to_rational(root)
        out = []
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        if out[-1] != 0:
            raise ValueError(f"{root} is not a root")
        return UniPoly(reversed(out[:-1]))


def char_poly(m: Matrix) -> UniPoly:
    """det(u*I - m) by the Faddeev-LeVerrier recurrence."""
    n = m.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    aux = Matrix.zero(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        aux = m * aux + ident * coeffs[n - k + 1]
        coeffs[n - k] = -(m * aux).trace() / k
    return UniPoly(coeffs)


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small, large = [], []
    for i in range(1, math.isqrt(k) + 1):
        if k % i == 0:
            small.append(i)
            if i != k // i:
                large.append(k // i)
    return small + large[::-1]


def rational_roots(p: UniPoly) -> tuple[dict, bool]:
    """Rational roots of ``p`` with multiplicities, and whether they exhaust its degree.

    The roots come back as an ordered dict ``{root: multiplicity}`` sorted by root.
    """
    if p.degree < 0:
        raise ValueError("the zero polynomial has no well-defined roots")
    roots: dict = {}
    q = p
    while q.degree > 0 and q.coeffs[0] == 0:
        q = UniPoly(q.coeffs[1:])
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
    while q.degree > 0:
        lcm = math.lcm(*(c.denominator for c in q.coeffs))
        ints = [int(c * lcm) for c in q.coeffs]
        g = math.gcd(*ints)
        ints = [c // g for c in ints]
        found = None
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if q(cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        while q.degree > 0 and q(found) == 0:
            q = q.deflate(found)
            roots[found] = roots.get(found, 0) + 1
    ordered = dict(sorted(roots.items()))
    return ordered, sum(ordered.values()) == p.degree


def kernel_basis(m: Matrix) -> list[tuple]:
    """Null space basis of ``m`` in reduced row-echelon form."""
    rows = [list(r) for r in m.rows]
    pivots = _rref_inplace(rows)
    free = [c for c in range(m.n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.n
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(v)
    return rref(basis)


def generalized_eigenspace(m: Matrix, lam) -> list[tuple]:
    lam = to_rational(lam)
    return kernel_basis((m - Matrix.scalar(m.n, lam)) ** m.n)


def restrict(m: Matrix, basis: Sequence[Sequence]) -> Matrix:
    """Matrix of ``m`` on the invariant subspace spanned by ``basis``.

    Column k of the result holds the coordinates of ``m @ basis[k]``.  Raises
    ``ValueError`` if the span is not ``m``-invariant.
    """
    k = len(basis)
    n = m.n
    images = [m.apply(b) for b in basis]
    # Solve B @ R = M @ B column by column via one augmented elimination.
    aug = [[basis[c][i] for c in range(k)] + [images[c][i] for c in range(k)] for i in range(n)]
    pivots = _rref_inplace(aug, ncols=k)
    if len(pivots) != k:
        raise ValueError("basis vectors are linearly dependent")
    if any(x != 0 for row in aug[k:] for x in row[k:]):
        raise ValueError("subspace is not invariant")
    return Matrix([[aug[i][k + j] for j in range(k)] for i in range(k)])
