"""Tuples of matrices: commutation, polarization, trace words, Cayley-Hamilton."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .linalg import Matrix, to_rational
from .multiform import BasePoint, MultiForm

PROFILES = ("diagonal", "jordan", "polynomial")
MAX_GEN_N = 8
MAX_GEN_D = 4


class NotCommutingError(ValueError):
    def __init__(self, witness):
        self.witness = witness
        i, j, (r, c), value = witness
        super().__init__(f"[theta_{i}, theta_{j}] has entry {value} at ({r}, {c})")


class MatrixTuple:
    """A d-tuple of n x n rational matrices."""

    __slots__ = ("n", "d", "matrices")

    def __init__(self, matrices: Sequence):
        mats = tuple(m if isinstance(m, Matrix) else Matrix(m) for m in matrices)
        if not mats:
            raise ValueError("need at least one matrix")
        n = mats[0].n
        if any(m.n != n for m in mats):
            raise ValueError("all matrices must have the same size")
        self.n = n
        self.d = len(mats)
        self.matrices = mats

    def __getitem__(self, i: int) -> Matrix:
        return self.matrices[i]

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self):
        return self.d

    def __eq__(self, other):
        if not isinstance(other, MatrixTuple):
            return NotImplemented
        return self.matrices == other.matrices

    def __hash__(self):
        return hash(self.matrices)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.matrices)!r})"

    def combination(self, coeffs: Sequence) -> Matrix:
        """sum_j coeffs[j] * theta_j"""
        if len(coeffs) != self.d:
            raise ValueError("need one coefficient per matrix")
        acc = Matrix.zero(self.n)
        for c, m in zip(coeffs, self.matrices):
            c = to_rational(c)
            if c:
                acc = acc + m * c
        return acc


class CommutingTuple(MatrixTuple):
    """A MatrixTuple whose members pairwise commute; checked on construction."""

    __slots__ = ()

    def __init__(self, matrices: Sequence):
        super().__init__(matrices)
        ok, witness = check_commute(self)
        if not ok:
            raise NotCommutingError(witness)


def check_commute(t: MatrixTuple):
    """Return ``(True, None)`` or ``(False, (i, j, (row, col), value))`` with 1-based indices."""
    for i, j in itertools.combinations(range(t.d), 2):
        c = t[i].commutator(t[j])
        for r in range(t.n):
            for k in range(t.n):
                if c[r, k] != 0:
                    return False, (i + 1, j + 1, (r + 1, k + 1), c[r, k])
    return True, None


def _symbolic_det(entries: list[list[MultiForm]]) -> MultiForm:
    """Determinant by Laplace expansion along rows, memoised on column subsets."""
    n = len(entries)
    memo: dict = {}

    def minor(row: int, cols: tuple) -> MultiForm:
        if row == n:
            return MultiForm.one(entries[0][0].d)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = None
        for pos, c in enumerate(cols):
            e = entries[row][c]
            if e.is_zero():
                continue
            term = e * minor(row + 1, cols[:pos] + cols[pos + 1:])
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = MultiForm.zero(entries[0][0].d, n - row)
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def polarize(t: MatrixTuple) -> BasePoint:
    """Coefficients c_i of det(u I - sum_j x_j theta_j) = u^n - c_1 u^{n-1} + ... as forms in x."""
    n, d = t.n, t.d
    # Variables: u first, then x_1..x_d.
    entries = []
    for r in range(n):
        row = []
        for c in range(n):
            coeffs = [int(r == c)] + [-t[j][r, c] for j in range(d)]
            row.append(MultiForm.linear(coeffs))
        entries.append(row)
    det = _symbolic_det(entries)
    buckets: list[dict] = [dict() for _ in range(n + 1)]
    for exp, coef in det.terms:
        i = n - exp[0]
        buckets[i][exp[1:]] = coef
    forms = [MultiForm(d, i, buckets[i]).scale((-1) ** i) for i in range(1, n + 1)]
    return BasePoint(d, forms)


def trace_word(t: MatrixTuple, a: Sequence[int]) -> Fraction:
    """Tr(theta_1^a_1 ... theta_d^a_d), factors in index order."""
    if len(a) != t.d:
        raise ValueError("need one exponent per matrix")
    if any(k < 0 for k in a):
        raise ValueError("exponents must be non-negative")
    prod = Matrix.identity(t.n)
    for m, k in zip(t.matrices, a):
        if k:
            prod = prod * m ** k
    return prod.trace()


def cycle_moment(z, a: Sequence[int]) -> Fraction:
    """sum over points of mult * prod_i x_i^a_i."""
    total = Fraction(0)
    for coords, mult in z.points:
        term = Fraction(mult)
        for x, k in zip(coords, a):
            term *= x ** k
        total += term
    return total


def _check_tuple_cycle(t: MatrixTuple, z) -> None:
    if z.d != t.d:
        raise ValueError(f"cycle lives in dimension {z.d}, tuple has {t.d} matrices")
    if z.n != t.n:
        raise ValueError(f"cycle has length {z.n}, matrices have size {t.n}")


def verify_trace_identity(t: CommutingTuple, z, a: Sequence[int]) -> bool:
    _check_tuple_cycle(t, z)
    if len(a) != t.d:
        raise ValueError("need one exponent per matrix")
    return trace_word(t, a) == cycle_moment(z, a)


def monomial_exponents(d: int, degree: int):
    """All exponent vectors of length d summing to ``degree``, descending lex."""
    if d == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomial_exponents(d - 1, degree - first):
            yield (first,) + rest


def cayley_hamilton_verify(t: CommutingTuple, z):
    """Check that every generator of prod_i m_{x_i}^{n_i} kills the tuple.

    Returns ``(True, None)`` or ``(False, generator)`` where ``generator`` is a
    list of ``(point, exponent)`` pairs, one per point of the cycle.
    """
    _check_tuple_cycle(t, z)
    ident = Matrix.identity(t.n)
    per_point = []
    for coords, mult in z.points:
        shifted = [m - ident * x for m, x in zip(t.matrices, coords)]
        powers = [[ident] for _ in shifted]
        for j, s in enumerate(shifted):
            for _ in range(mult):
                powers[j].append(powers[j][-1] * s)
        options = []
        for exp in monomial_exponents(t.d, mult):
            mono = reduce(lambda acc, je: acc * powers[je[0]][je[1]], enumerate(exp), ident)
            options.append((coords, exp, mono))
        per_point.append(options)
    for choice in itertools.product(*per_point):
        prod = ident
        for _, _, mono in choice:
            prod = prod * mono
            if prod.is_zero():
                break
        if not prod.is_zero():
            return False, [(coords, exp) for coords, exp, _ in choice]
    return True, None


def conjugate_tuple(t: MatrixTuple, g) -> MatrixTuple:
    if not isinstance(g, Matrix):
        g = Matrix(g)
    if g.n != t.n:
        raise ValueError("conjugating matrix has the wrong size")
    g_inv = g.inverse()
    return type(t)([g * m * g_inv for m in t.matrices])


def gld_transform(t: MatrixTuple, h) -> MatrixTuple:
    """theta'_j = sum_i h[i][j] theta_i, so that polarize(t') = polarize(t) o h."""
    if not isinstance(h, Matrix):
        h = Matrix(h)
    if h.n != t.d:
        raise ValueError("transformation matrix must be d x d")
    h.inverse()  # raises on singular h
    return type(t)([t.combination([h[i, j] for i in range(t.d)]) for j in range(t.d)])


def _random_unimodular(rng: random.Random, n: int) -> Matrix:
    lower = Matrix([[1 if i == j else (rng.randint(-2, 2) if i > j else 0) for j in range(n)]
                    for i in range(n)])
    upper = Matrix([[1 if i == j else (rng.randint(-2, 2) if i < j else 0) for j in range(n)]
                    for i in range(n)])
    perm = list(range(n))
    rng.shuffle(perm)
    p = Matrix([[int(perm[i] == j) for j in range(n)] for i in range(n)])
    return p * lower * upper


def _random_poly_of(rng: random.Random, m: Matrix, max_degree: int = 2) -> Matrix:
    coeffs = [rng.randint(-2, 2) for _ in range(max_degree + 1)]
    if all(c == 0 for c in coeffs[1:]):
        coeffs[1] = rng.choice([-1, 1])
    acc = Matrix.zero(m.n)
    for c in reversed(coeffs):
        acc = acc * m + Matrix.scalar(m.n, c)
    return acc


def _random_composition(rng: random.Random, n: int) -> list[int]:
    sizes = []
    left = n
    while left:
        k = rng.randint(1, left)
        sizes.append(k)
        left -= k
    return sizes


def random_commuting(n: int, d: int, seed: int, profile: str = "diagonal") -> CommutingTuple:
    """Deterministic random commuting tuple with rational (split) spectral data.

    ``diagonal`` conjugates simultaneously diagonal matrices, ``jordan`` takes
    polynomials in a conjugated Jordan matrix, ``polynomial`` takes polynomials
    in one conjugated upper-triangular matrix with integer diagonal.
    """
    if not (1 <= n <= MAX_GEN_N and 1 <= d <= MAX_GEN_D):
        raise ValueError(f"need 1 <= n <= {MAX_GEN_N} and 1 <= d <= {MAX_GEN_D}")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    rng = random.Random(f"sdtool:{profile}:{n}:{d}:{seed}")
    if profile == "diagonal":
        mats = [Matrix.diag([rng.randint(-3, 3) for _ in range(n)]) for _ in range(d)]
    elif profile == "jordan":
        rows = [[0] * n for _ in range(n)]
        start = 0
        for size in _random_composition(rng, n):
            lam = rng.randint(-3, 3)
            for k in range(start, start + size):
                rows[k][k] = lam
                if k + 1 < start + size:
                    rows[k][k + 1] = 1
            start += size
        base = Matrix(rows)
        mats = [_random_poly_of(rng, base) for _ in range(d)]
    else:
        base = Matrix([[rng.randint(-2, 2) if i == j else (rng.randint(-1, 1) if i < j else 0)
                        for j in range(n)] for i in range(n)])
        mats = [_random_poly_of(rng, base) for _ in range(d)]
    g = _random_unimodular(rng, n)
    g_inv = g.inverse()
    return CommutingTuple([g * m * g_inv for m in mats])
