"""Zero-cycles, the Chow-point map, spectral data and the Cayley fiber."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .commuting import CommutingTuple, polarize
from .linalg import UniPoly, char_poly, generalized_eigenspace, rational_roots, restrict, to_rational
from .multiform import (BasePoint, MultiForm, _attach_linear, elementary_symmetric_forms,
                        quadratic_matrix, rank_one_quadratic_test, restrict_variables)

MAX_MEMBER_N = 6
MAX_MEMBER_D = 3


class NonSplitError(ValueError):
    """A characteristic polynomial does not split over the rationals.

    ``direction`` is the 1-based index of the offending matrix / coordinate.
    """

    def __init__(self, direction: int, message: str | None = None):
        self.direction = direction
        super().__init__(message or f"spectrum of direction {direction} does not split over Q")


class ZeroCycle:
    """A finite formal sum of rational points of affine d-space.

    Repeated points are merged; points are kept in lexicographic order so
    equality is structural.
    """

    __slots__ = ("d", "points")

    def __init__(self, d: int, points: Sequence = ()):
        if d < 1:
            raise ValueError("dimension must be positive")
        acc: dict = {}
        for coords, mult in points:
            coords = tuple(to_rational(x) for x in coords)
            if len(coords) != d:
                raise ValueError(f"point {coords} does not have {d} coordinates")
            if int(mult) != mult or mult < 1:
                raise ValueError("multiplicities must be positive integers")
            acc[coords] = acc.get(coords, 0) + int(mult)
        self.d = d
        self.points = tuple(sorted(acc.items()))

    @classmethod
    def from_points(cls, d: int, coords_list: Sequence) -> "ZeroCycle":
        return cls(d, [(c, 1) for c in coords_list])

    @property
    def n(self) -> int:
        return sum(m for _, m in self.points)

    def add(self, coords, mult: int = 1) -> "ZeroCycle":
        return ZeroCycle(self.d, self.points + ((tuple(coords), mult),))

    def __eq__(self, other):
        if not isinstance(other, ZeroCycle):
            return NotImplemented
        return (self.d, self.points) == (other.d, other.points)

    def __lt__(self, other: "ZeroCycle"):
        return (self.d, self.points) < (other.d, other.points)

    def __hash__(self):
        return hash((self.d, self.points))

    def __repr__(self):
        body = ", ".join(f"({', '.join(str(x) for x in c)}):{m}" for c, m in self.points)
        return f"ZeroCycle(d={self.d}, {{{body}}})"


def chow_point(z: ZeroCycle) -> BasePoint:
    forms = [MultiForm.linear(c) for c, _ in z.points]
    return elementary_symmetric_forms(forms, [m for _, m in z.points], d=z.d)


def spectral_data(t: CommutingTuple) -> ZeroCycle:
    """Joint generalized eigenvalues of a commuting tuple, with multiplicities.

    Splits the space into generalized eigenspaces of theta_1, restricts the
    other matrices to each piece and recurses one coordinate at a time.
    """
    if not isinstance(t, CommutingTuple):
        t = CommutingTuple(t.matrices)
    pieces = [(list(t.matrices), (), t.n)]
    for i in range(t.d):
        refined = []
        for mats, coords, _dim in pieces:
            head = mats[0]
            roots, splits = rational_roots(char_poly(head))
            if not splits:
                raise NonSplitError(i + 1)
            for lam in roots:
                basis = generalized_eigenspace(head, lam)
                rest = [restrict(m, basis) for m in mats[1:]]
                refined.append((rest, coords + (lam,), len(basis)))
        pieces = refined
    return ZeroCycle(t.d, [(coords, dim) for _, coords, dim in pieces])


def attach_point(b: BasePoint, x: Sequence) -> BasePoint:
    """Base point of z + [x] computed from the base point of z alone."""
    if len(x) != b.d:
        raise ValueError(f"point has {len(x)} coordinates, base point has d={b.d}")
    return BasePoint(b.d, _attach_linear(list(b.forms), MultiForm.linear(x)))


@dataclass(frozen=True)
class Member:
    cycle: ZeroCycle


@dataclass(frozen=True)
class NotMember:
    certificate: str


@dataclass(frozen=True)
class Indeterminate:
    direction: int
    reason: str = ""


def _distinct_permutations(values: Sequence) -> list[tuple]:
    return sorted(set(itertools.permutations(values)))


def b_membership(b: BasePoint):
    """Decide whether ``b`` is the Chow point of a 0-cycle.

    Returns :class:`Member` (with the unique cycle), :class:`NotMember` with a
    certificate, or :class:`Indeterminate` naming the first coordinate
    direction whose specialised polynomial does not split over Q.
    """
    n, d = b.n, b.d
    if n > MAX_MEMBER_N or d > MAX_MEMBER_D:
        raise ValueError(f"membership is supported for n <= {MAX_MEMBER_N}, d <= {MAX_MEMBER_D}")
    if n == 0:
        return Member(ZeroCycle(d))
    columns = []
    for j in range(d):
        e_j = [int(i == j) for i in range(d)]
        roots, splits = rational_roots(UniPoly(b.char_poly_at(e_j)))
        if not splits:
            return Indeterminate(j + 1, f"u^n - c_1(e_{j + 1}) u^(n-1) + ... does not split over Q")
        columns.append([r for r, m in roots.items() for _ in range(m)])

    if n == 2:
        disc = b[1] * b[1] - b[2].scale(4)
        is_square, _ = rank_one_quadratic_test(disc)
        if not is_square:
            rank = quadratic_matrix(disc).rank()
            return NotMember(f"rank(c1^2-4c2) = {rank}")

    first = tuple(columns[0])
    # Prune each later column against the projection onto coordinates (1, j):
    # projecting a cycle commutes with taking its Chow point.
    candidates = [[first]]
    for j in range(1, d):
        target = BasePoint(2, [restrict_variables(c, [0, j]) for c in b.forms])
        ok = []
        for perm in _distinct_permutations(columns[j]):
            z2 = ZeroCycle.from_points(2, list(zip(first, perm)))
            if chow_point(z2) == target:
                ok.append(perm)
        if not ok:
            return NotMember(f"no pairing of the roots in directions 1 and {j + 1} "
                             f"reproduces the projected base point")
        candidates.append(ok)
    seen = set()
    matches = []
    for cols in itertools.product(*candidates):
        z = ZeroCycle.from_points(d, list(zip(*cols)))
        if z in seen:
            continue
        seen.add(z)
        if chow_point(z) == b:
            matches.append(z)
    if matches:
        return Member(min(matches))
    return NotMember("no assembly of rational direction roots reproduces the base point")


class Polynomial:
    """Sparse, not necessarily homogeneous, polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            acc[exp] = acc.get(exp, Fraction(0)) + to_rational(coef)
        self.nvars = nvars
        # Graded order: higher total degree first, then descending lex.
        self.terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0),
                                  key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0]))))

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "Polynomial":
        nv = len(coeffs)
        terms = {tuple(int(i == j) for j in range(nv)): c for i, c in enumerate(coeffs)}
        terms[(0,) * nv] = const
        return cls(nv, terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.nvars, self.terms) == (other.nvars, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __repr__(self):
        return f"Polynomial({self.nvars}, {dict(self.terms)!r})"

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.nvars, self.terms + other.terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(self.nvars, self.terms + tuple((e, -c) for e, c in other.terms))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            return Polynomial(self.nvars, [(e, c * x) for e, x in self.terms])
        if other.nvars != self.nvars:
            raise ValueError("variable-count mismatch")
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, acc)

    def __call__(self, x: Sequence) -> Fraction:
        if len(x) != self.nvars:
            raise ValueError("wrong number of coordinates")
        total = Fraction(0)
        for exp, c in self.terms:
            term = c
            for xi, e in zip(x, exp):
                if e:
                    term *= to_rational(xi) ** e
            total += term
        return total

    def partial(self, i: int) -> "Polynomial":
        terms = []
        for exp, c in self.terms:
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                terms.append((tuple(e), c * exp[i]))
        return Polynomial(self.nvars, terms)

    def directional_derivative(self, w: Sequence) -> "Polynomial":
        acc = Polynomial(self.nvars)
        for i, wi in enumerate(w):
            if wi:
                acc = acc + self.partial(i) * wi
        return acc

    def variables_used(self) -> set[int]:
        return {i for e, _ in self.terms for i, k in enumerate(e) if k}


def f_v_poly(z: ZeroCycle, v: Sequence) -> Polynomial:
    """prod over points x_k of (v(x) - v(x_k))^mult_k as a polynomial in x."""
    if len(v) != z.d:
        raise ValueError(f"linear form has {len(v)} coefficients, cycle lives in dimension {z.d}")
    v = [to_rational(c) for c in v]
    result = Polynomial.constant(z.d, 1)
    for coords, mult in z.points:
        shift = sum((a * b for a, b in zip(v, coords)), Fraction(0))
        factor = Polynomial.linear(v, -shift)
        for _ in range(mult):
            result = result * factor
    return result


def cayley_fiber_length(z: ZeroCycle) -> tuple[int, bool]:
    """Length of the Cayley fiber over ``z`` and whether it equals the cycle length."""
    length = sum(comb(m - 1 + z.d, z.d) for _, m in z.points)
    return length, length == z.n


@dataclass(frozen=True)
class ConsistencyReport:
    cycle: ZeroCycle
    base_from_cycle: BasePoint
    base_from_polarization: BasePoint
    equal: bool


def sd_consistency(t: CommutingTuple) -> ConsistencyReport:
    z = spectral_data(t)
    from_cycle = chow_point(z)
    from_pol = polarize(t)
    return ConsistencyReport(z, from_cycle, from_pol, from_cycle == from_pol)
