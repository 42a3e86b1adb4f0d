"""Homogeneous forms in d direction variables with exact rational coefficients.

A degree-e form is an element of Sym^e of the d-dimensional space; a tuple
(c_1, ..., c_n) with deg c_i = i is a point of the base ``prod_i Sym^i``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix, rref, to_rational


def _grlex_key(exp):
    # Descending lex inside one degree: s^2 before st before t^2.
    return tuple(-e for e in exp)


def _var_names(d: int) -> list[str]:
    if d <= 3:
        return ["s", "t", "r"][:d]
    return [f"x{i + 1}" for i in range(d)]


class MultiForm:
    """A homogeneous polynomial of fixed degree in ``d`` variables.

    Terms are kept sorted (descending lexicographic exponent order), zero
    coefficients are never stored, and the degree is part of the value, so
    ``==`` is plain structural equality.
    """

    __slots__ = ("d", "degree", "terms")

    def __init__(self, d: int, degree: int, terms: Mapping | Iterable = ()):
        if d < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("degree must be non-negative")
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != d:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {d}")
            if any(e < 0 for e in exp) or sum(exp) != degree:
                raise ValueError(f"exponent {exp} is not a degree-{degree} monomial")
            acc[exp] = acc.get(exp, Fraction(0)) + to_rational(coef)
        self.d = d
        self.degree = degree
        self.terms = tuple(sorted(((e, c) for e, c in acc.items() if c != 0),
                                  key=lambda ec: _grlex_key(ec[0])))

    @classmethod
    def _trusted(cls, d: int, degree: int, acc: dict) -> "MultiForm":
        # Internal fast path: keys already valid exponent tuples, values Fractions.
        self = object.__new__(cls)
        self.d = d
        self.degree = degree
        self.terms = tuple(sorted(((e, c) for e, c in acc.items() if c),
                                  key=lambda ec: _grlex_key(ec[0])))
        return self

    @classmethod
    def zero(cls, d: int, degree: int) -> "MultiForm":
        return cls(d, degree)

    @classmethod
    def one(cls, d: int) -> "MultiForm":
        return cls(d, 0, {(0,) * d: 1})

    @classmethod
    def linear(cls, coords: Sequence) -> "MultiForm":
        """The linear form sum_i coords[i] * x_i attached to a point."""
        d = len(coords)
        return cls(d, 1, {tuple(int(i == j) for j in range(d)): c for i, c in enumerate(coords)})

    @classmethod
    def variable(cls, d: int, i: int) -> "MultiForm":
        return cls.linear([int(i == j) for j in range(d)])

    def coefficient(self, exp) -> Fraction:
        return dict(self.terms).get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiForm):
            return NotImplemented
        return (self.d, self.degree, self.terms) == (other.d, other.degree, other.terms)

    def __hash__(self):
        return hash((self.d, self.degree, self.terms))

    def __repr__(self):
        return f"MultiForm({self.d}, {self.degree}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = _var_names(self.d)
        parts = []
        for exp, c in self.terms:
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def _check(self, other: "MultiForm", same_degree: bool = False) -> None:
        if self.d != other.d:
            raise ValueError(f"variable-count mismatch: {self.d} vs {other.d}")
        if same_degree and self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "MultiForm") -> "MultiForm":
        self._check(other, same_degree=True)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc[e] + c if e in acc else c
        return MultiForm._trusted(self.d, self.degree, acc)

    def __neg__(self) -> "MultiForm":
        return MultiForm._trusted(self.d, self.degree, {e: -c for e, c in self.terms})

    def __sub__(self, other: "MultiForm") -> "MultiForm":
        return self + (-other)

    def scale(self, c) -> "MultiForm":
        c = to_rational(c)
        return MultiForm._trusted(self.d, self.degree, {e: c * x for e, x in self.terms})

    def __mul__(self, other):
        if isinstance(other, MultiForm):
            return mf_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "MultiForm":
        result = MultiForm.one(self.d)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, v: Sequence) -> Fraction:
        return mf_eval(self, v)


def mf_mul(f: MultiForm, g: MultiForm) -> MultiForm:
    f._check(g)
    acc: dict = {}
    for e1, c1 in f.terms:
        for e2, c2 in g.terms:
            e = tuple(a + b for a, b in zip(e1, e2))
            acc[e] = acc[e] + c1 * c2 if e in acc else c1 * c2
    return MultiForm._trusted(f.d, f.degree + g.degree, acc)


def mf_eval(f: MultiForm, v: Sequence) -> Fraction:
    if len(v) != f.d:
        raise ValueError(f"point has {len(v)} coordinates, form has {f.d} variables")
    v = [to_rational(x) for x in v]
    total = Fraction(0)
    for exp, c in f.terms:
        term = c
        for x, e in zip(v, exp):
            if e:
                term *= x ** e
        total += term
    return total


def mf_substitute(f: MultiForm, h) -> MultiForm:
    """The form x -> f(h x)."""
    if not isinstance(h, Matrix):
        h = Matrix(h)
    if h.n != f.d:
        raise ValueError(f"substitution matrix has size {h.n}, form has {f.d} variables")
    images = [MultiForm.linear(h.rows[i]) for i in range(f.d)]
    result = MultiForm.zero(f.d, f.degree)
    for exp, c in f.terms:
        term = MultiForm.one(f.d).scale(c)
        for img, e in zip(images, exp):
            for _ in range(e):
                term = term * img
        result = result + term
    return result


def restrict_variables(f: MultiForm, keep: Sequence[int]) -> MultiForm:
    """Set every variable outside ``keep`` to zero; the result lives in len(keep) variables."""
    keep = list(keep)
    drop = [i for i in range(f.d) if i not in keep]
    terms = [(tuple(exp[i] for i in keep), c) for exp, c in f.terms
             if all(exp[i] == 0 for i in drop)]
    return MultiForm(len(keep), f.degree, terms)


class BasePoint:
    """A point (c_1, ..., c_n) of the Hitchin base; c_i has degree i."""

    __slots__ = ("n", "d", "forms")

    def __init__(self, d: int, forms: Sequence[MultiForm]):
        forms = tuple(forms)
        for i, c in enumerate(forms, start=1):
            if not isinstance(c, MultiForm):
                raise TypeError("base point entries must be MultiForm")
            if c.d != d:
                raise ValueError(f"c_{i} has {c.d} variables, expected {d}")
            if c.degree != i:
                raise ValueError(f"c_{i} has degree {c.degree}, expected {i}")
        self.n = len(forms)
        self.d = d
        self.forms = forms

    def __getitem__(self, i: int) -> MultiForm:
        """1-based access: ``b[i]`` is c_i, and ``b[0]`` is the constant 1."""
        if i == 0:
            return MultiForm.one(self.d)
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.forms[i - 1]

    def __eq__(self, other):
        if not isinstance(other, BasePoint):
            return NotImplemented
        return (self.d, self.forms) == (other.d, other.forms)

    def __hash__(self):
        return hash((self.d, self.forms))

    def __repr__(self):
        return f"BasePoint(d={self.d}, [{', '.join(str(c) for c in self.forms)}])"

    def char_poly_at(self, v: Sequence) -> list[Fraction]:
        """Coefficients (low degree first) of u^n - c_1(v) u^{n-1} + ... + (-1)^n c_n(v)."""
        coeffs = [Fraction(0)] * (self.n + 1)
        coeffs[self.n] = Fraction(1)
        for i, c in enumerate(self.forms, start=1):
            coeffs[self.n - i] = (-1) ** i * mf_eval(c, v)
        return coeffs


def elementary_symmetric_forms(linear_forms: Sequence[MultiForm],
                               multiplicities: Sequence[int] | None = None,
                               d: int | None = None) -> BasePoint:
    """(e_1, ..., e_n) of the multiset of linear forms.

    ``d`` is only needed when the list is empty.
    """
    if multiplicities is None:
        multiplicities = [1] * len(linear_forms)
    if len(multiplicities) != len(linear_forms):
        raise ValueError("one multiplicity per form")
    if linear_forms:
        d = linear_forms[0].d
    elif d is None:
        raise ValueError("cannot infer the number of variables from an empty list")
    forms: list[MultiForm] = []
    for ell, m in zip(linear_forms, multiplicities):
        if ell.degree != 1:
            raise ValueError(f"expected a linear form, got degree {ell.degree}")
        if ell.d != d:
            raise ValueError("all forms must share the same variables")
        if m < 1:
            raise ValueError("multiplicities must be positive")
        for _ in range(m):
            forms = _attach_linear(forms, ell)
    return BasePoint(d, forms)


def _attach_linear(forms: list[MultiForm], ell: MultiForm) -> list[MultiForm]:
    # c_i = c'_i + c'_{i-1} * ell, with c'_0 = 1 and c'_n = 0.
    n = len(forms) + 1
    prev = [MultiForm.one(ell.d)] + list(forms)
    out = []
    for i in range(1, n + 1):
        shifted = prev[i - 1] * ell
        out.append(shifted + prev[i] if i < n else shifted)
    return out


def newton_power_sums(b: BasePoint) -> list[MultiForm]:
    """Power sums p_1..p_n from the elementary forms via Newton's identities."""
    p: list[MultiForm] = []
    for k in range(1, b.n + 1):
        acc = b[k].scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + (b[i] * p[k - i - 1]).scale((-1) ** (i - 1))
        p.append(acc)
    return p


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def quadratic_matrix(q: MultiForm) -> Matrix:
    """Symmetric matrix S with q(x) = x^T S x."""
    if q.degree != 2:
        raise ValueError("expected a quadratic form")
    d = q.d
    s = [[Fraction(0)] * d for _ in range(d)]
    for exp, c in q.terms:
        idx = [i for i, e in enumerate(exp) for _ in range(e)]
        i, j = idx
        if i == j:
            s[i][i] += c
        else:
            s[i][j] += c / 2
            s[j][i] += c / 2
    return Matrix(s)


def rank_one_quadratic_test(q: MultiForm) -> tuple[bool, MultiForm | None]:
    """Decide whether ``q`` is the square of a linear form over the algebraic closure.

    Returns ``(is_square, u)``; ``u`` is a rational linear form with u^2 == q
    when one exists (first nonzero coefficient positive), else ``None``.
    """
    s = quadratic_matrix(q)
    nonzero = rref(s.rows)
    if len(nonzero) > 1:
        return False, None
    if not nonzero:
        return True, MultiForm.zero(q.d, 1)
    i = next(k for k in range(q.d) if s[k, k] != 0)
    root = _rational_sqrt(s[i, i])
    if root is None:
        return True, None
    u = MultiForm.linear([s[i, j] / root for j in range(q.d)])
    assert u * u == q
    return True, u
