"""JSON wire formats for the domain objects.

Rationals always travel as strings ("p/q" or "p").  ``parse_*`` functions
raise :class:`InputError` carrying a JSON path to the offending field.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .chow import Polynomial, ZeroCycle
from .commuting import CommutingTuple, MatrixTuple
from .linalg import Matrix
from .multiform import BasePoint, MultiForm

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class InputError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def dump_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(obj, path: str = "$") -> Fraction:
    if isinstance(obj, bool):
        raise InputError(path, "expected a rational, got a boolean")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        m = _RATIONAL_RE.match(obj)
        if m:
            num, den = m.groups()
            if den is not None and int(den) == 0:
                raise InputError(path, "zero denominator")
            return Fraction(int(num), int(den or 1))
    raise InputError(path, f"expected an integer or a 'p/q' string, got {obj!r}")


def _expect(obj, kind, path):
    if kind is int:
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise InputError(path, f"expected an integer, got {obj!r}")
        return obj
    if not isinstance(obj, kind):
        raise InputError(path, f"expected {kind.__name__}, got {type(obj).__name__}")
    return obj


def _field(obj: dict, key: str, path: str):
    _expect(obj, dict, path)
    if key not in obj:
        raise InputError(f"{path}.{key}", "missing field")
    return obj[key]


def parse_vector(obj, path: str = "$", length: int | None = None) -> tuple:
    _expect(obj, list, path)
    if length is not None and len(obj) != length:
        raise InputError(path, f"expected {length} entries, got {len(obj)}")
    return tuple(parse_rational(x, f"{path}[{i}]") for i, x in enumerate(obj))


def parse_exponents(obj, path: str = "$", length: int | None = None) -> tuple:
    _expect(obj, list, path)
    if length is not None and len(obj) != length:
        raise InputError(path, f"expected {length} entries, got {len(obj)}")
    out = []
    for i, e in enumerate(obj):
        _expect(e, int, f"{path}[{i}]")
        if e < 0:
            raise InputError(f"{path}[{i}]", "exponent must be non-negative")
        out.append(e)
    return tuple(out)


def dump_matrix(m: Matrix) -> list:
    return [[dump_rational(x) for x in row] for row in m.rows]


def parse_matrix(obj, path: str = "$", n: int | None = None) -> Matrix:
    _expect(obj, list, path)
    size = len(obj) if n is None else n
    if len(obj) != size or size == 0:
        raise InputError(path, f"expected {size} rows, got {len(obj)}")
    return Matrix([parse_vector(row, f"{path}[{i}]", size) for i, row in enumerate(obj)])


def dump_tuple(t: MatrixTuple) -> dict:
    return {"n": t.n, "d": t.d, "matrices": [dump_matrix(m) for m in t.matrices]}


def parse_tuple(obj, path: str = "$", commuting: bool = False) -> MatrixTuple:
    n = _expect(_field(obj, "n", path), int, f"{path}.n")
    d = _expect(_field(obj, "d", path), int, f"{path}.d")
    if n < 1:
        raise InputError(f"{path}.n", "must be positive")
    if d < 1:
        raise InputError(f"{path}.d", "must be positive")
    mats = _expect(_field(obj, "matrices", path), list, f"{path}.matrices")
    if len(mats) != d:
        raise InputError(f"{path}.matrices", f"expected {d} matrices, got {len(mats)}")
    parsed = [parse_matrix(m, f"{path}.matrices[{i}]", n) for i, m in enumerate(mats)]
    # CommutingTuple raises NotCommutingError, which callers report separately.
    return CommutingTuple(parsed) if commuting else MatrixTuple(parsed)


def dump_multiform(f: MultiForm) -> dict:
    return {"vars": f.d, "degree": f.degree,
            "terms": [{"exp": list(e), "coef": dump_rational(c)} for e, c in f.terms]}


def parse_multiform(obj, path: str = "$", d: int | None = None,
                    degree: int | None = None) -> MultiForm:
    nv = _expect(_field(obj, "vars", path), int, f"{path}.vars")
    deg = _expect(_field(obj, "degree", path), int, f"{path}.degree")
    if nv < 1:
        raise InputError(f"{path}.vars", "must be positive")
    if d is not None and nv != d:
        raise InputError(f"{path}.vars", f"expected {d}, got {nv}")
    if degree is not None and deg != degree:
        raise InputError(f"{path}.degree", f"expected {degree}, got {deg}")
    if deg < 0:
        raise InputError(f"{path}.degree", "must be non-negative")
    terms = _expect(_field(obj, "terms", path), list, f"{path}.terms")
    parsed = []
    for i, term in enumerate(terms):
        tp = f"{path}.terms[{i}]"
        exp = parse_exponents(_field(term, "exp", tp), f"{tp}.exp", nv)
        if sum(exp) != deg:
            raise InputError(f"{tp}.exp", f"exponents sum to {sum(exp)}, expected {deg}")
        parsed.append((exp, parse_rational(_field(term, "coef", tp), f"{tp}.coef")))
    return MultiForm(nv, deg, parsed)


def dump_basepoint(b: BasePoint) -> dict:
    return {"n": b.n, "d": b.d, "forms": [dump_multiform(c) for c in b.forms]}


def parse_basepoint(obj, path: str = "$") -> BasePoint:
    n = _expect(_field(obj, "n", path), int, f"{path}.n")
    d = _expect(_field(obj, "d", path), int, f"{path}.d")
    if n < 0:
        raise InputError(f"{path}.n", "must be non-negative")
    if d < 1:
        raise InputError(f"{path}.d", "must be positive")
    forms = _expect(_field(obj, "forms", path), list, f"{path}.forms")
    if len(forms) != n:
        raise InputError(f"{path}.forms", f"expected {n} forms, got {len(forms)}")
    return BasePoint(d, [parse_multiform(f, f"{path}.forms[{i}]", d, i + 1)
                         for i, f in enumerate(forms)])


def dump_cycle(z: ZeroCycle) -> dict:
    return {"d": z.d, "points": [{"coords": [dump_rational(x) for x in c], "mult": m}
                                 for c, m in z.points]}


def parse_cycle(obj, path: str = "$") -> ZeroCycle:
    d = _expect(_field(obj, "d", path), int, f"{path}.d")
    if d < 1:
        raise InputError(f"{path}.d", "must be positive")
    points = _expect(_field(obj, "points", path), list, f"{path}.points")
    parsed = []
    seen = set()
    for i, p in enumerate(points):
        pp = f"{path}.points[{i}]"
        coords = parse_vector(_field(p, "coords", pp), f"{pp}.coords", d)
        mult = _expect(_field(p, "mult", pp), int, f"{pp}.mult")
        if mult < 1:
            raise InputError(f"{pp}.mult", "must be positive")
        if coords in seen:
            raise InputError(f"{pp}.coords", "duplicate point")
        seen.add(coords)
        parsed.append((coords, mult))
    return ZeroCycle(d, parsed)


def dump_polynomial(p: Polynomial) -> dict:
    return {"vars": p.nvars,
            "terms": [{"exp": list(e), "coef": dump_rational(c)} for e, c in p.terms]}


def parse_polynomial(obj, path: str = "$") -> Polynomial:
    nv = _expect(_field(obj, "vars", path), int, f"{path}.vars")
    if nv < 1:
        raise InputError(f"{path}.vars", "must be positive")
    terms = _expect(_field(obj, "terms", path), list, f"{path}.terms")
    parsed = []
    for i, term in enumerate(terms):
        tp = f"{path}.terms[{i}]"
        parsed.append((parse_exponents(_field(term, "exp", tp), f"{tp}.exp", nv),
                       parse_rational(_field(term, "coef", tp), f"{tp}.coef")))
    return Polynomial(nv, parsed)


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
