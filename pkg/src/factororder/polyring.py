"""Sparse integer polynomials in x, y, z truncated in the y-degree.

Every series in this package is graded by letter sum (the y-degree), and
since letters are positive the x-degree never exceeds the y-degree, so a
single cap on y is enough to keep everything finite.
"""

from __future__ import annotations

from collections import defaultdict
from math import comb
from typing import Iterable, Mapping

Exponent = tuple[int, int, int]


class CapMismatchError(ValueError):
    pass


class TriPoly:
    """Immutable polynomial ``sum coef * x^a y^b z^c`` with all b <= y_cap."""

    __slots__ = ("_terms", "y_cap")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = (), y_cap: int = 0):
        if y_cap < 0:
            raise ValueError("y_cap must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = defaultdict(int)
        for (a, b, c), coef in items:
            if a < 0 or b < 0 or c < 0:
                raise ValueError(f"negative exponent in {(a, b, c)}")
            if b <= y_cap:
                acc[(a, b, c)] += coef
        self._terms = {e: c for e, c in acc.items() if c}
        self.y_cap = y_cap

    @classmethod
    def _raw(cls, terms: dict[Exponent, int], y_cap: int) -> "TriPoly":
        # trusted constructor: terms already clean and within the cap
        p = cls.__new__(cls)
        p._terms = terms
        p.y_cap = y_cap
        return p

    @classmethod
    def monomial(cls, a: int, b: int, c: int, y_cap: int, coef: int = 1) -> "TriPoly":
        return cls({(a, b, c): coef}, y_cap)

    @classmethod
    def constant(cls, value: int, y_cap: int) -> "TriPoly":
        return cls({(0, 0, 0): value}, y_cap)

    @classmethod
    def zero(cls, y_cap: int) -> "TriPoly":
        return cls._raw({}, y_cap)

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, a: int, b: int, c: int) -> int:
        return self._terms.get((a, b, c), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, TriPoly):
            return self.y_cap == other.y_cap and self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({(0, 0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.y_cap, frozenset(self._terms.items())))

    def _check(self, other: "TriPoly") -> None:
        if self.y_cap != other.y_cap:
            raise CapMismatchError(f"y_cap mismatch: {self.y_cap} vs {other.y_cap}")

    def _coerce(self, other) -> "TriPoly":
        if isinstance(other, int):
            return TriPoly.constant(other, self.y_cap)
        if isinstance(other, TriPoly):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other) -> "TriPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return TriPoly._raw(out, self.y_cap)

    __radd__ = __add__

    def __neg__(self) -> "TriPoly":
        return TriPoly._raw({e: -c for e, c in self._terms.items()}, self.y_cap)

    def __sub__(self, other) -> "TriPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "TriPoly":
        return (-self) + other

    def __mul__(self, other) -> "TriPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        cap = self.y_cap
        out: dict[Exponent, int] = defaultdict(int)
        for (a1, b1, c1), k1 in self._terms.items():
            for (a2, b2, c2), k2 in other._terms.items():
                b = b1 + b2
                if b <= cap:
                    out[(a1 + a2, b, c1 + c2)] += k1 * k2
        return TriPoly._raw({e: c for e, c in out.items() if c}, cap)

    __rmul__ = __mul__

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms ordered by (y-degree, x-degree, z-degree)."""
        return sorted(self._terms.items(), key=lambda t: (t[0][1], t[0][0], t[0][2]))

    def to_json(self) -> list[list[int]]:
        return [[a, b, c, coef] for (a, b, c), coef in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]], y_cap: int) -> "TriPoly":
        return cls((((a, b, c), coef) for a, b, c, coef in data), y_cap)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{coef}*x^{a}*y^{b}*z^{c}" for (a, b, c), coef in self.sorted_terms())

    def __repr__(self) -> str:
        return f"TriPoly({self}, y_cap={self.y_cap})"

    def with_cap(self, y_cap: int) -> "TriPoly":
        """Re-truncate (or widen the declared cap of) this polynomial."""
        return TriPoly(self._terms, y_cap)

    def max_degree(self, var: str) -> int:
        i = "xyz".index(var)
        return max((e[i] for e in self._terms), default=-1)


def add(p: TriPoly, q: TriPoly) -> TriPoly:
    p._check(q)
    return p + q


def mul(p: TriPoly, q: TriPoly) -> TriPoly:
    p._check(q)
    return p * q


def negate(p: TriPoly) -> TriPoly:
    return -p


def geom_substitute_x(p: TriPoly) -> TriPoly:
    """Substitute x -> x/(1-y): multiply each x^a term by (1-y)^(-a)."""
    cap = p.y_cap
    out: dict[Exponent, int] = defaultdict(int)
    for (a, b, c), coef in p.items():
        if a == 0:
            out[(a, b, c)] += coef
            continue
        for i in range(cap - b + 1):
            out[(a, b + i, c)] += coef * comb(a + i - 1, i)
    return TriPoly._raw({e: c for e, c in out.items() if c}, cap)


def reciprocal(p: TriPoly) -> TriPoly:
    """Series inverse of ``p`` up to the y cap.

    Needs a constant term of +1 or -1 and no other term of y-degree 0;
    the inverse is then built one y-degree at a time.
    """
    c0 = p.coefficient(0, 0, 0)
    if c0 not in (1, -1):
        raise ValueError(f"constant term must be +1 or -1, got {c0}")
    by_degree: dict[int, list[tuple[int, int, int]]] = defaultdict(list)
    for (a, b, c), coef in p.items():
        if (a, b, c) == (0, 0, 0):
            continue
        if b == 0:
            raise ValueError(f"non-constant term x^{a}*z^{c} has y-degree 0; cannot invert by y-grading")
        by_degree[b].append((a, c, coef))
    cap = p.y_cap
    # result[b] maps (a, c) -> coefficient of x^a y^b z^c
    result: list[dict[tuple[int, int], int]] = [{(0, 0): c0}]
    for b in range(1, cap + 1):
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for j, terms in by_degree.items():
            if j > b:
                continue
            prev = result[b - j]
            for a1, c1, k1 in terms:
                for (a2, c2), k2 in prev.items():
                    acc[(a1 + a2, c1 + c2)] += k1 * k2
        # c0 * r_b = -sum_{j>=1} p_j r_{b-j}, and 1/c0 == c0
        result.append({ac: -c0 * v for ac, v in acc.items() if v})
    terms = {(a, b, c): v for b, level in enumerate(result) for (a, c), v in level.items()}
    return TriPoly._raw(terms, cap)


def substitute_z_shift(p: TriPoly, delta: int) -> TriPoly:
    """Substitute z -> z + delta, expanding binomially."""
    if delta not in (-1, 1):
        raise ValueError(f"delta must be -1 or +1, got {delta}")
    out: dict[Exponent, int] = defaultdict(int)
    for (a, b, c), coef in p.items():
        for j in range(c + 1):
            out[(a, b, j)] += coef * comb(c, j) * delta ** (c - j)
    return TriPoly._raw({e: c for e, c in out.items() if c}, p.y_cap)


def evaluate_z(p: TriPoly, value: int) -> TriPoly:
    """Set z to an integer value; the result has z-degree 0."""
    out: dict[Exponent, int] = defaultdict(int)
    for (a, b, c), coef in p.items():
        out[(a, b, 0)] += coef * value**c
    return TriPoly._raw({e: c for e, c in out.items() if c}, p.y_cap)
