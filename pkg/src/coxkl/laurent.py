"""Sparse integer Laurent polynomials in one variable ``v``.

>>> p = LaurentPoly({-3: 1, -1: 2})
>>> str(p)
'v^-3 + 2*v^-1'
>>> LaurentPoly.parse(str(p)) == p
True
>>> str((V + V.inv()) * (V - V.inv()))
'-v^-2 + v^2'
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = ["LaurentPoly", "V", "ONE", "ZERO"]


class LaurentPoly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                if a:
                    c[int(e)] = int(a)
        self._c = c

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = c
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, a: int) -> "LaurentPoly":
        return cls({0: a})

    @classmethod
    def from_q_poly(cls, coeffs: Iterable[int], shift: int = 0) -> "LaurentPoly":
        """``v^shift * P(v^2)`` for ``P = sum coeffs[i] q^i``."""
        return cls({shift + 2 * i: a for i, a in enumerate(coeffs)})

    # inspection ---------------------------------------------------------

    def coefficient(self, e: int) -> int:
        return self._c.get(e, 0)

    __getitem__ = coefficient

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    @property
    def degree(self) -> int | None:
        """Largest exponent, or None for the zero polynomial."""
        return max(self._c) if self._c else None

    @property
    def valuation(self) -> int | None:
        return min(self._c) if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly({0: x})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, a in other._c.items():
            b = c.get(e, 0) + a
            if b:
                c[e] = b
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return LaurentPoly({e: a for e, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            return self.inv() ** (-n)
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def inv(self) -> "LaurentPoly":
        """Inverse of a monomial ``±v^e``."""
        if len(self._c) != 1:
            raise ValueError("only monomials have Laurent inverses")
        (e, a), = self._c.items()
        if a not in (1, -1):
            raise ValueError("only unit monomials are invertible")
        return LaurentPoly({-e: a})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v^k``."""
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The ring involution ``v -> v^-1``."""
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    # text and JSON ------------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i, (e, a) in enumerate(self.terms()):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if e == 0:
                body = str(mag)
            else:
                mono = "v" if e == 1 else f"v^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if i == 0:
                parts.append(("-" if a < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> dict:
        return {str(e): a for e, a in self.terms()}

    @classmethod
    def from_json(cls, d: Mapping) -> "LaurentPoly":
        return cls({int(e): int(a) for e, a in d.items()})

    _TERM = re.compile(r"^(\d+)?(?:\*?(v)(?:\^(-?\d+))?)?$")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        # protect negative exponents, then split before each sign
        tokens = [t.replace("~", "-") for t in re.findall(r"[+-][^+-]*", s.replace("^-", "^~"))]
        c: dict[int, int] = {}
        for tok in tokens:
            sign = -1 if tok[0] == "-" else 1
            body = tok[1:]
            m = cls._TERM.match(body)
            if not body or m is None or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"cannot parse Laurent polynomial term {tok!r}")
            coeff = int(m.group(1)) if m.group(1) else 1
            if m.group(2):
                exp = int(m.group(3)) if m.group(3) is not None else 1
            else:
                exp = 0
            c[exp] = c.get(exp, 0) + sign * coeff
        return cls(c)


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
V = LaurentPoly({1: 1})
