"""Exact bivariate Laurent polynomials in z, w and truncated power series.

Coefficients are Python ints (arbitrary precision). Values are immutable;
every operation returns a new object in canonical form (no stored zeros,
terms ordered lexicographically by exponent pair).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Mapping, Sequence

Exp = tuple[int, int]


class LaurentPoly2:
    """Element of Z[z, 1/z, w, 1/w]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, int] | int | None = None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {(0, 0): terms} if terms else {}
        clean = {}
        for (ez, ew), c in sorted(terms.items()):
            if not isinstance(c, int):
                raise TypeError(f"coefficient must be int, got {type(c).__name__}")
            if c:
                clean[(int(ez), int(ew))] = c
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def monomial(cls, coeff: int = 1, ez: int = 0, ew: int = 0) -> LaurentPoly2:
        return cls({(ez, ew): coeff})

    @classmethod
    def z(cls, power: int = 1) -> LaurentPoly2:
        return cls({(power, 0): 1})

    @classmethod
    def w(cls, power: int = 1) -> LaurentPoly2:
        return cls({(0, power): 1})

    @classmethod
    def _coerce(cls, other: Any) -> LaurentPoly2 | None:
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, int):
            return cls(other)
        return None

    # -- container protocol ------------------------------------------------

    @property
    def terms(self) -> dict[Exp, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, ez: int, ew: int = 0) -> int:
        return self._terms.get((ez, ew), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True for +-z^a w^b, the only invertible elements of the ring."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def leading(self) -> tuple[Exp, int]:
        e = max(self._terms)
        return e, self._terms[e]

    def trailing(self) -> tuple[Exp, int]:
        e = min(self._terms)
        return e, self._terms[e]

    def z_part(self) -> LaurentPoly2:
        """Terms with w-exponent zero."""
        return LaurentPoly2({e: c for e, c in self._terms.items() if e[1] == 0})

    def w_degrees(self) -> set[int]:
        return {ew for _, ew in self._terms}

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentPoly2()
        out: dict[Exp, int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly2(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> LaurentPoly2:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.to_text()} is not a unit of the Laurent ring")
        (ez, ew), c = next(iter(self._terms.items()))
        return LaurentPoly2({(-ez, -ew): c})

    def exact_div(self, divisor: LaurentPoly2 | int) -> LaurentPoly2:
        """Quotient of an exact division; raises ArithmeticError if inexact.

        Long division against the lexicographic leading term. Because the
        ring has no lower exponent bound, termination is enforced by
        comparing candidate quotient terms with the lowest term the quotient
        could possibly have.
        """
        d = self._coerce(divisor)
        if d is None:
            raise TypeError("divisor must be LaurentPoly2 or int")
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly2()
        if d.is_unit():
            return self * d.inverse()
        lead_e, lead_c = d.leading()
        low_bound = _esub(self.trailing()[0], d.trailing()[0])
        rem = dict(self._terms)
        quot: dict[Exp, int] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = _esub(e, lead_e)
            if qe < low_bound:
                raise ArithmeticError("inexact Laurent division")
            qc, r = divmod(c, lead_c)
            if r:
                raise ArithmeticError("inexact Laurent division (coefficient)")
            quot[qe] = qc
            for de, dc in d._terms.items():
                key = (qe[0] + de[0], qe[1] + de[1])
                v = rem.get(key, 0) - qc * dc
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return LaurentPoly2(quot)

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- evaluation / substitution ---------------------------------------

    def eval(self, z0, w0=1):
        """Substitute numeric values for z and w.

        Integer and Fraction inputs give an exact Fraction; complex, float or
        mpmath inputs are evaluated in their own arithmetic.
        """
        if z0 == 0 or w0 == 0:
            raise ValueError("Laurent polynomial cannot be evaluated at z=0 or w=0")
        if isinstance(z0, Rational):
            z0 = Fraction(z0)
        if isinstance(w0, Rational):
            w0 = Fraction(w0)
        total = 0
        for (ez, ew), c in self._terms.items():
            total += c * z0**ez * w0**ew
        return total

    __call__ = eval

    def substitute_signs(self, sz: int, sw: int) -> LaurentPoly2:
        """The polynomial P(sz*z, sw*w) for sz, sw in {+1, -1}."""
        return LaurentPoly2(
            {(ez, ew): c * sz ** (ez % 2) * sw ** (ew % 2) for (ez, ew), c in self._terms.items()}
        )

    def shift(self, dz: int = 0, dw: int = 0) -> LaurentPoly2:
        return LaurentPoly2({(ez + dz, ew + dw): c for (ez, ew), c in self._terms.items()})

    # -- text / json -----------------------------------------------------

    def to_text(self) -> str:
        """Canonical parseable form, e.g. ``-1*z^-1 + 4 + -1*z^1``."""
        if not self._terms:
            return "0"
        parts = []
        for (ez, ew), c in self._terms.items():
            factors = []
            if ez:
                factors.append(f"z^{ez}")
            if ew:
                factors.append(f"w^{ew}")
            parts.append("*".join([str(c)] + factors) if factors else str(c))
        return " + ".join(parts)

    def pretty(self) -> str:
        """Human form: z-part by ascending power, then w-terms by descending w."""
        if not self._terms:
            return "0"
        zpart = sorted(e for e in self._terms if e[1] == 0)
        rest = sorted((e for e in self._terms if e[1] != 0), key=lambda e: (-e[1], e[0]))
        out = ""
        for i, e in enumerate(zpart + rest):
            c = self._terms[e]
            mono = _pretty_monomial(*e)
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}{mono}" if mono else str(mag))
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __str__(self):
        return self.pretty()

    def __repr__(self):
        return f"LaurentPoly2({self.to_text()!r})"

    @classmethod
    def parse(cls, text: str) -> LaurentPoly2:
        """Parse either the canonical or the pretty text form."""
        s = text.replace(" ", "").replace("**", "^")
        if not s or s == "0":
            return cls()
        # normalise binary minus into "+-" so terms split cleanly on "+"
        s = re.sub(r"(?<=[^+\-*^])-", "+-", s)
        out: dict[Exp, int] = {}
        for tok in s.split("+"):
            if not tok:
                continue
            m = _TERM_RE.fullmatch(tok)
            if m is None:
                raise ValueError(f"cannot parse term {tok!r} in {text!r}")
            sign = -1 if m.group("sign") == "-" else 1
            coeff = int(m.group("coeff")) if m.group("coeff") else 1
            ez = ew = 0
            for var, power in _FACTOR_RE.findall(m.group("mono") or ""):
                p = int(power) if power else 1
                if var == "z":
                    ez += p
                else:
                    ew += p
            if not m.group("coeff") and not m.group("mono"):
                raise ValueError(f"empty term in {text!r}")
            key = (ez, ew)
            out[key] = out.get(key, 0) + sign * coeff
        return cls(out)

    def to_json_obj(self) -> dict:
        return {"terms": [{"ez": ez, "ew": ew, "c": str(c)} for (ez, ew), c in self._terms.items()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> LaurentPoly2:
        out: dict[Exp, int] = {}
        for t in obj["terms"]:
            key = (int(t["ez"]), int(t["ew"]))
            out[key] = out.get(key, 0) + int(t["c"])
        return cls(out)

    @classmethod
    def from_json(cls, text: str) -> LaurentPoly2:
        return cls.from_json_obj(json.loads(text))


_TERM_RE = re.compile(
    r"(?P<sign>-)?(?P<coeff>\d+)?\*?(?P<mono>(?:[zw](?:\^-?\d+)?\*?)*)"
)
_FACTOR_RE = re.compile(r"([zw])(?:\^(-?\d+))?")


def _esub(a: Exp, b: Exp) -> Exp:
    return (a[0] - b[0], a[1] - b[1])


def _pretty_monomial(ez: int, ew: int) -> str:
    parts = []
    for var, e in (("z", ez), ("w", ew)):
        if e == 1:
            parts.append(var)
        elif e:
            parts.append(f"{var}^{e}")
    return "*".join(parts)


Z = LaurentPoly2.z()
W = LaurentPoly2.w()
ONE = LaurentPoly2(1)


def poly_add(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    return a + b


def poly_mul(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    return a * b


def poly_eval(p: LaurentPoly2, z0, w0=1):
    return p.eval(z0, w0)


# ---------------------------------------------------------------------------
# truncated univariate power series


def _invert(x):
    if isinstance(x, LaurentPoly2):
        return x.inverse()
    if isinstance(x, int):
        if x == 0:
            raise ZeroDivisionError("zero constant term")
        if x in (1, -1):
            return x  # keeps unit-normalised ring coefficients integral
        return Fraction(1, x)
    if x == 0:
        raise ZeroDivisionError("zero constant term")
    return 1 / x


@dataclass(frozen=True)
class PowerSeries1:
    """Coefficients c_0..c_order of a series in one variable, known exactly up to ``order``."""

    coeffs: tuple
    order: int
    var: str = "s"

    def __post_init__(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError("need exactly order+1 coefficients")

    def __getitem__(self, k: int):
        if k < 0:
            raise IndexError(k)
        if k > self.order:
            raise IndexError(f"coefficient {k} lies beyond truncation order {self.order}")
        return self.coeffs[k]

    def __len__(self):
        return self.order + 1

    def __add__(self, other: PowerSeries1) -> PowerSeries1:
        order = min(self.order, other.order)
        return PowerSeries1(
            tuple(self.coeffs[k] + other.coeffs[k] for k in range(order + 1)), order, self.var
        )

    def __sub__(self, other: PowerSeries1) -> PowerSeries1:
        order = min(self.order, other.order)
        return PowerSeries1(
            tuple(self.coeffs[k] - other.coeffs[k] for k in range(order + 1)), order, self.var
        )

    def __mul__(self, other) -> PowerSeries1:
        if not isinstance(other, PowerSeries1):
            return PowerSeries1(tuple(c * other for c in self.coeffs), self.order, self.var)
        order = min(self.order, other.order)
        out = []
        for k in range(order + 1):
            acc = 0
            for j in range(k + 1):
                acc = acc + self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return PowerSeries1(tuple(out), order, self.var)

    @classmethod
    def from_polynomial(cls, coeffs: Sequence, order: int, var: str = "s") -> PowerSeries1:
        c = list(coeffs[: order + 1])
        c += [0] * (order + 1 - len(c))
        return cls(tuple(c), order, var)

    def even_part(self) -> list:
        return [self.coeffs[k] for k in range(0, self.order + 1, 2)]


def series_of_rational(num: Sequence, den: Sequence, order: int, var: str = "s") -> PowerSeries1:
    """Expand num(s)/den(s) to ``order`` with exact coefficient recursion.

    ``num`` and ``den`` are coefficient lists (lowest power first) of any
    commutative ring type: int, Fraction, complex, mpmath, LaurentPoly2.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator constant term must be invertible")
    inv0 = _invert(den[0])
    out: list = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv0)
    return PowerSeries1(tuple(out), order, var)


def poly_times_series(poly: Sequence, series: PowerSeries1) -> PowerSeries1:
    """Multiply a series by a polynomial, keeping the series' truncation order."""
    return series * PowerSeries1.from_polynomial(list(poly), series.order, series.var)
