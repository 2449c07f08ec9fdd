"""Exact scalar and polynomial arithmetic over the rationals.

Coefficients are ``int`` or :class:`fractions.Fraction`; integral fractions are
collapsed back to ``int`` so that the common case (signs, small integers) stays
on the fast path.
"""
from __future__ import annotations

from dataclasses import dataclass
import math
import operator
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

Exponents = tuple[int, ...]


def as_rational(c) -> int | Fraction:
    """Coerce ``c`` to an exact rational, collapsing integral fractions."""
    if isinstance(c, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_rational(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_rational(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def format_rational(c) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _scaled(terms) -> tuple[int, list]:
    """(d, [(exp, d*c)]) with d the lcm of the coefficient denominators."""
    d = 1
    for c in terms.values():
        if type(c) is not int:
            d = d * c.denominator // math.gcd(d, c.denominator)
    if d == 1:
        return 1, list(terms.items())
    return d, [(e, c * d if type(c) is int else c.numerator * (d // c.denominator)) for e, c in terms.items()]


def _reduce(num: int, den: int) -> int | Fraction:
    f = Fraction(num, den)
    return f.numerator if f.denominator == 1 else f


class LaurentPoly:
    """Sparse multivariate Laurent polynomial with rational coefficients.

    Values are immutable. Zero coefficients are never stored and every
    exponent vector has length ``nvars``. Polynomials compare equal to
    plain rationals when they are constants.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponents, object] | Iterable = ()):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponents, int | Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent vector {exp} does not have length {nvars}")
            c = as_rational(c)
            if exp in clean:
                c = as_rational(clean[exp] + c)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, nvars: int, c) -> LaurentPoly:
        c = as_rational(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> LaurentPoly:
        """The monomial ``z_i ** power`` (``i`` is 1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable z{i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i - 1] = power
        return cls._raw(nvars, {tuple(exp): 1})

    @classmethod
    def monomial(cls, exp: Exponents, coef=1) -> LaurentPoly:
        coef = as_rational(coef)
        exp = tuple(exp)
        return cls._raw(len(exp), {exp: coef} if coef else {})

    @property
    def terms(self) -> dict[Exponents, int | Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms in lexicographic order of exponent vectors."""
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, 0)

    def min_exponents(self) -> Exponents:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms))

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return LaurentPoly.const(self.nvars, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = as_rational(s)
            else:
                del out[exp]
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
        else:
            try:
                c = as_rational(other)
            except TypeError:
                return NotImplemented
            if not c:
                return LaurentPoly._raw(self.nvars, {})
            return LaurentPoly._raw(self.nvars, {e: as_rational(v * c) for e, v in self._terms.items()})
        a, b = self._terms, other._terms
        if not a or not b:
            return LaurentPoly._raw(self.nvars, {})
        if len(a) == 1 and len(b) == 1:
            (ea, ca), = a.items()
            (eb, cb), = b.items()
            return LaurentPoly._raw(self.nvars, {tuple(x + y for x, y in zip(ea, eb)): as_rational(ca * cb)})
        # integer numerators over a common denominator keep the inner loop off Fraction
        da, na = _scaled(a)
        db, nb = _scaled(b)
        out: dict[Exponents, int] = {}
        for ea, ca in na:
            for eb, cb in nb:
                e = tuple(map(operator.add, ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        den = da * db
        if den == 1:
            return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if c})
        return LaurentPoly._raw(self.nvars, {e: _reduce(c, den) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("use unit_inverse for negative powers")
        result = LaurentPoly.const(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self._terms
        return self._terms == {(0,) * self.nvars: c}

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def substitute(self, values) -> int | Fraction:
        """Evaluate at rational ``values`` (one per variable)."""
        values = [as_rational(v) for v in values]
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = Fraction(c)
            for v, e in zip(values, exp):
                if e < 0 and v == 0:
                    raise ZeroDivisionError("negative power of zero")
                term *= Fraction(v) ** e
            total += term
        return as_rational(total)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {format_poly(self)!r})"


def _format_monomial(exp: Exponents, names) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: LaurentPoly, names=None) -> str:
    """Canonical text: lexicographic terms, ``coef*z1^2*z3`` with coefficient always printed."""
    if names is None:
        names = [f"z{i}" for i in range(1, p.nvars + 1)]
    items = p.items()
    if not items:
        return "0"
    out = []
    for k, (exp, c) in enumerate(items):
        mono = _format_monomial(exp, names)
        mag = format_rational(abs(c))
        body = f"{mag}*{mono}" if mono else mag
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def poly_arith(op: str, p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if p.nvars != q.nvars:
        raise ValueError(f"variable-count mismatch: {p.nvars} vs {q.nvars}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    raise ValueError(f"unknown operation {op!r}")


def poly_dot(nvars: int, pairs: Iterable[tuple[LaurentPoly, LaurentPoly]]) -> LaurentPoly:
    """Sum of products ``p*q`` accumulated on integers and reduced once."""
    scaled = []
    den = 1
    for p, q in pairs:
        if p.nvars != nvars or q.nvars != nvars:
            raise ValueError("variable-count mismatch in poly_dot")
        dp, np_ = _scaled(p._terms)
        dq, nq = _scaled(q._terms)
        if np_ and nq:
            scaled.append((dp * dq, np_, nq))
            den = den * dp * dq // math.gcd(den, dp * dq)
    out: dict[Exponents, int] = {}
    for d, np_, nq in scaled:
        f = den // d
        for ea, ca in np_:
            ca *= f
            for eb, cb in nq:
                e = tuple(map(operator.add, ea, eb))
                out[e] = out.get(e, 0) + ca * cb
    return LaurentPoly._raw(nvars, {e: _reduce(c, den) for e, c in out.items() if c})


def poly_unit(p: LaurentPoly, mode: str) -> LaurentPoly | None:
    """Inverse of ``p`` if it is a unit, else ``None``.

    Units of ``Q[z]`` are the nonzero constants; units of ``Q[z^{+-1}]`` are
    the nonzero monomials.
    """
    if mode not in ("poly", "torus"):
        raise ValueError(f"unknown mode {mode!r}")
    if len(p) != 1:
        return None
    (exp, c), = p._terms.items()
    if mode == "poly" and any(exp):
        return None
    return LaurentPoly._raw(p.nvars, {tuple(-e for e in exp): as_rational(Fraction(1) / c)})


class RationalFunction:
    """A quotient ``num/den`` of Laurent polynomials, stored unreduced.

    Equality is decided by cross-multiplication. Deliberately unhashable.
    """

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.const(num.nvars, 1)
        if num.nvars != den.nvars:
            raise ValueError("variable-count mismatch")
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @property
    def nvars(self):
        return self.num.nvars

    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
        return RationalFunction(LaurentPoly.const(self.nvars, other))

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if not self.num:
            raise ZeroDivisionError("zero has no inverse")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return frac_eq(self, o)

    def display(self) -> tuple[LaurentPoly, LaurentPoly]:
        """Num/den with the common monomial factor and denominator content divided out."""
        shift = tuple(min(a, b) for a, b in zip(self.num.min_exponents(), self.den.min_exponents()))
        m = LaurentPoly.monomial(tuple(-s for s in shift))
        num, den = self.num * m, self.den * m
        scale = Fraction(1) / den.items()[-1][1]
        return num * scale, den * scale

    def __str__(self):
        num, den = self.display()
        if den == 1:
            return format_poly(num)
        return f"({format_poly(num)})/({format_poly(den)})"

    def __repr__(self):
        return f"RationalFunction({format_poly(self.num)!r}, {format_poly(self.den)!r})"


def frac_eq(a: RationalFunction, b: RationalFunction) -> bool:
    return a.num * b.den == b.num * a.den


@dataclass(frozen=True)
class BaseRing:
    """Descriptor for the scalar ring of a Cayley-Dickson tower.

    ``kind`` is one of ``rationals``, ``polynomial``, ``laurent`` or
    ``fraction-field``; the last three carry ``nvars`` variables.
    """

    kind: str = "rationals"
    nvars: int = 0

    KINDS = ("rationals", "polynomial", "laurent", "fraction-field")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown base ring {self.kind!r}")
        if self.kind == "rationals" and self.nvars:
            raise ValueError("the rationals carry no variables")

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def var(self, i: int):
        if self.kind == "rationals":
            raise ValueError("the rationals carry no variables")
        v = LaurentPoly.var(self.nvars, i)
        return RationalFunction(v) if self.kind == "fraction-field" else v

    def coerce(self, x):
        if self.kind == "rationals":
            if isinstance(x, (LaurentPoly, RationalFunction)):
                raise TypeError("cannot coerce a polynomial into the rationals")
            return as_rational(x)
        if self.kind == "fraction-field":
            if isinstance(x, RationalFunction):
                return x
            if isinstance(x, LaurentPoly):
                return RationalFunction(x)
            return RationalFunction(LaurentPoly.const(self.nvars, x))
        if isinstance(x, LaurentPoly):
            if x.nvars != self.nvars:
                raise ValueError("variable-count mismatch")
            if self.kind == "polynomial" and any(e < 0 for exp in x._terms for e in exp):
                raise ValueError("negative exponent in polynomial ring")
            return x
        return LaurentPoly.const(self.nvars, x)

    def unit_inverse(self, x):
        """Inverse of ``x`` in this ring, or ``None`` when ``x`` is not a unit."""
        if self.kind == "rationals":
            return as_rational(Fraction(1) / x) if x else None
        if self.kind == "fraction-field":
            return x.inverse() if x else None
        return poly_unit(x, "poly" if self.kind == "polynomial" else "torus")

    def format(self, x) -> str:
        if self.kind == "rationals":
            return format_rational(x)
        return str(x)

    def to_json(self):
        return {"kind": self.kind, "nvars": self.nvars}
