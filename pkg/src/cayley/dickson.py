"""Cayley-Dickson towers over an exact commutative base ring.

An element of a ``k``-fold tower is a vector of ``2**k`` base-ring
coefficients indexed by subsets ``S`` of ``{1..k}`` (bit ``i-1`` set iff
``i`` in ``S``). The coefficient at ``S`` multiplies the basis element
``e_S``, the left-nested product of the basic generators ``v_i`` (``i`` in
``S``) taken in increasing order, e.g. ``e_{1,2,3} = (v1 v2) v3``.

Multiplication is the doubling formula

    (a + v b)(c + v d) = (a c + mu d b*) + v (a* d + c b)

applied recursively on the *raw* coordinates ``x = a + v b``. The raw and
``e_S`` coordinates differ by a sign per index, which is itself computed
from the doubling formula (see :func:`_basis_signs`).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .rings import BaseRing, LaurentPoly, RationalFunction, poly_dot


@dataclass(frozen=True)
class CDSpec:
    base: BaseRing
    mus: tuple

    def __post_init__(self):
        mus = tuple(self.base.coerce(m) for m in self.mus)
        for i, m in enumerate(mus, 1):
            # every supported base ring is an integral domain
            if not m:
                raise ValueError(f"structure constant mu{i} is not cancellable (zero)")
        object.__setattr__(self, "mus", mus)

    @property
    def k(self) -> int:
        return len(self.mus)

    @property
    def dim(self) -> int:
        return 1 << len(self.mus)

    def __eq__(self, other):
        if not isinstance(other, CDSpec):
            return NotImplemented
        return self.base == other.base and len(self.mus) == len(other.mus) and all(
            a == b for a, b in zip(self.mus, other.mus))

    def __hash__(self):
        # RationalFunction constants are unhashable; the base and height suffice
        return hash((self.base, len(self.mus)))

    def zero(self) -> CDElement:
        z = self.base.zero()
        return CDElement(self, (z,) * self.dim, _trusted=True)

    def scalar(self, c) -> CDElement:
        z = self.base.zero()
        coeffs = [z] * self.dim
        coeffs[0] = self.base.coerce(c)
        return CDElement(self, tuple(coeffs), _trusted=True)

    def one(self) -> CDElement:
        return self.scalar(1)

    def basis(self, S: int, coef=1) -> CDElement:
        if not 0 <= S < self.dim:
            raise IndexError(f"basis index {S} out of range for k={self.k}")
        z = self.base.zero()
        coeffs = [z] * self.dim
        coeffs[S] = self.base.coerce(coef)
        return CDElement(self, tuple(coeffs), _trusted=True)

    def generator(self, i: int) -> CDElement:
        """The basic generator ``v_i`` introduced at doubling step ``i``."""
        if not 1 <= i <= self.k:
            raise IndexError(f"no basic generator v{i} in a tower of height {self.k}")
        return self.basis(1 << (i - 1))

    def element(self, coeffs) -> CDElement:
        return CDElement(self, tuple(coeffs))

    def describe(self) -> str:
        mus = ", ".join(self.base.format(m) for m in self.mus)
        base = "Q" if self.base.kind == "rationals" else f"{self.base.kind}({self.base.nvars})"
        return f"({base}{', ' if mus else ''}{mus})"


class CDElement:
    __slots__ = ("spec", "coeffs")
    __hash__ = None

    def __init__(self, spec: CDSpec, coeffs, _trusted=False):
        if not _trusted:
            coeffs = tuple(spec.base.coerce(c) for c in coeffs)
            if len(coeffs) != spec.dim:
                raise ValueError(f"expected {spec.dim} coefficients, got {len(coeffs)}")
        self.spec = spec
        self.coeffs = coeffs

    def _check(self, other: CDElement):
        if self.spec != other.spec:
            raise ValueError(f"spec mismatch: {self.spec.describe()} vs {other.spec.describe()}")

    def __add__(self, other):
        if not isinstance(other, CDElement):
            other = self.spec.scalar(other)
        self._check(other)
        return CDElement(self.spec, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return CDElement(self.spec, tuple(-a for a in self.coeffs), _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, CDElement):
            other = self.spec.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CDElement):
            return cd_mul(self, other)
        c = self.spec.base.coerce(other)
        return CDElement(self.spec, tuple(a * c for a in self.coeffs), _trusted=True)

    def __rmul__(self, other):
        # scalars are central
        return self * other

    def __eq__(self, other):
        if isinstance(other, CDElement):
            return self.spec == other.spec and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        try:
            other = self.spec.scalar(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self == other

    def __bool__(self):
        return any(self.coeffs)

    def conj(self) -> CDElement:
        return cd_conj(self)

    def norm(self):
        return cd_norm(self)

    def trace(self):
        return cd_trace(self)

    def is_scalar(self) -> bool:
        return not any(self.coeffs[1:])

    def support(self) -> list[int]:
        return [S for S, c in enumerate(self.coeffs) if c]

    def __str__(self):
        fmt = self.spec.base.format
        parts = []
        for S, c in enumerate(self.coeffs):
            if not c:
                continue
            text = fmt(c)
            if S:
                if not _is_atom(c, text):
                    text = f"({text})"
                text = f"{text}*{basis_label(S, self.spec.k)}"
            parts.append(text)
        if not parts:
            return "0"
        out = parts[0]
        for text in parts[1:]:
            out += f" - {text[1:]}" if text.startswith("-") else f" + {text}"
        return out

    def __repr__(self):
        return f"CDElement({self.spec.describe()}, {self})"

    def to_json(self):
        return {basis_label(S, self.spec.k): self.spec.base.format(c)
                for S, c in enumerate(self.coeffs) if c}


def _is_atom(c, text: str) -> bool:
    if isinstance(c, LaurentPoly):
        return len(c) <= 1
    if isinstance(c, RationalFunction):
        return False
    return True


_OCTONION_LABELS = ("1", "v1", "v2", "v1v2", "v3", "v1v3", "v2v3", "(v1v2)v3")


def basis_label(S: int, k: int) -> str:
    if k == 3:
        return _OCTONION_LABELS[S]
    if S == 0:
        return "1"
    if k <= 2:
        return "".join(f"v{i + 1}" for i in range(k) if S >> i & 1)
    return "e{" + ",".join(str(i + 1) for i in range(k) if S >> i & 1) + "}"


def _any(t) -> bool:
    for c in t:
        if c:
            return True
    return False


def _raw_mul(x: tuple, y: tuple, mus: tuple, zero) -> tuple:
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    if not _any(x) or not _any(y):
        return (zero,) * n
    h = n >> 1
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    mu, lower = mus[-1], mus[:-1]
    b_nz, d_nz = _any(b), _any(d)
    ac = _raw_mul(a, c, lower, zero)
    if b_nz and d_nz:
        dbs = _raw_mul(d, _raw_conj(b), lower, zero)
        first = tuple(p + mu * q for p, q in zip(ac, dbs))
    else:
        first = ac
    if d_nz:
        asd = _raw_mul(_raw_conj(a), d, lower, zero)
        if b_nz:
            cb = _raw_mul(c, b, lower, zero)
            second = tuple(p + q for p, q in zip(asd, cb))
        else:
            second = asd
    elif b_nz:
        second = _raw_mul(c, b, lower, zero)
    else:
        second = (zero,) * h
    return first + second


def _raw_conj(x: tuple) -> tuple:
    # (a + v b)* = a* - v b, unrolled: keep the identity coordinate, negate the rest
    return (x[0],) + tuple(-c for c in x[1:])


@lru_cache(maxsize=None)
def _basis_signs(k: int) -> tuple[int, ...]:
    """``sigma[S]`` with ``e_S = sigma[S] * raw_unit(S)``.

    Products of distinct basic generators never pick up a structure constant,
    so the signs are computed once per height with all ``mu = 1``.
    """
    mus = (1,) * k
    dim = 1 << k
    signs = [1] * dim

    def unit(S):
        v = [0] * dim
        v[S] = 1
        return tuple(v)

    for S in range(1, dim):
        top = S.bit_length() - 1
        rest = S & ~(1 << top)
        # e_S = e_rest * v_top, with e_rest = signs[rest] * raw_unit(rest)
        prod = _raw_mul(tuple(signs[rest] * c for c in unit(rest)), unit(1 << top), mus, 0)
        nz = [i for i, c in enumerate(prod) if c]
        assert nz == [S] and prod[S] in (1, -1), "doubling product of distinct generators is not a signed unit"
        signs[S] = prod[S]
    return tuple(signs)


def _to_raw(coeffs: tuple, k: int) -> tuple:
    signs = _basis_signs(k)
    return tuple(c if s == 1 or not c else -c for c, s in zip(coeffs, signs))


_from_raw = _to_raw  # the sign map is an involution


def cd_mul(x: CDElement, y: CDElement) -> CDElement:
    x._check(y)
    spec = x.spec
    k = spec.k
    raw = _raw_mul(_to_raw(x.coeffs, k), _to_raw(y.coeffs, k), spec.mus, spec.base.zero())
    return CDElement(spec, _from_raw(raw, k), _trusted=True)


def cd_conj(x: CDElement) -> CDElement:
    return CDElement(x.spec, _raw_conj(x.coeffs), _trusted=True)


def _require_composition(x: CDElement, what: str):
    if x.spec.k > 3:
        raise ValueError(f"{what} is only defined for towers of height <= 3 (got k={x.spec.k})")


@lru_cache(maxsize=None)
def _basis_squares(spec: CDSpec) -> tuple:
    return tuple(cd_mul(spec.basis(S), spec.basis(S)).coeffs[0] for S in range(spec.dim))


def cd_norm(x: CDElement):
    """The scalar ``x x*`` (coefficient of 1).

    Only the identity coordinate of ``x x*`` is formed: e_S e_T has no
    identity component unless S == T, so it is a weighted sum of squares.
    That ``x x*`` is scalar at all is covered by the test suite.
    """
    _require_composition(x, "norm")
    conj = cd_conj(x).coeffs
    squares = _basis_squares(x.spec)
    if x.spec.base.kind in ("polynomial", "laurent"):
        return poly_dot(x.spec.base.nvars, [(a, b * sq) for a, b, sq in zip(x.coeffs, conj, squares) if a])
    total = x.spec.base.zero()
    for a, b, sq in zip(x.coeffs, conj, squares):
        if a:
            total = total + a * b * sq
    return total


def cd_trace(x: CDElement):
    _require_composition(x, "trace")
    return (x + cd_conj(x)).coeffs[0]


def cd_basis_table(spec: CDSpec) -> list[list[tuple[object, int]]]:
    """Entry ``[S][T] = (coef, U)`` with ``e_S e_T = coef * e_U``."""
    rows = []
    for S in range(spec.dim):
        row = []
        for T in range(spec.dim):
            p = cd_mul(spec.basis(S), spec.basis(T))
            supp = p.support()
            assert supp == [S ^ T], f"e_{S} e_{T} is not a multiple of e_{S ^ T}"
            row.append((p.coeffs[S ^ T], S ^ T))
        rows.append(row)
    return rows


def table_to_json(spec: CDSpec, table) -> list[list[dict]]:
    fmt = spec.base.format
    return [[{"coef": fmt(c), "basis": basis_label(U, spec.k)} for c, U in row] for row in table]


def cd_invert(x: CDElement) -> CDElement | None:
    """``n(x)^-1 x*`` when the norm is a unit of the base ring, else ``None``."""
    _require_composition(x, "inversion")
    n_inv = x.spec.base.unit_inverse(cd_norm(x))
    if n_inv is None:
        return None
    inv = cd_conj(x) * n_inv
    one = x.spec.one()
    assert cd_mul(x, inv) == one and cd_mul(inv, x) == one, "inverse check failed"
    return inv


def commutator(x: CDElement, y: CDElement) -> CDElement:
    return x * y - y * x


def associator(x: CDElement, y: CDElement, z: CDElement) -> CDElement:
    return (x * y) * z - x * (y * z)
