"""Presentations as executable constructions.

* quotients ``t_i^2 -> mu_i`` of the Cayley (or Hamilton) polynomial ring,
  realised as substitution on canonical forms;
* Hamilton polynomials and the quaternion torus;
* octonion and quaternion n-tori as configured algebra handles;
* a checker for the Cayley relations on concrete elements of a tower.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dickson import CDElement, CDSpec, cd_invert
from .expr import UNIT, Expr, Gen, Mul, Word, leaves, parse
from .normalizer import (
    CanonicalElement,
    canonical_mul,
    from_cd,
    normalize_expr,
    oracle_spec,
    to_cd,
)
from .rings import BaseRing, LaurentPoly, as_rational


@dataclass(frozen=True)
class PresentationSpec:
    kind: str = "octonion"
    mode: str = "poly"
    n: int = 3
    mus: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("quaternion", "octonion"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.mode not in ("poly", "torus"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n < self.rank:
            raise ValueError(f"a {self.kind} presentation needs n >= {self.rank}")
        if self.mus is not None:
            mus = tuple(as_rational(m) for m in self.mus)
            if len(mus) != self.rank:
                raise ValueError(f"expected {self.rank} structure constants, got {len(mus)}")
            if any(m == 0 for m in mus):
                raise ValueError("structure constants must be nonzero")
            object.__setattr__(self, "mus", mus)

    @property
    def rank(self) -> int:
        return 3 if self.kind == "octonion" else 2


def specialize(c: CanonicalElement, mus) -> CDElement:
    """Send ``z_i -> mu_i`` and the basis labels to ``e_S`` in ``(Q, mu_1, ..)``."""
    if c.mode != "poly":
        raise ValueError("specialization takes polynomial (non-torus) canonical forms")
    if c.nvars != c.rank:
        raise ValueError("specialization needs exactly the non-central generators")
    mus = tuple(as_rational(m) for m in mus)
    if len(mus) != c.rank:
        raise ValueError(f"expected {c.rank} structure constants")
    spec = CDSpec(BaseRing(), mus)
    coeffs = [0] * spec.dim
    for S, p in c.components.items():
        coeffs[S] = p.substitute(mus)
    return spec.element(coeffs)


def specialize_octonion(c: CanonicalElement, mus) -> CDElement:
    if c.rank != 3:
        raise ValueError("not an octonion canonical form")
    return specialize(c, mus)


# --------------------------------------------------------------------------
# Hamilton polynomials

def hamilton_normalize(w: Word, mode: str = "poly") -> tuple[int, int, int]:
    """``w = coef * t1^l t2^m`` in the (associative) Hamilton ring.

    Parenthesization is irrelevant; the sign counts how many ``t2``-type
    leaves must pass a ``t1``-type leaf, each pass costing ``-1``.
    """
    gens = leaves(w)
    for g in gens:
        if g.index > 2:
            raise ValueError(f"Hamilton words use t1 and t2 only, got t{g.index}")
        if g.exp == -1 and mode != "torus":
            raise ValueError("inverse outside torus mode")
    passes = 0
    seen_t2 = 0
    for g in gens:
        if g.index == 2:
            seen_t2 += 1
        else:
            passes += seen_t2
    ell = sum(g.exp for g in gens if g.index == 1)
    m = sum(g.exp for g in gens if g.index == 2)
    return (-1) ** passes, ell, m


def hamilton_canonical(coef: int, ell: int, m: int, mode: str = "poly", n: int = 2) -> CanonicalElement:
    """``coef * t1^l t2^m`` as ``coef * z1^(l//2) z2^(m//2) * t1^(l%2) t2^(m%2)``."""
    exp = [0] * n
    exp[0], exp[1] = ell // 2, m // 2
    mask = (ell % 2) | (m % 2) << 1
    return CanonicalElement(n, mode, {mask: LaurentPoly.monomial(tuple(exp), coef)}, rank=2)


def _quaternion_normalize_word(w: Word, mode: str, n: int) -> CanonicalElement:
    gens = leaves(w)
    central = [0] * n
    core = []
    for g in gens:
        if g.index > n:
            raise ValueError(f"generator t{g.index} out of range (n={n})")
        if g.exp == -1 and mode != "torus":
            raise ValueError("inverse outside torus mode")
        if g.index <= 2:
            core.append(g)
        else:
            central[g.index - 1] += g.exp
    if core:
        word = core[0]
        for g in core[1:]:
            word = Mul(word, g)
        coef, ell, m = hamilton_normalize(word, mode)
    else:
        coef, ell, m = 1, 0, 0
    c = hamilton_canonical(coef, ell, m, mode, n)
    shift = LaurentPoly.monomial(tuple(central))
    return c._new({S: p * shift for S, p in c.components.items()})


# --------------------------------------------------------------------------
# tori

@dataclass
class AlgebraHandle:
    """A configured octonion or quaternion n-torus (or polynomial ring).

    Normalization goes through the rewrite-derived canonical forms;
    inversion goes through the doubled-algebra model.
    """

    spec: PresentationSpec
    oracle: CDSpec = field(init=False)

    def __post_init__(self):
        self.oracle = oracle_spec(self.spec.mode, self.spec.n, self.spec.rank)

    @property
    def n(self):
        return self.spec.n

    @property
    def mode(self):
        return self.spec.mode

    def normalize(self, x) -> CanonicalElement:
        if isinstance(x, str):
            x = parse(x, self.n, self.mode)
        if isinstance(x, (Gen, Mul)):
            x = Expr.word(x)
        if self.spec.kind == "octonion":
            return normalize_expr(x, self.mode, self.n)
        total = CanonicalElement.zero(self.n, self.mode, rank=2)
        for w, c in x.terms.items():
            if w is UNIT:
                total = total + CanonicalElement.scalar(self.n, c, self.mode, rank=2)
            else:
                total = total + _quaternion_normalize_word(w, self.mode, self.n).scale(c)
        return total

    def one(self) -> CanonicalElement:
        return CanonicalElement.scalar(self.n, 1, self.mode, rank=self.spec.rank)

    def generator(self, i: int, exp: int = 1) -> CanonicalElement:
        return self.normalize(Gen(i, exp))

    def mul(self, x: CanonicalElement, y: CanonicalElement) -> CanonicalElement:
        return canonical_mul(x, y)

    def invert(self, x: CanonicalElement) -> CanonicalElement | None:
        inv = cd_invert(to_cd(x))
        return None if inv is None else from_cd(inv, self.mode)

    def degree(self, x: CanonicalElement) -> tuple[int, ...]:
        return x.degree()

    def is_central(self, x: CanonicalElement) -> bool:
        return all(S == 0 for S in x.components)

    def check_relations(self) -> dict:
        """Verify ``t_i t_i^-1 = 1``, anti-commutation and centrality of extra generators."""
        one = self.one()
        out = {"inverses": {}, "anticommute": {}, "central": {}}
        for i in range(1, self.n + 1):
            ti = self.generator(i)
            if self.mode == "torus":
                inv = self.generator(i, -1)
                out["inverses"][f"t{i}"] = self.mul(ti, inv) == one and self.mul(inv, ti) == one
            if i > self.spec.rank:
                out["central"][f"t{i}"] = self.is_central(ti)
        r = self.spec.rank
        for i in range(1, r + 1):
            for j in range(i + 1, r + 1):
                ti, tj = self.generator(i), self.generator(j)
                out["anticommute"][f"t{i},t{j}"] = self.mul(tj, ti) == -self.mul(ti, tj)
        out["ok"] = all(v for group in ("inverses", "anticommute", "central") for v in out[group].values())
        return out


def build_torus(spec: PresentationSpec) -> AlgebraHandle:
    if spec.mus is not None:
        raise ValueError("a torus takes no specialization constants")
    return AlgebraHandle(spec)


# --------------------------------------------------------------------------
# Cayley-relation checks on concrete elements

@dataclass
class CayleyReport:
    relations_hold: bool
    squares_central: bool
    constants: list
    witnesses: list[dict]

    def to_json(self) -> dict:
        return {
            "relations_hold": self.relations_hold,
            "squares_central": self.squares_central,
            "constants": [str(c) if not isinstance(c, (int, Fraction)) else _fmt_q(c) for c in self.constants],
            "witnesses": self.witnesses,
        }


def _fmt_q(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def check_cayley_generators(a1: CDElement, a2: CDElement, a3: CDElement) -> CayleyReport:
    if not (a1.spec == a2.spec == a3.spec):
        raise ValueError("elements come from different towers")
    if a1.spec.k > 3:
        raise ValueError("relation checks need a tower of height <= 3")
    relations = [
        ("a2a1 = -a1a2", a2 * a1, -(a1 * a2)),
        ("a3a1 = -a1a3", a3 * a1, -(a1 * a3)),
        ("a3a2 = -a2a3", a3 * a2, -(a2 * a3)),
        ("(a1a2)a3 = -a1(a2a3)", (a1 * a2) * a3, -(a1 * (a2 * a3))),
    ]
    witnesses = [{"relation": name, "lhs": str(lhs), "rhs": str(rhs)}
                 for name, lhs, rhs in relations if lhs != rhs]
    squares = [a * a for a in (a1, a2, a3)]
    squares_central = all(s.is_scalar() for s in squares)
    constants = [s.coeffs[0] for s in squares] if squares_central else []
    return CayleyReport(not witnesses, squares_central, constants, witnesses)


# --------------------------------------------------------------------------
# specialized multiplication tables

def _label_word(S: int):
    word = None
    for i in range(3):
        if S >> i & 1:
            word = Gen(i + 1) if word is None else Mul(word, Gen(i + 1))
    return UNIT if word is None else word


def _product_word(u, v):
    if u is UNIT:
        return v
    if v is UNIT:
        return u
    return Mul(u, v)


@dataclass
class TableReport:
    kind: str
    mus: tuple
    table: list[list[CDElement]]
    matches_tower: bool
    associative: bool
    commutative: bool
    mismatches: list[dict]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "mus": [_fmt_q(m) for m in self.mus],
            "table": [[str(x) for x in row] for row in self.table],
            "matches_tower": self.matches_tower,
            "associative": self.associative,
            "commutative": self.commutative,
            "mismatches": self.mismatches,
        }


def specialized_table(kind: str, mus) -> TableReport:
    """Basis table of the presentation with ``t_i^2 -> mu_i``, checked against ``(Q, mus)``.

    Products of basis words are normalized in the presentation (rewrite-derived
    for octonions, Hamilton normal form for quaternions) and then specialized.
    """
    pspec = PresentationSpec(kind, "poly", 3 if kind == "octonion" else 2, tuple(mus))
    handle = AlgebraHandle(PresentationSpec(kind, "poly", pspec.rank))
    tower = CDSpec(BaseRing(), pspec.mus)
    dim = tower.dim
    table, mismatches = [], []
    for S in range(dim):
        row = []
        for T in range(dim):
            word = _product_word(_label_word(S), _label_word(T))
            x = specialize(handle.normalize(Expr({word: 1})), pspec.mus)
            expected = tower.basis(S) * tower.basis(T)
            if x != expected:
                mismatches.append({"row": S, "col": T, "presentation": str(x), "tower": str(expected)})
            row.append(x)
        table.append(row)
    basis = [tower.basis(S) for S in range(dim)]
    associative = all(not ((a * b) * c - a * (b * c)) for a in basis for b in basis for c in basis)
    commutative = all(table[S][T] == table[T][S] for S in range(dim) for T in range(dim))
    return TableReport(kind, pspec.mus, table, not mismatches, associative, commutative, mismatches)
