"""Identity checks, center detection and the worked demonstrations.

Random elements use rational coefficients with numerator and denominator
bounded by 10. Every sampling loop draws from its own ``random.Random``
seeded by ``f"{seed}:{task}"``, so results are reproducible and independent
of evaluation order.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .dickson import CDElement, CDSpec, associator, basis_label, commutator
from .expr import UNIT, Gen, Mul
from .normalizer import LABEL_TEXT, CanonicalElement, canonical_mul, normalize_word
from .presentations import CayleyReport, check_cayley_generators
from .rings import BaseRing, LaurentPoly, RationalFunction, format_poly, frac_eq

COEF_BOUND = 10


def task_rng(seed, task: str) -> random.Random:
    return random.Random(f"{seed}:{task}")


def random_rational(rng: random.Random, bound: int = COEF_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_poly(rng: random.Random, nvars: int, laurent: bool = False, max_terms: int = 3) -> LaurentPoly:
    lo = -2 if laurent else 0
    terms = [(tuple(rng.randint(lo, 2) for _ in range(nvars)), random_rational(rng))
             for _ in range(rng.randint(1, max_terms))]
    return LaurentPoly(nvars, terms)


def random_scalar(base: BaseRing, rng: random.Random):
    if base.kind == "rationals":
        return random_rational(rng)
    if base.kind == "fraction-field":
        den = LaurentPoly(base.nvars)
        while not den:
            den = random_poly(rng, base.nvars)
        return RationalFunction(random_poly(rng, base.nvars), den)
    return random_poly(rng, base.nvars, laurent=base.kind == "laurent")


def random_element(spec: CDSpec, rng: random.Random) -> CDElement:
    return spec.element([random_scalar(spec.base, rng) for _ in range(spec.dim)])


# --------------------------------------------------------------------------
# identities

@dataclass
class IdentityReport:
    identity: str
    spec: str
    samples_tested: int
    passed: bool
    witness: dict | None = None
    exhaustive_tested: int = 0
    seed: object = None

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "spec": self.spec,
            "passed": self.passed,
            "exhaustive_tested": self.exhaustive_tested,
            "samples_tested": self.samples_tested,
            "seed": self.seed,
            "witness": self.witness,
        }


def _alt_left(x, y):
    return (x * x) * y, x * (x * y)


def _alt_right(x, y):
    return (y * x) * x, y * (x * x)


def _flexible(x, y):
    return (x * y) * x, x * (y * x)


def _moufang_middle(a, b, c):
    return (a * b) * (c * a), (a * (b * c)) * a


def _sq_assoc(a, b, c):
    # (a^2, b, c) = (a, ab + ba, c)
    return associator(a * a, b, c), associator(a, a * b + b * a, c)


IDENTITIES = {
    "alternative-left": (2, _alt_left),
    "alternative-right": (2, _alt_right),
    "flexible": (2, _flexible),
    "moufang-middle": (3, _moufang_middle),
    "square-associator": (3, _sq_assoc),
    "artin-2gen": (2, None),
}


def _to_field(c):
    if isinstance(c, LaurentPoly):
        return RationalFunction(c)
    if isinstance(c, RationalFunction):
        return c
    return Fraction(c)


def independent_subset(elements: list[CDElement]) -> list[CDElement]:
    """A maximal linearly independent subset (over the fraction field of the base)."""
    rows: list[list] = []
    pivots: list[int] = []
    chosen = []
    for x in elements:
        v = [_to_field(c) for c in x.coeffs]
        for row, p in zip(rows, pivots):
            if v[p]:
                f = v[p] / row[p]
                v = [a - f * b for a, b in zip(v, row)]
        nz = [i for i, c in enumerate(v) if c]
        if nz:
            rows.append(v)
            pivots.append(nz[0])
            chosen.append(x)
    return chosen


def _words_upto3(x, y) -> list[CDElement]:
    level = {1: [x, y]}
    for n in (2, 3):
        level[n] = [a * b for k in range(1, n) for a in level[k] for b in level[n - k]]
    return level[1] + level[2] + level[3]


def _integral(x: CDElement) -> CDElement:
    # rescaling by a nonzero integer keeps the span; integer arithmetic is much faster
    if x.spec.base.kind != "rationals":
        return x
    m = math.lcm(*(Fraction(c).denominator for c in x.coeffs))
    return x.spec.element([int(c * m) for c in x.coeffs])


def _artin_check(x, y):
    """First nonzero associator among words of length <= 3 in ``x, y``.

    The associator is trilinear, so checking an independent spanning subset
    of the word values is equivalent to checking all of them.
    """
    span = [_integral(w) for w in independent_subset(_words_upto3(x, y))]
    for a, b, c in itertools.product(span, repeat=3):
        assoc = associator(a, b, c)
        if assoc:
            return (a, b, c), assoc
    return None


# exhaustive checks of these also run over x = e_S + e_T (see basis_pairs)
QUADRATIC_IN_FIRST = ("alternative-left", "alternative-right", "flexible")


def _describe(x: CDElement) -> str:
    supp = x.support()
    if 1 <= len(supp) <= 2 and all(x.coeffs[S] == 1 for S in supp):
        return " + ".join(basis_label(S, x.spec.k) for S in supp)
    return str(x)


def check_identity(name: str, spec: CDSpec, samples: int = 200, seed=0,
                   exhaustive: bool = True) -> IdentityReport:
    """Check an identity on all basis tuples, then on ``samples`` random tuples.

    Stops at the first failure and records it as the witness.
    """
    if name not in IDENTITIES:
        raise ValueError(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)}")
    if samples < 0:
        raise ValueError("samples must be non-negative")
    arity, fn = IDENTITIES[name]
    report = IdentityReport(name, spec.describe(), 0, True, seed=seed)

    def run(args):
        if fn is None:
            bad = _artin_check(*args)
            if bad is None:
                return None
            triple, assoc = bad
            return {"inputs": [_describe(a) for a in args],
                    "lhs": f"({', '.join(_describe(t) for t in triple)})",
                    "rhs": "0", "value": str(assoc)}
        lhs, rhs = fn(*args)
        if lhs == rhs:
            return None
        return {"inputs": [_describe(a) for a in args], "lhs": str(lhs), "rhs": str(rhs)}

    if exhaustive:
        basis = [spec.basis(S) for S in range(spec.dim)]
        tuples = itertools.product(basis, repeat=arity)
        if name in QUADRATIC_IN_FIRST:
            tuples = itertools.chain(tuples, (
                (x, y) for (_, x), y in itertools.product(basis_pairs(spec)[spec.dim:], basis)))
        for args in tuples:
            report.exhaustive_tested += 1
            w = run(args)
            if w is not None:
                report.passed, report.witness = False, w
                return report
    rng = task_rng(seed, f"identity:{name}")
    for _ in range(samples):
        args = [random_element(spec, rng) for _ in range(arity)]
        report.samples_tested += 1
        w = run(args)
        if w is not None:
            report.passed, report.witness = False, w
            return report
    return report


def basis_pairs(spec: CDSpec) -> list[tuple[str, CDElement]]:
    """``e_S`` and ``e_S + e_T`` (``S < T``), labelled.

    A map quadratic in ``x`` is determined by its values on these, so an
    identity quadratic in ``x`` and linear in ``y`` holds everywhere iff it
    holds for ``x`` in this list and ``y`` a basis element.
    """
    out = [(basis_label(S, spec.k), spec.basis(S)) for S in range(spec.dim)]
    for S, T in itertools.combinations(range(spec.dim), 2):
        out.append((f"{basis_label(S, spec.k)} + {basis_label(T, spec.k)}", spec.basis(S) + spec.basis(T)))
    return out


def find_alternativity_witness(spec: CDSpec):
    """Exhaustive search for ``(x, x, y) != 0`` with ``x`` in :func:`basis_pairs`, ``y`` a basis element.

    Single basis elements never give a witness (``e_S^2`` is a scalar), so
    any witness has ``x = e_S + e_T``; it then also shows
    ``(e_S, e_T, y) + (e_T, e_S, y) != 0``.
    """
    for xlabel, x in basis_pairs(spec):
        for U in range(spec.dim):
            value = associator(x, x, spec.basis(U))
            if value:
                return {"x": xlabel, "y": basis_label(U, spec.k), "associator": str(value)}
    return None


# --------------------------------------------------------------------------
# center detection

def _central_for(z: CDElement, elems: list[CDElement]) -> bool:
    for g in elems:
        if commutator(z, g):
            return False
    for g, h in itertools.product(elems, repeat=2):
        if associator(z, g, h):
            return False
    return True


def center_via_generators(z: CDElement, gens: list[CDElement], samples: int = 20,
                          seed=0) -> tuple[bool, bool]:
    """Centrality of ``z`` judged on a generating set, plus agreement with a full check.

    The full check runs over all basis elements (complete, by linearity) and
    ``samples`` random pairs. Generating-set centrality implying centrality
    is the Bruck-Kleinfeld principle; disagreement is reported, not raised.
    """
    for g in gens:
        if g.spec != z.spec:
            raise ValueError("generators come from a different tower")
    by_gens = _central_for(z, gens)
    spec = z.spec
    full = _central_for(z, [spec.basis(S) for S in range(spec.dim)])
    rng = task_rng(seed, "center")
    for _ in range(samples):
        if not full:
            break
        a, b = random_element(spec, rng), random_element(spec, rng)
        full = not commutator(z, a) and not associator(z, a, b)
    return by_gens, by_gens == full


# --------------------------------------------------------------------------
# Dorofeev triples

@dataclass
class DorofeevTriple:
    u: CDElement
    v: CDElement
    w: CDElement
    degenerate: bool


def dorofeev_triple(a: CDElement, b: CDElement, c: CDElement) -> tuple[DorofeevTriple, CayleyReport]:
    """``u = [a, b]``, ``v = (a, b, c)``, ``w = (u, v, a)`` and their Cayley-relation report."""
    if not (a.spec == b.spec == c.spec):
        raise ValueError("elements come from different towers")
    if a.spec.k != 3:
        raise ValueError("Dorofeev triples are taken in an octonion tower (k = 3)")
    u = commutator(a, b)
    v = associator(a, b, c)
    w = associator(u, v, a)
    triple = DorofeevTriple(u, v, w, not (u and v and w))
    return triple, check_cayley_generators(u, v, w)


def dorofeev_demo(seed=0, count: int = 100, mus_list=((1, 1, 1), (-1, -1, -1))) -> dict:
    results = []
    ok = True
    for mus in mus_list:
        spec = CDSpec(BaseRing(), mus)
        rng = task_rng(seed, f"dorofeev:{mus}")
        nondeg = degenerate = failures = 0
        first_failure = None
        for _ in range(count):
            a, b, c = (random_element(spec, rng) for _ in range(3))
            triple, rep = dorofeev_triple(a, b, c)
            if triple.degenerate:
                degenerate += 1
                continue
            nondeg += 1
            if not (rep.relations_hold and rep.squares_central):
                failures += 1
                first_failure = first_failure or rep.to_json()
        ok = ok and failures == 0
        results.append({"spec": spec.describe(), "triples": count, "non_degenerate": nondeg,
                        "degenerate": degenerate, "failures": failures, "first_failure": first_failure})
    return {"demo": "dorofeev", "seed": seed, "passed": ok, "results": results}


# --------------------------------------------------------------------------
# Example: a Cayley-Dickson ring that is not an octonion algebra over its center
#
# Model: F[z]_C[t1, t2, t3] is the Cayley polynomial ring with a fourth,
# central generator t4 = z. Center variables are z1 = t1^2, z2 = t2^2,
# z3 = t3^2 and z4 = z.

def _z():
    return Gen(4)


def _pair(i, j):
    return Mul(Gen(i), Gen(j))


EXAMPLE43_GENERATORS = (
    ("1", UNIT),
    ("t1", Gen(1)),
    ("t2", Gen(2)),
    ("t3", Gen(3)),
    ("t1t2", _pair(1, 2)),
    ("t1t3", _pair(1, 3)),
    ("t2t3", _pair(2, 3)),
    ("(t1t2)t3", Mul(_pair(1, 2), Gen(3))),
    ("zt1", Mul(_z(), Gen(1))),
    ("zt1t2", Mul(_z(), _pair(1, 2))),
    ("zt1t3", Mul(_z(), _pair(1, 3))),
    ("zt1(t2t3)", Mul(_z(), Mul(Gen(1), _pair(2, 3)))),
)

EXAMPLE43_VARIABLES = ("t1^2", "t2^2", "t3^2", "z")


def z_membership(exp) -> bool:
    """Is ``z^a t1^(2b) t2^(2c) t3^(2d)`` (``exp = (b, c, d, a)``) in F[t1^2, t2^2, t3^2, z^2 t1^2, z t1^2]?"""
    b, c, d, a = exp
    if min(exp) < 0:
        return False
    return b >= math.ceil(a / 2)


def z_membership_bruteforce(a: int, b: int, bound: int = 6) -> bool:
    """Reachability of ``z^a t1^(2b)`` as a product of t1^2, z t1^2 and z^2 t1^2."""
    gens = [(0, 1), (1, 1), (2, 1)]
    reach = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for x, y in frontier:
            for gx, gy in gens:
                p = (x + gx, y + gy)
                if p[0] <= bound and p[1] <= bound and p not in reach:
                    reach.add(p)
                    nxt.append(p)
        frontier = nxt
    return (a, b) in reach


def validate_z_membership(bound: int = 6) -> bool:
    return all(z_membership((b, 0, 0, a)) == z_membership_bruteforce(a, b, bound)
               for a in range(bound + 1) for b in range(bound + 1))


def _example_canonical(word) -> CanonicalElement:
    if word is UNIT:
        return CanonicalElement.scalar(4, 1)
    return normalize_word(word, "poly", 4)


def _monomial(c: CanonicalElement):
    (S, p), = c.components.items()
    (exp, coef), = p.items()
    return S, exp, coef


def _names_poly(p: LaurentPoly) -> str:
    return format_poly(p, EXAMPLE43_VARIABLES)


def example43_report() -> dict:
    if not validate_z_membership():
        raise AssertionError("closed-form center membership rule disagrees with brute force")
    gens = [(name, _example_canonical(w)) for name, w in EXAMPLE43_GENERATORS]
    by_label: dict[int, list] = {}
    for name, c in gens:
        S, exp, coef = _monomial(c)
        by_label.setdefault(S, []).append((name, exp, coef))

    products = []
    for (n1, c1), (n2, c2) in itertools.product(gens, repeat=2):
        prod = canonical_mul(c1, c2)
        S, exp, coef = _monomial(prod)
        match = None
        for name, gexp, gcoef in by_label.get(S, []):
            quotient = tuple(e - g for e, g in zip(exp, gexp))
            if z_membership(quotient):
                match = (name, quotient, Fraction(coef) / gcoef)
                break
        if match is None:
            raise AssertionError(f"{n1} * {n2} = {prod} is not a Z-multiple of a listed generator")
        name, quotient, factor = match
        center = LaurentPoly.monomial(quotient, factor)
        products.append({"left": n1, "right": n2, "center": _names_poly(center), "generator": name})

    # zt1 has the unique coordinate z on the label t1; z is not in Z
    S, exp, coef = _monomial(dict(gens)["zt1"])
    coordinate = LaurentPoly.monomial(exp, coef)
    witness = {
        "element": "zt1",
        "label": LABEL_TEXT[S],
        "coordinate": _names_poly(coordinate),
        "coordinate_in_Z": z_membership(exp),
        "coordinate_in_F[t1^2,t2^2,t3^2]": exp[3] == 0,
    }
    return {
        "demo": "example43",
        "variables": dict(zip(("z1", "z2", "z3", "z4"), EXAMPLE43_VARIABLES)),
        "generators": [name for name, _ in gens],
        "products_checked": len(products),
        "closure": True,
        "membership_rule_validated": True,
        "products": products,
        "non_octonion_witness": witness,
        "passed": len(products) == 144 and not witness["coordinate_in_Z"],
    }


def closure_coordinate(exp, coef) -> RationalFunction:
    """Write ``coef * z^exp`` as a quotient of two elements of Z."""
    b, c, d, a = exp
    k = max(0, math.ceil(a / 2) - b)
    lift = [0, 0, 0, 0]
    lift[0] = k
    num = LaurentPoly.monomial(tuple(e + l for e, l in zip(exp, lift)), coef)
    den = LaurentPoly.monomial(tuple(lift))
    return RationalFunction(num, den)


def central_closure_demo() -> dict:
    rows = []
    labels_used = set()
    ok = True
    for name, word in EXAMPLE43_GENERATORS:
        S, exp, coef = _monomial(_example_canonical(word))
        frac = closure_coordinate(exp, coef)
        num_exp, = (e for e, _ in frac.num.items())
        den_exp, = (e for e, _ in frac.den.items())
        in_z = z_membership(num_exp) and z_membership(den_exp)
        same = frac_eq(frac, RationalFunction(LaurentPoly.monomial(exp, coef)))
        ok = ok and in_z and same
        labels_used.add(S)
        rows.append({"element": name, "label": LABEL_TEXT[S],
                     "coefficient": f"({_names_poly(frac.num)})/({_names_poly(frac.den)})",
                     "numerator_and_denominator_in_Z": in_z, "equal": same})
    z4 = LaurentPoly.var(4, 4)
    z1 = LaurentPoly.var(4, 1)
    cross = frac_eq(RationalFunction(z4 * z1, z1), RationalFunction(z4 * z4 * z1, z4 * z1))
    ok = ok and cross and len(labels_used) <= 8
    return {
        "demo": "closure",
        "variables": dict(zip(("z1", "z2", "z3", "z4"), EXAMPLE43_VARIABLES)),
        "decompositions": rows,
        "closure_dimension": 8,
        "labels_used": sorted(LABEL_TEXT[S] for S in labels_used),
        "module_generators_of_R": len(EXAMPLE43_GENERATORS),
        "zt1^2/t1^2 == z^2t1^2/zt1^2": cross,
        "passed": ok,
    }


def sedenion_demo() -> dict:
    sed = CDSpec(BaseRing(), (-1, -1, -1, -1))
    octo = CDSpec(BaseRing(), (-1, -1, -1))
    w4 = find_alternativity_witness(sed)
    w3 = find_alternativity_witness(octo)
    return {
        "demo": "sedenion",
        "k4_witness": w4,
        "k3_witness": w3,
        "passed": w4 is not None and w3 is None,
    }
