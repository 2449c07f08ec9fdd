"""Canonical forms in the ring of Cayley polynomials and its torus.

Every monomial word in ``t1, t2, t3`` reduces to ``c * z^e * b`` where ``c``
is a sign, ``z_i`` stands for the central square ``t_i^2`` and ``b`` is one
of the eight basis labels

    1, t1, t2, t3, t1t2, t1t3, t2t3, (t1t2)t3.

Labels are encoded as bitmasks (bit ``i-1`` for ``t_i``), the same indexing
the Cayley-Dickson tower uses for ``e_S``. Generators ``t4..tn`` are central
and become the center variables ``z4..zn`` directly.

Two independent routes exist:

* a rewrite engine (:func:`rewrite_trace`) that applies the Cayley relations,
  their consequences (anti-associativity and anti-commutativity of distinct
  triples), Artin regrouping and the middle Moufang identity. It fixes the
  sign of every basis-label product; :func:`normalize_word` is structural
  recursion over that table.
* :func:`evaluate_oracle`, which folds the word through the doubling product
  in ``(Q[z1..zn], z1, z2, z3)`` (or its Laurent localization).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dickson import CDElement, CDSpec, cd_invert
from .expr import UNIT, Expr, Gen, Mul, Word, format_word, leaves
from .rings import BaseRing, LaurentPoly, format_poly, format_rational

LABEL_ORDER = (0, 1, 2, 4, 3, 5, 6, 7)
LABEL_TEXT = {0: "1", 1: "t1", 2: "t2", 4: "t3", 3: "t1t2", 5: "t1t3", 6: "t2t3", 7: "(t1t2)t3"}
LABEL_FROM_TEXT = {v: k for k, v in LABEL_TEXT.items()}

_T = {i: Gen(i) for i in (1, 2, 3)}


def label_word(S: int) -> Word | None:
    """The canonical word for label ``S`` (``None`` for the unit)."""
    if S == 0:
        return None
    idx = [i for i in (1, 2, 3) if S >> (i - 1) & 1]
    if len(idx) == 1:
        return _T[idx[0]]
    if len(idx) == 2:
        return Mul(_T[idx[0]], _T[idx[1]])
    return Mul(Mul(_T[1], _T[2]), _T[3])


_LABEL_WORDS = {label_word(S): S for S in range(1, 8)}


def _bits(S: int) -> tuple[int, int, int]:
    return (S & 1, S >> 1 & 1, S >> 2 & 1)


# --------------------------------------------------------------------------
# rewrite engine

@dataclass(frozen=True)
class Term:
    """``sign * z^zexp * word`` with ``word=None`` meaning the unit."""

    sign: int
    zexp: tuple[int, int, int]
    word: Word | None

    def __str__(self):
        parts = ["-" if self.sign < 0 else ""]
        z = "*".join(f"z{i}" if e == 1 else f"z{i}^{e}" for i, e in enumerate(self.zexp, 1) if e)
        w = _fmt_tree(self.word)
        if z:
            parts.append(z + ("" if self.word is None else "*" + _paren(self.word)))
        else:
            parts.append(w)
        return "".join(parts)


def _fmt_tree(w) -> str:
    # like format_word, but intermediate terms may hold unit leaves
    if w is None:
        return "1"
    if isinstance(w, Gen):
        return format_word(w)
    return f"{_paren(w.left)}*{_paren(w.right)}"


def _paren(w) -> str:
    return f"({_fmt_tree(w)})" if isinstance(w, Mul) else _fmt_tree(w)


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    before: Term
    after: Term

    def __str__(self):
        return f"{self.rule}: {self.before}  ->  {self.after}"


def _at(tree, path):
    for p in path:
        tree = tree.left if p == 0 else tree.right
    return tree


def _replace(tree, path, new):
    if not path:
        return new
    if path[0] == 0:
        return Mul(_replace(tree.left, path[1:], new), tree.right)
    return Mul(tree.left, _replace(tree.right, path[1:], new))


class _Derivation:
    def __init__(self, word: Word):
        self.term = Term(1, (0, 0, 0), word)
        self.steps: list[RewriteStep] = []

    def at(self, path):
        return _at(self.term.word, path)

    def rewrite(self, path, rule, new, sign=1, z=(0, 0, 0)):
        before = self.term
        after = Term(before.sign * sign,
                     tuple(a + b for a, b in zip(before.zexp, z)),
                     _replace(before.word, path, new))
        self.term = after
        self.steps.append(RewriteStep(rule, before, after))


_ANTI_ASSOC_NAMES = {
    (1, 2, 3): "C-antiassoc",
    (2, 1, 3): "a1",
    (1, 3, 2): "a2",
    (3, 1, 2): "a3",
    (3, 2, 1): "a4",
    (2, 3, 1): "a5",
}


@lru_cache(maxsize=None)
def _arrangement_graph():
    """Signed graph on the 12 parenthesized arrangements of ``t1, t2, t3``.

    Every edge is a single relation with sign -1: swapping the inner pair
    (anti-commutativity of generators), ``(ab)c = -a(bc)`` and
    ``(ab)c = -c(ab)`` for distinct ``a, b, c``.
    """
    edges: dict[Word, list[tuple[str, Word]]] = {}

    def link(u, v, rule):
        edges.setdefault(u, []).append((rule, v))
        edges.setdefault(v, []).append((rule, u))

    perms = [(1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]
    for a, b, c in perms:
        ta, tb, tc = _T[a], _T[b], _T[c]
        left = Mul(Mul(ta, tb), tc)
        if a < b:
            link(left, Mul(Mul(tb, ta), tc), f"C-anticommute({a},{b})")
            link(Mul(tc, Mul(ta, tb)), Mul(tc, Mul(tb, ta)), f"C-anticommute({a},{b})")
        link(left, Mul(ta, Mul(tb, tc)), _ANTI_ASSOC_NAMES[(a, b, c)])
        link(left, Mul(tc, Mul(ta, tb)), f"ac{c}")
    return edges


def arrangement_signs() -> dict[Word, int]:
    """Sign of every arrangement relative to ``(t1t2)t3``; raises if the relations clash."""
    edges = _arrangement_graph()
    root = label_word(7)
    sign = {root: 1}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for _, v in edges[u]:
            if v in sign:
                if sign[v] != -sign[u]:
                    raise AssertionError(f"inconsistent signs for {format_word(v)}")
            else:
                sign[v] = -sign[u]
                queue.append(v)
    return sign


@lru_cache(maxsize=None)
def _arrangement_path(src: Word, dst: Word) -> tuple[tuple[str, Word], ...]:
    edges = _arrangement_graph()
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for rule, v in edges[u]:
            if v not in prev:
                prev[v] = (rule, u)
                queue.append(v)
    path = []
    node = dst
    while prev[node] is not None:
        rule, parent = prev[node]
        path.append((rule, node))
        node = parent
    return tuple(reversed(path))


def _rearrange(d: _Derivation, path, target: Word):
    for rule, nxt in _arrangement_path(d.at(path), target):
        d.rewrite(path, rule, nxt, sign=-1)


def _mask(w: Word | None) -> int:
    if w is None:
        return 0
    return _LABEL_WORDS[w]


def _artin_two_generator(w: Word):
    """Reduce a word in at most two distinct generators.

    Such a word lives in the subalgebra generated by two elements, which is
    associative (Artin), so it is a Hamilton monomial: sort the leaves using
    anti-commutativity and pull out the central squares.
    """
    seq = [g.index for g in leaves(w)]
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    counts = [seq.count(i) for i in (1, 2, 3)]
    z = tuple(c // 2 for c in counts)
    mask = sum(1 << i for i, c in enumerate(counts) if c % 2)
    return (-1) ** inversions, z, label_word(mask)


def _others(mask: int) -> list[int]:
    return [i for i in (1, 2, 3) if not mask >> (i - 1) & 1]


def _reduce(d: _Derivation, path=()):
    node = d.at(path)
    if not isinstance(node, Mul):
        return
    _reduce(d, path + (0,))
    _reduce(d, path + (1,))
    _combine(d, path)


def _combine(d: _Derivation, path):
    node = d.at(path)
    L, R = node.left, node.right
    if L is None:
        d.rewrite(path, "unit", R)
        return
    if R is None:
        d.rewrite(path, "unit", L)
        return
    if node in _LABEL_WORDS:
        return
    SL, SR = _mask(L), _mask(R)
    if isinstance(L, Gen) and isinstance(R, Gen):
        i, j = L.index, R.index
        if i == j:
            z = [0, 0, 0]
            z[i - 1] = 1
            d.rewrite(path, f"square-central({i})", None, z=tuple(z))
        else:
            d.rewrite(path, f"C-anticommute({j},{i})", Mul(R, L), sign=-1)
        return
    if bin(SL | SR).count("1") <= 2:
        sign, z, new = _artin_two_generator(node)
        d.rewrite(path, "Artin-regroup", new, sign=sign, z=z)
        return

    nl, nr = bin(SL).count("1"), bin(SR).count("1")
    if SL & SR == 0:
        # distinct triple t_i(t_j t_k) or (t_j t_k) t_i
        _rearrange(d, path, label_word(7))
        return
    if (nl, nr) == (1, 3):
        i = L.index
        j, k = _others(SL)
        pair = Mul(_T[j], _T[k])
        _rearrange(d, path + (1,), Mul(_T[i], pair))
        d.rewrite(path, "Artin-regroup", Mul(Mul(_T[i], _T[i]), pair))
    elif (nl, nr) == (3, 1):
        i = R.index
        j, k = _others(SR)
        pair = Mul(_T[j], _T[k])
        _rearrange(d, path + (0,), Mul(pair, _T[i]))
        d.rewrite(path, "Artin-regroup", Mul(pair, Mul(_T[i], _T[i])))
    elif (nl, nr) == (2, 3):
        c, = _others(SL)
        _rearrange(d, path + (1,), Mul(L, _T[c]))
        d.rewrite(path, "Artin-regroup", Mul(Mul(L, L), _T[c]))
    elif (nl, nr) == (3, 2):
        c, = _others(SR)
        _rearrange(d, path + (0,), Mul(_T[c], R))
        d.rewrite(path, "Artin-regroup", Mul(_T[c], Mul(R, R)))
    elif (nl, nr) == (3, 3):
        y = Mul(_T[2], _T[3])
        target = Mul(_T[1], y)
        _rearrange(d, path + (0,), target)
        _rearrange(d, path + (1,), target)
        # (t1 y)(t1 y) = -(t1 t1)(y y): t1 and y anti-commute and generate an associative subalgebra
        d.rewrite(path, "Artin-regroup", Mul(Mul(_T[1], _T[1]), Mul(y, y)), sign=-1)
    elif (nl, nr) == (2, 2):
        s = (SL & SR).bit_length()
        x, = [i for i in (1, 2, 3) if SL >> (i - 1) & 1 and i != s]
        y, = [i for i in (1, 2, 3) if SR >> (i - 1) & 1 and i != s]
        if L.left.index != s:
            a, b = L.left.index, L.right.index
            d.rewrite(path + (0,), f"C-anticommute({a},{b})", Mul(L.right, L.left), sign=-1)
        if R.right.index != s:
            a, b = R.left.index, R.right.index
            d.rewrite(path + (1,), f"C-anticommute({a},{b})", Mul(R.right, R.left), sign=-1)
        # (ab)(ca) = (a(bc))a
        d.rewrite(path, "Moufang-middle", Mul(Mul(_T[s], Mul(_T[x], _T[y])), _T[s]))
    else:  # pragma: no cover - every label pair is handled above
        raise AssertionError(f"no rule for {format_word(node)}")
    _reduce(d, path)


def rewrite_trace(w: Word) -> list[RewriteStep]:
    """Rewrite steps taking ``w`` (over ``t1, t2, t3``) to ``sign * z^e * label``."""
    for g in leaves(w):
        if g.index > 3 or g.exp != 1:
            raise ValueError("rewrite traces cover words over t1, t2, t3 without inverses")
    d = _Derivation(w)
    _reduce(d)
    return d.steps


def replay(w: Word, steps: list[RewriteStep]) -> Term:
    """Check that ``steps`` chain from ``w`` and return the final term."""
    current = Term(1, (0, 0, 0), w)
    for k, step in enumerate(steps):
        if step.before != current:
            raise ValueError(f"step {k} ({step.rule}) does not start where the previous one ended")
        current = step.after
    if current.word is not None and current.word not in _LABEL_WORDS:
        raise ValueError("trace does not end at a basis label")
    return current


@lru_cache(maxsize=None)
def label_product(S: int, T: int) -> int:
    """Sign ``s`` with ``b_S * b_T = s * z^(S & T) * b_(S ^ T)``, derived by rewriting."""
    if S == 0 or T == 0:
        return 1
    d = _Derivation(Mul(label_word(S), label_word(T)))
    _reduce(d)
    final = d.term
    if final.word != label_word(S ^ T) or final.zexp != _bits(S & T):
        raise AssertionError(f"rewriting {LABEL_TEXT[S]}*{LABEL_TEXT[T]} ended at {final}")
    return final.sign


# --------------------------------------------------------------------------
# canonical elements

class CanonicalElement:
    """``sum_b p_b(z) * b`` over the eight basis labels.

    ``components`` maps label bitmasks to nonzero Laurent polynomials in
    ``nvars`` center variables. ``rank`` is the number of non-central
    generators: 3 for octonion rings, 2 for the Hamilton (quaternion) case,
    where ``z3..zn`` are the central generators themselves.
    """

    __slots__ = ("nvars", "mode", "components", "rank")
    __hash__ = None

    def __init__(self, nvars: int, mode: str = "poly", components=None, rank: int = 3):
        if mode not in ("poly", "torus"):
            raise ValueError(f"unknown mode {mode!r}")
        if rank not in (2, 3) or nvars < rank:
            raise ValueError(f"need nvars >= rank in (2, 3), got nvars={nvars}, rank={rank}")
        self.nvars = nvars
        self.mode = mode
        self.rank = rank
        comps = {}
        for S, p in (components or {}).items():
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly.const(nvars, p)
            if p.nvars != nvars:
                raise ValueError("center polynomial has the wrong number of variables")
            if not 0 <= S < 1 << rank:
                raise ValueError(f"bad basis label {S} for rank {rank}")
            if mode == "poly" and any(e < 0 for e, _ in _exp_items(p)):
                raise ValueError("negative center exponent outside torus mode")
            if p:
                comps[S] = p
        self.components = comps

    @classmethod
    def zero(cls, nvars, mode="poly", rank=3):
        return cls(nvars, mode, rank=rank)

    @classmethod
    def scalar(cls, nvars, c, mode="poly", rank=3):
        return cls(nvars, mode, {0: LaurentPoly.const(nvars, c)}, rank)

    @classmethod
    def basis(cls, nvars, S, mode="poly", rank=3):
        return cls(nvars, mode, {S: LaurentPoly.const(nvars, 1)}, rank)

    def _new(self, components):
        return CanonicalElement(self.nvars, self.mode, components, self.rank)

    def _check(self, other):
        if (self.nvars, self.mode, self.rank) != (other.nvars, other.mode, other.rank):
            raise ValueError("canonical elements live in different rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.components)
        for S, p in other.components.items():
            out[S] = out[S] + p if S in out else p
        return self._new(out)

    def __neg__(self):
        return self._new({S: -p for S, p in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new({S: p * c for S, p in self.components.items()})

    def __mul__(self, other):
        if isinstance(other, CanonicalElement):
            return canonical_mul(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, CanonicalElement):
            return NotImplemented
        return ((self.nvars, self.mode, self.rank, self.components)
                == (other.nvars, other.mode, other.rank, other.components))

    def __bool__(self):
        return bool(self.components)

    def is_homogeneous(self) -> bool:
        return len(self.components) == 1 and next(iter(self.components.values())).is_monomial()

    def degree(self) -> tuple[int, ...]:
        """Degree in ``Z^n`` of a homogeneous element."""
        if not self.is_homogeneous():
            raise ValueError("degree is defined for homogeneous elements only")
        (S, p), = self.components.items()
        (exp, _), = p.items()
        bits = _bits(S)
        return tuple(2 * e + bits[i] if i < self.rank else e for i, e in enumerate(exp))

    def to_text(self) -> str:
        if not self.components:
            return "0"
        out = []
        for S in LABEL_ORDER:
            p = self.components.get(S)
            if p is None:
                continue
            text = format_poly(p)
            if S:
                text = f"{text}*{LABEL_TEXT[S]}" if len(p) == 1 else f"({text})*{LABEL_TEXT[S]}"
            if out and text.startswith("-"):
                out.append(" - " + text[1:])
            else:
                out.append((" + " if out else "") + text)
        return "".join(out)

    __str__ = to_text

    def __repr__(self):
        return f"CanonicalElement({self.mode}, n={self.nvars}, {self.to_text()!r})"

    def to_json(self) -> dict:
        terms = []
        for S in LABEL_ORDER:
            p = self.components.get(S)
            if p is None:
                continue
            terms.append({"basis": LABEL_TEXT[S],
                          "center": [{"exp": list(e), "coef": format_rational(c)} for e, c in p.items()]})
        out = {"mode": self.mode, "nvars": self.nvars, "terms": terms}
        if self.rank != 3:
            out["rank"] = self.rank
        return out

    @classmethod
    def from_json(cls, data: dict) -> CanonicalElement:
        n = data["nvars"]
        comps = {}
        for term in data["terms"]:
            S = LABEL_FROM_TEXT[term["basis"]]
            comps[S] = LaurentPoly(n, [(tuple(c["exp"]), Fraction(c["coef"])) for c in term["center"]])
        return cls(n, data["mode"], comps, data.get("rank", 3))


def _exp_items(p: LaurentPoly):
    for exp, c in p.items():
        for e in exp:
            yield e, c


def canonical_mul(x: CanonicalElement, y: CanonicalElement) -> CanonicalElement:
    x._check(y)
    n = x.nvars
    out: dict[int, LaurentPoly] = {}
    for S, p in x.components.items():
        for T, q in y.components.items():
            shared = _bits(S & T)
            z = LaurentPoly.monomial(tuple(shared[i] if i < 3 else 0 for i in range(n)),
                                     label_product(S, T))
            term = p * q * z
            U = S ^ T
            out[U] = out[U] + term if U in out else term
    return x._new(out)


# --------------------------------------------------------------------------
# normalization

def _validate(w, mode: str, n: int):
    if mode not in ("poly", "torus"):
        raise ValueError(f"unknown mode {mode!r}")
    if n < 3:
        raise ValueError("the Cayley polynomial ring needs n >= 3 generators")
    for g in leaves(w):
        if g.index > n:
            raise ValueError(f"generator t{g.index} out of range (n={n})")
        if g.exp == -1 and mode != "torus":
            raise ValueError("inverse outside torus mode")


def _normalize(w: Word, n: int):
    if isinstance(w, Gen):
        exp = [0] * n
        i = w.index
        if i <= 3:
            if w.exp == -1:
                exp[i - 1] = -1  # t_i^-1 = z_i^-1 t_i
            return 1, exp, 1 << (i - 1)
        exp[i - 1] = w.exp
        return 1, exp, 0
    s1, e1, m1 = _normalize(w.left, n)
    s2, e2, m2 = _normalize(w.right, n)
    exp = [a + b for a, b in zip(e1, e2)]
    shared = m1 & m2
    for i in range(3):
        if shared >> i & 1:
            exp[i] += 1
    return s1 * s2 * label_product(m1, m2), exp, m1 ^ m2


def normalize_word(w: Word, mode: str = "poly", n: int = 3) -> CanonicalElement:
    _validate(w, mode, n)
    sign, exp, mask = _normalize(w, n)
    return CanonicalElement(n, mode, {mask: LaurentPoly.monomial(tuple(exp), sign)})


def normalize_expr(e: Expr, mode: str = "poly", n: int = 3) -> CanonicalElement:
    total = CanonicalElement.zero(n, mode)
    for w, c in e.terms.items():
        if w is UNIT:
            total = total + CanonicalElement.scalar(n, c, mode)
        else:
            total = total + normalize_word(w, mode, n).scale(c)
    return total


def term_to_canonical(term: Term, n: int = 3) -> CanonicalElement:
    exp = term.zexp + (0,) * (n - 3)
    return CanonicalElement(n, "poly", {_mask(term.word): LaurentPoly.monomial(exp, term.sign)})


def word_degree(w, n: int | None = None) -> tuple[int, ...]:
    if w is UNIT:
        return (0,) * (n or 3)
    gens = leaves(w)
    if n is None:
        n = max(3, max(g.index for g in gens))
    deg = [0] * n
    for g in gens:
        deg[g.index - 1] += g.exp
    return tuple(deg)


def center_membership(c: CanonicalElement) -> bool:
    return all(S == 0 for S in c.components)


# --------------------------------------------------------------------------
# oracle: evaluation in the doubled algebra

@lru_cache(maxsize=None)
def oracle_spec(mode: str = "poly", n: int = 3, k: int = 3) -> CDSpec:
    """``(Q[z1..zn], z1, .., zk)``, or its Laurent localization in torus mode."""
    base = BaseRing("polynomial" if mode == "poly" else "laurent", n)
    return CDSpec(base, tuple(base.var(i) for i in range(1, k + 1)))


def _evaluate(w: Word, spec: CDSpec) -> CDElement:
    if isinstance(w, Mul):
        return _evaluate(w.left, spec) * _evaluate(w.right, spec)
    if w.index <= spec.k:
        image = spec.generator(w.index)
    else:
        image = spec.scalar(spec.base.var(w.index))
    if w.exp == -1:
        inv = cd_invert(image)
        if inv is None:
            raise ValueError(f"t{w.index} is not invertible in this base ring")
        image = inv
    return image


def evaluate_oracle(w, mode: str = "poly", n: int = 3) -> CDElement:
    spec = oracle_spec(mode, n)
    if w is UNIT:
        return spec.one()
    if isinstance(w, Expr):
        total = spec.zero()
        for word, c in w.terms.items():
            total = total + evaluate_oracle(word, mode, n) * c
        return total
    _validate(w, mode, n)
    return _evaluate(w, spec)


def to_cd(c: CanonicalElement) -> CDElement:
    k = c.rank
    spec = oracle_spec(c.mode, c.nvars, k)
    zero = spec.base.zero()
    coeffs = [zero] * spec.dim
    for S, p in c.components.items():
        if S >= spec.dim:
            raise ValueError(f"label {LABEL_TEXT[S]} does not exist in a tower of height {k}")
        coeffs[S] = p
    return CDElement(spec, tuple(coeffs))


def from_cd(x: CDElement, mode: str | None = None) -> CanonicalElement:
    base = x.spec.base
    if base.kind not in ("polynomial", "laurent"):
        raise ValueError("only polynomial towers map back to canonical elements")
    mode = mode or ("poly" if base.kind == "polynomial" else "torus")
    return CanonicalElement(base.nvars, mode, {S: p for S, p in enumerate(x.coeffs) if p}, x.spec.k)
