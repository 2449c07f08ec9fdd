"""Nonassociative words, their rational linear combinations, a parser and a printer.

Grammar (whitespace-insensitive, ``*`` mandatory between factors)::

    expr     := ["+"|"-"] term (("+"|"-") term)*
    term     := rational ["*" chain] | chain
    chain    := factor ("*" factor)*
    factor   := primary ["^" ("-1" | integer)]
    primary  := "t" index | "(" expr ")"
    rational := integer ["/" positive-integer]

In ``strict`` mode a chain may hold at most two factors: every product of
three or more factors needs explicit parentheses, because reassociating
changes the value in a nonassociative algebra. ``left`` mode nests chains to
the left and emits a warning when it does so.
"""
from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from .rings import as_rational, format_rational


@dataclass(frozen=True)
class Gen:
    index: int
    exp: int = 1

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("generator indices start at 1")
        if self.exp not in (1, -1):
            raise ValueError("generator exponent must be +1 or -1")


@dataclass(frozen=True)
class Mul:
    left: "Word"
    right: "Word"


Word = Union[Gen, Mul]


class _Unit:
    """The empty product, used as the key of scalar terms in an :class:`Expr`."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNIT"

    def __reduce__(self):
        return (_Unit, ())


UNIT = _Unit()


def t(i: int, exp: int = 1) -> Gen:
    return Gen(i, exp)


def leaves(w: Word) -> list[Gen]:
    if isinstance(w, Gen):
        return [w]
    return leaves(w.left) + leaves(w.right)


def word_length(w: Word) -> int:
    if isinstance(w, Gen):
        return 1
    return word_length(w.left) + word_length(w.right)


def shape(w: Word):
    """Parenthesization shape with the generators erased."""
    if isinstance(w, Gen):
        return "."
    return (shape(w.left), shape(w.right))


class Expr:
    """Finite rational linear combination of words (and the unit)."""

    __slots__ = ("terms",)
    __hash__ = None

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            c = as_rational(c)
            if c:
                clean[w] = c
        self.terms = clean

    @classmethod
    def word(cls, w: Word, coef=1) -> Expr:
        return cls({w: coef})

    @classmethod
    def scalar(cls, c) -> Expr:
        return cls({UNIT: c})

    def __add__(self, other: Expr) -> Expr:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Expr(out)

    def __neg__(self):
        return Expr({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> Expr:
        return Expr({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Expr):
            return self.scale(other)
        out = {}
        for (u, a), (v, b) in itertools.product(self.terms.items(), other.terms.items()):
            if u is UNIT:
                w = v
            elif v is UNIT:
                w = u
            else:
                w = Mul(u, v)
            out[w] = out.get(w, 0) + a * b
        return Expr(out)

    def __eq__(self, other):
        if not isinstance(other, Expr):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Expr({format_expr(self)!r})"

    def __str__(self):
        return format_expr(self)


# --------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None, text: str | None = None):
        self.msg = msg
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|t(?P<gen>\d+)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", len(text) - len(text[pos:].lstrip()), text)
        if m.group("num") is not None:
            toks.append(("num", m.group("num"), m.start("num")))
        elif m.group("gen") is not None:
            toks.append(("gen", m.group("gen"), m.start("gen") - 1))
        else:
            toks.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, n, mode, assoc):
        self.text = text
        self.n = n
        self.mode = mode
        self.assoc = assoc
        self.toks = _tokenize(text)
        self.i = 0
        self.reassociated = False

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            self.error(f"expected {op!r}, found {found}")
        return self.take()

    def is_op(self, op):
        tok = self.peek()
        return tok[0] == "op" and tok[1] == op

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> Expr:
        sign = 1
        if self.is_op("-") or self.is_op("+"):
            sign = -1 if self.take()[1] == "-" else 1
        total = self.term().scale(sign)
        while self.is_op("+") or self.is_op("-"):
            sign = -1 if self.take()[1] == "-" else 1
            total = total + self.term().scale(sign)
        return total

    def rational(self):
        num = int(self.take()[1])
        if self.is_op("/"):
            self.take()
            tok = self.peek()
            if tok[0] != "num":
                self.error("expected a positive integer denominator")
            den = int(self.take()[1])
            if den == 0:
                self.error("zero denominator", tok)
            return Fraction(num, den)
        return num

    def term(self) -> Expr:
        if self.peek()[0] == "num":
            c = self.rational()
            if self.is_op("*"):
                self.take()
                return self.chain().scale(c)
            return Expr.scalar(c)
        return self.chain()

    def chain(self) -> Expr:
        start = self.peek()
        factors = [self.factor()]
        while self.is_op("*"):
            self.take()
            factors.append(self.factor())
        if len(factors) > 2:
            if self.assoc == "strict":
                raise ParseError("ambiguous product: parenthesize products of three or more factors",
                                 start[2], self.text)
            self.reassociated = True
        result = factors[0]
        for f in factors[1:]:
            result = result * f
        return result

    def factor(self) -> Expr:
        tok = self.peek()
        if tok[0] == "gen":
            self.take()
            idx = int(tok[1])
            if not 1 <= idx <= self.n:
                self.error(f"generator t{idx} out of range (n={self.n})", tok)
            base = Expr.word(Gen(idx))
            is_gen = True
        elif self.is_op("("):
            self.take()
            base = self.expr()
            self.expect(")")
            is_gen = False
        else:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            self.error(f"expected a generator or '(', found {found}")
        if not self.is_op("^"):
            return base
        self.take()
        etok = self.peek()
        if self.is_op("-"):
            self.take()
            one = self.peek()
            if one[0] != "num" or one[1] != "1":
                self.error("only the exponent -1 may be negative", etok)
            self.take()
            if not is_gen:
                self.error("inverses are only allowed on generators", etok)
            if self.mode != "torus":
                self.error("inverse outside torus mode", etok)
            return Expr.word(Gen(idx, -1))
        if etok[0] != "num":
            self.error("expected an exponent", etok)
        k = int(self.take()[1])
        if k < 1:
            self.error("exponent must be -1 or a positive integer", etok)
        result = base
        for _ in range(k - 1):
            result = result * base
        return result


def parse(text: str, n: int = 3, mode: str = "poly", assoc: str = "strict") -> Expr:
    if n < 1:
        raise ValueError("need at least one generator")
    if mode not in ("poly", "torus"):
        raise ValueError(f"unknown mode {mode!r}")
    if assoc not in ("strict", "left"):
        raise ValueError(f"unknown associativity {assoc!r}")
    p = _Parser(text, n, mode, assoc)
    e = p.parse()
    if p.reassociated:
        warnings.warn("left-associative mode: unparenthesized products were nested to the left",
                      stacklevel=2)
    return e


def parse_word(text: str, n: int = 3, mode: str = "poly", assoc: str = "strict") -> Word:
    """Parse ``text`` and require a single word with coefficient 1."""
    e = parse(text, n, mode, assoc)
    if len(e.terms) != 1:
        raise ParseError("expected a single word")
    (w, c), = e.terms.items()
    if w is UNIT or c != 1:
        raise ParseError("expected a single word with coefficient 1")
    return w


# --------------------------------------------------------------------------
# printing

def format_word(w: Word) -> str:
    if isinstance(w, Gen):
        return f"t{w.index}" if w.exp == 1 else f"t{w.index}^-1"
    return f"{_side(w.left)}*{_side(w.right)}"


def _side(w: Word) -> str:
    s = format_word(w)
    return f"({s})" if isinstance(w, Mul) else s


def word_sort_key(w) -> tuple:
    if w is UNIT:
        return (0, "")
    return (word_length(w), format_word(w))


def format_expr(e: Expr) -> str:
    items = sorted(e.terms.items(), key=lambda kv: word_sort_key(kv[0]))
    if not items:
        return "0"
    out = []
    for k, (w, c) in enumerate(items):
        neg = c < 0
        mag = abs(c)
        if w is UNIT:
            body = format_rational(mag)
        elif mag == 1:
            body = format_word(w)
        else:
            body = f"{format_rational(mag)}*{format_word(w)}"
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format(obj) -> str:  # noqa: A001 - mirrors the public operation name
    if isinstance(obj, Expr):
        return format_expr(obj)
    if isinstance(obj, (Gen, Mul)):
        return format_word(obj)
    to_text = getattr(obj, "to_text", None)
    if to_text is None:
        raise TypeError(f"cannot format {type(obj).__name__}")
    return to_text()


# --------------------------------------------------------------------------
# enumeration

@lru_cache(maxsize=None)
def shapes(n_leaves: int) -> tuple:
    """All full binary tree shapes with ``n_leaves`` leaves (Catalan many)."""
    if n_leaves == 1:
        return (".",)
    out = []
    for k in range(1, n_leaves):
        for a in shapes(k):
            for b in shapes(n_leaves - k):
                out.append((a, b))
    return tuple(out)


def _fill(sh, gens: Iterator[Gen]) -> Word:
    if sh == ".":
        return next(gens)
    return Mul(_fill(sh[0], gens), _fill(sh[1], gens))


def iter_words(n_leaves: int, gens) -> Iterator[Word]:
    """Every fully parenthesized word with ``n_leaves`` leaves drawn from ``gens``."""
    gens = [g if isinstance(g, Gen) else Gen(g) for g in gens]
    for sh in shapes(n_leaves):
        for assignment in itertools.product(gens, repeat=n_leaves):
            yield _fill(sh, iter(assignment))


def iter_words_upto(max_leaves: int, gens) -> Iterator[Word]:
    for n in range(1, max_leaves + 1):
        yield from iter_words(n, gens)
