import itertools

import pytest
from hypothesis import given, strategies as st

from cayley.dickson import basis_label
from cayley.expr import UNIT, Expr, Gen, Mul, parse, parse_word
from cayley.normalizer import (
    LABEL_ORDER,
    LABEL_TEXT,
    CanonicalElement,
    RewriteStep,
    Term,
    arrangement_signs,
    canonical_mul,
    center_membership,
    evaluate_oracle,
    from_cd,
    label_product,
    label_word,
    normalize_expr,
    normalize_word,
    replay,
    rewrite_trace,
    term_to_canonical,
    to_cd,
    word_degree,
)
from cayley.rings import LaurentPoly

t1, t2, t3, t4 = Gen(1), Gen(2), Gen(3), Gen(4)


def w(text, **kw):
    return parse_word(text, **kw)


def canon(components, n=3, mode="poly"):
    return CanonicalElement(n, mode, {S: LaurentPoly.monomial(e, c) for S, (e, c) in components.items()})


core_words = st.recursive(st.integers(1, 3).map(Gen), lambda ch: st.builds(Mul, ch, ch), max_leaves=8)
torus_words = st.recursive(st.builds(Gen, st.integers(1, 5), st.sampled_from([1, -1])),
                           lambda ch: st.builds(Mul, ch, ch), max_leaves=7)
poly_words = st.recursive(st.integers(1, 5).map(Gen), lambda ch: st.builds(Mul, ch, ch), max_leaves=7)


def test_anticommute():
    assert normalize_word(w("t2*t1")) == canon({3: ((0, 0, 0), -1)})


def test_square_of_t1t2():
    assert normalize_word(w("(t1*t2)*(t1*t2)")) == canon({0: ((1, 1, 0), -1)})


def test_right_nested_triple():
    assert normalize_word(w("t1*(t2*t3)")) == canon({7: ((0, 0, 0), -1)})


def test_square_of_right_nested_triple():
    assert normalize_word(w("(t1*(t2*t3))*(t1*(t2*t3))")) == canon({0: ((1, 1, 1), 1)})


def test_cayley_antiassociativity_expr():
    assert not normalize_expr(parse("(t1*t2)*t3 + t1*(t2*t3)"))
    assert not normalize_expr(parse("(t2*t1)*t3 + (t1*t2)*t3"))


def test_trace_single_ac3_step():
    steps = rewrite_trace(w("t3*(t1*t2)"))
    assert len(steps) == 1
    assert steps[0].rule == "ac3"
    assert str(steps[0]) == "ac3: t3*(t1*t2)  ->  -(t1*t2)*t3"


def test_trace_uses_moufang_middle():
    word = w("(t1*t2)*(t3*t1)")
    steps = rewrite_trace(word)
    assert "Moufang-middle" in [s.rule for s in steps]
    final = term_to_canonical(replay(word, steps))
    assert final == normalize_word(word) == from_cd(evaluate_oracle(word))
    assert final.to_text() == "-1*z1*t2t3"


def test_trace_square_central():
    steps = rewrite_trace(w("t1*t1"))
    assert [s.rule for s in steps] == ["square-central(1)"]
    assert steps[0].after == Term(1, (1, 0, 0), None)


def test_trace_rule_vocabulary():
    allowed = {"C-antiassoc", "Moufang-middle", "Artin-regroup", "unit"}
    allowed |= {f"a{i}" for i in range(1, 6)} | {f"ac{i}" for i in range(1, 4)}
    allowed |= {f"square-central({i})" for i in (1, 2, 3)}
    allowed |= {f"C-anticommute({i},{j})" for i, j in itertools.combinations((1, 2, 3), 2)}
    for word in itertools.islice(_all_core_words(5), 0, None, 7):
        for step in rewrite_trace(word):
            assert step.rule in allowed


def test_replay_rejects_broken_chains():
    word = w("(t1*t2)*(t3*t1)")
    steps = rewrite_trace(word)
    with pytest.raises(ValueError):
        replay(word, steps[1:])
    bad = steps[:-1] + [RewriteStep(steps[-1].rule, steps[-1].before, Term(1, (0, 0, 0), Mul(t1, t1)))]
    with pytest.raises(ValueError):
        replay(word, bad)


def test_trace_refuses_extra_generators():
    with pytest.raises(ValueError):
        rewrite_trace(Mul(t1, t4))
    with pytest.raises(ValueError):
        rewrite_trace(Gen(1, -1))


def test_arrangement_signs_are_consistent():
    signs = arrangement_signs()
    # 12 arrangements of a distinct triple, each with a well-defined sign
    assert len(signs) == 12
    assert signs[Mul(Mul(t1, t2), t3)] == 1
    assert signs[Mul(t1, Mul(t2, t3))] == -1
    assert signs[Mul(t3, Mul(t1, t2))] == -1


def test_label_products_agree_with_oracle():
    for S, T in itertools.product(LABEL_ORDER, repeat=2):
        u = UNIT if S == 0 else label_word(S)
        v = UNIT if T == 0 else label_word(T)
        word = Mul(u, v) if u is not UNIT and v is not UNIT else (v if u is UNIT else u)
        if word is UNIT:
            continue
        expected = from_cd(evaluate_oracle(word))
        assert expected == canon({S ^ T: (tuple(int(bool(S & T & b)) for b in (1, 2, 4)), label_product(S, T))})


def test_oracle_examples():
    x = evaluate_oracle(w("t2*t1"))
    assert x.support() == [3] and x.coeffs[3] == -1
    inv = evaluate_oracle(w("t1^-1", mode="torus"), mode="torus")
    assert inv.support() == [1] and inv.coeffs[1] == LaurentPoly.var(3, 1, -1)


def test_word_degree_examples():
    assert word_degree(w("t1*(t2*t3)")) == (1, 1, 1)
    assert word_degree(w("t1^-1", mode="torus")) == (-1, 0, 0)
    assert normalize_word(w("t1^-1", mode="torus"), "torus").degree() == (-1, 0, 0)


def test_center_membership_examples():
    assert center_membership(normalize_word(w("t1*t1")))
    assert not center_membership(normalize_word(w("t1")))
    assert center_membership(normalize_word(t4, n=4))


def test_extra_generators_are_central():
    assert normalize_word(Mul(t4, t1), n=4) == normalize_word(Mul(t1, t4), n=4)
    assert normalize_word(Mul(Mul(t1, t4), t2), n=4) == normalize_word(Mul(t1, Mul(t4, t2)), n=4)


def test_torus_inverses():
    for n in (3, 4, 5):
        for i in range(1, n + 1):
            for word in (Mul(Gen(i), Gen(i, -1)), Mul(Gen(i, -1), Gen(i))):
                assert normalize_word(word, "torus", n) == CanonicalElement.scalar(n, 1, "torus")


def test_validation():
    with pytest.raises(ValueError):
        normalize_word(Gen(1, -1))
    with pytest.raises(ValueError):
        normalize_word(t4)
    with pytest.raises(ValueError):
        normalize_word(t1, n=2)
    with pytest.raises(ValueError):
        CanonicalElement(3, "poly", {1: LaurentPoly.var(3, 1, -1)})


def test_text_form():
    c = normalize_expr(parse("2*t1 - (t2*t3) + (t1*t1)*t2 + 3"))
    assert c.to_text() == "3 + 2*t1 + 1*z1*t2 - 1*t2t3"
    c = normalize_expr(parse("(t1*t1)*t2 + t2"))
    assert c.to_text() == "(1 + 1*z1)*t2"
    assert CanonicalElement.zero(3).to_text() == "0"


def test_json_schema():
    c = normalize_word(w("(t1*t2)*(t1*t2)"))
    assert c.to_json() == {"mode": "poly", "nvars": 3,
                           "terms": [{"basis": "1", "center": [{"exp": [1, 1, 0], "coef": "-1"}]}]}


def _all_core_words(max_len):
    from cayley.expr import iter_words_upto
    return iter_words_upto(max_len, [1, 2, 3])


def test_oracle_equivalence_up_to_length_5():
    for word in _all_core_words(5):
        assert to_cd(normalize_word(word)) == evaluate_oracle(word)


@given(core_words)
def test_oracle_equivalence_long_words(word):
    assert to_cd(normalize_word(word)) == evaluate_oracle(word)


@given(torus_words)
def test_oracle_equivalence_torus(word):
    assert to_cd(normalize_word(word, "torus", 5)) == evaluate_oracle(word, "torus", 5)


@given(poly_words)
def test_oracle_equivalence_extra_generators(word):
    assert to_cd(normalize_word(word, "poly", 5)) == evaluate_oracle(word, "poly", 5)


@given(torus_words, torus_words)
def test_multiplicativity(u, v):
    prod = canonical_mul(normalize_word(u, "torus", 5), normalize_word(v, "torus", 5))
    assert normalize_word(Mul(u, v), "torus", 5) == prod


@given(torus_words)
def test_degree_compatibility(word):
    assert normalize_word(word, "torus", 5).degree() == word_degree(word, 5)


@given(torus_words)
def test_json_round_trip(word):
    c = normalize_word(word, "torus", 5)
    assert CanonicalElement.from_json(c.to_json()) == c


@given(st.lists(st.tuples(core_words, st.fractions(-5, 5, max_denominator=5)), max_size=4))
def test_expr_is_linear(pairs):
    e = Expr()
    total = CanonicalElement.zero(3)
    for word, c in pairs:
        e = e + Expr.word(word, c)
        total = total + normalize_word(word).scale(c)
    assert normalize_expr(e) == total


def test_labels_match_tower_labels():
    for S in LABEL_ORDER:
        assert LABEL_TEXT[S].replace("t", "v") == basis_label(S, 3)
