import random

import pytest
from hypothesis import given, strategies as st

from cayley.dickson import CDSpec, cd_invert
from cayley.expr import Gen, Mul, iter_words_upto, parse_word
from cayley.normalizer import (
    CanonicalElement,
    canonical_mul,
    normalize_word,
    oracle_spec,
    to_cd,
)
from cayley.presentations import (
    AlgebraHandle,
    PresentationSpec,
    build_torus,
    check_cayley_generators,
    hamilton_canonical,
    hamilton_normalize,
    specialize,
    specialize_octonion,
    specialized_table,
)
from cayley.rings import BaseRing, LaurentPoly

Q = BaseRing()
t1, t2 = Gen(1), Gen(2)

hamilton_words = st.recursive(st.integers(1, 2).map(Gen), lambda ch: st.builds(Mul, ch, ch), max_leaves=10)


def random_canonical(rng, n=3):
    comps = {}
    for S in range(8):
        if rng.random() < 0.6:
            terms = [(tuple(rng.randint(0, 2) for _ in range(n)), rng.randint(-5, 5)) for _ in range(2)]
            comps[S] = LaurentPoly(n, terms)
    return CanonicalElement(n, "poly", comps)


def test_specialize_square():
    c = normalize_word(parse_word("(t1*t2)*(t1*t2)"))
    x = specialize_octonion(c, (-1, -1, -1))
    assert x == CDSpec(Q, (-1, -1, -1)).scalar(-1)


def test_specialize_generator():
    for mus in [(-1, -1, -1), (2, 3, 5)]:
        x = specialize_octonion(normalize_word(t1), mus)
        assert x == CDSpec(Q, mus).generator(1)


def test_specialize_rejects_bad_inputs():
    with pytest.raises(ValueError):
        specialize(normalize_word(t1), (1, 1))
    with pytest.raises(ValueError):
        specialize(normalize_word(t1, "torus"), (1, 1, 1))
    with pytest.raises(ValueError):
        specialize(normalize_word(t1, n=4), (1, 1, 1))


def test_specialized_basis_is_a_bijection():
    for mus in [(-1, -1, -1), (1, 1, 1), (2, 3, 5)]:
        spec = CDSpec(Q, mus)
        images = [specialize_octonion(CanonicalElement.basis(3, S), mus) for S in range(8)]
        assert images == [spec.basis(S) for S in range(8)]


@pytest.mark.parametrize("seed", range(3))
def test_specialize_is_a_homomorphism(seed):
    rng = random.Random(seed)
    for mus in [(-1, -1, -1), (2, 3, 5)]:
        for _ in range(10):
            x, y = random_canonical(rng), random_canonical(rng)
            assert specialize_octonion(canonical_mul(x, y), mus) == (
                specialize_octonion(x, mus) * specialize_octonion(y, mus))


def test_hamilton_examples():
    assert hamilton_normalize(parse_word("t2*t1")) == (-1, 1, 1)
    assert hamilton_normalize(parse_word("(t1*t2)*(t1*t2)")) == (-1, 2, 2)
    with pytest.raises(ValueError):
        hamilton_normalize(parse_word("t1*t3"))
    with pytest.raises(ValueError):
        hamilton_normalize(Gen(1, -1))


def test_hamilton_canonical_form():
    c = hamilton_canonical(-1, 3, 2)
    assert c.rank == 2 and c.to_text() == "-1*z1*z2*t1"


def _hamilton_oracle(word, mode="poly"):
    # fold through the k = 2 tower over Q[z1, z2]
    spec = oracle_spec(mode, 2, 2)
    if isinstance(word, Gen):
        g = spec.generator(word.index)
        return cd_invert(g) if word.exp == -1 else g
    return _hamilton_oracle(word.left, mode) * _hamilton_oracle(word.right, mode)


def test_hamilton_matches_oracle_up_to_length_6():
    for word in iter_words_upto(6, [1, 2]):
        coef, ell, m = hamilton_normalize(word)
        assert to_cd(hamilton_canonical(coef, ell, m)) == _hamilton_oracle(word)


@given(hamilton_words)
def test_hamilton_matches_oracle_long(word):
    coef, ell, m = hamilton_normalize(word)
    assert to_cd(hamilton_canonical(coef, ell, m)) == _hamilton_oracle(word)


def test_quaternion_specialization_table():
    report = specialized_table("quaternion", (-1, -1))
    assert report.matches_tower and report.associative and not report.commutative
    assert len(report.table) == 4


@pytest.mark.parametrize("mus", [(-1, -1, -1), (1, 1, 1), (2, 3, 5)])
def test_octonion_specialization_table(mus):
    report = specialized_table("octonion", mus)
    assert report.matches_tower and not report.associative and not report.commutative
    assert report.to_json()["mismatches"] == []


def test_octonion_torus_handles():
    for n in (3, 4, 5):
        h = build_torus(PresentationSpec("octonion", "torus", n))
        rel = h.check_relations()
        assert rel["ok"]
        assert h.normalize("t1^-1*t1") == h.one()
        if n >= 4:
            t4 = h.generator(4)
            assert h.is_central(t4)
            assert h.mul(t4, h.invert(t4)) == h.one()


def test_quaternion_torus():
    h = build_torus(PresentationSpec("quaternion", "torus", 2))
    a, b = h.generator(1), h.generator(2)
    assert h.mul(a, b) == -h.mul(b, a)
    assert h.invert(a) == h.generator(1, -1)
    assert h.invert(b) == h.generator(2, -1)
    assert h.mul(a, h.invert(a)) == h.one()


def test_handle_inverse_of_non_unit():
    h = AlgebraHandle(PresentationSpec("octonion", "poly", 3))
    assert h.invert(h.generator(1)) is None


def test_presentation_spec_validation():
    with pytest.raises(ValueError):
        PresentationSpec("sedenion")
    with pytest.raises(ValueError):
        PresentationSpec("octonion", n=2)
    with pytest.raises(ValueError):
        PresentationSpec("octonion", mus=(1, 0, 1))
    with pytest.raises(ValueError):
        build_torus(PresentationSpec("octonion", "torus", 3, (1, 1, 1)))


@given(st.lists(st.tuples(st.integers(1, 5), st.sampled_from([1, -1])), min_size=1, max_size=5),
       st.lists(st.tuples(st.integers(1, 5), st.sampled_from([1, -1])), min_size=1, max_size=5))
def test_torus_degree_additivity(a, b):
    h = build_torus(PresentationSpec("octonion", "torus", 5))

    def build(gens):
        word = Gen(*gens[0])
        for g in gens[1:]:
            word = Mul(word, Gen(*g))
        return h.normalize(word)

    x, y = build(a), build(b)
    assert h.degree(h.mul(x, y)) == tuple(p + q for p, q in zip(h.degree(x), h.degree(y)))


def test_cayley_generators_of_towers():
    for mus in [(-1, -1, -1), (2, 3, 5)]:
        spec = CDSpec(Q, mus)
        report = check_cayley_generators(*(spec.generator(i) for i in (1, 2, 3)))
        assert report.relations_hold and report.squares_central
        assert report.constants == list(mus)
        assert report.to_json()["constants"] == [str(m) for m in mus]


def test_cayley_generators_failure_has_witnesses():
    spec = CDSpec(Q, (-1, -1, -1))
    v1, v2 = spec.generator(1), spec.generator(2)
    report = check_cayley_generators(v1, v2, v1 + v2)
    assert not report.relations_hold
    assert {w["relation"] for w in report.witnesses} >= {"a3a1 = -a1a3"}
