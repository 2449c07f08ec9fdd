"""Test-side oracles that share no code with the package.

``pair_mul`` multiplies Cayley-Dickson elements stored as nested pairs
``(a, b)`` meaning ``a + v b``, directly from the doubling formula.
"""
from fractions import Fraction
import itertools


def _is_pair(x):
    return isinstance(x, tuple)


def p_add(x, y):
    if _is_pair(x):
        return (p_add(x[0], y[0]), p_add(x[1], y[1]))
    return x + y


def p_neg(x):
    if _is_pair(x):
        return (p_neg(x[0]), p_neg(x[1]))
    return -x


def p_scale(c, x):
    if _is_pair(x):
        return (p_scale(c, x[0]), p_scale(c, x[1]))
    return c * x


def p_conj(x):
    if _is_pair(x):
        return (p_conj(x[0]), p_neg(x[1]))
    return x


def pair_mul(x, y, mus):
    if not mus:
        return x * y
    (a, b), (c, d) = x, y
    mu, lower = mus[-1], mus[:-1]
    first = p_add(pair_mul(a, c, lower), p_scale(mu, pair_mul(d, p_conj(b), lower)))
    second = p_add(pair_mul(p_conj(a), d, lower), pair_mul(c, b, lower))
    return (first, second)


def p_zero(k, zero=0):
    return zero if k == 0 else (p_zero(k - 1, zero), p_zero(k - 1, zero))


def p_scalar(k, c, zero=0):
    return c if k == 0 else (p_scalar(k - 1, c, zero), p_zero(k - 1, zero))


def p_generator(k, i, zero=0, one=1):
    """``v_i`` in a tower of height ``k``."""
    if k == i:
        return (p_zero(k - 1, zero), p_scalar(k - 1, one, zero))
    return (p_generator(k - 1, i, zero, one), p_zero(k - 1, zero))


def flatten(x):
    if _is_pair(x):
        return flatten(x[0]) + flatten(x[1])
    return [x]


def unflatten(v):
    if len(v) == 1:
        return v[0]
    h = len(v) // 2
    return (unflatten(v[:h]), unflatten(v[h:]))


def basis_element(k, S, mus):
    """``e_S``: left-nested product of the ``v_i`` with ``i`` in ``S``, increasing."""
    x = p_scalar(k, 1)
    for i in range(1, k + 1):
        if S >> (i - 1) & 1:
            x = pair_mul(x, p_generator(k, i), mus)
    return x


def basis_signs(k, mus):
    signs = []
    for S in range(1 << k):
        flat = flatten(basis_element(k, S, mus))
        nz = [i for i, c in enumerate(flat) if c]
        assert nz == [S] and flat[S] in (1, -1)
        signs.append(flat[S])
    return signs


def oracle_product(k, mus, x_coeffs, y_coeffs):
    """Product of two elements given in ``e_S`` coordinates, returned in ``e_S`` coordinates."""
    signs = basis_signs(k, tuple(Fraction(1) for _ in mus))
    x = unflatten([c * s for c, s in zip(x_coeffs, signs)])
    y = unflatten([c * s for c, s in zip(y_coeffs, signs)])
    return [c * s for c, s in zip(flatten(pair_mul(x, y, tuple(mus))), signs)]


# Hamilton's quaternion units with v1 = i, v2 = j, v1v2 = k
QUATERNION_TABLE = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}
QUATERNION_UNITS = ("1", "i", "j", "k")


def catalan(n):
    out = 1
    for i in range(n):
        out = out * 2 * (2 * i + 1) // (i + 2)
    return out


def count_words(max_len, ngens):
    return sum(catalan(n - 1) * ngens ** n for n in range(1, max_len + 1))


def lattice_reachable(a, b, gens=((0, 1), (1, 1), (2, 1)), bound=6):
    """Is ``(a, b)`` a sum of vectors from ``gens``? (counting with bounded multiplicities)"""
    for counts in itertools.product(range(bound + 1), repeat=len(gens)):
        x = sum(c * g[0] for c, g in zip(counts, gens))
        y = sum(c * g[1] for c, g in zip(counts, gens))
        if (x, y) == (a, b):
            return True
    return False
