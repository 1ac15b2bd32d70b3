import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autsplit.gftower import (FFElement, NormNotOne, NotDivisor, NotInSubfield,
                              NotPrime, Overflow, build_tower, frobenius,
                              hilbert90_solve, in_subfield, relative_norm,
                              relative_trace, subfield_generator)


# -- independent oracles -------------------------------------------------

def poly_mul_mod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            res[i + j] = (res[i + j] + ai * bj) % p
    m = len(mod) - 1
    for k in range(len(res) - 1, m - 1, -1):
        c = res[k]
        if c:
            for t in range(len(mod)):
                res[k - m + t] = (res[k - m + t] - c * mod[t]) % p
    return res[:m]


def brute_order(tower, x):
    """Multiplicative order by raw repeated polynomial multiplication."""
    vec = list(x.coeffs)
    mod = list(tower.modulus)
    cur = vec[:]
    for k in range(1, tower.q):
        if cur[0] == 1 and all(c == 0 for c in cur[1:]):
            return k
        cur = poly_mul_mod(cur, vec, mod, tower.p)
    raise AssertionError("no order found")


def brute_pow(tower, x, e):
    acc = tower.one()
    for _ in range(e):
        acc = acc * x
    return acc


# -- construction --------------------------------------------------------

def test_prime_field_tower():
    t = build_tower(2, 1, 1, 1)
    assert t.M == 1 and t.q == 2
    assert t.gen() == t.one()


def test_ambient_degree():
    t = build_tower(2, 2, 3, 3)
    assert t.M == 18 and t.q == 2 ** 18


def test_generator_order_exhaustive():
    t = build_tower(3, 1, 2, 2)
    assert t.M == 4
    assert brute_order(t, t.gen()) == 80


def test_not_prime():
    with pytest.raises(NotPrime):
        build_tower(6, 1, 1, 1)


def test_overflow():
    with pytest.raises(Overflow):
        build_tower(2, 5, 5, 5)


def test_modulus_is_irreducible_brute():
    # no monic factor of degree 1..M//2 divides the modulus (naive check)
    t = build_tower(3, 1, 2, 2)
    mod = list(t.modulus)
    p, M = t.p, t.M

    def divides(div):
        rem = mod[:]
        dm = len(div) - 1
        inv = pow(div[-1], -1, p)
        while len(rem) - 1 >= dm and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dm:
                break
            c = rem[-1] * inv % p
            off = len(rem) - 1 - dm
            for k in range(dm + 1):
                rem[off + k] = (rem[off + k] - c * div[k]) % p
        return not any(rem)

    import itertools
    for deg in range(1, M // 2 + 1):
        for lower in itertools.product(range(p), repeat=deg):
            assert not divides(list(lower) + [1])


def test_deterministic_rebuild():
    a = build_tower(2, 1, 3, 1)
    b = build_tower(2, 1, 3, 1)
    assert a is b  # cached
    assert a.descriptor() == b.descriptor()


# -- arithmetic ----------------------------------------------------------

def test_element_roundtrip_coeffs():
    t = build_tower(2, 1, 3, 1)
    for code in range(t.q):
        x = t.from_code(code)
        assert t.from_coeffs(x.coeffs) == x


def test_field_axioms_sampled():
    t = build_tower(3, 1, 2, 2)
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (t.from_code(rng.randrange(t.q)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        if a:
            assert a * a.inverse() == t.one()


# -- frobenius -----------------------------------------------------------

def test_frobenius_identity_cases():
    t = build_tower(2, 2, 3, 1)
    rng = random.Random(0)
    for _ in range(100):
        x = t.from_code(rng.randrange(t.q))
        assert frobenius(x, 0) == x
        assert frobenius(x, t.M) == x


def test_frobenius_is_pth_power():
    t = build_tower(3, 1, 2, 1)
    x = t.gen()  # a nonsquare generator of F_9
    assert frobenius(x, 1) == brute_pow(t, x, 3)
    for code in range(t.q):
        y = t.from_code(code)
        assert frobenius(y, 1) == y ** 3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 12 - 1), st.integers(-6, 12), st.integers(-6, 12))
def test_frobenius_additive_in_exponent(code, e1, e2):
    t = build_tower(2, 2, 3, 2)  # F_{2^12}
    x = t.from_code(code)
    assert frobenius(frobenius(x, e1), e2) == frobenius(x, e1 + e2)


# -- subfields -----------------------------------------------------------

def test_subfield_generator_top_and_bottom():
    t = build_tower(2, 2, 2, 1)  # M = 4
    assert subfield_generator(t, t.M) == t.gen()
    assert subfield_generator(t, 1) == t.one()  # F_2^x is trivial
    with pytest.raises(NotDivisor):
        subfield_generator(t, 3)


def test_subfield_generator_order_and_fixedness():
    t = build_tower(2, 2, 2, 1)  # F_16, j = 2
    z = subfield_generator(t, 2)
    assert z.order() == 3
    assert frobenius(z, 2) == z
    # exhaustively: fixed set of Frobenius^2 = {0} + powers of z
    fixed = {x.log for x in t.elements() if frobenius(x, 2) == x}
    expected = {-1} | {(z ** k).log for k in range(3)}
    assert fixed == expected


def test_subfield_membership_matches_powers_all_divisors():
    t = build_tower(2, 2, 2, 2)  # M = 8
    for j in (1, 2, 4, 8):
        zj = subfield_generator(t, j)
        members = {x.log for x in t.elements() if in_subfield(x, j)}
        expected = {-1} | {(zj ** k).log for k in range(2 ** j - 1)}
        assert members == expected


# -- norms ---------------------------------------------------------------

def test_relative_norm_trivial_cases():
    t = build_tower(2, 2, 3, 1)
    assert relative_norm(t.one(), 2, 3) == t.one()
    x = t.gen()
    assert relative_norm(x, t.M, 1) == x


def test_relative_norm_of_generator():
    t = build_tower(2, 2, 3, 1)  # F_64 over F_4
    z6 = subfield_generator(t, 6)
    n = relative_norm(z6, 2, 3)
    # oracle: direct product of conjugates
    direct = z6 * frobenius(z6, 2) * frobenius(z6, 4)
    assert n == direct
    assert n == z6 ** ((2 ** 6 - 1) // (2 ** 2 - 1))
    assert n.order() == 3  # generates F_4^x


def test_relative_norm_multiplicative():
    t = build_tower(3, 1, 2, 2)
    rng = random.Random(3)
    for _ in range(50):
        x = t.from_code(rng.randrange(t.q))
        y = t.from_code(rng.randrange(t.q))
        assert relative_norm(x * y, 1, 4) == \
            relative_norm(x, 1, 4) * relative_norm(y, 1, 4)


def test_relative_norm_rejects_outsiders():
    t = build_tower(2, 1, 2, 2)
    outside = t.gen()  # generates F_16, not in F_4
    with pytest.raises(NotInSubfield):
        relative_norm(outside, 1, 2)


def test_relative_trace_linear():
    t = build_tower(2, 2, 3, 1)
    z = subfield_generator(t, 2)
    x = t.gen()
    assert relative_trace(x, 2, 3) * z == relative_trace(
        x * z, 2, 3)  # F_4-linearity


# -- Hilbert 90 ----------------------------------------------------------

def test_hilbert90_trivial():
    t = build_tower(2, 1, 2, 2)
    y = hilbert90_solve(t.one(), 1, 2)
    assert y and frobenius(y, 1) == y


def test_hilbert90_m1_forces_one():
    t = build_tower(2, 1, 2, 2)
    y = hilbert90_solve(t.one(), 2, 1)
    assert y
    with pytest.raises(NormNotOne):
        hilbert90_solve(t.gen(), 4, 1)


def test_hilbert90_big_field_example():
    # c = generator of F_4^x inside F_{2^18}, extension F_{2^18}/F_{2^6}
    t = build_tower(2, 2, 3, 3)
    zeta = subfield_generator(t, 2)
    assert relative_norm(zeta, 6, 3) == t.one()
    y = hilbert90_solve(zeta, 6, 3)
    assert frobenius(y, 6) == zeta * y


def test_hilbert90_brute_force_cross_check():
    # F_{2^12}/F_{2^4}: every norm-1 element has a resolvent solution that
    # agrees with brute-force search over generator powers
    t = build_tower(2, 2, 3, 2)
    rng = random.Random(11)
    z12 = t.gen()
    for _ in range(20):
        c = z12 ** rng.randrange(t.q - 1)
        c = c / frobenius(c, 4) if False else c ** (2 ** 4 - 1)  # norm-1 shape
        # c = x^(q0-1) has relative norm 1 for q0 = 2^4
        assert relative_norm(c, 4, 3) == t.one()
        y = hilbert90_solve(c, 4, 3)
        assert frobenius(y, 4) == c * y
        found = None
        cur = t.one()
        for _ in range(t.q - 1):
            if frobenius(cur, 4) == c * cur:
                found = cur
                break
            cur = cur * z12
        assert found is not None


def test_hilbert90_rejects_bad_norm():
    t = build_tower(2, 2, 3, 1)
    with pytest.raises(NormNotOne):
        hilbert90_solve(subfield_generator(t, 6), 2, 3)
