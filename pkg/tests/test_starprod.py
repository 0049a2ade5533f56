import random

import pytest

from qwk.pbw import multiply
from qwk.rationals import Q
from qwk.starprod import (
    PolyElement,
    WeylContext,
    desymmetrize,
    gutt,
    moyal_weyl,
    poly_context_qn,
    poly_generator,
    poly_monomial,
    symmetrize,
    weyl_from_gram,
)
from qwk.superalgebra import GElement, bracket, dim_of, gen_parity
from qwk.walgebra import build_symplectic, nilpotent_datum


@pytest.fixture(scope="module")
def weyl22():
    """Symplectic superspace 2|2: hyperbolic even pair and symmetric odd pair."""
    parities = (0, 0, 1, 1)
    omega = {(0, 1): Q(1), (1, 0): Q(-1), (2, 3): Q(1), (3, 2): Q(1)}
    return WeylContext(parities, omega, labels=["x", "y", "t1", "t2"])


@pytest.fixture(scope="module")
def qn2():
    return poly_context_qn(2)


def pmul(ctx, p, q):
    out = PolyElement(ctx, {})
    for (kp, hp), cp in p.terms.items():
        for (kq, hq), cq in q.terms.items():
            word = ctx.expand_key(kp) + ctx.expand_key(kq)
            out = out + poly_monomial(ctx, word, coeff=cp * cq, hbar=hp + hq)
    return out


def star_commutator(star, ctx, p, q):
    kp = next(iter(p.terms))[0]
    kq = next(iter(q.terms))[0]
    sign = Q((-1) ** (ctx.monomial_parity(kp) * ctx.monomial_parity(kq)))
    return star(p, q) - sign * star(q, p)


def test_moyal_defining_relation_on_basis_pairs(weyl22):
    ctx = weyl22
    for a in range(4):
        for b in range(4):
            va, vb = poly_generator(ctx, a), poly_generator(ctx, b)
            got = star_commutator(moyal_weyl, ctx, va, vb)
            want = PolyElement(ctx, {(ctx.unit_key(), 2): ctx.omega.get((a, b), Q(0))})
            assert got == want


def test_moyal_defining_relation_on_walgebra_symplectic_space():
    d = nilpotent_datum(3, "minimal")
    symp = build_symplectic(d)
    parities = tuple(gen_parity(3, k) for k in symp.space)
    pos = {k: t for t, k in enumerate(symp.space)}
    gram = [[symp.gram_value(a, b) for b in symp.space] for a in symp.space]
    ctx = weyl_from_gram(parities, gram)
    for a in range(len(symp.space)):
        for b in range(len(symp.space)):
            got = star_commutator(moyal_weyl, ctx,
                                  poly_generator(ctx, a), poly_generator(ctx, b))
            want = PolyElement(ctx, {(ctx.unit_key(), 2): gram[a][b]})
            assert got == want


def test_moyal_constant_multiplies(weyl22):
    ctx = weyl22
    one = PolyElement(ctx, {(ctx.unit_key(), 0): Q(3, 2)})
    q = poly_monomial(ctx, [0, 1, 2])
    assert moyal_weyl(one, q) == Q(3, 2) * q


def test_moyal_zero_order_part_is_product(weyl22):
    ctx = weyl22
    rng = random.Random(8)
    for _ in range(40):
        wp = [rng.randrange(4) for _ in range(rng.randint(0, 2))]
        wq = [rng.randrange(4) for _ in range(rng.randint(0, 2))]
        p, q = poly_monomial(ctx, wp), poly_monomial(ctx, wq)
        if not p or not q:
            continue
        s = moyal_weyl(p, q)
        assert s.hbar_coefficient(0) == pmul(ctx, p, q)
        assert all(h % 2 == 0 for (_k, h) in s.terms)


def _poisson(ctx, base, p, q):
    """Super Poisson bracket via Leibniz, for polynomial (hbar-free) inputs."""
    out = PolyElement(ctx, {})
    for (kp, _), cp in p.terms.items():
        for (kq, _), cq in q.terms.items():
            term = _poisson_words(ctx, base, ctx.expand_key(kp), ctx.expand_key(kq))
            out = out + cp * cq * term
    return out


def _poisson_words(ctx, base, wp, wq):
    if not wp or not wq:
        return PolyElement(ctx, {})
    if len(wp) == 1 and len(wq) == 1:
        return base(wp[0], wq[0])
    if len(wp) > 1:
        a, rest = wp[0], wp[1:]
        prest = sum(ctx.parities[g] for g in rest) % 2
        pq = sum(ctx.parities[g] for g in wq) % 2
        left = pmul(ctx, poly_monomial(ctx, [a]), _poisson_words(ctx, base, rest, wq))
        right = Q((-1) ** (prest * pq)) * \
            pmul(ctx, _poisson_words(ctx, base, [a], wq), poly_monomial(ctx, rest))
        return left + right
    a = wq[0]
    rest = wq[1:]
    pa = ctx.parities[wp[0]]
    pg = ctx.parities[a]
    left = pmul(ctx, _poisson_words(ctx, base, wp, [a]), poly_monomial(ctx, rest))
    right = Q((-1) ** (pa * pg)) * \
        pmul(ctx, poly_monomial(ctx, [a]), _poisson_words(ctx, base, wp, rest))
    return left + right


def test_moyal_hbar2_commutator_is_poisson(weyl22):
    ctx = weyl22

    def base(a, b):
        return PolyElement(ctx, {(ctx.unit_key(), 0): ctx.omega.get((a, b), Q(0))})

    words = [[g] for g in range(4)] + \
        [[a, b] for a in range(4) for b in range(4)]
    for wp in words:
        for wq in words:
            p, q = poly_monomial(ctx, wp), poly_monomial(ctx, wq)
            if not p or not q:
                continue
            comm = star_commutator(moyal_weyl, ctx, p, q)
            assert comm.hbar_coefficient(2) == _poisson(ctx, base, p, q)


def test_moyal_associativity_seeded(weyl22):
    ctx = weyl22
    rng = random.Random(99)
    for _ in range(60):
        elems = []
        for _t in range(3):
            w = [rng.randrange(4) for _ in range(rng.randint(0, 2))]
            elems.append(poly_monomial(ctx, w, coeff=Q(rng.randint(-2, 2), 1)))
        p, q, r = elems
        lhs = moyal_weyl(moyal_weyl(p, q), r).hbar_truncate(4)
        rhs = moyal_weyl(p, moyal_weyl(q, r)).hbar_truncate(4)
        assert lhs == rhs


def test_gutt_defining_relation_all_basis_pairs(qn2):
    ctx = qn2
    for a in range(dim_of(2)):
        for b in range(dim_of(2)):
            p, q = poly_generator(ctx, a), poly_generator(ctx, b)
            got = star_commutator(gutt, ctx, p, q)
            br = bracket(GElement(2, {a: Q(1)}), GElement(2, {b: Q(1)}))
            want = PolyElement(ctx, {})
            for g, c in br.terms.items():
                want = want + c * PolyElement(
                    ctx, {(ctx.monomial_key((g,)), 2): Q(1)})
            assert got == want


def test_gutt_hbar2_commutator_is_bracket_poisson(qn2):
    ctx = qn2

    def base(a, b):
        br = bracket(GElement(2, {a: Q(1)}), GElement(2, {b: Q(1)}))
        out = PolyElement(ctx, {})
        for g, c in br.terms.items():
            out = out + c * poly_generator(ctx, g)
        return out

    rng = random.Random(4)
    for _ in range(25):
        wp = [rng.randrange(dim_of(2)) for _ in range(rng.randint(1, 2))]
        wq = [rng.randrange(dim_of(2)) for _ in range(rng.randint(1, 2))]
        p, q = poly_monomial(ctx, wp), poly_monomial(ctx, wq)
        if not p or not q:
            continue
        comm = star_commutator(gutt, ctx, p, q)
        assert comm.hbar_coefficient(2) == _poisson(ctx, base, p, q)


def test_gutt_unit(qn2):
    ctx = qn2
    one = PolyElement(ctx, {(ctx.unit_key(), 0): Q(1)})
    q = poly_monomial(ctx, [0, 3])
    assert gutt(one, q) == q


def test_gutt_zero_order_part_is_product(qn2):
    ctx = qn2
    rng = random.Random(21)
    for _ in range(30):
        wp = [rng.randrange(dim_of(2)) for _ in range(rng.randint(0, 2))]
        wq = [rng.randrange(dim_of(2)) for _ in range(rng.randint(0, 2))]
        p, q = poly_monomial(ctx, wp), poly_monomial(ctx, wq)
        if not p or not q:
            continue
        s = gutt(p, q)
        assert s.hbar_coefficient(0) == pmul(ctx, p, q)
        assert all(h % 2 == 0 for (_k, h) in s.terms)


def test_gutt_hbar_one_matches_enveloping_products(qn2):
    ctx = qn2
    for a in range(dim_of(2)):
        for b in range(dim_of(2)):
            s = gutt(poly_generator(ctx, a), poly_generator(ctx, b)).at_hbar_one()
            transported = ctx.zero()
            for (key, _h), c in s.terms.items():
                transported = transported + c * symmetrize(ctx, key)
            direct = multiply(ctx.generator(a), ctx.generator(b))
            assert transported == direct


def test_gutt_associativity_seeded(qn2):
    ctx = qn2
    rng = random.Random(123)
    for _ in range(40):
        elems = []
        for _t in range(3):
            w = [rng.randrange(dim_of(2)) for _ in range(rng.randint(0, 2))]
            elems.append(poly_monomial(ctx, w, coeff=Q(rng.randint(-2, 2) or 1)))
        p, q, r = elems
        lhs = gutt(gutt(p, q), r).hbar_truncate(4)
        rhs = gutt(p, gutt(q, r)).hbar_truncate(4)
        assert lhs == rhs


def test_symmetrize_desymmetrize_roundtrip(qn2):
    ctx = qn2
    rng = random.Random(6)
    for _ in range(30):
        w = [rng.randrange(dim_of(2)) for _ in range(rng.randint(0, 3))]
        p = poly_monomial(ctx, w)
        if not p:
            continue
        key = next(iter(p.terms))[0]
        back = desymmetrize(symmetrize(ctx, key))
        assert back == {key: Q(1)}


def test_poly_text_form(weyl22):
    ctx = weyl22
    p = moyal_weyl(poly_generator(ctx, 2), poly_generator(ctx, 3))
    text = p.to_text()
    assert "hbar^2" in text and "t1*t2" in text
