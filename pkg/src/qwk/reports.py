"""Named verification suites and machine-readable reports.

Every suite is a pure function of (config, seeded rng) returning a list of
check dicts; reports are schema-versioned JSON, byte-identical across runs
with the same config and seed.  Wall-clock timings are only included when
the config turns them on, precisely so that default reports stay
deterministic.
"""

from __future__ import annotations

import json
import random
import time

from .rationals import Q, rat
from . import superalgebra as sa
from . import highest_weight as hw
from . import pbw
from . import starprod as sp
from . import walgebra as wa
from . import whittaker as wh

SCHEMA = "qwk-report/1"

DEFAULTS = {
    "n": 2,
    "nilpotent": "principal",
    "zeta": "1",
    "cap": 4,
    "depth": 3,
    "seed": 20250,
    "timings": "off",
    # dominant-weight metadata recorded with the run; no computation uses it
    "nu": "",
}


def parse_config_file(path: str) -> dict:
    """Single documented key-value format: 'key = value' lines, '#' comments."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {raw.rstrip()}")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def normalize_config(overrides: dict) -> dict:
    cfg = dict(DEFAULTS)
    for k, v in overrides.items():
        if v is not None:
            cfg[k] = v
    cfg["n"] = int(cfg["n"])
    cfg["cap"] = int(cfg["cap"])
    cfg["depth"] = int(cfg["depth"])
    cfg["seed"] = int(cfg["seed"])
    return cfg


def _check(checks, name, ok, witnesses=None, **numbers):
    entry = {"name": name, "status": "pass" if ok else "fail"}
    if witnesses:
        entry["witnesses"] = sorted(str(w) for w in witnesses)
    if numbers:
        entry["numbers"] = {k: _plain(v) for k, v in sorted(numbers.items())}
    checks.append(entry)


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in sorted(v.items())}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    try:
        return int(v) if Q(v).denominator == 1 else str(v)
    except (TypeError, ValueError):
        return str(v)


def _datum(cfg):
    n = cfg["n"]
    nil = cfg["nilpotent"]
    if nil in ("principal", "minimal"):
        return wa.nilpotent_datum(n, nil)
    return wa.nilpotent_datum(n, sa.parse_element(n, nil))


def _zeta(cfg):
    vals = [rat(v) for v in str(cfg["zeta"]).split(",") if v != ""]
    return wh.make_character(cfg["n"], vals)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_structure(cfg, rng):
    checks = []
    n = cfg["n"]
    bad_pairs = []
    for a in range(sa.dim_of(n)):
        pa = sa.gen_parity(n, a)
        for b in range(sa.dim_of(n)):
            sign = -1 if pa and sa.gen_parity(n, b) else 1
            xa, xb = sa.GElement(n, {a: Q(1)}), sa.GElement(n, {b: Q(1)})
            if sa.bracket(xa, xb) != Q(-sign) * sa.bracket(xb, xa):
                bad_pairs.append((sa.gen_name(n, a), sa.gen_name(n, b)))
    _check(checks, "super-anticommutativity", not bad_pairs, bad_pairs,
           pairs=sa.dim_of(n) ** 2)

    def jacobi_defect(a, b, c):
        pa, pb = sa.gen_parity(n, a), sa.gen_parity(n, b)
        xa, xb, xc = (sa.GElement(n, {k: Q(1)}) for k in (a, b, c))
        lhs = sa.bracket(xa, sa.bracket(xb, xc))
        rhs = sa.bracket(sa.bracket(xa, xb), xc) + \
            Q((-1) ** (pa * pb)) * sa.bracket(xb, sa.bracket(xa, xc))
        return lhs - rhs

    bad = []
    if n <= 3:
        triples = sa.dim_of(n) ** 3
        for a in range(sa.dim_of(n)):
            for b in range(sa.dim_of(n)):
                for c in range(sa.dim_of(n)):
                    if jacobi_defect(a, b, c):
                        bad.append((a, b, c))
    else:
        triples = 1000
        for _ in range(triples):
            a, b, c = (rng.randrange(sa.dim_of(n)) for _ in range(3))
            if jacobi_defect(a, b, c):
                bad.append((a, b, c))
    _check(checks, "super-jacobi", not bad, bad, triples=triples)
    return checks


def suite_forms(cfg, rng):
    checks = []
    n = min(cfg["n"], 3)
    d = sa.dim_of(n)
    basis = [sa.GElement(n, {k: Q(1)}) for k in range(d)]
    bad_parity, bad_sym = [], []
    for a in range(d):
        for b in range(d):
            pa, pb = sa.gen_parity(n, a), sa.gen_parity(n, b)
            v = sa.odd_form(basis[a], basis[b])
            if pa == pb and v:
                bad_parity.append((a, b))
            if v != Q((-1) ** (pa * pb)) * sa.odd_form(basis[b], basis[a]):
                bad_sym.append((a, b))
    _check(checks, "parity-vanishing", not bad_parity, bad_parity)
    _check(checks, "supersymmetry", not bad_sym, bad_sym)

    bad_inv = []
    for a in range(d):
        for b in range(d):
            xy = sa.bracket(basis[a], basis[b])
            for c in range(d):
                if sa.odd_form(xy, basis[c]) != \
                        sa.odd_form(basis[a], sa.bracket(basis[b], basis[c])):
                    bad_inv.append((a, b, c))
    _check(checks, "invariance", not bad_inv, bad_inv, triples=d ** 3)

    half = n * n
    rows = [{b - half: sa.odd_form(basis[a], basis[b])
             for b in range(half, d) if sa.odd_form(basis[a], basis[b])}
            for a in range(half)]
    from .linalg import rank

    _check(checks, "gram-rank", rank(rows) == half, rank=rank(rows),
           expected=half)
    return checks


def suite_pbw(cfg, rng):
    checks = []
    ctx = pbw.PBWContext(2)
    e12, e21 = sa.idx(2, 0, 1, 2), sa.idx(2, 0, 2, 1)
    h1, h2 = sa.idx(2, 0, 1, 1), sa.idx(2, 0, 2, 2)
    got = pbw.normal_form(ctx, [e21, e12])
    want = ctx.from_word([e12, e21]) - ctx.generator(h1) + ctx.generator(h2)
    _check(checks, "straightening-example", got == want)
    f11 = sa.idx(2, 1, 1, 1)
    _check(checks, "odd-square-rule",
           pbw.normal_form(ctx, [f11, f11]) == ctx.generator(h1))

    bad = 0
    for _ in range(200):
        words = [[rng.randrange(sa.dim_of(2)) for _ in range(rng.randint(0, 2))]
                 for _t in range(3)]
        u, v, w = (ctx.from_word(word) for word in words)
        if pbw.multiply(pbw.multiply(u, v), w) != pbw.multiply(u, pbw.multiply(v, w)):
            bad += 1
    _check(checks, "associativity-seeded", bad == 0, triples=200, failures=bad)

    grading = sa.GradingData.from_grader(sa.diagonal_element(2, [1, -1]))
    from itertools import combinations_with_replacement

    from .linalg import rank

    monomials = set()
    for length in range(0, 5):
        for combo in combinations_with_replacement(range(sa.dim_of(2)), length):
            key = ctx.monomial_key(combo)
            if any(key[ctx.pos[g]] > 1 for g in range(sa.dim_of(2))
                   if sa.gen_parity(2, g)):
                continue
            if pbw.kazhdan_degree(ctx, key, grading) <= 6:
                monomials.add(key)
    monomials = sorted(monomials)
    key_index = {k: i for i, k in enumerate(monomials)}
    rows = [{key_index[k]: c for k, c in
             ctx.normal_word(tuple(reversed(ctx.expand_key(key)))).items()}
            for key in monomials]
    _check(checks, "pbw-independence-degree-6", rank(rows) == len(monomials),
           monomials=len(monomials))

    f21 = sa.idx(2, 1, 2, 1)
    m = [e21, f21]
    wctx = pbw.PBWContext(2, [k for k in range(8) if k not in m] + m)
    chi = {e21: Q(1)}
    bad = 0
    for _ in range(500):
        u = wctx.from_word([rng.randrange(8) for _ in range(rng.randint(0, 4))],
                           coeff=Q(rng.randint(-2, 2) or 1))
        v = wctx.from_word([rng.randrange(8) for _ in range(rng.randint(0, 2))])
        r = pbw.ideal_reduce(u, m, chi)
        if pbw.ideal_reduce(r, m, chi) != r:
            bad += 1
        if pbw.ideal_reduce(pbw.multiply(v, u), m, chi) != \
                pbw.ideal_reduce(pbw.multiply(v, pbw.ideal_reduce(u, m, chi)), m, chi):
            bad += 1
    _check(checks, "ideal-reduce-laws", bad == 0, cases=500, failures=bad)
    return checks


def _constructible_lambda(rng, n):
    k = rng.randint(0, n)
    pos = sorted(rng.sample(range(n), k))
    lam = [Q(0)] * n
    t = 0
    while t + 1 < len(pos):
        a = Q(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 4))
        s = Q(rng.randint(1, 4), rng.randint(1, 3))
        lam[pos[t]] = a
        lam[pos[t + 1]] = -a * s * s
        t += 2
    if t < len(pos):
        lam[pos[t]] = Q(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))
    return tuple(lam)


def suite_clifford(cfg, rng):
    checks = []
    bad_rel, bad_dim, bad_type = [], [], []
    for _ in range(200):
        n = rng.randint(1, 4)
        lam = _constructible_lambda(rng, n)
        cm = hw.clifford_module(lam)
        k = sum(1 for c in lam if c)
        d = cm.dimension
        for i in range(n):
            for j in range(n):
                anti = hw.mat_add(hw.mat_mul(cm.hbar[i], cm.hbar[j]),
                                  hw.mat_mul(cm.hbar[j], cm.hbar[i]))
                want = hw.mat_scale(hw.mat_eye(d),
                                    2 * cm.lam[i] if i == j else Q(0))
                if anti != want:
                    bad_rel.append(lam)
        if d != 2 ** ((k + 1) // 2):
            bad_dim.append(lam)
        if cm.type_flag != ("Q" if k % 2 else "M"):
            bad_type.append(lam)
    _check(checks, "clifford-relations-200", not bad_rel, bad_rel, cases=200)
    _check(checks, "dimension-formula", not bad_dim, bad_dim)
    _check(checks, "type-parity", not bad_type, bad_type)

    bad_comm = []
    for _ in range(40):
        cm = hw.clifford_module(_constructible_lambda(rng, rng.randint(1, 3)))
        if cm.endomorphism_dimension() != (1 if cm.type_flag == "M" else 2):
            bad_comm.append(cm.lam)
    _check(checks, "type-vs-commutant", not bad_comm, bad_comm)

    cover = hw.projective_cover_h([0, 0])
    _check(checks, "cover-grassmann-regular", cover.dimension == 4,
           dimension=cover.dimension)
    return checks


def suite_verma(cfg, rng):
    checks = []
    cases = [((2, -2), 2, 4), ((1, 0), 2, 4), ((0, 0, 3), 3, 3)]
    bad = []
    for lam, n, depth in cases:
        M = hw.verma_truncation(lam, depth)
        ch = hw.character(M)
        top = hw.clifford_module(lam).dimension
        expected = _series_character(top, n, depth)
        got = {tuple(Q(x) for x in wt): m for wt, m in ch.mult.items()}
        want = {tuple(Q(l) - Q(b) for l, b in zip(lam, beta)): m
                for beta, m in expected.items()}
        if got != want:
            bad.append(lam)
    _check(checks, "slice-dims-vs-series-oracle", not bad, bad,
           cases=[str(c[0]) for c in cases])

    N = hw.verma_truncation([1, 0], 1, variant="N")
    chn = hw.character(N)
    _check(checks, "projective-cover-variant",
           chn.mult[sa.weight([1, 0])] == 4 and chn.mult[sa.weight([0, 1])] == 8)

    M = hw.verma_truncation([-2, 2], 4)
    hits = {}
    for wt, s in M.slice_of.items():
        if M.heights[s]:
            sv = hw.singular_vectors(M, wt)
            if sv:
                hits[M.heights[s]] = len(sv)
    _check(checks, "singular-vector-witness", hits.get(1) == 2, heights=hits)
    return checks


def _series_character(top, n, depth):
    roots = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            v = [0] * n
            v[i - 1], v[j - 1] = 1, -1
            roots.append(tuple(v))

    def height(beta):
        acc, total = 0, 0
        for b in beta[:-1]:
            acc += b
            total += acc
        return total

    ch = {tuple([0] * n): top}
    for alpha in roots:
        new = dict(ch)
        for beta, m in ch.items():
            s = tuple(a + b for a, b in zip(beta, alpha))
            if height(s) <= depth:
                new[s] = new.get(s, 0) + m
        ch = new
    for alpha in roots:
        new = dict(ch)
        for k in range(1, depth + 1):
            ka = tuple(k * c for c in alpha)
            for beta, m in ch.items():
                s = tuple(a + b for a, b in zip(beta, ka))
                if height(s) <= depth:
                    new[s] = new.get(s, 0) + m
        ch = new
    return {b: m for b, m in ch.items() if height(b) <= depth}


def suite_whittaker(cfg, rng):
    checks = []
    z2 = wh.make_character(2, [1])
    strict_cases = {
        "natural-q2": wh.whittaker_vectors(hw.natural_module(2), z2, (0, 1),
                                           strict=True).dimension,
        "natural-q3": wh.whittaker_vectors(
            hw.natural_module(3), wh.make_character(3, [1, Q(1, 2)]), (0, 2),
            strict=True).dimension,
    }
    _check(checks, "strict-vanishing-finite-modules",
           all(v == 0 for v in strict_cases.values()), dims=strict_cases)

    ok = True
    tried = 0
    while tried < 100:
        lam = _constructible_lambda(rng, 2)
        depth = rng.randint(2, 4)
        zeta = wh.make_character(2, [Q(rng.randint(1, 3), rng.randint(1, 2))])
        if not wh.lambda_nu_member(lam, zeta)[0]:
            continue
        tried += 1
        M = hw.verma_truncation(lam, depth)
        small = wh.whittaker_vectors(M, zeta, (0, depth - 1))
        big = wh.whittaker_vectors(M, zeta, (0, depth))
        from .linalg import Echelon

        ech = Echelon()
        for v in big.basis:
            ech.add({c: x for c, x in v.items()
                     if M.heights[M.weight_of_col[c]] <= depth - 1})
        if ech.dim < small.dimension:
            ok = False
            break
    _check(checks, "window-monotonicity-100-seeded", ok, configurations=tried)

    M0 = wh.verma_truncation_even([1, 0], cfg["depth"])
    Ind = wh.induce_from_even(M0)
    ext = wh.exterior_odd_character(2)
    want = {}
    for w0, m0 in hw.character(M0).mult.items():
        for we, me in ext.items():
            wt = sa.weight_add(w0, we)
            want[wt] = want.get(wt, 0) + m0 * me
    _check(checks, "induce-from-even-convolution",
           hw.character(Ind).mult == want, depth=cfg["depth"])

    golden = wh.whittaker_vectors(hw.verma_truncation([2, -2], 3), z2, (0, 3))
    _check(checks, "regular-window-golden",
           golden.dimension == 4 and golden.slice_dims() == {0: 2, 1: 4, 2: 4, 3: 4},
           dims=golden.slice_dims())
    return checks


def suite_good_grading(cfg, rng):
    checks = []
    cases = [(2, "principal"), (3, "principal"), (3, "minimal")]
    for n, name in cases:
        d = wa.nilpotent_datum(n, name)
        rep = wa.good_grading_check(d.grading, d.chi)
        _check(checks, f"axioms-q{n}-{name}", rep["ok"],
               axioms={ax: rep[ax]["ok"] for ax in "abc"})
        symp = wa.build_symplectic(d)
        even = sum(1 for k in symp.space if sa.gen_parity(n, k) == 0)
        odd = len(symp.space) - even
        _check(checks, f"adE-bijection-q{n}-{name}",
               symp.ad_E_rank == len(symp.space),
               rank=symp.ad_E_rank, dim=len(symp.space))
        _check(checks, f"odd-dim-even-q{n}-{name}", odd % 2 == 0 and even == odd,
               even=even, odd=odd)
    d = wa.nilpotent_datum(2, "principal")
    wrong = sa.GradingData.from_grader(sa.diagonal_element(2, [1, 0]))
    rep = wa.good_grading_check(wrong, d.chi)
    _check(checks, "wrong-grading-fails-axiom-b", not rep["b"]["ok"],
           violations=rep["b"]["violations"])
    return checks


def suite_dw_lemmas(cfg, rng):
    checks = []
    jobs = [(2, "principal"), (3, "principal"), (3, "minimal")]
    configured = (cfg["n"], cfg["nilpotent"])
    if configured not in jobs and configured[1] in ("principal", "minimal"):
        jobs.insert(0, configured)
    for n, name in jobs:
        rep = wa.dw_decomposition_check(wa.nilpotent_datum(n, name))
        _check(checks, f"dw-q{n}-{name}", rep["ok"],
               gram_rank=rep["omega_on_Pi_gF"]["gram_rank"])
    return checks


def suite_w_dims(cfg, rng):
    checks = []
    jobs = [(2, "principal", min(cfg["cap"], 6) if cfg["n"] == 2 else 6),
            (3, "minimal", 4)]
    if (cfg["n"], cfg["nilpotent"]) not in [(j[0], j[1]) for j in jobs]:
        jobs.append((cfg["n"], cfg["nilpotent"], cfg["cap"]))
    for n, name, cap in jobs:
        d = wa.nilpotent_datum(n, name)
        m = wa.build_m(d, wa.build_symplectic(d))
        W = wa.w_invariants(d, m, cap)
        want = {k: v for k, v in wa.sgE_kazhdan_dims(d, cap).items() if v}
        _check(checks, f"graded-dims-q{n}-{name}-cap{cap}",
               W.graded_dims() == want, got=W.graded_dims(), want=want)
    d = wa.nilpotent_datum(3, "minimal")
    symp = wa.build_symplectic(d)
    alt = [k for k in symp.space if k not in symp.lagrangian]
    W1 = wa.w_invariants(d, wa.build_m(d, symp), 4)
    W2 = wa.w_invariants(d, wa.build_m(d, wa.build_symplectic(d, lagrangian=alt)), 4)
    _check(checks, "lagrangian-independence",
           W1.graded_dims() == W2.graded_dims(), dims=W1.graded_dims())
    return checks


def suite_theta(cfg, rng):
    checks = []
    cap = min(max(cfg["cap"], 4), 6)
    d3 = wa.nilpotent_datum(3, "minimal")
    m3 = wa.build_m(d3, wa.build_symplectic(d3))
    W3 = wa.w_invariants(d3, m3, cap)
    tg = wa.theta_split(W3, (1, 1, 0))
    split = tg.split_dims()
    total = sum(sum(v.values()) for v in split.values())
    _check(checks, "split-partitions-basis", total == W3.dimension,
           total=total, dim=W3.dimension,
           t_character={str(w): d for w, d in split.items()})
    _check(checks, "integer-eigenvalues",
           all(isinstance(w, int) for w in tg.weights))

    d2 = wa.nilpotent_datum(2, "principal")
    W2 = wa.w_invariants(d2, wa.build_m(d2, wa.build_symplectic(d2)), cap)
    Wz = wa.w_invariants(wa.zero_datum(1), wa.MSubalgebra(1, (), {}), cap)
    levi = wa.convolve_dims(W2.graded_dims(), Wz.graded_dims(), cap)
    rep = wa.levi_quotient_check(tg, levi)
    _check(checks, "levi-quotient-identity", rep["ok"], got=rep["got"],
           want=rep["want"])

    res = wa.w_verma_truncation(tg, 1, cfg["depth"])
    _check(checks, "w-verma-generator-count", bool(res["generator_check"]),
           slices=res["slices"])
    return checks


def suite_star(cfg, rng):
    checks = []
    parities = (0, 0, 1, 1)
    omega = {(0, 1): Q(1), (1, 0): Q(-1), (2, 3): Q(1), (3, 2): Q(1)}
    ctx = sp.WeylContext(parities, omega)
    bad = []
    for a in range(4):
        for b in range(4):
            va, vb = sp.poly_generator(ctx, a), sp.poly_generator(ctx, b)
            sign = Q((-1) ** (parities[a] * parities[b]))
            got = sp.moyal_weyl(va, vb) - sign * sp.moyal_weyl(vb, va)
            want = sp.PolyElement(ctx, {(ctx.unit_key(), 2):
                                        omega.get((a, b), Q(0))})
            if got != want:
                bad.append((a, b))
    _check(checks, "moyal-defining-relation", not bad, bad)

    qctx = sp.poly_context_qn(2)
    bad = []
    for a in range(sa.dim_of(2)):
        for b in range(sa.dim_of(2)):
            p, q = sp.poly_generator(qctx, a), sp.poly_generator(qctx, b)
            sign = Q((-1) ** (sa.gen_parity(2, a) * sa.gen_parity(2, b)))
            got = sp.gutt(p, q) - sign * sp.gutt(q, p)
            br = sa.bracket(sa.GElement(2, {a: Q(1)}), sa.GElement(2, {b: Q(1)}))
            want = sp.PolyElement(qctx, {})
            for g, c in br.terms.items():
                want = want + c * sp.PolyElement(
                    qctx, {(qctx.monomial_key((g,)), 2): Q(1)})
            if got != want:
                bad.append((a, b))
    _check(checks, "gutt-defining-relation", not bad, bad)

    bad = 0
    for _ in range(200):
        which = rng.choice(["moyal", "gutt"])
        c, star = (ctx, sp.moyal_weyl) if which == "moyal" else (qctx, sp.gutt)
        size = 4 if which == "moyal" else sa.dim_of(2)
        elems = [sp.poly_monomial(c, [rng.randrange(size)
                                      for _ in range(rng.randint(0, 2))],
                                  coeff=Q(rng.randint(-2, 2) or 1))
                 for _t in range(3)]
        p, q, r = elems
        if star(star(p, q), r).hbar_truncate(4) != \
                star(p, star(q, r)).hbar_truncate(4):
            bad += 1
    _check(checks, "associativity-hbar4-200-seeded", bad == 0, failures=bad)

    bad = []
    for a in range(sa.dim_of(2)):
        for b in range(sa.dim_of(2)):
            s = sp.gutt(sp.poly_generator(qctx, a),
                        sp.poly_generator(qctx, b)).at_hbar_one()
            transported = qctx.zero()
            for (key, _h), c in s.terms.items():
                transported = transported + c * sp.symmetrize(qctx, key)
            if transported != pbw.multiply(qctx.generator(a), qctx.generator(b)):
                bad.append((a, b))
    _check(checks, "gutt-hbar-one-transport", not bad, bad)
    return checks


SUITES = {
    "structure": suite_structure,
    "forms": suite_forms,
    "pbw": suite_pbw,
    "clifford": suite_clifford,
    "verma": suite_verma,
    "whittaker": suite_whittaker,
    "good-grading": suite_good_grading,
    "dw-lemmas": suite_dw_lemmas,
    "w-dims": suite_w_dims,
    "theta": suite_theta,
    "star": suite_star,
}


def run_suite(name: str, overrides: dict) -> dict:
    """Execute a named suite and assemble the versioned report."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from "
                       f"{', '.join(sorted(SUITES))}")
    cfg = normalize_config(overrides)
    rng = random.Random(cfg["seed"])
    started = time.perf_counter()
    checks = SUITES[name](cfg, rng)
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    report = {
        "schema": SCHEMA,
        "suite": name,
        "config": {k: _plain(v) for k, v in sorted(cfg.items())
                   if k != "timings"},
        "checks": checks,
        "summary": {
            "pass": sum(1 for c in checks if c["status"] == "pass"),
            "fail": sum(1 for c in checks if c["status"] == "fail"),
            "skipped": sum(1 for c in checks if c["status"] == "skipped"),
        },
        "timings": {"total_ms": elapsed_ms} if cfg["timings"] == "on" else None,
    }
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
