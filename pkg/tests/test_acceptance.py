"""Acceptance gate: one test per criterion, each printing a pass/fail line
with its elapsed time against the stated budget.  Run with -s to stream
the lines; budgets are asserted, not advisory.
"""

import time
from contextlib import contextmanager
from itertools import combinations_with_replacement, product

from qwk import highest_weight as hw
from qwk import pbw
from qwk import reports
from qwk import superalgebra as sa
from qwk import walgebra as wa
from qwk import whittaker as wh
from qwk.rationals import Q


@contextmanager
def criterion(name, budget_s):
    t0 = time.perf_counter()
    failed = True
    try:
        yield
        failed = False
    finally:
        dt = time.perf_counter() - t0
        print(f"[{'FAIL' if failed else 'PASS'}] {name} "
              f"({dt:.2f}s / budget {budget_s}s)")
        if not failed:
            assert dt < budget_s, f"{name} exceeded its time budget"


def suite_green(name, **overrides):
    report = reports.run_suite(name, overrides)
    bad = [c["name"] for c in report["checks"] if c["status"] != "pass"]
    assert not bad, f"suite {name} failed checks: {bad}"
    return report


def test_acceptance_structure_suite():
    with criterion("structure suite (anticommutativity, Jacobi; n<=3 "
                   "exhaustive, n=4 seeded)", 10):
        suite_green("structure", n=2)
        suite_green("structure", n=3)
        suite_green("structure", n=4)


def test_acceptance_odd_form_suite():
    with criterion("odd form suite (parity, supersymmetry, invariance, "
                   "Gram rank)", 5):
        suite_green("forms", n=2)
        suite_green("forms", n=3)


def test_acceptance_pbw_suite():
    with criterion("PBW suite (independence to degree 6, exhaustive "
                   "associativity at degree <= 2, ideal laws)", 60):
        suite_green("pbw")
        # exhaustive associativity over all degree <= 2 monomials of U(q(2))
        ctx = pbw.PBWContext(2)
        monos = [ctx.unit()]
        for length in (1, 2):
            for combo in combinations_with_replacement(range(sa.dim_of(2)),
                                                       length):
                u = ctx.from_word(combo)
                if u:
                    monos.append(u)
        seen = set()
        uniq = []
        for u in monos:
            key = tuple(sorted(u.terms))
            if key not in seen:
                seen.add(key)
                uniq.append(u)
        for u in uniq:
            for v in uniq:
                uv = pbw.multiply(u, v)
                for w in uniq:
                    assert pbw.multiply(uv, w) == \
                        pbw.multiply(u, pbw.multiply(v, w))


def test_acceptance_clifford_verma_suite():
    with criterion("Clifford/Verma suite (200 seeded relation checks, "
                   "type vs commutant, slice dims to depth 4)", 60):
        suite_green("clifford")
        suite_green("verma")
        for lam in ((2, -2), (1, 0)):
            M = hw.verma_truncation(lam, 4)
            ch = hw.character(M)
            top = hw.clifford_module(lam).dimension
            want = {}
            for beta, m in reports._series_character(top, 2, 4).items():
                mu = tuple(Q(l) - Q(b) for l, b in zip(lam, beta))
                want[mu] = m
            assert ch.mult == want


def test_acceptance_membership_criterion():
    with criterion("admissible-weight criterion (exhaustive [-3,3], n<=3; "
                   "the (a,-a) family accepted)", 5):
        for n, zvals in ((2, [0]), (2, [1]), (3, [0, 0]), (3, [1, 1]),
                         (3, [1, 0])):
            zeta = wh.make_character(n, zvals)
            for lam in product(range(-3, 4), repeat=n):
                got, _ = wh.lambda_nu_member(lam, zeta)
                want = True
                for i in zeta.pi():
                    d = lam[i - 1] - lam[i]
                    if d > 0:
                        want = False
                for i in range(n - 1):
                    if lam[i] == lam[i + 1] != 0:
                        want = False
                assert got == want, (n, zvals, lam)
        zreg = wh.make_character(2, [1])
        for a in (-2, -3, -5):
            ok, why = wh.lambda_nu_member((a, -a), zreg)
            assert ok and why is None


def test_acceptance_singular_vector_witness():
    with criterion("singular-vector witness (a = -2, -3; golden: dim 2 at "
                   "height 1)", 30):
        for a in (-2, -3):
            M = hw.verma_truncation((a, -a), 2 * abs(a))
            found = {}
            for wt, s in M.slice_of.items():
                if M.heights[s] == 0:
                    continue
                sv = hw.singular_vectors(M, wt)
                if sv:
                    found[M.heights[s]] = len(sv)
            assert found.get(1) == 2, found


def test_acceptance_good_grading_suite():
    with criterion("good-grading suite (axioms, ad E bijection, even odd "
                   "dimension, deliberate failure)", 10):
        suite_green("good-grading")


def test_acceptance_dw_lemmas():
    with criterion("Darboux-Weinstein decompositions and Gram "
                   "nondegeneracy", 10):
        suite_green("dw-lemmas")


def test_acceptance_w_dims_identity():
    with criterion("W-algebra graded dimensions equal S(g^E) (q(2) "
                   "principal to 6, q(3) minimal to 4)", 600):
        d2 = wa.nilpotent_datum(2, "principal")
        W2 = wa.w_invariants(d2, wa.build_m(d2, wa.build_symplectic(d2)), 6)
        assert W2.graded_dims() == {0: 1, 2: 2, 4: 4, 6: 6}
        assert W2.graded_dims() == \
            {k: v for k, v in wa.sgE_kazhdan_dims(d2, 6).items() if v}
        d3 = wa.nilpotent_datum(3, "minimal")
        W3 = wa.w_invariants(d3, wa.build_m(d3, wa.build_symplectic(d3)), 4)
        assert W3.graded_dims() == {0: 1, 2: 4, 3: 4, 4: 10}
        assert W3.graded_dims() == \
            {k: v for k, v in wa.sgE_kazhdan_dims(d3, 4).items() if v}


def test_acceptance_lagrangian_independence():
    with criterion("Lagrangian independence (two choices, q(3) minimal)", 600):
        d = wa.nilpotent_datum(3, "minimal")
        symp = wa.build_symplectic(d)
        alt = [k for k in symp.space if k not in symp.lagrangian]
        W1 = wa.w_invariants(d, wa.build_m(d, symp), 4)
        W2 = wa.w_invariants(
            d, wa.build_m(d, wa.build_symplectic(d, lagrangian=alt)), 4)
        assert W1.graded_dims() == W2.graded_dims()


def test_acceptance_theta_levi_quotient():
    with criterion("theta grading and Levi quotient identity (q(3), "
                   "l = q(2)+q(1), cap 6)", 900):
        d3 = wa.nilpotent_datum(3, "minimal")
        W3 = wa.w_invariants(d3, wa.build_m(d3, wa.build_symplectic(d3)), 6)
        tg = wa.theta_split(W3, (1, 1, 0))
        d2 = wa.nilpotent_datum(2, "principal")
        W2 = wa.w_invariants(d2, wa.build_m(d2, wa.build_symplectic(d2)), 6)
        Wz = wa.w_invariants(wa.zero_datum(1), wa.MSubalgebra(1, (), {}), 6)
        levi = wa.convolve_dims(W2.graded_dims(), Wz.graded_dims(), 6)
        rep = wa.levi_quotient_check(tg, levi)
        assert rep["ok"], rep
        assert rep["got"] == {0: 1, 2: 4, 4: 10, 6: 20}


def test_acceptance_star_suite():
    with criterion("star-product suite (defining relations, associativity "
                   "to hbar^4, Gutt transport)", 60):
        suite_green("star")


def test_acceptance_whittaker_suite():
    with criterion("Whittaker suite (strict vanishing, 100-seeded window "
                   "monotonicity, exterior-factor convolution)", 120):
        suite_green("whittaker", depth=3)


def test_acceptance_determinism():
    with criterion("determinism: byte-identical reports per suite and "
                   "seed", 120):
        for name in sorted(reports.SUITES):
            a = reports.report_json(reports.run_suite(name, {}))
            b = reports.report_json(reports.run_suite(name, {}))
            assert a == b, f"suite {name} report not deterministic"
