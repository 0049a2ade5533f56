"""Finite W-algebra machinery at Kazhdan truncation.

Pipeline: an odd nilpotent E gives the functional chi = (E|.), the Dynkin
grading from its sl(2) companion, the symplectic space on degree -1 with a
basis-aligned Lagrangian, the subalgebra m and the shifted ideal; the
truncated W-algebra is the exact solution space of

    ideal_reduce(ad(a)(u)) = 0   for every m-generator a

over reduced monomials of Kazhdan degree <= cap.  ad(a) never raises the
Kazhdan degree for a in m, so the system is exact at every cap.  It does
not split by h-weight (the chi-substitution shifts weight by the removed
tail), but it does split by parity and by the weight under the torus
t = {x in the even Cartan : [x, E] = 0}, which keeps eliminations small
and makes every basis vector t-homogeneous, exactly what the theta
machinery needs.

Filtered dimensions are read off an echelon whose columns are ordered by
descending Kazhdan degree: a row's pivot degree is then the degree of the
basis element, and counting pivots <= j gives dim of the degree-<= j slice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .highest_weight import TruncatedModule
from .linalg import Echelon, nullspace
from .pbw import (
    PBWContext,
    UElement,
    adjoint,
    ideal_reduce,
    kazhdan_degree,
    multiply,
)
from .rationals import Q
from .superalgebra import (
    GElement,
    GradingData,
    NilpotencyError,
    QwkError,
    ad_matrix,
    bracket,
    dim_of,
    gen_name,
    gen_pair,
    gen_parity,
    gen_root,
    idx,
    odd_form,
    parity_reverse,
    sl2_complete,
)

MAX_KAZHDAN_CAP = 8


class CapExceededError(QwkError):
    pass


class LagrangianError(QwkError):
    pass


# ---------------------------------------------------------------------------
# nilpotent data
# ---------------------------------------------------------------------------

def chi_of(E: GElement) -> dict:
    """chi(x) = (E|x) on every basis generator; vanishes on the odd part."""
    if E.terms and E.parity() != 1:
        raise ValueError("chi_of expects an odd element")
    n = E.n
    return {k: v for k in range(dim_of(n))
            if (v := odd_form(E, GElement(n, {k: Q(1)})))}


def E_from_chi(n: int, chi: dict) -> GElement:
    """The odd element representing an even functional through the form."""
    terms = {}
    for k, v in chi.items():
        if gen_parity(n, k) != 0 and v:
            raise ValueError("an even functional vanishes on odd generators")
        i, j = gen_pair(n, k)
        if v:
            terms[idx(n, 1, j, i)] = v
    return GElement(n, terms)


@dataclass
class NilpotentDatum:
    n: int
    E: GElement
    e: GElement
    h: GElement
    f: GElement
    F: GElement
    H: GElement
    chi: dict
    grading: GradingData

    @property
    def name(self):
        return getattr(self, "_name", None)


def named_nilpotent(n: int, name: str) -> GElement:
    if name == "principal":
        return GElement(n, {idx(n, 1, i, i + 1): Q(1) for i in range(1, n)})
    if name == "minimal":
        if n < 2:
            raise ValueError("minimal nilpotent needs n >= 2")
        return GElement(n, {idx(n, 1, 1, 2): Q(1)})
    raise ValueError(f"unknown nilpotent name {name!r}")


def nilpotent_datum(n: int, nilpotent) -> NilpotentDatum:
    """Build the full datum from an odd nilpotent E (or 'principal' /
    'minimal').  E = 0 is rejected as degenerate."""
    if isinstance(nilpotent, str):
        E = named_nilpotent(n, nilpotent)
        label = nilpotent
    else:
        E, label = nilpotent, None
    if not E.terms:
        raise NilpotencyError("zero nilpotent is excluded")
    if E.parity() != 1:
        raise ValueError("E must be odd")
    e = parity_reverse(E)
    e2, h, f = sl2_complete(e)
    datum = NilpotentDatum(n, E, e, h, f, parity_reverse(f), parity_reverse(h),
                           chi_of(E), GradingData.from_grader(h))
    if label:
        datum._name = label
    return datum


def zero_datum(n: int) -> NilpotentDatum:
    """Degenerate datum E = 0 with the zero grading: m is empty and the
    truncated W-algebra is all of U to the cap.  Used for Levi factors
    whose block carries no nilpotent part (e.g. a q(1) summand)."""
    zero = GElement(n, {})
    return NilpotentDatum(n, zero, zero, zero, zero, zero, zero, {},
                          GradingData.zero(n))


# ---------------------------------------------------------------------------
# good-grading axioms
# ---------------------------------------------------------------------------

def good_grading_check(grading: GradingData, chi: dict) -> dict:
    """Exact verification of the three good-grading axioms; the report
    lists violating basis elements per axiom."""
    n = grading.n
    report = {}

    bad = [gen_name(n, k) for k in range(dim_of(n))
           if gen_pair(n, k)[0] == gen_pair(n, k)[1] and grading.eigen[k] != 0]
    report["a"] = {"ok": not bad, "violations": bad}

    bad = [gen_name(n, k) for k, v in sorted(chi.items())
           if v and grading.eigen[k] != -2]
    report["b"] = {"ok": not bad, "violations": bad}

    E = E_from_chi(n, chi)
    rows = ad_matrix(E)
    ker_dim = dim_of(n) - _rank_rows(rows)
    nonneg = [k for k in range(dim_of(n)) if grading.eigen[k] >= 0]
    sub_rows = []
    pos = {k: t for t, k in enumerate(nonneg)}
    for row in rows:
        r = {pos[c]: v for c, v in row.items() if c in pos}
        if r:
            sub_rows.append(r)
    ker_nonneg = len(nonneg) - _rank_rows(sub_rows)
    report["c"] = {"ok": ker_dim == ker_nonneg,
                   "centralizer_dim": ker_dim,
                   "centralizer_dim_nonnegative_part": ker_nonneg}
    report["ok"] = all(report[ax]["ok"] for ax in "abc")
    return report


def _rank_rows(rows):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.dim


# ---------------------------------------------------------------------------
# symplectic space on degree -1 and the subalgebra m
# ---------------------------------------------------------------------------

@dataclass
class SymplecticData:
    space: tuple        # basis indices of g(-1)
    gram: dict          # (a, b) -> chi([a, b]), nonzero entries
    lagrangian: tuple   # chosen isotropic basis subset, half dimension
    ad_E_rank: int

    def gram_value(self, a, b):
        return self.gram.get((a, b), Q(0))


def build_symplectic(datum: NilpotentDatum, lagrangian=None) -> SymplecticData:
    """Gram matrix of omega_chi on g(-1), certified nondegenerate, with a
    greedy basis-aligned Lagrangian (or a supplied one, checked)."""
    n = datum.n
    space = datum.grading.block(-1)
    gram = {}
    for a in space:
        for b in space:
            val = omega_chi(datum, a, b)
            if val:
                gram[(a, b)] = val
    # nondegeneracy
    pos = {b: t for t, b in enumerate(space)}
    rows = []
    for a in space:
        row = {pos[b]: gram[(a, b)] for b in space if (a, b) in gram}
        rows.append(row)
    if _rank_rows([r for r in rows if r]) != len(space):
        raise LagrangianError("omega_chi is degenerate on g(-1): the grading "
                              "is not good")
    # ad E restricts to a bijection g(-1) -> g(1)
    plus = set(datum.grading.block(1))
    ppos = {b: t for t, b in enumerate(sorted(plus))}
    ad_rows = {}
    for t, a in enumerate(space):
        img = bracket(datum.E, GElement(n, {a: Q(1)}))
        for k, v in img.terms.items():
            if k in ppos:
                ad_rows.setdefault(ppos[k], {})[t] = v
    ad_rank = _rank_rows(list(ad_rows.values()))

    if lagrangian is None:
        chosen = []
        half = len(space) // 2
        for a in space:
            if len(chosen) == half:
                break
            if omega_chi(datum, a, a):
                continue
            if all(not omega_chi(datum, a, b) for b in chosen):
                chosen.append(a)
        lagrangian = tuple(chosen)
    else:
        lagrangian = tuple(lagrangian)
        for a in lagrangian:
            for b in lagrangian:
                if omega_chi(datum, a, b):
                    raise LagrangianError("supplied subspace is not isotropic")
    if len(lagrangian) * 2 != len(space):
        raise LagrangianError("no basis-aligned Lagrangian of half dimension")
    return SymplecticData(tuple(space), gram, lagrangian, ad_rank)


def omega_chi(datum: NilpotentDatum, a: int, b: int):
    """omega_chi(a, b) = chi([a, b]) on basis generators."""
    n = datum.n
    out = Q(0)
    for k, v in bracket(GElement(n, {a: Q(1)}), GElement(n, {b: Q(1)})).terms.items():
        c = datum.chi.get(k)
        if c:
            out += v * c
    return out


@dataclass
class MSubalgebra:
    n: int
    basis: tuple    # generator indices, Lagrangian part then deeper blocks
    chi: dict       # chi values on the basis generators

    def shifted_generators(self):
        """The generators a - chi(a) of the left ideal, as data pairs."""
        return [(a, self.chi.get(a, Q(0))) for a in self.basis]


def build_m(datum: NilpotentDatum, symp: SymplecticData) -> MSubalgebra:
    """m = l (+) sum_{i <= -2} g(i), with closure and the character
    property of chi on m verified exactly."""
    n = datum.n
    deep = [k for k in range(dim_of(n)) if datum.grading.eigen[k] <= -2]
    basis = tuple(sorted(symp.lagrangian) + sorted(deep))
    bset = set(basis)
    for a in basis:
        for b in basis:
            br = bracket(GElement(n, {a: Q(1)}), GElement(n, {b: Q(1)}))
            if any(k not in bset for k in br.terms):
                raise QwkError("m is not closed under the bracket")
            val = sum((v * datum.chi.get(k, Q(0)) for k, v in br.terms.items()),
                      Q(0))
            if val:
                raise QwkError("chi does not restrict to a character on m")
    chi_m = {a: datum.chi.get(a, Q(0)) for a in basis}
    return MSubalgebra(n, basis, chi_m)


# ---------------------------------------------------------------------------
# invariants: the truncated W-algebra
# ---------------------------------------------------------------------------

def torus_basis(datum: NilpotentDatum) -> list:
    """Basis of t = {x in even Cartan : [x, E] = 0} as diagonal 0/1 tuples:
    indicators of the components of the support graph of E."""
    n = datum.n
    comp = list(range(n))

    def find(i):
        while comp[i] != i:
            comp[i] = comp[comp[i]]
            i = comp[i]
        return i

    for k in datum.E.terms:
        i, j = gen_pair(n, k)
        ri, rj = find(i - 1), find(j - 1)
        if ri != rj:
            comp[rj] = ri
    roots = sorted({find(i) for i in range(n)})
    return [tuple(1 if find(i) == r else 0 for i in range(n)) for r in roots]


@dataclass
class WTruncation:
    datum: NilpotentDatum
    m: MSubalgebra
    cap: int
    ctx: PBWContext
    monomials: list          # complement monomial keys, descending-degree order
    mon_rank: dict           # key -> position in that order
    basis: list              # UElement per invariant basis vector
    degrees: list            # Kazhdan (pivot) degree per basis vector
    tweights: list           # weight under the torus t, per basis vector
    parities: list           # parity per basis vector
    t_basis: list            # diagonal tuples spanning t
    _coord_rows: dict = field(default_factory=dict)

    @property
    def dimension(self):
        return len(self.basis)

    def graded_dims(self) -> dict:
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def coordinates(self, u: UElement) -> dict:
        """Coefficients of u over the invariant basis (raises if outside)."""
        vec = {self.mon_rank[k]: c for k, c in u.terms.items()}
        coords = {}
        for i in range(len(self.basis)):
            row = self._coord_rows[i]
            p = row["pivot"]
            c = vec.get(p)
            if not c:
                continue
            coords[i] = c
            for j, x in row["vec"].items():
                y = vec.get(j, 0) - c * x
                if y:
                    vec[j] = y
                else:
                    vec.pop(j, None)
        if vec:
            raise QwkError("element is not in the invariant span")
        return coords

    def theta_weight(self, i: int, theta_diag) -> int:
        """ad-theta eigenvalue of basis element i, for integral theta in t."""
        coeffs = _express_in_torus(theta_diag, self.t_basis)
        val = sum((c * w for c, w in zip(coeffs, self.tweights[i])), Q(0))
        if val.denominator != 1:
            raise ValueError("theta is not integral on the basis")
        return int(val)


def _express_in_torus(theta_diag, t_basis):
    """theta as a combination of the torus basis (raises if theta not in t)."""
    coeffs = []
    residual = [Q(v) for v in theta_diag]
    for tb in t_basis:
        support = [i for i, x in enumerate(tb) if x]
        vals = {residual[i] for i in support}
        if len(vals) != 1:
            raise ValueError("theta does not centralize E")
        c = vals.pop()
        coeffs.append(c)
        for i in support:
            residual[i] -= c
    if any(residual):
        raise ValueError("theta does not centralize E")
    return coeffs


def w_context(n: int, m: MSubalgebra, grading: GradingData) -> PBWContext:
    comp = [k for k in range(dim_of(n)) if k not in set(m.basis)]
    comp.sort(key=lambda k: (grading.eigen[k] + 2, k))
    return PBWContext(n, comp + sorted(m.basis))


def _complement_monomials(ctx: PBWContext, grading: GradingData, m_set, cap):
    """Exponent keys over the complement generators, Kazhdan degree <= cap."""
    n = ctx.n
    keys = [ctx.unit_key()]
    for p, g in enumerate(ctx.order):
        if g in m_set:
            continue
        kdeg = grading.eigen[g] + 2
        if kdeg <= 0:
            raise QwkError("complement generator with nonpositive Kazhdan "
                           "degree; grading is not good")
        top = 1 if gen_parity(n, g) else cap // kdeg
        new = []
        for key in keys:
            used = kazhdan_degree(ctx, key, grading)
            for e in range(top + 1):
                if used + e * kdeg <= cap:
                    if e:
                        k2 = list(key)
                        k2[p] = e
                        new.append(tuple(k2))
                    else:
                        new.append(key)
        keys = new
    return keys


def _monomial_weight(ctx: PBWContext, key):
    n = ctx.n
    wt = [0] * n
    for p, e in enumerate(key):
        if e:
            root = gen_root(n, ctx.order[p])
            for t in range(n):
                wt[t] += e * root[t]
    return tuple(wt)


def _monomial_tweight(ctx: PBWContext, key, t_basis):
    wt = _monomial_weight(ctx, key)
    return tuple(sum(w * x for w, x in zip(wt, tb)) for tb in t_basis)


def w_invariants(datum: NilpotentDatum, m: MSubalgebra, cap: int,
                 max_cap: int = MAX_KAZHDAN_CAP) -> WTruncation:
    """Exact basis of the ad-m invariants of U(g)/I_chi up to Kazhdan
    degree cap, echelonized by degree with lexicographic tie-breaking."""
    if cap > max_cap:
        raise CapExceededError(f"cap {cap} exceeds configured maximum {max_cap}")
    n = datum.n
    grading = datum.grading
    ctx = w_context(n, m, grading)
    m_set = set(m.basis)
    monomials = _complement_monomials(ctx, grading, m_set, cap)

    order_key = {}
    for key in monomials:
        order_key[key] = (-kazhdan_degree(ctx, key, grading), key)
    ranked = sorted(monomials, key=lambda k: order_key[k])
    mon_rank = {k: t for t, k in enumerate(ranked)}

    # the system splits by parity and by the weight under the torus t
    # (chi vanishes off t-weight zero, so ideal_reduce preserves t-weight)
    t_basis = torus_basis(datum)
    blocks = {}
    for key in monomials:
        tw = _monomial_tweight(ctx, key, t_basis)
        par = ctx.monomial_parity(key)
        blocks.setdefault((tw, par), []).append(key)

    m_elems = [GElement(n, {a: Q(1)}) for a in m.basis]
    kernels = []
    for (tw, par), keys in sorted(blocks.items()):
        keys = sorted(keys, key=lambda k: order_key[k])
        kpos = {k: t for t, k in enumerate(keys)}
        rows = {}
        for key in keys:
            u = UElement(ctx, {key: Q(1)})
            for a_idx, a in zip(m.basis, m_elems):
                red = ideal_reduce(adjoint(a, u), m.basis, m.chi)
                for rkey, c in red.terms.items():
                    rows.setdefault((a_idx, rkey), {})[kpos[key]] = c
        for sol in nullspace(list(rows.values()), len(keys)):
            kernels.append(({keys[t]: c for t, c in sol.items()}, tw, par))

    ech = Echelon()
    basis, degrees, tweights, parities, coord_rows = [], [], [], [], {}
    for vec, tw, par in sorted(
            kernels, key=lambda kv: min(mon_rank[k] for k in kv[0])):
        ranked_vec = {mon_rank[k]: c for k, c in vec.items()}
        p = ech.add(ranked_vec)
        if p is None:
            continue
        row = ech.rows[p]
        i = len(basis)
        basis.append(UElement(ctx, {ranked[j]: c for j, c in row.items()}))
        degrees.append(kazhdan_degree(ctx, ranked[p], grading))
        tweights.append(tw)
        parities.append(par)
        coord_rows[i] = {"pivot": p, "vec": dict(row)}

    order = sorted(range(len(basis)), key=lambda i: coord_rows[i]["pivot"])
    W = WTruncation(
        datum, m, cap, ctx, ranked, mon_rank,
        [basis[i] for i in order], [degrees[i] for i in order],
        [tweights[i] for i in order], [parities[i] for i in order],
        t_basis, {t: coord_rows[i] for t, i in enumerate(order)})
    for b in W.basis:
        _assert_invariant(W, b)
    return W


def _assert_invariant(W: WTruncation, u: UElement):
    for a in W.m.basis:
        red = ideal_reduce(adjoint(GElement(W.datum.n, {a: Q(1)}), u),
                           W.m.basis, W.m.chi)
        if red:
            raise QwkError("invariance violated (internal certification)")


def w_multiply(W: WTruncation, a: UElement, b: UElement,
               verify=True) -> UElement:
    """Product in U(g)/I_chi of two truncation elements, with the exact
    m-invariance of the result re-verified."""
    da = _max_degree(W, a)
    db = _max_degree(W, b)
    if da is not None and db is not None and da + db > W.cap:
        raise CapExceededError(f"degrees {da}+{db} exceed cap {W.cap}")
    out = ideal_reduce(multiply(a, b), W.m.basis, W.m.chi)
    if verify:
        _assert_invariant(W, out)
    return out


def _max_degree(W: WTruncation, u: UElement):
    if not u.terms:
        return None
    return max(kazhdan_degree(W.ctx, k, W.datum.grading) for k in u.terms)


def unit_image(W: WTruncation) -> UElement:
    return W.ctx.unit()


def central_image(W: WTruncation) -> UElement:
    """Image of the identity matrix (the center of g) in the truncation."""
    n = W.datum.n
    out = W.ctx.zero()
    for i in range(1, n + 1):
        red = ideal_reduce(W.ctx.generator(idx(n, 0, i, i)),
                           W.m.basis, W.m.chi)
        out = out + red
    return out


# ---------------------------------------------------------------------------
# S(g^E) reference dimensions
# ---------------------------------------------------------------------------

def centralizer_kazhdan_data(datum: NilpotentDatum, theta_diag=None) -> list:
    """(Kazhdan degree, theta weight or None, parity, vector) per g^E basis
    vector.  ad E is homogeneous for the grading, the parity, and (when
    [theta, E] = 0) the theta weight, so the kernel is computed blockwise
    and every vector is homogeneous for all three."""
    n = datum.n
    out = []
    blocks = {}
    for k in range(dim_of(n)):
        tw = None
        if theta_diag is not None:
            i, j = gen_pair(n, k)
            val = Q(theta_diag[i - 1]) - Q(theta_diag[j - 1])
            if val.denominator != 1:
                raise ValueError("theta must be integral")
            tw = int(val)
        blocks.setdefault((datum.grading.eigen[k], tw, gen_parity(n, k)),
                          []).append(k)
    for (eig, tw, par), gens in sorted(
            blocks.items(), key=lambda kv: (kv[0][0], kv[0][1] or 0, kv[0][2])):
        pos = {g: t for t, g in enumerate(gens)}
        rows = {}
        for g in gens:
            img = bracket(datum.E, GElement(n, {g: Q(1)}))
            for k, v in img.terms.items():
                rows.setdefault(k, {})[pos[g]] = v
        for sol in nullspace(list(rows.values()), len(gens)):
            out.append((eig + 2, tw, par, {gens[t]: c for t, c in sol.items()}))
    return out


def sgE_kazhdan_dims(datum: NilpotentDatum, cap: int) -> dict:
    """Kazhdan-graded dimensions of the supersymmetric algebra on the
    centralizer of E, to the cap."""
    series = [1] + [0] * cap
    for kdeg, _tw, par, _vec in centralizer_kazhdan_data(datum):
        new = list(series)
        if par:
            for d in range(cap, kdeg - 1, -1):
                new[d] += series[d - kdeg]
        else:
            for d in range(kdeg, cap + 1):
                new[d] += new[d - kdeg]
        series = new
    return {d: series[d] for d in range(cap + 1)}


# ---------------------------------------------------------------------------
# theta-gradings, the distinguished quotient, and W-algebra Verma slices
# ---------------------------------------------------------------------------

@dataclass
class ThetaGrading:
    W: WTruncation
    theta_diag: tuple
    weights: list            # ad-theta eigenvalue per invariant basis vector
    sharp: dict              # theta weight -> Echelon over basis coordinates
    sharp_degrees: dict      # theta weight -> {pivot basis index: degree}

    def split_dims(self) -> dict:
        """theta weight -> Kazhdan-graded dimensions of that eigenspace."""
        out = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, {}).setdefault(self.W.degrees[i], 0)
            out[w][self.W.degrees[i]] += 1
        return {w: dict(sorted(d.items())) for w, d in sorted(out.items())}

    def nonneg_dims(self) -> dict:
        out = {}
        for i, w in enumerate(self.weights):
            if w >= 0:
                out[self.W.degrees[i]] = out.get(self.W.degrees[i], 0) + 1
        return dict(sorted(out.items()))

    def quotient_dims(self) -> dict:
        """Kazhdan-graded dimensions of U_{>=0}/U_sharp.  Positive weights
        lie in U_sharp, so the quotient is carried by weight zero."""
        counts = {}
        for i, w in enumerate(self.weights):
            if w == 0:
                counts[self.W.degrees[i]] = counts.get(self.W.degrees[i], 0) + 1
        for i, d in self.sharp_degrees.get(0, {}).items():
            counts[d] = counts.get(d, 0) - 1
        return {d: c for d, c in sorted(counts.items()) if c}

    def quotient_representatives(self) -> list:
        """Indices of weight-zero basis vectors spanning the quotient."""
        pivots = set(self.sharp_degrees.get(0, {}))
        return [i for i, w in enumerate(self.weights)
                if w == 0 and i not in pivots]


def theta_split(W: WTruncation, theta_diag) -> ThetaGrading:
    """Eigen-split of the invariant basis under ad theta, with the two-sided
    ideal U_sharp = U_{>=0} cap U * U_{>0} computed within the cap."""
    theta_diag = tuple(Q(v) for v in theta_diag)
    _express_in_torus(theta_diag, W.t_basis)  # raises when theta is not in t
    weights = [W.theta_weight(i, theta_diag) for i in range(W.dimension)]

    sharp = {}
    sharp_degrees = {}
    for j, b in enumerate(W.basis):
        if weights[j] <= 0:
            continue
        for i, a in enumerate(W.basis):
            if W.degrees[i] + W.degrees[j] > W.cap:
                continue
            total = weights[i] + weights[j]
            if total < 0:
                continue
            prod = w_multiply(W, a, b, verify=False)
            coords = W.coordinates(prod)
            ech = sharp.setdefault(total, Echelon())
            p = ech.add(coords)
            if p is not None:
                sharp_degrees.setdefault(total, {})[p] = W.degrees[p]
    return ThetaGrading(W, theta_diag, weights, sharp, sharp_degrees)


def convolve_dims(a: dict, b: dict, cap: int) -> dict:
    out = {}
    for da, ca in a.items():
        for db, cb in b.items():
            if da + db <= cap:
                out[da + db] = out.get(da + db, 0) + ca * cb
    return dict(sorted(out.items()))


def levi_quotient_check(tg: ThetaGrading, levi_dims: dict,
                        to_degree: int | None = None) -> dict:
    """Graded dimensions of U_{>=0}/U_sharp against an independently
    computed Levi W-truncation."""
    cap = tg.W.cap if to_degree is None else to_degree
    got = {d: c for d, c in tg.quotient_dims().items() if d <= cap}
    want = {d: c for d, c in levi_dims.items() if d <= cap and c}
    return {"ok": got == want, "got": got, "want": want, "to_degree": cap}


@dataclass
class MTilde:
    basis: tuple             # generator indices of m-tilde
    chi: dict                # the shifted character (E|.) restricted
    gprime: dict             # i -> basis indices of g'(i)
    shift: int               # the multiple of theta used in h - m*theta
    is_borel_nilradical: bool


def mtilde_build(datum: NilpotentDatum, theta_diag, m_levi: MSubalgebra,
                 shift: int | None = None) -> MTilde:
    """m-tilde = (Levi m) + u and the auxiliary grading by h - m*theta;
    verifies m-tilde = sum of the nonpositive new-grading blocks."""
    n = datum.n
    theta_diag = tuple(Q(v) for v in theta_diag)
    d_max = max(datum.grading.eigen)
    if shift is None:
        shift = 2 * d_max + 3
    if shift <= 2 * d_max + 2:
        raise ValueError(f"shift {shift} violates m > 2d+2 = {2 * d_max + 2}")

    def theta_wt(k):
        i, j = gen_pair(n, k)
        return theta_diag[i - 1] - theta_diag[j - 1]

    u = [k for k in range(dim_of(n)) if theta_wt(k) > 0]
    basis = tuple(sorted(set(m_levi.basis) | set(u)))

    gprime = {}
    for k in range(dim_of(n)):
        val = datum.grading.eigen[k] - shift * theta_wt(k)
        if val.denominator != 1:
            raise ValueError("theta must be integral")
        gprime.setdefault(int(val) + 2, []).append(k)
    gprime = {i: tuple(v) for i, v in sorted(gprime.items())}

    nonpos = tuple(sorted(k for i, block in gprime.items() if i <= 0
                          for k in block))
    if nonpos != basis:
        raise QwkError("m-tilde does not match the nonpositive new-grading "
                       "blocks")

    chi = {k: datum.chi.get(k, Q(0)) for k in basis}
    if any(chi[k] for k in u):
        raise QwkError("chi does not vanish on the positive part u")

    bset = set(basis)
    closed = all(
        set(bracket(GElement(n, {a: Q(1)}), GElement(n, {b: Q(1)})).terms)
        <= bset for a in basis for b in basis)
    pairs_even = {frozenset(gen_pair(n, k)) for k in basis
                  if gen_parity(n, k) == 0}
    one_per_pair = (
        len([k for k in basis if gen_parity(n, k) == 0]) == n * (n - 1) // 2
        and all(len(p) == 2 for p in pairs_even)
        and len(pairs_even) == n * (n - 1) // 2)
    return MTilde(basis, chi, gprime, shift, closed and one_per_pair)


def qchi_module(W: WTruncation) -> TruncatedModule:
    """U(g)/I_chi as a truncated module: left multiplication on the reduced
    monomial basis, cut at the Kazhdan cap (slice heights are Kazhdan
    degrees).  The m_chi-invariant vectors of this module recover exactly
    the truncated W-algebra, degree by degree."""
    ctx = W.ctx
    grading = W.datum.grading
    mons = W.monomials
    pos = {k: t for t, k in enumerate(mons)}

    weights, slice_of, slice_basis, heights = [], {}, [], []
    weight_of_col = []
    for col, key in enumerate(mons):
        deg = kazhdan_degree(ctx, key, grading)
        wt = (Q(deg),)
        s = slice_of.get(wt)
        if s is None:
            s = len(weights)
            slice_of[wt] = s
            weights.append(wt)
            slice_basis.append([])
            heights.append(deg)
        slice_basis[s].append(col)
        weight_of_col.append(s)

    action = {}
    for g in range(dim_of(W.datum.n)):
        g_el = ctx.generator(g)
        colmap = {}
        for col, key in enumerate(mons):
            img = ideal_reduce(multiply(g_el, UElement(ctx, {key: Q(1)})),
                               W.m.basis, W.m.chi)
            vec = {}
            for rk, c in img.terms.items():
                if rk in pos:
                    vec[pos[rk]] = c
            if vec:
                colmap[col] = vec
        action[g] = colmap
    return TruncatedModule(W.datum.n, W.cap, "qchi", weights[0], weights,
                           slice_of, [list(b) for b in slice_basis],
                           weight_of_col, heights, action)


def whittaker_functor(M: TruncatedModule, msub: MSubalgebra):
    """Exact nullspace of the shifted generators a - chi(a) on a truncated
    module; returns (basis, boundary_rank), the latter the rank of the
    solution space on the deepest slice where lowering was cut."""
    rows = {}
    for a in msub.basis:
        shift = msub.chi.get(a, Q(0))
        colmap = M.action[a]
        for c in range(M.dimension):
            img = dict(colmap.get(c, {}))
            if shift:
                img[c] = img.get(c, 0) - shift
            for r, v in img.items():
                if v:
                    rows.setdefault((a, r), {})[c] = v
    kernel = nullspace(list(rows.values()), M.dimension)
    top = max(M.heights) if M.heights else 0
    ech = Echelon()
    for v in kernel:
        ech.add({c: x for c, x in v.items()
                 if M.heights[M.weight_of_col[c]] == top})
    return kernel, ech.dim


def quotient_table(tg: ThetaGrading) -> dict:
    """Structure constants of U_{>=0}/U_sharp over the representative basis:
    (i, j) -> {k: coeff} for representative pairs with degree sum <= cap."""
    W = tg.W
    reps = tg.quotient_representatives()
    rep_pos = {r: t for t, r in enumerate(reps)}
    sharp0 = tg.sharp.get(0, Echelon())
    table = {}
    for ti, i in enumerate(reps):
        for tj, j in enumerate(reps):
            if W.degrees[i] + W.degrees[j] > W.cap:
                continue
            prod = w_multiply(W, W.basis[i], W.basis[j], verify=False)
            coords = sharp0.reduce(W.coordinates(prod))
            entry = {}
            for b, c in coords.items():
                if b not in rep_pos:
                    raise QwkError("quotient reduction left the representative "
                                   "span")
                entry[rep_pos[b]] = c
            table[(ti, tj)] = entry
    return table


def check_quotient_module(tg: ThetaGrading, rho: dict, dim: int,
                          table: dict | None = None) -> None:
    """Verify supplied action matrices against the quotient table (all
    representative pairs within the cap); raises on the first violation."""
    from .highest_weight import mat_eye, mat_mul, mat_zero

    if table is None:
        table = quotient_table(tg)
    reps = tg.quotient_representatives()
    unit = next(t for t, r in enumerate(reps) if tg.W.degrees[r] == 0)
    if rho[unit] != mat_eye(dim):
        raise QwkError("the unit representative must act as the identity")
    for (ti, tj), entry in table.items():
        lhs = mat_mul(rho[ti], rho[tj])
        rhs = mat_zero(dim)
        for tk, c in entry.items():
            for r in range(dim):
                for s in range(dim):
                    rhs[r][s] += c * rho[tk][r][s]
        if lhs != rhs:
            raise QwkError(f"module relation fails for representative pair "
                           f"({ti}, {tj})")


def find_one_dim_rep(tg: ThetaGrading, candidates=(Q(0), Q(1), Q(-1), Q(1, 2),
                                                   Q(-1, 2), Q(2))):
    """Search for an algebra map U_{>=0}/U_sharp -> Q by constraint
    propagation over the quotient table with a small candidate grid for the
    undetermined values.  Returns {rep position: value} or None."""
    W = tg.W
    reps = tg.quotient_representatives()
    table = quotient_table(tg)
    unit = next(t for t, r in enumerate(reps) if W.degrees[r] == 0)

    def propagate(values):
        values = dict(values)
        changed = True
        while changed:
            changed = False
            for (ti, tj), entry in table.items():
                if ti not in values or tj not in values:
                    continue
                lhs = values[ti] * values[tj]
                unknown = [k for k in entry if k not in values]
                known = sum((c * values[k] for k, c in entry.items()
                             if k in values), Q(0))
                if not unknown:
                    if lhs != known:
                        return None
                elif len(unknown) == 1:
                    k = unknown[0]
                    values[k] = (lhs - known) / entry[k]
                    changed = True
        return values

    def search(values):
        values = propagate(values)
        if values is None:
            return None
        missing = [t for t in range(len(reps)) if t not in values]
        if not missing:
            return values
        t = min(missing, key=lambda t: W.degrees[reps[t]])
        for c in candidates:
            out = search({**values, t: c})
            if out is not None:
                return out
        return None

    return search({unit: Q(1)})


def w_generators(tg: ThetaGrading) -> dict:
    """(Kazhdan degree, theta weight, parity) -> count of graded PBW
    generators of the truncated W-algebra.

    A basis vector of degree D is decomposable when its symbol lies in the
    span of symbols of products with degree sum D; only the degree-D part
    of each product counts (products can drop degree, e.g. odd squares)."""
    W = tg.W
    product_pivots = {}
    product_ech = {}
    for i in range(W.dimension):
        if W.degrees[i] == 0:
            continue
        for j in range(W.dimension):
            if W.degrees[j] == 0 or W.degrees[i] + W.degrees[j] > W.cap:
                continue
            D = W.degrees[i] + W.degrees[j]
            prod = w_multiply(W, W.basis[i], W.basis[j], verify=False)
            if not prod:
                continue
            coords = W.coordinates(prod)
            symbol = {b: c for b, c in coords.items() if W.degrees[b] == D}
            if not symbol:
                continue
            key = (tg.weights[i] + tg.weights[j],
                   (W.parities[i] + W.parities[j]) % 2)
            ech = product_ech.setdefault(key, Echelon())
            p = ech.add(symbol)
            if p is not None:
                product_pivots.setdefault(key, set()).add(p)
    out = {}
    for i in range(W.dimension):
        d = W.degrees[i]
        if d == 0:
            continue
        key = (tg.weights[i], W.parities[i])
        if i in product_pivots.get(key, set()):
            continue
        out[(d, key[0], key[1])] = out.get((d, key[0], key[1]), 0) + 1
    return dict(sorted(out.items()))


def _negative_monomial_counts(gens: list, cap: int, depth: int) -> dict:
    """Counts of monomials in negative-theta-weight generators by total
    theta degree -k (k <= depth), Kazhdan degree <= cap."""
    states = {(0, 0): 1}  # (degree, -weight) -> count
    for kdeg, wt, par, mult in gens:
        if wt >= 0:
            continue
        for _ in range(mult):
            new = dict(states)
            top = 1 if par else cap // kdeg
            for (d, w), c in states.items():
                for e in range(1, top + 1):
                    nd, nw = d + e * kdeg, w + e * (-wt)
                    if nd <= cap and nw <= depth:
                        key = (nd, nw)
                        new[key] = new.get(key, 0) + c
            states = new
    out = {k: 0 for k in range(depth + 1)}
    for (d, w), c in states.items():
        out[w] = out.get(w, 0) + c
    return dict(sorted(out.items()))


def w_verma_truncation(tg: ThetaGrading, V_dim: int, depth: int,
                       datum_check=True) -> dict:
    """Slice dimensions of the induced module over the truncated W-algebra:
    free action of the negative-weight PBW generators on a module V over
    U_{>=0}/U_sharp, truncated by theta degree.

    Returns {"slices": {-k: dim}, "generators": ..., "oracle": ...}; the
    generator multiset extracted from the invariant basis is checked
    against the independent centralizer count.
    """
    if all(w == 0 for w in tg.weights):
        raise ValueError("theta grading is trivial: nothing to induce along")
    gens = w_generators(tg)
    route1 = [(d, w, p, c) for (d, w, p), c in gens.items()]
    oracle = {}
    for kdeg, tw, par, _vec in centralizer_kazhdan_data(tg.W.datum,
                                                        tg.theta_diag):
        if kdeg <= tg.W.cap:
            oracle[(kdeg, tw, par)] = oracle.get((kdeg, tw, par), 0) + 1
    counts = _negative_monomial_counts(route1, tg.W.cap, depth)
    agree = (gens == oracle) if datum_check else None
    return {
        "slices": {-k: c * V_dim for k, c in counts.items()},
        "generators": gens,
        "oracle": dict(sorted(oracle.items())),
        "generator_check": agree,
    }


# ---------------------------------------------------------------------------
# Darboux-Weinstein decompositions
# ---------------------------------------------------------------------------

def dw_decomposition_check(datum: NilpotentDatum) -> dict:
    """Exact rank verification of g = g^E (+) Pi[g,F] = Pi g^F (+) [g,E]
    and of the nondegeneracy of omega_chi on Pi[g,F]."""
    if not datum.E.terms:
        raise NilpotencyError("degenerate datum E = 0 has no sl(2) companion")
    n = datum.n
    d = dim_of(n)

    def image_span(x: GElement, reverse_parity):
        ech = Echelon()
        vecs = []
        for k in range(d):
            img = bracket(GElement(n, {k: Q(1)}), x)
            if reverse_parity:
                img = parity_reverse(img)
            if img.terms and ech.add(dict(img.terms)) is not None:
                vecs.append(img)
        return ech, vecs

    def kernel_span(x: GElement, reverse_parity):
        vecs = []
        for v in nullspace(ad_matrix(x), d):
            g = GElement(n, v)
            vecs.append(parity_reverse(g) if reverse_parity else g)
        return vecs

    report = {}
    pi_gF, pi_gF_vecs = image_span(datum.F, reverse_parity=True)
    gE = kernel_span(datum.E, reverse_parity=False)
    ech = Echelon()
    for v in gE:
        ech.add(dict(v.terms))
    ge_dim = ech.dim
    for v in pi_gF_vecs:
        ech.add(dict(v.terms))
    report["gE_plus_Pi_gF"] = {
        "dim_gE": ge_dim, "dim_Pi_ad_F_image": pi_gF.dim,
        "direct_sum": ge_dim + pi_gF.dim == d and ech.dim == d,
    }

    gE_img, gE_img_vecs = image_span(datum.E, reverse_parity=False)
    pi_gF_ker = kernel_span(datum.F, reverse_parity=True)
    ech2 = Echelon()
    for v in pi_gF_ker:
        ech2.add(dict(v.terms))
    pk_dim = ech2.dim
    for v in gE_img_vecs:
        ech2.add(dict(v.terms))
    report["Pi_gF_plus_ad_E_image"] = {
        "dim_Pi_gF": pk_dim, "dim_ad_E_image": gE_img.dim,
        "direct_sum": pk_dim + gE_img.dim == d and ech2.dim == d,
    }

    basis_vecs = [GElement(n, r) for r in pi_gF.basis()]
    pos = {t: t for t in range(len(basis_vecs))}
    rows = []
    for a in basis_vecs:
        row = {}
        for t, b in enumerate(basis_vecs):
            val = sum((v * datum.chi.get(k, Q(0))
                       for k, v in bracket(a, b).terms.items()), Q(0))
            if val:
                row[pos[t]] = val
        rows.append(row)
    gram_rank = _rank_rows([r for r in rows if r])
    report["omega_on_Pi_gF"] = {
        "dim": len(basis_vecs), "gram_rank": gram_rank,
        "nondegenerate": gram_rank == len(basis_vecs),
    }
    report["ok"] = (report["gE_plus_Pi_gF"]["direct_sum"]
                    and report["Pi_gF_plus_ad_E_image"]["direct_sum"]
                    and report["omega_on_Pi_gF"]["nondegenerate"])
    return report
