"""Clifford modules over the Cartan, truncated highest-weight modules,
formal characters, and singular-vector search.

The irreducible Cartan module u(lam) is built from 2-dimensional spin
factors over the nonzero coordinates of lam, paired greedily in index
order; the defining relations hbar_i hbar_j + hbar_j hbar_i = 2 delta_ij
lam_i hold exactly over Q.  Rational 2x2 factors for a pair (a, b) exist
only when the conic p^2 - a r^2 = b has a rational point; the constructor
searches closed forms first and then a bounded grid, and reports the
obstruction otherwise (over Q, unlike over an algebraically closed field,
some pairs admit no such factor at dimension 2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Echelon, nullspace
from .rationals import Q, rat_str, sqrt_exact
from .pbw import PBWContext
from .superalgebra import (
    GElement,
    QwkError,
    RankMismatchError,
    dim_of,
    gen_name,
    gen_pair,
    gen_parity,
    idx,
    weight,
    weight_add,
)


class CliffordConstructionError(QwkError):
    pass


class TruncationError(QwkError):
    pass


# ---------------------------------------------------------------------------
# dense matrix helpers (module dimensions stay tiny)
# ---------------------------------------------------------------------------

def mat_zero(n):
    return [[Q(0)] * n for _ in range(n)]


def mat_eye(n):
    m = mat_zero(n)
    for i in range(n):
        m[i][i] = Q(1)
    return m


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = [[Q(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                oi = out[i]
                for j in range(m):
                    if bt[j]:
                        oi[j] += c * bt[j]
    return out


def mat_add(a, b, sb=1):
    return [[x + sb * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_tensor(a, b):
    na, nb = len(a), len(b)
    out = [[Q(0)] * (na * nb) for _ in range(na * nb)]
    for i in range(na):
        for j in range(na):
            if a[i][j]:
                for k in range(nb):
                    for l in range(nb):
                        if b[k][l]:
                            out[i * nb + k][j * nb + l] = a[i][j] * b[k][l]
    return out


def mat_eq(a, b):
    return a == b


# ---------------------------------------------------------------------------
# spin factors
# ---------------------------------------------------------------------------

def _conic_point(a, b):
    """Rational (p, r) with p^2 - a r^2 = b, or None.

    Closed forms: -ab a square gives the graded off-diagonal factor,
    b or a a square gives a mixed one; otherwise a bounded grid search.
    """
    t = sqrt_exact(-a * b)
    if t is not None:
        return Q(0), t / a
    s = sqrt_exact(b)
    if s is not None:
        return s, Q(0)
    s = sqrt_exact(a)
    if s is not None:
        return (b + 1) / 2, (b - 1) / (2 * s)
    for den in range(1, 13):
        for pu in range(-12, 13):
            p = Q(pu, den)
            rest = (p * p - b) / a
            if rest < 0:
                continue
            r = sqrt_exact(rest)
            if r is not None:
                return p, r
    return None


@dataclass
class _SpinFactor:
    indices: tuple          # one or two coordinate positions (0-based)
    matrices: dict          # position -> 2x2 matrix
    sign_op: list | None    # G with G^2 = 1 anticommuting with the matrices


def _single_factor(i, lam_i):
    x = [[Q(0), Q(lam_i)], [Q(1), Q(0)]]
    g = [[Q(1), Q(0)], [Q(0), Q(-1)]]
    return _SpinFactor((i,), {i: x}, g)


def _pair_factor(i, j, lam_i, lam_j):
    pt = _conic_point(Q(lam_i), Q(lam_j))
    if pt is None:
        raise CliffordConstructionError(
            f"no rational 2x2 factor for the pair (lam_{i+1}, lam_{j+1}) = "
            f"({rat_str(lam_i)}, {rat_str(lam_j)}); the quadratic form "
            "p^2 - lam_i r^2 does not represent lam_j over Q")
    p, r = pt
    x = [[Q(0), Q(lam_i)], [Q(1), Q(0)]]
    y = [[p, -lam_i * r], [r, -p]]
    sign_op = None
    t = sqrt_exact(-lam_i * lam_j)
    if t:
        xy = mat_mul(x, y)
        sign_op = mat_scale(xy, Q(1) / t)
    return _SpinFactor((i, j), {i: x, j: y}, sign_op)


@dataclass
class CliffordModule:
    """Irreducible Cartan module at weight lam with exact action matrices."""

    lam: tuple
    k: int                      # number of nonzero coordinates
    dimension: int
    hbar: list                  # action matrix of hbar_i per coordinate
    type_flag: str              # "M" or "Q"
    cover_of: tuple | None = None   # set on projective covers

    @property
    def n(self):
        return len(self.lam)

    def endomorphism_dimension(self) -> int:
        return commutant_dimension(self.hbar)


def commutant_dimension(mats) -> int:
    """Dimension of {T : T A = A T for all A}."""
    d = len(mats[0]) if mats else 1
    rows = []
    for a in mats:
        for i in range(d):
            for j in range(d):
                row = {}
                for t in range(d):
                    if a[t][j]:
                        row[i * d + t] = row.get(i * d + t, 0) + a[t][j]
                    if a[i][t]:
                        row[t * d + j] = row.get(t * d + j, 0) - a[i][t]
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    return d * d - _rank(rows)


def _rank(rows):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.dim


def clifford_module(lam) -> CliffordModule:
    """u(lam): spin factors over greedily paired nonzero coordinates; zero
    coordinates act as zero.  dim = 2^ceil(k/2); type Q iff k is odd."""
    lam = weight(lam)
    nonzero = [i for i, c in enumerate(lam) if c]
    k = len(nonzero)
    factors = []
    pos = 0
    while pos + 1 < len(nonzero):
        i, j = nonzero[pos], nonzero[pos + 1]
        factors.append(_pair_factor(i, j, lam[i], lam[j]))
        pos += 2
    if pos < len(nonzero):
        factors.append(_single_factor(nonzero[pos], lam[nonzero[pos]]))

    # Jordan-Wigner ordering: every factor except the last needs a sign op
    factors.sort(key=lambda f: f.sign_op is None)
    if len(factors) > 1 and any(f.sign_op is None for f in factors[:-1]):
        raise CliffordConstructionError(
            "cannot chain spin factors: more than one factor lacks a "
            "rational parity involution")

    dim = 2 ** len(factors) if factors else 1
    hbar = [mat_zero(dim) for _ in range(len(lam))]
    for s, factor in enumerate(factors):
        for i, local in factor.matrices.items():
            m = None
            for t, other in enumerate(factors):
                piece = (other.sign_op if t < s else local if t == s
                         else mat_eye(2))
                m = piece if m is None else mat_tensor(m, piece)
            hbar[i] = m
    for i in range(len(lam)):
        if lam[i] == 0:
            hbar[i] = mat_zero(dim)

    cd = commutant_dimension([hbar[i] for i in nonzero]) if nonzero else 1
    type_flag = "M" if cd == 1 else "Q"
    return CliffordModule(lam, k, dim, hbar, type_flag)


def projective_cover_h(lam) -> CliffordModule:
    """Projective cover of u(lam) over the weight-lam Clifford quotient:
    u(lam) tensored with the regular module of the Grassmann algebra on
    the degenerate generators."""
    lam = weight(lam)
    base = clifford_module(lam)
    degenerate = [i for i, c in enumerate(lam) if not c]
    if not degenerate:
        return base
    m = len(degenerate)
    gdim = 2 ** m
    subsets = [tuple(sorted(s)) for s in _subsets(degenerate)]
    subsets.sort(key=lambda s: (len(s), s))
    index = {s: t for t, s in enumerate(subsets)}

    left = {}
    for j in degenerate:
        mat = mat_zero(gdim)
        for s in subsets:
            if j in s:
                continue
            target = tuple(sorted(s + (j,)))
            sign = Q((-1) ** sum(1 for x in s if x < j))
            mat[index[target]][index[s]] = sign
        left[j] = mat
    par = mat_zero(gdim)
    for s in subsets:
        par[index[s]][index[s]] = Q((-1) ** len(s))

    dim = gdim * base.dimension
    hbar = []
    for i in range(len(lam)):
        if lam[i]:
            hbar.append(mat_tensor(par, base.hbar[i]))
        elif i in left:
            hbar.append(mat_tensor(left[i], mat_eye(base.dimension)))
        else:
            hbar.append(mat_zero(dim))
    return CliffordModule(lam, base.k, dim, hbar, base.type_flag, cover_of=lam)


def _subsets(items):
    out = [()]
    for x in items:
        out.extend(s + (x,) for s in list(out))
    return out


def simple_tensor_type(type_a: str, type_b: str) -> str:
    """Tensor of simples: simple unless both factors are type Q."""
    if type_a not in ("M", "Q") or type_b not in ("M", "Q"):
        raise ValueError("types must be 'M' or 'Q'")
    return "doubled" if type_a == "Q" and type_b == "Q" else "simple"


# ---------------------------------------------------------------------------
# truncated weight-graded modules
# ---------------------------------------------------------------------------

def root_height(n, k) -> int:
    i, j = gen_pair(n, k)
    return abs(i - j)


@dataclass
class TruncatedModule:
    """Finite weight-graded slice of an induced module.

    Basis vectors are (lowering-monomial, fiber-vector) pairs grouped into
    weight slices; `action[g]` maps column index to a sparse {row: coeff}
    image.  Lowering beyond the declared depth is silently cut at the
    boundary (the standard truncation semantics everywhere downstream).
    """

    n: int
    depth: int
    provenance: str
    top: tuple
    weights: list           # weight tuple per slice
    slice_of: dict          # weight -> slice index
    slice_basis: list       # slice index -> list of global basis indices
    weight_of_col: list     # global basis index -> slice index
    heights: list           # slice index -> drop height
    action: dict            # generator basis index -> {col: {row: Q}}

    @property
    def dimension(self):
        return len(self.weight_of_col)

    def slice_dim(self, wt) -> int:
        s = self.slice_of.get(weight(wt))
        return len(self.slice_basis[s]) if s is not None else 0

    def apply(self, g: int, vec: dict) -> dict:
        cols = self.action[g]
        out = {}
        for c, val in vec.items():
            for r, a in cols.get(c, {}).items():
                v = out.get(r, 0) + a * val
                if v:
                    out[r] = v
                else:
                    out.pop(r, None)
        return out

    def to_json(self, with_action=False) -> dict:
        data = {
            "schema": "qwk-module/1",
            "n": self.n,
            "provenance": self.provenance,
            "depth": self.depth,
            "highest_weight": [rat_str(c) for c in self.top],
            "slices": [
                {
                    "weight": [rat_str(c) for c in self.weights[s]],
                    "height": self.heights[s],
                    "dim": len(self.slice_basis[s]),
                }
                for s in range(len(self.weights))
            ],
        }
        if with_action:
            data["action"] = {
                gen_name(self.n, g): [
                    [r, c, rat_str(v)]
                    for c in sorted(cols)
                    for r, v in sorted(cols[c].items())
                ]
                for g, cols in sorted(self.action.items())
            }
        return data


def _lowering_monomials(n, lowering, depth):
    """Exponent dicts over the lowering generators with height <= depth,
    deterministic order (by height, then lexicographic key)."""
    gens = sorted(lowering)
    out = [{}]
    for g in gens:
        h = root_height(n, g)
        cap_e = 1 if gen_parity(n, g) else depth // h if h else 0
        new = []
        for mono in out:
            used = sum(root_height(n, k) * e for k, e in mono.items())
            for e in range(0, cap_e + 1):
                if used + e * h <= depth:
                    m2 = dict(mono)
                    if e:
                        m2[g] = e
                    new.append(m2)
        out = new
    def key(mono):
        return (sum(root_height(n, k) * e for k, e in mono.items()),
                tuple(sorted(mono.items())))
    return sorted(out, key=key)


def _monomial_weight_drop(n, mono):
    """Total weight of the monomial: sum of exponent * (eps_i - eps_j)."""
    drop = [0] * n
    for g, e in mono.items():
        i, j = gen_pair(n, g)
        drop[i - 1] += e
        drop[j - 1] -= e
    return tuple(Q(c) for c in drop)


class _FiberModule:
    """Uniform view of the fiber: weights per basis vector and generator
    action matrices for the Levi part."""

    def __init__(self, dimension, weights, action):
        self.dimension = dimension
        self.weights = weights      # weight tuple per fiber basis vector
        self.action = action        # gen basis idx -> dense matrix

    def apply_word(self, word, col):
        """Apply a generator word (leftmost acts last) to basis vector col;
        returns {fiber row: coeff}."""
        vec = {col: Q(1)}
        for g in reversed(word):
            mat = self.action.get(g)
            if mat is None:
                return {}
            out = {}
            for c, val in vec.items():
                for r in range(self.dimension):
                    a = mat[r][c]
                    if a:
                        v = out.get(r, 0) + a * val
                        if v:
                            out[r] = v
                        else:
                            out.pop(r, None)
            vec = out
            if not vec:
                break
        return vec


def fiber_from_clifford(cm: CliffordModule) -> _FiberModule:
    n = cm.n
    action = {}
    for i in range(n):
        hmat = mat_zero(cm.dimension)
        for t in range(cm.dimension):
            hmat[t][t] = cm.lam[i]
        action[idx(n, 0, i + 1, i + 1)] = hmat
        action[idx(n, 1, i + 1, i + 1)] = cm.hbar[i]
    return _FiberModule(cm.dimension, [cm.lam] * cm.dimension, action)


def _induced_truncation(n, fiber: _FiberModule, lowering, annihilating,
                        depth, provenance, top) -> TruncatedModule:
    """Common core: free action of lowering monomials on the fiber, with
    the annihilating set acting as zero on the fiber."""
    ctx_order = sorted(lowering) + \
        [g for g in range(dim_of(n)) if g not in lowering and g not in annihilating] + \
        sorted(annihilating)
    ctx = PBWContext(n, ctx_order)
    low_set = set(lowering)
    ann_set = set(annihilating)

    monomials = _lowering_monomials(n, lowering, depth)
    cols = []        # (monomial tuple-key, fiber index)
    col_index = {}
    weights, slice_of, slice_basis, heights = [], {}, [], []
    weight_of_col = []
    for mono in monomials:
        key = tuple(sorted(mono.items()))
        drop = _monomial_weight_drop(n, mono)
        h = sum(root_height(n, g) * e for g, e in mono.items())
        for t in range(fiber.dimension):
            wt = weight_add(fiber.weights[t], drop)
            s = slice_of.get(wt)
            if s is None:
                s = len(weights)
                slice_of[wt] = s
                weights.append(wt)
                slice_basis.append([])
                heights.append(h)
            col = len(cols)
            cols.append((key, t))
            col_index[(key, t)] = col
            slice_basis[s].append(col)
            weight_of_col.append(s)

    mono_keys = sorted({c[0] for c in cols})
    straightened = {}
    for g in range(dim_of(n)):
        for key in mono_keys:
            word = (g,) + sum(((k,) * e for k, e in key), ())
            straightened[(g, key)] = ctx.normal_word(word)

    action = {}
    for g in range(dim_of(n)):
        colmap = {}
        for key in mono_keys:
            nf = straightened[(g, key)]
            parts = []
            for mkey, coeff in nf.items():
                low_part, rest_word = [], []
                dead = False
                for p, e in enumerate(mkey):
                    gen = ctx.order[p]
                    if not e:
                        continue
                    if gen in low_set:
                        low_part.append((gen, e))
                    elif gen in ann_set:
                        dead = True
                        break
                    else:
                        rest_word.extend([gen] * e)
                if dead:
                    continue
                lkey = tuple(sorted(low_part))
                h = sum(root_height(n, k) * e for k, e in lkey)
                if h > depth:
                    continue
                parts.append((lkey, tuple(rest_word), coeff))
            for t in range(fiber.dimension):
                col = col_index[(key, t)]
                img = {}
                for lkey, rest, coeff in parts:
                    fib = fiber.apply_word(rest, t)
                    for r, val in fib.items():
                        target = col_index.get((lkey, r))
                        if target is None:
                            continue
                        v = img.get(target, 0) + coeff * val
                        if v:
                            img[target] = v
                        else:
                            img.pop(target, None)
                if img:
                    colmap[col] = img
        action[g] = colmap

    return TruncatedModule(n, depth, provenance, top, weights, slice_of,
                           [list(b) for b in slice_basis], weight_of_col,
                           heights, action)


def verma_truncation(lam, depth, variant="Verma") -> TruncatedModule:
    """Truncated M(lam) (or N(lam) with the projective-cover fiber)."""
    if depth < 0:
        raise TruncationError("depth must be nonnegative")
    lam = weight(lam)
    n = len(lam)
    cm = projective_cover_h(lam) if variant == "N" else clifford_module(lam)
    fiber = fiber_from_clifford(cm)
    lowering = [idx(n, p, i, j) for p in (0, 1)
                for i in range(1, n + 1) for j in range(1, n + 1) if i > j]
    raising = [idx(n, p, i, j) for p in (0, 1)
               for i in range(1, n + 1) for j in range(1, n + 1) if i < j]
    return _induced_truncation(n, fiber, lowering, raising,
                               depth, variant, lam)


@dataclass
class LModuleData:
    """Finite-dimensional module data over a Levi subalgebra: weights per
    basis vector and dense action matrices for every Levi generator."""

    n: int
    weights: list
    action: dict

    @property
    def dimension(self):
        return len(self.weights)


def check_l_module(data: LModuleData, levi_gens) -> None:
    """Bracket compatibility of the supplied action matrices."""
    from .superalgebra import bracket

    d = data.dimension
    for a in levi_gens:
        for b in levi_gens:
            pa, pb = gen_parity(data.n, a), gen_parity(data.n, b)
            lhs = mat_add(mat_mul(data.action[a], data.action[b]),
                          mat_mul(data.action[b], data.action[a]),
                          Q(-((-1) ** (pa * pb))))
            rhs = mat_zero(d)
            for g, c in bracket(GElement(data.n, {a: Q(1)}),
                                GElement(data.n, {b: Q(1)})).terms.items():
                if g not in data.action:
                    raise ValueError("Levi bracket leaves the supplied action set")
                rhs = mat_add(rhs, mat_scale(data.action[g], c))
            if not mat_eq(lhs, rhs):
                raise ValueError(
                    f"action matrices violate [{gen_name(data.n, a)}, "
                    f"{gen_name(data.n, b)}]")


def parabolic_induce(V: LModuleData, H: GElement, depth: int) -> TruncatedModule:
    """Truncated M^p(V) = U(g) (x)_{U(p)} V with u acting as zero on V."""
    from .superalgebra import parabolic_from_grader

    if V.n != H.n:
        raise RankMismatchError("module data and grader rank differ")
    u, l, um = parabolic_from_grader(H)
    for g in l:
        if g not in V.action:
            raise ValueError(f"action matrix missing for {gen_name(V.n, g)}")
    check_l_module(V, l)
    fiber = _FiberModule(V.dimension, V.weights, V.action)
    return _induced_truncation(V.n, fiber, list(um), list(u), depth,
                               "parabolic", max(V.weights))


def lmodule_from_clifford(cm: CliffordModule, levi_root_gens=()) -> LModuleData:
    """u(lam) as Levi-module data; root generators in the list act as zero
    (valid only when the weight is constant across their blocks, which the
    consistency check enforces)."""
    fiber = fiber_from_clifford(cm)
    action = dict(fiber.action)
    for g in levi_root_gens:
        action[g] = mat_zero(cm.dimension)
    return LModuleData(cm.n, list(fiber.weights), action)


# ---------------------------------------------------------------------------
# characters and singular vectors
# ---------------------------------------------------------------------------

@dataclass
class Character:
    """Sparse weight -> multiplicity map valid to the stated depth."""

    n: int
    depth: int
    mult: dict

    def to_csv(self) -> str:
        header = ",".join(f"w{i+1}" for i in range(self.n)) + ",multiplicity"
        lines = [header]
        for wt in sorted(self.mult, key=lambda w: tuple(-c for c in w)):
            lines.append(",".join(rat_str(c) for c in wt) + f",{self.mult[wt]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "schema": "qwk-character/1",
            "n": self.n,
            "depth": self.depth,
            "weights": [
                {"weight": [rat_str(c) for c in wt], "multiplicity": self.mult[wt]}
                for wt in sorted(self.mult, key=lambda w: tuple(-c for c in w))
            ],
        }

    def __add__(self, other):
        if self.n != other.n:
            raise RankMismatchError("characters of different rank")
        out = dict(self.mult)
        for wt, m in other.mult.items():
            out[wt] = out.get(wt, 0) + m
        return Character(self.n, min(self.depth, other.depth), out)


def character(M: TruncatedModule) -> Character:
    mult = {M.weights[s]: len(M.slice_basis[s])
            for s in range(len(M.weights)) if M.slice_basis[s]}
    return Character(M.n, M.depth, mult)


def natural_module(n: int) -> TruncatedModule:
    """The natural 2n-dimensional module: even vectors v_i and odd vectors
    w_i of weight eps_i, with e(i,j), f(i,j) moving index j to index i."""
    weights, slice_of, slice_basis, heights = [], {}, [], []
    weight_of_col = []
    cols = []
    for parity in (0, 1):
        for t in range(n):
            wt = tuple(Q(1 if s == t else 0) for s in range(n))
            s = slice_of.get(wt)
            if s is None:
                s = len(weights)
                slice_of[wt] = s
                weights.append(wt)
                slice_basis.append([])
                heights.append(t)
            col = len(cols)
            cols.append((parity, t))
            slice_basis[s].append(col)
            weight_of_col.append(s)

    action = {}
    for g in range(dim_of(n)):
        i, j = gen_pair(n, g)
        pg = gen_parity(n, g)
        colmap = {}
        for col, (parity, t) in enumerate(cols):
            if t != j - 1:
                continue
            # block form of the generator: index j goes to index i, with the
            # parity of the target flipped by odd generators and no signs
            target = (parity ^ pg) * n + (i - 1)
            colmap[col] = {target: Q(1)}
        action[g] = colmap
    return TruncatedModule(n, n - 1, "natural", weights[0], weights, slice_of,
                           [list(b) for b in slice_basis], weight_of_col,
                           heights, action)


def submodule_span(M: TruncatedModule, vectors) -> Echelon:
    """Echelon basis of the submodule generated by the given vectors inside
    the truncation (closed under every generator action, boundary cut)."""
    ech = Echelon()
    queue = [dict(v) for v in vectors]
    while queue:
        v = queue.pop()
        if ech.add(v) is None:
            continue
        for g in range(dim_of(M.n)):
            img = M.apply(g, v)
            if img:
                queue.append(img)
    return ech


def quotient_module(M: TruncatedModule, span: Echelon) -> TruncatedModule:
    """Quotient of the truncation by an action-stable echelon span."""
    pivots = set(span.rows)
    keep = [c for c in range(M.dimension) if c not in pivots]
    new_index = {c: t for t, c in enumerate(keep)}
    slice_basis = [[new_index[c] for c in basis if c in new_index]
                   for basis in M.slice_basis]
    weight_of_col = [M.weight_of_col[c] for c in keep]
    action = {}
    for g, colmap in M.action.items():
        out = {}
        for c in keep:
            img = span.reduce(colmap.get(c, {}))
            if img:
                out[new_index[c]] = {new_index[r]: v for r, v in img.items()}
        action[g] = out
    return TruncatedModule(M.n, M.depth, M.provenance + "/quotient", M.top,
                           list(M.weights), dict(M.slice_of), slice_basis,
                           weight_of_col, list(M.heights), action)


def singular_vectors(M: TruncatedModule, mu) -> list:
    """Exact nullspace of the stacked simple raising operators on slice mu."""
    mu = weight(mu)
    s = M.slice_of.get(mu)
    if s is None:
        raise TruncationError(f"weight {mu} outside the truncation")
    cols = M.slice_basis[s]
    col_pos = {c: t for t, c in enumerate(cols)}
    n = M.n
    raisers = [idx(n, p, i, i + 1) for p in (0, 1) for i in range(1, n)]
    rows = {}
    for g in raisers:
        colmap = M.action[g]
        for c in cols:
            for r, v in colmap.get(c, {}).items():
                rows.setdefault((g, r), {})[col_pos[c]] = v
    kernel = nullspace(list(rows.values()), len(cols))
    return [{cols[t]: c for t, c in v.items()} for v in kernel]
