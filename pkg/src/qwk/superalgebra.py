"""Structure constants, root data, gradings and bilinear forms of q(n).

q(n) is realized inside gl(n|n) as matrices with equal diagonal blocks A
and equal off-diagonal blocks B.  The basis is {e(i,j)} (even, the A part)
and {f(i,j)} (odd, the B part), 1 <= i,j <= n.  Structure constants are
generated once from 2n x 2n matrix supercommutators and cached; everything
downstream works with the abstract table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .linalg import Echelon, nullspace
from .rationals import Q, rat, rat_str

MAX_RANK = 8


class QwkError(Exception):
    """Base class for errors raised by this package."""


class RankMismatchError(QwkError):
    pass


class HomogeneityError(QwkError):
    pass


class NilpotencyError(QwkError):
    pass


# ---------------------------------------------------------------------------
# basis indexing
# ---------------------------------------------------------------------------

def dim_of(n: int) -> int:
    return 2 * n * n


def idx(n: int, parity: int, i: int, j: int) -> int:
    return parity * n * n + (i - 1) * n + (j - 1)


def gen_parity(n: int, k: int) -> int:
    return k // (n * n)


def gen_pair(n: int, k: int):
    r = k % (n * n)
    return r // n + 1, r % n + 1


def gen_name(n: int, k: int) -> str:
    i, j = gen_pair(n, k)
    return f"{'ef'[gen_parity(n, k)]}({i},{j})"


def gen_root(n: int, k: int):
    """Root of the basis element as an integer epsilon-vector (0 on h)."""
    i, j = gen_pair(n, k)
    root = [0] * n
    root[i - 1] += 1
    root[j - 1] -= 1
    return tuple(root)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class GElement:
    """Sparse exact vector in q(n) over the e/f basis."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {k: Q(c) for k, c in (terms or {}).items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, GElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        _same_rank(self, other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return GElement(self.n, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GElement(self.n, {k: -c for k, c in self.terms.items()})

    def __rmul__(self, scalar):
        s = Q(scalar)
        return GElement(self.n, {k: s * c for k, c in self.terms.items()})

    def parity(self):
        """0, 1, or None when the element mixes parities (or is zero)."""
        ps = {gen_parity(self.n, k) for k in self.terms}
        if len(ps) == 1:
            return ps.pop()
        return None

    def is_homogeneous(self) -> bool:
        return not self.terms or self.parity() is not None

    def __repr__(self):
        return f"GElement({self.n}, {self.to_text()!r})"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c, name = self.terms[k], gen_name(self.n, k)
            parts.append(name if c == 1 else f"{rat_str(c)}*{name}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": {gen_name(self.n, k): rat_str(c) for k, c in sorted(self.terms.items())},
        }


_GEN_RE = re.compile(r"^([ef])\((\d+),(\d+)\)$")


def parse_element(n: int, text: str) -> GElement:
    """Parse the element grammar, e.g. '3/2*e(1,2) + -1*f(2,2)'."""
    text = text.strip()
    terms = {}
    if text == "0":
        return GElement(n, terms)
    for part in text.split("+"):
        part = part.strip()
        if "*" in part:
            coeff, gen = part.rsplit("*", 1)
            c = rat(coeff)
        else:
            gen, c = part, Q(1)
        m = _GEN_RE.match(gen.strip())
        if not m:
            raise ValueError(f"bad generator {gen!r}")
        p = 0 if m.group(1) == "e" else 1
        i, j = int(m.group(2)), int(m.group(3))
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"generator {gen!r} out of range for n={n}")
        k = idx(n, p, i, j)
        v = terms.get(k, 0) + c
        if v:
            terms[k] = v
        else:
            terms.pop(k, None)
    return GElement(n, terms)


def element_from_json(data: dict) -> GElement:
    n = data["n"]
    out = GElement(n, {})
    for name, c in data["terms"].items():
        out = out + rat(c) * parse_element(n, name)
    return out


def basis_element(n: int, parity, i: int, j: int) -> GElement:
    p = parity if parity in (0, 1) else {"e": 0, "f": 1}[parity]
    return GElement(n, {idx(n, p, i, j): Q(1)})


def h_element(n: int, i: int) -> GElement:
    return basis_element(n, 0, i, i)


def hbar_element(n: int, i: int) -> GElement:
    return basis_element(n, 1, i, i)


def diagonal_element(n: int, values) -> GElement:
    return GElement(n, {idx(n, 0, i + 1, i + 1): Q(v) for i, v in enumerate(values) if v})


def identity_element(n: int) -> GElement:
    return diagonal_element(n, [1] * n)


def _same_rank(x: GElement, y: GElement):
    if x.n != y.n:
        raise RankMismatchError(f"rank mismatch: {x.n} vs {y.n}")


# ---------------------------------------------------------------------------
# structure table from the 2n x 2n matrix model
# ---------------------------------------------------------------------------

def _model_matrix(n: int, k: int) -> dict:
    i, j = gen_pair(n, k)
    if gen_parity(n, k) == 0:
        return {(i - 1, j - 1): Q(1), (n + i - 1, n + j - 1): Q(1)}
    return {(i - 1, n + j - 1): Q(1), (n + i - 1, j - 1): Q(1)}


def _matmul(a: dict, b: dict) -> dict:
    by_row = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    out = {}
    for (r, c), v in a.items():
        for c2, v2 in by_row.get(c, ()):
            key = (r, c2)
            s = out.get(key, 0) + v * v2
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _model_to_element(n: int, mat: dict) -> GElement:
    terms = {}
    for (r, c), v in mat.items():
        if r < n and c < n:
            terms[idx(n, 0, r + 1, c + 1)] = v
        elif r < n <= c:
            terms[idx(n, 1, r + 1, c - n + 1)] = v
    return GElement(n, terms)


class QnAlgebra:
    """Bracket table of q(n) over the fixed e/f basis (read-only after build)."""

    def __init__(self, n: int):
        self.n = n
        self.dim = dim_of(n)
        table = {}
        mats = [_model_matrix(n, k) for k in range(self.dim)]
        for a in range(self.dim):
            pa = gen_parity(n, a)
            for b in range(self.dim):
                sign = -1 if pa and gen_parity(n, b) else 1
                ab = _matmul(mats[a], mats[b])
                ba = _matmul(mats[b], mats[a])
                for key, v in ba.items():
                    s = ab.get(key, 0) - sign * v
                    if s:
                        ab[key] = s
                    else:
                        ab.pop(key, None)
                elem = _model_to_element(n, ab)
                if elem.terms:
                    table[(a, b)] = elem.terms
        self.table = table

    def bracket_basis(self, a: int, b: int) -> dict:
        return self.table.get((a, b), {})


@lru_cache(maxsize=None)
def build_qn(n: int, max_rank: int = MAX_RANK) -> QnAlgebra:
    """Structure table of q(n); desk-scale guard on n."""
    if not 1 <= n <= max_rank:
        raise ValueError(f"rank n={n} outside 1..{max_rank}")
    return QnAlgebra(n)


def bracket(x: GElement, y: GElement) -> GElement:
    """Supercommutator, extended bilinearly from the structure table."""
    _same_rank(x, y)
    alg = build_qn(x.n)
    terms = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            c = ca * cb
            for k, v in alg.bracket_basis(a, b).items():
                s = terms.get(k, 0) + c * v
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
    return GElement(x.n, terms)


def parity_reverse(x: GElement) -> GElement:
    """The involution swapping e(i,j) and f(i,j) termwise."""
    half = x.n * x.n
    return GElement(x.n, {(k + half) % (2 * half): c for k, c in x.terms.items()})


def odd_form(x: GElement, y: GElement):
    """Odd trace form (x|y) = otr(xy); pairs e(i,j) with f(j,i)."""
    _same_rank(x, y)
    n = x.n
    total = Q(0)
    for a, ca in x.terms.items():
        i, j = gen_pair(n, a)
        b = idx(n, 1 - gen_parity(n, a), j, i)
        cb = y.terms.get(b)
        if cb:
            total += ca * cb
    return total


# ---------------------------------------------------------------------------
# roots, weights, Weyl combinatorics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootDatum:
    n: int
    positive: tuple  # (i, j) with i < j, one entry per parity class
    simple: tuple    # (i, i+1)
    rho: tuple       # half-sum of positive even roots, as Q coords

    @staticmethod
    def of(n: int) -> "RootDatum":
        pos = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
        simple = tuple((i, i + 1) for i in range(1, n))
        rho = tuple(Q(n - 2 * i + 1, 2) for i in range(1, n + 1))
        return RootDatum(n, pos, simple, rho)


def weight(coords) -> tuple:
    return tuple(Q(c) for c in coords)


def weight_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def weight_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def pairing(a, b):
    """(a, b) with (eps_i, eps_j) = delta_ij."""
    return sum((x * y for x, y in zip(a, b)), Q(0))


def apply_perm(perm, coords):
    """perm maps position i -> perm[i] (0-based); w.eps_i = eps_{w(i)}."""
    out = [Q(0)] * len(coords)
    for i, c in enumerate(coords):
        out[perm[i]] = c
    return tuple(out)


def dot_action(perm, lam) -> tuple:
    """w . lam = w(lam + rho) - rho."""
    rho = RootDatum.of(len(lam)).rho
    return weight_sub(apply_perm(perm, weight_add(lam, rho)), rho)


def leq_order(lam, mu) -> bool:
    """lam <= mu iff mu - lam is a nonnegative integer sum of positive roots.

    In the epsilon basis this is: integer coordinates, nonnegative prefix
    sums, and total sum zero.
    """
    if len(lam) != len(mu):
        raise RankMismatchError("weights of different rank")
    diff = weight_sub(mu, lam)
    if any(d.denominator != 1 for d in diff):
        return False
    acc = Q(0)
    for d in diff:
        acc += d
        if acc < 0:
            return False
    return acc == 0


# ---------------------------------------------------------------------------
# gradings and parabolic decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradingData:
    """Integer grading of the basis, usually the ad-eigenvalue data of a
    rational diagonal grader; Pi-stable by construction."""

    n: int
    eigen: tuple  # eigenvalue per basis index
    grader: GElement | None = None

    @staticmethod
    def from_grader(H: GElement) -> "GradingData":
        n = H.n
        d = _diag_values(H)
        eigen = []
        for k in range(dim_of(n)):
            i, j = gen_pair(n, k)
            e = d[i - 1] - d[j - 1]
            if e.denominator != 1:
                raise ValueError("grader must have integer root eigenvalues")
            eigen.append(int(e))
        return GradingData(n, tuple(eigen), H)

    @staticmethod
    def zero(n: int) -> "GradingData":
        return GradingData(n, tuple([0] * dim_of(n)), diagonal_element(n, [0] * n))

    def blocks(self) -> dict:
        out = {}
        for k, e in enumerate(self.eigen):
            out.setdefault(e, []).append(k)
        return {e: tuple(v) for e, v in sorted(out.items())}

    def block(self, value: int) -> tuple:
        return tuple(k for k, e in enumerate(self.eigen) if e == value)


def _diag_values(H: GElement):
    n = H.n
    vals = [Q(0)] * n
    for k, c in H.terms.items():
        i, j = gen_pair(n, k)
        if gen_parity(n, k) != 0 or i != j:
            raise ValueError("grader must lie in the even Cartan (diagonal)")
        vals[i - 1] = c
    return vals


def parabolic_from_grader(H: GElement):
    """Tripartition (u, l, u-) of the basis by the sign of alpha(H)."""
    n = H.n
    d = _diag_values(H)
    u, l, um = [], [], []
    for k in range(dim_of(n)):
        i, j = gen_pair(n, k)
        v = d[i - 1] - d[j - 1]
        (u if v > 0 else um if v < 0 else l).append(k)
    return tuple(u), tuple(l), tuple(um)


@dataclass(frozen=True)
class LeviDatum:
    n: int
    pi: tuple      # indices i with alpha_i = eps_i - eps_{i+1} in the support
    blocks: tuple  # partition of 1..n into maximal glued intervals
    weyl_blocks: tuple  # sizes n_1, ..., n_k of the Young subgroup

    def weyl_order(self) -> int:
        import math

        out = 1
        for b in self.weyl_blocks:
            out *= math.factorial(b)
        return out


def levi_of_character(n: int, values) -> LeviDatum:
    """Levi datum of the character with the given values on e(i,i+1).

    `values` maps simple-root index i in 1..n-1 to a scalar; missing keys
    are zero.  Only vanishing/nonvanishing matters.
    """
    vals = getattr(values, "values_map", None)
    if vals is None:
        vals = dict(values)
    pi = tuple(sorted(i for i, v in vals.items() if v))
    blocks, cur = [], [1]
    for i in range(1, n):
        if i in pi:
            cur.append(i + 1)
        else:
            blocks.append(tuple(cur))
            cur = [i + 1]
    blocks.append(tuple(cur))
    blocks = tuple(blocks)
    return LeviDatum(n, pi, blocks, tuple(len(b) for b in blocks))


# ---------------------------------------------------------------------------
# sl(2) completion and centralizers
# ---------------------------------------------------------------------------

def _even_matrix(x: GElement):
    """n x n matrix of the even part (A block)."""
    n = x.n
    rows = [[Q(0)] * n for _ in range(n)]
    for k, c in x.terms.items():
        if gen_parity(n, k) == 0:
            i, j = gen_pair(n, k)
            rows[i - 1][j - 1] = c
    return rows


def _jordan_partition(a, n: int):
    """Partition of a nilpotent n x n rational matrix from ranks of powers."""

    def matmul(p, q):
        return [[sum((p[i][k] * q[k][j] for k in range(n)), Q(0)) for j in range(n)]
                for i in range(n)]

    def matrank(m):
        rows = [{j: v for j, v in enumerate(r) if v} for r in m]
        from .linalg import rank as _rank

        return _rank(rows)

    ranks = [n]
    power = [row[:] for row in a]
    for _ in range(n):
        ranks.append(matrank(power))
        power = matmul(power, a)
    if ranks[-1] != 0:
        raise NilpotencyError("input is not nilpotent")
    # number of Jordan blocks of size >= s is rank(A^{s-1}) - rank(A^s)
    sizes = []
    for s in range(1, n + 1):
        count = (ranks[s - 1] - ranks[s]) - (ranks[s] - ranks[s + 1] if s < n else 0)
        sizes.extend([s] * count)
    return sorted(sizes, reverse=True)


def sl2_complete(e: GElement):
    """Complete a strictly upper-triangular even nilpotent e to (e, h, f).

    h is found inside the even Cartan by matching ad-h eigenvalue
    constraints on supp(e) against the eigenvalue multiset forced by the
    Jordan type; f is then a linear solve.  Raises NilpotencyError when e
    is zero or not nilpotent, ValueError when no Cartan-aligned h exists.
    """
    n = e.n
    if not e.terms:
        raise NilpotencyError("zero element is excluded")
    for k in e.terms:
        i, j = gen_pair(n, k)
        if gen_parity(n, k) != 0 or i >= j:
            raise ValueError("expected a strictly upper-triangular even element")
    target = []
    for p in _jordan_partition(_even_matrix(e), n):
        target.extend(range(p - 1, -p, -2))
    target = sorted(target, reverse=True)

    # affine space of diagonal h with [h,e] = 2e: d_i - d_j = 2 on supp(e)
    comp = list(range(n))  # union-find over support graph components

    def find(i):
        while comp[i] != i:
            comp[i] = comp[comp[i]]
            i = comp[i]
        return i

    pending = [gen_pair(n, k) for k in e.terms]
    base = [Q(0)] * n
    # propagate offsets within components
    for i, j in pending:
        ri, rj = find(i - 1), find(j - 1)
        di, dj = base[i - 1], base[j - 1]
        if ri != rj:
            shift = di - Q(2) - dj
            for t in range(n):
                if find(t) == rj:
                    base[t] += shift
            comp[rj] = ri
        elif di - dj != 2:
            raise ValueError("no diagonal grading element: inconsistent support")
    roots = sorted({find(t) for t in range(n)})
    members = {r: [t for t in range(n) if find(t) == r] for r in roots}

    # search shifts per component so the multiset of d-values matches target
    target_set = sorted(set(target))

    def assign(pos):
        if pos == len(roots):
            return sorted(current, reverse=True) == target
        r = roots[pos]
        anchor = members[r][0]
        for t in target_set:
            shift = Q(t) - base[anchor]
            for m in members[r]:
                current[m] = base[m] + shift
            if assign(pos + 1):
                return True
        return False

    current = [None] * n
    if not assign(0):
        raise ValueError("no Cartan-aligned sl(2) grading found")
    h = diagonal_element(n, current)

    # f in the -2 eigenspace of ad h solving [e, f] = h
    neg = [k for k in range(n * n)
           if current[gen_pair(n, k)[0] - 1] - current[gen_pair(n, k)[1] - 1] == -2]
    rows = []
    rhs = []
    for out in range(dim_of(n)):
        row = {}
        for col, k in enumerate(neg):
            c = bracket(e, GElement(n, {k: Q(1)})).terms.get(out)
            if c:
                row[col] = c
        rows.append(row)
        rhs.append(h.terms.get(out, Q(0)))
    from .linalg import solve

    sol = solve(rows, rhs)
    if sol is None:
        raise ValueError("no sl(2) partner f for the chosen h")
    f = GElement(n, {neg[c]: v for c, v in sol.items()})
    return e, h, f


def ad_matrix(x: GElement):
    """Rows (one per output index) of ad(x) acting on the basis."""
    n = x.n
    cols = [bracket(x, GElement(n, {k: Q(1)})) for k in range(dim_of(n))]
    rows = [{} for _ in range(dim_of(n))]
    for col, img in enumerate(cols):
        for out, c in img.terms.items():
            rows[out][col] = c
    return rows


def centralizer(x: GElement):
    """Parity-split exact basis of {y : [x, y] = 0}."""
    if not x.is_homogeneous():
        raise HomogeneityError("centralizer needs a parity-homogeneous element")
    n = x.n
    kernel = nullspace(ad_matrix(x), dim_of(n))
    half = n * n
    even, odd = Echelon(), Echelon()
    for v in kernel:
        even.add({k: c for k, c in v.items() if k < half})
        odd.add({k: c for k, c in v.items() if k >= half})
    out = []
    for ech in (even, odd):
        out.extend(GElement(n, row) for row in ech.basis())
    return out
