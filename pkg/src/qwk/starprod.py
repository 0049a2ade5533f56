"""hbar-truncated star products: Moyal-Weyl on a symplectic superspace and
the Gutt product on the supersymmetric algebra of q(n).

Both products are computed by symmetrization transport: supersymmetrize
into the corresponding associative algebra (the Clifford-Weyl algebra of
omega, or U(q(n))), multiply there, and pull the normal-ordered result
back degree by degree.  Associativity is inherited exactly, and the
defining relations

    v * w - (-1)^{|v||w|} w * v = omega(v, w) hbar^2        (Moyal-Weyl)
    x * y - (-1)^{|x||y|} y * x = [x, y] hbar^2             (Gutt)

hold by construction.  hbar orders are recovered from the degree drop:
one order-2 step per omega-pairing (drop 2) or per bracket (drop 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .pbw import PBWContext, StraighteningContext, UElement, multiply
from .rationals import Q, rat_str
from .superalgebra import QwkError


class WeylContext(StraighteningContext):
    """Clifford-Weyl algebra of a super-symplectic form on named generators.

    omega is given on generator pairs; it must be super-skewsymmetric
    (skew on even pairs, symmetric on odd ones, zero on mixed parity).
    """

    def __init__(self, parities, omega, labels=None):
        count = len(parities)
        self.omega = {}
        for (a, b), v in omega.items():
            if v:
                self.omega[(a, b)] = Q(v)
        for (a, b), v in list(self.omega.items()):
            sign = Q(-1) if not (parities[a] and parities[b]) else Q(1)
            mirror = self.omega.get((b, a), Q(0))
            if mirror != sign * v:
                raise ValueError("omega is not super-skewsymmetric")
        self.labels = labels or [f"v{i+1}" for i in range(count)]
        super().__init__(count, parities)

    def bracket_terms(self, a: int, b: int) -> dict:
        v = self.omega.get((a, b))
        return {None: v} if v else {}

    def gen_label(self, g: int) -> str:
        return self.labels[g]


def weyl_from_gram(parities, gram_rows) -> WeylContext:
    omega = {}
    for a, row in enumerate(gram_rows):
        for b, v in enumerate(row):
            if v:
                omega[(a, b)] = Q(v)
    return WeylContext(parities, omega)


@dataclass
class PolyElement:
    """Sparse polynomial with an even hbar order per term: terms maps
    (exponent key, hbar order) to a coefficient."""

    ctx: StraighteningContext
    terms: dict

    def __post_init__(self):
        self.terms = {k: Q(c) for k, c in self.terms.items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, PolyElement) and self.ctx is other.ctx and \
            self.terms == other.terms

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return PolyElement(self.ctx, t)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        s = Q(scalar)
        return PolyElement(self.ctx, {k: s * c for k, c in self.terms.items()})

    def hbar_truncate(self, cap: int) -> "PolyElement":
        return PolyElement(self.ctx,
                           {k: c for k, c in self.terms.items() if k[1] <= cap})

    def hbar_coefficient(self, order: int) -> "PolyElement":
        return PolyElement(self.ctx, {(k, 0): c for (k, h), c in
                                      self.terms.items() if h == order})

    def at_hbar_one(self) -> "PolyElement":
        out = {}
        for (key, _h), c in self.terms.items():
            k = (key, 0)
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return PolyElement(self.ctx, out)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (key, h) in sorted(self.terms):
            c = self.terms[(key, h)]
            factors = []
            for p, e in enumerate(key):
                if e:
                    name = self.ctx.gen_label(self.ctx.order[p])
                    factors.append(name if e == 1 else f"{name}^{e}")
            if h:
                factors.append(f"hbar^{h}")
            mon = "*".join(factors) if factors else "1"
            parts.append(mon if c == 1 and factors else
                         f"{rat_str(c)}*{mon}" if factors else rat_str(c))
        return " + ".join(parts)


def poly_generator(ctx, g: int) -> PolyElement:
    return PolyElement(ctx, {(ctx.monomial_key((g,)), 0): Q(1)})


def poly_monomial(ctx, word, coeff=1, hbar=0) -> PolyElement:
    """Supercommutative product of the letters (canonical reordering with
    Koszul signs; zero when an odd letter repeats)."""
    word = list(word)
    sign = 1
    # insertion sort by position, tracking odd transpositions
    for i in range(1, len(word)):
        j = i
        while j > 0 and ctx.pos[word[j - 1]] > ctx.pos[word[j]]:
            if ctx.parities[word[j - 1]] and ctx.parities[word[j]]:
                sign = -sign
            word[j - 1], word[j] = word[j], word[j - 1]
            j -= 1
    for a, b in zip(word, word[1:]):
        if a == b and ctx.parities[a]:
            return PolyElement(ctx, {})
    return PolyElement(ctx, {(ctx.monomial_key(word), hbar): Q(sign * 1) * Q(coeff)})


def _koszul_sign(parities, word, perm):
    """Sign of reordering word into word[perm[0]], word[perm[1]], ..."""
    sign = 1
    for t in range(len(perm)):
        for u in range(t + 1, len(perm)):
            if perm[t] > perm[u] and parities[word[perm[t]]] and \
                    parities[word[perm[u]]]:
                sign = -sign
    return sign


def _permutations(k):
    import itertools

    return itertools.permutations(range(k))


def symmetrize(ctx, key) -> UElement:
    """Supersymmetrization of a polynomial monomial into the associative
    algebra of the context."""
    word = ctx.expand_key(key)
    k = len(word)
    if k == 0:
        return ctx.unit()
    inv = Q(1, factorial(k))
    out = ctx.zero()
    for perm in _permutations(k):
        sign = _koszul_sign(ctx.parities, word, perm)
        out = out + ctx.from_word([word[t] for t in perm], coeff=sign * inv)
    return out


def desymmetrize(u: UElement) -> dict:
    """Inverse of symmetrize, degree by degree: {exponent key: coeff}."""
    ctx = u.ctx
    out = {}
    rest = u
    while rest:
        top = max(sum(k) for k in rest.terms)
        layer = {k: c for k, c in rest.terms.items() if sum(k) == top}
        for k, c in layer.items():
            out[k] = out.get(k, 0) + c
            rest = rest - c * symmetrize(ctx, k)
    return {k: c for k, c in out.items() if c}


def _transport_product(p: PolyElement, q: PolyElement, drop_per_order: int,
                       cap: int | None) -> PolyElement:
    ctx = p.ctx
    if ctx is not q.ctx:
        raise QwkError("star product needs elements over one context")
    out = {}
    sym_cache = {}

    def sym(key):
        if key not in sym_cache:
            sym_cache[key] = symmetrize(ctx, key)
        return sym_cache[key]

    for (kp, hp), cp in p.terms.items():
        for (kq, hq), cq in q.terms.items():
            w = multiply(sym(kp), sym(kq))
            deg = sum(kp) + sum(kq)
            for key, c in desymmetrize(w).items():
                diff = deg - sum(key)
                if diff % drop_per_order:
                    raise QwkError("inconsistent degree drop in transport")
                order = hp + hq + 2 * (diff // drop_per_order)
                if cap is not None and order > cap:
                    continue
                t = (key, order)
                v = out.get(t, 0) + cp * cq * c
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
    return PolyElement(ctx, out)


def moyal_weyl(p: PolyElement, q: PolyElement, cap: int | None = None) -> PolyElement:
    """Moyal-Weyl star product on S(V): each omega-pairing drops the
    polynomial degree by 2 and contributes one hbar^2."""
    return _transport_product(p, q, 2, cap)


def gutt(p: PolyElement, q: PolyElement, cap: int | None = None) -> PolyElement:
    """Gutt star product on S(g): each bracket drops the degree by 1 and
    contributes one hbar^2."""
    if not isinstance(p.ctx, PBWContext):
        raise QwkError("the Gutt product lives over a PBW context")
    return _transport_product(p, q, 1, cap)


def poly_context_qn(n: int) -> PBWContext:
    return PBWContext(n)
