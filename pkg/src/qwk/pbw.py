"""Exact arithmetic in U(q(n)): normal ordering, adjoint action, Kazhdan
degrees, and reduction modulo the left ideals used by the W-algebra layer.

Monomials are stored as dense exponent tuples aligned with a fixed total
order on the 2n^2 generators; odd generators carry 0/1 flags.  Straightening
is bubble-sort rewriting with a memoized word cache, with the odd-square
rule g*g = [g,g]/2 applied eagerly.

The straightening engine itself only needs parities plus a super-commutator
table whose values may include a unit component, so the same code drives
the Weyl-algebra arithmetic behind the Moyal-Weyl star product.

Elements are immutable values.  The only shared mutable state is the
per-context word cache, which is append-only and safe under concurrent
readers with single-writer inserts (CPython dict semantics); independent
contexts share nothing.
"""

from __future__ import annotations

from .rationals import Q, rat_str
from .superalgebra import (
    GElement,
    GradingData,
    HomogeneityError,
    QwkError,
    build_qn,
    dim_of,
    gen_name,
    gen_parity,
)


class OrderError(QwkError):
    pass


class InstanceMismatchError(QwkError):
    pass


class StraighteningContext:
    """Shared normal-ordering machinery over an ordered generator list.

    Subclasses provide `parities` (tuple of 0/1 per generator id) and
    `bracket_terms(a, b)` -> dict mapping generator id (or None for the
    unit) to coefficients of the super-commutator [a, b].
    """

    def __init__(self, gen_count: int, parities, order=None):
        self.gen_count = gen_count
        self.parities = tuple(parities)
        self.order = tuple(order) if order is not None else tuple(range(gen_count))
        if sorted(self.order) != list(range(gen_count)):
            raise OrderError("order must be a permutation of the generators")
        self.pos = {g: p for p, g in enumerate(self.order)}
        self._nf_cache = {}

    def bracket_terms(self, a: int, b: int) -> dict:
        raise NotImplementedError

    # -- normal ordering ---------------------------------------------------

    def unit_key(self) -> tuple:
        return (0,) * self.gen_count

    def monomial_key(self, word) -> tuple:
        exps = [0] * self.gen_count
        for g in word:
            exps[self.pos[g]] += 1
        return tuple(exps)

    def expand_key(self, key) -> tuple:
        word = []
        for p, e in enumerate(key):
            word.extend([self.order[p]] * e)
        return tuple(word)

    def normal_word(self, word) -> dict:
        """Normal form of a product of generators, as {exponent key: Q}."""
        word = tuple(word)
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        result = self._normalize(word)
        self._nf_cache[word] = result
        return result

    def _normalize(self, word) -> dict:
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            odd_pair = self.parities[a] and self.parities[b]
            if a == b and odd_pair:
                out = {}
                rest = word[:i] + word[i + 2:]
                for g, c in self.bracket_terms(a, a).items():
                    half = c / 2
                    sub = self.normal_word(rest if g is None else word[:i] + (g,) + word[i + 2:])
                    _accumulate(out, sub, half)
                return out
            if self.pos[a] > self.pos[b]:
                sign = Q(-1) if odd_pair else Q(1)
                out = {}
                swapped = word[:i] + (b, a) + word[i + 2:]
                _accumulate(out, self.normal_word(swapped), sign)
                rest = word[:i] + word[i + 2:]
                for g, c in self.bracket_terms(a, b).items():
                    sub = self.normal_word(rest if g is None else word[:i] + (g,) + word[i + 2:])
                    _accumulate(out, sub, c)
                return out
        return {self.monomial_key(word): Q(1)}

    def monomial_parity(self, key) -> int:
        return sum(e for p, e in enumerate(key) if self.parities[self.order[p]]) % 2

    # -- elements ----------------------------------------------------------

    def zero(self) -> "UElement":
        return UElement(self, {})

    def unit(self) -> "UElement":
        return UElement(self, {self.unit_key(): Q(1)})

    def generator(self, g: int) -> "UElement":
        return UElement(self, {self.monomial_key((g,)): Q(1)})

    def from_word(self, word, coeff=1) -> "UElement":
        return UElement(self, {}) if not Q(coeff) else \
            UElement(self, {k: Q(coeff) * c for k, c in self.normal_word(word).items()})


def _accumulate(target: dict, source: dict, scale):
    if not scale:
        return
    for k, c in source.items():
        v = target.get(k, 0) + scale * c
        if v:
            target[k] = v
        else:
            target.pop(k, None)


class UElement:
    """Sparse rational combination of normal-ordered monomials."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        self.terms = {k: Q(c) for k, c in (terms or {}).items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, UElement) and self.ctx is other.ctx and \
            self.terms == other.terms

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        _accumulate(t, other.terms, Q(1))
        return UElement(self.ctx, t)

    def __sub__(self, other):
        self._check(other)
        t = dict(self.terms)
        _accumulate(t, other.terms, Q(-1))
        return UElement(self.ctx, t)

    def __neg__(self):
        return UElement(self.ctx, {k: -c for k, c in self.terms.items()})

    def __rmul__(self, scalar):
        s = Q(scalar)
        return UElement(self.ctx, {k: s * c for k, c in self.terms.items()})

    def _check(self, other):
        if self.ctx is not other.ctx:
            raise InstanceMismatchError("elements from different contexts")

    def parity(self):
        ps = {self.ctx.monomial_parity(k) for k in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def __repr__(self):
        return f"UElement({self.to_text()!r})"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        ctx = self.ctx
        parts = []
        for key in sorted(self.terms):
            factors = []
            for p, e in enumerate(key):
                if e:
                    name = ctx.gen_label(ctx.order[p])
                    factors.append(name if e == 1 else f"{name}^{e}")
            mon = "*".join(factors) if factors else "1"
            c = self.terms[key]
            parts.append(mon if c == 1 and factors else
                         f"{rat_str(c)}*{mon}" if factors else rat_str(c))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [[list(k), rat_str(c)] for k, c in sorted(self.terms.items())]


def multiply(u: UElement, v: UElement, grading: GradingData | None = None,
             cap: int | None = None) -> UElement:
    """Product in U; with (grading, cap) the caller explicitly requests a
    Kazhdan-filtered result and terms above the cap are dropped."""
    u._check(v)
    ctx = u.ctx
    out = {}
    for ku, cu in u.terms.items():
        wu = ctx.expand_key(ku)
        for kv, cv in v.terms.items():
            word = wu + ctx.expand_key(kv)
            _accumulate(out, ctx.normal_word(word), cu * cv)
    if cap is not None:
        out = {k: c for k, c in out.items() if kazhdan_degree(ctx, k, grading) <= cap}
    return UElement(ctx, out)


def supercommutator(u: UElement, v: UElement) -> UElement:
    pu, pv = u.parity(), v.parity()
    if pu is None or pv is None:
        raise HomogeneityError("supercommutator needs homogeneous elements")
    sign = Q((-1) ** (pu * pv))
    return multiply(u, v) - sign * multiply(v, u)


class PBWContext(StraighteningContext):
    """U(q(n)) for a fixed generator order (default: basis index order)."""

    def __init__(self, n: int, order=None):
        self.n = n
        self.alg = build_qn(n)
        parities = [gen_parity(n, k) for k in range(dim_of(n))]
        super().__init__(dim_of(n), parities, order)

    def bracket_terms(self, a: int, b: int) -> dict:
        return self.alg.bracket_basis(a, b)

    def gen_label(self, g: int) -> str:
        return gen_name(self.n, g)

    def element_of(self, x: GElement) -> UElement:
        if x.n != self.n:
            raise InstanceMismatchError("element rank differs from context")
        terms = {}
        for g, c in x.terms.items():
            terms[self.monomial_key((g,))] = c
        return UElement(self, terms)


def normal_form(ctx: PBWContext, word, coeff=1) -> UElement:
    """Normal-ordered expansion of a (coefficient, generator sequence) word."""
    return ctx.from_word(word, coeff)


def adjoint(x: GElement, u: UElement) -> UElement:
    """ad(x)(u) = x u - (-1)^{|x||u|} u x, termwise on homogeneous parts."""
    ctx = u.ctx
    if not x.is_homogeneous() or not x.terms:
        if not x.terms:
            return ctx.zero()
        raise HomogeneityError("adjoint needs a parity-homogeneous element")
    px = x.parity()
    xe = ctx.element_of(x)
    out = {}
    for k, c in u.terms.items():
        mono = UElement(ctx, {k: c})
        sign = Q((-1) ** (px * ctx.monomial_parity(k)))
        term = multiply(xe, mono) - sign * multiply(mono, xe)
        _accumulate(out, term.terms, Q(1))
    return UElement(ctx, out)


def kazhdan_degree(ctx: StraighteningContext, key, grading: GradingData) -> int:
    """Sum over generators of exponent x (ad-h eigenvalue + 2)."""
    total = 0
    for p, e in enumerate(key):
        if e:
            total += e * (grading.eigen[ctx.order[p]] + 2)
    return total


def kazhdan_degree_of(u: UElement, grading: GradingData):
    """Max Kazhdan degree over terms (None for zero)."""
    if not u.terms:
        return None
    return max(kazhdan_degree(u.ctx, k, grading) for k in u.terms)


def check_m_last(ctx: StraighteningContext, m_gens) -> int:
    """The order must place the m-generators in a trailing block; returns
    the first m position."""
    m_set = set(m_gens)
    cut = ctx.gen_count - len(m_set)
    tail = set(ctx.order[cut:])
    if tail != m_set:
        raise OrderError("generator order must place the m-generators last")
    return cut


def ideal_reduce(u: UElement, m_gens, chi: dict) -> UElement:
    """Canonical representative of u modulo the left ideal generated by
    {a - chi(a) : a in m}; rewrites each trailing m-generator to its
    chi-value, recursively."""
    ctx = u.ctx
    cut = check_m_last(ctx, m_gens)
    out = {}
    for key, c in u.terms.items():
        scale = c
        for p in range(cut, ctx.gen_count):
            e = key[p]
            if not e:
                continue
            val = chi.get(ctx.order[p], Q(0))
            if not val:
                scale = Q(0)
                break
            scale *= val ** e
        if scale:
            reduced = key[:cut] + (0,) * (ctx.gen_count - cut)
            v = out.get(reduced, 0) + scale
            if v:
                out[reduced] = v
            else:
                out.pop(reduced, None)
    return UElement(ctx, out)
