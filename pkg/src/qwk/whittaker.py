"""Nilpotent characters, the membership criterion for the admissible weight
set, Whittaker-vector solvers on truncations, and induction from the even
subalgebra with exterior-factor bookkeeping.

Window semantics: a solve over slices with heights in [d0, d1] enforces the
residual of (x - zeta(x)) (or its N-th power) on every slice where the
truncated module determines it completely; residuals confined to the
boundary slices are reported as a leakage rank, mirroring the completion
picture where nilpotency is only visible up to the horizon.
"""

from __future__ import annotations

from dataclasses import dataclass

from .highest_weight import TruncatedModule
from .linalg import Echelon, nullspace
from .pbw import PBWContext
from .rationals import Q, rat_str
from .superalgebra import (
    LeviDatum,
    QwkError,
    dim_of,
    gen_pair,
    gen_parity,
    idx,
    levi_of_character,
    weight,
    weight_add,
)


class WindowError(QwkError):
    pass


@dataclass(frozen=True)
class NilCharacter:
    """Character of the even nilradical, determined by its values on the
    simple root vectors e(i,i+1)."""

    n: int
    values: tuple  # value on e(i,i+1), i = 1..n-1

    @property
    def values_map(self) -> dict:
        return {i + 1: v for i, v in enumerate(self.values)}

    def is_regular(self) -> bool:
        return all(self.values)

    def pi(self) -> tuple:
        return tuple(i + 1 for i, v in enumerate(self.values) if v)

    def levi(self) -> LeviDatum:
        return levi_of_character(self.n, self.values_map)


def make_character(n: int, values) -> NilCharacter:
    if n < 2:
        raise ValueError("nil-characters need rank n >= 2")
    vals = [Q(0)] * (n - 1)
    if isinstance(values, dict):
        for i, v in values.items():
            vals[i - 1] = Q(v)
    else:
        for i, v in enumerate(values):
            vals[i] = Q(v)
    return NilCharacter(n, tuple(vals))


def lambda_nu_member(lam, zeta: NilCharacter):
    """Admissibility of a weight for the character's Levi: no positive
    integral pairing against the supported simple roots, and equal adjacent
    coordinates only when they vanish.  Returns (bool, failing reason)."""
    lam = weight(lam)
    for i in range(len(lam) - 1):
        if lam[i] == lam[i + 1] and lam[i] != 0:
            return False, (f"condition (ii): lam_{i+1} = lam_{i+2} = "
                           f"{rat_str(lam[i])} != 0")
    for i in zeta.pi():
        pair = lam[i - 1] - lam[i]
        if pair.denominator == 1 and pair > 0:
            return False, (f"condition (i): (lam, alpha_{i}) = {rat_str(pair)} "
                           "is a positive integer")
    return True, None


# ---------------------------------------------------------------------------
# window solvers
# ---------------------------------------------------------------------------

@dataclass
class WhittakerWindow:
    module: TruncatedModule
    zeta: NilCharacter
    window: tuple           # (d0, d1) height range
    power: int
    strict: bool
    basis: list             # solution vectors, {column: Q}
    leakage_rank: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def slice_dims(self) -> dict:
        """Height -> dimension of the solution space projected to that slice."""
        M = self.module
        out = {}
        for h in range(self.window[0], self.window[1] + 1):
            ech = Echelon()
            for v in self.basis:
                ech.add({c: x for c, x in v.items()
                         if M.heights[M.weight_of_col[c]] == h})
            out[h] = ech.dim
        return out

    def to_json(self) -> dict:
        return {
            "schema": "qwk-whittaker/1",
            "window": [self.window[0], self.window[1]],
            "power": self.power,
            "strict": self.strict,
            "dimension": self.dimension,
            "slices": {str(h): d for h, d in sorted(self.slice_dims().items())},
            "leakage-rank": self.leakage_rank,
        }


def _simple_raisers(n):
    return [idx(n, 0, i, i + 1) for i in range(1, n)]


def _window_columns(M: TruncatedModule, window):
    d0, d1 = window
    if d0 < 0 or d0 > d1 or d1 > max(M.depth, max(M.heights, default=0)):
        raise WindowError(f"window {window} outside the truncation")
    return [c for c in range(M.dimension)
            if d0 <= M.heights[M.weight_of_col[c]] <= d1]


def _apply_shifted(M, g, zeta_val, vec, power):
    for _ in range(power):
        nxt = M.apply(g, vec)
        if zeta_val:
            for c, x in vec.items():
                v = nxt.get(c, 0) - zeta_val * x
                if v:
                    nxt[c] = v
                else:
                    nxt.pop(c, None)
        vec = nxt
    return vec


def _window_solve(M: TruncatedModule, zeta: NilCharacter, window, power,
                  strict) -> WhittakerWindow:
    d0, d1 = window
    cols = _window_columns(M, window)
    col_pos = {c: t for t, c in enumerate(cols)}
    n = M.n
    residuals = {}
    for i, g in enumerate(_simple_raisers(n)):
        zv = zeta.values[i]
        for c in cols:
            img = _apply_shifted(M, g, zv, {c: Q(1)}, power)
            for r, v in img.items():
                residuals.setdefault((g, r), {})[col_pos[c]] = v

    def height_of_row(r):
        return M.heights[M.weight_of_col[r]]

    if strict:
        enforced = list(residuals.values())
    else:
        enforced = [row for (g, r), row in residuals.items()
                    if d0 <= height_of_row(r) <= d1 - power]
    kernel = nullspace(enforced, len(cols))
    basis = [{cols[t]: v for t, v in sol.items()} for sol in kernel]

    leak = Echelon()
    if not strict:
        boundary = sorted(key for key in residuals
                          if not (d0 <= height_of_row(key[1]) <= d1 - power))
        boundary_pos = {key: t for t, key in enumerate(boundary)}
        for sol in kernel:
            resid = {}
            for key in boundary:
                row = residuals[key]
                val = sum((row.get(t, 0) * v for t, v in sol.items()), Q(0))
                if val:
                    resid[boundary_pos[key]] = val
            leak.add(resid)
    return WhittakerWindow(M, zeta, (d0, d1), power, strict, basis, leak.dim)


def whittaker_vectors(M: TruncatedModule, zeta: NilCharacter, window,
                      strict=False) -> WhittakerWindow:
    """Vectors supported on the window with (x - zeta(x)) v = 0 for every
    simple even root vector x, enforced on the window interior (everywhere
    in strict mode, for genuinely finite modules)."""
    return _window_solve(M, zeta, tuple(window), 1, strict)


def gamma_window(M: TruncatedModule, zeta: NilCharacter, window,
                 power=None) -> WhittakerWindow:
    """Generalized-eigenvector variant: (x - zeta(x))^N v = 0 up to the
    horizon, N defaulting to the window length.  Contains the plain
    Whittaker solutions."""
    d0, d1 = window
    if power is None:
        power = d1 - d0 + 1
    if power < 1:
        raise WindowError("power must be at least 1")
    return _window_solve(M, zeta, tuple(window), power, False)


# ---------------------------------------------------------------------------
# induction from the even subalgebra
# ---------------------------------------------------------------------------

def verma_truncation_even(lam, depth) -> TruncatedModule:
    """Truncated Verma module over the even subalgebra gl(n): only the even
    generator actions are populated."""
    from .highest_weight import _FiberModule, _induced_truncation

    lam = weight(lam)
    n = len(lam)
    action = {}
    for i in range(n):
        action[idx(n, 0, i + 1, i + 1)] = [[lam[i]]]
    fiber = _FiberModule(1, [lam], action)
    lowering = [idx(n, 0, i, j) for i in range(1, n + 1)
                for j in range(1, n + 1) if i > j]
    raising = [idx(n, 0, i, j) for i in range(1, n + 1)
               for j in range(1, n + 1) if i < j]
    odd = [k for k in range(dim_of(n)) if gen_parity(n, k) == 1]
    M = _induced_truncation(n, fiber, lowering, raising + odd, depth,
                            "even-verma", lam)
    for g in odd:
        M.action[g] = {}
    return M


def induce_from_even(M0: TruncatedModule) -> TruncatedModule:
    """Induction to the full superalgebra: exterior monomials in all n^2 odd
    generators tensored with the even module, with the full action built by
    straightening odd words past the even part."""
    n = M0.n
    odd_gens = [k for k in range(dim_of(n)) if gen_parity(n, k) == 1]
    even_gens = [k for k in range(dim_of(n)) if gen_parity(n, k) == 0]
    ctx = PBWContext(n, odd_gens + even_gens)

    subsets = [()]
    for g in odd_gens:
        subsets.extend(s + (g,) for s in list(subsets))
    subsets.sort(key=lambda s: (len(s), s))
    sub_index = {s: t for t, s in enumerate(subsets)}

    def subset_weight(s):
        wt = [Q(0)] * n
        for g in s:
            i, j = gen_pair(n, g)
            wt[i - 1] += 1
            wt[j - 1] -= 1
        return tuple(wt)

    cols = []
    col_index = {}
    weights, slice_of, slice_basis = [], {}, []
    weight_of_col = []
    for s in subsets:
        ws = subset_weight(s)
        for t in range(M0.dimension):
            wt = weight_add(ws, M0.weights[M0.weight_of_col[t]])
            sl = slice_of.get(wt)
            if sl is None:
                sl = len(weights)
                slice_of[wt] = sl
                weights.append(wt)
                slice_basis.append([])
            col = len(cols)
            cols.append((s, t))
            col_index[(s, t)] = col
            slice_basis[sl].append(col)
            weight_of_col.append(sl)

    # heights relative to the top weight, shifted to start at zero
    def raw_height(wt):
        diff = [a - b for a, b in zip(M0.top, wt)]
        acc, total = Q(0), Q(0)
        for d in diff[:-1]:
            acc += d
            total += acc
        return total
    raws = [raw_height(w) for w in weights]
    base = min(raws)
    heights = [int(r - base) for r in raws]

    action = {}
    for g in range(dim_of(n)):
        colmap = {}
        straightened = {}
        for s in subsets:
            straightened[s] = ctx.normal_word((g,) + s)
        for (s, t), col in col_index.items():
            img = {}
            for mkey, coeff in straightened[s].items():
                odd_part, even_word = [], []
                for p, e in enumerate(mkey):
                    gen = ctx.order[p]
                    if gen_parity(n, gen):
                        odd_part.extend([gen] * e)
                    else:
                        even_word.extend([gen] * e)
                target_s = tuple(odd_part)
                vec = {t: coeff}
                for eg in reversed(even_word):
                    nxt = {}
                    for c, val in vec.items():
                        for r, a in M0.action.get(eg, {}).get(c, {}).items():
                            v = nxt.get(r, 0) + a * val
                            if v:
                                nxt[r] = v
                            else:
                                nxt.pop(r, None)
                    vec = nxt
                    if not vec:
                        break
                for r, val in vec.items():
                    target = col_index[(target_s, r)]
                    v = img.get(target, 0) + val
                    if v:
                        img[target] = v
                    else:
                        img.pop(target, None)
            if img:
                colmap[col] = img
        action[g] = colmap

    return TruncatedModule(n, M0.depth, "induced-from-even", M0.top, weights,
                           slice_of, [list(b) for b in slice_basis],
                           weight_of_col, heights, action)


def h_eigenvalue_split(M: TruncatedModule, grader_diag) -> dict:
    """Dimensions of the eigenspaces of a central Levi grader (given by its
    diagonal values) acting on the module slices."""
    out = {}
    for s, wt in enumerate(M.weights):
        val = sum((a * Q(b) for a, b in zip(wt, grader_diag)), Q(0))
        out[val] = out.get(val, 0) + len(M.slice_basis[s])
    return dict(sorted(out.items()))


def exterior_odd_character(n: int) -> dict:
    """Weight multiplicities of the exterior algebra on the odd part."""
    mult = {tuple([Q(0)] * n): 1}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            wt = tuple(Q((1 if t == i else 0) - (1 if t == j else 0))
                       for t in range(1, n + 1))
            new = dict(mult)
            for w, m in mult.items():
                key = weight_add(w, wt)
                new[key] = new.get(key, 0) + m
            mult = new
    return mult
