"""Exact polynomials over Q in variables x_1..x_N, symmetric group actions,
parabolic invariant rings, Demazure operators and Frobenius data.

Every variable has q-degree 2.  Parabolic subgroups of S_N are described by
compositions: the composition (k_1, ..., k_r) stands for the Young subgroup
S_{k_1} x ... x S_{k_r}.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

log = logging.getLogger(__name__)

ZERO = mpq(0)
ONE = mpq(1)


class Poly:
    """Sparse polynomial: a dict from exponent tuples to nonzero rationals."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms=None, nvars=0):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = mpq(c)

    @classmethod
    def const(cls, c, nvars):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i, nvars):
        """The variable x_i (1-indexed)."""
        e = [0] * nvars
        e[i - 1] = 1
        return cls({tuple(e): 1}, nvars)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return _raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = mpq(other)
            if not c:
                return Poly(nvars=self.nvars)
            return _raw({e: v * c for e, v in self.terms.items()}, self.nvars)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return _raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def qdegrees(self):
        return {2 * sum(e) for e in self.terms}

    def qdegree(self):
        """q-degree of a homogeneous polynomial (None for zero)."""
        degs = self.qdegrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def homogeneous_part(self, qdeg):
        return _raw({e: c for e, c in self.terms.items() if 2 * sum(e) == qdeg}, self.nvars)

    def sorted_terms(self):
        """Terms in graded-lex order, x_1 > x_2 > ..., largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _raw(terms, nvars):
    p = Poly.__new__(Poly)
    p.terms = terms
    p.nvars = nvars
    return p


# ---------------------------------------------------------------------------
# permutations and compositions


def act(w, f):
    """Let the permutation w (a tuple with w[i] the image of i, 0-indexed)
    act by x_i -> x_{w(i)}."""
    n = f.nvars
    if len(w) != n:
        raise ValueError("permutation size does not match number of variables")
    out = {}
    for e, c in f.terms.items():
        new = [0] * n
        for i, k in enumerate(e):
            new[w[i]] = k
        out[tuple(new)] = c
    return _raw(out, n)


def transposition(i, n):
    """The simple transposition s_i (1-indexed) in S_n."""
    w = list(range(n))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def compose(u, v):
    """Composite permutation u o v."""
    return tuple(u[v[i]] for i in range(len(v)))


def perm_length(w):
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def reduced_word(w):
    """A reduced word (a_1, ..., a_k) with w = s_{a_1} ... s_{a_k}."""
    w = list(w)
    word = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                break
        else:
            break
    return tuple(reversed(word))


def blocks(comp):
    """Index ranges (0-based) of the blocks of a composition."""
    out, start = [], 0
    for k in comp:
        out.append(range(start, start + k))
        start += k
    return out


def composition_length(comp):
    """Length of the longest element of the Young subgroup."""
    return sum(k * (k - 1) // 2 for k in comp)


def longest_element(comp):
    w = []
    for b in blocks(comp):
        w.extend(reversed(list(b)))
    return tuple(w)


def simple_reflections(comp):
    """Simple reflections (1-indexed) lying in the Young subgroup."""
    return {i + 1 for b in blocks(comp) for i in list(b)[:-1]}


def is_subparabolic(I, J):
    return sum(I) == sum(J) and simple_reflections(I) <= simple_reflections(J)


# ---------------------------------------------------------------------------
# Demazure operators


def demazure(i, f):
    """Divided difference (f - s_i f) / (x_i - x_{i+1}), computed monomialwise."""
    n = f.nvars
    if not 1 <= i < n:
        raise ValueError(f"simple index {i} out of range for {n} variables")
    a, b = i - 1, i
    out = {}
    for e, c in f.terms.items():
        p, r = e[a], e[b]
        if p == r:
            continue
        lo, d = min(p, r), abs(p - r)
        sign = c if p > r else -c
        for j in range(d):
            new = list(e)
            new[a] = lo + j
            new[b] = lo + d - 1 - j
            new = tuple(new)
            v = out.get(new, ZERO) + sign
            if v:
                out[new] = v
            else:
                out.pop(new, None)
    return _raw(out, n)


def demazure_word(word, f):
    """Apply d_{a_1} o ... o d_{a_k} for word (a_1, ..., a_k)."""
    for i in reversed(word):
        f = demazure(i, f)
    return f


def relative_element(I, J):
    """The permutation u with w_J = u w_I and l(w_J) = l(u) + l(w_I), so that
    d_{w_J} = d_u o d_{w_I}."""
    return compose(longest_element(J), longest_element(I))


def demazure_relative(I, J, f, word=None):
    """Relative trace R^I -> R^J.

    Its signed q-degree is 2l(I) - 2l(J).  An explicit reduced word may be
    passed to test independence of the chosen expression.
    """
    I, J = tuple(I), tuple(J)
    if not is_subparabolic(I, J):
        raise ValueError(f"{I} is not contained in {J}")
    w = relative_element(I, J)
    if word is None:
        word = reduced_word(w)
    elif len(word) != perm_length(w):
        raise ValueError("word is not reduced for the relative element")
    log.debug("relative trace l(I)=%d l(J)=%d", composition_length(I), composition_length(J))
    return demazure_word(word, f)


# ---------------------------------------------------------------------------
# invariant rings


def elementary(j, idx, nvars):
    """e_j in the variables with 0-based indices idx."""
    out = {}
    for sub in itertools.combinations(idx, j):
        e = [0] * nvars
        for i in sub:
            e[i] = 1
        out[tuple(e)] = ONE
    return _raw(out, nvars)


@dataclass(frozen=True)
class InvariantRing:
    composition: tuple

    @property
    def nvars(self):
        return sum(self.composition)

    def generators(self):
        """[(block, j, e_j(block))] for every block and j = 1..k."""
        n = self.nvars
        return [
            (b, j, elementary(j, list(rng), n))
            for b, rng in enumerate(blocks(self.composition))
            for j in range(1, len(rng) + 1)
        ]

    def contains(self, f):
        return all(act(transposition(i, self.nvars), f) == f for i in simple_reflections(self.composition))

    def basis(self, qdeg):
        """Orbit sums of monomials of the given q-degree."""
        return [orbit_sum(e, self.composition) for e in invariant_exponents(self.composition, qdeg)]

    def graded_dimension(self, qmax):
        """Generating function prod_blocks prod_i 1/(1-q^{2i}) up to qmax."""
        series = {0: 1}
        for k in self.composition:
            for i in range(1, k + 1):
                series = _mul_geometric(series, 2 * i, qmax)
        return {d: v for d, v in series.items() if v}


def _mul_geometric(series, step, qmax):
    out = {}
    for d in range(0, qmax + 1):
        out[d] = series.get(d, 0) + (out.get(d - step, 0) if d >= step else 0)
    return out


def invariant_exponents(comp, qdeg):
    """Exponent vectors sorted decreasingly inside each block (orbit reps)."""
    if qdeg % 2:
        return []
    total = qdeg // 2

    def parts(k, n, cap):
        if k == 0:
            if n == 0:
                yield ()
            return
        for first in range(min(n, cap), -1, -1):
            for rest in parts(k - 1, n - first, first):
                yield (first,) + rest

    def rec(bs, n):
        if not bs:
            if n == 0:
                yield ()
            return
        k = bs[0]
        for m in range(n, -1, -1):
            for p in parts(k, m, m):
                for rest in rec(bs[1:], n - m):
                    yield p + rest

    return list(rec(tuple(comp), total))


def orbit_sum(e, comp):
    n = len(e)
    pieces = []
    for b in blocks(comp):
        pieces.append(set(itertools.permutations([e[i] for i in b])))
    out = {}
    for combo in itertools.product(*pieces):
        out[tuple(itertools.chain.from_iterable(combo))] = ONE
    return _raw(out, n)


def to_elementary(f, comp):
    """Write an S_I-invariant polynomial as a polynomial in the block
    elementary symmetric functions.

    Returns a dict from exponent tuples (one slot per generator, ordered as
    InvariantRing.generators) to coefficients.
    """
    ring = InvariantRing(tuple(comp))
    gens = ring.generators()
    bl = blocks(comp)
    n = f.nvars
    rest = dict(f.terms)
    out = {}
    while rest:
        lead = max(rest, key=lambda e: e)
        c = rest[lead]
        slots = []
        for rng in bl:
            lam = [lead[i] for i in rng] + [0]
            if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
                raise ValueError("polynomial is not invariant under the parabolic subgroup")
            slots.extend(lam[j - 1] - lam[j] for j in range(1, len(rng) + 1))
        slots = tuple(slots)
        out[slots] = out.get(slots, ZERO) + c
        prod = Poly.const(c, n)
        for (b, j, g), k in zip(gens, slots):
            if k:
                prod = prod * g ** k
        for e, v in prod.terms.items():
            w = rest.get(e, ZERO) - v
            if w:
                rest[e] = w
            else:
                rest.pop(e, None)
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# Frobenius data


def _solve(rows, rhs):
    """Solve the exact linear system rows * x = rhs (rows: list of dicts).

    Returns a solution dict or None if inconsistent.
    """
    from .linalg import solve_exact

    return solve_exact(rows, rhs)


def _monomial_basis_quotient(I, J, qdeg, chosen):
    """Extend `chosen` by invariants of degree qdeg that are independent
    modulo R^J_+ R^I (graded Nakayama gives an R^J-basis of R^I)."""
    from .linalg import RowReducer

    n = sum(I)
    ringI, ringJ = InvariantRing(tuple(I)), InvariantRing(tuple(J))
    red = RowReducer()
    for _, j, g in ringJ.generators():
        dg = g.qdegree()
        if dg > qdeg:
            continue
        for b in ringI.basis(qdeg - dg):
            red.add((g * b).terms)
    for a in chosen:
        red.add(a.terms)
    picked = []
    for cand in ringI.basis(qdeg):
        if red.add(cand.terms):
            picked.append(cand)
    return picked


@lru_cache(maxsize=None)
def _frobenius_cached(I, J):
    return tuple(_frobenius(I, J, None))


def frobenius_element(I, J, basis=None):
    """Dual bases [(a_i, a_i*)] of R^I over R^J with d(a_i a_j*) = delta_ij,
    where d is the relative trace.  Each pair has total q-degree
    2(l(J) - l(I))."""
    I, J = tuple(I), tuple(J)
    if basis is None:
        return list(_frobenius_cached(I, J))
    return _frobenius(I, J, basis)


def _frobenius(I, J, basis):
    if not is_subparabolic(I, J):
        raise ValueError(f"{I} is not contained in {J}")
    n = sum(I)
    top = 2 * (composition_length(J) - composition_length(I))
    rank = _group_order(J) // _group_order(I)
    if basis is None:
        basis = []
        for d in range(0, top + 1, 2):
            basis.extend(_monomial_basis_quotient(I, J, d, []))
            if len(basis) == rank:
                break
    if len(basis) != rank:
        raise ValueError(f"expected {rank} basis elements, got {len(basis)}")
    ringI = InvariantRing(I)
    pairs = []
    for j, aj in enumerate(basis):
        target = top - aj.qdegree()
        space = ringI.basis(target)
        # unknown coefficients c_s of the dual: sum_s c_s d(a_i * space_s) = delta_ij
        rows, rhs = {}, {}
        for s, v in enumerate(space):
            for i, ai in enumerate(basis):
                img = demazure_relative(I, J, ai * v)
                for e, c in img.terms.items():
                    rows.setdefault((i, e), {})[s] = c
        for i, ai in enumerate(basis):
            key = (i, (0,) * n)
            rows.setdefault(key, {})
            rhs[key] = ONE if i == j else ZERO
        keys = list(rows)
        sol = _solve([rows[k] for k in keys], [rhs.get(k, ZERO) for k in keys])
        if sol is None:
            raise ValueError("candidate basis fails the pairing rank check")
        dual = Poly(nvars=n)
        for s, c in sol.items():
            dual = dual + space[s] * c
        pairs.append((aj, dual))
    return pairs


def _group_order(comp):
    out = 1
    for k in comp:
        for i in range(2, k + 1):
            out *= i
    return out


@dataclass(frozen=True)
class FrobeniusMap:
    """Symbolic description of mu, Delta, iota or the trace for I < J."""

    kind: str
    I: tuple
    J: tuple
    qdeg: int
    pairs: tuple = ()

    def apply(self, *args):
        if self.kind == "mu":
            f, g = args
            return f * g
        if self.kind == "delta":
            (f,) = args
            return [(f * a, b) for a, b in self.pairs]
        if self.kind == "iota":
            return args[0]
        if self.kind == "trace":
            return demazure_relative(self.I, self.J, args[0])
        raise ValueError(self.kind)


def multiply_map(I, J):
    return FrobeniusMap("mu", tuple(I), tuple(J), 0)


def comultiply_map(I, J):
    d = 2 * (composition_length(J) - composition_length(I))
    return FrobeniusMap("delta", tuple(I), tuple(J), d, tuple(frobenius_element(I, J)))


def inclusion_map(I, J):
    return FrobeniusMap("iota", tuple(I), tuple(J), 0)


def trace_map(I, J):
    d = 2 * (composition_length(I) - composition_length(J))
    return FrobeniusMap("trace", tuple(I), tuple(J), d)
