"""Hochschild cohomology through Koszul complexes, and traces of complexes.

Closing a strand of color k tensors with k two-term factors
B -> a q^{-2i} B given by multiplication with e_i(top) - e_i(bottom).  The
a-degree of a summand is the number of factors it uses.  For a complex of
bimodules everything is computed slice by slice: a fixed pair (a, q) gives
a finite double complex (Koszul direction and t direction) of rational
vector spaces, and the homology of the t-direction on Koszul cohomology is
read off from ranks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from gmpy2 import mpq

from . import polyops as P
from .complexes import BimoduleComplex, pitchfork_pair
from .linalg import rank
from .webs import Layer, Web, WebBimodule, WebError


@dataclass(frozen=True)
class KoszulFactor:
    """Factor e_j(top edge at pos) - e_j(bottom edge at pos), of degree 2j."""

    pos: int
    j: int

    @property
    def qshift(self):
        return 2 * self.j

    def polynomial(self, B):
        return P.sub(B.boundary_poly("left", self.pos, self.j), B.boundary_poly("right", self.pos, self.j))


class _Node:
    __slots__ = ("key", "bimodule", "shift", "t")

    def __init__(self, key, bimodule, shift, t):
        self.key, self.bimodule, self.shift, self.t = key, bimodule, shift, t


class _Chain:
    """Uniform view of a single bimodule or a BimoduleComplex."""

    def __init__(self, obj):
        if isinstance(obj, WebBimodule):
            self.bottom, self.top = obj.bottom, obj.top
            self.nodes = {0: [_Node((), obj, obj.shift, 0)]}
            self._out = {(): []}
            self.cx = None
        elif isinstance(obj, BimoduleComplex):
            self.cx = obj
            steps, _ = obj.term(next(iter(obj.choices()))).web.walk()
            self.bottom = obj.bottom
            self.top = obj.term(next(iter(obj.choices()))).web.top
            self.nodes = {}
            for t, chs in obj.degrees().items():
                self.nodes[t] = [
                    _Node(ch, obj.term(ch).bimodule(obj.window), obj.term(ch).total_shift, t) for ch in chs
                ]
            self._out = None
        else:
            raise TypeError(f"cannot trace {type(obj).__name__}")
        self.by_key = {n.key: n for ns in self.nodes.values() for n in ns}

    def outgoing(self, key):
        if self.cx is None:
            return self._out[key]
        return [(dst, s, self.cx.component(key, dst, i)) for dst, s, i in self.cx.outgoing(key)]


class TracedComplex:
    """Koszul closure of the strands at `positions` of a bimodule or complex."""

    def __init__(self, obj, positions=None):
        self.chain = ch = _Chain(obj)
        n = len(ch.bottom)
        positions = list(range(n)) if positions is None else sorted(positions)
        for p in positions:
            if p >= n or p >= len(ch.top) or ch.bottom[p] != ch.top[p]:
                raise WebError(f"strand {p} cannot be closed: colors differ at top and bottom")
        self.positions = tuple(positions)
        self.gens = [KoszulFactor(p, j) for p in positions for j in range(1, ch.bottom[p] + 1)]
        self._subsets = {}
        self._mult = {}
        self._f = {}
        self._rk = {}
        self._gspace = {}
        self._gdk = {}

    @property
    def max_a(self):
        return len(self.gens)

    @property
    def tdegrees(self):
        return sorted(self.chain.nodes)

    def subsets(self, a):
        hit = self._subsets.get(a)
        if hit is None:
            hit = [S for S in itertools.combinations(range(len(self.gens)), a)] if 0 <= a <= len(self.gens) else []
            self._subsets[a] = hit
        return hit

    def _dshift(self, S):
        return sum(self.gens[g].qshift for g in S)

    def qmin(self):
        """Smallest q carrying a nonzero chain group."""
        return min(n.shift - sum(g.qshift for g in self.gens) for ns in self.chain.nodes.values() for n in ns)

    # -- spaces --------------------------------------------------------------

    def space(self, t, a, q):
        """Blocks (node, S, raw degree, offset, dim) of K^a_t in degree q, and the total dim."""
        key = (t, a, q)
        hit = self._gspace.get(key)
        if hit is not None:
            return hit
        blocks, off = {}, 0
        for node in self.chain.nodes.get(t, []):
            for S in self.subsets(a):
                d = q + self._dshift(S) - node.shift
                dim = node.bimodule.dim(d) if d >= 0 else 0
                if dim:
                    blocks[(node.key, S)] = (node, d, off, dim)
                    off += dim
        hit = (blocks, off)
        self._gspace[key] = hit
        return hit

    def _mult_columns(self, node, g, d):
        key = (node.key, g, d)
        hit = self._mult.get(key)
        if hit is None:
            B = node.bimodule
            poly = self.gens[g].polynomial(B)
            target = d + self.gens[g].qshift
            hit = [B.coords(P.mul(poly, {m: mpq(1)}), target) for m in B.piece(d)]
            self._mult[key] = hit
        return hit

    def koszul_columns(self, t, a, q):
        """Columns of d_K : K^a_t -> K^{a+1}_t in degree q."""
        key = (t, a, q)
        hit = self._gdk.get(key)
        if hit is not None:
            return hit
        src, n = self.space(t, a, q)
        dst, m = self.space(t, a + 1, q)
        cols = [None] * n
        for (nk, S), (node, d, off, dim) in src.items():
            block = [dict() for _ in range(dim)]
            for g in range(len(self.gens)):
                if g in S:
                    continue
                T = tuple(sorted(S + (g,)))
                tgt = dst.get((nk, T))
                if tgt is None:
                    continue
                sign = -1 if sum(1 for h in S if h < g) % 2 else 1
                toff = tgt[2]
                for col, img in zip(block, self._mult_columns(node, g, d)):
                    for k, v in img.items():
                        col[toff + k] = col.get(toff + k, 0) + sign * v
            for i, col in enumerate(block):
                cols[off + i] = {k: v for k, v in col.items() if v}
        hit = (cols, m)
        self._gdk[key] = hit
        return hit

    def t_columns(self, t, a, q):
        """Columns of the t-differential K^a_t -> K^a_{t+1} in degree q."""
        key = (t, a, q)
        hit = self._f.get(key)
        if hit is not None:
            return hit
        src, n = self.space(t, a, q)
        dst, m = self.space(t + 1, a, q)
        cols = [None] * n
        for (nk, S), (node, d, off, dim) in src.items():
            block = [dict() for _ in range(dim)]
            for dkey, sign, f in self.chain.outgoing(nk):
                tgt = dst.get((dkey, S))
                if tgt is None:
                    continue
                toff = tgt[2]
                for col, img in zip(block, f.images(d)):
                    for k, v in img.items():
                        col[toff + k] = col.get(toff + k, 0) + sign * v
            for i, col in enumerate(block):
                cols[off + i] = {k: v for k, v in col.items() if v}
        hit = (cols, m)
        self._f[key] = hit
        return hit

    # -- homology ----------------------------------------------------------------
    #
    # For a slice (a, q) let K^a_t be the Koszul cochains of C_t.  With F the
    # t-differential and d the Koszul differential, the rank of the map
    # induced by F on Koszul cohomology is
    #   rank [[F_t, d^{a-1}_{t+1}], [d^a_t, 0]] - rank d^a_t - rank d^{a-1}_{t+1}.

    def _rank_dk(self, t, a, q):
        if a < 0 or a > len(self.gens):
            return 0
        key = (t, a, q)
        hit = self._rk.get(key)
        if hit is None:
            cols, m = self.koszul_columns(t, a, q)
            hit = rank(cols, m) if cols and m else 0
            self._rk[key] = hit
        return hit

    def hh_dims(self, a, q):
        """{t: dim HH^a of the chain group C_t in degree q}."""
        out = {}
        for t in self.tdegrees:
            n = self.space(t, a, q)[1]
            if n:
                d = n - self._rank_dk(t, a, q) - self._rank_dk(t, a - 1, q)
                if d:
                    out[t] = d
        return out

    def induced_rank(self, t, a, q):
        """Rank of the t-differential induced on Koszul cohomology."""
        n0 = self.space(t, a, q)[1]
        n1 = self.space(t + 1, a, q)[1]
        if not n0 or not n1:
            return 0
        F, _ = self.t_columns(t, a, q)
        if not any(F):
            return 0
        dk0 = self.koszul_columns(t, a, q)[0] if a < len(self.gens) else [{}] * n0
        prev = self.koszul_columns(t + 1, a - 1, q)[0] if a > 0 else []
        cols = []
        for f, k in zip(F, dk0):
            col = dict(f)
            for j, v in k.items():
                col[n1 + j] = v
            cols.append(col)
        cols.extend(prev)
        total = n1 + self.space(t, a + 1, q)[1]
        return rank(cols, total) - self._rank_dk(t, a, q) - self._rank_dk(t + 1, a - 1, q)

    def homology_dims(self, a, q):
        """{t: dim H_t(HH^a) in degree q}, nonzero entries only."""
        hh = self.hh_dims(a, q)
        if not hh:
            return {}
        ranks = {t: self.induced_rank(t, a, q) for t in hh if hh.get(t + 1)}
        out = {}
        for t, d in hh.items():
            dim = d - ranks.get(t, 0) - ranks.get(t - 1, 0)
            if dim < 0:
                raise ArithmeticError("negative homology dimension")
            if dim:
                out[t] = dim
        return out

    def euler(self, a, q):
        return sum((-1) ** (t % 2) * d for t, d in self.hh_dims(a, q).items())

    def chain_dims(self, a, q):
        return {t: self.space(t, a, q)[1] for t in self.tdegrees if self.space(t, a, q)[1]}

    def check_d_squared(self, a, q):
        """d_K^2 = 0, F^2 = 0 and F d_K = d_K F on one slice."""
        for t in self.tdegrees:
            for first, second in (
                (self.koszul_columns(t, a, q), self.koszul_columns(t, a + 1, q)),
                (self.t_columns(t, a, q), self.t_columns(t + 1, a, q)),
            ):
                if any(_apply(second[0], c) for c in first[0]):
                    return False
            lhs = [_apply(self.koszul_columns(t + 1, a, q)[0], c) for c in self.t_columns(t, a, q)[0]]
            rhs = [_apply(self.t_columns(t, a + 1, q)[0], c) for c in self.koszul_columns(t, a, q)[0]]
            if lhs != rhs:
                return False
        return True


def _apply(cols, vec):
    out = {}
    for k, v in vec.items():
        for j, w in cols[k].items():
            x = out.get(j, 0) + v * w
            if x:
                out[j] = x
            else:
                out.pop(j, None)
    return out


def hh(B, window=None):
    """{(a, q): dim} of the Hochschild cohomology of a bimodule on a q-window."""
    if B.bottom != B.top:
        raise WebError("Hochschild cohomology needs equal boundary compositions")
    T = TracedComplex(B)
    lo, hi = window or B.window
    out = {}
    for a in range(T.max_a + 1):
        for q in range(lo, hi + 1):
            d = T.hh_dims(a, q).get(0, 0)
            if d:
                out[(a, q)] = d
    return out


def partial_trace(X, window=None):
    """Close the rightmost strand of a bimodule or complex."""
    ch = _Chain(X)
    return TracedComplex(X, [len(ch.bottom) - 1])


def full_trace(C, window=None):
    return TracedComplex(C)


def traced_series(T, window):
    """{(a, t, q): dim} of homology over a q-window."""
    lo, hi = window
    out = {}
    for a in range(T.max_a + 1):
        for q in range(max(lo, T.qmin()), hi + 1):
            for t, d in T.homology_dims(a, q).items():
                out[(a, t, q)] = d
    return out


def traced_euler(T, window):
    lo, hi = window
    out = {}
    for a in range(T.max_a + 1):
        for q in range(max(lo, T.qmin()), hi + 1):
            e = T.euler(a, q)
            if e:
                out[(a, q)] = e
    return out


def vertex_slide_sides(B, window=None):
    """The two traced objects of the vertex sliding relation.

    B is a web bimodule from (..., k, l) at the bottom to (..., k + l) at the
    top.  Returns (lhs, rhs, shift): lhs closes the last two strands of B
    with a split put on top, rhs closes the merged strand of B with the
    split moved to the bottom, and the relation predicts
    dim lhs(a, q) = dim rhs(a, q - shift)."""
    web = B.web
    I, J = tuple(web.bottom), tuple(web.top)
    if len(I) < 2 or J != I[:-2] + (I[-2] + I[-1],):
        raise WebError("expected a web from (..., k, l) to (..., k + l)")
    k, l = I[-2], I[-1]
    r = len(I)
    split = Web(J, (Layer("split", r - 2, k, l, "slide"),))
    lhs = TracedComplex(WebBimodule(web.stack(split), B.window), [r - 2, r - 1])
    rhs = TracedComplex(WebBimodule(split.stack(web), B.window), [r - 2])
    return lhs, rhs, 2 * k * l


def vertex_slide_check(B, window):
    """Homology-level check of the vertex sliding relation on a q-window."""
    lhs, rhs, shift = vertex_slide_sides(B)
    lo, hi = window
    for a in range(lhs.max_a + 1):
        for q in range(lo, hi + 1):
            if lhs.hh_dims(a, q) != rhs.hh_dims(a, q - shift):
                return False
    return True


def pitchfork_check(kind, k, l, m=1, sign=1, width=2, limit=16):
    """Compare the closed homology of both sides of a pitchfork move, allowing
    the predicted q-shift, on ``width + 1`` degrees from the first degree
    where either side is nonzero."""
    lhs, rhs, shift = pitchfork_pair(kind, k, l, m, sign)
    TL, TR = TracedComplex(lhs), TracedComplex(rhs)
    start = min(TL.qmin(), TR.qmin() + shift)
    for lo in range(start, start + limit + 1):
        if traced_series(TL, (lo, lo)) or traced_series(TR, (lo - shift, lo - shift)):
            break
    else:
        return False
    SL = traced_series(TL, (lo, lo + width))
    SR = traced_series(TR, (lo - shift, lo + width - shift))
    return SL == {(a, t, q + shift): v for (a, t, q), v in SR.items()}
