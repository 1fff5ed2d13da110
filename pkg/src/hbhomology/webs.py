"""Singular Bott-Samelson bimodules of merge/split webs.

A web bimodule is presented as a commutative ring: one alphabet of
elementary symmetric generators e_1..e_k per edge of color k, modulo the
vertex relations.  Merge outputs are eliminated outright.  At a split one
output alphabet gets fresh variables and the other is solved for; the
leftover vertex relations are kept.  When the fresh side has color 1 there
is a single relation, monic in the fresh variable, and normal forms are
computed by triangular rewriting.  Otherwise normal forms come from row
reduction of the relation ideal degree by degree.

Degrees: ring elements carry their raw q-degree (2j for e_j).  The q-degree
of an element of the bimodule is raw degree plus the web's intrinsic shift,
which is -kl for every (k, l) merge.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from . import polyops as P
from .linalg import RowReducer
from .rings import (
    Poly,
    demazure_relative,
    elementary,
    frobenius_element,
    to_elementary,
)

sys.setrecursionlimit(max(10000, sys.getrecursionlimit()))

ZERO = mpq(0)


class WebError(ValueError):
    pass


# ---------------------------------------------------------------------------
# webs


@dataclass(frozen=True)
class Layer:
    kind: str  # "merge" or "split"
    pos: int
    left: int
    right: int
    tag: str


@dataclass(frozen=True)
class Web:
    bottom: tuple
    layers: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bottom", tuple(self.bottom))
        object.__setattr__(self, "layers", tuple(self.layers))
        if any(k <= 0 for k in self.bottom):
            raise WebError("edge colors must be positive")
        tags = [l.tag for l in self.layers]
        if len(set(tags)) != len(tags):
            raise WebError("layer tags must be unique")
        self.levels()

    def levels(self):
        comp = list(self.bottom)
        out = [tuple(comp)]
        for l in self.layers:
            if l.left <= 0 or l.right <= 0:
                raise WebError(f"degenerate layer {l}")
            if l.kind == "merge":
                if comp[l.pos : l.pos + 2] != [l.left, l.right]:
                    raise WebError(f"merge {l} does not match {comp}")
                comp[l.pos : l.pos + 2] = [l.left + l.right]
            elif l.kind == "split":
                if l.pos >= len(comp) or comp[l.pos] != l.left + l.right:
                    raise WebError(f"split {l} does not match {comp}")
                comp[l.pos : l.pos + 1] = [l.left, l.right]
            else:
                raise WebError(f"unknown layer kind {l.kind}")
            out.append(tuple(comp))
        return out

    @property
    def top(self):
        return self.levels()[-1]

    @property
    def shift(self):
        return sum(-l.left * l.right for l in self.layers if l.kind == "merge")

    def stack(self, upper):
        """This web with `upper` placed on top of it."""
        if self.top != upper.bottom:
            raise WebError(f"boundary mismatch {self.top} vs {upper.bottom}")
        return Web(self.bottom, self.layers + upper.layers)

    def tensor(self, other):
        """Juxtapose `other` to the right."""
        off = len(self.top)
        moved = tuple(Layer(l.kind, l.pos + off, l.left, l.right, l.tag) for l in other.layers)
        return Web(self.bottom + other.bottom, self.layers + moved)

    def prefixed(self, prefix):
        return Web(self.bottom, tuple(Layer(l.kind, l.pos, l.left, l.right, prefix + l.tag) for l in self.layers))

    def walk(self):
        """Yield (layer, input edge keys, output edge keys); returns top keys."""
        cur = [("in", p) for p in range(len(self.bottom))]
        steps = []
        for l in self.layers:
            if l.kind == "merge":
                ins = cur[l.pos : l.pos + 2]
                outs = [(l.tag, "m")]
                cur[l.pos : l.pos + 2] = outs
            else:
                ins = [cur[l.pos]]
                outs = [(l.tag, "l"), (l.tag, "r")]
                cur[l.pos : l.pos + 1] = outs
            steps.append((l, ins, outs))
        return steps, cur

    def __str__(self):
        parts = [f"bottom={self.bottom}"]
        for l in self.layers:
            parts.append(f"{l.kind}[{l.tag}]@{l.pos}({l.left},{l.right})")
        return " ".join(parts)


def identity_web(comp):
    return Web(tuple(comp))


def merge_web(comp, pos, tag="m"):
    comp = tuple(comp)
    return Web(comp, (Layer("merge", pos, comp[pos], comp[pos + 1], tag),))


def split_web(comp, pos, left, right, tag="s"):
    return Web(tuple(comp), (Layer("split", pos, left, right, tag),))


def split_merge_web(k, l, left=(), right=()):
    """Merge (k, l) into k+l, then split back: the thick-edge web."""
    comp = tuple(left) + (k, l) + tuple(right)
    p = len(left)
    return Web(comp, (Layer("merge", p, k, l, "g"), Layer("split", p, k, l, "h")))


def bigon_web(a, b, left=(), right=()):
    """Split a+b into (a, b), then merge back."""
    comp = tuple(left) + (a + b,) + tuple(right)
    p = len(left)
    return Web(comp, (Layer("split", p, a, b, "s"), Layer("merge", p, a, b, "t")))


def _fresh_side(left, right):
    if left == 1:
        return "l"
    if right == 1:
        return "r"
    return "l" if left <= right else "r"


# ---------------------------------------------------------------------------
# bimodules


class WebBimodule:
    """Graded ring presentation of a web, with cached graded pieces."""

    def __init__(self, web, window=(-40, 40)):
        self.web = web
        self.window = tuple(window)
        self.shift = web.shift
        steps, top_keys = web.walk()
        self.bottom_keys = [("in", p) for p in range(len(web.bottom))]
        self.top_keys = top_keys

        names, degs, color = [], [], {}
        for key, k in zip(self.bottom_keys, web.bottom):
            color[key] = k
            for j in range(1, k + 1):
                names.append((key, j))
                degs.append(2 * j)
        fresh = {}
        for l, ins, outs in steps:
            if l.kind == "merge":
                color[outs[0]] = l.left + l.right
            else:
                color[outs[0]], color[outs[1]] = l.left, l.right
                side = _fresh_side(l.left, l.right)
                key = outs[0] if side == "l" else outs[1]
                fresh[l.tag] = side
                for j in range(1, color[key] + 1):
                    names.append((key, j))
                    degs.append(2 * j)
        self.var_names = names
        self.var_degs = tuple(degs)
        self.nvars = n = len(names)
        self.var_index = {name: i for i, name in enumerate(names)}
        self.color = color

        def var(name):
            e = [0] * n
            e[self.var_index[name]] = 1
            return {tuple(e): mpq(1)}

        edges = {}
        for key in self.bottom_keys:
            edges[key] = [var((key, j)) for j in range(1, color[key] + 1)]
        tower, relations = [], []
        for l, ins, outs in steps:
            if l.kind == "merge":
                edges[outs[0]] = P.elementary_of_union([edges[ins[0]], edges[ins[1]]], color[outs[0]], n)
                continue
            z = edges[ins[0]]
            side = fresh[l.tag]
            xkey, ykey = (outs[0], outs[1]) if side == "l" else (outs[1], outs[0])
            a, b = color[xkey], color[ykey]
            x = [var((xkey, j)) for j in range(1, a + 1)]
            y = []
            for t in range(1, b + 1):
                acc = dict(z[t - 1])
                for i in range(1, min(t, a) + 1):
                    yt = P.const(1, n) if t - i == 0 else y[t - i - 1]
                    P.add_into(acc, P.mul(x[i - 1], yt), -1)
                y.append(acc)
            edges[xkey], edges[ykey] = x, y
            rels = []
            for t in range(b + 1, a + b + 1):
                acc = P.scale(z[t - 1], -1)
                for i in range(0, a + 1):
                    j = t - i
                    if 0 <= j <= b:
                        xi = P.const(1, n) if i == 0 else x[i - 1]
                        yj = P.const(1, n) if j == 0 else y[j - 1]
                        P.add_into(acc, P.mul(xi, yj))
                rels.append(acc)
            relations.extend(rels)
            if a == 1:
                v = self.var_index[(xkey, 1)]
                D = b + 1
                lead = tuple(D if i == v else 0 for i in range(n))
                lc = rels[0].get(lead)
                if lc is None or abs(lc) != 1:
                    raise WebError("split relation is not monic in the fresh variable")
                monic = P.scale(rels[0], 1 / lc)
                tail = P.scale(monic, -1)
                tail.pop(lead)
                if any(e[v] >= D for e in tail):
                    raise WebError("split relation is not triangular")
                tower.append((v, D, tail))
            else:
                tower.append(None)
        self.edges = edges
        self.relations = relations
        self.mode = "tower" if all(t is not None for t in tower) else "ideal"
        self.tower = [t for t in tower if t is not None]
        self.bound = {v: D for v, D, _ in self.tower}
        self._nf = {}
        self._pieces = {}
        self._index = {}
        self._ideal = {}
        self._gen_cache = {}

    # -- structure ---------------------------------------------------------

    @property
    def bottom(self):
        return self.web.bottom

    @property
    def top(self):
        return self.web.top

    def edge_poly(self, key, j):
        if j == 0:
            return P.const(1, self.nvars)
        e = self.edges[key]
        return e[j - 1] if j <= len(e) else {}

    def boundary_poly(self, side, pos, j):
        keys = self.top_keys if side == "left" else self.bottom_keys
        return self.edge_poly(keys[pos], j)

    def degree(self, e):
        return sum(k * d for k, d in zip(e, self.var_degs))

    # -- monomial enumeration ----------------------------------------------

    def _monomials(self, i, rem, bounded):
        key = (i, rem, bounded)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        n = self.nvars
        if i == n:
            out = [()] if rem == 0 else []
        else:
            d = self.var_degs[i]
            top = rem // d
            if bounded and i in self.bound:
                top = min(top, self.bound[i] - 1)
            out = []
            for k in range(top, -1, -1):
                for rest in self._monomials(i + 1, rem - k * d, bounded):
                    out.append((k,) + rest)
        self._gen_cache[key] = out
        return out

    def all_monomials(self, d):
        if d < 0 or d % 2:
            return []
        return self._monomials(0, d, False)

    # -- normal forms --------------------------------------------------------

    def nf_mono(self, e):
        hit = self._nf.get(e)
        if hit is not None:
            return hit
        if self.mode == "tower":
            out = self._tower_nf(e)
        else:
            out = self._ideal_nf({e: mpq(1)}, self.degree(e))
        self._nf[e] = out
        return out

    def _tower_nf(self, e):
        for v, D, tail in reversed(self.tower):
            if e[v] >= D:
                base = list(e)
                base[v] -= D
                out = {}
                for t, c in tail.items():
                    m = tuple(a + b for a, b in zip(base, t))
                    P.add_into(out, self.nf_mono(m), c)
                return out
        return {e: mpq(1)}

    def nf(self, p):
        out = {}
        for e, c in p.items():
            P.add_into(out, self.nf_mono(e), c)
        return out

    def _ideal_data(self, d):
        hit = self._ideal.get(d)
        if hit is not None:
            return hit
        monos = sorted(self.all_monomials(d), key=lambda e: tuple(reversed(e)), reverse=True)
        col = {m: i for i, m in enumerate(monos)}
        red = RowReducer()
        for r in self.relations:
            dr = self.degree(next(iter(r)))
            for m in self.all_monomials(d - dr):
                row = {}
                for e, c in r.items():
                    k = col[tuple(a + b for a, b in zip(e, m))]
                    row[k] = row.get(k, ZERO) + c
                red.add(row)
        standard = [m for m in monos if col[m] not in red.pivots]
        data = (monos, col, red, standard)
        self._ideal[d] = data
        return data

    def _ideal_nf(self, p, d):
        monos, col, red, _ = self._ideal_data(d)
        vec = red.reduce({col[e]: c for e, c in p.items()})
        return {monos[k]: c for k, c in vec.items()}

    # -- graded pieces -------------------------------------------------------

    def piece(self, d):
        """Basis monomials of the raw-degree-d part."""
        hit = self._pieces.get(d)
        if hit is not None:
            return hit
        if d < 0 or d % 2:
            basis = []
        elif self.mode == "tower":
            basis = list(self._monomials(0, d, True))
        else:
            basis = list(self._ideal_data(d)[3])
        self._pieces[d] = basis
        self._index[d] = {m: i for i, m in enumerate(basis)}
        return basis

    def index(self, d):
        self.piece(d)
        return self._index[d]

    def dim(self, d):
        return len(self.piece(d))

    def coords(self, p, d):
        """Coordinates of a polynomial of raw degree d in the piece basis."""
        idx = self.index(d)
        out = {}
        for e, c in self.nf(p).items():
            if self.degree(e) != d:
                raise WebError("inhomogeneous element")
            k = idx[e]
            w = out.get(k, ZERO) + c
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return out

    def graded_dimension(self, window=None):
        """{q: dim} for module q-degrees (raw + shift) in the window."""
        lo, hi = window or self.window
        out = {}
        for q in range(lo, hi + 1):
            dim = self.dim(q - self.shift)
            if dim:
                out[q] = dim
        return out

    def debug_dump(self, degrees=()):
        lines = [f"web {self.web}", f"shift {self.shift}", f"mode {self.mode}"]
        for i, (name, deg) in enumerate(zip(self.var_names, self.var_degs)):
            lines.append(f"var {i} {name[0]}:{name[1]} deg {deg}")
        for v, D, tail in self.tower:
            lines.append(f"rewrite v{v}^{D} -> {_fmt(tail)}")
        if self.mode != "tower":
            for r in self.relations:
                lines.append(f"relation {_fmt(r)}")
        for d in degrees:
            lines.append(f"piece {d}: " + " ".join("".join(map(str, m)) for m in self.piece(d)))
        return "\n".join(lines)


def _fmt(p):
    return " + ".join(f"{c}*{''.join(map(str, e))}" for e, c in sorted(p.items())) or "0"


def bimodule_of_web(web, window=(-40, 40)):
    return WebBimodule(web, window)


def horizontal_compose(A, B):
    """Bimodule of A's web stacked on top of B's web."""
    if B.top != A.bottom:
        raise WebError(f"boundary mismatch {B.top} vs {A.bottom}")
    lower = B.web.prefixed("b.")
    upper = A.web.prefixed("a.")
    return WebBimodule(lower.stack(upper), A.window)


# ---------------------------------------------------------------------------
# graded linear maps


class GradedLinearMap:
    """A bimodule map given degree by degree as sparse columns.

    images(d) lists, for every basis vector of source.piece(d), its image
    as {index: coefficient} in target.piece(d + raw_degree).
    """

    def __init__(self, source, target, raw_degree, column, name=""):
        self.source = source
        self.target = target
        self.raw_degree = raw_degree
        self._column = column
        self.name = name
        self._cache = {}

    @property
    def qdeg(self):
        return self.raw_degree + self.target.shift - self.source.shift

    def images(self, d):
        hit = self._cache.get(d)
        if hit is None:
            hit = [self._column(m, d) for m in self.source.piece(d)]
            self._cache[d] = hit
        return hit

    def apply(self, p):
        """Image of a homogeneous source element (dict poly) as a target dict poly."""
        if not p:
            return {}
        d = self.source.degree(next(iter(p)))
        vec = self.source.coords(p, d)
        cols = self.images(d)
        basis = self.target.piece(d + self.raw_degree)
        out = {}
        for i, c in vec.items():
            for k, v in cols[i].items():
                P.add_into(out, {basis[k]: v}, c)
        return out

    def compose(self, other):
        """self o other."""
        if other.target.web != self.source.web:
            raise WebError("maps are not composable")

        def column(m, d):
            mid = other.apply({m: mpq(1)})
            if not mid:
                return {}
            return self.target.coords(self.apply(mid), d + other.raw_degree + self.raw_degree)

        return GradedLinearMap(other.source, self.target, other.raw_degree + self.raw_degree, column,
                               f"{self.name}o{other.name}")

    def is_zero(self, degrees):
        return all(not col for d in degrees for col in self.images(d))

    def matrix_equal(self, other, degrees):
        return all(self.images(d) == other.images(d) for d in degrees)


def action_map(B, side, p):
    """Multiplication by p, a polynomial in boundary generators (dict poly).

    `side` is "left" (top edges) or "right" (bottom edges); the check that p
    uses only those generators is done by the caller constructing p through
    boundary_poly."""
    if side not in ("left", "right"):
        raise WebError("side must be left or right")
    if not p:
        return GradedLinearMap(B, B, 0, lambda m, d: {}, "0")
    deg = B.degree(next(iter(p)))

    def column(m, d):
        return B.coords(P.mul(p, {m: mpq(1)}), d + deg)

    return GradedLinearMap(B, B, deg, column, f"act_{side}")


# ---------------------------------------------------------------------------
# maps through ring homomorphisms with adjoined roots, multipliers and traces


def alphabet(*plus, minus=()):
    """An alphabet expression: union of `plus` with the `minus` removed.

    Items are target edge keys or ("root", r) for an adjoined root.
    """
    return (tuple(plus), tuple(minus))


@lru_cache(maxsize=None)
def _root_trace_value(c):
    """Trace of z^(c-1) for the extension (c-1, 1) < (c) with z the last variable."""
    x = Poly.var(c, c)
    return demazure_relative((c - 1, 1) if c > 1 else (1,), (c,), x ** (c - 1))


class _Extension:
    """The target ring with roots adjoined; elements are dict polys in
    target variables followed by one variable per root."""

    def __init__(self, target, roots):
        self.T = target
        self.nT = target.nvars
        self.n = self.nT + len(roots)
        self.roots = []
        for key in roots:
            c = target.color[key]
            coeffs = [P.pad(target.edge_poly(key, j), self.n) for j in range(1, c + 1)]
            self.roots.append((key, c, coeffs))

    def lift(self, p):
        return P.pad(p, self.n)

    def root(self, r):
        e = [0] * self.n
        e[self.nT + r] = 1
        return {tuple(e): mpq(1)}

    def reduce(self, p):
        out = {}
        stack = list(p.items())
        nT = self.nT
        while stack:
            e, c = stack.pop()
            for r, (key, k, coeffs) in enumerate(self.roots):
                if e[nT + r] >= k:
                    base = list(e)
                    base[nT + r] -= k
                    # z^k = sum_j (-1)^(j+1) e_j z^(k-j)
                    for j in range(1, k + 1):
                        sgn = 1 if j % 2 else -1
                        for t, v in coeffs[j - 1].items():
                            m = [a + b for a, b in zip(base, t)]
                            m[nT + r] += k - j
                            stack.append((tuple(m), c * v * sgn))
                    break
            else:
                tail = e[nT:]
                for m, v in self.T.nf_mono(e[:nT]).items():
                    key = m + tail
                    w = out.get(key, ZERO) + c * v
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
        return out

    def alphabet_polys(self, expr, color):
        plus, minus = expr
        lists = []
        for item in plus:
            if isinstance(item, tuple) and item and item[0] == "root":
                lists.append([self.root(item[1])])
            else:
                lists.append([self.lift(p) for p in self.T.edges[item]])
        out = P.elementary_of_union(lists, color + sum(len(self._items(m)) for m in minus), self.n)
        for item in minus:
            inv = P.inverse_series(self._items(item), color, self.n)
            out = _series_mul(out, inv, color, self.n)
        return [self.reduce(p) for p in out[:color]]

    def _items(self, item):
        if isinstance(item, tuple) and item and item[0] == "root":
            return [self.root(item[1])]
        return [self.lift(p) for p in self.T.edges[item]]


def _series_mul(a, b, length, n):
    """Coefficients 1..length of (1 + sum a_j t^j)(1 + sum b_j t^j)."""
    one = P.const(1, n)
    A = [one] + list(a)
    B = [one] + list(b)
    out = []
    for t in range(1, length + 1):
        acc = {}
        for i in range(0, t + 1):
            if i < len(A) and t - i < len(B):
                P.add_into(acc, P.mul(A[i], B[t - i]))
        out.append(acc)
    return out


class WebMap(GradedLinearMap):
    """f -> traces( multiplier * phi(f) ), phi a substitution of edge alphabets.

    `images` maps source edge keys to alphabet expressions over the target
    (with roots); free source variables of unlisted edges go to the target
    edge with the same key.  Each root r adjoined to a target edge of color
    c is traced out through the (c-1, 1) < (c) relative trace.
    """

    def __init__(self, source, target, images, roots=(), multiplier=None, raw_degree=0, name=""):
        self.ext = ext = _Extension(target, roots)
        self._var_images = []
        cache = {}
        for (key, j) in source.var_names:
            if key in images:
                if key not in cache:
                    cache[key] = ext.alphabet_polys(images[key], source.color[key])
                self._var_images.append(cache[key][j - 1])
            else:
                if key not in target.edges:
                    raise WebError(f"no image for edge {key}")
                self._var_images.append(ext.reduce(ext.lift(target.edge_poly(key, j))))
        base = ext.reduce(multiplier(ext) if multiplier else P.const(1, ext.n))
        self._img = {(0,) * source.nvars: base}
        self._trace = [(_root_trace_value(k).terms.get((0,) * k, ZERO), k) for _, k, _ in ext.roots]
        super().__init__(source, target, raw_degree, self._column, name)

    def _image(self, m):
        hit = self._img.get(m)
        if hit is not None:
            return hit
        v = max(i for i, k in enumerate(m) if k)
        prev = list(m)
        prev[v] -= 1
        out = self.ext.reduce(P.mul(self._image(tuple(prev)), self._var_images[v]))
        self._img[m] = out
        return out

    def _column(self, m, d):
        img = self._image(m)
        nT = self.ext.nT
        out = {}
        for e, c in img.items():
            f = c
            for r, (tv, k) in enumerate(self._trace):
                if e[nT + r] != k - 1:
                    f = ZERO
                    break
                f *= tv
            if f:
                P.add_into(out, {e[:nT]: f})
        return self.target.coords(out, d + self.raw_degree)


def frobenius_multiplier(I, J, top, bottom):
    """Frobenius element sum a_i(top) a_i*(bottom) for I=(a,b) < J=(a+b),
    with the two blocks substituted by alphabet expressions."""
    pairs = frobenius_element(tuple(I), tuple(J))

    def build(ext):
        colors = tuple(I)

        def subst(f, exprs):
            table = []
            for expr, k in zip(exprs, colors):
                table.extend(ext.alphabet_polys(expr, k))
            out = {}
            for slots, c in to_elementary(f, colors).items():
                term = P.const(c, ext.n)
                for g, k in zip(table, slots):
                    for _ in range(k):
                        term = P.mul(term, g)
                P.add_into(out, term)
            return ext.reduce(out)

        total = {}
        for a, b in pairs:
            P.add_into(total, ext.reduce(P.mul(subst(a, top), subst(b, bottom))))
        return total

    return build


# ---------------------------------------------------------------------------
# generating 2-morphisms


@dataclass(frozen=True)
class Site:
    """Where a local move happens: colors to the left, the local colors, colors to the right."""

    left: tuple
    colors: tuple
    right: tuple = ()

    @property
    def pos(self):
        return len(self.left)


def _check_same(given, built):
    if given is not None and (given.web.bottom != built.web.bottom or given.web.top != built.web.top):
        raise WebError("sites not matching the supplied bimodules")
    return given if given is not None else built


def generator_map(kind, site, S=None, T=None, window=(-40, 40)):
    """The generating 2-morphisms: 'mu', 'delta', 'iota', 'partial', 'assoc'.

    mu: thick edge (split o merge of (k,l)) -> identity (k,l)
    delta: identity (k,l) -> thick edge
    iota: edge a+b -> bigon (a,b)
    partial: bigon (a,b) -> edge a+b
    assoc: ((a,b),c) merge -> (a,(b,c)) merge
    """
    left, right, p = tuple(site.left), tuple(site.right), site.pos
    ident = lambda comp: WebBimodule(identity_web(left + tuple(comp) + right), window)
    if kind in ("mu", "delta"):
        k, l = site.colors
        thick = WebBimodule(split_merge_web(k, l, left, right), window)
        flat = ident((k, l))
        if kind == "mu":
            S, T = _check_same(S, thick), _check_same(T, flat)
            images = {("h", "l"): alphabet(("in", p)), ("h", "r"): alphabet(("in", p + 1))}
            return WebMap(S, T, images, name="mu")
        S, T = _check_same(S, flat), _check_same(T, thick)
        mult = frobenius_multiplier(
            (k, l), (k + l,),
            top=(alphabet(("h", "l")), alphabet(("h", "r"))),
            bottom=(alphabet(("in", p)), alphabet(("in", p + 1))),
        )
        return WebMap(S, T, {}, multiplier=mult, raw_degree=2 * k * l, name="delta")
    if kind in ("iota", "partial"):
        a, b = site.colors
        bigon = WebBimodule(bigon_web(a, b, left, right), window)
        edge = ident((a + b,))
        if kind == "iota":
            S, T = _check_same(S, edge), _check_same(T, bigon)
            return WebMap(S, T, {}, name="iota")
        S, T = _check_same(S, bigon), _check_same(T, edge)
        return _band_trace(S, T, p, a, b)
    if kind == "assoc":
        a, b, c = site.colors
        comp = left + (a, b, c) + right
        lhs = Web(comp, (Layer("merge", p, a, b, "u"), Layer("merge", p, a + b, c, "v")))
        rhs = Web(comp, (Layer("merge", p + 1, b, c, "u"), Layer("merge", p, a, b + c, "v")))
        S, T = _check_same(S, WebBimodule(lhs, window)), _check_same(T, WebBimodule(rhs, window))
        return WebMap(S, T, {}, name="assoc")
    raise WebError(f"unknown generator {kind}")


def _band_trace(S, T, p, a, b):
    """Relative trace (a,b) < (a+b) on a bigon, done in honest x-variables."""
    c = a + b
    xkey = ("in", p)
    side = _fresh_side(a, b)
    inner = ("s", side)
    block = list(range(0, a)) if side == "l" else list(range(a, c))
    band = {}
    for i, (key, j) in enumerate(S.var_names):
        if key == xkey:
            band[i] = elementary(j, list(range(c)), c)
        elif key == inner:
            band[i] = elementary(j, block, c)
    gens = [T.edge_poly(xkey, j) for j in range(1, c + 1)]
    raw = -2 * a * b

    def column(m, d):
        f = Poly.const(1, c)
        rest = [0] * S.nvars
        for i, k in enumerate(m):
            if not k:
                continue
            if i in band:
                f = f * band[i] ** k
            else:
                rest[i] = k
        g = demazure_relative((a, b), (c,), f)
        out = {}
        other = {}
        for i, k in enumerate(rest):
            if k:
                name = S.var_names[i]
                e = [0] * T.nvars
                e[T.var_index[name]] = k
                other = P.mul(other, {tuple(e): mpq(1)}) if other else {tuple(e): mpq(1)}
        if not other:
            other = P.const(1, T.nvars)
        for slots, v in to_elementary(g, (c,)).items():
            term = P.const(v, T.nvars)
            for gen, k in zip(gens, slots):
                for _ in range(k):
                    term = P.mul(term, gen)
            P.add_into(out, P.mul(term, other))
        return T.coords(out, d + raw)

    return GradedLinearMap(S, T, raw, column, "partial")
