"""Rickard-Rouquier complexes of ladder webs and their tensor products.

A crossing of a k-colored strand (bottom left) with an l-colored strand
(bottom right) is the complex of ladder webs L_s, s = 0..min(k, l):
L_s splits the right strand into (l-s, s), merges the left strand with the
(l-s) part, splits the result into (l, k-s) and merges (k-s) with the s
part.  Positive crossings carry t^s q^-s, negative ones t^-s q^s.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .braid import SIGMA, embed_classical
from .webs import (
    Layer,
    Web,
    WebBimodule,
    WebError,
    WebMap,
    alphabet,
    frobenius_multiplier,
)

CONVENTION = "hbh-1"


class BudgetExceeded(RuntimeError):
    """The estimated size of a chain group exceeds the configured cap."""


def ladder_layers(p, k, l, s, tag):
    """Layers of L_s on positions p, p+1 of an arbitrary composition."""
    out = []
    if 0 < s < l:
        out.append(Layer("split", p + 1, l - s, s, tag + "lo"))
    if s < l:
        out.append(Layer("merge", p, k, l - s, tag + "m1"))
    if s < k:
        out.append(Layer("split", p, l, k - s, tag + "hi"))
    if 0 < s < k:
        out.append(Layer("merge", p + 1, k - s, s, tag + "m2"))
    return out


@dataclass(frozen=True)
class Crossing:
    """One crossing of the classical braid word at positions p, p+1."""

    index: int
    pos: int
    k: int
    l: int
    sign: int

    @property
    def tag(self):
        return f"x{self.index}."

    @property
    def rungs(self):
        return min(self.k, self.l)

    def tdeg(self, s):
        return self.sign * s

    def qshift(self, s):
        return -self.sign * s


@dataclass
class Term:
    choice: tuple
    web: Web
    qshift: int
    tdeg: int
    starts: dict = field(default_factory=dict, repr=False)
    _bimodule: WebBimodule = field(default=None, repr=False)

    def bimodule(self, window=(-40, 40)):
        if self._bimodule is None:
            self._bimodule = WebBimodule(self.web, window)
        return self._bimodule

    @property
    def total_shift(self):
        return self.qshift + self.web.shift


class BimoduleComplex:
    """A formal direct sum of shifted webs in each t-degree, with differential
    components (source, target, sign, map factory)."""

    def __init__(self, bottom, crossings, top_web=None, window=(-40, 40), bottom_web=None):
        self.bottom = tuple(bottom)
        self.crossings = tuple(crossings)
        self.top_web = top_web
        self.bottom_web = bottom_web
        self.window = window
        self._terms = {}
        self._maps = {}
        if bottom_web is not None and bottom_web.bottom != self.bottom:
            raise WebError("bottom web does not match the bottom boundary")
        comp = list(self.bottom if bottom_web is None else bottom_web.top)
        for c in reversed(self.crossings):
            if (comp[c.pos], comp[c.pos + 1]) != (c.k, c.l):
                raise WebError("crossing colors do not match the strands")
            comp[c.pos], comp[c.pos + 1] = c.l, c.k
        self.top = tuple(comp)
        if top_web is not None and top_web.bottom != self.top:
            raise WebError("closure web does not match the top boundary")

    # -- terms ---------------------------------------------------------------

    def choices(self):
        return itertools.product(*[range(c.rungs + 1) for c in self.crossings])

    def term(self, choice):
        hit = self._terms.get(choice)
        if hit is not None:
            return hit
        layers = [] if self.bottom_web is None else list(self.bottom_web.layers)
        starts = {}
        # the word is read top to bottom, so the last crossing sits lowest
        for c, s in zip(reversed(self.crossings), reversed(choice)):
            starts[c.index] = len(layers)
            layers.extend(ladder_layers(c.pos, c.k, c.l, s, c.tag))
        web = Web(self.bottom, tuple(layers))
        if self.top_web is not None:
            web = web.stack(self.top_web)
        t = sum(c.tdeg(s) for c, s in zip(self.crossings, choice))
        q = sum(c.qshift(s) for c, s in zip(self.crossings, choice))
        term = Term(choice, web, q, t, starts)
        self._terms[choice] = term
        return term

    def degrees(self):
        out = {}
        for ch in self.choices():
            t = sum(c.tdeg(s) for c, s in zip(self.crossings, ch))
            out.setdefault(t, []).append(ch)
        return dict(sorted(out.items()))

    def terms(self, t):
        return [self.term(ch) for ch in self.degrees().get(t, [])]

    def objects(self):
        """{t: [(web, qshift)]} summary."""
        return {t: [(self.term(ch).web, self.term(ch).qshift) for ch in chs] for t, chs in self.degrees().items()}

    # -- differential --------------------------------------------------------

    def outgoing(self, choice):
        """[(target choice, sign, crossing index)] for the differential."""
        out = []
        tprev = 0
        for i, (c, s) in enumerate(zip(self.crossings, choice)):
            sign = -1 if tprev % 2 else 1
            if c.sign > 0 and s < c.rungs:
                out.append((choice[:i] + (s + 1,) + choice[i + 1 :], sign, i))
            if c.sign < 0 and s > 0:
                out.append((choice[:i] + (s - 1,) + choice[i + 1 :], sign, i))
            tprev += c.tdeg(s)
        return out

    def component(self, src, dst, i):
        key = (src, dst)
        hit = self._maps.get(key)
        if hit is None:
            hit = crossing_map(self, self.term(src), self.term(dst), self.crossings[i], src[i], dst[i], self.window)
            self._maps[key] = hit
        return hit

    def check_d_squared(self, degrees):
        """Verify d o d = 0 on the given raw degrees of every source term."""
        for src in self.choices():
            total = {}
            S = self.term(src).bimodule(self.window)
            for mid, s1, i in self.outgoing(src):
                f = self.component(src, mid, i)
                for dst, s2, j in self.outgoing(mid):
                    g = self.component(mid, dst, j)
                    for d in degrees:
                        comp = compose_images(g, f, d)
                        acc = total.setdefault((dst, d), [dict() for _ in range(S.dim(d))])
                        for col, img in zip(acc, comp):
                            for k, v in img.items():
                                w = col.get(k, 0) + s1 * s2 * v
                                if w:
                                    col[k] = w
                                else:
                                    col.pop(k, None)
            if any(any(col) for cols in total.values() for col in cols):
                return False
        return True


def compose_images(g, f, d):
    """Columns of g o f on raw degree d of f's source."""
    mid = f.images(d)
    gcols = g.images(d + f.raw_degree)
    out = []
    for col in mid:
        acc = {}
        for k, v in col.items():
            for j, w in gcols[k].items():
                x = acc.get(j, 0) + v * w
                if x:
                    acc[j] = x
                else:
                    acc.pop(j, None)
        out.append(acc)
    return out


def _keys_at(web, height):
    """Edge keys crossing the level below layer number `height`."""
    steps, _ = web.walk()
    cur = [("in", p) for p in range(len(web.bottom))]
    for l, ins, outs in steps[:height]:
        width = 2 if l.kind == "merge" else 1
        cur[l.pos : l.pos + width] = outs
    return cur


def ladder_edges(term, c, s):
    """Named edges of the ladder L_s of crossing c inside the term's web
    (None when the edge has color 0)."""
    k, l, tag = c.k, c.l, c.tag
    cur = _keys_at(term.web, term.starts[c.index])
    A, B = cur[c.pos], cur[c.pos + 1]
    if 0 < s < l:
        C, Bp = (tag + "lo", "l"), (tag + "lo", "r")
    elif s == 0:
        C, Bp = B, None
    else:
        C, Bp = None, B
    L = (tag + "m1", "m") if C is not None else A
    if s < k:
        D, E = (tag + "hi", "l"), (tag + "hi", "r")
    else:
        D, E = L, None
    if E is not None and Bp is not None:
        F = (tag + "m2", "m")
    else:
        F = E if E is not None else Bp
    return dict(A=A, B=B, C=C, Bp=Bp, L=L, D=D, E=E, F=F)


def _alph(*items, minus=()):
    return alphabet(*[x for x in items if x is not None], minus=tuple(minus))


def crossing_map(cx, src, dst, c, s, s2, window):
    """Differential component changing crossing c from L_s to L_s2."""
    S = src.bimodule(window)
    T = dst.bimodule(window)
    es = ladder_edges(src, c, s)
    et = ladder_edges(dst, c, s2)
    if c.sign > 0:
        # L_i -> L_{i+1}: a root z of the thicker middle edge, C -> C'z, E -> E'z
        i = s
        z = ("root", 0)
        images = {}
        if es["C"] is not None:
            images[es["C"]] = _alph(et["C"], z)
        if es["Bp"] is not None:
            images[es["Bp"]] = _alph(et["Bp"], minus=(z,))
        if es["E"] is not None:
            images[es["E"]] = _alph(et["E"], z)
        if es["D"] is not None and es["D"] != es["L"]:
            images[es["D"]] = _alph(et["D"])
        images = {k: v for k, v in images.items() if _is_inner(k, c)}
        return WebMap(S, T, images, roots=(et["Bp"],), raw_degree=-2 * i, name=f"d+{c.index}")
    # L_{i+1} -> L_i: roots z1 of C and z2 of E, weighted by the Frobenius
    # element of the middle-left edge, then both roots traced out
    i = s2
    z1, z2 = ("root", 0), ("root", 1)
    images = {}
    if es["C"] is not None:
        images[es["C"]] = _alph(et["C"], minus=(z1,))
    if es["Bp"] is not None:
        images[es["Bp"]] = _alph(et["Bp"], z1)
    if es["E"] is not None:
        images[es["E"]] = _alph(et["E"], minus=(z2,))
    if es["D"] is not None and es["D"] != es["L"]:
        images[es["D"]] = _alph(et["D"])
    images = {k: v for k, v in images.items() if _is_inner(k, c)}
    a = c.k + c.l - i - 1
    mult = frobenius_multiplier(
        (a, 1), (a + 1,),
        top=(_alph(et["L"], minus=(z2,)), _alph(z2)),
        bottom=(_alph(et["L"], minus=(z1,)), _alph(z1)),
    )
    return WebMap(S, T, images, roots=(et["C"], et["E"]), multiplier=mult,
                  raw_degree=2 * (i + 1), name=f"d-{c.index}")


def _is_inner(key, c):
    return isinstance(key[0], str) and key[0].startswith(c.tag)


def crossing_complex(k, l, sign, window=(-40, 40)):
    """The complex of a single crossing on strands colored (k, l)."""
    return BimoduleComplex((k, l), [Crossing(0, 0, k, l, sign)], window=window)


def classical_crossings(beta, coloring):
    """Crossings of the classical braid word with the colors they carry."""
    cw = embed_classical(beta)
    comp = list(coloring.composition(beta.genus))
    crossings = []
    # colors are tracked from the bottom, i.e. from the last letter
    for idx in range(len(cw.letters) - 1, -1, -1):
        i, e = cw.letters[idx]
        crossings.append(Crossing(idx, i - 1, comp[i - 1], comp[i], e))
        comp[i - 1], comp[i] = comp[i], comp[i - 1]
    crossings.reverse()
    return crossings


def core_web(g, M, rest=()):
    """Merge the g core strands (color M) into one edge and split back."""
    comp = (M,) * g + tuple(rest)
    layers = []
    for j in range(1, g):
        layers.append(Layer("merge", 0, j * M, M, f"core.m{j}"))
    for j in range(g - 1, 0, -1):
        layers.append(Layer("split", 0, j * M, M, f"core.s{j}"))
    return Web(comp, tuple(layers))


def braid_complex(beta, coloring, window=(-40, 40), budget=None):
    comp = coloring.composition(beta.genus)
    crossings = classical_crossings(beta, coloring)
    cx = BimoduleComplex(comp, crossings, window=window)
    if budget is not None:
        n_terms = 1
        for c in crossings:
            n_terms *= c.rungs + 1
        if n_terms > budget:
            raise BudgetExceeded(f"{n_terms} chain terms exceed the budget of {budget}")
    return cx


def core_closure(C, g, M):
    """Stack the core merge-split web on top; identity for g <= 1."""
    if g <= 1:
        return C
    if C.top[:g] != (M,) * g:
        raise WebError("boundary does not start with the core strands")
    top = core_web(g, M, C.top[g:])
    if C.top_web is not None:
        raise WebError("complex already closed up")
    return BimoduleComplex(C.bottom, C.crossings, top_web=top, window=C.window, bottom_web=C.bottom_web)


def _closing_layers(colors, target):
    """Merge all strands into one edge, then split off `target` left to right."""
    layers = []
    acc = colors[0]
    for j, c in enumerate(colors[1:]):
        layers.append(Layer("merge", 0, acc, c, f"close.m{j}"))
        acc += c
    for j, c in enumerate(target[:-1]):
        layers.append(Layer("split", j, c, acc - c, f"close.s{j}"))
        acc -= c
    return layers


def pitchfork_pair(kind, k, l, m=1, sign=1, window=(-40, 40)):
    """Two closable complexes whose traces a pitchfork move identifies.

    kind "slide": a k-strand crossing a merged (l+m)-strand above the merge
    versus crossing l and m separately below it; expected q-shift 0.
    kind "twist": a merge (k, l) -> k+l on top of a crossing versus the
    merge alone; expected q-shift sign*k*l.  Both sides are closed by the
    same web, so traces can be compared.  Returns (lhs, rhs, shift) with
    dim lhs(a, t, q) = dim rhs(a, t, q - shift)."""
    if kind == "slide":
        # both sides live over R_(k,l,m); a cyclic rotation would change the
        # boundary ring and with it the q-grading of the Koszul closure
        close = Web((l + m, k), tuple(_closing_layers((l + m, k), (k, l, m))))
        below = Web((k, l, m), (Layer("merge", 1, l, m, "pf.m"),))
        lhs = BimoduleComplex((k, l, m), [Crossing(0, 0, k, l + m, sign)], top_web=close, window=window, bottom_web=below)
        rhs_top = Web((l, m, k), (Layer("merge", 0, l, m, "pf.m"),) + close.layers)
        rhs = BimoduleComplex((k, l, m), [Crossing(1, 1, k, m, sign), Crossing(0, 0, k, l, sign)], top_web=rhs_top, window=window)
        return lhs, rhs, 0
    if kind == "twist":
        lhs_top = Web((l, k), (Layer("merge", 0, l, k, "pf.m"), Layer("split", 0, k, l, "pf.s")))
        lhs = BimoduleComplex((k, l), [Crossing(0, 0, k, l, sign)], top_web=lhs_top, window=window)
        rhs_top = Web((k, l), (Layer("merge", 0, k, l, "pf.m"), Layer("split", 0, k, l, "pf.s")))
        rhs = BimoduleComplex((k, l), [], top_web=rhs_top, window=window)
        return lhs, rhs, sign * k * l
    raise ValueError(f"unknown pitchfork kind {kind!r}")
