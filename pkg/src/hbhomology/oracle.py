"""Decategorified cross-checks.

* a type A Hecke algebra whose generator is the class of the crossing
  complex, T = b - q^-1, so that (T - q)(T + q^-1) = 0;
* the Jones-Ocneanu (Markov) trace fixed by the closed strand value
  c = (1 + a q^-2)/(1 - q^2) and the kink values -q^-1 (positive) and
  a q^-3 (negative), exactly the Euler characteristics of the categorified
  pieces;
* HOMFLYPT of braid closures by skein recursion on Gauss codes with the
  descending-diagram algorithm, independent of the Hecke algebra;
* the handlebody invariant trace(c_g h(beta)) with c_g the class of the
  core merge-split web.

Symbolic values are Laurent polynomials in a, q (and c, the closed circle,
kept formal); series expansions live in LaurentSeries2 with doubled a.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .braid import Coloring, embed_classical
from .invariant import NormalizationShift


# ---------------------------------------------------------------------------
# Laurent polynomials with integer coefficients


class LPoly:
    """Sparse Laurent polynomial; exponent tuples follow `names`."""

    __slots__ = ("names", "terms")

    def __init__(self, names, terms=None):
        self.names = tuple(names)
        self.terms = {tuple(e): int(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, names, c=1):
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def mono(cls, names, coef=1, **exps):
        return cls(names, {tuple(exps.get(n, 0) for n in names): coef})

    def _same(self, other):
        if isinstance(other, int):
            return LPoly.const(self.names, other)
        if other.names != self.names:
            raise ValueError("variable mismatch")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return LPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        other = self._same(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LPoly(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = LPoly.const(self.names)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LPoly.const(self.names, other)
        return isinstance(other, LPoly) and self.names == other.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def shift(self, **exps):
        d = tuple(exps.get(n, 0) for n in self.names)
        return LPoly(self.names, {tuple(x + y for x, y in zip(e, d)): c for e, c in self.terms.items()})

    def substitute(self, names, images):
        """Substitute each variable by an LPoly (or monomial) in `names`;
        negative powers need monomial images."""
        out = LPoly(names)
        for e, c in self.terms.items():
            term = LPoly.const(names, c)
            for k, img in zip(e, images):
                if k >= 0:
                    term = term * img ** k
                else:
                    term = term * _inverse_monomial(img) ** (-k)
            out = out + term
        return out

    def divide_by(self, var):
        """Exact division by one variable (every term must contain it)."""
        i = self.names.index(var)
        if any(e[i] < 1 for e in self.terms):
            raise ArithmeticError(f"not divisible by {var}")
        return self.shift(**{var: -1})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"{n}^{k}" if k != 1 else n for n, k in zip(self.names, e) if k)
            parts.append(f"{c}" + (f"*{mono}" if mono else "") if c != 1 or not mono else mono)
        return " + ".join(parts)


def _inverse_monomial(p):
    if len(p.terms) != 1:
        raise ArithmeticError("only monomials can be inverted")
    (e, c), = p.terms.items()
    if c not in (1, -1):
        raise ArithmeticError("monomial coefficient is not a unit")
    return LPoly(p.names, {tuple(-x for x in e): c})


AQC = ("a", "q", "c")


# ---------------------------------------------------------------------------
# truncated series in (a, q)


class LaurentSeries2:
    """Integer coefficients on (a2, q), a2 = doubled a-exponent, truncated to
    q in the window."""

    def __init__(self, window, coeffs=None):
        self.window = tuple(window)
        lo, hi = self.window
        self.coeffs = {tuple(k): int(v) for k, v in (coeffs or {}).items() if v and lo <= k[1] <= hi}

    def __eq__(self, other):
        return isinstance(other, LaurentSeries2) and self.window == other.window and self.coeffs == other.coeffs

    def __add__(self, other):
        w = _meet(self.window, other.window)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentSeries2(w, out)

    def __neg__(self):
        return LaurentSeries2(self.window, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def qmin(self):
        return min((q for _, q in self.coeffs), default=None)

    def __mul__(self, other):
        """Product; valid on the window shifted by the lowest degrees present."""
        lo1, lo2 = self.qmin(), other.qmin()
        if lo1 is None or lo2 is None:
            return LaurentSeries2(self.window)
        hi = min(self.window[1] + lo2, other.window[1] + lo1)
        lo = lo1 + lo2
        out = {}
        for (a1, q1), v1 in self.coeffs.items():
            for (a2, q2), v2 in other.coeffs.items():
                if q1 + q2 <= hi:
                    out[(a1 + a2, q1 + q2)] = out.get((a1 + a2, q1 + q2), 0) + v1 * v2
        return LaurentSeries2((lo, hi), out)

    def shifted(self, a2=0, q=0, sign=1):
        return LaurentSeries2(
            (self.window[0] + q, self.window[1] + q),
            {(x + a2, y + q): sign * v for (x, y), v in self.coeffs.items()},
        )

    def divide(self, other):
        """Formal quotient in ascending q.

        The divisor's lowest q-part must be a single monomial with
        coefficient +-1; the quotient window is cut where either input runs
        out."""
        umin = other.qmin()
        lead = {a: v for (a, q), v in other.coeffs.items() if q == umin}
        if len(lead) != 1 or abs(next(iter(lead.values()))) != 1:
            raise ArithmeticError("divisor's leading part is not a unit monomial")
        (la, lv), = lead.items()
        lo, hi = self.window
        smin = self.qmin()
        if smin is None:
            return LaurentSeries2((lo - umin, hi - umin))
        qlo = lo - umin
        qhi = min(hi - umin, other.window[1] + (smin - umin) - umin)
        rem = dict(self.coeffs)
        quot = {}
        for d in range(smin - umin, qhi + 1):
            for a in sorted(a for (a, q) in rem if q == d + umin):
                v = rem.pop((a, d + umin))
                if not v:
                    continue
                c = v * lv
                quot[(a - la, d)] = c
                for (oa, oq), ov in other.coeffs.items():
                    if oq == umin:
                        continue
                    key = (a - la + oa, d + oq)
                    if key[1] <= hi:
                        rem[key] = rem.get(key, 0) - c * ov
        return LaurentSeries2((qlo, qhi), quot)

    def unit_to(self, other):
        """(sign, a2, q) with self = sign * a^(a2/2) q^q * other on self's
        window, or None.  `other` must be exact (a polynomial) or cover
        the shifted window."""
        if not self.coeffs or not other.coeffs:
            return (1, 0, 0) if not self.coeffs and not other.coeffs else None
        sq, oq = self.qmin(), other.qmin()
        sa = min(a for a, q in self.coeffs if q == sq)
        oa = min(a for a, q in other.coeffs if q == oq)
        sign = self.coeffs[(sa, sq)] // other.coeffs[(oa, oq)]
        if sign not in (1, -1) or self.coeffs[(sa, sq)] != sign * other.coeffs[(oa, oq)]:
            return None
        cand = other.shifted(a2=sa - oa, q=sq - oq, sign=sign)
        lo, hi = self.window
        ok = all(cand.coeffs.get(k, 0) == v for k, v in self.coeffs.items()) and all(
            self.coeffs.get(k, 0) == v for k, v in cand.coeffs.items() if lo <= k[1] <= hi
        )
        return (sign, sa - oa, sq - oq) if ok else None

    def restrict(self, window):
        return LaurentSeries2(window, {k: v for k, v in self.coeffs.items() if window[0] <= k[1] <= window[1]})

    def agrees(self, other, window=None):
        w = window or _meet(self.window, other.window)
        return self.restrict(w).coeffs == other.restrict(w).coeffs

    def __repr__(self):
        body = " + ".join(f"{v}*a^({a}/2)q^{q}" for (a, q), v in sorted(self.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0])))
        return f"LaurentSeries2({self.window}, {body or 0})"


def _meet(w1, w2):
    return (max(w1[0], w2[0]), min(w1[1], w2[1]))


def circle_series(window):
    """(1 + a q^-2)/(1 - q^2), a doubled."""
    lo, hi = window
    out = {}
    for m in range(0, max(0, hi) // 2 + 2):
        out[(0, 2 * m)] = 1
        out[(2, 2 * m - 2)] = 1
    return LaurentSeries2(window, out)


def expand(value, window):
    """Expand an LPoly in (a, q, c) as a LaurentSeries2 on the window."""
    lo, hi = window
    out = LaurentSeries2(window)
    cmax = max((e[2] for e in value.terms), default=0)
    # c^k has lowest q-degree -2k; expand far enough to cover the window
    powers = [LaurentSeries2((lo - 4 * cmax - 4, hi + 4 * cmax + 4), {(0, 0): 1})]
    base = circle_series((lo - 4 * cmax - 4, hi + 4 * cmax + 4))
    for _ in range(cmax):
        powers.append(powers[-1] * base)
    acc = {}
    for (i, j, k), v in value.terms.items():
        for (a2, q), w in powers[k].coeffs.items():
            key = (a2 + 2 * i, q + j)
            if lo <= key[1] <= hi:
                acc[key] = acc.get(key, 0) + v * w
    for k, p in enumerate(powers):
        if any(e[2] == k for e in value.terms):
            top = min(e[1] for e in value.terms if e[2] == k) + p.window[1]
            if top < hi:
                raise ArithmeticError("expansion window too small")
    out.coeffs = {k: v for k, v in acc.items() if v}
    return out


# ---------------------------------------------------------------------------
# Hecke algebra


def _inversions(w):
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def _rmul_s(w, i):
    """w * s_i in one-line notation (swap positions i-1, i)."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


class HeckeElement:
    """Sum of T_w (w a permutation in one-line notation) with LPoly coefficients in q."""

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, n):
        return cls(n, {tuple(range(n)): LPoly.const(("q",))})

    @classmethod
    def generator(cls, i, n, exp=1):
        if not 1 <= i <= n - 1:
            raise ValueError("generator out of range")
        x = cls.one(n).rmul_generator(i)
        if exp == 1:
            return x
        # T^-1 = T - (q - q^-1)
        return x + cls.one(n) * (LPoly(("q",), {(1,): -1, (-1,): 1}))

    def __add__(self, other):
        if other.n != self.n:
            raise ValueError("strand mismatch")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.n, out)

    def __mul__(self, other):
        if isinstance(other, LPoly):
            return HeckeElement(self.n, {w: c * other for w, c in self.terms.items()})
        return hecke_multiply(self, other)

    def rmul_generator(self, i):
        z = LPoly(("q",), {(1,): 1, (-1,): -1})
        out = {}
        for w, c in self.terms.items():
            ws = _rmul_s(w, i)
            if _inversions(ws) > _inversions(w):
                out[ws] = out[ws] + c if ws in out else c
            else:
                # T_w T_s = T_{ws} T_s^2 = (q - q^-1) T_w + T_{ws}
                out[w] = out[w] + c * z if w in out else c * z
                out[ws] = out[ws] + c if ws in out else c
        return HeckeElement(self.n, out)

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.n == other.n and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"({c})T{w}" for w, c in sorted(self.terms.items())) or "0"


def reduced_word_of(w):
    """Word i1..ik with T_w = T_{i1}...T_{ik} (bubble sort from the right)."""
    w = list(w)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                changed = True
    return list(reversed(word))


def hecke_multiply(x, y):
    if x.n != y.n:
        raise ValueError("strand mismatch")
    out = HeckeElement(x.n)
    for w, c in y.terms.items():
        part = x
        for i in reduced_word_of(w):
            part = part.rmul_generator(i)
        out = out + part * c
    return out


def _lift(c):
    """Coefficient LPoly in q to (a, q, c)."""
    return LPoly(AQC, {(0, e[0], 0): v for e, v in c.terms.items()})


@lru_cache(maxsize=None)
def _trace_basis(w):
    """Unnormalized trace of T_w in (a, q, c) variables."""
    n = len(w)
    if n == 0:
        return LPoly.const(AQC)
    if w[-1] == n - 1:
        return _trace_basis(w[:-1]) * LPoly.mono(AQC, c=1)
    # w = u * s_{n-1} s_{n-2} ... s_j with u fixing the last point, lengths adding
    for j in range(n - 1, 0, -1):
        d = tuple(range(n))
        for i in range(n - 1, j - 1, -1):
            d = _rmul_s(d, i)
        # u = w * d^-1
        dinv = [0] * n
        for k, v in enumerate(d):
            dinv[v] = k
        u = tuple(w[dinv[k]] for k in range(n))
        if u[-1] == n - 1 and _inversions(u) + (n - j) == _inversions(w):
            x = HeckeElement(n - 1, {u[:-1]: LPoly.const(("q",))})
            for i in range(n - 2, j - 1, -1):
                x = x.rmul_generator(i)
            z = LPoly.mono(AQC, -1, q=-1)
            return z * _trace_element(x)
    raise AssertionError("no coset decomposition found")


def _trace_element(x):
    out = LPoly(AQC)
    for w, c in x.terms.items():
        out = out + _lift(c) * _trace_basis(w)
    return out


def jones_ocneanu_trace(x, n=None, normalized=True, window=None):
    """Markov trace of a Hecke element.

    Unnormalized, the identity on n strands traces to c^n; the normalized
    trace divides by one c so that the 1-strand identity traces to 1.
    Returns an LPoly in (a, q, c), or its expansion on `window`."""
    if n is not None and n != x.n:
        raise ValueError("strand mismatch")
    val = _trace_element(x)
    if normalized:
        val = val.divide_by("c")
    return val if window is None else expand(val, window)


def braid_hecke(cw):
    """Hecke image of a classical braid word (letters read left to right)."""
    x = HeckeElement.one(cw.strands)
    for i, e in cw.letters:
        if e == 1:
            x = x.rmul_generator(i)
        else:
            x = x * HeckeElement.generator(i, cw.strands, -1)
    return x


def core_element(g, n=0):
    """Class of the core merge-split web on the first g of g+n strands:
    sum over w in S_g of q^(l(w) - l(w0)) T_w."""
    N = g + n
    top = g * (g - 1) // 2
    terms = {}
    for p in itertools.permutations(range(g)):
        w = tuple(p) + tuple(range(g, N))
        terms[w] = LPoly(("q",), {(_inversions(p) - top,): 1})
    return HeckeElement(N, terms)


def standard_rank(x):
    """Graded rank functional T_w -> q^l(w): for the class of a Soergel
    bimodule it is its graded dimension divided by that of the polynomial ring."""
    out = LPoly(("q",))
    for w, c in x.terms.items():
        out = out + c.shift(q=_inversions(w))
    return out


def handlebody_trace(beta):
    """Unnormalized trace(c_g h(beta)) in (a, q, c) for M = 1, uncolored."""
    cw = embed_classical(beta)
    x = braid_hecke(cw)
    if beta.genus >= 2:
        x = core_element(beta.genus, beta.strands) * x
    return jones_ocneanu_trace(x, normalized=False)


def handlebody_homfly_decat(beta, M=1, window=(-20, 20), normalized=True):
    """Decategorified handlebody invariant as a LaurentSeries2.

    With normalized=True the monomial and sign of the categorified
    normalization are applied, so the result equals the Euler
    characteristic of the normalized series."""
    if M != 1:
        raise ValueError("the decategorified oracle covers M = 1 only")
    val = handlebody_trace(beta)
    if not normalized:
        return expand(val, window)
    shift = NormalizationShift.of(beta, Coloring(1, (1,) * beta.strands))
    lo, hi = window
    series = expand(val, (lo - shift.qShift, hi - shift.qShift))
    return series.shifted(a2=shift.a2Shift, q=shift.qShift, sign=shift.euler_sign)


def euler_characteristic(T, window):
    """sum_t (-1)^t dim HH^a(C_t) per (a, q) of a traced complex (no homology)."""
    lo, hi = window
    out = {}
    for a in range(T.max_a + 1):
        for q in range(max(lo, T.qmin()), hi + 1):
            e = T.euler(a, q)
            if e:
                out[(2 * a, q)] = e
    return LaurentSeries2(window, out)


def separation_target(extra_factor=False):
    """(A - A^-1)^2 - (q - q^-1)^2 under A^2 = -a q^-2, i.e.
    -(q^2 + q^-2 + a q^-2 + a^-1 q^2), as an exact polynomial (a doubled).
    With extra_factor, multiplied by (q - q^-1)."""
    base = {(0, 2): -1, (0, -2): -1, (2, -2): -1, (-2, 2): -1}
    if extra_factor:
        out = {}
        for (a, q), v in base.items():
            for dq, s in ((1, 1), (-1, -1)):
                out[(a, q + dq)] = out.get((a, q + dq), 0) + s * v
        base = out
    return LaurentSeries2((-10**6, 10**6), base)


def series_from_dict(d, window):
    return LaurentSeries2(window, d)


# ---------------------------------------------------------------------------
# HOMFLYPT by skein recursion on Gauss codes

VZD = ("v", "z", "d")


def gauss_code(cw):
    """Components of the closure of a classical braid as cyclic lists of
    (crossing id, is_over); crossing signs as a dict.

    Strands run upward, from the bottom of the word (its last letter)."""
    n = cw.strands
    letters = list(reversed(cw.letters))
    signs = {k: e for k, (_, e) in enumerate(letters)}
    # next position map for each starting bottom position
    visits = {p: [] for p in range(n)}
    where = {}
    for start in range(n):
        pos = start
        path = []
        for k, (i, e) in enumerate(letters):
            if pos == i - 1:
                path.append((k, e == 1))
                pos = i
            elif pos == i:
                path.append((k, e != 1))
                pos = i - 1
        visits[start] = path
        where[start] = pos
    comps, seen = [], set()
    for start in range(n):
        if start in seen:
            continue
        code, p = [], start
        while p not in seen:
            seen.add(p)
            code.extend(visits[p])
            p = where[p]
        comps.append(code)
    return comps, signs


def homfly_skein(cw):
    """HOMFLYPT of the closure as an LPoly in (v, z, d) where d is the formal
    value (v^-1 - v)/z of an extra unlinked circle; skein
    v^-1 P(L+) - v P(L-) = z P(L0)."""
    comps, signs = gauss_code(cw)
    return _skein(tuple(tuple(c) for c in comps), tuple(sorted(signs.items())))


@lru_cache(maxsize=None)
def _skein(comps, signs):
    signs = dict(signs)
    comps = [list(c) for c in comps if True]
    seen = set()
    bad = None
    for ci, code in enumerate(comps):
        for idx, (k, over) in enumerate(code):
            if k not in seen:
                seen.add(k)
                if not over:
                    bad = (ci, idx, k)
                    break
        if bad:
            break
    if bad is None:
        return LPoly.mono(VZD, d=len(comps) - 1)
    _, _, k = bad
    sign = signs[k]
    switched = [[(j, (not o) if j == k else o) for j, o in code] for code in comps]
    s2 = dict(signs)
    s2[k] = -sign
    smoothed = _smooth(comps, k)
    s0 = {j: s for j, s in signs.items() if j != k}
    P_sw = _skein(tuple(tuple(c) for c in switched), tuple(sorted(s2.items())))
    P_0 = _skein(tuple(tuple(c) for c in smoothed), tuple(sorted(s0.items())))
    if sign == 1:
        # P(L+) = v^2 P(L-) + v z P(L0)
        return LPoly.mono(VZD, v=2) * P_sw + LPoly.mono(VZD, v=1, z=1) * P_0
    # P(L-) = v^-2 P(L+) - v^-1 z P(L0)
    return LPoly.mono(VZD, v=-2) * P_sw - LPoly.mono(VZD, v=-1, z=1) * P_0


def _smooth(comps, k):
    """Oriented smoothing of crossing k in a Gauss code.  Base points stay
    at the starts of the surviving pieces."""
    locs = [(ci, idx) for ci, code in enumerate(comps) for idx, (j, _) in enumerate(code) if j == k]
    (c1, i1), (c2, i2) = locs
    rest = [code for ci, code in enumerate(comps) if ci not in (c1, c2)]
    if c1 == c2:
        code = comps[c1]
        a = code[:i1] + code[i2 + 1 :]
        b = code[i1 + 1 : i2]
        return _ordered(comps, c1, [a, b], rest)
    x, y = comps[c1], comps[c2]
    merged = x[:i1] + y[i2 + 1 :] + y[:i2] + x[i1 + 1 :]
    return _ordered(comps, c1, [merged], rest)


def _ordered(comps, pos, new, rest):
    out = list(rest)
    for j, piece in enumerate(new):
        out.insert(min(pos + j, len(out)), piece)
    return out


def hecke_vs_skein(cw):
    """Both sides of trace(h) * alpha^w * kappa^n = P * kappa * c in (s, q),
    where a = -s^2, v = -s q^-1, z = q - q^-1, kappa = q^2 s^-1 and the formal
    circle d = kappa c."""
    names = ("s", "q", "c")
    tr = jones_ocneanu_trace(braid_hecke(cw), normalized=False)
    lhs = tr.substitute(names, [LPoly.mono(names, -1, s=2), LPoly.mono(names, q=1), LPoly.mono(names, c=1)])
    w = sum(e for _, e in cw.letters)
    n = cw.strands
    alpha = LPoly.mono(names, -1, s=1, q=-1)
    kappa = LPoly.mono(names, s=-1, q=2)
    lhs = lhs * _signed_power(alpha, w) * kappa ** n
    P = homfly_skein(cw)
    rhs = P.substitute(names, [alpha, LPoly(names, {(0, 1, 0): 1, (0, -1, 0): -1}), kappa * LPoly.mono(names, c=1)])
    rhs = rhs * kappa * LPoly.mono(names, c=1)
    # the formal circle is the rational function (1 - s^2 q^-2)/(1 - q^2);
    # clearing its denominator gives canonical Laurent polynomials
    K = max(max((e[2] for e in p.terms), default=0) for p in (lhs, rhs))
    return _clear_circle(lhs, K), _clear_circle(rhs, K)


def _clear_circle(p, K):
    names = ("s", "q", "c")
    num = LPoly(names, {(0, 0, 0): 1, (2, -2, 0): -1})
    den = LPoly(names, {(0, 0, 0): 1, (0, 2, 0): -1})
    out = LPoly(names)
    for (i, j, k), v in p.terms.items():
        out = out + LPoly.mono(names, v, s=i, q=j) * num ** k * den ** (K - k)
    return out


def _signed_power(p, k):
    return p ** k if k >= 0 else _inverse_monomial(p) ** (-k)
