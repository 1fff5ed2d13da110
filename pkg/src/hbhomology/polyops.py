"""Bare dict polynomials used in hot loops: {exponent tuple: mpq}."""

from __future__ import annotations

from gmpy2 import mpq

ZERO = mpq(0)


def add_into(acc, p, c=1):
    for e, v in p.items():
        w = acc.get(e, ZERO) + v * c
        if w:
            acc[e] = w
        else:
            acc.pop(e, None)
    return acc


def mul(p, r):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            w = out.get(e, ZERO) + c1 * c2
            if w:
                out[e] = w
            else:
                out.pop(e, None)
    return out


def scale(p, c):
    c = mpq(c)
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def sub(p, r):
    return add_into(dict(p), r, -1)


def const(c, n):
    c = mpq(c)
    return {(0,) * n: c} if c else {}


def monomial(e, c=1):
    return {tuple(e): mpq(c)}


def pad(p, n):
    """Append zero exponents so that p lives in n variables."""
    out = {}
    for e, v in p.items():
        out[e + (0,) * (n - len(e))] = v
    return out


def power(p, k, n):
    out = const(1, n)
    for _ in range(k):
        out = mul(out, p)
    return out


def elementary_of_union(alphs, color, n):
    """e_1..e_color of the union of alphabets given as lists of e-polys."""
    series = [const(1, n)]
    for a in alphs:
        new = []
        for t in range(color + 1):
            acc = {}
            for i in range(0, min(t, len(a)) + 1):
                if t - i < len(series):
                    ai = const(1, n) if i == 0 else a[i - 1]
                    add_into(acc, mul(ai, series[t - i]))
            new.append(acc)
        series = new
    series = series + [{}] * (color + 1 - len(series))
    return series[1 : color + 1]


def inverse_series(a, length, n):
    """Coefficients 1..length of 1/E_a(t) where E_a(t) = 1 + sum a_j t^j."""
    inv = [const(1, n)]
    for t in range(1, length + 1):
        acc = {}
        for i in range(1, min(t, len(a)) + 1):
            add_into(acc, mul(a[i - 1], inv[t - i]), -1)
        inv.append(acc)
    return inv[1:]


def qdeg(e, degs):
    return sum(k * d for k, d in zip(e, degs))
