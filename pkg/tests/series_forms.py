"""Closed-form (a, q) series used as expected values in the tests."""


def expand(numerators, denominators, window):
    """Expand prod(numerators) / prod(1 - q^d for d in denominators).

    Numerators are {(a, q): coeff} polynomials; the result is exact for every
    q up to the top of the window because the denominators only raise q."""
    lo, hi = window
    cur = {(0, 0): 1}
    for num in numerators:
        nxt = {}
        for (a, q), c in cur.items():
            for (da, dq), v in num.items():
                key = (a + da, q + dq)
                nxt[key] = nxt.get(key, 0) + c * v
        cur = nxt
    for d in denominators:
        nxt = {}
        for (a, q), c in cur.items():
            m = q
            while m <= hi:
                nxt[(a, m)] = nxt.get((a, m), 0) + c
                m += d
        cur = nxt
    return {k: v for k, v in cur.items() if v and lo <= k[1] <= hi}


def circle_form(comp, window):
    """prod over blocks and i of (1 + a q^-2i) / (1 - q^2i)."""
    nums = [{(0, 0): 1, (1, -2 * i): 1} for k in comp for i in range(1, k + 1)]
    dens = [2 * i for k in comp for i in range(1, k + 1)]
    return expand(nums, dens, window)


def skein_one_form(k, l, window):
    """prod_{i=1..l} (q^k + a q^(-k-2i)) / (1 - q^2i) times the k-circle."""
    nums = [{(0, k): 1, (1, -k - 2 * i): 1} for i in range(1, l + 1)]
    nums += [{(0, 0): 1, (1, -2 * i): 1} for i in range(1, k + 1)]
    dens = [2 * i for i in range(1, l + 1)] + [2 * i for i in range(1, k + 1)]
    return expand(nums, dens, window)


def monomial_times(series, a=0, q=0, window=None):
    out = {(x + a, y + q): v for (x, y), v in series.items()}
    if window is not None:
        lo, hi = window
        out = {k: v for k, v in out.items() if lo <= k[1] <= hi}
    return out
