"""Seeded property suites shared by the CLI and the test-suite."""

from __future__ import annotations

import random
import time

from .braid import SIGMA, TAU, BraidWord, Coloring, Letter, embed_classical, markov_conjugate, relations, stabilize
from .invariant import NormalizationShift, TriGradedSeries, homology, hhh_euler, traced_closure
from .oracle import euler_characteristic, handlebody_homfly_decat


def crossing_count(beta):
    return len(embed_classical(beta).letters)


def random_word(rng, g, n, length, allow_tau=True):
    pool = [(SIGMA, i) for i in range(1, n)]
    if allow_tau:
        pool += [(TAU, j) for j in range(1, g + 1)]
    if not pool:
        return BraidWord(g, n)
    letters = tuple(Letter(k, i, rng.choice((1, -1))) for k, i in (rng.choice(pool) for _ in range(length)))
    return BraidWord(g, n, letters)


def random_instance(rng, max_genus=2, max_strands=2, max_len=4, max_conj=2, genus=None, strands=None):
    while True:
        g = rng.randint(0, max_genus) if genus is None else genus
        n = rng.randint(1, max_strands) if strands is None else strands
        # B_{0,1} has no generators; skip it unless asked for explicitly
        if g + n > 1 or (genus, strands) == (g, n):
            break
    beta = random_word(rng, g, n, rng.randint(1, max_len))
    s = random_word(rng, g, n, rng.randint(0, max_conj) if n > 1 else 0, allow_tau=False)
    return beta, s, rng.choice((1, -1))


def sample_instances(seed, count, max_crossings=6, **kw):
    """Budgeted rejection sampling: redraw while the largest word of the
    instance (conjugate or stabilization) has too many classical crossings.
    Returns (accepted, rejected) lists of (beta, s, sign)."""
    rng = random.Random(seed)
    accepted, rejected = [], []
    while len(accepted) < count:
        beta, s, sign = random_instance(rng, **kw)
        big = max(crossing_count(markov_conjugate(beta, s)), crossing_count(stabilize(beta, sign)))
        (accepted if big <= max_crossings else rejected).append((beta, s, sign))
    return accepted, rejected


class Closure:
    """Traced closure of a braid with its normalization, sliced lazily."""

    def __init__(self, beta, coloring=None, budget=None):
        self.beta = beta
        self.coloring = coloring or Coloring(1, (1,) * beta.strands)
        self.shift = NormalizationShift.of(beta, self.coloring)
        self.traced = traced_closure(beta, self.coloring, budget=budget)

    @property
    def qlow(self):
        """Lowest normalized q carrying a chain group."""
        return self.traced.qmin() + self.shift.qShift

    def series(self, window):
        lo, hi = window
        raw = homology(self.traced, (lo - self.shift.qShift, hi - self.shift.qShift))
        return raw.shifted(self.shift)

    def euler(self, window):
        return hhh_euler(self.beta, self.coloring, window, traced=self.traced)


def first_nonzero(closure, limit=12):
    """Lowest normalized q where the homology of the closure is nonzero."""
    for q in range(closure.qlow, closure.qlow + limit + 1):
        if closure.series((q, q)).entries:
            return q
    return None


def compare_closures(betas, span=1, budget=None):
    """Series of several closures on a common window that starts at the
    first nonzero degree of the first one; returns (window, [series...])."""
    cls = [Closure(b, budget=budget) for b in betas]
    lo = first_nonzero(cls[0])
    if lo is None:
        lo = max(c.qlow for c in cls)
    window = (lo, lo + span)
    return window, [c.series(window) for c in cls]


def markov_check(beta, s, sign, span=1, budget=None):
    t0 = time.perf_counter()
    conj = markov_conjugate(beta, s)
    stab = stabilize(beta, sign)
    window, (a, b, c) = compare_closures([beta, conj, stab], span, budget)
    return {
        "beta": str(beta),
        "genus": beta.genus,
        "strands": beta.strands,
        "conjugator": str(s),
        "stabilization": sign,
        "window": list(window),
        "conjugation": a.entries == b.entries,
        "stabilization_ok": a.entries == c.entries,
        "nonzero": bool(a.entries),
        "seconds": round(time.perf_counter() - t0, 2),
    }


def euler_check(beta, span=2, budget=None):
    """chi of the homology, chi of the chain groups and the Hecke oracle."""
    cl = Closure(beta, budget=budget)
    window = (cl.qlow, cl.qlow + span)
    series = cl.series(window)
    from_homology = series.euler()
    from_chains = cl.euler(window)
    raw = euler_characteristic(cl.traced, (window[0] - cl.shift.qShift, window[1] - cl.shift.qShift))
    sh = cl.shift
    from_oracle_chain = raw.shifted(a2=sh.a2Shift, q=sh.qShift, sign=sh.euler_sign).coeffs
    report = {
        "beta": str(beta),
        "genus": beta.genus,
        "strands": beta.strands,
        "window": list(window),
        "homology_vs_chains": from_homology == from_chains,
        "chains_vs_traced": from_chains == from_oracle_chain,
        "nonzero": bool(from_chains),
    }
    if cl.coloring.core == 1 and set(cl.coloring.link) <= {1}:
        decat = handlebody_homfly_decat(beta, window=window).coeffs
        report["chains_vs_hecke"] = from_chains == decat
    return report


def relation_checks(g, n, span=1, budget=None):
    out = []
    for lhs, rhs in relations(g, n):
        window, (a, b) = compare_closures([lhs, rhs], span, budget)
        out.append({"lhs": str(lhs), "rhs": str(rhs), "window": list(window), "equal": a.entries == b.entries})
    return out


def report_passed(report):
    keys = ("conjugation", "stabilization_ok", "homology_vs_chains", "chains_vs_traced", "chains_vs_hecke", "equal")
    return all(report[k] for k in keys if k in report)


__all__ = [
    "Closure",
    "TriGradedSeries",
    "compare_closures",
    "crossing_count",
    "euler_check",
    "markov_check",
    "random_instance",
    "relation_checks",
    "report_passed",
    "sample_instances",
]
