"""Normalized triply-graded series of closures of colored handlebody braids."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .braid import Coloring, writhe_stats
from .complexes import CONVENTION, braid_complex, core_closure
from .hochschild import TracedComplex


@dataclass(frozen=True)
class NormalizationShift:
    a2Shift: int
    t2Shift: int
    qShift: int

    @classmethod
    def of(cls, beta, coloring):
        w, W = writhe_stats(beta, coloring)
        s1 = sum(coloring.link)
        s2 = sum(l * l + l for l in coloring.link)
        return cls(w - s1, -w - s1, -W + s2)

    @property
    def monomial(self):
        return (self.a2Shift, self.t2Shift, self.qShift)

    @property
    def euler_sign(self):
        """Sign picked up by the t-fold of a shifted series, relative to (-1)^t."""
        return -1 if ((self.t2Shift - self.t2Shift % 2) // 2) % 2 else 1


@dataclass
class TriGradedSeries:
    """Dimensions per (a2, t2, q) with doubled a and t exponents."""

    window: tuple
    entries: dict = field(default_factory=dict)
    convention: str = CONVENTION

    def __post_init__(self):
        self.window = tuple(self.window)
        self.entries = {tuple(k): int(v) for k, v in self.entries.items() if v}
        lo, hi = self.window
        if any(v < 0 for v in self.entries.values()):
            raise ValueError("dimensions must be nonnegative")
        if any(not lo <= k[2] <= hi for k in self.entries):
            raise ValueError("entry outside the window")

    def restrict(self, window):
        lo, hi = window
        return TriGradedSeries(window, {k: v for k, v in self.entries.items() if lo <= k[2] <= hi}, self.convention)

    def shifted(self, shift):
        da, dt, dq = shift.monomial if isinstance(shift, NormalizationShift) else shift
        lo, hi = self.window
        return TriGradedSeries(
            (lo + dq, hi + dq),
            {(a + da, t + dt, q + dq): v for (a, t, q), v in self.entries.items()},
            self.convention,
        )

    def agrees(self, other, window=None):
        """Equality on the common window (or the given one)."""
        if window is None:
            window = (max(self.window[0], other.window[0]), min(self.window[1], other.window[1]))
        return self.restrict(window).entries == other.restrict(window).entries

    def euler(self):
        """{(a2, q): sum of (-1)^(t2/2) dim}; t2 parity must be constant."""
        parities = {t % 2 for (_, t, _) in self.entries}
        if len(parities) > 1:
            raise ValueError("mixed t parities")
        base = parities.pop() if parities else 0
        out = {}
        for (a, t, q), v in self.entries.items():
            s = -1 if ((t - base) // 2) % 2 else 1
            out[(a, q)] = out.get((a, q), 0) + s * v
        return {k: v for k, v in out.items() if v}

    def poincare_terms(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))

    def to_dict(self):
        return {
            "window": list(self.window),
            "convention": self.convention,
            "entries": [{"a2": a, "t2": t, "q": q, "dim": v} for (a, t, q), v in self.poincare_terms()],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        return cls(
            tuple(d["window"]),
            {(e["a2"], e["t2"], e["q"]): e["dim"] for e in d["entries"]},
            d.get("convention", CONVENTION),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def pretty(self):
        """Human readable sum of monomials a^{a2/2} t^{t2/2} q^{q}."""
        if not self.entries:
            return "0"
        parts = []
        for (a, t, q), v in self.poincare_terms():
            mono = "".join(f"{x}^{{{_half(e)}}}" for x, e in (("a", a), ("t", t)) if e) + (f"q^{{{q}}}" if q else "")
            parts.append((str(v) if v != 1 or not mono else "") + (mono or ""))
        return " + ".join(parts)


def _half(e):
    return str(e // 2) if e % 2 == 0 else f"{e}/2"


def homology(T, window):
    """Unnormalized series (a2 = 2a, t2 = 2t) of a traced complex on a q-window."""
    lo, hi = window
    out = {}
    for a in range(T.max_a + 1):
        for q in range(max(lo, T.qmin()), hi + 1):
            for t, d in T.homology_dims(a, q).items():
                out[(2 * a, 2 * t, q)] = d
    return TriGradedSeries(window, out)


def traced_closure(beta, coloring, window=(-40, 40), budget=None):
    cx = braid_complex(beta, coloring, window=_bimodule_window(window), budget=budget)
    cx = core_closure(cx, beta.genus, coloring.core)
    return TracedComplex(cx)


def _bimodule_window(window):
    return (min(window[0], -40), max(window[1], 40))


def hhh(beta, coloring=None, window=(-40, 40), budget=None, traced=None):
    """Normalized series of the closure on the (normalized) q-window."""
    coloring = coloring or Coloring(1, (1,) * beta.strands)
    shift = NormalizationShift.of(beta, coloring)
    lo, hi = window
    T = traced if traced is not None else traced_closure(beta, coloring, window, budget)
    raw = homology(T, (lo - shift.qShift, hi - shift.qShift))
    return raw.shifted(shift)


def hhh_euler(beta, coloring=None, window=(-40, 40), traced=None):
    """Euler characteristic from Koszul cohomology of the chain groups only,
    normalized with the same monomial as hhh (t folded with its sign)."""
    coloring = coloring or Coloring(1, (1,) * beta.strands)
    shift = NormalizationShift.of(beta, coloring)
    lo, hi = window
    T = traced if traced is not None else traced_closure(beta, coloring, window)
    out = {}
    for a in range(T.max_a + 1):
        for q in range(max(lo - shift.qShift, T.qmin()), hi - shift.qShift + 1):
            e = T.euler(a, q)
            if e:
                out[(2 * a + shift.a2Shift, q + shift.qShift)] = shift.euler_sign * e
    return out


class NotDivisible(ArithmeticError):
    def __init__(self, message, degree):
        super().__init__(message)
        self.degree = degree


def unknot_series(window=(-40, 40)):
    from .braid import BraidWord

    return hhh(BraidWord(0, 1), Coloring(1, (1,)), window)


def reduced_series(S, unknot=None):
    """Formal quotient S / unknot in ascending q, exact on the window.

    Raises NotDivisible at the first q-degree where the quotient would have
    a negative coefficient."""
    lo, hi = S.window
    U = unknot if unknot is not None else unknot_series((lo, 2 * hi - lo))
    umin = min(q for (_, _, q) in U.entries)
    lead = {(a, t): v for (a, t, q), v in U.entries.items() if q == umin}
    if len(lead) != 1 or next(iter(lead.values())) != 1:
        raise NotDivisible("leading term of the divisor is not a unit", umin)
    (la, lt), = lead
    if U.window[1] < hi - lo + umin:
        raise ValueError("unknot series does not reach far enough")
    rem = {k: v for k, v in S.entries.items()}
    quot = {}
    # quotient degrees run from lo - umin upward; remainder degree = quotient degree + umin
    for qq in range(lo, hi + 1):
        row = {(a, t): v for (a, t, q), v in rem.items() if q == qq}
        for (a, t), v in sorted(row.items()):
            if not v:
                continue
            qa, qt, qd = a - la, t - lt, qq - umin
            if v < 0:
                raise NotDivisible(f"negative coefficient at q={qd}", qd)
            quot[(qa, qt, qd)] = v
            for (ua, ut, uq), uv in U.entries.items():
                key = (qa + ua, qt + ut, qd + uq)
                if key[2] <= hi:
                    rem[key] = rem.get(key, 0) - v * uv
        for k in [k for k in rem if k[2] == qq]:
            if rem[k]:
                raise NotDivisible(f"nonzero remainder at q={qq}", qq)
            del rem[k]
    return TriGradedSeries((lo - umin, hi - umin), quot, S.convention)
