"""Handlebody braid words, their classical embedding, Markov moves and writhe.

A word in B_{g,n} uses braid generators s1..s{n-1} and twist generators
t1..tg.  Words read left to right from the top of the diagram to the bottom.
Embedding into B_{g+n} places the g core strands on the left.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

SIGMA = "S"
TAU = "T"

_TOKEN = re.compile(r"^([st])(\d+)(\^(-?1))?$")


class BraidParseError(ValueError):
    """Bad token or out-of-range index; `column` points into the input."""

    def __init__(self, message, text="", column=0):
        super().__init__(message)
        self.text = text
        self.column = column

    def caret(self):
        return f"{self.text}\n{' ' * self.column}^ {self}"


@dataclass(frozen=True)
class Letter:
    kind: str
    index: int
    exp: int = 1

    def inverse(self):
        return Letter(self.kind, self.index, -self.exp)

    def __str__(self):
        tok = ("s" if self.kind == SIGMA else "t") + str(self.index)
        return tok if self.exp == 1 else tok + "^-1"


@dataclass(frozen=True)
class BraidWord:
    genus: int
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.genus < 0 or self.strands < 0:
            raise ValueError("genus and strands must be nonnegative")
        for x in self.letters:
            if x.exp not in (1, -1):
                raise ValueError(f"bad exponent in {x}")
            if x.kind == SIGMA and not 1 <= x.index <= self.strands - 1:
                raise ValueError(f"{x} out of range for {self.strands} strands")
            if x.kind == TAU and not 1 <= x.index <= self.genus:
                raise ValueError(f"{x} out of range for genus {self.genus}")
            if x.kind not in (SIGMA, TAU):
                raise ValueError(f"unknown letter kind {x.kind}")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        if (self.genus, self.strands) != (other.genus, other.strands):
            raise ValueError("words live in different braid groups")
        return BraidWord(self.genus, self.strands, self.letters + other.letters)

    def inverse(self):
        return BraidWord(self.genus, self.strands, tuple(x.inverse() for x in reversed(self.letters)))

    def free_reduce(self):
        out = []
        for x in self.letters:
            if out and out[-1] == x.inverse():
                out.pop()
            else:
                out.append(x)
        return BraidWord(self.genus, self.strands, tuple(out))

    def __str__(self):
        return " ".join(str(x) for x in self.letters)

    def to_dict(self):
        return {
            "genus": self.genus,
            "strands": self.strands,
            "letters": [{"kind": "Sigma" if x.kind == SIGMA else "Tau", "index": x.index, "exp": x.exp} for x in self.letters],
        }

    @classmethod
    def from_dict(cls, d):
        letters = tuple(
            Letter(SIGMA if x["kind"] == "Sigma" else TAU, int(x["index"]), int(x["exp"])) for x in d["letters"]
        )
        return cls(int(d["genus"]), int(d["strands"]), letters)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def parse_braid(text, g, n):
    """Parse whitespace separated tokens `s<i>`, `t<j>`, optionally `^-1`."""
    letters = []
    for m in re.finditer(r"\S+", text):
        tok, col = m.group(0), m.start()
        mt = _TOKEN.match(tok)
        if not mt:
            raise BraidParseError(f"bad token {tok!r}", text, col)
        kind = SIGMA if mt.group(1) == "s" else TAU
        index = int(mt.group(2))
        exp = int(mt.group(4)) if mt.group(4) else 1
        bound = n - 1 if kind == SIGMA else g
        if not 1 <= index <= bound:
            raise BraidParseError(f"index {index} out of range in {tok!r} (max {bound})", text, col)
        letters.append(Letter(kind, index, exp))
    return BraidWord(g, n, tuple(letters))


@dataclass(frozen=True)
class Coloring:
    core: int = 1
    link: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "link", tuple(self.link))
        if self.core < 1 or any(k < 1 for k in self.link):
            raise ValueError("colors must be positive")

    def composition(self, genus):
        return (self.core,) * genus + self.link


@dataclass(frozen=True)
class ClassicalBraidWord:
    strands: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for i, e in self.letters:
            if not 1 <= i <= self.strands - 1 or e not in (1, -1):
                raise ValueError(f"bad classical letter {(i, e)}")

    def permutation(self):
        """perm[p] = bottom position of the strand ending at top position p."""
        pos = list(range(self.strands))
        for i, _ in self.letters:
            pos[i - 1], pos[i] = pos[i], pos[i - 1]
        return tuple(pos)

    def __str__(self):
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)


def tau_image(j, g, exp=1):
    up = [(i, 1) for i in range(g, j, -1)]
    down = [(i, -1) for i in range(j + 1, g + 1)]
    return up + [(j, exp), (j, exp)] + down


def embed_classical(beta):
    g = beta.genus
    out = []
    for x in beta.letters:
        if x.kind == SIGMA:
            out.append((g + x.index, x.exp))
        else:
            out.extend(tau_image(x.index, g, x.exp))
    return ClassicalBraidWord(g + beta.strands, tuple(out))


def markov_conjugate(beta, s):
    """s beta s^-1, where s may only use braid generators."""
    if any(x.kind == TAU for x in s.letters):
        raise ValueError("conjugation is only allowed by braid generators s_i")
    return s * beta * s.inverse()


def stabilize(beta, sign):
    if beta.strands == 0:
        raise ValueError("no strand to stabilize on")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = beta.strands
    return BraidWord(beta.genus, n + 1, beta.letters + (Letter(SIGMA, n, sign),))


def stabilize_coloring(c):
    return Coloring(c.core, c.link + (c.link[-1],))


def crossing_colors(cw, colors):
    """Yield (position, exp, left color, right color) from the bottom up."""
    cur = list(colors)
    for i, e in reversed(cw.letters):
        yield i, e, cur[i - 1], cur[i]
        cur[i - 1], cur[i] = cur[i], cur[i - 1]


def balanced(beta, c):
    if len(c.link) != beta.strands:
        return False
    cols = c.composition(beta.genus)
    cw = embed_classical(beta)
    perm = cw.permutation()
    return all(cols[perm[p]] == cols[p] for p in range(len(cols)))


def writhe_stats(beta, c):
    """(w, W): sums of k and k^2 times the signed count of crossings whose
    two strands both have color k."""
    if not balanced(beta, c):
        raise ValueError("coloring is not balanced for this braid")
    cw = embed_classical(beta)
    w = W = 0
    for _, e, a, b in crossing_colors(cw, c.composition(beta.genus)):
        if a == b:
            w += e * a
            W += e * a * a
    return w, W


# ---------------------------------------------------------------------------
# classical normal form via the (faithful) Artin action on the free group


def _free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _letter_aut(i, e):
    """Images of generators under sigma_i^e (generators are 1..n, inverses negative)."""
    a, b = i, i + 1
    if e == 1:
        return {a: [a, b, -a], b: [a]}
    return {a: [b], b: [-b, a, b]}


def artin_normal_form(cw):
    """Images of the free generators under the braid; equal iff the braids are."""
    n = cw.strands
    images = [[k] for k in range(1, n + 1)]
    for i, e in cw.letters:
        aut = _letter_aut(i, e)
        new = []
        for img in images:
            out = []
            for x in img:
                if abs(x) in aut:
                    y = aut[abs(x)]
                    out.extend(y if x > 0 else [-z for z in reversed(y)])
                else:
                    out.append(x)
            new.append(_free_reduce(out))
        images = new
    return tuple(tuple(w) for w in images)


def classical_equal(u, v):
    return u.strands == v.strands and artin_normal_form(u) == artin_normal_form(v)


def relations(g, n):
    """Defining relations of B_{g,n} as pairs of words (lhs, rhs)."""
    S = lambda i, e=1: Letter(SIGMA, i, e)
    T = lambda j, e=1: Letter(TAU, j, e)
    W = lambda *ls: BraidWord(g, n, ls)
    out = []
    for i in range(1, n):
        for j in range(i + 1, n):
            if j == i + 1:
                out.append((W(S(i), S(j), S(i)), W(S(j), S(i), S(j))))
            else:
                out.append((W(S(i), S(j)), W(S(j), S(i))))
    for t in range(1, g + 1):
        if n >= 2:
            out.append((W(S(1), T(t), S(1), T(t)), W(T(t), S(1), T(t), S(1))))
        for i in range(2, n):
            out.append((W(S(i), T(t)), W(T(t), S(i))))
    if n >= 2:
        for i in range(1, g + 1):
            for j in range(i + 1, g + 1):
                lhs = W(S(1), T(i), S(1, -1), T(j))
                rhs = W(T(j), S(1), T(i), S(1, -1))
                out.append((lhs, rhs))
    return out
