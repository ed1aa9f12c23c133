"""Graded homotopy strings and bands, graded curves, and the maps between them.

Curves live on the generalised ribbon graph G of A_plus: the dissection that is
dual to the one curves are drawn on has one edge per vertex of Q, so a crossing
of a dual edge is the same as a crossing of an edge of G.  Internally a curve is
a sequence of darts: ``d_k`` is the half-edge of the k-th crossed edge through
which the curve enters a vertex of G.  The segment after crossing k runs inside
``vertex(d_k)`` from ``d_k`` to ``iota'(d_{k+1})`` and reads off one letter.
Special edges are folded (``iota'``), so a crossing of a special edge means the
curve goes around the orbifold point and comes back.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .algebra import AlgebraPresentation, StructuralError, derived_presentations
from .surface import RibbonComplex, generalised_ribbon_graph


class WordError(ValueError):
    pass


class CurveError(ValueError):
    pass


class Letter(NamedTuple):
    path: tuple[str, ...]
    inverse: bool = False

    def inverted(self) -> "Letter":
        return Letter(self.path, not self.inverse)

    def text(self) -> str:
        return " ".join(self.path) + ("~" if self.inverse else "")

    def pretty(self) -> str:
        return "(" + ("~" if self.inverse else "") + "".join(self.path) + ")"


@dataclass(frozen=True)
class HomotopyWord:
    """A graded word.  ``mu`` has one entry per position of the core (r+1 entries
    for r letters; bands repeat the first value at the end).  Infinite ends are
    stored as the first arrow of a clockwise tail: ``right_tail`` continues the
    word with direct single letters, ``left_tail`` is the right tail of the
    inverse word."""

    letters: tuple[Letter, ...]
    mu: tuple[int, ...]
    band: bool = False
    vertex: str | None = None
    right_tail: str | None = None
    left_tail: str | None = None

    @property
    def kind(self) -> str:
        if self.band:
            return "band"
        if self.right_tail and self.left_tail:
            return "two-sided-infinite"
        if self.right_tail:
            return "right-infinite"
        if self.left_tail:
            return "left-infinite"
        return "finite"

    def __len__(self):
        return len(self.letters)

    def shift(self, m: int) -> "HomotopyWord":
        return replace(self, mu=tuple(x + m for x in self.mu))

    def inverse(self) -> "HomotopyWord":
        return HomotopyWord(tuple(x.inverted() for x in reversed(self.letters)), tuple(reversed(self.mu)),
                            self.band, self.vertex, self.left_tail, self.right_tail)

    def rotate(self, m: int) -> "HomotopyWord":
        """Band rotation starting at position m, grading carried along."""
        if not self.band:
            raise WordError("only bands rotate")
        r = len(self.letters)
        m %= r
        letters = self.letters[m:] + self.letters[:m]
        mu = self.mu[m:r] + self.mu[:m] + (self.mu[m],)
        return HomotopyWord(letters, mu, True)

    def text(self) -> str:
        core = ", ".join(x.text() for x in self.letters) if self.letters else f"e {self.vertex}"
        if self.band:
            core = "band: " + core
        if self.left_tail:
            core = f"<{self.left_tail} " + core
        if self.right_tail:
            core = core + f" >{self.right_tail}"
        return core + " (" + ",".join(str(x) for x in self.mu) + ")"

    def pretty(self) -> str:
        return "".join(x.pretty() for x in self.letters) if self.letters else f"e_{self.vertex}"

    def as_dict(self) -> dict:
        d = {"letters": [{"path": list(x.path), "inverse": x.inverse} for x in self.letters],
             "mu": list(self.mu), "kind": self.kind}
        if self.vertex is not None:
            d["vertex"] = self.vertex
        if self.right_tail:
            d["right_tail"] = self.right_tail
        if self.left_tail:
            d["left_tail"] = self.left_tail
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "HomotopyWord":
        try:
            letters = tuple(Letter(tuple(x["path"]), bool(x.get("inverse", False))) for x in d["letters"])
            return cls(letters, tuple(int(x) for x in d["mu"]), d.get("kind") == "band", d.get("vertex"),
                       d.get("right_tail"), d.get("left_tail"))
        except (KeyError, TypeError, ValueError) as exc:
            raise WordError(f"malformed word: {exc}") from exc


_WORD_RE = re.compile(r"^\s*(band:)?\s*(<\S+)?\s*(.*?)\s*(>\S+)?\s*\(([-\d,\s]*)\)\s*$")


def parse_word(text: str) -> HomotopyWord:
    """Parse ``"a2 a3, a3~, a4~ (1,2,1,0)"``; ``band:`` prefix, ``e v`` for trivial,
    ``<a`` and ``>a`` for tails."""
    m = _WORD_RE.match(text)
    if not m:
        raise WordError(f"cannot parse word {text!r}")
    band, left, core, right, mu = m.groups()
    mu_t = tuple(int(x) for x in mu.split(",") if x.strip())
    vertex = None
    letters = []
    if core.startswith("e "):
        vertex = core[2:].strip()
    else:
        for part in core.split(","):
            part = part.strip()
            if not part:
                raise WordError("empty letter")
            inv = part.endswith("~")
            letters.append(Letter(tuple(part.rstrip("~").split()), inv))
    return HomotopyWord(tuple(letters), mu_t, bool(band), vertex,
                        right[1:] if right else None, left[1:] if left else None)


# ------------------------------------------------------------------ context


class WordContext:
    """Per-algebra tables shared by the word and curve routines."""

    def __init__(self, p: AlgebraPresentation):
        r = generalised_ribbon_graph(p)
        for v in r.vertices:
            if v not in r.marking and v not in r.orbifold:
                raise StructuralError("A_plus is infinite-dimensional; curves need a marked dissection")
        self.p = p
        self.ribbon = r
        self.corner_of = {r.arrow_name(h): h for h in r.vertex_of if r.corner_kind(h) == "arrow"}
        self.arrow_at = {h: a for a, h in self.corner_of.items()}
        _, aplus = derived_presentations(p)
        self.jrel = aplus.relation_set()
        self.hs_at = {v: r.half_edges_at(v) for v in r.vertices}
        self.pos = {h: k for hs in self.hs_at.values() for k, h in enumerate(hs)}
        self.iota_p = {h: r.iota_prime(h) for h in r.vertex_of}
        self._ends: dict = {}
        self._halves: dict = {}
        self._junct: dict = {}
        self._lok: dict = {}
        self._wrap: dict = {}
        self._seg: dict = {}
        self._shape: dict = {}

    def segment(self, a: int, e: int) -> Letter:
        """The letter of the segment from half-edge ``a`` to half-edge ``e`` of one polygon."""
        x = self._seg.get((a, e))
        if x is None:
            r = self.ribbon
            if r.vertex_of[a] != r.vertex_of[e]:
                raise CurveError("consecutive crossings do not share a polygon")
            pa, pe = self.pos[a], self.pos[e]
            if pa == pe:
                raise CurveError("curve is not reduced; apply reduce_curve")
            hs = self.hs_at[r.vertex_of[a]]
            lo, hi = min(pa, pe), max(pa, pe)
            x = self._seg[(a, e)] = Letter(tuple(r.arrow_name(h) for h in hs[lo:hi]), pa > pe)
        return x

    @property
    def quiver(self):
        return self.p.quiver

    def special(self, v: str) -> bool:
        return v in self.p.special

    def letter_ends(self, x: Letter) -> tuple[str, str]:
        e = self._ends.get(x)
        if e is None:
            q = self.quiver
            s, t = q.arrow(x.path[0]).source, q.arrow(x.path[-1]).target
            e = self._ends[x] = (t, s) if x.inverse else (s, t)
        return e

    def letter_halves(self, x: Letter) -> tuple[int, int]:
        """(half-edge where the segment starts, half-edge where it ends)."""
        e = self._halves.get(x)
        if e is None:
            e = self._halves[x] = self._compute_halves(x)
        return e

    def _compute_halves(self, x: Letter) -> tuple[int, int]:
        r = self.ribbon
        h = self.corner_of[x.path[0]]
        hs = [h]
        for a in x.path[1:]:
            nxt = r.sigma[hs[-1]]
            if self.corner_of.get(a) != nxt:
                raise WordError(f"letter {x.text()} is not a nonzero path of A_plus")
            hs.append(nxt)
        last = r.sigma[hs[-1]]
        return (last, h) if x.inverse else (h, last)

    def next_tail(self, a: str) -> str | None:
        """The arrow after ``a`` on a clockwise wrap, if any."""
        h = self.iota_p[self.ribbon.sigma[self.corner_of[a]]]
        return self.arrow_at.get(h)

    def on_wrap(self, a: str) -> bool:
        w = self._wrap.get(a)
        if w is None:
            seen = set()
            b = a
            while b is not None and b not in seen:
                seen.add(b)
                b = self.next_tail(b)
            w = self._wrap[a] = b == a
        return w

    def letters(self) -> list[Letter]:
        """All homotopy letters: nonzero paths of A_plus and their inverses."""
        out = []
        r = self.ribbon
        for v in r.vertices:
            if v in r.orbifold or v not in r.marking:
                continue
            hs = self.hs_at[v]
            names = [r.arrow_name(h) for h in hs[:-1]]
            for i in range(len(names)):
                for j in range(i + 1, len(names) + 1):
                    path = tuple(names[i:j])
                    out += [Letter(path), Letter(path, True)]
        return out


_BY_ID: dict[int, tuple[AlgebraPresentation, WordContext]] = {}


@lru_cache(maxsize=256)
def _context(p: AlgebraPresentation) -> WordContext:
    return WordContext(p)


def context(p: AlgebraPresentation) -> WordContext:
    # hashing a presentation is not cheap; look up by identity first
    hit = _BY_ID.get(id(p))
    if hit is not None and hit[0] is p:
        return hit[1]
    ctx = _context(p)
    if len(_BY_ID) > 256:
        _BY_ID.clear()
    _BY_ID[id(p)] = (p, ctx)
    return ctx


# ------------------------------------------------------------------ validation


def juncture_ok(ctx: WordContext, x: Letter, y: Letter) -> str | None:
    """None when x y is a valid juncture, otherwise the reason."""
    key = (x, y)
    if key in ctx._junct:
        return ctx._junct[key]
    why = _juncture(ctx, x, y)
    ctx._junct[key] = why
    return why


def _juncture(ctx: WordContext, x: Letter, y: Letter) -> str | None:
    v = ctx.letter_ends(x)[1]
    if ctx.letter_ends(y)[0] != v:
        return "letters do not compose"
    if ctx.special(v):
        return None
    if not x.inverse and not y.inverse:
        return None if (x.path[-1], y.path[0]) in ctx.jrel else "direct letters compose to a nonzero path"
    if x.inverse and y.inverse:
        return None if (y.path[-1], x.path[0]) in ctx.jrel else "inverse letters compose to a nonzero path"
    if not x.inverse:
        return None if x.path[-1] != y.path[-1] else "letter followed by its own inverse end"
    return None if x.path[0] != y.path[0] else "inverse letter followed by the same first arrow"


def _letter_ok(ctx: WordContext, x: Letter) -> str | None:
    if x in ctx._lok:
        return ctx._lok[x]
    why = ctx._lok[x] = _letter_check(ctx, x)
    return why


def _letter_check(ctx: WordContext, x: Letter) -> str | None:
    q = ctx.quiver
    if not x.path:
        return "empty letter"
    for a in x.path:
        if not q.has_arrow(a):
            return f"unknown arrow {a}"
    if not q.is_path(x.path):
        return "letter is not a path"
    for a, b in zip(x.path, x.path[1:]):
        if (a, b) in ctx.jrel:
            return "letter is zero in A_plus"
    return None


@dataclass
class WordReport:
    ok: bool
    failures: list[tuple[int, str]]
    symmetry: str | None = None

    def as_dict(self) -> dict:
        return {"ok": self.ok, "failures": [{"position": k, "reason": s} for k, s in self.failures],
                "symmetry": self.symmetry}


def is_proper_power(letters: tuple) -> bool:
    r = len(letters)
    return any(r % k == 0 and letters == letters[:k] * (r // k) for k in range(1, r))


def validate_word(w: HomotopyWord, p: AlgebraPresentation) -> WordReport:
    rep = _validate(w, p)
    if rep.ok:
        rep.symmetry = classify_symmetry(w).classification
    return rep


def _validate(w: HomotopyWord, p: AlgebraPresentation) -> WordReport:
    ctx = context(p)
    key = (w.letters, w.band, w.vertex, w.right_tail, w.left_tail)
    fails = ctx._shape.get(key)
    if fails is None:
        fails = _shape_failures(ctx, w, p)
        if len(ctx._shape) > 4096:
            ctx._shape.clear()
        ctx._shape[key] = fails
    fails = list(fails)
    r = len(w.letters)
    if r == 0 and len(w.mu) != 1:
        fails.append((0, "trivial word carries one degree"))
    if len(w.mu) != r + 1 and r:
        fails.append((0, f"grading needs {r + 1} entries"))
    elif r:
        mu = w.mu
        for k, x in enumerate(w.letters):
            if mu[k + 1] != mu[k] + (-1 if x.inverse else 1):
                fails.append((k + 1, "grading step does not match letter direction"))
    return WordReport(not fails, fails)


def _shape_failures(ctx: WordContext, w: HomotopyWord, p: AlgebraPresentation) -> tuple:
    """Failures that do not depend on the grading."""
    fails: list[tuple[int, str]] = []
    r = len(w.letters)
    for k, x in enumerate(w.letters):
        why = _letter_ok(ctx, x)
        if why:
            fails.append((k, why))
    if fails:
        return tuple(fails)
    if r == 0:
        if w.band:
            fails.append((0, "a band needs letters"))
        elif w.vertex not in p.quiver.vertices:
            fails.append((0, "trivial word needs a vertex of Q"))
    for k in range(r - 1):
        why = juncture_ok(ctx, w.letters[k], w.letters[k + 1])
        if why:
            fails.append((k + 1, why))
    if w.band:
        if w.right_tail or w.left_tail:
            fails.append((0, "bands have no tails"))
        if r:
            why = juncture_ok(ctx, w.letters[-1], w.letters[0])
            if why:
                fails.append((0, "closing juncture: " + why))
            if sum(x.inverse for x in w.letters) * 2 != r:
                fails.append((0, "direct and inverse letters are not equinumerous"))
            if is_proper_power(w.letters):
                fails.append((0, "band is a proper power"))
    for side, tail in (("right", w.right_tail), ("left", w.left_tail)):
        if tail is None:
            continue
        ww = w if side == "right" else w.inverse()
        if not p.quiver.has_arrow(tail) or not ctx.on_wrap(tail):
            fails.append((r, f"{side} tail {tail} is not on a clockwise wrap"))
            continue
        t = Letter((tail,))
        if ww.letters:
            why = juncture_ok(ctx, ww.letters[-1], t)
            if why:
                fails.append((r, f"{side} tail juncture: {why}"))
        elif ww.vertex != ctx.letter_ends(t)[0]:
            fails.append((0, f"{side} tail does not start at the trivial vertex"))
    if not w.letters and w.right_tail and w.left_tail and not fails:
        why = juncture_ok(ctx, Letter((w.left_tail,), True), Letter((w.right_tail,)))
        if why:
            fails.append((0, "tails meet badly: " + why))
    return tuple(fails)


@dataclass(frozen=True)
class WordSymmetry:
    classification: str
    witness: int | None = None

    def as_dict(self) -> dict:
        return {"classification": self.classification, "witness": self.witness}


def classify_symmetry(w: HomotopyWord) -> WordSymmetry:
    if not w.band:
        inv = w.inverse()
        same = inv.letters == w.letters and inv.right_tail == w.right_tail and bool(w.letters)
        return WordSymmetry("symmetric" if same else "asymmetric")
    inv = w.inverse()
    r = len(w.letters)
    for m in range(r):
        if inv.letters[m:] + inv.letters[:m] == w.letters:
            return WordSymmetry("symmetric", m)
    return WordSymmetry("asymmetric")


def symmetric_band_shape(w: HomotopyWord, p: AlgebraPresentation) -> tuple[int, int] | None:
    """For a symmetric band find (rotation, r) with letters = a abar b bbar, |a| = r,
    whose turning vertices are special; None if no such shape exists."""
    ctx = context(p)
    n = len(w.letters)
    for m in range(n):
        lt = w.letters[m:] + w.letters[:m]
        for r in range(1, n // 2 + 1):
            a = lt[:r]
            abar = tuple(x.inverted() for x in reversed(a))
            if lt[r:2 * r] != abar:
                continue
            b = lt[2 * r:]
            s = len(b) // 2
            if len(b) % 2 or not s:
                continue
            bb = b[:s]
            if b[s:] != tuple(x.inverted() for x in reversed(bb)):
                continue
            t1 = ctx.letter_ends(a[-1])[1]
            t2 = ctx.letter_ends(bb[-1])[1]
            if ctx.special(t1) and ctx.special(t2):
                return m, r
    return None


def normalize(w: HomotopyWord, p: AlgebraPresentation) -> HomotopyWord:
    """Absorb trailing direct single letters into a right tail, and likewise on the left."""
    if w.band or not (w.right_tail or w.left_tail):
        return w
    ctx = context(p)
    letters, mu = list(w.letters), list(w.mu)
    vertex, rt, lt = w.vertex, w.right_tail, w.left_tail

    def absorbs(x: Letter, inverse: bool) -> bool:
        return x.inverse == inverse and len(x.path) == 1 and ctx.on_wrap(x.path[0])

    if rt:
        had = bool(letters)
        while letters and absorbs(letters[-1], False):
            rt = letters.pop().path[0]
            mu.pop()
        if had and not letters:
            vertex = ctx.letter_ends(Letter((rt,)))[0]
    if lt:
        had = bool(letters)
        while letters and absorbs(letters[0], True):
            lt = letters.pop(0).path[0]
            mu.pop(0)
        if had and not letters:
            vertex = ctx.letter_ends(Letter((lt,)))[0]
    if letters:
        vertex = None
    if len(letters) == len(w.letters):
        return w
    return HomotopyWord(tuple(letters), tuple(mu), False, vertex, rt, lt)


# ------------------------------------------------------------------ curves


@dataclass(frozen=True)
class GradedCurve:
    crossings: tuple[str, ...]
    kind: str
    ends: tuple[dict, ...]
    grading: tuple[int, ...]
    darts: tuple[int, ...] | None = None

    @property
    def grading_start(self) -> int:
        return self.grading[0] if self.grading else 0

    def shift(self, m: int) -> "GradedCurve":
        return replace(self, grading=tuple(x + m for x in self.grading))

    def as_dict(self) -> dict:
        d = {"crossings": list(self.crossings), "kind": self.kind, "ends": [dict(e) for e in self.ends],
             "grading_start": self.grading_start, "grading": list(self.grading)}
        if self.darts is not None:
            d["darts"] = list(self.darts)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GradedCurve":
        try:
            crossings = tuple(str(x) for x in d["crossings"])
            kind = d.get("kind", "arc")
            if kind not in ("arc", "closed", "infinite"):
                raise CurveError(f"unknown curve kind {kind!r}")
            if "grading" in d:
                grading = tuple(int(x) for x in d["grading"])
            else:
                grading = (int(d.get("grading_start", 0)),)
            ends = tuple(dict(e) for e in d.get("ends", []))
            for e in ends:
                if e.get("spiral"):
                    e.pop("spiral")
            darts = tuple(int(x) for x in d["darts"]) if d.get("darts") is not None else None
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, CurveError):
                raise
            raise CurveError(f"malformed curve: {exc}") from exc
        return cls(crossings, kind, ends, grading, darts)


def word_to_curve(w: HomotopyWord, p: AlgebraPresentation) -> GradedCurve:
    rep = _validate(w, p)
    if not rep.ok:
        raise WordError("; ".join(f"{k}: {s}" for k, s in rep.failures))
    ctx = context(p)
    r = ctx.ribbon
    halves = [ctx.letter_halves(x) for x in w.letters]
    for k in range(len(halves) - 1):
        if halves[k][1] != ctx.iota_p[halves[k + 1][0]]:
            raise WordError(f"juncture {k + 1} does not cross a single edge")
    if w.band:
        if halves[-1][1] != ctx.iota_p[halves[0][0]]:
            raise WordError("band does not close up")
        darts = tuple(h for h, _ in halves) + (halves[0][0],)
        verts = tuple(r.edge_label[d] for d in darts)
        return GradedCurve(verts, "closed", (), w.mu, darts)
    if halves:
        darts = [h for h, _ in halves] + [ctx.iota_p[halves[-1][1]]]
    else:
        v = w.vertex
        a, b = r.halves(v)
        sh = r.special_half(v)
        darts = [sh if sh is not None else min(a, b)]
    if w.right_tail:
        start = ctx.corner_of[w.right_tail]
        if halves:
            if start != darts[-1]:
                raise WordError("right tail does not continue the last letter")
        darts[-1] = start
    if w.left_tail:
        d0 = ctx.iota_p[ctx.corner_of[w.left_tail]]
        if halves and d0 != darts[0]:
            raise WordError("left tail does not lead into the first letter")
        if not halves and w.right_tail and d0 != darts[0]:
            raise WordError("tails do not meet")
        darts[0] = d0
    verts = tuple(r.edge_label[d] for d in darts)
    ends = (_end(ctx, darts, w, start=True), _end(ctx, darts, w, start=False))
    kind = "infinite" if (w.right_tail or w.left_tail) else "arc"
    return GradedCurve(verts, kind, ends, w.mu, tuple(darts))


def _end(ctx: WordContext, darts, w: HomotopyWord, start: bool) -> dict:
    r = ctx.ribbon
    if start and w.left_tail:
        return {"type": "puncture", "ref": r.arrow_name(ctx.iota_p[darts[0]])}
    if not start and w.right_tail:
        return {"type": "puncture", "ref": r.arrow_name(darts[-1])}
    d = darts[0] if start else darts[-1]
    v = r.edge_label[d]
    if ctx.special(v) and (w.letters or start):
        return {"type": "orbifold", "ref": v}
    vert = r.vertex_of[ctx.iota_p[d]] if start else r.vertex_of[d]
    return {"type": "marked", "ref": vert}


def resolve_darts(c: GradedCurve, p: AlgebraPresentation) -> tuple[int, ...]:
    """Recover the dart sequence from crossing labels, using gradings and ends to
    disambiguate; raises if the data admits several dart sequences."""
    ctx = context(p)
    r = ctx.ribbon
    if c.darts is not None:
        if len(c.darts) != len(c.crossings):
            raise CurveError("darts and crossings differ in length")
        for d, x in zip(c.darts, c.crossings):
            if r.edge_label.get(d) != x:
                raise CurveError(f"dart {d} does not lie on edge {x}")
        return c.darts
    options = []
    for x in c.crossings:
        if x not in r.edges():
            raise CurveError(f"unknown edge {x}")
        sh = r.special_half(x)
        options.append([sh] if sh is not None else list(r.halves(x)))
    n = len(options)
    closed = c.kind == "closed"
    sols = []

    def step_ok(k, a, b):
        e = ctx.iota_p[b]
        if r.vertex_of[a] != r.vertex_of[e] or a == e:
            return False
        if len(c.grading) == n:
            step = 1 if ctx.pos[a] < ctx.pos[e] else -1
            return c.grading[k + 1] == c.grading[k] + step
        return True

    def go(k, acc):
        if len(sols) > 1:
            return
        if k == n:
            if closed and acc[0] != acc[-1]:
                return
            sols.append(tuple(acc))
            return
        for d in options[k]:
            if k and not step_ok(k - 1, acc[-1], d):
                continue
            go(k + 1, acc + [d])

    go(0, [])
    if n == 1 and len(sols) > 1:
        end = c.ends[1] if len(c.ends) > 1 else {}
        if end.get("type") == "marked":
            sols = [s for s in sols if r.vertex_of[s[0]] == end.get("ref")]
        elif end.get("type") == "puncture":
            sols = [s for s in sols if r.arrow_name(s[0]) == end.get("ref")]
        else:
            sols = sols[:1] if sols and min(sols) else sols
    if len(sols) > 1 and c.ends:
        sols = [s for s in sols if _ends_match(ctx, s, c)]
    if not sols:
        raise CurveError("crossing sequence is not a curve on this dissection")
    if len(sols) > 1:
        raise CurveError("crossing sequence is ambiguous; supply darts")
    return sols[0]


def _ends_match(ctx, darts, c: GradedCurve) -> bool:
    r = ctx.ribbon
    for end, d, start in ((c.ends[0], darts[0], True), (c.ends[-1], darts[-1], False)):
        if end.get("type") == "marked":
            vert = r.vertex_of[ctx.iota_p[d]] if start else r.vertex_of[d]
            if vert != end.get("ref"):
                return False
    return True


def reduce_curve(c: GradedCurve, p: AlgebraPresentation) -> GradedCurve:
    """Cancel backtracks (consecutive crossings enclosing an empty segment)."""
    ctx = context(p)
    r = ctx.ribbon
    darts = list(resolve_darts(c, p))
    grading = list(c.grading) if len(c.grading) == len(darts) else None
    closed = c.kind == "closed"
    if closed:
        darts, grading = darts[:-1], (grading[:-1] if grading else None)
    stack: list[int] = []
    gstack: list[int] = []
    for k, d in enumerate(darts):
        if stack and stack[-1] == ctx.iota_p[d]:
            stack.pop()
            if grading:
                gstack.pop()
            continue
        stack.append(d)
        if grading:
            gstack.append(grading[k])
    if closed:
        while len(stack) > 1 and stack[-1] == ctx.iota_p[stack[0]]:
            stack = stack[1:-1]
            gstack = gstack[1:-1] if grading else gstack
        stack = stack + stack[:1]
        gstack = gstack + gstack[:1] if grading else gstack
    if not stack:
        raise CurveError("curve reduces to nothing")
    g = tuple(gstack) if grading else c.grading
    return GradedCurve(tuple(r.edge_label[d] for d in stack), c.kind, c.ends, g, tuple(stack))


def curve_to_word(c: GradedCurve, p: AlgebraPresentation) -> HomotopyWord:
    ctx = context(p)
    r = ctx.ribbon
    darts = resolve_darts(c, p)
    n = len(darts)
    closed = c.kind == "closed"
    letters = []
    segs = n - 1
    seg, ip = ctx.segment, ctx.iota_p
    for k in range(segs):
        letters.append(seg(darts[k], ip[darts[k + 1]]))
    if len(c.grading) == n:
        mu = tuple(c.grading)
    elif len(c.grading) == 1:
        mu = [c.grading[0]]
        for x in letters:
            mu.append(mu[-1] + (-1 if x.inverse else 1))
        mu = tuple(mu)
    else:
        raise CurveError("grading must have one entry per crossing, or a single start value")
    for k, x in enumerate(letters):
        if mu[k + 1] != mu[k] + (-1 if x.inverse else 1):
            raise CurveError(f"grading step {k} disagrees with the side of the marked point")
    if closed:
        if darts[0] != darts[-1]:
            raise CurveError("closed curve must repeat its first crossing")
        w = HomotopyWord(tuple(letters), mu, True)
    else:
        ends = c.ends or ({}, {})
        right = left = None
        if ends[-1].get("type") == "puncture":
            _check_wrap(r, darts[-1])
            right = r.arrow_name(darts[-1])
        if ends[0].get("type") == "puncture":
            _check_wrap(r, ctx.iota_p[darts[0]])
            left = r.arrow_name(ctx.iota_p[darts[0]])
        vertex = None if letters else c.crossings[0]
        w = normalize(HomotopyWord(tuple(letters), mu, False, vertex, right, left), p)
    rep = _validate(w, p)
    if not rep.ok:
        raise CurveError("curve does not give a homotopy word: " + "; ".join(s for _, s in rep.failures))
    return w


def _check_wrap(r: RibbonComplex, h: int):
    if r.corner_kind(h) != "arrow":
        raise CurveError("puncture end does not start inside an interior polygon")
    x = h
    for _ in range(len(r.vertex_of) + 1):
        x = r.iota_prime(r.sigma[x])
        if r.corner_kind(x) != "arrow":
            raise CurveError("puncture end does not wrap an interior polygon")
        if x == h:
            return
    raise CurveError("puncture end does not close up")


def equivalent(c1: GradedCurve, c2: GradedCurve, p: AlgebraPresentation) -> bool:
    """Same curve up to orientation (and rotation for closed curves), gradings included."""
    w1 = curve_to_word(reduce_curve(c1, p), p)
    w2 = curve_to_word(reduce_curve(c2, p), p)
    if w1.band != w2.band:
        return False
    if not w1.band:
        if w1 == w2 or w1 == w2.inverse():
            return True
        # trivial words carry no orientation
        return not w1.letters and not w2.letters and w1.vertex == w2.vertex and w1.mu == w2.mu \
            and w1.right_tail == w2.right_tail
    n = len(w1.letters)
    if n != len(w2.letters):
        return False
    for cand in (w2, w2.inverse()):
        for m in range(n):
            if cand.rotate(m) == w1:
                return True
    return False


# ------------------------------------------------------------------ enumeration


def enumerate_strings(p: AlgebraPresentation, max_letters: int) -> Iterator[HomotopyWord]:
    """Finite graded strings (mu_0 = 0) with 0..max_letters letters."""
    ctx = context(p)
    for v in p.quiver.vertices:
        yield HomotopyWord((), (0,), vertex=v)
    letters = ctx.letters()
    by_start: dict[str, list[Letter]] = {}
    for x in letters:
        by_start.setdefault(ctx.letter_ends(x)[0], []).append(x)

    def go(acc, mu):
        yield HomotopyWord(tuple(acc), tuple(mu))
        if len(acc) == max_letters:
            return
        for y in by_start.get(ctx.letter_ends(acc[-1])[1], []):
            if juncture_ok(ctx, acc[-1], y) is None:
                yield from go(acc + [y], mu + [mu[-1] + (-1 if y.inverse else 1)])

    for x in letters:
        yield from go([x], [0, -1 if x.inverse else 1])


def enumerate_bands(p: AlgebraPresentation, max_letters: int) -> Iterator[HomotopyWord]:
    ctx = context(p)
    for w in enumerate_strings(p, max_letters):
        if len(w.letters) < 2 or len(w.letters) % 2:
            continue
        if w.mu[-1] != w.mu[0]:
            continue
        if juncture_ok(ctx, w.letters[-1], w.letters[0]) is not None:
            continue
        b = HomotopyWord(w.letters, w.mu, True)
        if is_proper_power(b.letters):
            continue
        yield b


def enumerate_infinite(p: AlgebraPresentation, max_letters: int) -> Iterator[HomotopyWord]:
    """Normalised one- and two-sided infinite words whose core has at most max_letters letters."""
    ctx = context(p)
    tails = [a.name for a in p.quiver.arrows if ctx.on_wrap(a.name)]
    if not tails:
        return

    def right_tails(w: HomotopyWord) -> list[str]:
        if w.letters:
            last = w.letters[-1]
            if not last.inverse and len(last.path) == 1 and last.path[0] in tails:
                return []
            return [t for t in tails if juncture_ok(ctx, last, Letter((t,))) is None]
        return [t for t in tails if ctx.letter_ends(Letter((t,)))[0] == w.vertex]

    for w in enumerate_strings(p, max_letters):
        rights = right_tails(w)
        lefts = right_tails(w.inverse())
        for rt in [None] + rights:
            for lt in [None] + lefts:
                if rt is None and lt is None:
                    continue
                if not w.letters and rt and lt and \
                        juncture_ok(ctx, Letter((lt,), True), Letter((rt,))) is not None:
                    continue
                yield replace(w, right_tail=rt, left_tail=lt)


def enumerate_words(p: AlgebraPresentation, max_letters: int, infinite: bool = True) -> list[HomotopyWord]:
    out = list(enumerate_strings(p, max_letters)) + list(enumerate_bands(p, max_letters))
    if infinite:
        out += list(enumerate_infinite(p, max_letters))
    return out


def check_round_trip(w: HomotopyWord, p: AlgebraPresentation, shift: int = 3) -> str | None:
    """None when curve_to_word inverts word_to_curve on w and on w shifted."""
    try:
        c = word_to_curve(w, p)
        if curve_to_word(c, p) != w:
            return f"round trip {w.text()}"
        ws = w.shift(shift)
        cs = word_to_curve(ws, p)
        if cs != c.shift(shift):
            return f"shift mismatch {w.text()}"
        if curve_to_word(cs, p) != ws:
            return f"shifted round trip {w.text()}"
    except (WordError, CurveError) as exc:
        return f"{w.text()}: {exc}"
    return None


def iter_words(p: AlgebraPresentation, max_letters: int, infinite: bool = True) -> Iterator[HomotopyWord]:
    yield from enumerate_strings(p, max_letters)
    yield from enumerate_bands(p, max_letters)
    if infinite:
        yield from enumerate_infinite(p, max_letters)


def round_trip_failures(p: AlgebraPresentation, max_letters: int, shift: int = 3) -> list[str]:
    bad = []
    for w in iter_words(p, max_letters):
        why = check_round_trip(w, p, shift)
        if why:
            bad.append(why)
    return bad
