"""Complexes of projectives attached to graded homotopy strings and bands."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import AdmissiblePresentation, AlgebraPresentation, PathCombination, admissible_presentation
from .groebner import GroebnerBasis, certify_strong_koszul
from .words import HomotopyWord, WordError, classify_symmetry, context, symmetric_band_shape, validate_word


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Summand:
    position: int
    vertex: str          # vertex of Q^sg
    degree: int
    copy: int = 0


@dataclass(frozen=True)
class BandParameter:
    """Either a monic polynomial (coefficients c_0..c_n, c_n = 1) or dimidiate sizes (l, l', m, m')."""

    coefficients: tuple[Fraction, ...] | None = None
    sizes: tuple[int, int, int, int] | None = None

    def __post_init__(self):
        if (self.coefficients is None) == (self.sizes is None):
            raise ComplexError("give exactly one of a polynomial or matrix sizes")
        if self.coefficients is not None:
            cs = tuple(Fraction(c) for c in self.coefficients)
            object.__setattr__(self, "coefficients", cs)
            if len(cs) < 2 or cs[-1] != 1:
                raise ComplexError("band polynomial must be monic of degree at least one")
            if cs[0] == 0:
                raise ComplexError("band polynomial must not vanish at 0")
            if sum(cs) == 0:
                raise ComplexError("band polynomial must not vanish at 1")
        elif any(int(x) < 1 for x in self.sizes):
            raise ComplexError("matrix sizes must be positive")

    @classmethod
    def linear(cls, root=2) -> "BandParameter":
        return cls((-Fraction(root), Fraction(1)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def companion(self) -> list[list[Fraction]]:
        n = self.degree
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(1, n):
            m[i][i - 1] = Fraction(1)
        for i in range(n):
            m[i][n - 1] = -self.coefficients[i]
        return m


@dataclass
class ProjectiveComplex:
    summands: list[Summand]
    differential: dict[tuple[int, int], PathCombination] = field(default_factory=dict)
    differentials_available: bool = True
    dimidiate: bool = False
    note: str = ""

    def degrees(self) -> list[int]:
        return sorted({s.degree for s in self.summands})

    def graded_dimension_vector(self) -> dict[int, dict[str, int]]:
        out: dict[int, dict[str, int]] = {}
        for s in self.summands:
            row = out.setdefault(s.degree, {})
            row[s.vertex] = row.get(s.vertex, 0) + 1
        return out

    def euler_class(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.summands:
            out[s.vertex] = out.get(s.vertex, 0) + (-1) ** (s.degree % 2)
        return {k: v for k, v in out.items() if v}

    def shift(self, m: int) -> "ProjectiveComplex":
        """c[m] with degrees raised by m, so the word shifted by m gives c[m]."""
        return replace(self, summands=[replace(s, degree=s.degree + m) for s in self.summands],
                       differential=dict(self.differential))

    def text(self) -> str:
        lines = []
        for j, row in sorted(self.graded_dimension_vector().items()):
            lines.append(f"degree {j}: " + " + ".join(f"P({v})^{k}" for v, k in row.items()))
        if not self.differentials_available:
            lines.append("differentials: unavailable")
        else:
            for (a, b), x in sorted(self.differential.items()):
                sa, sb = self.summands[a], self.summands[b]
                lines.append(f"  P({sa.vertex})[{sa.position}.{sa.copy}] -> P({sb.vertex})[{sb.position}.{sb.copy}]: {x.format()}")
        if self.dimidiate:
            lines.append("splits into two dimidiate summands")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "degrees": {str(j): row for j, row in sorted(self.graded_dimension_vector().items())},
            "summands": [{"position": s.position, "vertex": s.vertex, "degree": s.degree, "copy": s.copy}
                         for s in self.summands],
            "differential": ([{"from": a, "to": b, "entry": x.format()}
                              for (a, b), x in sorted(self.differential.items())]
                             if self.differentials_available else "differentials-unavailable"),
            "dimidiate": self.dimidiate,
        }


def split(ap: AdmissiblePresentation, v: str) -> list[str]:
    return [w for w in ap.quiver.vertices if ap.base_vertex(w) == v]


def lift_letter(ap: AdmissiblePresentation, path: Sequence[str], src: str, tgt: str,
                special: frozenset) -> PathCombination:
    """Component src -> tgt of the image of a letter in A^sg.

    Each arrow goes to the signed sum of its lifts (sign of the target split),
    and the idempotent of the plus copy is inserted at special vertices the
    letter passes through.
    """
    partial = {(): (Fraction(1), src)}
    for k, a in enumerate(path):
        nxt = {}
        last = k == len(path) - 1
        for pre, (c, at) in partial.items():
            for name, (base, s, t) in ap.lifts.items():
                if base != a or s != at:
                    continue
                if last and t != tgt:
                    continue
                if not last and ap.base_vertex(t) in special and ap.sign(t) != "+":
                    continue
                sign = -1 if ap.sign(t) == "-" else 1
                nxt[pre + (name,)] = (c * sign, t)
        partial = nxt
    return PathCombination.from_dict({p: c for p, (c, _) in partial.items()})


class _Tables:
    """Admissible presentation, Gröbner basis and memo tables for one algebra."""

    def __init__(self, p: AlgebraPresentation):
        self.ap = admissible_presentation(p)
        _, self.g = certify_strong_koszul(self.ap)
        self.special = p.special
        self.splits = {v: split(self.ap, v) for v in p.quiver.vertices}
        self.lifts: dict = {}
        self.products: dict = {}

    def lift(self, path, src, tgt) -> PathCombination:
        key = (path, src, tgt)
        x = self.lifts.get(key)
        if x is None:
            x = self.lifts[key] = lift_letter(self.ap, path, src, tgt, self.special)
        return x

    def reduced_product(self, x: PathCombination, y: PathCombination) -> PathCombination:
        key = (x, y)
        z = self.products.get(key)
        if z is None:
            z = self.products[key] = self.g.reduce(x.multiply(y, self.ap.quiver))
        return z


_BY_ID: dict = {}


@lru_cache(maxsize=128)
def _tables_for(p: AlgebraPresentation) -> _Tables:
    return _Tables(p)


def _tables(p: AlgebraPresentation) -> _Tables:
    hit = _BY_ID.get(id(p))
    if hit is not None and hit[0] is p:
        return hit[1]
    t = _tables_for(p)
    if len(_BY_ID) > 128:
        _BY_ID.clear()
    _BY_ID[id(p)] = (p, t)
    return t


def _setup(p: AlgebraPresentation) -> tuple[AdmissiblePresentation, GroebnerBasis]:
    t = _tables(p)
    return t.ap, t.g


def _positions(w: HomotopyWord, p: AlgebraPresentation) -> list[str]:
    ctx = context(p)
    if not w.letters:
        return [w.vertex]
    verts = [ctx.letter_ends(w.letters[0])[0]]
    for x in w.letters:
        verts.append(ctx.letter_ends(x)[1])
    return verts


def _check(w: HomotopyWord, p: AlgebraPresentation):
    rep = validate_word(w, p)
    if not rep.ok:
        raise WordError("; ".join(f"{k}: {s}" for k, s in rep.failures))


def _build(p: AlgebraPresentation, w: HomotopyWord, n_copies: int, last_matrix=None) -> ProjectiveComplex:
    tab = _tables(p)
    verts = _positions(w, p)
    npos = len(verts) - 1 if w.band else len(verts)
    splits = tab.splits
    summands = []
    index: dict[tuple[int, str, int], int] = {}
    for i in range(npos):
        for sv in splits[verts[i]]:
            for t in range(n_copies):
                index[(i, sv, t)] = len(summands)
                summands.append(Summand(i, sv, w.mu[i], t))
    diff: dict[tuple[int, int], PathCombination] = {}
    r = len(w.letters)
    ident = [[int(a == b) for b in range(n_copies)] for a in range(n_copies)]
    for k, x in enumerate(w.letters):
        a, b = k, (k + 1) % npos if w.band else k + 1
        src, tgt = (b, a) if x.inverse else (a, b)
        mat = last_matrix if (w.band and k == r - 1 and last_matrix is not None) else ident
        if x.inverse and mat is not ident:
            # the twist sits on the letter; an inverse letter runs against the walk
            mat = [list(row) for row in zip(*mat)]
        for s_sv in splits[verts[src]]:
            for t_sv in splits[verts[tgt]]:
                entry = tab.lift(x.path, s_sv, t_sv)
                if entry.is_zero():
                    continue
                for u in range(n_copies):
                    for v in range(n_copies):
                        c = mat[u][v]
                        if c == 0:
                            continue
                        key = (index[(src, s_sv, u)], index[(tgt, t_sv, v)])
                        term = entry if c == 1 else entry.scale(c)
                        diff[key] = diff[key] + term if key in diff else term
    return ProjectiveComplex(summands, {k: v for k, v in diff.items() if not v.is_zero()})


def string_complex(w: HomotopyWord, p: AlgebraPresentation) -> ProjectiveComplex:
    if w.band:
        raise ComplexError("string_complex needs a string; use band_complex")
    if w.right_tail or w.left_tail:
        raise ComplexError("complexes are built for finite strings only")
    _check(w, p)
    c = _build(p, w, 1)
    if classify_symmetry(w).classification == "symmetric":
        c.differential = {}
        c.differentials_available = False
        c.dimidiate = True
        c.note = "sum of two dimidiate string complexes"
    return c


def band_complex(w: HomotopyWord, param: BandParameter, p: AlgebraPresentation) -> ProjectiveComplex:
    if not w.band:
        raise ComplexError("band_complex needs a band")
    _check(w, p)
    sym = classify_symmetry(w).classification == "symmetric"
    if sym:
        if param.sizes is None:
            raise ComplexError("a symmetric band takes matrix sizes (l, l', m, m')")
        return _dimidiate_band(w, param.sizes, p)
    if param.coefficients is None:
        raise ComplexError("an asymmetric band takes a polynomial")
    return _build(p, w, param.degree, param.companion())


def _dimidiate_band(w: HomotopyWord, sizes, p: AlgebraPresentation) -> ProjectiveComplex:
    ap, _ = _setup(p)
    shape = symmetric_band_shape(w, p)
    if shape is None:
        raise ComplexError("symmetric band without special turning vertices")
    m0, r = shape
    ww = w.rotate(m0)
    verts = _positions(ww, p)
    n = len(ww.letters)
    s = (n - 2 * r) // 2
    l, l2, m, m2 = (int(x) for x in sizes)
    summands = []

    def add(i, sv, count):
        for t in range(count):
            summands.append(Summand(i, sv, ww.mu[i], t))

    for i in list(range(0, r + 1)) + list(range(2 * r + 1, 2 * r + s + 1)):
        v = verts[i]
        if i == r or i == 2 * r + s:
            plus, minus = (l, l2) if i == r else (m, m2)
            sp = split(ap, v)
            add(i, sp[0], plus)
            add(i, sp[-1], minus)
        else:
            k = (l + l2) if i < r else (m + m2)
            for sv in split(ap, v):
                add(i, sv, k)
    return ProjectiveComplex(summands, {}, False, True, "dimidiate band complex")


def compose(c: ProjectiveComplex, ap: AdmissiblePresentation) -> dict[tuple[int, int], PathCombination]:
    out: dict[tuple[int, int], PathCombination] = {}
    by_src: dict[int, list[tuple[int, PathCombination]]] = {}
    for (a, b), x in c.differential.items():
        by_src.setdefault(a, []).append((b, x))
    for (a, b), x in c.differential.items():
        for cc, y in by_src.get(b, []):
            prod = x.multiply(y, ap.quiver)
            out[(a, cc)] = out.get((a, cc), PathCombination(())) + prod
    return out


def d_squared_residue(c: ProjectiveComplex, p: AlgebraPresentation) -> dict[tuple[int, int], PathCombination]:
    """Nonzero entries of d∘d after reduction modulo the certified Gröbner basis."""
    tab = _tables(p)
    by_src: dict[int, list[tuple[int, PathCombination]]] = {}
    for (a, b), x in c.differential.items():
        by_src.setdefault(a, []).append((b, x))
    out: dict[tuple[int, int], PathCombination] = {}
    # normal forms are linear, so products may be reduced one at a time
    for (a, b), x in c.differential.items():
        for cc, y in by_src.get(b, ()):
            z = tab.reduced_product(x, y)
            if not z.is_zero():
                out[(a, cc)] = out[(a, cc)] + z if (a, cc) in out else z
    return {k: v for k, v in out.items() if not v.is_zero()}


def expected_ranks(w: HomotopyWord, p: AlgebraPresentation, mult: int = 1) -> dict[int, int]:
    """Total rank per degree: positions weighted by 2 at special vertices, times mult."""
    verts = _positions(w, p)
    npos = len(verts) - 1 if w.band else len(verts)
    out: dict[int, int] = {}
    for i in range(npos):
        out[w.mu[i]] = out.get(w.mu[i], 0) + (2 if verts[i] in p.special else 1) * mult
    return out


def ranks(c: ProjectiveComplex) -> dict[int, int]:
    out: dict[int, int] = {}
    for s in c.summands:
        out[s.degree] = out.get(s.degree, 0) + 1
    return out
