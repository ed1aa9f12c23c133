"""Noncommutative Groebner bases over path algebras of split quivers.

Paths are tuples of arrow names, composed left to right.  All arithmetic is
exact (``fractions.Fraction``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    AdmissiblePresentation,
    AlgebraPresentation,
    Arrow,
    PathCombination,
    Quiver,
    StructuralError,
    op_name,
)

Path = tuple[str, ...]

# tie-break ranks for lifts of one base arrow, larger is greater
_BOTH_SPECIAL = {("+", "+"): 4, ("-", "-"): 3, ("+", "-"): 2, ("-", "+"): 1}
_ONE_SPECIAL = {"+": 2, "-": 1}

REDUCTION_CEILING = 10_000


class InfiniteDimensional(ValueError):
    """The tip-avoiding path language is infinite."""


@dataclass(frozen=True)
class AdmissibleOrder:
    """Length-lex order on paths of a split quiver.

    Arrows over different base arrows compare by base declaration order (first
    declared is largest); lifts of one base arrow compare by the sign table.
    """

    presentation: AdmissiblePresentation

    def arrow_key(self, name: str) -> tuple[int, int]:
        cache = self.__dict__.get("_keys")
        if cache is None:
            cache = {}
            object.__setattr__(self, "_keys", cache)
        if name in cache:
            return cache[name]
        ap = self.presentation
        order = ap.base_order or tuple(dict.fromkeys(ap.base_arrow(a.name) for a in ap.quiver.arrows))
        base = ap.base_arrow(name)
        rank = len(order) - order.index(base)
        arr = ap.quiver.arrow(name)
        s, t = ap.sign(arr.source), ap.sign(arr.target)
        if s and t:
            tie = _BOTH_SPECIAL[(s, t)]
        elif s or t:
            tie = _ONE_SPECIAL[s or t]
        else:
            tie = 0
        cache[name] = (rank, tie)
        return cache[name]

    def key(self, path: Sequence[str]):
        return (len(path), tuple(self.arrow_key(a) for a in path))

    def greater(self, p: Sequence[str], q: Sequence[str]) -> bool:
        return self.key(p) > self.key(q)


def tip(x: PathCombination, order: AdmissibleOrder) -> Path:
    if x.is_zero():
        raise ValueError("the zero element has no tip")
    return max(x.paths(), key=order.key)


def monic(x: PathCombination, order: AdmissibleOrder) -> PathCombination:
    if x.is_zero():
        return x
    return x.scale(1 / x.coefficient(tip(x, order)))


def _find_factor(p: Path, t: Path) -> int | None:
    n, k = len(p), len(t)
    for i in range(n - k + 1):
        if p[i:i + k] == t:
            return i
    return None


def simple_reduce(x: PathCombination, H: Sequence[PathCombination], order: AdmissibleOrder):
    """One reduction step on the largest reducible term.

    Returns ``(y, step)`` or ``None`` when no term of ``x`` is divisible by a tip.
    """
    tips = [(tip(h, order), h) for h in H if not h.is_zero()]
    for c, p in sorted(x.terms, key=lambda t: order.key(t[1]), reverse=True):
        for k, (t, h) in enumerate(tips):
            i = _find_factor(p, t)
            if i is None:
                continue
            left, right = p[:i], p[i + len(t):]
            lam = c / h.coefficient(t)
            prod = _sandwich(left, h, right)
            y = x - prod.scale(lam)
            step = f"{x.format()}  ->  {y.format()}  [by g{k} at {'*'.join(p)}]"
            return y, step
    return None


def _sandwich(left: Path, h: PathCombination, right: Path) -> PathCombination:
    return PathCombination.from_dict({left + p + right: c for c, p in h.terms})


def complete_reduce(x: PathCombination, H: Sequence[PathCombination], order: AdmissibleOrder,
                    ceiling: int = REDUCTION_CEILING) -> tuple[PathCombination, list[str]]:
    trace: list[str] = []
    cur = monic(x, order)
    for _ in range(ceiling):
        if cur.is_zero():
            return cur, trace
        res = simple_reduce(cur, H, order)
        if res is None:
            return cur, trace
        cur, step = res
        cur = monic(cur, order)
        trace.append(step)
    raise RuntimeError("reduction ceiling exceeded")


def overlaps(x: PathCombination, y: PathCombination, order: AdmissibleOrder) -> list[tuple[PathCombination, Path, Path]]:
    """All overlap relations o(x, y, m, n) = mu_t x m - lambda_s n y with s m = n t."""
    s, t = tip(x, order), tip(y, order)
    lam, mu = x.coefficient(s), y.coefficient(t)
    out = []
    for k in range(1, min(len(s), len(t))):
        if s[len(s) - k:] != t[:k]:
            continue
        m, n = t[k:], s[:len(s) - k]
        o = _sandwich((), x, m).scale(mu) - _sandwich(n, y, ()).scale(lam)
        out.append((o, m, n))
    return out


@dataclass
class GroebnerBasis:
    generators: list[PathCombination]
    order: AdmissibleOrder
    certified: bool = False

    def tips(self) -> list[Path]:
        return [tip(g, self.order) for g in self.generators]

    def reduce(self, x: PathCombination) -> PathCombination:
        """Normal form of ``x`` (not rescaled)."""
        cur = x
        for _ in range(REDUCTION_CEILING):
            if cur.is_zero():
                return cur
            res = simple_reduce(cur, self.generators, self.order)
            if res is None:
                return cur
            cur = res[0]
        raise RuntimeError("reduction ceiling exceeded")


@dataclass
class Certificate:
    basis: list[PathCombination]
    overlaps: list[dict] = field(default_factory=list)
    certified: bool = False

    def as_dict(self) -> dict:
        return {"basis": [g.format() for g in self.basis], "overlaps": self.overlaps,
                "certified": self.certified}


def certify_strong_koszul(ap: AdmissiblePresentation) -> tuple[Certificate, GroebnerBasis]:
    order = AdmissibleOrder(ap)
    gens = [monic(r, order) for r in ap.relations if not r.is_zero()]
    cert = Certificate(basis=gens)
    ok = True
    tips = [tip(g, order) for g in gens]
    if len(set(tips)) != len(tips):
        ok = False
        cert.overlaps.append({"pair": None, "trace": ["repeated tip among generators"], "result": "FAIL"})
    for i, x in enumerate(gens):
        for j, y in enumerate(gens):
            for o, m, n in overlaps(x, y, order):
                res, trace = complete_reduce(o, gens, order)
                good = res.is_zero()
                ok = ok and good
                cert.overlaps.append({
                    "pair": [i, j],
                    "m": "*".join(m), "n": "*".join(n),
                    "overlap": o.format(),
                    "trace": trace,
                    "result": "0" if good else res.format(),
                })
    cert.certified = ok
    return cert, GroebnerBasis(gens, order, certified=ok)


# ------------------------------------------------------------- normal forms


def _tip_automaton(ap: AdmissiblePresentation, tips: Iterable[Path]):
    tipset = set(tips)
    width = max((len(t) for t in tipset), default=1)
    q = ap.quiver

    def ok(path: Path) -> bool:
        return not any(path[len(path) - k:] in tipset for k in range(1, len(path) + 1))

    def step(state: Path, a: str):
        new = state + (a,)
        if not ok(new):
            return None
        return new[-(width - 1):] if width > 1 else ()

    return tipset, width, ok, step, q


def is_infinite(ap: AdmissiblePresentation, tips: Iterable[Path]) -> bool:
    """True iff arbitrarily long tip-free paths exist."""
    tipset, width, ok, step, q = _tip_automaton(ap, tips)
    starts = [((a.name,), a.target) for a in q.arrows if ok((a.name,))]
    adj: dict = {}
    seen = set()
    stack = [(s[-(width - 1):] if width > 1 else (), v, s) for s, v in starts]
    nodes = []
    while stack:
        st, v, _ = stack.pop()
        if (st, v) in seen:
            continue
        seen.add((st, v))
        nodes.append((st, v))
        succ = []
        for b in q.outgoing(v):
            full = st + (b.name,)
            if any(full[len(full) - k:] in tipset for k in range(1, len(full) + 1)):
                continue
            ns = full[-(width - 1):] if width > 1 else ()
            succ.append((ns, b.target))
            stack.append((ns, b.target, None))
        adj[(st, v)] = succ
    color = {n: 0 for n in nodes}

    def dfs(n):
        color[n] = 1
        for m in adj.get(n, []):
            if color.get(m, 0) == 1:
                return True
            if color.get(m, 0) == 0 and dfs(m):
                return True
        color[n] = 2
        return False

    return any(color[n] == 0 and dfs(n) for n in nodes)


def tip_free_paths(ap: AdmissiblePresentation, tips: Iterable[Path], i: str, j: str | None = None,
                   max_len: int = 64) -> list[Path]:
    """Enumerate tip-free paths starting at ``i`` (ending at ``j`` if given)."""
    tipset = set(tips)
    q = ap.quiver
    out: list[Path] = []

    def avoid(p: Path) -> bool:
        return not any(p[len(p) - k:] in tipset for k in range(1, len(p) + 1))

    def go(p: Path, v: str):
        if j is None or v == j:
            out.append(p)
        if len(p) >= max_len:
            return
        for b in q.outgoing(v):
            np_ = p + (b.name,)
            if avoid(np_):
                go(np_, b.target)

    go((), i)
    return out


def normal_form_count(ap: AdmissiblePresentation, g: GroebnerBasis, i: str, j: str,
                      n: int | None = None) -> list[int]:
    """Counts of tip-free paths i -> j by length; index k is length k."""
    if not g.certified:
        raise ValueError("normal forms need a certified Groebner basis")
    tips = g.tips()
    if n is None:
        if is_infinite(ap, tips):
            raise InfiniteDimensional("tip-avoiding paths are unbounded")
        n = len(ap.quiver.arrows) * max(1, max((len(t) for t in tips), default=1)) + 1
    counts = [0] * (n + 1)
    for p in tip_free_paths(ap, tips, i, j, max_len=n):
        counts[len(p)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


# ---------------------------------------------------------- quadratic dual


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : r.v = 0 for all rows r}, exact."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -m[row][fc]
        basis.append(v)
    return basis


def row_space(combos: Iterable[PathCombination]) -> frozenset:
    """Canonical reduced row echelon form of the span, as a hashable value."""
    combos = [c for c in combos if not c.is_zero()]
    cols = sorted({p for c in combos for p in c.paths()})
    idx = {p: k for k, p in enumerate(cols)}
    m = []
    for c in combos:
        row = [Fraction(0)] * len(cols)
        for coef, p in c.terms:
            row[idx[p]] = coef
        m.append(row)
    r = 0
    for col in range(len(cols)):
        piv = next((k for k in range(r, len(m)) if m[k][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][col] != 0:
                f = m[k][col]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        r += 1
    rows = []
    for row in m[:r]:
        rows.append(tuple((cols[k], v) for k, v in enumerate(row) if v != 0))
    return frozenset(rows)


def quadratic_dual(ap: AdmissiblePresentation) -> AdmissiblePresentation:
    """KQ^op / I_2^perp for a quadratic presentation."""
    for r in ap.relations:
        if r.degree() != 2:
            raise StructuralError("quadratic dual needs homogeneous length-two relations")
    q = ap.quiver
    opq = q.opposite()
    length2 = [(a.name, b.name) for a in q.arrows for b in q.outgoing(a.target)]
    idx = {p: k for k, p in enumerate(length2)}
    supported = set()
    groups: list[list[PathCombination]] = []
    # relations on disjoint supports can be dualised independently
    comp: dict[tuple, int] = {}
    for r in ap.relations:
        hit = {comp[p] for p in r.paths() if p in comp}
        if not hit:
            gid = len(groups)
            groups.append([r])
        else:
            gid = min(hit)
            for other in sorted(hit - {gid}, reverse=True):
                groups[gid].extend(groups[other])
                groups[other] = []
                for p, g in list(comp.items()):
                    if g == other:
                        comp[p] = gid
            groups[gid].append(r)
        for p in r.paths():
            comp[p] = gid
            supported.add(p)
    dual_rel: list[PathCombination] = []

    def opp(p: tuple[str, str]) -> Path:
        return (op_name(p[1]), op_name(p[0]))

    for p in length2:
        if p not in supported:
            dual_rel.append(PathCombination.path(opp(p)))
    for grp in groups:
        if not grp:
            continue
        cols = sorted({p for r in grp for p in r.paths()}, key=lambda p: idx[p])
        rows = [[r.coefficient(p) for p in cols] for r in grp]
        for v in nullspace(rows, len(cols)):
            dual_rel.append(PathCombination.from_dict({opp(p): c for p, c in zip(cols, v) if c != 0}))
    lifts = {op_name(n): (op_name(b), t, s) for n, (b, s, t) in ap.lifts.items()}
    return AdmissiblePresentation(opq, tuple(dual_rel), dict(ap.vertex_base), lifts,
                                  tuple(op_name(b) for b in ap.base_order))


def same_relation_space(a: AdmissiblePresentation, b: AdmissiblePresentation) -> bool:
    return (set(a.quiver.arrows) == set(b.quiver.arrows)
            and row_space(a.relations) == row_space(b.relations))


def collapse_to_triple(ap: AdmissiblePresentation) -> AlgebraPresentation:
    """Recover (Q, I, Sp) from a presentation over a split quiver.

    A base length-two path is declared a relation when every one of its lifts
    occurs in some relation of ``ap``.
    """
    special = ap.split_vertices()
    base_vertices = list(dict.fromkeys(ap.base_vertex(v) for v in ap.quiver.vertices))
    base_arrows: dict[str, Arrow] = {}
    for a in ap.quiver.arrows:
        b = ap.base_arrow(a.name)
        if b not in base_arrows:
            base_arrows[b] = Arrow(b, ap.base_vertex(a.source), ap.base_vertex(a.target))
    order = [b for b in ap.base_order if b in base_arrows] or list(base_arrows)
    bq = Quiver(tuple(base_vertices), tuple(base_arrows[b] for b in order))
    support = {p for r in ap.relations for p in r.paths()}
    lifts_of: dict[str, list[str]] = {}
    for a in ap.quiver.arrows:
        lifts_of.setdefault(ap.base_arrow(a.name), []).append(a.name)
    rels = []
    for a in bq.arrows:
        for b in bq.outgoing(a.target):
            lifted = [(x, y) for x in lifts_of[a.name] for y in lifts_of[b.name]
                      if ap.quiver.arrow(x).target == ap.quiver.arrow(y).source]
            if lifted and all(p in support for p in lifted):
                rels.append((a.name, b.name))
    return AlgebraPresentation(bq, tuple(rels), frozenset(special))


def solve_sign_twist(source: AdmissiblePresentation, target: AdmissiblePresentation) -> dict[str, int] | None:
    """Find arrow signs phi with phi(span source) = span target, or None.

    Only binomial relations constrain the signs; monomials must coincide.
    Solved as a parity system over GF(2).
    """
    if set(a.name for a in source.quiver.arrows) != set(a.name for a in target.quiver.arrows):
        return None
    src_mono = {r.paths()[0] for r in source.relations if len(r.terms) == 1}
    tgt_mono = {r.paths()[0] for r in target.relations if len(r.terms) == 1}
    if src_mono != tgt_mono:
        return None

    def binom_map(ap):
        out = {}
        for r in ap.relations:
            if len(r.terms) == 2:
                (c1, p1), (c2, p2) = r.terms
                out[frozenset((p1, p2))] = (p1, p2, c2 / c1)
            elif len(r.terms) > 2:
                return None
        return out

    sb, tb = binom_map(source), binom_map(target)
    if sb is None or tb is None or set(sb) != set(tb):
        return None
    names = sorted(a.name for a in source.quiver.arrows)
    col = {n: k for k, n in enumerate(names)}
    eqs = []
    for key, (p1, p2, ratio) in sb.items():
        q1, q2, tratio = tb[key]
        if q1 != p1:
            tratio = 1 / tratio
        if abs(ratio) != abs(tratio):
            return None
        bit = 0 if ratio == tratio else 1
        vec = 0
        for a in p1 + p2:
            vec ^= 1 << col[a]
        eqs.append((vec, bit))
    # gaussian elimination over GF(2)
    sol_rows = []
    for vec, bit in eqs:
        for pv, pb, pc in sol_rows:
            if vec >> pc & 1:
                vec ^= pv
                bit ^= pb
        if vec == 0:
            if bit:
                return None
            continue
        pc = vec.bit_length() - 1
        new_rows = []
        for pv, pb, c in sol_rows:
            if pv >> pc & 1:
                pv ^= vec
                pb ^= bit
            new_rows.append((pv, pb, c))
        sol_rows = new_rows + [(vec, bit, pc)]
    assign = {n: 1 for n in names}
    for pv, pb, pc in sol_rows:
        if pb:
            assign[names[pc]] = -1
    return assign


def apply_sign_twist(ap: AdmissiblePresentation, signs: dict[str, int]) -> AdmissiblePresentation:
    rels = []
    for r in ap.relations:
        d = {}
        for c, p in r.terms:
            s = 1
            for a in p:
                s *= signs.get(a, 1)
            d[p] = c * s
        rels.append(PathCombination.from_dict(d))
    return AdmissiblePresentation(ap.quiver, tuple(rels), ap.vertex_base, ap.lifts, ap.base_order)


def rename_like(ap: AdmissiblePresentation, ref: AdmissiblePresentation) -> AdmissiblePresentation:
    """Rename arrows of ``ap`` to the names ``ref`` uses for the same (base, source, target)."""
    key_to_name = {(ref.base_arrow(a.name), a.source, a.target): a.name for a in ref.quiver.arrows}
    ren = {}
    for a in ap.quiver.arrows:
        k = (ap.base_arrow(a.name), a.source, a.target)
        if k not in key_to_name:
            raise KeyError(f"no counterpart for arrow {a.name}")
        ren[a.name] = key_to_name[k]
    q = Quiver(ap.quiver.vertices, tuple(Arrow(ren[a.name], a.source, a.target) for a in ap.quiver.arrows))
    rels = tuple(PathCombination.from_dict({tuple(ren[x] for x in p): c for c, p in r.terms})
                 for r in ap.relations)
    lifts = {ren[n]: v for n, v in ap.lifts.items()}
    return AdmissiblePresentation(q, rels, ap.vertex_base, lifts, ap.base_order)


def dual_matches_triple(ap: AdmissiblePresentation) -> tuple[AlgebraPresentation, dict[str, int] | None]:
    """Collapse the quadratic dual of ``ap`` and check it is the admissible
    presentation of the collapsed triple up to an arrow sign twist."""
    from .algebra import admissible_presentation

    dual = quadratic_dual(ap)
    triple = collapse_to_triple(dual)
    again = rename_like(admissible_presentation(triple), dual)
    return triple, solve_sign_twist(again, dual)
