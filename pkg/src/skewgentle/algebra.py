"""Quivers, relation ideals and the (skew-)gentle axioms.

A skew-gentle algebra is stored as the triple (Q', I', Sp): a quiver without
the special loops, a set of length-two monomial relations and the set of
special vertices.  The loops ``eps_i`` with ``eps_i^2 = eps_i`` are implicit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

SPLIT_SIGNS = ("+", "-")


class StructuralError(ValueError):
    """Malformed input: dangling arrows, duplicate names, non-composable relations."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise StructuralError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise StructuralError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise StructuralError(f"arrow {a.name} references a missing vertex")

    @classmethod
    def build(cls, vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]]) -> "Quiver":
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    def arrow(self, name: str) -> Arrow:
        return self._by_name()[name]

    def _by_name(self) -> dict[str, Arrow]:
        d = self.__dict__.get("_names")
        if d is None:
            d = {a.name: a for a in self.arrows}
            object.__setattr__(self, "_names", d)
        return d

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name()

    def incoming(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def outgoing(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def rank(self, name: str) -> int:
        """Declaration index; earlier arrows compare larger in the path order."""
        d = self.__dict__.get("_rank")
        if d is None:
            n = len(self.arrows)
            d = {a.name: n - k for k, a in enumerate(self.arrows)}
            object.__setattr__(self, "_rank", d)
        return d[name]

    def path_source(self, path: tuple[str, ...]) -> str:
        return self.arrow(path[0]).source

    def path_target(self, path: tuple[str, ...]) -> str:
        return self.arrow(path[-1]).target

    def is_path(self, path: tuple[str, ...]) -> bool:
        if not path:
            return False
        if not all(self.has_arrow(a) for a in path):
            return False
        return all(self.arrow(a).target == self.arrow(b).source for a, b in zip(path, path[1:]))

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(op_name(a.name), a.target, a.source) for a in self.arrows))


def op_name(name: str) -> str:
    return name[:-3] if name.endswith("^op") else name + "^op"


@dataclass(frozen=True)
class AlgebraPresentation:
    """The skew-gentle triple (Q', I', Sp); special loops are implicit."""

    quiver: Quiver
    relations: tuple[tuple[str, str], ...] = ()
    special: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "special", frozenset(self.special))
        seen = []
        for rel in self.relations:
            if len(rel) != 2:
                raise StructuralError(f"relation {rel!r} is not of length two")
            a, b = rel
            for x in (a, b):
                if not self.quiver.has_arrow(x):
                    raise StructuralError(f"relation uses unknown arrow {x!r}")
            if self.quiver.arrow(a).target != self.quiver.arrow(b).source:
                raise StructuralError(f"relation {a}{b} is not a path")
            if (a, b) not in seen:
                seen.append((a, b))
        object.__setattr__(self, "relations", tuple(seen))
        bad = self.special - set(self.quiver.vertices)
        if bad:
            raise StructuralError(f"special vertices {sorted(bad)} are not vertices")

    @property
    def special_loops(self) -> dict[str, str]:
        return {v: f"eps_{v}" for v in self.quiver.vertices if v in self.special}

    def relation_set(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.relations)

    def is_relation(self, a: str, b: str) -> bool:
        return (a, b) in self.relation_set()

    def with_special(self, special: Iterable[str]) -> "AlgebraPresentation":
        return AlgebraPresentation(self.quiver, self.relations, frozenset(special))

    def with_relations(self, relations: Iterable[tuple[str, str]]) -> "AlgebraPresentation":
        return AlgebraPresentation(self.quiver, tuple(relations), self.special)


@dataclass(frozen=True)
class PathCombination:
    """Finite K-linear combination of nontrivial paths with rational coefficients."""

    terms: tuple[tuple[Fraction, tuple[str, ...]], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[tuple[str, ...], object]) -> "PathCombination":
        items = [(Fraction(c), tuple(p)) for p, c in d.items() if Fraction(c) != 0]
        items.sort(key=lambda t: t[1])
        return cls(tuple(items))

    @classmethod
    def path(cls, path: Iterable[str], coeff=1) -> "PathCombination":
        return cls.from_dict({tuple(path): coeff})

    def as_dict(self) -> dict[tuple[str, ...], Fraction]:
        return {p: c for c, p in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def paths(self) -> list[tuple[str, ...]]:
        return [p for _, p in self.terms]

    def coefficient(self, path: tuple[str, ...]) -> Fraction:
        return self.as_dict().get(tuple(path), Fraction(0))

    def __add__(self, other: "PathCombination") -> "PathCombination":
        d = self.as_dict()
        for c, p in other.terms:
            d[p] = d.get(p, Fraction(0)) + c
        return PathCombination.from_dict(d)

    def __neg__(self) -> "PathCombination":
        return self.scale(-1)

    def __sub__(self, other: "PathCombination") -> "PathCombination":
        return self + (-other)

    def scale(self, c) -> "PathCombination":
        c = Fraction(c)
        return PathCombination.from_dict({p: c * x for x, p in self.terms})

    def multiply(self, other: "PathCombination", quiver: Quiver) -> "PathCombination":
        """Product in KQ, paths composed left to right; non-composable products vanish."""
        d: dict[tuple[str, ...], Fraction] = {}
        for c1, p1 in self.terms:
            t = quiver.path_target(p1)
            for c2, p2 in other.terms:
                if quiver.path_source(p2) != t:
                    continue
                p = p1 + p2
                d[p] = d.get(p, Fraction(0)) + c1 * c2
        return PathCombination.from_dict(d)

    def is_uniform(self, quiver: Quiver) -> bool:
        ends = {(quiver.path_source(p), quiver.path_target(p)) for p in self.paths()}
        return len(ends) <= 1

    def degree(self) -> int | None:
        lengths = {len(p) for p in self.paths()}
        return lengths.pop() if len(lengths) == 1 else None

    def format(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for c, p in self.terms:
            word = "*".join(p)
            if c == 1:
                s = f"+{word}"
            elif c == -1:
                s = f"-{word}"
            else:
                s = f"{'+' if c > 0 else '-'}{abs(c)}*{word}"
            out.append(s)
        text = " ".join(out)
        return text[1:] if text.startswith("+") else text

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class AdmissiblePresentation:
    """Quadratic presentation KQ^sg/I^sg with split special vertices.

    ``vertex_base`` maps each vertex of the split quiver to (original vertex, sign)
    with sign one of "+", "-", "".  ``lifts`` maps each arrow to
    (original arrow, source, target).
    """

    quiver: Quiver
    relations: tuple[PathCombination, ...]
    vertex_base: Mapping[str, tuple[str, str]] = field(default_factory=dict)
    lifts: Mapping[str, tuple[str, str, str]] = field(default_factory=dict)
    base_order: tuple[str, ...] = ()

    def base_arrow(self, name: str) -> str:
        return self.lifts[name][0] if name in self.lifts else name

    def base_vertex(self, v: str) -> str:
        return self.vertex_base.get(v, (v, ""))[0]

    def sign(self, v: str) -> str:
        return self.vertex_base.get(v, (v, ""))[1]

    def split_vertices(self) -> frozenset[str]:
        return frozenset(b for b, s in self.vertex_base.values() if s)

    def monomials(self) -> list[tuple[str, ...]]:
        return [r.paths()[0] for r in self.relations if len(r.terms) == 1]

    def binomials(self) -> list[PathCombination]:
        return [r for r in self.relations if len(r.terms) > 1]


# ---------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    ok: bool
    locally: bool
    failures: list[tuple[str, str]] = field(default_factory=list)
    kind: str = "gentle"

    @property
    def flagged_locally(self) -> bool:
        """Passes the local axioms but the ideal is not admissible."""
        return self.locally and not self.ok

    def as_dict(self) -> dict:
        return {"kind": self.kind, "ok": self.ok, "locally": self.locally,
                "failures": [{"axiom": a, "detail": d} for a, d in self.failures]}


def _nonzero_successor_graph(p: AlgebraPresentation) -> dict[str, list[str]]:
    q = p.quiver
    rels = p.relation_set()
    return {a.name: [b.name for b in q.outgoing(a.target) if (a.name, b.name) not in rels]
            for a in q.arrows}


def has_unbounded_paths(p: AlgebraPresentation) -> bool:
    """True iff arbitrarily long paths avoid the relations (so R^m is never inside I)."""
    succ = _nonzero_successor_graph(p)
    state = {a: 0 for a in succ}

    def visit(a):
        state[a] = 1
        for b in succ[a]:
            if state[b] == 1 or (state[b] == 0 and visit(b)):
                return True
        state[a] = 2
        return False

    return any(state[a] == 0 and visit(a) for a in succ)


def validate_gentle(p: AlgebraPresentation) -> ValidationReport:
    """Check axioms (1)-(5) of a gentle presentation; special vertices are ignored."""
    q = p.quiver
    rels = p.relation_set()
    fails: list[tuple[str, str]] = []
    for v in q.vertices:
        if len(q.incoming(v)) > 2:
            fails.append(("1", f"vertex {v} has more than two incoming arrows"))
        if len(q.outgoing(v)) > 2:
            fails.append(("1", f"vertex {v} has more than two outgoing arrows"))
    for a in q.arrows:
        after = q.outgoing(a.target)
        before = q.incoming(a.source)
        if sum((a.name, b.name) in rels for b in after) > 1:
            fails.append(("2", f"arrow {a.name} has two relations after it"))
        if sum((c.name, a.name) in rels for c in before) > 1:
            fails.append(("2", f"arrow {a.name} has two relations before it"))
        if sum((a.name, b.name) not in rels for b in after) > 1:
            fails.append(("3", f"arrow {a.name} has two non-relations after it"))
        if sum((c.name, a.name) not in rels for c in before) > 1:
            fails.append(("3", f"arrow {a.name} has two non-relations before it"))
    locally = not fails
    if has_unbounded_paths(p):
        fails.append(("5", "ideal is not admissible: a cycle avoids all relations"))
    return ValidationReport(ok=not fails, locally=locally, failures=fails, kind="gentle")


def validate_skew_gentle(p: AlgebraPresentation) -> ValidationReport:
    base = validate_gentle(p)
    fails = list(base.failures)
    local_fails = [f for f in fails if f[0] != "5"]
    q = p.quiver
    rels = p.relation_set()
    for v in sorted(p.special):
        ins, outs = q.incoming(v), q.outgoing(v)
        if any(a.source == a.target for a in ins):
            local_fails.append(("4", f"special vertex {v} carries an ordinary loop"))
            continue
        n = len(ins) + len(outs)
        if n == 1:
            continue
        if len(ins) == 1 and len(outs) == 1 and (ins[0].name, outs[0].name) in rels:
            continue
        local_fails.append(("4", f"special vertex {v} is incident to {n} arrows without the required relation"))
    fails = local_fails + [f for f in fails if f[0] == "5"]
    return ValidationReport(ok=not fails, locally=not local_fails, failures=fails, kind="skew-gentle")


# -------------------------------------------------------- derived presentations


def _split(v: str, special: frozenset[str]) -> list[str]:
    return [v + s for s in SPLIT_SIGNS] if v in special else [v]


def admissible_presentation(p: AlgebraPresentation) -> AdmissiblePresentation:
    """Split every special vertex i into i+, i- and sign the relations through it."""
    sp = p.special
    q = p.quiver
    vertices: list[str] = []
    vertex_base: dict[str, tuple[str, str]] = {}
    for v in q.vertices:
        for w in _split(v, sp):
            vertices.append(w)
            vertex_base[w] = (v, w[-1] if v in sp else "")
    arrows: list[Arrow] = []
    lifts: dict[str, tuple[str, str, str]] = {}
    lifted: dict[tuple[str, str, str], str] = {}
    for a in q.arrows:
        for i in _split(a.source, sp):
            for j in _split(a.target, sp):
                name = a.name if (a.source not in sp and a.target not in sp) else f"({i},{a.name},{j})"
                arrows.append(Arrow(name, i, j))
                lifts[name] = (a.name, i, j)
                lifted[(i, a.name, j)] = name
    rels = []
    for a, b in p.relations:
        A, B = q.arrow(a), q.arrow(b)
        for i in _split(A.source, sp):
            for k in _split(B.target, sp):
                d = {}
                for j in _split(A.target, sp):
                    lam = -1 if (A.target in sp and j.endswith("-")) else 1
                    d[(lifted[(i, a, j)], lifted[(j, b, k)])] = lam
                rels.append(PathCombination.from_dict(d))
    return AdmissiblePresentation(Quiver(tuple(vertices), tuple(arrows)), tuple(rels),
                                  vertex_base, lifts, tuple(a.name for a in q.arrows))


def derived_presentations(p: AlgebraPresentation) -> tuple[AlgebraPresentation, AlgebraPresentation]:
    """Return (Lambda, A_plus): loops deleted, and relations through special vertices dropped."""
    lam = AlgebraPresentation(p.quiver, p.relations, frozenset())
    q = p.quiver
    keep = [(a, b) for a, b in p.relations if q.arrow(a).target not in p.special]
    return lam, AlgebraPresentation(q, tuple(keep), frozenset())


def lift_path(ap: AdmissiblePresentation, path: Iterable[str]) -> PathCombination:
    """Image of a path of Q in KQ^sg under the algebra map that sends an arrow to the
    signed sum of its lifts (sign -1 when the lift ends at a minus vertex).

    This map sends relations of Lambda into I^sg, so composites of lifted letters
    vanish exactly when the underlying composite lies in the relation ideal.
    """
    by_base: dict[str, list[str]] = {}
    for name, (base, _, _) in ap.lifts.items():
        by_base.setdefault(base, []).append(name)
    out = None
    for a in path:
        names = by_base.get(a, [a])
        d = {}
        for n in names:
            tgt = ap.quiver.arrow(n).target
            d[(n,)] = -1 if ap.sign(tgt) == "-" else 1
        term = PathCombination.from_dict(d)
        out = term if out is None else out.multiply(term, ap.quiver)
    if out is None:
        raise ValueError("cannot lift a trivial path")
    return out


def _refine(colors: dict, nbrs: dict) -> dict:
    """Colour refinement until stable; colours are small ints ordered canonically."""
    while True:
        sigs = {x: (colors[x], tuple(sorted((t, colors[y]) for t, y in nbrs[x]))) for x in colors}
        ranks = {s: k for k, s in enumerate(sorted(set(sigs.values())))}
        new = {x: ranks[sigs[x]] for x in colors}
        if len(set(new.values())) == len(set(colors.values())):
            return new
        colors = new


def canonical_form(p: AlgebraPresentation) -> tuple:
    """Isomorphism-invariant code of (Q, I, Sp) by individualisation and refinement.

    Nodes are vertices and arrows; an arrow is joined to its source, its target
    and the arrows it forms a relation with.
    """
    q = p.quiver
    nodes = [("v", v) for v in q.vertices] + [("a", a.name) for a in q.arrows]
    nbrs: dict = {x: [] for x in nodes}
    for a in q.arrows:
        x = ("a", a.name)
        nbrs[x] += [("s", ("v", a.source)), ("t", ("v", a.target))]
        nbrs[("v", a.source)].append(("out", x))
        nbrs[("v", a.target)].append(("in", x))
    for a, b in p.relations:
        nbrs[("a", a)].append(("rel>", ("a", b)))
        nbrs[("a", b)].append(("rel<", ("a", a)))
    init = {x: (x[0], x[0] == "v" and x[1] in p.special) for x in nodes}
    ranks = {s: k for k, s in enumerate(sorted(set(init.values())))}
    start = _refine({x: ranks[init[x]] for x in nodes}, nbrs)

    def encode(colors):
        idx = {x: colors[x] for x in nodes}
        verts = sorted((idx[("v", v)], v in p.special) for v in q.vertices)
        arrs = sorted((idx[("v", a.source)], idx[("v", a.target)], idx[("a", a.name)]) for a in q.arrows)
        rels = sorted((idx[("a", a)], idx[("a", b)]) for a, b in p.relations)
        return (tuple(verts), tuple(arrs), tuple(rels))

    best = None

    def search(colors):
        nonlocal best
        cells: dict = {}
        for x, c in colors.items():
            cells.setdefault(c, []).append(x)
        big = [c for c, xs in cells.items() if len(xs) > 1]
        if not big:
            code = encode(colors)
            if best is None or code < best:
                best = code
            return
        c = min(big)
        for x in cells[c]:
            forced = {y: 2 * k for y, k in colors.items()}
            forced[x] = 2 * c - 1
            search(_refine(forced, nbrs))

    search(start)
    return best
