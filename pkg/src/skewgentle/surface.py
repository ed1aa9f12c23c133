"""Marked ribbon graphs, orbifold dissections, polygons and the dual graph.

Half-edges are integers.  A corner is named by its first half-edge ``h`` and
spans ``(h, sigma(h))``.  The corner at ``m(v)`` is the boundary segment; every
other corner at an ordinary vertex is an arrow, and the single corner of an
orbifold leaf is a special loop.  The face walk sends a corner ``h`` to the
corner ``iota(sigma(h))``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import AlgebraPresentation, Quiver, StructuralError, derived_presentations, op_name


class ExceptionalDissection(ValueError):
    """The dissection of the two-vertex exceptional algebra."""


@dataclass
class RibbonComplex:
    vertex_of: dict[int, str]
    iota: dict[int, int]
    sigma: dict[int, int]
    marking: dict[str, int]
    edge_label: dict[int, str]
    orbifold: set[str] = field(default_factory=set)
    corner_label: dict[int, str] = field(default_factory=dict)
    vertex_label: dict[str, str] = field(default_factory=dict)
    vertex_order: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.vertex_order:
            self.vertex_order = list(dict.fromkeys(self.vertex_of[h] for h in sorted(self.vertex_of)))
        self.check()

    # -- structure ------------------------------------------------------

    def check(self):
        hs = set(self.vertex_of)
        if set(self.iota) != hs or set(self.sigma) != hs:
            raise StructuralError("iota and sigma must be defined on every half-edge")
        for h in hs:
            if self.iota[h] == h or self.iota[self.iota[h]] != h:
                raise StructuralError("iota must be a fixed-point-free involution")
            if self.vertex_of[self.sigma[h]] != self.vertex_of[h]:
                raise StructuralError("sigma must preserve vertices")
            if self.edge_label[h] != self.edge_label[self.iota[h]]:
                raise StructuralError("edge labels must agree on both half-edges")
        if sorted(self.sigma.values()) != sorted(hs):
            raise StructuralError("sigma must be a permutation")
        for v in self.orbifold:
            if len(self.half_edges_at(v)) != 1:
                raise StructuralError(f"orbifold point {v} must have valency one")
            if v in self.marking:
                raise StructuralError(f"orbifold point {v} cannot be marked")
        for v, h in self.marking.items():
            if self.vertex_of[h] != v:
                raise StructuralError(f"marking of {v} is not at {v}")

    @property
    def vertices(self) -> list[str]:
        return list(self.vertex_order)

    def half_edges_at(self, v: str) -> list[int]:
        """Half-edges at ``v`` in linear order, starting after the marking."""
        at = [h for h in self.vertex_of if self.vertex_of[h] == v]
        if not at:
            return []
        start = self.sigma[self.marking[v]] if v in self.marking else min(at)
        out = [start]
        while self.sigma[out[-1]] != start:
            out.append(self.sigma[out[-1]])
        return out

    def position(self, h: int) -> int:
        return self.half_edges_at(self.vertex_of[h]).index(h)

    def edges(self) -> list[str]:
        return list(dict.fromkeys(self.edge_label[h] for h in sorted(self.edge_label)))

    def halves(self, label: str) -> tuple[int, int]:
        hs = sorted(h for h, lab in self.edge_label.items() if lab == label)
        return hs[0], hs[1]

    def is_orbifold_half(self, h: int) -> bool:
        return self.vertex_of[h] in self.orbifold

    def special_half(self, label: str) -> int | None:
        """Non-leaf half-edge of a special edge."""
        a, b = self.halves(label)
        if self.is_orbifold_half(a):
            return b
        if self.is_orbifold_half(b):
            return a
        return None

    def special_edges(self) -> list[str]:
        return [self.edge_label[h] for v in self.orbifold for h in self.half_edges_at(v)]

    def iota_prime(self, h: int) -> int:
        """iota with special edges folded: the non-leaf half is glued to itself."""
        j = self.iota[h]
        return h if self.is_orbifold_half(j) else j

    def corner_kind(self, h: int) -> str:
        v = self.vertex_of[h]
        if v in self.orbifold:
            return "orbifold"
        if self.marking.get(v) == h:
            return "marked"
        return "arrow"

    def arrow_name(self, h: int) -> str:
        return self.corner_label.get(h, f"x{h}")

    def face_next(self, h: int) -> int:
        return self.iota[self.sigma[h]]

    def faces(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for h in sorted(self.vertex_of):
            if h in seen:
                continue
            orbit = [h]
            seen.add(h)
            nxt = self.face_next(h)
            while nxt != h:
                orbit.append(nxt)
                seen.add(nxt)
                nxt = self.face_next(nxt)
            out.append(orbit)
        return out

    def copy(self) -> "RibbonComplex":
        return RibbonComplex(dict(self.vertex_of), dict(self.iota), dict(self.sigma), dict(self.marking),
                             dict(self.edge_label), set(self.orbifold), dict(self.corner_label),
                             dict(self.vertex_label), list(self.vertex_order))

    # -- canonical forms --------------------------------------------------

    def labelled_form(self) -> tuple:
        """Multiset of (edge labels in linear order, orbifold, marked) per vertex."""
        rows = []
        for v in self.vertices:
            labs = tuple(self.edge_label[h] for h in self.half_edges_at(v))
            if v not in self.marking:
                labs = min(labs[k:] + labs[:k] for k in range(len(labs))) if labs else labs
            rows.append((labs, v in self.orbifold, v in self.marking))
        return tuple(sorted(rows))

    def canonical_form(self) -> tuple:
        """Label-free canonical code: minimum over root half-edges of a traversal code."""
        best = None
        for root in sorted(self.vertex_of):
            code = self._code_from(root)
            if best is None or code < best:
                best = code
        return best or ()

    def _code_from(self, root: int) -> tuple:
        num = {root: 0}
        order = [root]
        k = 0
        while k < len(order):
            h = order[k]
            for nb in (self.sigma[h], self.iota[h]):
                if nb not in num:
                    num[nb] = len(order)
                    order.append(nb)
            k += 1
        if len(order) != len(self.vertex_of):
            # disconnected: append remaining components deterministically
            return (("disconnected", len(self.vertex_of)),)
        code = []
        for h in order:
            v = self.vertex_of[h]
            code.append((num[self.sigma[h]], num[self.iota[h]], v in self.orbifold, self.marking.get(v) == h))
        return tuple(code)


# ------------------------------------------------------------------ builders


def assemble(vertex_specs: list[dict], orbifold: Iterable[str] = ()) -> RibbonComplex:
    """Build from specs ``{"id", "label", "edges": [edge labels in linear order],
    "corners": [names of corners after each half-edge], "marked": bool}``.

    Each edge label must occur exactly twice overall.  For a marked vertex the
    last listed half-edge is the marking.
    """
    vertex_of, sigma, marking, edge_label, corner = {}, {}, {}, {}, {}
    seen: dict[str, list[int]] = {}
    vlabel, vorder = {}, []
    h = 0
    for spec in vertex_specs:
        v = spec["id"]
        vorder.append(v)
        vlabel[v] = spec.get("label", v)
        hs = []
        for k, lab in enumerate(spec["edges"]):
            vertex_of[h] = v
            edge_label[h] = lab
            seen.setdefault(lab, []).append(h)
            names = spec.get("corners")
            if names and names[k] is not None:
                corner[h] = names[k]
            hs.append(h)
            h += 1
        for a, b in zip(hs, hs[1:] + hs[:1]):
            sigma[a] = b
        if spec.get("marked", True) and hs:
            marking[v] = hs[-1]
    iota = {}
    for lab, pair in seen.items():
        if len(pair) != 2:
            raise StructuralError(f"edge {lab} has {len(pair)} half-edges")
        iota[pair[0]], iota[pair[1]] = pair[1], pair[0]
    return RibbonComplex(vertex_of, iota, sigma, marking, edge_label, set(orbifold), corner, vlabel, vorder)


def _pair_half_edges(quiver: Quiver, relations: frozenset, special: frozenset = frozenset()):
    """Per Q-vertex: exactly two records (in-arrow, out-arrow), padding with empties."""
    records: dict[str, list[list]] = {}
    for i in quiver.vertices:
        ins = [a.name for a in quiver.incoming(i)]
        outs = [a.name for a in quiver.outgoing(i)]
        recs = []
        used = set()
        for a in ins:
            partner = [b for b in outs if (a, b) not in relations and b not in used]
            if len(partner) > 1:
                raise StructuralError(f"arrow {a} has two non-relation successors")
            if partner:
                used.add(partner[0])
                recs.append([a, partner[0]])
            else:
                recs.append([a, None])
        recs += [[None, b] for b in outs if b not in used]
        if len(recs) > 2:
            raise StructuralError(f"vertex {i} meets more than two maximal paths")
        while len(recs) < 2:
            recs.append([None, None])
        if i in special and [None, None] not in recs:
            raise StructuralError(f"special vertex {i} has no free half-edge")
        records[i] = recs
    return records


def _ribbon_from_relations(quiver: Quiver, relations, special: frozenset = frozenset()) -> RibbonComplex:
    rels = frozenset(relations)
    records = _pair_half_edges(quiver, rels, special)
    by_in = {}
    for i, recs in records.items():
        for k, (a, b) in enumerate(recs):
            if a is not None:
                by_in[a] = (i, k)
    specs = []
    orb = []
    visited = set()

    def chain_from(i, k):
        seq = [(i, k)]
        visited.add((i, k))
        while True:
            out = records[seq[-1][0]][seq[-1][1]][1]
            if out is None:
                return seq, False
            nxt = by_in[out]
            if nxt == seq[0]:
                return seq, True
            seq.append(nxt)
            visited.add(nxt)

    for i in quiver.vertices:
        for k, (a, b) in enumerate(records[i]):
            if a is None and (i, k) not in visited:
                if b is None:
                    visited.add((i, k))
                    if i in special:
                        vid = f"o:{i}"
                        orb.append(vid)
                        specs.append({"id": vid, "label": f"e{i}", "edges": [i], "corners": [f"eps_{i}"],
                                      "marked": False})
                    else:
                        specs.append({"id": f"e:{i}:{k}", "label": f"e{i}", "edges": [i], "corners": [None]})
                    continue
                seq, _ = chain_from(i, k)
                arrows = [records[j][kk][1] for j, kk in seq[:-1]]
                specs.append({"id": "p:" + ".".join(arrows), "label": "".join(arrows),
                              "edges": [j for j, _ in seq], "corners": arrows + [None]})
    for i in quiver.vertices:
        for k, _ in enumerate(records[i]):
            if (i, k) not in visited:
                seq, closed = chain_from(i, k)
                arrows = [records[j][kk][1] for j, kk in seq]
                specs.append({"id": "c:" + ".".join(arrows), "label": "".join(arrows),
                              "edges": [j for j, _ in seq], "corners": arrows, "marked": False})
    _dedupe_ids(specs)
    return assemble(specs, orb)


def _dedupe_ids(specs):
    count = Counter(s["id"] for s in specs)
    seen = Counter()
    for s in specs:
        if count[s["id"]] > 1:
            seen[s["id"]] += 1
            s["id"] = f"{s['id']}#{seen[s['id']]}"


def ribbon_graph_of_gentle(p: AlgebraPresentation) -> RibbonComplex:
    """Marked ribbon graph of the gentle algebra given by ``p`` (special loops ignored)."""
    return _ribbon_from_relations(p.quiver, p.relations)


def ribbon_graph_by_maximal_paths(p: AlgebraPresentation, max_len: int = 64) -> dict[tuple, tuple]:
    """The vertex data of the gentle ribbon graph read off maximal and trivial paths.

    Returns {path (tuple of arrows, or ("e", i)): tuple of Q-vertices in linear order}
    as a multiset-compatible dict of counts keyed by (path, order).
    """
    q = p.quiver
    rels = p.relation_set()
    out: Counter = Counter()

    def extendable_left(w):
        return any((a.name, w[0]) not in rels for a in q.incoming(q.arrow(w[0]).source))

    def go(w):
        if len(w) > max_len:
            raise StructuralError("unbounded paths: ideal is not admissible")
        nxt = [b.name for b in q.outgoing(q.arrow(w[-1]).target) if (w[-1], b.name) not in rels]
        if not nxt:
            verts = [q.arrow(w[0]).source] + [q.arrow(a).target for a in w]
            out[(tuple(w), tuple(verts))] += 1
        for b in nxt:
            go(w + [b])

    for a in q.arrows:
        if not extendable_left([a.name]):
            go([a.name])
    for i in q.vertices:
        ins, outs = q.incoming(i), q.outgoing(i)
        n = len(ins) + len(outs)
        if n == 1 or (len(ins) == 1 and len(outs) == 1 and (ins[0].name, outs[0].name) not in rels):
            out[(("e", i), (i,))] += 1
        elif n == 0:
            out[(("e", i), (i,))] += 2
    return dict(out)


def ribbon_vertex_data(r: RibbonComplex) -> dict[tuple, int]:
    """Same shape as ``ribbon_graph_by_maximal_paths`` for a constructed ribbon graph."""
    out: Counter = Counter()
    for v in r.vertices:
        hs = r.half_edges_at(v)
        labs = tuple(r.edge_label[h] for h in hs)
        if len(hs) == 1 and r.corner_kind(hs[0]) != "arrow":
            out[(("e", labs[0]), labs)] += 1
        else:
            out[(tuple(r.arrow_name(h) for h in hs[:-1]), labs)] += 1
    return dict(out)


def generalised_ribbon_graph(p: AlgebraPresentation) -> RibbonComplex:
    """Direct construction: ribbon graph of A_plus with the free half-edge at each
    special vertex turned into an unmarked orbifold leaf."""
    _, aplus = derived_presentations(p)
    return _ribbon_from_relations(p.quiver, aplus.relations, p.special)


def local_replacement(r: RibbonComplex, special: Iterable[str]) -> RibbonComplex:
    """Collapse the boundary digon at each special edge of a gentle ribbon graph."""
    g = r.copy()
    for lab in special:
        a, b = g.halves(lab)
        cand = []
        for ha, hb in ((a, b), (b, a)):
            va, vb = g.vertex_of[ha], g.vertex_of[hb]
            if g.marking.get(va) == ha and vb in g.marking and g.sigma[g.marking[vb]] == hb:
                cand.append((len(g.half_edges_at(va)) == 1, ha, hb))
        if not cand:
            raise StructuralError(f"special edge {lab} does not bound a boundary digon")
        _, ha, hb = min(cand)
        va, vb = g.vertex_of[ha], g.vertex_of[hb]
        if va == vb:
            raise StructuralError(f"special edge {lab} is a loop")
        seq_a = g.half_edges_at(va)
        seq_b = g.half_edges_at(vb)
        k = seq_b.index(hb)
        after_b = seq_b[k + 1:] + seq_b[:k]
        vb_leaf = not after_b
        merged = seq_a + after_b
        for x, y in zip(merged, merged[1:] + merged[:1]):
            g.sigma[x] = y
        for x in merged:
            g.vertex_of[x] = va
        new_mark = g.marking[vb] if not vb_leaf else ha
        del g.marking[vb]
        g.marking[va] = new_mark
        oid = f"o:{lab}"
        g.vertex_of[hb] = oid
        g.sigma[hb] = hb
        g.orbifold.add(oid)
        g.corner_label[hb] = f"eps_{lab}"
        g.vertex_order = [v for v in g.vertex_order if v != vb] + [oid]
        g.vertex_label[oid] = f"e{lab}"
    g.check()
    return g


# ------------------------------------------------------------------ polygons


@dataclass(frozen=True)
class Polygon:
    corners: tuple[int, ...]
    edges: tuple[str, ...]
    boundary: bool
    orbifold_points: tuple[str, ...]
    departures: tuple[int, ...]

    @property
    def internal_edges(self) -> int:
        return len(self.edges)

    @property
    def degenerate(self) -> bool:
        return bool(self.orbifold_points)

    def as_dict(self) -> dict:
        return {"edges": list(self.edges), "boundary_segments": int(self.boundary),
                "degenerate": self.degenerate, "orbifold": list(self.orbifold_points),
                "n": self.internal_edges}


@dataclass
class PolygonDecomposition:
    polygons: list[Polygon]

    def interior(self) -> list[Polygon]:
        return [p for p in self.polygons if not p.boundary]

    def boundary(self) -> list[Polygon]:
        return [p for p in self.polygons if p.boundary]


def _polygon(r: RibbonComplex, lead: int | None, run: list[int]) -> Polygon:
    corners = ([lead] if lead is not None else []) + run
    deps = [r.sigma[c] for c in corners if r.corner_kind(c) != "orbifold"]
    edges = tuple(r.edge_label[d] for d in deps)
    orb = tuple(r.vertex_of[c] for c in run if r.corner_kind(c) == "orbifold")
    return Polygon(tuple(corners), edges, lead is not None, orb, tuple(deps))


def polygon_decomposition(r: RibbonComplex) -> PolygonDecomposition:
    polys = []
    for face in r.faces():
        marks = [k for k, c in enumerate(face) if r.corner_kind(c) == "marked"]
        if not marks:
            polys.append(_polygon(r, None, face))
            continue
        n = len(face)
        for idx, k in enumerate(marks):
            nxt = marks[(idx + 1) % len(marks)]
            run = []
            j = (k + 1) % n
            while j != nxt:
                run.append(face[j])
                j = (j + 1) % n
            polys.append(_polygon(r, face[k], run))
    return PolygonDecomposition(polys)


# ------------------------------------------------------------------ topology


@dataclass(frozen=True)
class Topology:
    genus: int
    boundary_components: int
    punctures: int
    orbifold_points: int
    euler_characteristic: int

    def as_dict(self) -> dict:
        return {"genus": self.genus, "boundary": self.boundary_components, "punctures": self.punctures,
                "orbifold": self.orbifold_points, "euler": self.euler_characteristic}


def topology(r: RibbonComplex) -> Topology:
    faces = r.faces()
    v, e, f = len(r.vertices), len(r.edges()), len(faces)
    chi = v - e
    two_g = 2 - chi - f
    if two_g < 0 or two_g % 2:
        raise StructuralError("inconsistent ribbon data")
    marked_faces = sum(any(r.corner_kind(c) == "marked" for c in face) for face in faces)
    unmarked = sum(1 for x in r.vertices if x not in r.marking and x not in r.orbifold)
    punctures = f - marked_faces + unmarked
    g = two_g // 2
    return Topology(g, marked_faces, punctures, len(r.orbifold), 2 - 2 * g - marked_faces - punctures)


def cell_counts(r: RibbonComplex, dec: PolygonDecomposition | None = None) -> dict:
    """Counts for the cell structure cut out by the dissection.

    Boundary polygons are discs; interior polygons are punctured discs and so
    contribute nothing to the Euler characteristic.  Boundary components are
    counted by chaining boundary segments polygon by polygon.
    """
    dec = dec or polygon_decomposition(r)
    points = len(r.vertices)
    segments = [p.corners[0] for p in dec.boundary()]
    chi = points - len(r.edges()) - len(segments) + len(dec.boundary())
    parent = {s: s for s in segments}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in dec.boundary():
        # the run after a boundary segment ends where the next boundary segment starts
        last = p.corners[-1]
        c = r.face_next(last)
        if c in parent:
            parent[find(p.corners[0])] = find(c)
    bdry = len({find(s) for s in segments})
    return {"chi": chi, "boundary": bdry, "interior": len(dec.interior()),
            "segments": len(segments), "points": points}


# ------------------------------------------------------------------ dissection


@dataclass
class OrbifoldDissection:
    ribbon: RibbonComplex
    decomposition: PolygonDecomposition
    topology: Topology

    @classmethod
    def of(cls, r: RibbonComplex) -> "OrbifoldDissection":
        return cls(r, polygon_decomposition(r), topology(r))


def dissection_of(p: AlgebraPresentation) -> OrbifoldDissection:
    return OrbifoldDissection.of(generalised_ribbon_graph(p))


def dual_graph(d: OrbifoldDissection | RibbonComplex) -> OrbifoldDissection:
    r = d.ribbon if isinstance(d, OrbifoldDissection) else d
    dec = polygon_decomposition(r)
    vertex_of, sigma, iota, marking, edge_label, corner = {}, {}, {}, {}, {}, {}
    vlabel, vorder, orb = {}, [], set()
    for k, poly in enumerate(dec.polygons):
        vid = f"P{k}"
        vorder.append(vid)
        vlabel[vid] = "poly(" + ",".join(poly.edges) + ")"
        deps = list(poly.departures)
        lin = deps[::-1]
        for x, y in zip(lin, lin[1:] + lin[:1]):
            sigma[x] = y
        for x in deps:
            vertex_of[x] = vid
            edge_label[x] = r.edge_label[x]
        if poly.boundary:
            marking[vid] = deps[0]
        for j in range(1, len(deps)):
            # dual corner (x_{j+1}, x_j) reverses the corner between the two crossings
            g_corner = r.iota_prime(deps[j - 1])
            corner[deps[j]] = op_name(r.arrow_name(g_corner))
        if not poly.boundary and deps:
            corner[deps[0]] = op_name(r.arrow_name(r.iota_prime(deps[-1])))
    for h in list(vertex_of):
        j = r.iota[h]
        if r.is_orbifold_half(j):
            o = r.vertex_of[j]
            vertex_of[j] = o
            sigma[j] = j
            edge_label[j] = r.edge_label[j]
            corner[j] = r.arrow_name(j)
            orb.add(o)
            vorder.append(o)
            vlabel[o] = r.vertex_label.get(o, o)
        iota[h] = j
        iota[j] = h
    dual = RibbonComplex(vertex_of, iota, sigma, marking, edge_label, orb, corner, vlabel, vorder)
    return OrbifoldDissection.of(dual)


def algebra_of_dissection(d: OrbifoldDissection | RibbonComplex, check_exceptional: bool = True) -> AlgebraPresentation:
    r = d.ribbon if isinstance(d, OrbifoldDissection) else d
    arrows = []
    for v in r.vertices:
        if v in r.orbifold:
            continue
        for h in r.half_edges_at(v):
            if r.corner_kind(h) == "arrow":
                arrows.append((r.arrow_name(h), r.edge_label[h], r.edge_label[r.sigma[h]]))
    special = frozenset(r.edge_label[h] for v in r.orbifold for h in r.half_edges_at(v))
    rels = []
    for face in r.faces():
        seq = [c for c in face if r.corner_kind(c) != "orbifold"]
        n = len(seq)
        if n == 0:
            continue
        for k in range(n):
            a, b = seq[k], seq[(k + 1) % n]
            if n == 1 and a == b and r.corner_kind(a) == "arrow":
                rels.append((r.arrow_name(a), r.arrow_name(a)))
            elif n > 1 and r.corner_kind(a) == "arrow" and r.corner_kind(b) == "arrow":
                rels.append((r.arrow_name(a), r.arrow_name(b)))
    q = Quiver.build(r.edges(), arrows)
    p = AlgebraPresentation(q, tuple(rels), special)
    if check_exceptional and len(q.vertices) == 2 and len(q.arrows) == 1 and special:
        raise ExceptionalDissection("two vertices, one arrow and special loops: the exceptional algebra")
    return p


# ------------------------------------------------------------------ export


def to_dot(r: RibbonComplex, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in r.vertices:
        label = r.vertex_label.get(v, v).replace('"', "'")
        if v in r.orbifold:
            lines.append(f'  "{v}" [shape=point, orbifold=true, color=red, xlabel="x"];')
        elif v in r.marking:
            lines.append(f'  "{v}" [label="{label}", marked=true];')
        else:
            lines.append(f'  "{v}" [label="{label}", shape=doublecircle, puncture=true];')
    done = set()
    for h in sorted(r.vertex_of):
        if h in done:
            continue
        j = r.iota[h]
        done |= {h, j}
        special = r.is_orbifold_half(h) or r.is_orbifold_half(j)
        style = ", style=dashed, special=true" if special else ""
        lines.append(f'  "{r.vertex_of[h]}" -- "{r.vertex_of[j]}" [label="{r.edge_label[h]}"{style}];')
    lines.append("}")
    return "\n".join(lines)


def to_json(r: RibbonComplex) -> dict:
    verts = []
    for v in r.vertices:
        verts.append({"id": v, "label": r.vertex_label.get(v, v), "orbifold": v in r.orbifold,
                      "marked": v in r.marking,
                      "half_edges": [{"id": h, "edge": r.edge_label[h], "corner": r.corner_label.get(h)}
                                     for h in r.half_edges_at(v)]})
    return {"vertices": verts}


def from_json(data: dict) -> RibbonComplex:
    try:
        vertex_of, sigma, marking, edge_label, corner, vlabel, vorder, orb = {}, {}, {}, {}, {}, {}, [], set()
        for vd in data["vertices"]:
            v = str(vd["id"])
            vorder.append(v)
            vlabel[v] = vd.get("label", v)
            hs = [int(x["id"]) for x in vd["half_edges"]]
            for x in vd["half_edges"]:
                h = int(x["id"])
                vertex_of[h] = v
                edge_label[h] = str(x["edge"])
                if x.get("corner") is not None:
                    corner[h] = str(x["corner"])
            for a, b in zip(hs, hs[1:] + hs[:1]):
                sigma[a] = b
            if vd.get("orbifold"):
                orb.add(v)
            elif vd.get("marked", True) and hs:
                marking[v] = hs[-1]
        pairs: dict[str, list[int]] = {}
        for h, lab in edge_label.items():
            pairs.setdefault(lab, []).append(h)
        iota = {}
        for lab, hs in pairs.items():
            if len(hs) != 2:
                raise StructuralError(f"edge {lab} needs exactly two half-edges")
            iota[hs[0]], iota[hs[1]] = hs[1], hs[0]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, StructuralError):
            raise
        raise StructuralError(f"malformed dissection: {exc}") from exc
    return RibbonComplex(vertex_of, iota, sigma, marking, edge_label, orb, corner, vlabel, vorder)
