"""Seeded random skew-gentle algebras built from random orbifold dissections."""
from __future__ import annotations

import random

from .algebra import AlgebraPresentation, StructuralError, canonical_form, validate_skew_gentle
from .surface import ExceptionalDissection, RibbonComplex, algebra_of_dissection, generalised_ribbon_graph

MAX_EDGES = 3


def _connected(vertex_of: dict, iota: dict) -> bool:
    verts = set(vertex_of.values())
    adj: dict = {v: set() for v in verts}
    for h, j in iota.items():
        adj[vertex_of[h]].add(vertex_of[j])
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def random_dissection(rng: random.Random, max_edges: int = MAX_EDGES) -> RibbonComplex | None:
    """A random connected marked ribbon graph with some leaves turned into orbifold points."""
    e = rng.randint(1, max_edges)
    hs = list(range(2 * e))
    rng.shuffle(hs)
    iota = {}
    for k in range(0, 2 * e, 2):
        iota[hs[k]], iota[hs[k + 1]] = hs[k + 1], hs[k]
    order = list(range(2 * e))
    rng.shuffle(order)
    nverts = rng.randint(1, 2 * e)
    cuts = sorted(rng.sample(range(1, 2 * e), nverts - 1)) if nverts > 1 else []
    blocks = [order[a:b] for a, b in zip([0] + cuts, cuts + [2 * e])]
    vertex_of, sigma = {}, {}
    for k, block in enumerate(blocks):
        for a, b in zip(block, block[1:] + block[:1]):
            sigma[a] = b
            vertex_of[a] = f"v{k}"
    if not _connected(vertex_of, iota):
        return None
    orbifold = set()
    blocks = [list(b) for b in blocks]
    for j in range(rng.choice((0, 1, 1, 2, 2, 3))):
        if len(iota) + 2 > 2 * max_edges:
            break
        host = rng.randrange(len(blocks))
        if f"v{host}" in orbifold:
            continue
        h_new, h_leaf = len(iota), len(iota) + 1
        iota[h_new], iota[h_leaf] = h_leaf, h_new
        blocks[host].insert(rng.randrange(len(blocks[host]) + 1), h_new)
        orbifold.add(f"v{len(blocks)}")
        blocks.append([h_leaf])
    vertex_of, sigma = {}, {}
    for k, block in enumerate(blocks):
        for a, b in zip(block, block[1:] + block[:1]):
            sigma[a] = b
            vertex_of[a] = f"v{k}"
    marking = {v: rng.choice(block) for k, block in enumerate(blocks)
               if (v := f"v{k}") not in orbifold}
    labels, corner = {}, {}
    n = 0
    for h in sorted(iota):
        if h not in labels:
            n += 1
            labels[h] = labels[iota[h]] = str(n)
    arrows = 0
    for h in sorted(sigma):
        v = vertex_of[h]
        if v in orbifold or marking.get(v) == h:
            continue
        arrows += 1
        corner[h] = f"a{arrows}"
    try:
        return RibbonComplex(vertex_of, iota, sigma, marking, labels, orbifold, corner)
    except StructuralError:
        return None


def algebra_from(r: RibbonComplex) -> AlgebraPresentation | None:
    """The algebra of ``r`` when it is a finite-dimensional skew-gentle algebra, else None."""
    try:
        p = algebra_of_dissection(r)
    except (ExceptionalDissection, StructuralError):
        return None
    if not validate_skew_gentle(p).ok:
        return None
    try:
        g = generalised_ribbon_graph(p)
    except StructuralError:
        return None
    if any(v not in g.marking and v not in g.orbifold for v in g.vertices):
        return None
    return p


def corpus_generate(seed: int, count: int, max_edges: int = MAX_EDGES,
                    max_tries: int = 200000) -> list[AlgebraPresentation]:
    """``count`` pairwise non-isomorphic algebras, deterministic in ``seed``."""
    if count < 1:
        raise ValueError("count must be positive")
    rng = random.Random(seed)
    out: list[AlgebraPresentation] = []
    seen = set()
    for _ in range(max_tries):
        if len(out) == count:
            break
        r = random_dissection(rng, max_edges)
        if r is None:
            continue
        p = algebra_from(r)
        if p is None:
            continue
        key = canonical_form(p)
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return out
