"""Derived invariants read off the dissection, with algebraic cross-checks."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import AdmissiblePresentation, AlgebraPresentation, admissible_presentation
from .groebner import GroebnerBasis, InfiniteDimensional, certify_strong_koszul, is_infinite, normal_form_count
from .surface import OrbifoldDissection, dissection_of


@dataclass(frozen=True)
class QPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = list(int(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c: int) -> "QPolynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, c: int, k: int) -> "QPolynomial":
        return cls((0,) * k + (c,))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, o: "QPolynomial") -> "QPolynomial":
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return QPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, o: "QPolynomial") -> "QPolynomial":
        return self + (-o)

    def __mul__(self, o: "QPolynomial") -> "QPolynomial":
        if self.is_zero() or o.is_zero():
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    out[i + j] += x * y
        return QPolynomial(tuple(out))

    def __pow__(self, k: int) -> "QPolynomial":
        out = QPolynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def exact_div(self, o: "QPolynomial") -> "QPolynomial":
        """Division that must leave no remainder and integer coefficients."""
        if o.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        quot = [Fraction(0)] * max(len(rem) - len(o.coeffs) + 1, 0)
        lead = o.coeffs[-1]
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(o.coeffs) - 1] / lead
            quot[k] = c
            for j, y in enumerate(o.coeffs):
                rem[k + j] -= c * y
        if any(rem) or any(c.denominator != 1 for c in quot):
            raise ArithmeticError("inexact polynomial division")
        return QPolynomial(tuple(int(c) for c in quot))

    def __call__(self, x):
        return sum(c * x ** k for k, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            coef = str(abs(c)) if (abs(c) != 1 or k == 0) else ""
            parts.append(("-" if c < 0 else "+", coef + mono))
        s = "".join(f" {sg} {t}" for sg, t in parts).strip()
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def det_cofactor(m: Sequence[Sequence[QPolynomial]]) -> QPolynomial:
    n = len(m)
    if n == 0:
        return QPolynomial.const(1)
    if n == 1:
        return m[0][0]
    out = QPolynomial()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det_cofactor(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def det_bareiss(m: Sequence[Sequence[QPolynomial]]) -> QPolynomial:
    """Fraction-free elimination over Z[q]."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return QPolynomial.const(1)
    sign = 1
    prev = QPolynomial.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return QPolynomial()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def determinant(m: Sequence[Sequence[QPolynomial]]) -> QPolynomial:
    return det_cofactor(m) if len(m) < 5 else det_bareiss(m)


# ------------------------------------------------------------------ profiles


@dataclass(frozen=True)
class SingularityProfile:
    sizes: tuple[int, ...]

    @property
    def counts(self) -> dict[int, int]:
        return dict(sorted(Counter(self.sizes).items()))

    def is_trivial(self) -> bool:
        return not self.sizes


def _dissection(x) -> OrbifoldDissection:
    return x if isinstance(x, OrbifoldDissection) else dissection_of(x)


def singularity_profile(d: OrbifoldDissection | AlgebraPresentation) -> SingularityProfile:
    d = _dissection(d)
    return SingularityProfile(tuple(sorted(p.internal_edges for p in d.decomposition.interior())))


def saturated_cycles(lam: AlgebraPresentation) -> list[int]:
    """Lengths of the cycles a1..an (up to rotation) whose length-two subpaths,
    including an a1, all lie in I."""
    succ: dict[str, list[str]] = {}
    for a, b in lam.relations:
        succ.setdefault(a, []).append(b)
    out = []
    seen: set[str] = set()
    for a in lam.quiver.arrows:
        if a.name in seen:
            continue
        # follow the relation successor; gentle means it is unique
        path = [a.name]
        while True:
            nxt = succ.get(path[-1], [])
            if len(nxt) != 1:
                break
            if nxt[0] == path[0]:
                out.append(len(path))
                seen.update(path)
                break
            if nxt[0] in path:
                break
            path.append(nxt[0])
    return sorted(out)


def gorenstein_dimension(d: OrbifoldDissection | AlgebraPresentation) -> int:
    d = _dissection(d)
    best = max((p.internal_edges for p in d.decomposition.boundary()), default=1)
    return max(best - 1, 0)


def saturated_path_oracle(lam: AlgebraPresentation) -> int:
    """Longest path of relations a1..an (all a_i a_{i+1} in I) that cannot be
    extended on either side and does not lie on a saturated cycle; 0 without arrows."""
    rels = lam.relation_set()
    on_cycle: set[str] = set()
    succ = {a: b for a, b in rels}
    for a in lam.quiver.arrows:
        x, k = a.name, 0
        while x in succ and k <= len(lam.quiver.arrows):
            x = succ[x]
            k += 1
            if x == a.name:
                on_cycle.add(a.name)
                break
    best = 0
    heads = [a.name for a in lam.quiver.arrows
             if a.name not in on_cycle and not any((b, a.name) in rels for b in succ)]
    for h in heads:
        n, x = 1, h
        while x in succ:
            x = succ[x]
            n += 1
        best = max(best, n)
    return best


# ------------------------------------------------------------------ q-Cartan


def q_cartan(ap: AdmissiblePresentation, g: GroebnerBasis | None = None) -> list[list[QPolynomial]]:
    """c_ij(q) = sum_n dim (e_i A e_j)_n q^n over the vertices of ``ap``."""
    if g is None:
        _, g = certify_strong_koszul(ap)
    if is_infinite(ap, g.tips()):
        raise InfiniteDimensional("the algebra is infinite-dimensional")
    vs = ap.quiver.vertices
    return [[QPolynomial(tuple(normal_form_count(ap, g, i, j))) for j in vs] for i in vs]


@dataclass
class CartanReport:
    det: QPolynomial
    product: QPolynomial
    det_gentle: QPolynomial
    matrix: list[list[QPolynomial]]

    @property
    def match(self) -> bool:
        return self.det == self.product

    @property
    def match_gentle(self) -> bool:
        return self.det == self.det_gentle

    def as_dict(self) -> dict:
        return {"matrix": [[list(c.coeffs) for c in row] for row in self.matrix],
                "det": list(self.det.coeffs), "product": list(self.product.coeffs),
                "det_gentle": list(self.det_gentle.coeffs), "match": self.match,
                "match_gentle": self.match_gentle}


def product_formula(profile: SingularityProfile) -> QPolynomial:
    out = QPolynomial.const(1)
    for k, c in profile.counts.items():
        factor = QPolynomial.const(1) - QPolynomial.monomial((-1) ** k, k)
        out = out * factor ** c
    return out


def cartan_determinant_check(p: AlgebraPresentation) -> CartanReport:
    ap = admissible_presentation(p)
    m = q_cartan(ap)
    lam = admissible_presentation(p.with_special(()))
    dg = determinant(q_cartan(lam))
    return CartanReport(determinant(m), product_formula(singularity_profile(p)), dg, m)


@dataclass
class InvariantReport:
    profile: SingularityProfile
    gorenstein: int
    cartan: CartanReport | None
    cartan_error: str | None = None

    def as_dict(self) -> dict:
        return {"profile": list(self.profile.sizes), "gorenstein": self.gorenstein,
                "cartan": self.cartan.as_dict() if self.cartan else {"error": self.cartan_error}}


def invariants(p: AlgebraPresentation) -> InvariantReport:
    d = dissection_of(p)
    try:
        cart = cartan_determinant_check(p)
        err = None
    except InfiniteDimensional as exc:
        cart, err = None, str(exc)
    return InvariantReport(singularity_profile(d), gorenstein_dimension(d), cart, err)
