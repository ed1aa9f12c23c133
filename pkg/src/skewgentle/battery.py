"""Property battery run over a corpus of algebras."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra import AlgebraPresentation, admissible_presentation, canonical_form, derived_presentations
from .complexes import BandParameter, band_complex, d_squared_residue, expected_ranks, ranks, string_complex
from .groebner import certify_strong_koszul, dual_matches_triple
from .invariants import cartan_determinant_check, gorenstein_dimension, saturated_path_oracle
from .surface import algebra_of_dissection, cell_counts, dissection_of, dual_graph
from .words import check_round_trip, classify_symmetry, iter_words


@dataclass
class DualCheck:
    dual_algebra: AlgebraPresentation
    triple: AlgebraPresentation
    signs: dict | None

    @property
    def match(self) -> bool:
        return self.signs is not None and canonical_form(self.dual_algebra) == canonical_form(self.triple)


def dual_coherence(p: AlgebraPresentation) -> DualCheck:
    """Algebra of the dual dissection against the collapsed quadratic dual."""
    a = algebra_of_dissection(dual_graph(dissection_of(p)), check_exceptional=False)
    triple, signs = dual_matches_triple(admissible_presentation(p))
    return DualCheck(a, triple, signs)


def complex_failures(w, p: AlgebraPresentation, degrees=(1,)) -> list[str]:
    """d^2 and rank checks for the complexes of an asymmetric finite string or band."""
    if w.right_tail or w.left_tail or classify_symmetry(w).classification == "symmetric":
        return []
    out = []
    if not w.band:
        cs = [(string_complex(w, p), 1)]
    else:
        cs = [(band_complex(w, BandParameter((-2,) + (0,) * (k - 1) + (1,)), p), k) for k in degrees]
    for c, k in cs:
        if d_squared_residue(c, p):
            out.append(f"d^2 != 0 for {w.text()} (degree {k})")
        if ranks(c) != expected_ranks(w, p, k):
            out.append(f"ranks differ for {w.text()} (degree {k})")
    return out


@dataclass
class BatteryResult:
    index: int
    words: int = 0
    complexes: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"index": self.index, "words": self.words, "complexes": self.complexes,
                "failures": self.failures, "seconds": round(self.seconds, 3)}


def run_battery(index: int, p: AlgebraPresentation, max_letters: int = 4,
                complexes: bool = True) -> BatteryResult:
    t0 = time.perf_counter()
    res = BatteryResult(index)
    ap = admissible_presentation(p)
    cert, _ = certify_strong_koszul(ap)
    if not cert.certified:
        res.failures.append("strong Koszul certificate fails")
    if not dual_coherence(p).match:
        res.failures.append("dual dissection and quadratic dual disagree")
    d = dissection_of(p)
    lam, _ = derived_presentations(p)
    if gorenstein_dimension(d) != saturated_path_oracle(lam):
        res.failures.append("Gorenstein dimension disagrees with the saturated-path oracle")
    try:
        cart = cartan_determinant_check(p)
        if not (cart.match and cart.match_gentle):
            res.failures.append(f"q-Cartan determinant {cart.det} vs product {cart.product} vs {cart.det_gentle}")
    except ValueError as exc:
        res.failures.append(f"q-Cartan: {exc}")
    tp, cc = d.topology, cell_counts(d.ribbon)
    if cc["chi"] != 2 - 2 * tp.genus - tp.boundary_components - tp.punctures:
        res.failures.append("Euler characteristic identity fails")
    for w in iter_words(p, max_letters):
        res.words += 1
        why = check_round_trip(w, p)
        if why:
            res.failures.append(why)
        if complexes and not (w.right_tail or w.left_tail):
            bad = complex_failures(w, p)
            res.complexes += 1
            res.failures.extend(bad)
    res.seconds = time.perf_counter() - t0
    return res
