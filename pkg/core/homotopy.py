"""
Polynomial homotopies A → A[t,dt] and the decision whether a self-map of a
minimal CDGA is homotopic to the identity.

A homotopy is written Φ(h) = F(h) + dt·G(h), with F(t) an algebra map and
G an F-derivation of degree −1:
    G(h₁h₂) = G(h₁)F(h₂) + (−1)^{|h₁|} F(h₁)G(h₂).
Φ is a dga map iff F∘d = d∘F and ∂_t F = G∘d + d∘G.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence

from .cdga import DgaMorphism, DgModuleView, FreeCdga
from .derivation_complex import (
    Derivation,
    der_differential,
    derivation_coordinates,
    derivation_from_coordinates,
    derivation_labels,
)
from .errors import AlgebraError, NonNilpotentError, NotAutomorphismError, NotMinimalError
from .graded_algebra import Element, Monomial
from .linear_algebra import is_invertible, matrix_from_columns, solve_linear

logger = logging.getLogger(__name__)

TPolynomial = List[Element]


def _trim(poly: Sequence[Element]) -> TPolynomial:
    result = list(poly)
    while result and result[-1].is_zero:
        result.pop()
    return result


def poly_add(left: Sequence[Element], right: Sequence[Element]) -> TPolynomial:
    size = max(len(left), len(right))
    return _trim([
        (left[k] if k < len(left) else Element()) + (right[k] if k < len(right) else Element())
        for k in range(size)
    ])


def poly_scale(poly: Sequence[Element], factor) -> TPolynomial:
    return _trim([c.scale(factor) for c in poly])


def poly_mul(left: Sequence[Element], right: Sequence[Element]) -> TPolynomial:
    if not left or not right:
        return []
    result = [Element() for _ in range(len(left) + len(right) - 1)]
    for i, a in enumerate(left):
        if a.is_zero:
            continue
        for j, b in enumerate(right):
            if not b.is_zero:
                result[i + j] = result[i + j] + a * b
    return _trim(result)


def poly_derivative(poly: Sequence[Element]) -> TPolynomial:
    return _trim([poly[k].scale(k) for k in range(1, len(poly))])


def poly_evaluate(poly: Sequence[Element], t) -> Element:
    total = Element()
    value = Fraction(t)
    for k, coefficient in enumerate(poly):
        total = total + coefficient.scale(value ** k)
    return total


def poly_str(poly: Sequence[Element]) -> str:
    pieces = []
    for k, coefficient in enumerate(poly):
        if coefficient.is_zero:
            continue
        power = "" if k == 0 else ("·t" if k == 1 else f"·t^{k}")
        pieces.append(f"({coefficient}){power}")
    return " + ".join(pieces) or "0"


class PolynomialHomotopy:
    """Φ = F(t) + dt·G(t) given on generators by polynomial coefficients in t"""

    def __init__(self, algebra: FreeCdga, F: Mapping[str, Sequence[Element]], G: Mapping[str, Sequence[Element]]):
        self.algebra = algebra
        self.F: Dict[str, TPolynomial] = {}
        self.G: Dict[str, TPolynomial] = {}
        for gen in algebra.generators:
            self.F[gen.id] = _trim(F.get(gen.id, []))
            self.G[gen.id] = _trim(G.get(gen.id, []))

    def apply_F(self, element: Element) -> TPolynomial:
        total: TPolynomial = []
        for monomial, coefficient in element.items():
            image: TPolynomial = [Element.one()]
            for gen in monomial.word():
                image = poly_mul(image, self.F[gen.id])
            total = poly_add(total, poly_scale(image, coefficient))
        return total

    def apply_G(self, element: Element) -> TPolynomial:
        total: TPolynomial = []
        for monomial, coefficient in element.items():
            word = monomial.word()
            passed = 0
            for position, gen in enumerate(word):
                if self.G[gen.id]:
                    term = poly_mul(
                        poly_mul(self.apply_F(Element.monomial(Monomial.from_sorted_word(word[:position]))), self.G[gen.id]),
                        self.apply_F(Element.monomial(Monomial.from_sorted_word(word[position + 1:]))),
                    )
                    sign = -1 if passed % 2 else 1
                    total = poly_add(total, poly_scale(term, sign * coefficient))
                passed += gen.degree
        return total

    def at(self, t) -> DgaMorphism:
        return DgaMorphism(
            self.algebra, self.algebra,
            {gen_id: poly_evaluate(poly, t) for gen_id, poly in self.F.items()},
            name=f"F({t})",
        )

    def e0(self) -> DgaMorphism:
        return self.at(0)

    def e1(self) -> DgaMorphism:
        return self.at(1)

    def describe(self) -> Dict[str, Dict[str, str]]:
        return {
            "F": {gen_id: poly_str(poly) for gen_id, poly in self.F.items()},
            "G": {gen_id: poly_str(poly) for gen_id, poly in self.G.items() if poly},
        }


@dataclass
class HomotopyReport:
    valid: bool
    violations: List[str] = field(default_factory=list)


def check_homotopy(homotopy: PolynomialHomotopy) -> HomotopyReport:
    """Check the four dga-map conditions on generators and generator pairs"""
    algebra = homotopy.algebra
    violations: List[str] = []

    for gen in algebra.generators:
        for k, coefficient in enumerate(homotopy.F[gen.id]):
            if not coefficient.is_zero and coefficient.degrees() != [gen.degree]:
                violations.append(f"degree: t^{k} coefficient of F({gen.id}) is {coefficient}")
        for k, coefficient in enumerate(homotopy.G[gen.id]):
            if not coefficient.is_zero and coefficient.degrees() != [gen.degree - 1]:
                violations.append(f"degree: t^{k} coefficient of G({gen.id}) is {coefficient}")

    gens = algebra.generators
    for i, first in enumerate(gens):
        for second in gens[i:]:
            pair = algebra.element(first.id) * algebra.element(second.id)
            left_F = homotopy.apply_F(pair)
            right_F = poly_mul(homotopy.F[first.id], homotopy.F[second.id])
            if poly_add(left_F, poly_scale(right_F, -1)):
                violations.append(f"multiplicative: F({first.id}·{second.id}) ≠ F({first.id})F({second.id})")
            left_G = homotopy.apply_G(pair)
            sign = -1 if first.degree % 2 else 1
            right_G = poly_add(
                poly_mul(homotopy.G[first.id], homotopy.F[second.id]),
                poly_scale(poly_mul(homotopy.F[first.id], homotopy.G[second.id]), sign),
            )
            if poly_add(left_G, poly_scale(right_G, -1)):
                violations.append(f"derivation: G({first.id}·{second.id}) breaks the F-derivation rule")

    for gen in gens:
        dg = algebra.d_generator(gen.id)
        F_of_d = homotopy.apply_F(dg)
        d_of_F = [algebra.d(c) for c in homotopy.F[gen.id]]
        if poly_add(F_of_d, poly_scale(d_of_F, -1)):
            violations.append(f"chain map: F(d{gen.id}) ≠ d F({gen.id})")
        dt_F = poly_derivative(homotopy.F[gen.id])
        bracket = poly_add(homotopy.apply_G(dg), [algebra.d(c) for c in homotopy.G[gen.id]])
        if poly_add(dt_F, poly_scale(bracket, -1)):
            violations.append(f"flow: ∂_t F({gen.id}) ≠ G(d{gen.id}) + d G({gen.id})")

    return HomotopyReport(valid=not violations, violations=violations)


def _orbit_bound(algebra: FreeCdga, degree: int) -> int:
    return max(len(algebra.basis(degree)), 1)


def _self_module(algebra: FreeCdga) -> DgModuleView:
    return DgModuleView.identity(algebra)


def exp_homotopy(algebra: FreeCdga, G0: Derivation) -> PolynomialHomotopy:
    """F(t) = exp(t[G₀, d]), G(t) = G₀∘F(t) on generators"""
    if not algebra.is_minimal:
        raise NotMinimalError(f"{algebra.name} is not minimal")
    if G0.degree != -1 or G0.source != algebra:
        raise AlgebraError("G₀ must be a degree −1 derivation of the algebra into itself")
    D = der_differential(G0)
    F: Dict[str, TPolynomial] = {}
    G: Dict[str, TPolynomial] = {}
    for gen in algebra.generators:
        bound = _orbit_bound(algebra, gen.degree)
        orbit = [algebra.element(gen.id)]
        while not orbit[-1].is_zero:
            if len(orbit) > bound:
                raise NonNilpotentError(gen.id, bound)
            orbit.append(D.apply(orbit[-1]))
        orbit.pop()
        F[gen.id] = [term.scale(Fraction(1, factorial(k))) for k, term in enumerate(orbit)]
        G[gen.id] = [G0.apply(c) for c in F[gen.id]]
    logger.info("exp homotopy on %s has t-degree ≤ %d", algebra.name, max((len(p) for p in F.values()), default=0))
    return PolynomialHomotopy(algebra, F, G)


@dataclass
class IdentityDecision:
    """Witness G₀ with F₁ = exp([G₀, d]), or the reason there is none"""
    witness: Optional[Derivation]
    reason: str
    logarithm: Optional[Derivation] = None

    @property
    def is_homotopic(self) -> bool:
        return self.witness is not None


def is_homotopic_to_identity(F1: DgaMorphism) -> IdentityDecision:
    algebra = F1.source
    if F1.target != algebra:
        raise NotAutomorphismError(f"{F1.name} is not a self-map")
    if not algebra.is_minimal:
        raise NotMinimalError(f"{algebra.name} is not minimal")
    violations = F1.check()
    if violations:
        raise AlgebraError(f"{F1.name} is not a dga map: {violations[0]}")
    for degree in algebra.generator_degrees:
        if not is_invertible(F1.linear_part_matrix(degree)):
            raise NotAutomorphismError(f"{F1.name} is not invertible on generators of degree {degree}")

    module = _self_module(algebra)
    logarithm: Dict[str, Element] = {}
    for gen in algebra.generators:
        bound = _orbit_bound(algebra, gen.degree)
        power = algebra.element(gen.id)
        log_value = Element()
        for k in range(1, bound + 2):
            power = F1.apply(power) - power
            if power.is_zero:
                break
            if k > bound:
                return IdentityDecision(None, f"{F1.name} is not unipotent on the orbit of {gen.id}")
            log_value = log_value + power.scale(Fraction((-1) ** (k + 1), k))
        logarithm[gen.id] = log_value
    L = Derivation(algebra, module, 0, logarithm)

    labels = derivation_labels(algebra, module, -1)
    targets = derivation_labels(algebra, module, 0)
    columns = [
        derivation_coordinates(der_differential(Derivation.elementary(algebra, module, -1, label)), targets)
        for label in labels
    ]
    matrix = matrix_from_columns(columns, len(targets))
    solution = solve_linear(matrix, derivation_coordinates(L, targets), len(labels))
    if solution is None:
        return IdentityDecision(None, "log F₁ is not of the form [G₀, d]", logarithm=L)
    witness = derivation_from_coordinates(algebra, module, -1, solution, labels)
    return IdentityDecision(witness, "log F₁ = [G₀, d]", logarithm=L)
