"""
The derivation complex Der*(A, M) of a minimal CDGA, its cohomology
H*_AQ(A, M) and the Lie structure given by the commutator of derivations.

Conventions:
    D(θ) = d_M∘θ − (−1)^{|θ|} θ∘d_A
    [θ₁, θ₂] = θ₁∘θ₂ − (−1)^{|θ₁||θ₂|} θ₂∘θ₁
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .cdga import DgaMorphism, DgModuleView, FreeCdga
from .errors import AlgebraError, DegreeError, NotMinimalError, UnknownGeneratorError
from .graded_algebra import Element, Monomial, apply_derivation
from .linear_algebra import (
    CohomologySlice,
    ComplexWindow,
    DegreeWindow,
    EchelonSpan,
    Vector,
    cohomology_window,
    matrix_from_columns,
    solve_linear,
    transpose,
)

logger = logging.getLogger(__name__)

Label = Tuple[str, Monomial]


class Derivation:
    """A degree-d φ-derivation A → M recorded on generators"""

    def __init__(self, source: FreeCdga, module: DgModuleView, degree: int, values: Mapping[str, Element]):
        if module.source != source:
            raise AlgebraError(f"Module {module.name} is not a module over {source.name}")
        self.source = source
        self.module = module
        self.degree = degree
        self.values: Dict[str, Element] = {}
        for gen_id, value in values.items():
            gen = source.generator(gen_id)
            value = module.truncate(value)
            if value.is_zero:
                continue
            if value.degrees() != [gen.degree + degree]:
                raise DegreeError(f"θ({gen_id}) must have degree {gen.degree + degree}, got {value}")
            self.values[gen_id] = value

    @classmethod
    def zero(cls, source: FreeCdga, module: DgModuleView, degree: int) -> "Derivation":
        return cls(source, module, degree, {})

    @classmethod
    def elementary(cls, source: FreeCdga, module: DgModuleView, degree: int, label: Label) -> "Derivation":
        gen_id, monomial = label
        return cls(source, module, degree, {gen_id: Element.monomial(monomial)})

    def value(self, gen_id: str) -> Element:
        if not self.source.has_generator(gen_id):
            raise UnknownGeneratorError(gen_id, self.source.name)
        return self.values.get(gen_id, Element())

    def apply(self, element: Element) -> Element:
        return self.module.truncate(apply_derivation(element, self.values, self.degree, along=self.module.phi))

    __call__ = apply

    @property
    def is_zero(self) -> bool:
        return not self.values

    @property
    def is_endomorphism(self) -> bool:
        return self.module.algebra == self.source and self.module.structure_map == DgaMorphism.identity(self.source)

    def _combine(self, other: "Derivation", factor: int) -> "Derivation":
        if other.degree != self.degree or other.source != self.source:
            raise AlgebraError("Derivations live in different spaces")
        values = dict(self.values)
        for gen_id, value in other.values.items():
            values[gen_id] = values.get(gen_id, Element()) + value.scale(factor)
        return Derivation(self.source, self.module, self.degree, values)

    def __add__(self, other: "Derivation") -> "Derivation":
        return self._combine(other, 1)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self._combine(other, -1)

    def __neg__(self) -> "Derivation":
        return self.scale(-1)

    def scale(self, factor) -> "Derivation":
        return Derivation(self.source, self.module, self.degree, {k: v.scale(factor) for k, v in self.values.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.degree == other.degree and self.values == other.values and self.source == other.source

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.values.items())))

    def describe(self) -> Dict[str, str]:
        return {gen.id: str(self.values[gen.id]) for gen in self.source.generators if gen.id in self.values}

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return ", ".join(f"{k} ↦ {v}" for k, v in self.describe().items())

    def __repr__(self) -> str:
        return f"Derivation(deg {self.degree}: {self})"


def _require_minimal(algebra: FreeCdga):
    if not algebra.is_minimal:
        raise NotMinimalError(
            f"{algebra.name} is not minimal; pass a minimal model to compute André-Quillen cohomology"
        )


def derivation_labels(source: FreeCdga, module: DgModuleView, degree: int) -> List[Label]:
    labels: List[Label] = []
    for gen in source.generators:
        labels.extend((gen.id, m) for m in module.basis(gen.degree + degree))
    return labels


def derivation_space(source: FreeCdga, module: DgModuleView, degree: int) -> List[Derivation]:
    """Elementary φ-derivations of the given degree (one generator ↦ one monomial)"""
    _require_minimal(source)
    return [Derivation.elementary(source, module, degree, label) for label in derivation_labels(source, module, degree)]


def derivation_coordinates(theta: Derivation, labels: Sequence[Label]) -> Vector:
    index = {label: i for i, label in enumerate(labels)}
    vector = [Fraction(0)] * len(labels)
    for gen_id, value in theta.values.items():
        for monomial, coefficient in value.items():
            if (gen_id, monomial) not in index:
                raise DegreeError(f"Value {monomial} of {gen_id} is outside the derivation basis")
            vector[index[(gen_id, monomial)]] = coefficient
    return vector


def derivation_from_coordinates(
    source: FreeCdga, module: DgModuleView, degree: int, vector: Sequence[Fraction], labels: Sequence[Label]
) -> Derivation:
    values: Dict[str, Element] = {}
    for (gen_id, monomial), coefficient in zip(labels, vector):
        if coefficient:
            values[gen_id] = values.get(gen_id, Element()) + Element.monomial(monomial, coefficient)
    return Derivation(source, module, degree, values)


def der_differential(theta: Derivation) -> Derivation:
    """D(θ)(g) = d_M θ(g) − (−1)^{|θ|} θ(d_A g)"""
    sign = -1 if theta.degree % 2 else 1
    values = {}
    for gen in theta.source.generators:
        value = theta.module.d(theta.value(gen.id)) - theta.apply(theta.source.d_generator(gen.id)).scale(sign)
        values[gen.id] = value
    return Derivation(theta.source, theta.module, theta.degree + 1, values)


def der_complex_window(source: FreeCdga, module: DgModuleView, window: DegreeWindow) -> ComplexWindow:
    _require_minimal(source)
    bases = {n: derivation_labels(source, module, n) for n in window.degrees()}
    differentials = {}
    for n in range(window.lo, window.hi):
        columns = [
            derivation_coordinates(der_differential(Derivation.elementary(source, module, n, label)), bases[n + 1])
            for label in bases[n]
        ]
        differentials[n] = matrix_from_columns(columns, len(bases[n + 1]))
    return ComplexWindow(window=window, bases=bases, differentials=differentials)


@dataclass
class AqCohomology:
    """H*_AQ(A, M) on a window, with derivations representing each class"""
    source: FreeCdga
    module: DgModuleView
    window: DegreeWindow
    slices: Dict[int, CohomologySlice]
    complex: ComplexWindow
    representatives: Dict[int, List[Derivation]] = field(default_factory=dict)

    def dimensions(self) -> Dict[int, int]:
        return {n: piece.dimension for n, piece in self.slices.items()}

    def boundary_basis(self, degree: int) -> List[Vector]:
        incoming = self.complex.differential(degree - 1)
        span = EchelonSpan(self.complex.dimension(degree))
        for column in transpose(incoming, self.complex.dimension(degree - 1)):
            span.add(column)
        return span.basis()

    def classify(self, theta: Derivation) -> List[Fraction]:
        """Coordinates of the class of a cocycle θ in the representative basis"""
        degree = theta.degree
        labels = self.complex.bases[degree]
        reps = self.slices[degree].representatives
        boundaries = self.boundary_basis(degree)
        columns = reps + boundaries
        matrix = matrix_from_columns(columns, len(labels)) if labels else []
        solution = solve_linear(matrix, derivation_coordinates(theta, labels), len(columns))
        if solution is None:
            raise AlgebraError(f"{theta!r} is not a cocycle of degree {degree}")
        return solution[:len(reps)]


def aq_cohomology_der(source: FreeCdga, module: DgModuleView, window: DegreeWindow) -> AqCohomology:
    """H^n_AQ(A, M) for every n in the window via derivations of the minimal A"""
    widened = window.widen(1)
    complex_window = der_complex_window(source, module, widened)
    slices = cohomology_window(complex_window)
    kept = {}
    representatives = {}
    for n in window.degrees():
        slices[n].edge = None
        kept[n] = slices[n]
        representatives[n] = [
            derivation_from_coordinates(source, module, n, vector, complex_window.bases[n])
            for vector in slices[n].representatives
        ]
    logger.info(
        "H_AQ(%s, %s) on %s: %s", source.name, module.name, window,
        {n: s.dimension for n, s in kept.items() if s.dimension},
    )
    return AqCohomology(source, module, window, kept, complex_window, representatives)


def compose_on_generators(outer: Derivation, inner: Derivation) -> Dict[str, Element]:
    return {gen.id: outer.apply(inner.value(gen.id)) for gen in inner.source.generators}


def gerstenhaber_bracket(first: Derivation, second: Derivation) -> Derivation:
    """Graded commutator of two derivations A → A"""
    if first.source != second.source:
        raise AlgebraError("Bracket of derivations of different algebras")
    if not (first.is_endomorphism and second.is_endomorphism):
        raise AlgebraError("The bracket is defined for derivations A → A only")
    sign = -1 if (first.degree * second.degree) % 2 else 1
    forward = compose_on_generators(first, second)
    backward = compose_on_generators(second, first)
    values = {gen_id: forward[gen_id] - backward[gen_id].scale(sign) for gen_id in forward}
    return Derivation(first.source, first.module, first.degree + second.degree, values)


def nilpotency_check(theta: Derivation, bound: int) -> Optional[int]:
    """Smallest k ≤ bound with θ^k = 0 on every generator, or None"""
    current = {gen.id: Element.generator(gen) for gen in theta.source.generators}
    for k in range(1, bound + 1):
        current = {gen_id: theta.apply(value) for gen_id, value in current.items()}
        if all(value.is_zero for value in current.values()):
            return k
    return None


@dataclass
class LiePresentation:
    """Basis of a graded Lie algebra with exact structure constants"""
    basis: List[Derivation]
    grading: List[int]
    brackets: Dict[Tuple[int, int], Optional[List[Fraction]]]
    cocycle_dimension: int = 0
    boundary_dimension: int = 0
    nilpotency: Dict[str, Optional[int]] = field(default_factory=dict)
    well_defined: bool = True

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> List[str]:
        return [str(theta) for theta in self.basis]

    @property
    def is_abelian(self) -> bool:
        return all(value is None or not any(value) for value in self.brackets.values())

    def bracket_vectors(self, left: Sequence[Fraction], right: Sequence[Fraction]) -> Optional[List[Fraction]]:
        total = [Fraction(0)] * self.dimension
        for i, j in product(range(self.dimension), repeat=2):
            weight = left[i] * right[j]
            if not weight:
                continue
            constants = self.brackets.get((i, j))
            if constants is None:
                return None
            total = [a + weight * b for a, b in zip(total, constants)]
        return total

    def _unit(self, i: int) -> List[Fraction]:
        return [Fraction(int(k == i)) for k in range(self.dimension)]

    def verify_antisymmetry(self) -> bool:
        for (i, j), value in self.brackets.items():
            mirror = self.brackets.get((j, i))
            if value is None or mirror is None:
                continue
            sign = -1 if (self.grading[i] * self.grading[j]) % 2 else 1
            if any(a != -sign * b for a, b in zip(value, mirror)):
                return False
        return True

    def verify_jacobi(self) -> bool:
        """(−1)^{|a||c|}[a,[b,c]] + (−1)^{|b||a|}[b,[c,a]] + (−1)^{|c||b|}[c,[a,b]] = 0"""
        g = self.grading
        for a, b, c in product(range(self.dimension), repeat=3):
            total = [Fraction(0)] * self.dimension
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                inner = self.brackets.get((y, z))
                if inner is None:
                    break
                outer = self.bracket_vectors(self._unit(x), inner)
                if outer is None:
                    break
                sign = -1 if (g[x] * g[z]) % 2 else 1
                total = [t + sign * o for t, o in zip(total, outer)]
            else:
                if any(total):
                    return False
        return True

    def as_dict(self) -> Dict[str, object]:
        return {
            "dimension": self.dimension,
            "basis": self.labels,
            "grading": self.grading,
            "abelian": self.is_abelian,
            "brackets": {
                f"{i},{j}": None if value is None else [str(v) for v in value]
                for (i, j), value in sorted(self.brackets.items())
            },
            "cocycles": self.cocycle_dimension,
            "boundaries": self.boundary_dimension,
        }


def _structure_constants(
    cohomology: AqCohomology, basis: List[Derivation], grading: List[int]
) -> Dict[Tuple[int, int], Optional[List[Fraction]]]:
    offsets: Dict[int, int] = {}
    for position, degree in enumerate(grading):
        offsets.setdefault(degree, position)
    brackets = {}
    for i, j in product(range(len(basis)), repeat=2):
        degree = grading[i] + grading[j]
        if degree not in cohomology.slices:
            brackets[(i, j)] = None
            continue
        local = cohomology.classify(gerstenhaber_bracket(basis[i], basis[j]))
        full = [Fraction(0)] * len(basis)
        start = offsets.get(degree, 0)
        for k, value in enumerate(local):
            full[start + k] = value
        brackets[(i, j)] = full
    return brackets


def h0_lie_algebra(algebra: FreeCdga) -> LiePresentation:
    """H⁰_AQ(A, A) = Z⁰/B⁰ with the induced bracket"""
    _require_minimal(algebra)
    module = DgModuleView.identity(algebra)
    h = aq_cohomology_der(algebra, module, DegreeWindow(-1, 0))
    basis = h.representatives[0]
    grading = [0] * len(basis)
    brackets = _structure_constants(h, basis, grading)

    labels = h.complex.bases[0]
    boundaries = [
        derivation_from_coordinates(algebra, module, 0, vector, labels) for vector in h.boundary_basis(0)
    ]
    well_defined = True
    for (i, j), boundary in product(product(range(len(basis)), repeat=2), boundaries):
        perturbed = h.classify(gerstenhaber_bracket(basis[i] + boundary, basis[j]))
        if perturbed != brackets[(i, j)]:
            well_defined = False
            logger.warning("Bracket [%s, %s] depends on the representative", basis[i], basis[j])

    bound = len(algebra.generators) + algebra.max_generator_degree
    nilpotency = {str(b): nilpotency_check(b, bound) for b in boundaries}
    piece = h.slices[0]
    return LiePresentation(
        basis=basis,
        grading=grading,
        brackets=brackets,
        cocycle_dimension=piece.cocycle_dimension,
        boundary_dimension=piece.boundary_rank,
        nilpotency=nilpotency,
        well_defined=well_defined,
    )


def graded_lie_algebra(algebra: FreeCdga, lowest: int) -> LiePresentation:
    """Bracket on H^n_AQ(A, A) for lowest ≤ n ≤ 0; brackets below the window are None"""
    _require_minimal(algebra)
    if lowest > 0:
        raise ValueError("The lowest degree must be ≤ 0")
    module = DgModuleView.identity(algebra)
    h = aq_cohomology_der(algebra, module, DegreeWindow(lowest, 0))
    basis: List[Derivation] = []
    grading: List[int] = []
    for n in range(lowest, 1):
        basis.extend(h.representatives[n])
        grading.extend([n] * len(h.representatives[n]))
    brackets = _structure_constants(h, basis, grading)
    piece = h.slices[0]
    return LiePresentation(
        basis=basis,
        grading=grading,
        brackets=brackets,
        cocycle_dimension=piece.cocycle_dimension,
        boundary_dimension=piece.boundary_rank,
    )
