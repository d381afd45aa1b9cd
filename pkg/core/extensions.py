"""
Square-zero extensions A⋉M[n] and Kähler differentials of free CDGAs.

A⋉M[n] is modelled as A ⊕ ε·M with ε² = 0 and |ε| = −n, so the module part
of carrier degree k is M^{k+n}. The product is
(a₁ + εb₁)(a₂ + εb₂) = a₁a₂ + ε((−1)^{n|a₁|} φ(a₁)b₂ + b₁φ(a₂)).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .cdga import DgaMorphism, DgModuleView, FreeCdga
from .errors import AlgebraError, DegreeError
from .graded_algebra import Element, Monomial, coordinates
from .linear_algebra import (
    CohomologySlice,
    ComplexWindow,
    DegreeWindow,
    cohomology_window,
    kernel_basis,
    matrix_from_columns,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SqZeroElement:
    """a + εb"""
    base: Element = field(default_factory=Element)
    module: Element = field(default_factory=Element)

    @property
    def is_zero(self) -> bool:
        return self.base.is_zero and self.module.is_zero

    def __add__(self, other: "SqZeroElement") -> "SqZeroElement":
        return SqZeroElement(self.base + other.base, self.module + other.module)

    def __sub__(self, other: "SqZeroElement") -> "SqZeroElement":
        return SqZeroElement(self.base - other.base, self.module - other.module)

    def scale(self, factor) -> "SqZeroElement":
        return SqZeroElement(self.base.scale(factor), self.module.scale(factor))

    def __str__(self) -> str:
        if self.module.is_zero:
            return str(self.base)
        return f"{self.base} + ε({self.module})"


class SquareZeroExtension:
    """Carrier A ⊕ ε·M[shift] over a free CDGA A"""

    def __init__(self, module: DgModuleView, shift: int = 0):
        self.module = module
        self.shift = shift

    @property
    def base(self) -> FreeCdga:
        return self.module.source

    @property
    def epsilon_degree(self) -> int:
        return -self.shift

    def _sign(self, degree: int) -> int:
        return -1 if (self.shift * degree) % 2 else 1

    def element(self, base: Optional[Element] = None, module: Optional[Element] = None) -> SqZeroElement:
        return SqZeroElement(base or Element(), self.module.truncate(module or Element()))

    def multiply(self, left: SqZeroElement, right: SqZeroElement) -> SqZeroElement:
        base = left.base * right.base
        module = Element()
        for degree, piece in left.base.homogeneous_parts().items():
            module = module + self.module.multiply(self.module.phi(piece), right.module).scale(self._sign(degree))
        module = module + self.module.multiply(left.module, self.module.phi(right.base))
        return SqZeroElement(base, module)

    def d(self, element: SqZeroElement) -> SqZeroElement:
        parity = -1 if self.shift % 2 else 1
        return SqZeroElement(self.base.d(element.base), self.module.d(element.module).scale(parity))

    def project(self, element: SqZeroElement) -> Element:
        return element.base

    def basis(self, degree: int) -> List[Tuple[str, Monomial]]:
        base = [("A", m) for m in self.base.basis(degree)]
        return base + [("M", m) for m in self.module.basis(degree + self.shift)]

    def apply_map(self, element: Element, assignment: Mapping[str, SqZeroElement]) -> SqZeroElement:
        """Multiplicative extension of generator images into the carrier"""
        total = SqZeroElement()
        for monomial, coefficient in element.items():
            image = SqZeroElement(Element.one(), Element())
            for gen in monomial.word():
                if gen.id not in assignment:
                    raise AlgebraError(f"No image for generator '{gen.id}'")
                image = self.multiply(image, assignment[gen.id])
            total = total + image.scale(coefficient)
        return total

    def __repr__(self) -> str:
        return f"SquareZeroExtension({self.base.name}⋉{self.module.name}[{self.shift}])"


def square_zero_extension(module: DgModuleView, shift: int = 0) -> SquareZeroExtension:
    return SquareZeroExtension(module, shift)


def square_zero_map_dimension(lift_of: DgaMorphism, module: DgModuleView, shift: int) -> int:
    """Dimension of the space of dga maps S → A⋉M[shift] lying over ψ: S → A.

    Each generator g gets an unknown module value in M^{|g|+shift}; the maps
    are the solutions of the linear chain-map constraints, computed through
    the carrier product rather than through derivations.
    """
    if module.source != lift_of.target:
        raise AlgebraError("Module and map must share the algebra A")
    source = lift_of.source
    extension = square_zero_extension(module, shift)
    unknowns: List[Tuple[str, Monomial]] = []
    for gen in source.generators:
        unknowns.extend((gen.id, m) for m in module.basis(gen.degree + shift))
    if not unknowns:
        return 0

    rows_per_generator = {gen.id: module.basis(gen.degree + 1 + shift) for gen in source.generators}
    columns = []
    for gen_id, monomial in unknowns:
        assignment = {
            gen.id: SqZeroElement(lift_of.image(gen.id), Element.monomial(monomial) if gen.id == gen_id else Element())
            for gen in source.generators
        }
        column = []
        for gen in source.generators:
            image_of_d = extension.apply_map(source.d_generator(gen.id), assignment)
            d_of_image = extension.d(assignment[gen.id])
            defect = image_of_d.module - d_of_image.module
            column.extend(coordinates(module.truncate(defect), rows_per_generator[gen.id]))
        columns.append(column)
    height = sum(len(rows) for rows in rows_per_generator.values())
    matrix = matrix_from_columns(columns, height)
    return len(kernel_basis(matrix, len(unknowns)))


KahlerForm = Dict[str, Element]


class KahlerModule:
    """Ω_A: the free A-module on δg with the induced differential"""

    def __init__(self, algebra: FreeCdga):
        self.algebra = algebra

    @staticmethod
    def _clean(form: Mapping[str, Element]) -> KahlerForm:
        return {gen_id: value for gen_id, value in form.items() if not value.is_zero}

    def add(self, left: Mapping[str, Element], right: Mapping[str, Element]) -> KahlerForm:
        merged = dict(left)
        for gen_id, value in right.items():
            merged[gen_id] = merged.get(gen_id, Element()) + value
        return self._clean(merged)

    def scale_left(self, element: Element, form: Mapping[str, Element]) -> KahlerForm:
        return self._clean({gen_id: element * value for gen_id, value in form.items()})

    def delta(self, element: Element) -> KahlerForm:
        """Universal derivation: δ(w₁⋯w_r) = Σᵢ ±(w₁⋯ŵᵢ⋯w_r) δwᵢ"""
        form: KahlerForm = {}
        for monomial, coefficient in element.items():
            word = monomial.word()
            for position, gen in enumerate(word):
                suffix_degree = sum(g.degree for g in word[position + 1:])
                sign = -1 if (gen.degree * suffix_degree) % 2 else 1
                prefix = Element.monomial(Monomial.from_sorted_word(word[:position]))
                suffix = Element.monomial(Monomial.from_sorted_word(word[position + 1:]))
                term = (prefix * suffix).scale(sign * coefficient)
                form[gen.id] = form.get(gen.id, Element()) + term
        return self._clean(form)

    def d(self, form: Mapping[str, Element]) -> KahlerForm:
        """d(a δg) = da δg + (−1)^{|a|} a δ(dg)"""
        result: KahlerForm = {}
        for gen_id, coefficient in form.items():
            result = self.add(result, {gen_id: self.algebra.d(coefficient)})
            inner = self.delta(self.algebra.d_generator(gen_id))
            for degree, piece in coefficient.homogeneous_parts().items():
                sign = -1 if degree % 2 else 1
                result = self.add(result, self.scale_left(piece.scale(sign), inner))
        return result

    def basis(self, degree: int) -> List[Tuple[Monomial, str]]:
        labels = []
        for gen in self.algebra.generators:
            labels.extend((m, gen.id) for m in self.algebra.basis(degree - gen.degree))
        return labels

    def coordinates(self, form: Mapping[str, Element], degree: int) -> List[Fraction]:
        labels = self.basis(degree)
        index = {label: i for i, label in enumerate(labels)}
        vector = [Fraction(0)] * len(labels)
        for gen_id, coefficient in form.items():
            for monomial, value in coefficient.items():
                label = (monomial, gen_id)
                if label not in index:
                    raise DegreeError(f"Form term {monomial}·δ{gen_id} is outside degree {degree}")
                vector[index[label]] = value
        return vector

    def complex_window(self, window: DegreeWindow) -> ComplexWindow:
        bases = {n: self.basis(n) for n in window.degrees()}
        differentials = {}
        for n in range(window.lo, window.hi):
            columns = [
                self.coordinates(self.d({gen_id: Element.monomial(m)}), n + 1)
                for m, gen_id in bases[n]
            ]
            differentials[n] = matrix_from_columns(columns, len(bases[n + 1]))
        return ComplexWindow(window=window, bases=bases, differentials=differentials)

    def cohomology(self, window: DegreeWindow) -> Dict[int, CohomologySlice]:
        slices = cohomology_window(self.complex_window(window.widen(1)))
        result = {}
        for n in window.degrees():
            slices[n].edge = None
            result[n] = slices[n]
        return result

    def hom_dimension(self, module: DgModuleView, degree: int) -> int:
        """dim of degree-d A-module maps Ω_A → M (one free value per δg)"""
        return sum(len(module.basis(gen.degree + degree)) for gen in self.algebra.generators)

    def evaluate_pairing(
        self, values: Mapping[str, Element], element: Element, module: DgModuleView, degree: int
    ) -> Element:
        """h(δ(element)) for the module map h with h(δg) = values[g]"""
        total = Element()
        for gen_id, coefficient in self.delta(element).items():
            value = values.get(gen_id, Element())
            for part_degree, piece in coefficient.homogeneous_parts().items():
                sign = -1 if (degree * part_degree) % 2 else 1
                total = total + module.multiply(module.phi(piece), value).scale(sign)
        return module.truncate(total)

    def __repr__(self) -> str:
        return f"KahlerModule(Ω_{self.algebra.name})"


def kahler_differentials(algebra: FreeCdga) -> KahlerModule:
    return KahlerModule(algebra)
