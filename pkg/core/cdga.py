"""
Free commutative differential graded algebras over ℚ and their morphisms.

A ``FreeCdga`` is Λ(generators) with a degree +1 differential given on
generators and extended by the graded Leibniz rule. Modules are always
presented as a ``DgModuleView``: a target algebra B with a structure map
A → B, optionally truncated above a top degree.
"""

import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from .errors import (
    AlgebraError,
    DegreeError,
    DifferentialError,
    NotCocycleError,
    NotMinimalError,
    UnknownGeneratorError,
)
from .graded_algebra import (
    Element,
    Generator,
    Monomial,
    apply_algebra_map,
    apply_derivation,
    coordinates,
    from_coordinates,
    sort_generators,
    window_basis,
)
from .linear_algebra import (
    CohomologySlice,
    ComplexWindow,
    DegreeWindow,
    Matrix,
    cohomology_window,
    matrix_from_columns,
    solve_linear,
)

logger = logging.getLogger(__name__)

GeneratorSpec = Union[Generator, Tuple[str, int]]


def _as_generator(spec: GeneratorSpec) -> Generator:
    if isinstance(spec, Generator):
        return spec
    gen_id, degree = spec
    return Generator(gen_id, degree)


class FreeCdga:
    """Λ(V) with a differential, validated on construction"""

    def __init__(
        self,
        generators: Iterable[GeneratorSpec],
        differential: Optional[Mapping[str, Element]] = None,
        name: str = "A",
    ):
        self.name = name
        self.generators: Tuple[Generator, ...] = sort_generators(_as_generator(g) for g in generators)
        self._by_id: Dict[str, Generator] = {}
        for gen in self.generators:
            if gen.id in self._by_id:
                raise AlgebraError(f"Duplicate generator id '{gen.id}' in {name}")
            self._by_id[gen.id] = gen

        self.differential: Dict[str, Element] = {}
        for gen_id, value in (differential or {}).items():
            if gen_id not in self._by_id:
                raise UnknownGeneratorError(gen_id, f"differential of {name}")
            if not value.is_zero:
                self.differential[gen_id] = value
        self._validate()

    def _validate(self):
        known = set(self.generators)
        for gen_id, value in self.differential.items():
            gen = self._by_id[gen_id]
            for used in value.generators():
                if used not in known:
                    raise UnknownGeneratorError(used.id, f"d({gen_id})")
            if value.degrees() != [gen.degree + 1]:
                raise DegreeError(
                    f"d({gen_id}) must be homogeneous of degree {gen.degree + 1}, got {value} "
                    f"with degrees {value.degrees()}"
                )
        for gen in self.generators:
            residue = self.d(self.d_generator(gen.id))
            if not residue.is_zero:
                raise DifferentialError(gen.id, residue)

    # Generators

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(gen.id for gen in self.generators)

    def has_generator(self, gen_id: str) -> bool:
        return gen_id in self._by_id

    def generator(self, gen_id: str) -> Generator:
        if gen_id not in self._by_id:
            raise UnknownGeneratorError(gen_id, self.name)
        return self._by_id[gen_id]

    def element(self, gen_id: str) -> Element:
        return Element.generator(self.generator(gen_id))

    def generators_of_degree(self, degree: int) -> List[Generator]:
        return [gen for gen in self.generators if gen.degree == degree]

    @property
    def generator_degrees(self) -> List[int]:
        return sorted({gen.degree for gen in self.generators})

    @property
    def max_generator_degree(self) -> int:
        return max((gen.degree for gen in self.generators), default=0)

    @property
    def top_degree(self) -> Optional[int]:
        """Highest non-zero degree, finite only for exterior algebras"""
        if any(not gen.is_odd for gen in self.generators):
            return None
        return sum(gen.degree for gen in self.generators)

    # Differential

    def d_generator(self, gen_id: str) -> Element:
        return self.differential.get(gen_id, Element())

    def d(self, element: Element) -> Element:
        return apply_derivation(element, self.differential, 1)

    def basis(self, degree: int) -> Tuple[Monomial, ...]:
        return window_basis(self.generators, degree)

    def is_cocycle(self, element: Element) -> bool:
        return self.d(element).is_zero

    def coboundary_witness(self, element: Element) -> Optional[Element]:
        """Some w with d(w) = element, or None"""
        if element.is_zero:
            return Element()
        degree = element.degree
        source = self.basis(degree - 1)
        target = self.basis(degree)
        matrix = self.differential_matrix(degree - 1)
        solution = solve_linear(matrix, coordinates(element, target), len(source))
        if solution is None:
            return None
        return from_coordinates(solution, source)

    def differential_matrix(self, degree: int) -> Matrix:
        source = self.basis(degree)
        target = self.basis(degree + 1)
        columns = [coordinates(self.d(Element.monomial(m)), target) for m in source]
        return matrix_from_columns(columns, len(target))

    # Flags

    @property
    def is_connected(self) -> bool:
        return all(gen.degree >= 1 for gen in self.generators)

    @property
    def is_simply_connected(self) -> bool:
        return all(gen.degree >= 2 for gen in self.generators)

    @property
    def is_minimal(self) -> bool:
        return check_minimal(self)

    def dependency_graph(self) -> nx.DiGraph:
        """Edge g → h whenever h occurs in d(g)"""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.ids)
        for gen_id, value in self.differential.items():
            for used in value.generators():
                graph.add_edge(gen_id, used.id)
        return graph

    @property
    def is_sullivan(self) -> bool:
        return nx.is_directed_acyclic_graph(self.dependency_graph())

    def generation_order(self) -> List[str]:
        """Generators ordered so each differential only uses earlier ones"""
        return list(reversed(list(nx.topological_sort(self.dependency_graph()))))

    # Misc

    def renamed(self, name: str) -> "FreeCdga":
        return FreeCdga(self.generators, self.differential, name=name)

    def describe(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "generators": {gen.id: gen.degree for gen in self.generators},
            "differential": {gen_id: str(value) for gen_id, value in sorted(self.differential.items())},
            "minimal": self.is_minimal,
            "simply_connected": self.is_simply_connected,
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeCdga):
            return NotImplemented
        return self.generators == other.generators and self.differential == other.differential

    def __hash__(self) -> int:
        return hash((self.generators, frozenset(self.differential.items())))

    def __str__(self) -> str:
        gens = ", ".join(f"{gen.id}:{gen.degree}" for gen in self.generators)
        diffs = ", ".join(f"d{gen_id} = {value}" for gen_id, value in sorted(self.differential.items()))
        return f"Λ({gens}{'; ' + diffs if diffs else ''})"

    def __repr__(self) -> str:
        return f"FreeCdga({self.name}: {self})"


def trivial_algebra(name: str = "Q") -> FreeCdga:
    return FreeCdga([], {}, name=name)


class DgaMorphism:
    """Algebra map defined on generators; chain-map condition is checked, not assumed"""

    def __init__(
        self,
        source: FreeCdga,
        target: FreeCdga,
        assignment: Mapping[str, Element],
        name: Optional[str] = None,
    ):
        self.source = source
        self.target = target
        self.name = name or f"{source.name}→{target.name}"
        target_gens = set(target.generators)
        self.assignment: Dict[str, Element] = {}
        for gen_id in assignment:
            if not source.has_generator(gen_id):
                raise UnknownGeneratorError(gen_id, f"source of {self.name}")
        for gen in source.generators:
            value = assignment.get(gen.id, Element())
            for used in value.generators():
                if used not in target_gens:
                    raise UnknownGeneratorError(used.id, f"target of {self.name}")
            if not value.is_zero and value.degrees() != [gen.degree]:
                raise DegreeError(f"{self.name} sends {gen.id} (degree {gen.degree}) to {value}")
            self.assignment[gen.id] = value

    def apply(self, element: Element) -> Element:
        return apply_algebra_map(element, self.assignment)

    __call__ = apply

    def image(self, gen_id: str) -> Element:
        return self.assignment[gen_id]

    def check(self) -> List[str]:
        """Generators on which F∘d ≠ d∘F, with the defect"""
        violations = []
        for gen in self.source.generators:
            defect = self.apply(self.source.d_generator(gen.id)) - self.target.d(self.assignment[gen.id])
            if not defect.is_zero:
                violations.append(f"F(d{gen.id}) - d(F{gen.id}) = {defect}")
        return violations

    @property
    def is_chain_map(self) -> bool:
        return not self.check()

    def compose(self, first: "DgaMorphism") -> "DgaMorphism":
        """self ∘ first"""
        if first.target != self.source:
            raise AlgebraError(f"Cannot compose {self.name} after {first.name}")
        return DgaMorphism(
            first.source,
            self.target,
            {gen_id: self.apply(value) for gen_id, value in first.assignment.items()},
            name=f"{self.name}∘{first.name}",
        )

    def linear_part_matrix(self, degree: int) -> Matrix:
        """Matrix of the induced map on indecomposables in one degree"""
        sources = self.source.generators_of_degree(degree)
        targets = self.target.generators_of_degree(degree)
        columns = []
        for gen in sources:
            linear = self.assignment[gen.id].linear_part()
            columns.append([linear.coefficient(Monomial.of(t)) for t in targets])
        return matrix_from_columns(columns, len(targets))

    @classmethod
    def identity(cls, algebra: FreeCdga) -> "DgaMorphism":
        return cls(algebra, algebra, {gen.id: algebra.element(gen.id) for gen in algebra.generators}, name=f"id_{algebra.name}")

    @classmethod
    def augmentation(cls, algebra: FreeCdga, target: Optional[FreeCdga] = None) -> "DgaMorphism":
        return cls(algebra, target or trivial_algebra(), {}, name=f"ε_{algebra.name}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DgaMorphism):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.assignment == other.assignment

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.assignment.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{k} ↦ {v}" for k, v in self.assignment.items())
        return f"DgaMorphism({self.name}: {body})"


class DgModuleView:
    """B regarded as a dg A-module through φ: A → B, truncated above top_degree"""

    def __init__(self, morphism: DgaMorphism, top_degree: Optional[int] = None, name: Optional[str] = None):
        violations = morphism.check()
        if violations:
            raise AlgebraError(f"Structure map {morphism.name} is not a dga map: {violations[0]}")
        self.structure_map = morphism
        self.top_degree = top_degree
        self.name = name or morphism.target.name

    @property
    def source(self) -> FreeCdga:
        return self.structure_map.source

    @property
    def algebra(self) -> FreeCdga:
        return self.structure_map.target

    @property
    def is_trivial(self) -> bool:
        return not self.algebra.generators

    def basis(self, degree: int) -> Tuple[Monomial, ...]:
        if degree < 0 or (self.top_degree is not None and degree > self.top_degree):
            return ()
        return self.algebra.basis(degree)

    def truncate(self, element: Element) -> Element:
        return element.truncate(self.top_degree)

    def d(self, element: Element) -> Element:
        return self.truncate(self.algebra.d(element))

    def phi(self, element: Element) -> Element:
        return self.truncate(self.structure_map.apply(element))

    def multiply(self, left: Element, right: Element) -> Element:
        return self.truncate(left * right)

    def effective_top_degree(self) -> Optional[int]:
        tops = [t for t in (self.top_degree, self.algebra.top_degree) if t is not None]
        return min(tops) if tops else None

    @classmethod
    def trivial(cls, algebra: FreeCdga) -> "DgModuleView":
        return cls(DgaMorphism.augmentation(algebra), top_degree=0, name="Q")

    @classmethod
    def identity(cls, algebra: FreeCdga, top_degree: Optional[int] = None) -> "DgModuleView":
        return cls(DgaMorphism.identity(algebra), top_degree=top_degree, name=algebra.name)

    @classmethod
    def via(cls, morphism: DgaMorphism, top_degree: Optional[int] = None) -> "DgModuleView":
        return cls(morphism, top_degree=top_degree)

    def __repr__(self) -> str:
        top = "" if self.top_degree is None else f", ≤{self.top_degree}"
        return f"DgModuleView({self.name} via {self.structure_map.name}{top})"


def build_cdga(
    generators: Iterable[GeneratorSpec],
    differential: Optional[Mapping[str, Element]] = None,
    name: str = "A",
) -> FreeCdga:
    algebra = FreeCdga(generators, differential, name=name)
    logger.info("Built %s with %d generators (minimal=%s)", name, len(algebra.generators), algebra.is_minimal)
    return algebra


def check_minimal(algebra: FreeCdga) -> bool:
    """True iff every d(g) lies in A⁺·A⁺"""
    return all(value.is_decomposable for value in algebra.differential.values())


def hirsch_extension(
    algebra: FreeCdga,
    new_generators: Sequence[GeneratorSpec],
    attaching: Mapping[str, Element],
    name: Optional[str] = None,
) -> FreeCdga:
    """A ⊗ ΛV with d|V given by cocycles of A"""
    added = [_as_generator(g) for g in new_generators]
    for gen in added:
        if algebra.has_generator(gen.id):
            raise AlgebraError(f"Generator '{gen.id}' already exists in {algebra.name}")
    known = set(algebra.generators)
    for gen in added:
        value = attaching.get(gen.id, Element())
        if value.is_zero:
            continue
        if value.degrees() != [gen.degree + 1]:
            raise DegreeError(f"Attaching value for {gen.id} must have degree {gen.degree + 1}, got {value}")
        if any(used not in known for used in value.generators()):
            raise UnknownGeneratorError(value.generators()[0].id, f"attaching value of {gen.id}")
        if not algebra.is_cocycle(value):
            raise NotCocycleError(f"Attaching value {value} for {gen.id} is not a cocycle")
    differential = dict(algebra.differential)
    differential.update({gen.id: attaching.get(gen.id, Element()) for gen in added})
    return FreeCdga(list(algebra.generators) + added, differential, name=name or f"{algebra.name}⊗ΛV")


def postnikov_truncation(algebra: FreeCdga, n: int) -> Tuple[FreeCdga, DgaMorphism]:
    """Sub-CDGA generated in degrees ≤ n together with its inclusion"""
    if not algebra.is_minimal:
        raise NotMinimalError(f"{algebra.name} is not minimal; truncation need not be closed under d")
    kept = [gen for gen in algebra.generators if gen.degree <= n]
    kept_set = set(kept)
    for gen in kept:
        for used in algebra.d_generator(gen.id).generators():
            if used not in kept_set:
                raise NotMinimalError(f"d({gen.id}) uses {used.id}, which lies above degree {n}")
    truncated = FreeCdga(kept, {gen.id: algebra.d_generator(gen.id) for gen in kept}, name=f"{algebra.name}≤{n}")
    inclusion = DgaMorphism(truncated, algebra, {gen.id: algebra.element(gen.id) for gen in kept}, name=f"ι{n}")
    return truncated, inclusion


def tensor_product(left: FreeCdga, right: FreeCdga, name: Optional[str] = None) -> FreeCdga:
    clash = set(left.ids) & set(right.ids)
    if clash:
        raise AlgebraError(f"Generator ids {sorted(clash)} occur in both factors")
    differential = {**left.differential, **right.differential}
    return FreeCdga(list(left.generators) + list(right.generators), differential, name=name or f"{left.name}⊗{right.name}")


def cochain_complex(algebra: FreeCdga, window: DegreeWindow) -> ComplexWindow:
    bases = {n: list(algebra.basis(n)) for n in window.degrees()}
    differentials = {n: algebra.differential_matrix(n) for n in range(window.lo, window.hi)}
    return ComplexWindow(window=window, bases=bases, differentials=differentials)


def cohomology(algebra: FreeCdga, window: DegreeWindow) -> Dict[int, CohomologySlice]:
    """Exact H*(A) on every degree of the window"""
    widened = window.widen(1)
    slices = cohomology_window(cochain_complex(algebra, widened))
    result = {}
    for n in window.degrees():
        piece = slices[n]
        piece.edge = None
        result[n] = piece
    return result


def representative_elements(algebra: FreeCdga, piece: CohomologySlice) -> List[Element]:
    basis = algebra.basis(piece.degree)
    return [from_coordinates(vector, basis) for vector in piece.representatives]


def rename_generators(algebra: FreeCdga, renaming: Mapping[str, str], name: Optional[str] = None) -> Tuple[FreeCdga, DgaMorphism]:
    """Copy of A with generator ids renamed, plus the isomorphism A → copy"""
    new_ids = {gen.id: renaming.get(gen.id, gen.id) for gen in algebra.generators}
    generators = [Generator(new_ids[gen.id], gen.degree) for gen in algebra.generators]
    assignment = {gen.id: Element.generator(new) for gen, new in zip(algebra.generators, generators)}
    differential = {
        new_ids[gen_id]: apply_algebra_map(value, assignment) for gen_id, value in algebra.differential.items()
    }
    copy = FreeCdga(generators, differential, name=name or algebra.name)
    return copy, DgaMorphism(algebra, copy, assignment, name=f"rename_{algebra.name}")
