"""
Degree-by-degree construction of Sullivan minimal models for simply
connected CDGAs, and cohomology comparisons along dga maps.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List

from .cdga import DgaMorphism, FreeCdga, cohomology, representative_elements, trivial_algebra
from .errors import NotSimplyConnectedError
from .graded_algebra import Element, Generator, coordinates, from_coordinates
from .linear_algebra import DegreeWindow, EchelonSpan, kernel_basis, transpose

logger = logging.getLogger(__name__)


@dataclass
class MinimalModel:
    """Minimal M with q: M → A inducing H^k-isomorphisms for k ≤ through_degree"""
    algebra: FreeCdga
    quasi_isomorphism: DgaMorphism
    through_degree: int


def induced_rank(morphism: DgaMorphism, degree: int) -> int:
    """Rank of H^degree(source) → H^degree(target)"""
    source, target = morphism.source, morphism.target
    target_basis = target.basis(degree)
    boundaries = EchelonSpan(len(target_basis))
    for column in transpose(target.differential_matrix(degree - 1), len(target.basis(degree - 1))):
        boundaries.add(column)
    baseline = boundaries.rank
    piece = cohomology(source, DegreeWindow(degree, degree))[degree]
    for element in representative_elements(source, piece):
        boundaries.add(coordinates(morphism.apply(element), target_basis))
    return boundaries.rank - baseline


def is_quasi_isomorphism(morphism: DgaMorphism, window: DegreeWindow) -> bool:
    """Induced map is bijective on H^k for every k in the window"""
    source_h = cohomology(morphism.source, window)
    target_h = cohomology(morphism.target, window)
    for k in window.degrees():
        if source_h[k].dimension != target_h[k].dimension:
            return False
        if induced_rank(morphism, k) != source_h[k].dimension:
            return False
    return True


def _rebuild(generators: List[Generator], differential: Dict[str, Element], name: str) -> FreeCdga:
    return FreeCdga(generators, differential, name=name)


def minimal_model(algebra: FreeCdga, through_degree: int) -> MinimalModel:
    """Minimal model of a simply connected A through the given degree.

    In each degree k, cocycle generators are added for the cokernel of
    H^k(M) → H^k(A), then generators of degree k kill the kernel of
    H^{k+1}(M) → H^{k+1}(A).
    """
    h1 = cohomology(algebra, DegreeWindow(1, 1))[1].dimension
    if h1:
        raise NotSimplyConnectedError(f"H¹({algebra.name}) has dimension {h1}")

    name = f"M({algebra.name})"
    generators: List[Generator] = []
    differential: Dict[str, Element] = {}
    images: Dict[str, Element] = {}
    model = trivial_algebra(name)

    for k in range(2, through_degree + 1):
        # Cokernel in degree k
        a_basis = algebra.basis(k)
        span = EchelonSpan(len(a_basis))
        for column in transpose(algebra.differential_matrix(k - 1), len(algebra.basis(k - 1))):
            span.add(column)
        q = DgaMorphism(model, algebra, images)
        m_basis = model.basis(k)
        for z in kernel_basis(model.differential_matrix(k), len(m_basis)):
            span.add(coordinates(q.apply(from_coordinates(z, m_basis)), a_basis))
        piece = cohomology(algebra, DegreeWindow(k, k))[k]
        added = 0
        for representative in representative_elements(algebra, piece):
            if span.add(coordinates(representative, a_basis)):
                gen = Generator(f"v{k}_{added}", k)
                generators.append(gen)
                images[gen.id] = representative
                added += 1
        if added:
            model = _rebuild(generators, differential, name)
            logger.info("%s: %d cocycle generator(s) in degree %d", name, added, k)

        # Kernel in degree k + 1
        q = DgaMorphism(model, algebra, images)
        m_next = model.basis(k + 1)
        a_next = algebra.basis(k + 1)
        a_here = algebra.basis(k)
        cocycles = [from_coordinates(z, m_next) for z in kernel_basis(model.differential_matrix(k + 1), len(m_next))]
        if not cocycles:
            continue
        q_columns = [coordinates(q.apply(z), a_next) for z in cocycles]
        d_columns = transpose(algebra.differential_matrix(k), len(a_here))
        stacked = transpose(q_columns + d_columns, len(a_next)) if a_next else []
        boundaries = EchelonSpan(len(m_next))
        for column in transpose(model.differential_matrix(k), len(model.basis(k))):
            boundaries.add(column)
        killed = 0
        for vector in kernel_basis(stacked, len(cocycles) + len(a_here)):
            c, a = vector[:len(cocycles)], vector[len(cocycles):]
            z = Element()
            for coefficient, cocycle in zip(c, cocycles):
                z = z + cocycle.scale(coefficient)
            if z.is_zero or not boundaries.add(coordinates(z, m_next)):
                continue
            gen = Generator(f"w{k}_{killed}", k)
            generators.append(gen)
            differential[gen.id] = z
            images[gen.id] = -from_coordinates(a, a_here)
            killed += 1
        if killed:
            model = _rebuild(generators, differential, name)
            logger.info("%s: %d killing generator(s) in degree %d", name, killed, k)

    q = DgaMorphism(model, algebra, images, name=f"q_{algebra.name}")
    return MinimalModel(algebra=model, quasi_isomorphism=q, through_degree=through_degree)
