from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pytest

from core.cdga import DgaMorphism, FreeCdga, build_cdga
from core.graded_algebra import Element, Generator, coordinates
from core.linear_algebra import rank
from spaces import space_catalog


def gen(algebra: FreeCdga, gen_id: str) -> Element:
    return algebra.element(gen_id)


def random_coefficient(rng: np.random.Generator) -> Fraction:
    numerator = int(rng.integers(-4, 5)) or 1
    return Fraction(numerator, int(rng.integers(1, 4)))


def random_monomial(rng: np.random.Generator, generators: Sequence[Generator]) -> Element:
    """Coefficient times a product of generators in canonical order"""
    element = Element.scalar(random_coefficient(rng))
    for g in generators:
        exponent = int(rng.integers(0, 2)) if g.is_odd else int(rng.integers(0, 3))
        element = element * Element.generator(g) ** exponent
    return element


def random_homogeneous(rng: np.random.Generator, algebra: FreeCdga, degree: int, terms: int = 3) -> Element:
    basis = algebra.basis(degree)
    element = Element()
    if not basis:
        return element
    for _ in range(terms):
        monomial = basis[int(rng.integers(0, len(basis)))]
        element = element + Element.monomial(monomial, random_coefficient(rng))
    return element


# Brute-force derivation complex with coefficients in A itself, written out
# from the Leibniz rule and D(θ) = dθ − (−1)^p θd.


def leibniz(values: Dict[str, Element], degree: int, element: Element) -> Element:
    total = Element()
    for monomial, coefficient in element.items():
        word = monomial.word()
        passed = 0
        for i, g in enumerate(word):
            term = Element.scalar(coefficient)
            for h in word[:i]:
                term = term * Element.generator(h)
            term = term * values.get(g.id, Element())
            for h in word[i + 1:]:
                term = term * Element.generator(h)
            total = total + term.scale(-1 if (degree * passed) % 2 else 1)
            passed += g.degree
    return total


def oracle_vector(algebra: FreeCdga, values: Dict[str, Element], degree: int) -> List[Fraction]:
    vector: List[Fraction] = []
    for g in algebra.generators:
        vector.extend(coordinates(values.get(g.id, Element()), algebra.basis(g.degree + degree)))
    return vector


def oracle_columns(algebra: FreeCdga, degree: int) -> List[List[Fraction]]:
    """Images under D of the elementary degree-p derivations A → A"""
    sign = -1 if degree % 2 else 1
    columns = []
    for g in algebra.generators:
        for m in algebra.basis(g.degree + degree):
            values = {g.id: Element.monomial(m)}
            image = {
                h.id: algebra.d(values.get(h.id, Element())) - leibniz(values, degree, algebra.d_generator(h.id)).scale(sign)
                for h in algebra.generators
            }
            columns.append(oracle_vector(algebra, image, degree + 1))
    return columns


def span_rank(vectors: List[List[Fraction]]) -> int:
    if not vectors or not vectors[0]:
        return 0
    return rank(vectors, len(vectors[0]))


def oracle_cohomology(algebra: FreeCdga, degree: int) -> Tuple[int, int]:
    """(dim Z^p, dim B^p) of Der(A, A)"""
    columns = oracle_columns(algebra, degree)
    return len(columns) - span_rank(columns), span_rank(oracle_columns(algebra, degree - 1))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def s2():
    return space_catalog("sphere(2)").model


@pytest.fixture
def s3():
    return space_catalog("sphere(3)").model


@pytest.fixture
def cp2():
    return space_catalog("complex_projective(2)").model


@pytest.fixture
def polynomial_x2():
    """Λ(x₂) with zero differential"""
    return build_cdga([Generator("x", 2)], {}, name="P2")


@pytest.fixture
def s2_times_k4():
    """S² × K(ℚ,4); generators x1, y1, x2"""
    return space_catalog("product(sphere(2),k(Q,4))").model


@pytest.fixture
def scaling_s2(s2):
    return DgaMorphism(s2, s2, {"x": gen(s2, "x").scale(2), "y": gen(s2, "y").scale(4)}, name="scale")


S2_TEXT = """
# minimal model of the 2-sphere
algebra S2 {
    generator x : 2;
    generator y : 3;
    d y = x^2;
}
morphism scale : S2 -> S2 { x |-> 2*x; y |-> 4*y; }
morphism ident : S2 -> S2 { x |-> x; y |-> y; }
"""


@pytest.fixture
def s2_file(tmp_path):
    path = tmp_path / "s2.cdga"
    path.write_text(S2_TEXT, encoding="utf-8")
    return str(path)
