"""
Free graded-commutative polynomial arithmetic over ℚ.

Monomials are stored in canonical form: factors sorted by (degree, id), odd
generators with exponent exactly one. Multiplying two monomials re-sorts the
concatenated word and picks up the Koszul sign (−1)^{pq} for every
transposition of adjacent factors of degrees p and q; only odd/odd swaps
contribute.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from config import Config
from .errors import AlgebraError, DegreeError, UnknownGeneratorError

logger = logging.getLogger(__name__)

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to an exact rational"""
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class Generator:
    """A polynomial generator of positive degree"""
    id: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise DegreeError(f"Generator '{self.id}' must have degree ≥ 1, got {self.degree}")

    @property
    def key(self) -> Tuple[int, str]:
        return (self.degree, self.id)

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1

    def __str__(self) -> str:
        return self.id


def sort_generators(generators: Iterable[Generator]) -> Tuple[Generator, ...]:
    return tuple(sorted(generators, key=lambda g: g.key))


@dataclass(frozen=True)
class Monomial:
    """Canonical monomial: ((generator, exponent), ...) sorted by generator key"""
    factors: Tuple[Tuple[Generator, int], ...] = ()

    @classmethod
    def unit(cls) -> "Monomial":
        return cls(())

    @classmethod
    def of(cls, generator: Generator, exponent: int = 1) -> "Monomial":
        if exponent == 0:
            return cls.unit()
        return cls(((generator, exponent),))

    @classmethod
    def from_sorted_word(cls, word: Sequence[Generator]) -> "Monomial":
        """Build from a word that is already in canonical order"""
        factors: List[Tuple[Generator, int]] = []
        for gen in word:
            if factors and factors[-1][0] == gen:
                factors[-1] = (gen, factors[-1][1] + 1)
            else:
                factors.append((gen, 1))
        return cls(tuple(factors))

    @property
    def degree(self) -> int:
        return sum(gen.degree * exp for gen, exp in self.factors)

    @property
    def is_unit(self) -> bool:
        return not self.factors

    @property
    def length(self) -> int:
        return sum(exp for _, exp in self.factors)

    @property
    def sort_key(self) -> Tuple:
        return tuple((gen.degree, gen.id, exp) for gen, exp in self.factors)

    def word(self) -> Tuple[Generator, ...]:
        return tuple(gen for gen, exp in self.factors for _ in range(exp))

    def generator_ids(self) -> Tuple[str, ...]:
        return tuple(gen.id for gen, _ in self.factors)

    def exponent(self, generator_id: str) -> int:
        for gen, exp in self.factors:
            if gen.id == generator_id:
                return exp
        return 0

    def __str__(self) -> str:
        if self.is_unit:
            return "1"
        return "*".join(gen.id if exp == 1 else f"{gen.id}^{exp}" for gen, exp in self.factors)


def _normalize_generator_word(word: Sequence[Generator]) -> Optional[Tuple[Monomial, int]]:
    seen: Dict[str, Generator] = {}
    for gen in word:
        known = seen.setdefault(gen.id, gen)
        if known != gen:
            raise AlgebraError(
                f"Generator '{gen.id}' appears with degrees {known.degree} and {gen.degree}"
            )

    odd = [gen for gen in word if gen.is_odd]
    if len({gen.id for gen in odd}) != len(odd):
        return None  # odd square
    inversions = sum(
        1
        for i in range(len(odd))
        for j in range(i + 1, len(odd))
        if odd[i].key > odd[j].key
    )
    sign = -1 if inversions % 2 else 1

    exponents: Dict[Generator, int] = {}
    for gen in word:
        exponents[gen] = exponents.get(gen, 0) + 1
    factors = tuple(sorted(exponents.items(), key=lambda item: item[0].key))
    return Monomial(factors), sign


def monomial_normalize(
    generators: Sequence[Generator], word: Sequence[str]
) -> Optional[Tuple[Monomial, int]]:
    """Sort a word of generator ids into canonical form.

    Returns (monomial, sign) or None when an odd generator repeats.
    """
    lookup = {gen.id: gen for gen in generators}
    resolved = []
    for gen_id in word:
        if gen_id not in lookup:
            raise UnknownGeneratorError(gen_id)
        resolved.append(lookup[gen_id])
    return _normalize_generator_word(resolved)


def multiply_monomials(left: Monomial, right: Monomial) -> Optional[Tuple[Monomial, int]]:
    if left.is_unit:
        return right, 1
    if right.is_unit:
        return left, 1
    return _normalize_generator_word(left.word() + right.word())


class Element:
    """A finite ℚ-linear combination of canonical monomials"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, ScalarLike]] = None):
        cleaned: Dict[Monomial, Fraction] = {}
        for monomial, coefficient in (terms or {}).items():
            value = to_scalar(coefficient)
            if value:
                cleaned[monomial] = value
        self._terms = cleaned

    # Constructors

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def one(cls) -> "Element":
        return cls({Monomial.unit(): 1})

    @classmethod
    def scalar(cls, value: ScalarLike) -> "Element":
        return cls({Monomial.unit(): value})

    @classmethod
    def generator(cls, generator: Generator) -> "Element":
        return cls({Monomial.of(generator): 1})

    @classmethod
    def monomial(cls, monomial: Monomial, coefficient: ScalarLike = 1) -> "Element":
        return cls({monomial: coefficient})

    # Inspection

    def items(self) -> Iterable[Tuple[Monomial, Fraction]]:
        return self._terms.items()

    def terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: (item[0].degree, item[0].sort_key))

    def monomials(self) -> List[Monomial]:
        return [monomial for monomial, _ in self.terms()]

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> List[int]:
        return sorted({monomial.degree for monomial in self._terms})

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Degree of a homogeneous element; None for zero"""
        degrees = self.degrees()
        if not degrees:
            return None
        if len(degrees) > 1:
            raise DegreeError(f"Element {self} is not homogeneous (degrees {degrees})")
        return degrees[0]

    def homogeneous_part(self, degree: int) -> "Element":
        return Element({m: c for m, c in self._terms.items() if m.degree == degree})

    def homogeneous_parts(self) -> Dict[int, "Element"]:
        return {degree: self.homogeneous_part(degree) for degree in self.degrees()}

    def truncate(self, top_degree: Optional[int]) -> "Element":
        if top_degree is None:
            return self
        return Element({m: c for m, c in self._terms.items() if m.degree <= top_degree})

    def generators(self) -> List[Generator]:
        found = {gen for monomial in self._terms for gen, _ in monomial.factors}
        return sorted(found, key=lambda g: g.key)

    def linear_part(self) -> "Element":
        return Element({
            m: c for m, c in self._terms.items() if len(m.factors) == 1 and m.factors[0][1] == 1
        })

    def constant_term(self) -> Fraction:
        return self.coefficient(Monomial.unit())

    @property
    def is_decomposable(self) -> bool:
        """True when every term is a product of at least two generators"""
        return all(monomial.length >= 2 for monomial in self._terms)

    # Arithmetic

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        merged = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            merged[monomial] = merged.get(monomial, Fraction(0)) + coefficient
        return Element(merged)

    def __neg__(self) -> "Element":
        return Element({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: ScalarLike) -> "Element":
        value = to_scalar(factor)
        if not value:
            return Element()
        return Element({m: c * value for m, c in self._terms.items()})

    def __mul__(self, other: Union["Element", ScalarLike]) -> "Element":
        if isinstance(other, Element):
            return elem_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: ScalarLike) -> "Element":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "Element":
        if exponent < 0:
            raise ValueError("Negative powers are not defined")
        result = Element.one()
        for _ in range(exponent):
            result = result * self
        return result

    # Comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Element.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"Element({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for monomial, coefficient in self.terms():
            magnitude = abs(coefficient)
            if monomial.is_unit:
                body = str(magnitude)
            elif magnitude == 1:
                body = str(monomial)
            else:
                body = f"{magnitude}*{monomial}"
            sign = "-" if coefficient < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def elem_mul(a: Element, b: Element) -> Element:
    """Graded-commutative product with Koszul signs"""
    product: Dict[Monomial, Fraction] = {}
    for left, left_coefficient in a.items():
        for right, right_coefficient in b.items():
            normalized = multiply_monomials(left, right)
            if normalized is None:
                continue
            monomial, sign = normalized
            product[monomial] = product.get(monomial, Fraction(0)) + sign * left_coefficient * right_coefficient
    return Element(product)


def _monomials_of_degree(generators: Tuple[Generator, ...], degree: int) -> Iterator[Tuple[Tuple[Generator, int], ...]]:
    if degree == 0:
        yield ()
        return
    if not generators:
        return
    head, rest = generators[0], generators[1:]
    top = 1 if head.is_odd else degree // head.degree
    for exponent in range(0, top + 1):
        remaining = degree - exponent * head.degree
        if remaining < 0:
            break
        for tail in _monomials_of_degree(rest, remaining):
            yield (((head, exponent),) + tail) if exponent else tail


@cached(
    cache=LRUCache(maxsize=Config.AQ_CACHE_SIZE),
    key=lambda generators, degree: hashkey(sort_generators(generators), degree),
)
def window_basis(generators: Sequence[Generator], degree: int) -> Tuple[Monomial, ...]:
    """All canonical monomials of exactly ``degree``, in canonical order"""
    if degree < 0:
        return ()
    ordered = sort_generators(generators)
    basis = [Monomial(factors) for factors in _monomials_of_degree(ordered, degree)]
    basis.sort(key=lambda monomial: monomial.sort_key)
    return tuple(basis)


def coordinates(element: Element, basis: Sequence[Monomial]) -> List[Fraction]:
    """Coefficient vector of ``element`` in ``basis``"""
    index = {monomial: position for position, monomial in enumerate(basis)}
    vector = [Fraction(0)] * len(basis)
    for monomial, coefficient in element.items():
        if monomial not in index:
            raise DegreeError(f"Monomial {monomial} is outside the requested slice")
        vector[index[monomial]] = coefficient
    return vector


def from_coordinates(vector: Sequence[ScalarLike], basis: Sequence[Monomial]) -> Element:
    return Element({monomial: value for monomial, value in zip(basis, vector)})


def apply_algebra_map(element: Element, assignment: Mapping[str, Element]) -> Element:
    """Substitute generator images and extend multiplicatively"""
    accumulated = Element()
    for monomial, coefficient in element.items():
        image = Element.one()
        for gen, exponent in monomial.factors:
            if gen.id not in assignment:
                raise UnknownGeneratorError(gen.id, "algebra map")
            image = image * (assignment[gen.id] ** exponent)
            if image.is_zero:
                break
        accumulated = accumulated + image.scale(coefficient)
    return accumulated


def apply_derivation(
    element: Element,
    values: Mapping[str, Element],
    degree: int,
    along: Optional[Callable[[Element], Element]] = None,
) -> Element:
    """Extend generator values by the (twisted) graded Leibniz rule.

    θ(w₁⋯w_r) = Σᵢ (−1)^{|θ|(|w₁|+⋯+|w_{i−1}|)} φ(w₁⋯w_{i−1}) θ(wᵢ) φ(w_{i+1}⋯w_r)
    with φ = ``along`` (identity when omitted).
    """
    def image(word: Sequence[Generator]) -> Element:
        plain = Element.monomial(Monomial.from_sorted_word(word))
        return along(plain) if along is not None else plain

    total = Element()
    for monomial, coefficient in element.items():
        word = monomial.word()
        passed = 0
        for position, gen in enumerate(word):
            value = values.get(gen.id)
            if value is not None and not value.is_zero:
                term = image(word[:position]) * value * image(word[position + 1:])
                sign = -1 if (degree * passed) % 2 else 1
                total = total + term.scale(sign * coefficient)
            passed += gen.degree
    return total
