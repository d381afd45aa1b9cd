"""
Harrison route to André-Quillen cohomology.

Bar words (a₁|…|a_ℓ) use letters from the basis monomials of A⁺. A letter
a contributes |a| − 1 to Koszul signs (desuspended grading); with this
choice the shuffle products span a subcomplex of the bar complex and the
shuffle-vanishing cochains form a subcomplex of the Hochschild cochains.

Degrees: a word has total degree internal − ℓ + 1; a cochain of degree t
sends such a word to M^{t + total}.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from config import Config
from .cdga import DgModuleView, FreeCdga
from .errors import AlgebraError, NotMinimalError, NotSimplyConnectedError, WindowError
from .extensions import KahlerForm, kahler_differentials
from .graded_algebra import Element, Generator, Monomial, sort_generators, window_basis
from .linear_algebra import (
    CohomologySlice,
    ComplexWindow,
    DegreeWindow,
    cohomology_window,
    is_zero_matrix,
    mat_mul,
    matrix_from_columns,
    rank,
    reduced_row_echelon,
)

logger = logging.getLogger(__name__)

Letters = Tuple[Monomial, ...]


def _letter_degree(letter: Monomial) -> int:
    return letter.degree - 1


def _word_degree(letters: Sequence[Monomial]) -> int:
    return sum(_letter_degree(letter) for letter in letters)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@dataclass(frozen=True)
class BarWord:
    letters: Letters

    def __post_init__(self):
        if not self.letters:
            raise AlgebraError("Bar words have at least one letter")
        if any(letter.is_unit for letter in self.letters):
            raise AlgebraError("Bar letters must lie in the augmentation ideal")

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def internal_degree(self) -> int:
        return sum(letter.degree for letter in self.letters)

    @property
    def bar_degree(self) -> int:
        return _word_degree(self.letters)

    @property
    def total_degree(self) -> int:
        return self.internal_degree - self.length + 1

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.length, self.internal_degree)

    def __str__(self) -> str:
        return "(" + "|".join(str(letter) for letter in self.letters) + ")"


Chain = Dict[BarWord, Fraction]


def _accumulate(target: Dict, key, value):
    if not value:
        return
    total = target.get(key, 0) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def _compositions(total: int, parts: int, smallest: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(smallest, total - smallest * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, smallest):
            yield (first,) + rest


@cached(cache=LRUCache(maxsize=Config.AQ_CACHE_SIZE), key=lambda gens, length, internal: hashkey(gens, length, internal))
def _bar_basis(gens: Tuple[Generator, ...], length: int, internal: int) -> Tuple[BarWord, ...]:
    if length < 1:
        return ()
    smallest = min((g.degree for g in gens), default=1)
    words = []
    for degrees in _compositions(internal, length, max(smallest, 1)):
        slices = [window_basis(gens, degree) for degree in degrees]
        words.extend(BarWord(tuple(letters)) for letters in product(*slices))
    return tuple(words)


def bar_basis(algebra: FreeCdga, length: int, internal: int) -> List[BarWord]:
    """All words of the given length and internal degree, in deterministic order"""
    return list(_bar_basis(sort_generators(algebra.generators), length, internal))


@cached(cache=LRUCache(maxsize=Config.AQ_CACHE_SIZE * 16))
def _shuffle(u: Letters, v: Letters) -> Tuple[Tuple[Letters, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    x, u_rest = u[0], u[1:]
    y, v_rest = v[0], v[1:]
    result: Dict[Letters, int] = {}
    for word, coefficient in _shuffle(u_rest, v):
        _accumulate(result, (x,) + word, coefficient)
    sign = _sign(_letter_degree(y) * (_letter_degree(x) + _word_degree(u_rest)))
    for word, coefficient in _shuffle(u, v_rest):
        _accumulate(result, (y,) + word, sign * coefficient)
    return tuple(result.items())


def shuffle_product(u: BarWord, v: BarWord) -> Chain:
    """Signed sum over riffle interleavings of u and v"""
    return {BarWord(word): Fraction(c) for word, c in _shuffle(u.letters, v.letters)}


def _expand_letter(prefix: Letters, element: Element, suffix: Letters, factor, chain: Chain):
    for monomial, coefficient in element.items():
        if monomial.is_unit:
            raise AlgebraError("Bar letters must lie in the augmentation ideal")
        _accumulate(chain, BarWord(prefix + (monomial,) + suffix), factor * coefficient)


def bar_differential(algebra: FreeCdga, word: BarWord) -> Chain:
    """Q(a₁|…|aₙ): internal part −(−1)^{ε} s(daᵢ), multiplication part (−1)^{ε+|aᵢ|} s(aᵢaᵢ₊₁)"""
    letters = word.letters
    chain: Chain = {}
    passed = 0
    for i, letter in enumerate(letters):
        internal = algebra.d(Element.monomial(letter))
        _expand_letter(letters[:i], internal, letters[i + 1:], -_sign(passed), chain)
        if i + 1 < len(letters):
            merged = Element.monomial(letter) * Element.monomial(letters[i + 1])
            _expand_letter(letters[:i], merged, letters[i + 2:], _sign(passed + letter.degree), chain)
        passed += _letter_degree(letter)
    return chain


@dataclass
class WordSlice:
    """Words of one shape with the shuffle span eliminated.

    ``projection[w]`` gives the coordinates of the class of w in W/Sh over
    the free (non-pivot) words.
    """
    shape: Tuple[int, int]
    words: List[BarWord]
    free: List[BarWord]
    projection: Dict[BarWord, Dict[int, Fraction]]

    @property
    def quotient_dimension(self) -> int:
        return len(self.free)


@cached(cache=LRUCache(maxsize=Config.AQ_CACHE_SIZE), key=lambda gens, length, internal: hashkey(gens, length, internal))
def _word_slice(gens: Tuple[Generator, ...], length: int, internal: int) -> WordSlice:
    words = list(_bar_basis(gens, length, internal))
    index = {w: i for i, w in enumerate(words)}
    rows = []
    for p in range(1, length // 2 + 1):
        for k1 in range(p, internal - (length - p) + 1):
            for u in _bar_basis(gens, p, k1):
                for v in _bar_basis(gens, length - p, internal - k1):
                    row = [Fraction(0)] * len(words)
                    for letters, c in _shuffle(u.letters, v.letters):
                        row[index[BarWord(letters)]] += c
                    if any(row):
                        rows.append(row)
    reduced, pivots = reduced_row_echelon(rows, len(words)) if rows else ([], [])
    pivot_set = set(pivots)
    free_columns = [j for j in range(len(words)) if j not in pivot_set]
    position = {j: f for f, j in enumerate(free_columns)}
    projection: Dict[BarWord, Dict[int, Fraction]] = {}
    for j in free_columns:
        projection[words[j]] = {position[j]: Fraction(1)}
    for r, p in enumerate(pivots):
        projection[words[p]] = {position[j]: -reduced[r][j] for j in free_columns if reduced[r][j]}
    logger.debug("word slice %s: %d words, %d free", (length, internal), len(words), len(free_columns))
    return WordSlice((length, internal), words, [words[j] for j in free_columns], projection)


def word_slice(algebra: FreeCdga, length: int, internal: int) -> WordSlice:
    return _word_slice(sort_generators(algebra.generators), length, internal)


def _min_letter_degree(algebra: FreeCdga) -> int:
    return min((g.degree for g in algebra.generators), default=2)


# Cochains


@dataclass
class Cochain:
    """Functional on bar words with values in M, of degree t"""
    module: DgModuleView
    degree: int
    values: Dict[BarWord, Element] = field(default_factory=dict)
    evaluator: Optional[Callable[[BarWord], Element]] = None

    def evaluate(self, word: BarWord) -> Element:
        if self.evaluator is not None:
            return self.evaluator(word)
        return self.values.get(word, Element())

    @property
    def parity(self) -> int:
        """|f| = t + 1 under the desuspended convention"""
        return self.degree + 1

    def support_length(self) -> int:
        return max((w.length for w, v in self.values.items() if not v.is_zero), default=0)


def _differential_at(cochain: Cochain, algebra: FreeCdga, word: BarWord, q_cache: Dict[BarWord, Chain]) -> Element:
    module = cochain.module
    f_sign = _sign(cochain.parity)
    total = module.d(cochain.evaluate(word))
    if word not in q_cache:
        q_cache[word] = bar_differential(algebra, word)
    for image, coefficient in q_cache[word].items():
        total = total - cochain.evaluate(image).scale(f_sign * coefficient)
    n = word.length
    if n >= 2:
        first, last = word.letters[0], word.letters[-1]
        left = module.multiply(module.phi(Element.monomial(first)), cochain.evaluate(BarWord(word.letters[1:])))
        total = total + left.scale(_sign(cochain.parity * _letter_degree(first)))
        eps = _word_degree(word.letters[:-1])
        right = module.multiply(cochain.evaluate(BarWord(word.letters[:-1])), module.phi(Element.monomial(last)))
        total = total - right.scale(_sign(cochain.parity + eps))
    return module.truncate(total)


def _words_of_degree(algebra: FreeCdga, module: DgModuleView, degree: int, max_length: int) -> Iterator[BarWord]:
    top = module.effective_top_degree()
    smallest = _min_letter_degree(algebra)
    for length in range(1, max_length + 1):
        for value_degree in range(0, top + 1):
            internal = value_degree + length - degree - 1
            if internal < smallest * length:
                continue
            yield from bar_basis(algebra, length, internal)


def hochschild_differential(cochain: Cochain, algebra: FreeCdga, length_bound: int) -> Cochain:
    """Df on every word of length ≤ length_bound"""
    if cochain.module.effective_top_degree() is None:
        raise WindowError("Coefficients must be bounded above")
    if cochain.evaluator is None and cochain.support_length() + 1 > length_bound:
        raise WindowError(
            f"Cochain is supported on words of length {cochain.support_length()}; "
            f"its differential needs length bound ≥ {cochain.support_length() + 1}"
        )
    q_cache: Dict[BarWord, Chain] = {}
    values = {}
    for word in _words_of_degree(algebra, cochain.module, cochain.degree + 1, length_bound):
        value = _differential_at(cochain, algebra, word, q_cache)
        if not value.is_zero:
            values[word] = value
    return Cochain(cochain.module, cochain.degree + 1, values)


def vanishes_on_shuffles(cochain: Cochain, algebra: FreeCdga, length_bound: int) -> bool:
    for word in _words_of_degree(algebra, cochain.module, cochain.degree, length_bound):
        if word.length < 2:
            continue
        for p in range(1, word.length):
            u, v = BarWord(word.letters[:p]), BarWord(word.letters[p:])
            total = Element()
            for image, coefficient in shuffle_product(u, v).items():
                total = total + cochain.evaluate(image).scale(coefficient)
            if not total.is_zero:
                return False
    return True


CochainLabel = Tuple[Tuple[int, int], int, Monomial]


def _cochain_labels(algebra: FreeCdga, module: DgModuleView, degree: int, max_length: int) -> List[CochainLabel]:
    top = module.effective_top_degree()
    smallest = _min_letter_degree(algebra)
    labels: List[CochainLabel] = []
    for length in range(1, max_length + 1):
        for value_degree in range(0, top + 1):
            internal = value_degree + length - degree - 1
            if internal < smallest * length:
                continue
            targets = module.basis(value_degree)
            if not targets:
                continue
            piece = word_slice(algebra, length, internal)
            for f in range(piece.quotient_dimension):
                labels.extend(((length, internal), f, m) for m in targets)
    return labels


def annihilator_cochain(algebra: FreeCdga, module: DgModuleView, degree: int, label: CochainLabel) -> Cochain:
    """The shuffle-vanishing cochain w ↦ π(w)_f · m"""
    shape, free_index, target = label
    piece = word_slice(algebra, *shape)
    value = Element.monomial(target)

    def evaluate(word: BarWord) -> Element:
        if word.shape != shape:
            return Element()
        return value.scale(piece.projection[word].get(free_index, 0))

    return Cochain(module, degree, evaluator=evaluate)


def annihilator_basis(algebra: FreeCdga, module: DgModuleView, degree: int, length_bound: int) -> List[Cochain]:
    return [annihilator_cochain(algebra, module, degree, label)
            for label in _cochain_labels(algebra, module, degree, length_bound)]


def _coordinates_on_free_words(
    cochain: Cochain, algebra: FreeCdga, labels: Sequence[CochainLabel], q_cache: Dict[BarWord, Chain]
) -> List[Fraction]:
    vector = []
    evaluated: Dict[BarWord, Element] = {}
    for shape, free_index, target in labels:
        word = word_slice(algebra, *shape).free[free_index]
        if word not in evaluated:
            evaluated[word] = _differential_at(cochain, algebra, word, q_cache)
        vector.append(evaluated[word].coefficient(target))
    return vector


@dataclass
class HarrisonCohomology:
    window: DegreeWindow
    length_bound: int
    slices: Dict[int, CohomologySlice]
    required_length: Dict[int, int]

    @property
    def certified_degrees(self) -> List[int]:
        return [t for t in self.window.degrees() if self.required_length[t] <= self.length_bound]

    @property
    def uncertified_degrees(self) -> List[int]:
        return [t for t in self.window.degrees() if self.required_length[t] > self.length_bound]

    def dimensions(self) -> Dict[int, int]:
        return {t: piece.dimension for t, piece in self.slices.items()}

    def certified_dimensions(self) -> Dict[int, int]:
        return {t: self.slices[t].dimension for t in self.certified_degrees}


def harrison_complex_window(
    algebra: FreeCdga, module: DgModuleView, window: DegreeWindow, length_bound: int
) -> ComplexWindow:
    bases = {t: _cochain_labels(algebra, module, t, length_bound) for t in window.degrees()}
    q_cache: Dict[BarWord, Chain] = {}
    differentials = {}
    for t in range(window.lo, window.hi):
        columns = [
            _coordinates_on_free_words(annihilator_cochain(algebra, module, t, label), algebra, bases[t + 1], q_cache)
            for label in bases[t]
        ]
        differentials[t] = matrix_from_columns(columns, len(bases[t + 1]))
    return ComplexWindow(window=window, bases=bases, differentials=differentials)


def aq_cohomology_harrison(
    algebra: FreeCdga,
    module: DgModuleView,
    window: DegreeWindow,
    length_bound: Optional[int] = None,
) -> HarrisonCohomology:
    """Cohomology of shuffle-vanishing cochains on the window.

    A degree t is certified when every word that can carry a non-zero value
    at degrees t − 1, t, t + 1 has length ≤ length_bound, i.e. when the
    bound is at least top(M) − t.
    """
    if not algebra.is_simply_connected:
        raise NotSimplyConnectedError("The Harrison route needs all generator degrees ≥ 2")
    top = module.effective_top_degree()
    if top is None:
        raise WindowError(f"Coefficients {module.name} must be bounded above; pass a top degree")
    bound = length_bound if length_bound is not None else Config.AQ_DEFAULT_LENGTH_BOUND
    required = {t: max(top - t, 1) for t in window.degrees()}
    widened = window.widen(1)
    complex_window = harrison_complex_window(algebra, module, widened, bound)
    slices = cohomology_window(complex_window)
    kept = {}
    for t in window.degrees():
        slices[t].edge = None
        kept[t] = slices[t]
    result = HarrisonCohomology(window, bound, kept, required)
    if result.uncertified_degrees:
        logger.warning(
            "Harrison cohomology of %s on %s is truncated at length %d for degrees %s",
            algebra.name, window, bound, result.uncertified_degrees,
        )
    return result


def harrison_word_dimensions(algebra: FreeCdga, window: DegreeWindow) -> Dict[int, int]:
    """dim of W/Sh in each total degree of the window (positive part only)"""
    if not algebra.is_simply_connected:
        raise NotSimplyConnectedError()
    smallest = _min_letter_degree(algebra)
    dims = {}
    for n in window.degrees():
        total = 0
        for length in range(1, max(n, 0) + 1):
            internal = n + length - 1
            if internal >= smallest * length:
                total += word_slice(algebra, length, internal).quotient_dimension
        dims[n] = total
    return dims


# Chain side

ChainLabel = Tuple[Monomial, BarWord]


def chain_differential(algebra: FreeCdga, coefficient: Monomial, word: BarWord) -> Dict[ChainLabel, Fraction]:
    """∂(a⊗w) on A ⊗ W, weight-zero terms dropped"""
    result: Dict[ChainLabel, Fraction] = {}
    a = Element.monomial(coefficient)
    a_sign = _sign(coefficient.degree)
    for monomial, c in algebra.d(a).items():
        _accumulate(result, (monomial, word), c)
    for image, c in bar_differential(algebra, word).items():
        _accumulate(result, (coefficient, image), a_sign * c)
    n = word.length
    if n >= 2:
        first, last = word.letters[0], word.letters[-1]
        for monomial, c in (a * Element.monomial(first)).items():
            _accumulate(result, (monomial, BarWord(word.letters[1:])), -a_sign * c)
        eps = _word_degree(word.letters[:-1])
        sign = _sign(coefficient.degree + eps * (last.degree + 1))
        for monomial, c in (a * Element.monomial(last)).items():
            _accumulate(result, (monomial, BarWord(word.letters[:-1])), sign * c)
    return result


def comparison_map(algebra: FreeCdga, coefficient: Monomial, word: BarWord) -> KahlerForm:
    """a⊗(a₁) ↦ (−1)^{|a₁|} a·δa₁; longer words map to zero"""
    if word.length != 1:
        return {}
    omega = kahler_differentials(algebra)
    letter = word.letters[0]
    form = omega.delta(Element.monomial(letter))
    return omega.scale_left(Element.monomial(coefficient, _sign(letter.degree)), form)


def _quotient_labels(algebra: FreeCdga, degree: int) -> List[ChainLabel]:
    smallest = _min_letter_degree(algebra)
    labels: List[ChainLabel] = []
    for length in range(1, max(degree, 0) + 1):
        for coefficient_degree in range(0, degree - length):
            internal = degree - coefficient_degree + length - 1
            if internal < smallest * length:
                continue
            free = word_slice(algebra, length, internal).free
            for m in algebra.basis(coefficient_degree):
                labels.extend((m, w) for w in free)
    return labels


def _project_chain(algebra: FreeCdga, chain: Mapping[ChainLabel, Fraction], labels: Sequence[ChainLabel]) -> List[Fraction]:
    index = {label: i for i, label in enumerate(labels)}
    vector = [Fraction(0)] * len(labels)
    for (monomial, word), c in chain.items():
        piece = word_slice(algebra, *word.shape)
        for free_index, weight in piece.projection[word].items():
            label = (monomial, piece.free[free_index])
            if label not in index:
                raise WindowError(f"Chain term {monomial}⊗{word} falls outside the window")
            vector[index[label]] += c * weight
    return vector


@dataclass
class ChainQuotientReport:
    window: DegreeWindow
    quotient: Dict[int, CohomologySlice]
    kahler: Dict[int, CohomologySlice]
    surjective: Dict[int, bool]
    chain_map: bool

    @property
    def agrees(self) -> bool:
        return all(self.quotient[n].dimension == self.kahler[n].dimension for n in self.window.degrees())

    def dimensions(self) -> Dict[str, Dict[int, int]]:
        return {
            "quotient": {n: s.dimension for n, s in self.quotient.items()},
            "kahler": {n: s.dimension for n, s in self.kahler.items()},
        }


def aq_chain_quotient(algebra: FreeCdga, window: DegreeWindow) -> ChainQuotientReport:
    """Homology of (A ⊗ W)/(A ⊗ Sh) compared with H(Ω_A) through a⊗(b) ↦ ±a·δb"""
    if not algebra.is_minimal:
        raise NotMinimalError(f"{algebra.name} is not minimal")
    if not algebra.is_simply_connected:
        raise NotSimplyConnectedError()
    widened = window.widen(1)
    omega = kahler_differentials(algebra)
    bases = {n: _quotient_labels(algebra, n) for n in widened.degrees()}
    differentials = {}
    for n in range(widened.lo, widened.hi):
        columns = [_project_chain(algebra, chain_differential(algebra, m, w), bases[n + 1]) for m, w in bases[n]]
        differentials[n] = matrix_from_columns(columns, len(bases[n + 1]))
    quotient_complex = ComplexWindow(widened, bases, differentials)
    quotient = cohomology_window(quotient_complex)
    omega_window = omega.complex_window(widened)
    kahler = cohomology_window(omega_window)

    comparisons = {}
    surjective = {}
    for n in widened.degrees():
        columns = [omega.coordinates(comparison_map(algebra, m, w), n) for m, w in bases[n]]
        comparisons[n] = matrix_from_columns(columns, omega_window.dimension(n))
        if n in window:
            surjective[n] = rank(comparisons[n], len(bases[n])) == omega_window.dimension(n)

    chain_map = True
    for n in range(widened.lo, widened.hi):
        left = mat_mul(comparisons[n + 1], quotient_complex.differential(n),
                       inner=len(bases[n + 1]), columns=len(bases[n]))
        right = mat_mul(omega_window.differential(n), comparisons[n],
                        inner=omega_window.dimension(n), columns=len(bases[n]))
        difference = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(left, right)]
        if not is_zero_matrix(difference):
            chain_map = False
            logger.warning("Comparison map fails to commute with differentials in degree %d", n)

    kept_q, kept_k = {}, {}
    for n in window.degrees():
        quotient[n].edge = None
        kahler[n].edge = None
        kept_q[n], kept_k[n] = quotient[n], kahler[n]
    return ChainQuotientReport(window, kept_q, kept_k, surjective, chain_map)
