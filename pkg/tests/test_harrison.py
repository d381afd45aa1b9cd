from fractions import Fraction

import pytest

from core.cdga import DgModuleView, build_cdga
from core.derivation_complex import aq_cohomology_der
from core.errors import AlgebraError, NotSimplyConnectedError, WindowError
from core.graded_algebra import Generator
from core.harrison import (
    BarWord,
    annihilator_basis,
    aq_chain_quotient,
    aq_cohomology_harrison,
    bar_basis,
    bar_differential,
    harrison_word_dimensions,
    hochschild_differential,
    shuffle_product,
    vanishes_on_shuffles,
    word_slice,
)
from core.linear_algebra import DegreeWindow, rank


def _word(algebra, *ids):
    return BarWord(tuple(algebra.element(i).monomials()[0] for i in ids))


def _apply_twice(algebra, word):
    result = {}
    for image, c in bar_differential(algebra, word).items():
        for second, c2 in bar_differential(algebra, image).items():
            result[second] = result.get(second, 0) + c * c2
    return {w: c for w, c in result.items() if c}


def test_word_degrees(s2):
    word = _word(s2, "x", "y")
    assert word.length == 2
    assert word.internal_degree == 5
    assert word.total_degree == 4
    with pytest.raises(AlgebraError):
        BarWord(())


def test_shuffles_of_odd_letters_cancel(s2):
    x = _word(s2, "x")
    assert shuffle_product(x, x) == {}
    assert word_slice(s2, 2, 4).quotient_dimension == 1


def test_shuffles_of_mixed_letters(s2):
    x, y = _word(s2, "x"), _word(s2, "y")
    assert shuffle_product(x, y) == {_word(s2, "x", "y"): Fraction(1), _word(s2, "y", "x"): Fraction(1)}
    assert word_slice(s2, 2, 5).quotient_dimension == 1


@pytest.mark.parametrize("length,internal", [(1, 4), (2, 5), (2, 6), (3, 7), (3, 8)])
def test_bar_differential_squares_to_zero(cp2, length, internal):
    for word in bar_basis(cp2, length, internal):
        assert _apply_twice(cp2, word) == {}, str(word)


def test_annihilator_cochains_vanish_on_shuffles(s2):
    module = DgModuleView.trivial(s2)
    for cochain in annihilator_basis(s2, module, -3, length_bound=3):
        assert vanishes_on_shuffles(cochain, s2, length_bound=3)


@pytest.mark.parametrize("degree", [-4, -3, -2])
def test_shuffle_vanishing_cochains_form_a_subcomplex(cp2, degree):
    module = DgModuleView.trivial(cp2)
    for cochain in annihilator_basis(cp2, module, degree, length_bound=4):
        image = hochschild_differential(cochain, cp2, length_bound=4)
        assert vanishes_on_shuffles(image, cp2, length_bound=4)
        assert all(v.is_zero for v in hochschild_differential(image, cp2, length_bound=4).values.values())


@pytest.mark.parametrize("fixture", ["s2", "cp2"])
def test_word_quotient_is_dual_to_shuffle_vanishing_cochains(request, fixture):
    algebra = request.getfixturevalue(fixture)
    module = DgModuleView.trivial(algebra)
    quotient = harrison_word_dimensions(algebra, DegreeWindow(0, 7))
    assert quotient[0] == 0
    for n in range(1, 8):
        cochains = annihilator_basis(algebra, module, -n, length_bound=n)
        assert len(cochains) == quotient[n], n
        # words minus independent shuffles, counted from the shuffle product alone
        expected = 0
        for length in range(1, n):
            words = bar_basis(algebra, length, n + length - 1)
            index = {w: i for i, w in enumerate(words)}
            rows = []
            for word in words:
                for p in range(1, length):
                    u, v = BarWord(word.letters[:p]), BarWord(word.letters[p:])
                    row = [0] * len(words)
                    for image, c in shuffle_product(u, v).items():
                        row[index[image]] += c
                    rows.append(row)
            expected += len(words) - (rank(rows, len(words)) if rows else 0)
        assert quotient[n] == expected, n


@pytest.mark.parametrize(
    "name,top,window",
    [
        ("polynomial", None, DegreeWindow(-6, 0)),
        ("sphere", None, DegreeWindow(-5, 0)),
        ("sphere", 8, DegreeWindow(-2, 0)),
        ("cp2", None, DegreeWindow(-5, 0)),
    ],
)
def test_routes_agree_on_certified_degrees(polynomial_x2, s2, cp2, name, top, window):
    algebra = {"polynomial": polynomial_x2, "sphere": s2, "cp2": cp2}[name]
    if top is None:
        module = DgModuleView.trivial(algebra)
    else:
        module = DgModuleView.identity(algebra, top_degree=top)
    harrison = aq_cohomology_harrison(algebra, module, window)
    assert harrison.uncertified_degrees == []
    assert harrison.certified_dimensions() == aq_cohomology_der(algebra, module, window).dimensions()


def test_sphere_with_rational_coefficients(s2):
    harrison = aq_cohomology_harrison(s2, DgModuleView.trivial(s2), DegreeWindow(-4, 0))
    assert harrison.certified_dimensions() == {-4: 0, -3: 1, -2: 1, -1: 0, 0: 0}


def test_short_length_bound_leaves_degrees_uncertified(s2):
    module = DgModuleView.trivial(s2)
    harrison = aq_cohomology_harrison(s2, module, DegreeWindow(-4, 0), length_bound=2)
    assert harrison.certified_degrees == [-2, -1, 0]
    assert harrison.uncertified_degrees == [-4, -3]
    der = aq_cohomology_der(s2, module, DegreeWindow(-2, 0)).dimensions()
    assert harrison.certified_dimensions() == der


def test_harrison_route_refusals(s2):
    u = Generator("u", 1)
    circle = build_cdga([u], {})
    with pytest.raises(NotSimplyConnectedError):
        aq_cohomology_harrison(circle, DgModuleView.trivial(circle), DegreeWindow(-1, 0))
    with pytest.raises(WindowError):
        aq_cohomology_harrison(s2, DgModuleView.identity(s2), DegreeWindow(-1, 0))


@pytest.mark.parametrize("fixture", ["polynomial_x2", "s2"])
def test_chain_quotient_matches_kahler_complex(request, fixture):
    report = aq_chain_quotient(request.getfixturevalue(fixture), DegreeWindow(0, 5))
    assert report.chain_map
    assert report.agrees
    assert all(report.surjective.values())
