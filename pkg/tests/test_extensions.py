import pytest

from core.cdga import DgaMorphism, DgModuleView
from core.derivation_complex import Derivation, aq_cohomology_der, derivation_space
from core.errors import AlgebraError
from core.extensions import SqZeroElement, kahler_differentials, square_zero_extension, square_zero_map_dimension
from core.graded_algebra import Element
from core.linear_algebra import DegreeWindow, rank
from tests.conftest import gen, random_homogeneous


def test_epsilon_squares_to_zero(s2):
    extension = square_zero_extension(DgModuleView.identity(s2), shift=-2)
    assert extension.epsilon_degree == 2
    eps_x = extension.element(module=gen(s2, "x"))
    assert extension.multiply(eps_x, eps_x).is_zero


def test_carrier_product_and_differential(s2):
    x, y = gen(s2, "x"), gen(s2, "y")
    extension = square_zero_extension(DgModuleView.identity(s2), shift=-1)
    left = SqZeroElement(y, Element())
    right = SqZeroElement(Element(), x)
    # (−1)^{shift·|y|} y·x in the module part
    assert extension.multiply(left, right).module == (y * x).scale(-1)
    assert extension.d(SqZeroElement(y, y)).module == (x ** 2).scale(-1)
    assert extension.d(extension.d(SqZeroElement(y, y))).is_zero
    assert extension.project(SqZeroElement(y, x)) == y


def test_carrier_basis_shifts_module_degrees(s2):
    extension = square_zero_extension(DgModuleView.identity(s2), shift=-1)
    labels = extension.basis(3)
    assert ("A", s2.basis(3)[0]) in labels
    assert ("M", s2.basis(2)[0]) in labels


@pytest.mark.parametrize("n", [1, 2, 3])
def test_square_zero_maps_match_derivation_cocycles(s2, n):
    identity = DgaMorphism.identity(s2)
    module = DgModuleView.identity(s2)
    lifted = square_zero_map_dimension(identity, module, -n)
    cocycles = aq_cohomology_der(s2, module, DegreeWindow(-n, -n)).slices[-n].cocycle_dimension
    assert lifted == cocycles


def test_square_zero_maps_need_shared_algebra(s2, s3):
    with pytest.raises(AlgebraError):
        square_zero_map_dimension(DgaMorphism.identity(s2), DgModuleView.identity(s3), -1)


def test_universal_derivation_of_products(s2):
    omega = kahler_differentials(s2)
    x = gen(s2, "x")
    assert omega.delta(x ** 3) == {"x": (x ** 2).scale(3)}
    assert omega.d({"y": Element.one()}) == {"x": x.scale(2)}


def test_kahler_complex_of_polynomial_algebra(polynomial_x2):
    omega = kahler_differentials(polynomial_x2)
    dims = {k: piece.dimension for k, piece in omega.cohomology(DegreeWindow(0, 6)).items()}
    assert dims == {0: 0, 1: 0, 2: 1, 3: 0, 4: 1, 5: 0, 6: 1}
    assert omega.hom_dimension(DgModuleView.trivial(polynomial_x2), -2) == 1


@pytest.mark.parametrize("degree", [-1, 0])
def test_pairing_with_forms_reproduces_derivations(s2, rng, degree):
    module = DgModuleView.identity(s2)
    omega = kahler_differentials(s2)
    for _ in range(30):
        values = {
            g.id: random_homogeneous(rng, s2, g.degree + degree, terms=2) for g in s2.generators
        }
        theta = Derivation(s2, module, degree, values)
        element = random_homogeneous(rng, s2, int(rng.integers(2, 9)))
        assert omega.evaluate_pairing(theta.values, element, module, degree) == theta.apply(element)


def _module_maps_by_linearity(algebra, module, degree, top):
    """dim of degree-d maps h: Ω_A → M with h(a·ω) = (−1)^{d|a|} a·h(ω), solved on Ω^{≤top−d}"""
    omega = kahler_differentials(algebra)
    low = min(g.degree for g in algebra.generators)
    slices = {k: omega.basis(k) for k in range(low, top - degree + 1)}
    offsets, size = {}, 0
    for k, labels in slices.items():
        offsets[k] = size
        size += len(labels) * len(module.basis(k + degree))
    rows = []
    for k, labels in slices.items():
        targets = module.basis(k + degree)
        for index, (m, gen_id) in enumerate(labels):
            for a in algebra.generators:
                outputs = module.basis(k + a.degree + degree)
                moved = {gen_id: Element.generator(a) * Element.monomial(m)}
                moved_coordinates = omega.coordinates(moved, k + a.degree) if not moved[gen_id].is_zero else []
                sign = -1 if (degree * a.degree) % 2 else 1
                for r, output in enumerate(outputs):
                    row = [0] * size
                    for j, c in enumerate(moved_coordinates):
                        row[offsets[k + a.degree] + j * len(outputs) + r] += c
                    for s, target in enumerate(targets):
                        c = module.multiply(module.phi(Element.generator(a)), Element.monomial(target)).coefficient(output)
                        row[offsets[k] + index * len(targets) + s] -= sign * c
                    rows.append(row)
    return size - (rank(rows, size) if rows else 0)


@pytest.mark.parametrize("name", ["s2", "cp2", "polynomial_x2"])
@pytest.mark.parametrize("coefficients", ["trivial", "identity"])
def test_module_maps_from_kahler_forms_are_derivations(request, name, coefficients):
    algebra = request.getfixturevalue(name)
    if coefficients == "trivial":
        module, top = DgModuleView.trivial(algebra), 0
    else:
        module, top = DgModuleView.identity(algebra, top_degree=5), 5
    omega = kahler_differentials(algebra)
    for degree in range(-4, 1):
        expected = len(derivation_space(algebra, module, degree))
        assert _module_maps_by_linearity(algebra, module, degree, top) == expected, degree
        assert omega.hom_dimension(module, degree) == expected
