import pytest

from core.cdga import DgaMorphism, DgModuleView
from core.derivation_complex import Derivation, der_differential, derivation_labels, nilpotency_check
from core.errors import NonNilpotentError, NotAutomorphismError
from core.graded_algebra import Element
from core.homotopy import (
    PolynomialHomotopy,
    check_homotopy,
    exp_homotopy,
    is_homotopic_to_identity,
    poly_derivative,
    poly_evaluate,
    poly_mul,
)
from spaces import space_catalog
from tests.conftest import gen


def test_polynomial_helpers(s2):
    x = gen(s2, "x")
    poly = [x, x.scale(2)]  # x + 2x·t
    assert poly_evaluate(poly, 1) == x.scale(3)
    assert poly_derivative(poly) == [x.scale(2)]
    assert poly_mul(poly, [Element.one(), Element.one()]) == [x, x.scale(3), x.scale(2)]


def test_exp_homotopy_of_a_nontrivial_lowering(s2_times_k4):
    algebra = s2_times_k4
    module = DgModuleView.identity(algebra)
    G0 = Derivation(algebra, module, -1, {"x2": gen(algebra, "y1")})
    homotopy = exp_homotopy(algebra, G0)
    assert check_homotopy(homotopy).valid
    assert homotopy.e0() == DgaMorphism.identity(algebra)
    F1 = homotopy.e1()
    assert F1.image("x2") == gen(algebra, "x2") + gen(algebra, "x1") ** 2
    decision = is_homotopic_to_identity(F1)
    assert decision.is_homotopic
    assert der_differential(decision.witness) == der_differential(G0)


def test_scaling_automorphism_is_not_homotopic_to_identity(scaling_s2):
    decision = is_homotopic_to_identity(scaling_s2)
    assert not decision.is_homotopic
    assert decision.witness is None


def test_identity_is_homotopic_to_itself(cp2):
    decision = is_homotopic_to_identity(DgaMorphism.identity(cp2))
    assert decision.is_homotopic
    assert decision.logarithm.is_zero


def test_non_invertible_self_map_is_refused(s2):
    with pytest.raises(NotAutomorphismError):
        is_homotopic_to_identity(DgaMorphism(s2, s2, {}, name="zero"))


def test_check_homotopy_reports_a_broken_flow(s2):
    x, y = gen(s2, "x"), gen(s2, "y")
    # F(t)(x) = x + t·x with G = 0 cannot satisfy ∂_t F = G∘d + d∘G
    broken = PolynomialHomotopy(s2, {"x": [x, x], "y": [y]}, {})
    report = check_homotopy(broken)
    assert not report.valid
    assert any(v.startswith("flow") for v in report.violations)


@pytest.mark.parametrize("name", ["sphere(2)", "complex_projective(2)", "product(sphere(2),k(Q,4))", "product(sphere(2),sphere(2))"])
def test_exhaustive_elementary_lowerings(name):
    algebra = space_catalog(name).model
    module = DgModuleView.identity(algebra)
    for label in derivation_labels(algebra, module, -1):
        G0 = Derivation.elementary(algebra, module, -1, label)
        try:
            homotopy = exp_homotopy(algebra, G0)
        except NonNilpotentError:
            assert nilpotency_check(der_differential(G0), 2 * len(algebra.basis(algebra.max_generator_degree)) + 2) is None
            continue
        assert check_homotopy(homotopy).valid, str(G0)
        assert is_homotopic_to_identity(homotopy.e1()).is_homotopic, str(G0)
