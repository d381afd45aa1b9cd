import pytest

from core.cdga import DgaMorphism, build_cdga, tensor_product
from core.errors import NotSimplyConnectedError
from core.graded_algebra import Element, Generator
from core.linear_algebra import DegreeWindow
from core.minimal_model import induced_rank, is_quasi_isomorphism, minimal_model


def _contractible_pair():
    a, b = Generator("a", 3), Generator("b", 4)
    return build_cdga([a, b], {"a": Element.generator(b)}, name="C")


def test_minimal_model_strips_contractible_part(s2):
    algebra = tensor_product(s2, _contractible_pair(), name="S2xC")
    assert not algebra.is_minimal
    model = minimal_model(algebra, 7)
    assert model.algebra.is_minimal
    assert [g.degree for g in model.algebra.generators] == [2, 3]
    assert model.quasi_isomorphism.is_chain_map
    assert is_quasi_isomorphism(model.quasi_isomorphism, DegreeWindow(0, 7))


def test_minimal_model_of_minimal_algebra_has_same_shape(cp2):
    model = minimal_model(cp2, 6)
    assert [g.degree for g in model.algebra.generators] == [2, 5]


def test_minimal_model_refuses_first_cohomology():
    u = Generator("u", 1)
    with pytest.raises(NotSimplyConnectedError):
        minimal_model(build_cdga([u], {}), 4)


def test_induced_rank(s2):
    zero = DgaMorphism(s2, s2, {}, name="zero")
    assert induced_rank(DgaMorphism.identity(s2), 2) == 1
    assert induced_rank(zero, 2) == 0
    assert not is_quasi_isomorphism(zero, DegreeWindow(0, 3))
