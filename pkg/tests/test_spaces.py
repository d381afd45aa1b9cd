import pytest

from core.cdga import DgaMorphism
from core.errors import AlgebraError, DegreeError
from spaces import (
    BasedMap,
    ComplexProjective,
    EilenbergMacLane,
    Point,
    ProductSpace,
    Sphere,
    UserSpace,
    catalog_names,
    create_space,
    space_catalog,
)


def test_catalog_parses_names():
    assert isinstance(space_catalog("sphere(2)"), Sphere)
    assert isinstance(space_catalog("complex_projective(3)"), ComplexProjective)
    assert isinstance(space_catalog("k(Q,4)"), EilenbergMacLane)
    assert isinstance(space_catalog("point"), Point)
    assert isinstance(space_catalog("product(sphere(2), sphere(3))"), ProductSpace)


def test_catalog_is_cached():
    assert space_catalog("sphere(4)") is space_catalog("sphere(4)")


@pytest.mark.parametrize(
    "name",
    ["torus", "sphere(two)", "sphere(2", "k(Z,2)", "sphere(2,3)", "product()", "complex_projective()"],
)
def test_catalog_rejects_bad_names(name):
    with pytest.raises(AlgebraError):
        space_catalog(name)


def test_sphere_models():
    odd, even = space_catalog("sphere(5)").model, space_catalog("sphere(4)").model
    assert [(g.id, g.degree) for g in odd.generators] == [("x", 5)]
    assert [(g.id, g.degree) for g in even.generators] == [("x", 4), ("y", 7)]
    with pytest.raises(DegreeError):
        Sphere(0)


def test_product_renames_factor_generators(s2_times_k4):
    assert s2_times_k4.ids == ("x1", "y1", "x2")
    space = space_catalog("product(sphere(2),k(Q,4))")
    assert space.cohomology_top is None
    assert space_catalog("product(sphere(2),sphere(3))").cohomology_top == 5


def test_cohomology_dimensions():
    assert space_catalog("complex_projective(2)").cohomology_dimensions(5) == {0: 1, 1: 0, 2: 1, 3: 0, 4: 1, 5: 0}
    assert space_catalog("point").cohomology_dimensions(2) == {0: 1, 1: 0, 2: 0}
    assert space_catalog("sphere(3)").pi_dimension(3) == 1


def test_create_space_factory():
    assert create_space("sphere", 3).name == "sphere(3)"
    with pytest.raises(AlgebraError):
        create_space("torus", 2)
    assert "sphere(n)" in catalog_names()


def test_based_maps(s2):
    sphere = space_catalog("sphere(2)")
    identity = BasedMap.identity(sphere)
    assert identity.target_model is identity.source_model
    assert not identity.is_trivial
    assert BasedMap.trivial(sphere, space_catalog("sphere(3)")).is_trivial
    broken = DgaMorphism(s2, s2, {"x": s2.element("x").scale(2), "y": s2.element("y")})
    with pytest.raises(AlgebraError):
        BasedMap(broken)


def test_user_space_wraps_algebra(cp2):
    space = UserSpace(cp2)
    assert space.model is cp2
    assert space.describe()["provenance"] == "user DSL"
