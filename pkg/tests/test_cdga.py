import pytest

from core.cdga import (
    DgaMorphism,
    DgModuleView,
    FreeCdga,
    build_cdga,
    check_minimal,
    cohomology,
    hirsch_extension,
    postnikov_truncation,
    rename_generators,
    tensor_product,
    trivial_algebra,
)
from core.errors import (
    AlgebraError,
    DegreeError,
    DifferentialError,
    NotCocycleError,
    NotMinimalError,
    UnknownGeneratorError,
)
from core.graded_algebra import Element, Generator
from core.linear_algebra import DegreeWindow
from core.minimal_model import induced_rank
from spaces import space_catalog
from tests.conftest import gen, random_homogeneous


def test_sphere_model_flags(s2):
    assert s2.is_minimal
    assert s2.is_sullivan
    assert s2.is_simply_connected
    assert s2.top_degree is None
    assert s2.d_generator("y") == gen(s2, "x") ** 2


def test_d_squared_must_vanish():
    x, y, z = Generator("x", 2), Generator("y", 3), Generator("z", 4)
    ex, ey = Element.generator(x), Element.generator(y)
    with pytest.raises(DifferentialError) as info:
        FreeCdga([x, y, z], {"y": ex ** 2, "z": ex * ey})
    assert info.value.generator_id == "z"
    assert info.value.residue == ex ** 3


def test_unknown_generator_and_degree_checks():
    x = Generator("x", 2)
    with pytest.raises(UnknownGeneratorError):
        FreeCdga([x], {"q": Element.generator(x)})
    with pytest.raises(DegreeError):
        FreeCdga([x, Generator("y", 3)], {"y": Element.generator(x)})
    with pytest.raises(AlgebraError):
        FreeCdga([x, Generator("x", 4)])


def test_non_minimal_algebra():
    x, a, b = Generator("x", 2), Generator("a", 3), Generator("b", 4)
    algebra = build_cdga([x, a, b], {"a": Element.generator(b)})
    assert not algebra.is_minimal
    with pytest.raises(NotMinimalError):
        postnikov_truncation(algebra, 3)
    assert not check_minimal(algebra)


def test_sullivan_condition_detects_cycles():
    # Chevalley-Eilenberg algebra of so(3): minimal but not built in stages
    x, y, z = Generator("x", 1), Generator("y", 1), Generator("z", 1)
    ex, ey, ez = (Element.generator(g) for g in (x, y, z))
    algebra = build_cdga([x, y, z], {"x": ey * ez, "y": ez * ex, "z": ex * ey})
    assert algebra.is_minimal
    assert not algebra.is_sullivan
    assert not algebra.is_simply_connected


def test_generation_order_respects_differentials(cp2):
    assert cp2.generation_order() == ["x", "y"]


def test_leibniz_rule_randomized(s2, cp2, rng):
    for algebra in (s2, cp2):
        for _ in range(200):
            p, q = int(rng.integers(0, 7)), int(rng.integers(0, 7))
            a = random_homogeneous(rng, algebra, p)
            b = random_homogeneous(rng, algebra, q)
            if a.is_zero or b.is_zero:
                continue
            sign = -1 if p % 2 else 1
            assert algebra.d(a * b) == algebra.d(a) * b + (a * algebra.d(b)).scale(sign)
            assert algebra.d(algebra.d(a)).is_zero


def test_cohomology_of_spheres(s2, s3, cp2):
    assert {k: s.dimension for k, s in cohomology(s2, DegreeWindow(0, 8)).items()} == {
        0: 1, 1: 0, 2: 1, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0, 8: 0,
    }
    assert [s.dimension for s in cohomology(s3, DegreeWindow(0, 6)).values()] == [1, 0, 0, 1, 0, 0, 0]
    assert [s.dimension for s in cohomology(cp2, DegreeWindow(0, 7)).values()] == [1, 0, 1, 0, 1, 0, 0, 0]


def test_coboundary_witness(s2):
    x = gen(s2, "x")
    witness = s2.coboundary_witness(x ** 2)
    assert s2.d(witness) == x ** 2
    assert s2.coboundary_witness(x) is None


def test_morphism_checks(s2, scaling_s2):
    assert scaling_s2.is_chain_map
    broken = DgaMorphism(s2, s2, {"x": gen(s2, "x").scale(2), "y": gen(s2, "y")})
    assert broken.check()
    with pytest.raises(DegreeError):
        DgaMorphism(s2, s2, {"x": gen(s2, "y")})
    composite = scaling_s2.compose(scaling_s2)
    assert composite.image("x") == gen(s2, "x").scale(4)
    assert composite.image("y") == gen(s2, "y").scale(16)
    assert DgaMorphism.identity(s2).compose(scaling_s2) == scaling_s2
    assert scaling_s2.linear_part_matrix(2) == [[2]]


def test_module_view_truncates(s2):
    module = DgModuleView.identity(s2, top_degree=3)
    assert module.basis(4) == ()
    assert module.d(gen(s2, "y")).is_zero
    assert module.effective_top_degree() == 3
    trivial = DgModuleView.trivial(s2)
    assert trivial.is_trivial
    assert trivial.phi(gen(s2, "x")).is_zero


def test_hirsch_extension_requires_cocycle(s2):
    x, y = gen(s2, "x"), gen(s2, "y")
    extended = hirsch_extension(s2, [Generator("z", 5)], {"z": x ** 3})
    assert extended.d_generator("z") == x ** 3
    with pytest.raises(NotCocycleError):
        hirsch_extension(s2, [Generator("z", 4)], {"z": x * y})


def test_postnikov_truncation(cp2):
    truncated, inclusion = postnikov_truncation(cp2, 4)
    assert truncated.ids == ("x",)
    assert inclusion.is_chain_map


@pytest.mark.parametrize(
    "name,n",
    [
        ("complex_projective(2)", 2),
        ("complex_projective(2)", 4),
        ("product(sphere(2),k(Q,4))", 2),
        ("product(sphere(2),k(Q,4))", 3),
    ],
)
def test_truncation_inclusion_on_cohomology(name, n):
    model = space_catalog(name).model
    truncated, inclusion = postnikov_truncation(model, n)
    window = DegreeWindow(0, n + 1)
    small, full = cohomology(truncated, window), cohomology(model, window)
    for k in range(n + 1):
        assert induced_rank(inclusion, k) == small[k].dimension == full[k].dimension, k
    # injective one degree up
    assert induced_rank(inclusion, n + 1) == small[n + 1].dimension
    assert full[n + 1].dimension >= small[n + 1].dimension


def test_tensor_and_rename(s2, s3):
    renamed, iso = rename_generators(s3, {"x": "u"})
    product = tensor_product(s2, renamed)
    assert product.ids == ("x", "u", "y")
    assert iso.is_chain_map
    with pytest.raises(AlgebraError):
        tensor_product(s2, s3)
    assert trivial_algebra().generators == ()
