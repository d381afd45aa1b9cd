from fractions import Fraction

import pytest

from core.cdga import DgaMorphism, build_cdga
from core.errors import DifferentialError
from core.graded_algebra import Element, Generator
from core.presentation import (
    AlgebraBlock,
    Assignment,
    BinOp,
    DifferentialDecl,
    GeneratorDecl,
    MorphismBlock,
    Name,
    Negate,
    Number,
    Position,
    Power,
    PresentationAst,
    PresentationError,
    build_algebras,
    format_algebra,
    format_presentation,
    load_presentation,
    parse_presentation,
)
from tests.conftest import S2_TEXT, gen

NAMES = ["x", "y", "z1", "a_b"]


def _build(text):
    return build_algebras(parse_presentation(text))


def _random_expr(rng, depth=0):
    choice = int(rng.integers(0, 5 if depth < 4 else 2))
    if choice == 0:
        return Number(Fraction(int(rng.integers(0, 9)), int(rng.integers(1, 4))))
    if choice == 1:
        return Name(NAMES[int(rng.integers(0, len(NAMES)))])
    if choice == 2:
        return Power(_random_expr(rng, depth + 1), int(rng.integers(0, 5)))
    if choice == 3:
        return Negate(_random_expr(rng, depth + 1))
    op = "+-*"[int(rng.integers(0, 3))]
    return BinOp(op, _random_expr(rng, depth + 1), _random_expr(rng, depth + 1))


def _random_block(rng):
    if rng.random() < 0.5:
        generators = tuple(
            GeneratorDecl(NAMES[i], int(rng.integers(1, 9))) for i in range(int(rng.integers(0, 4)))
        )
        differentials = tuple(
            DifferentialDecl(NAMES[int(rng.integers(0, len(NAMES)))], _random_expr(rng))
            for _ in range(int(rng.integers(0, 3)))
        )
        return AlgebraBlock("A", generators, differentials)
    assignments = tuple(
        Assignment(NAMES[int(rng.integers(0, len(NAMES)))], _random_expr(rng)) for _ in range(int(rng.integers(0, 3)))
    )
    return MorphismBlock("f", "A", "B", assignments)


def test_two_sphere_presentation():
    presentation = _build(S2_TEXT)
    algebra = presentation.algebra("S2")
    assert [(g.id, g.degree) for g in algebra.generators] == [("x", 2), ("y", 3)]
    assert algebra.d_generator("y") == gen(algebra, "x") ** 2
    scale = presentation.morphism("scale")
    assert scale.image("x") == gen(algebra, "x").scale(2)
    assert scale.image("y") == gen(algebra, "y").scale(4)
    assert scale.is_chain_map


def test_load_from_file(s2_file):
    presentation = load_presentation(s2_file)
    assert sorted(presentation.morphisms) == ["ident", "scale"]
    ident = presentation.morphism("ident")
    assert ident == DgaMorphism.identity(ident.source)


def test_differential_degree_is_checked():
    with pytest.raises(PresentationError) as info:
        _build("algebra A { generator x : 2; generator y : 3; d y = x; }")
    assert "degree of d y must be 4, got 2" in str(info.value)
    assert info.value.position == Position(1, 47)


def test_generator_degree_must_be_positive():
    with pytest.raises(PresentationError) as info:
        parse_presentation("algebra A { generator x : 0; }")
    assert "must be ≥ 1" in info.value.message


def test_syntax_errors_carry_positions():
    with pytest.raises(PresentationError) as info:
        parse_presentation("algebra A {\n  generator x 2;\n}")
    assert info.value.position == Position(2, 15)
    assert info.value.expected == [":"]
    with pytest.raises(PresentationError) as info:
        parse_presentation("algebra A { generator x : 2; @ }")
    assert info.value.position == Position(1, 30)
    with pytest.raises(PresentationError):
        parse_presentation("algebra A { generator d : 2; }")
    with pytest.raises(PresentationError):
        parse_presentation("# only a comment\n")


@pytest.mark.parametrize(
    "text,message",
    [
        ("algebra A { generator x : 2; d y = x^2; }", "Undeclared generator 'y'"),
        ("algebra A { generator x : 2; generator y : 3; d y = z^2; }", "Undeclared generator 'z'"),
        ("algebra A { generator x : 2; generator x : 4; }", "declared twice"),
        ("algebra A { generator x : 3; } algebra A { generator x : 3; }", "defined twice"),
        ("algebra A { generator x : 2; generator y : 5; d y = x^2 + x^3; }", "not homogeneous"),
        ("algebra A { generator x : 2; } morphism f : A -> B { }", "No algebra named 'B'"),
        ("algebra A { generator x : 2; generator y : 3; } morphism f : A -> A { x |-> y; }", "image of x"),
        ("algebra A { generator x : 2; } morphism f : A -> A { w |-> x; }", "'w' is not a generator"),
    ],
)
def test_semantic_errors(text, message):
    with pytest.raises(PresentationError) as info:
        _build(text)
    assert message in str(info.value)


def test_differential_must_square_to_zero():
    with pytest.raises(DifferentialError):
        _build("algebra A { generator x : 2; generator y : 3; generator z : 4; d y = x^2; d z = x*y; }")


def test_morphisms_into_the_ground_field():
    presentation = _build(S2_TEXT + "morphism aug : S2 -> Q { }")
    augmentation = presentation.morphism("aug")
    assert augmentation.target.generators == ()
    assert augmentation.is_chain_map


def test_rational_coefficients():
    presentation = _build("algebra A { generator x : 2; generator y : 2; generator z : 3; d z = 1/2*x*y - 3*x^2; }")
    algebra = presentation.algebra("A")
    x, y = gen(algebra, "x"), gen(algebra, "y")
    assert algebra.d_generator("z") == (x * y).scale(Fraction(1, 2)) - (x ** 2).scale(3)


def test_format_algebra_reads_back():
    x, y, z = Generator("x", 2), Generator("y", 2), Generator("z", 3)
    ex, ey = Element.generator(x), Element.generator(y)
    algebra = build_cdga([x, y, z], {"z": (ex * ey).scale(Fraction(1, 2)) - ex ** 2}, name="T")
    rebuilt = _build(format_algebra(algebra)).algebra("T")
    assert rebuilt.d_generator("z") == algebra.d_generator("z")
    assert [g.key for g in rebuilt.generators] == [g.key for g in algebra.generators]


def test_format_then_parse_is_identity(rng):
    for _ in range(1000):
        ast = PresentationAst(tuple(_random_block(rng) for _ in range(int(rng.integers(1, 4)))))
        text = format_presentation(ast)
        assert parse_presentation(text) == ast, text
