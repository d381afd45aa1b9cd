"""
Text format for CDGA presentations.

    # the 2-sphere
    algebra S2 {
        generator x : 2;
        generator y : 3;
        d y = x^2;
    }
    morphism f : S2 -> S2 { x |-> x; y |-> y; }

Generators without a ``d`` line have zero differential. Coefficients are
rationals written ``p/q``.
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .cdga import DgaMorphism, FreeCdga, build_cdga, trivial_algebra
from .errors import AlgebraError
from .graded_algebra import Element, Generator

logger = logging.getLogger(__name__)

KEYWORDS = {"algebra", "morphism", "generator", "d"}
TRIVIAL_ALGEBRA_NAME = "Q"


@dataclass(frozen=True)
class Position:
    line: int
    column: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class PresentationError(AlgebraError):
    """Syntax or semantic error with a source position"""

    def __init__(self, message: str, position: Optional[Position] = None, expected: Sequence[str] = ()):
        self.message = message
        self.position = position
        self.expected = list(expected)
        text = message
        if position is not None:
            text = f"{position}: {text}"
        if self.expected:
            text += f" (expected {', '.join(self.expected)})"
        super().__init__(text)


# AST

@dataclass(frozen=True)
class Number:
    value: Fraction
    pos: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class Name:
    name: str
    pos: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int
    pos: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class Negate:
    operand: "Expr"
    pos: Optional[Position] = field(default=None, compare=False)


Expr = Union[Number, Name, Power, BinOp, Negate]


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    degree: int
    pos: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class DifferentialDecl:
    name: str
    expr: Expr
    pos: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class AlgebraBlock:
    name: str
    generators: Tuple[GeneratorDecl, ...]
    differentials: Tuple[DifferentialDecl, ...]
    pos: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class Assignment:
    name: str
    expr: Expr
    pos: Optional[Position] = field(default=None, compare=False)


@dataclass(frozen=True)
class MorphismBlock:
    name: str
    source: str
    target: str
    assignments: Tuple[Assignment, ...]
    pos: Optional[Position] = field(default=None, compare=False)


Block = Union[AlgebraBlock, MorphismBlock]


@dataclass(frozen=True)
class PresentationAst:
    blocks: Tuple[Block, ...]

    @property
    def algebras(self) -> List[AlgebraBlock]:
        return [b for b in self.blocks if isinstance(b, AlgebraBlock)]

    @property
    def morphisms(self) -> List[MorphismBlock]:
        return [b for b in self.blocks if isinstance(b, MorphismBlock)]


# Lexer

@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: Position


TOKEN_PATTERN = re.compile(
    r"(?P<comment>\#[^\n]*)"
    r"|(?P<newline>\n)"
    r"|(?P<space>[ \t\r]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>\d+)"
    r"|(?P<maps>\|->)"
    r"|(?P<arrow>->)"
    r"|(?P<symbol>[{}:;=^*+\-()/])"
)


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, offset = 1, 0, 0
    while offset < len(text):
        match = TOKEN_PATTERN.match(text, offset)
        pos = Position(line, offset - line_start + 1)
        if match is None:
            raise PresentationError(f"Unexpected character {text[offset]!r}", pos)
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind in ("ident", "int", "maps", "arrow"):
            tokens.append(Token(kind, match.group(), pos))
        elif kind == "symbol":
            tokens.append(Token(match.group(), match.group(), pos))
        offset = match.end()
    tokens.append(Token("eof", "", Position(line, offset - line_start + 1)))
    return tokens


# Parser

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _check(self, kind: str, text: Optional[str] = None) -> bool:
        token = self.current
        return token.kind == kind and (text is None or token.text == text)

    def _expect(self, kind: str, text: Optional[str] = None, label: Optional[str] = None) -> Token:
        if not self._check(kind, text):
            found = self.current.text or "end of input"
            raise PresentationError(f"Unexpected {found!r}", self.current.pos, [label or text or kind])
        return self._advance()

    def _identifier(self, label: str) -> Token:
        token = self._expect("ident", label=label)
        if token.text in KEYWORDS:
            raise PresentationError(f"Keyword {token.text!r} cannot be used as a name", token.pos, [label])
        return token

    def parse(self) -> PresentationAst:
        blocks: List[Block] = []
        while not self._check("eof"):
            if self._check("ident", "algebra"):
                blocks.append(self._algebra())
            elif self._check("ident", "morphism"):
                blocks.append(self._morphism())
            else:
                raise PresentationError(
                    f"Unexpected {self.current.text!r}", self.current.pos, ["'algebra'", "'morphism'"]
                )
        if not blocks:
            raise PresentationError("Empty presentation", self.current.pos, ["'algebra'", "'morphism'"])
        return PresentationAst(tuple(blocks))

    def _algebra(self) -> AlgebraBlock:
        start = self._advance().pos
        name = self._identifier("algebra name").text
        self._expect("{")
        generators, differentials = [], []
        while not self._check("}"):
            if self._check("ident", "generator"):
                pos = self._advance().pos
                gen = self._identifier("generator name").text
                self._expect(":")
                degree_token = self._expect("int", label="degree")
                degree = int(degree_token.text)
                if degree < 1:
                    raise PresentationError(f"Degree of {gen} must be ≥ 1, got {degree}", degree_token.pos)
                self._expect(";")
                generators.append(GeneratorDecl(gen, degree, pos))
            elif self._check("ident", "d"):
                pos = self._advance().pos
                gen = self._identifier("generator name").text
                self._expect("=")
                expr = self._expr()
                self._expect(";")
                differentials.append(DifferentialDecl(gen, expr, pos))
            else:
                raise PresentationError(
                    f"Unexpected {self.current.text or 'end of input'!r}", self.current.pos,
                    ["'generator'", "'d'", "'}'"],
                )
        self._expect("}")
        return AlgebraBlock(name, tuple(generators), tuple(differentials), start)

    def _morphism(self) -> MorphismBlock:
        start = self._advance().pos
        name = self._identifier("morphism name").text
        self._expect(":")
        source = self._identifier("source algebra").text
        self._expect("arrow", label="'->'")
        target = self._identifier("target algebra").text
        self._expect("{")
        assignments = []
        while not self._check("}"):
            token = self._identifier("generator name")
            self._expect("maps", label="'|->'")
            expr = self._expr()
            self._expect(";")
            assignments.append(Assignment(token.text, expr, token.pos))
        self._expect("}")
        return MorphismBlock(name, source, target, tuple(assignments), start)

    def _expr(self) -> Expr:
        node = self._term()
        while self._check("+") or self._check("-"):
            token = self._advance()
            node = BinOp(token.text, node, self._term(), token.pos)
        return node

    def _term(self) -> Expr:
        node = self._unary()
        while self._check("*"):
            token = self._advance()
            node = BinOp("*", node, self._unary(), token.pos)
        return node

    def _unary(self) -> Expr:
        if self._check("-"):
            token = self._advance()
            return Negate(self._unary(), token.pos)
        return self._power()

    def _power(self) -> Expr:
        node = self._atom()
        if self._check("^"):
            token = self._advance()
            exponent = self._expect("int", label="exponent")
            node = Power(node, int(exponent.text), token.pos)
        return node

    def _atom(self) -> Expr:
        token = self.current
        if self._check("int"):
            self._advance()
            value = Fraction(int(token.text))
            if self._check("/"):
                self._advance()
                denominator = self._expect("int", label="denominator")
                if int(denominator.text) == 0:
                    raise PresentationError("Zero denominator", denominator.pos)
                value = Fraction(int(token.text), int(denominator.text))
            return Number(value, token.pos)
        if self._check("ident"):
            return Name(self._identifier("generator name").text, token.pos)
        if self._check("("):
            self._advance()
            node = self._expr()
            self._expect(")")
            return node
        raise PresentationError(
            f"Unexpected {token.text or 'end of input'!r}", token.pos, ["number", "generator name", "'('"]
        )


def parse_presentation(text: str) -> PresentationAst:
    return _Parser(text).parse()


# Pretty printer

_PRECEDENCE = {"+": 1, "-": 1, "*": 2}


def _format_expr(expr: Expr) -> str:
    if isinstance(expr, Number):
        return str(expr.value)
    if isinstance(expr, Name):
        return expr.name
    if isinstance(expr, Power):
        base = _format_expr(expr.base)
        if not isinstance(expr.base, Name) and not (isinstance(expr.base, Number) and expr.base.value.denominator == 1):
            base = f"({base})"
        return f"{base}^{expr.exponent}"
    if isinstance(expr, Negate):
        operand = _format_expr(expr.operand)
        if isinstance(expr.operand, BinOp):
            operand = f"({operand})"
        return f"-{operand}"
    precedence = _PRECEDENCE[expr.op]
    left = _format_expr(expr.left)
    if isinstance(expr.left, BinOp) and _PRECEDENCE[expr.left.op] < precedence:
        left = f"({left})"
    right = _format_expr(expr.right)
    if isinstance(expr.right, BinOp) and _PRECEDENCE[expr.right.op] <= precedence:
        right = f"({right})"
    separator = "*" if expr.op == "*" else f" {expr.op} "
    return f"{left}{separator}{right}"


def format_presentation(ast: PresentationAst) -> str:
    lines: List[str] = []
    for block in ast.blocks:
        if isinstance(block, AlgebraBlock):
            lines.append(f"algebra {block.name} {{")
            lines.extend(f"    generator {g.name} : {g.degree};" for g in block.generators)
            lines.extend(f"    d {d.name} = {_format_expr(d.expr)};" for d in block.differentials)
        else:
            lines.append(f"morphism {block.name} : {block.source} -> {block.target} {{")
            lines.extend(f"    {a.name} |-> {_format_expr(a.expr)};" for a in block.assignments)
        lines.append("}")
    return "\n".join(lines) + "\n"


def format_algebra(algebra: FreeCdga) -> str:
    """Presentation text for an existing algebra"""
    lines = [f"algebra {algebra.name} {{"]
    lines.extend(f"    generator {g.id} : {g.degree};" for g in algebra.generators)
    for gen in algebra.generators:
        value = algebra.d_generator(gen.id)
        if not value.is_zero:
            lines.append(f"    d {gen.id} = {value};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# Semantics

def evaluate_expression(expr: Expr, generators: Dict[str, Generator]) -> Element:
    if isinstance(expr, Number):
        return Element.scalar(expr.value)
    if isinstance(expr, Name):
        if expr.name not in generators:
            raise PresentationError(f"Undeclared generator {expr.name!r}", expr.pos)
        return Element.generator(generators[expr.name])
    if isinstance(expr, Power):
        return evaluate_expression(expr.base, generators) ** expr.exponent
    if isinstance(expr, Negate):
        return -evaluate_expression(expr.operand, generators)
    left = evaluate_expression(expr.left, generators)
    right = evaluate_expression(expr.right, generators)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    return left * right


@dataclass
class Presentation:
    algebras: Dict[str, FreeCdga]
    morphisms: Dict[str, DgaMorphism]

    def algebra(self, name: str) -> FreeCdga:
        if name == TRIVIAL_ALGEBRA_NAME and name not in self.algebras:
            return trivial_algebra(TRIVIAL_ALGEBRA_NAME)
        if name not in self.algebras:
            raise PresentationError(f"No algebra named {name!r}", expected=sorted(self.algebras))
        return self.algebras[name]

    def morphism(self, name: str) -> DgaMorphism:
        if name not in self.morphisms:
            raise PresentationError(f"No morphism named {name!r}", expected=sorted(self.morphisms))
        return self.morphisms[name]


def _homogeneous(value: Element, degree: int, what: str, pos: Optional[Position]):
    if value.is_zero:
        return
    degrees = value.degrees()
    if len(degrees) != 1:
        raise PresentationError(f"{what} is not homogeneous (degrees {degrees})", pos)
    if degrees[0] != degree:
        raise PresentationError(f"degree of {what} must be {degree}, got {degrees[0]}", pos)


def build_algebras(ast: PresentationAst) -> Presentation:
    algebras: Dict[str, FreeCdga] = {}
    morphisms: Dict[str, DgaMorphism] = {}
    for block in ast.blocks:
        if isinstance(block, AlgebraBlock):
            if block.name in algebras:
                raise PresentationError(f"Algebra {block.name!r} is defined twice", block.pos)
            generators: Dict[str, Generator] = {}
            for decl in block.generators:
                if decl.name in generators:
                    raise PresentationError(f"Generator {decl.name!r} is declared twice", decl.pos)
                generators[decl.name] = Generator(decl.name, decl.degree)
            differential: Dict[str, Element] = {}
            for decl in block.differentials:
                if decl.name not in generators:
                    raise PresentationError(f"Undeclared generator {decl.name!r}", decl.pos)
                if decl.name in differential:
                    raise PresentationError(f"Differential of {decl.name!r} given twice", decl.pos)
                value = evaluate_expression(decl.expr, generators)
                _homogeneous(value, generators[decl.name].degree + 1, f"d {decl.name}", decl.pos)
                differential[decl.name] = value
            algebras[block.name] = build_cdga(list(generators.values()), differential, name=block.name)
        else:
            if block.name in morphisms:
                raise PresentationError(f"Morphism {block.name!r} is defined twice", block.pos)
            partial = Presentation(algebras, morphisms)
            source = partial.algebra(block.source)
            target = partial.algebra(block.target)
            target_gens = {g.id: g for g in target.generators}
            assignment: Dict[str, Element] = {}
            for decl in block.assignments:
                if not source.has_generator(decl.name):
                    raise PresentationError(f"{decl.name!r} is not a generator of {source.name}", decl.pos)
                value = evaluate_expression(decl.expr, target_gens)
                _homogeneous(value, source.generator(decl.name).degree, f"image of {decl.name}", decl.pos)
                assignment[decl.name] = value
            morphisms[block.name] = DgaMorphism(source, target, assignment, name=block.name)
    logger.info("Presentation defines %d algebra(s) and %d morphism(s)", len(algebras), len(morphisms))
    return Presentation(algebras, morphisms)


def load_presentation(path: Union[str, Path]) -> Presentation:
    text = Path(path).read_text(encoding="utf-8")
    return build_algebras(parse_presentation(text))
