"""
kforms - Expression Language

Tokenizer, recursive-descent parser and canonical printer for the small
expression language of `kforms eval`.

Features:
    - Atoms: x0..x3, e0..e4, vol, phi, wave(k0,k1,k2,k3), rationals, i, kappa^n
    - Operators: P0..P3, E, Einv, N1..N3, R1..R3, xi_0..xi_4, chi_0..chi_4, T, box
    - Calls: d(.), star(.), dagger(.), int(.), iota(a)(.), lie(op)(.)
    - Precedence: calls and unary minus > '^' > '*' > '+'/'-'
    - Static kinds (scalar, form, operator) and form degrees on every node
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction

import config

logging.basicConfig(level=config.LOG_LEVEL, format=config.LOG_FORMAT)
logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<number>\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<symbol>[-+*^(),/])
""", re.VERBOSE)

COORDINATES = {f"x{mu}": mu for mu in range(4)}
BASIS = {f"e{a}": a for a in range(config.FORM_DIMENSION)}
GENERATOR_NAMES = ("P0", "P1", "P2", "P3", "E", "Einv", "N1", "N2", "N3", "R1", "R2", "R3")
OPERATOR_NAMES = (GENERATOR_NAMES + ("T", "box")
                  + tuple(f"xi_{a}" for a in range(5)) + tuple(f"chi_{a}" for a in range(5)))
CALLS = ("d", "star", "dagger", "int")
KEYWORDS = set(CALLS) | {"iota", "lie", "wave", "vol", "phi", "i", "kappa"}

SCALAR, FORM, OPERATOR = "scalar", "form", "operator"
MAX_DEGREE = config.FORM_DIMENSION

# Printing precedence: sum < product < wedge < unary/atom
_PRECEDENCE = {"add": 1, "sub": 1, "mul": 2, "wedge": 3}


class ParseError(ValueError):
    """Syntax error with a 1-based source position."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{message} at line {line}, column {col}")


class ExprTypeError(TypeError):
    """Ill-kinded expression, e.g. a wedge with an operator."""

    def __init__(self, expected: str, actual: str, line: int = 1, col: int = 1):
        self.expected = expected
        self.actual = actual
        self.line = line
        self.col = col
        super().__init__(f"type error at line {line}, column {col}: expected {expected}, got {actual}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class Ast:
    """
    Expression node with its statically inferred kind and degree.

    Positions are kept for error reporting only and take no part in equality.
    """

    node: str
    value: object = None
    children: tuple = ()
    kind: str = SCALAR
    degree: int = 0
    line: int = field(default=1, compare=False)
    col: int = field(default=1, compare=False)

    def describe(self) -> str:
        if self.kind == FORM:
            return f"form of degree {self.degree}"
        return self.kind


def tokenize(src: str) -> list[Token]:
    """
    Split source text into tokens, dropping whitespace.

    Raises:
        ParseError: on characters outside the language
    """
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(src):
        match = _TOKEN.match(src, pos)
        if not match:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind != "space":
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


# =============================================================================
# NODE CONSTRUCTION WITH KIND INFERENCE
# =============================================================================
def _form_degree(ast: Ast, expected: str) -> int:
    """Degree of a form operand; scalars count as 0-forms."""
    if ast.kind == OPERATOR:
        raise ExprTypeError(expected, ast.describe(), ast.line, ast.col)
    return ast.degree


def _checked_degree(degree: int, at: Ast) -> int:
    if degree > MAX_DEGREE:
        raise ExprTypeError(f"degree ≤ {MAX_DEGREE}", f"degree {degree}", at.line, at.col)
    return degree


def make_binary(op: str, left: Ast, right: Ast, line: int = 1, col: int = 1) -> Ast:
    """
    Build a binary node, inferring its kind.

    Raises:
        ExprTypeError: for ill-kinded operands
    """
    kinds = {left.kind, right.kind}
    if op in ("add", "sub"):
        if kinds == {SCALAR}:
            return Ast(op, None, (left, right), SCALAR, 0, line, col)
        if FORM in kinds and OPERATOR in kinds:
            bad = right if right.kind == OPERATOR else left
            raise ExprTypeError("form", "operator", bad.line, bad.col)
        if OPERATOR in kinds:
            return Ast(op, None, (left, right), OPERATOR, 0, line, col)
        if left.degree != right.degree:
            raise ExprTypeError(f"form of degree {left.degree}", right.describe(), right.line, right.col)
        return Ast(op, None, (left, right), FORM, left.degree, line, col)

    if op == "mul":
        if kinds == {SCALAR}:
            return Ast(op, None, (left, right), SCALAR, 0, line, col)
        if left.kind == OPERATOR:
            if right.kind == FORM:
                return Ast(op, None, (left, right), FORM, right.degree, line, col)
            return Ast(op, None, (left, right), OPERATOR, 0, line, col)
        if right.kind == OPERATOR:
            if left.kind == SCALAR:
                return Ast(op, None, (left, right), OPERATOR, 0, line, col)
            raise ExprTypeError("function or form", "operator", right.line, right.col)
        if left.kind == SCALAR or right.kind == SCALAR:
            degree = left.degree if left.kind == FORM else right.degree
            return Ast(op, None, (left, right), FORM, degree, line, col)
        if left.degree and right.degree:
            raise ExprTypeError("function", right.describe(), right.line, right.col)
        return Ast(op, None, (left, right), FORM, left.degree + right.degree, line, col)

    if op == "wedge":
        degree = _form_degree(left, "form") + _form_degree(right, "form")
        return Ast(op, None, (left, right), FORM, _checked_degree(degree, right), line, col)
    raise ValueError(f"unknown binary operator: {op}")


def make_unary(op: str, child: Ast, value=None, line: int = 1, col: int = 1) -> Ast:
    """
    Build a call or negation node, inferring its kind.

    Raises:
        ExprTypeError: for ill-kinded operands
    """
    if op == "neg":
        return Ast(op, None, (child,), child.kind, child.degree, line, col)
    if op == "dagger":
        if child.kind == OPERATOR:
            raise ExprTypeError("form", "operator", child.line, child.col)
        return Ast(op, None, (child,), child.kind, child.degree, line, col)
    degree = _form_degree(child, "form")
    if op == "d":
        return Ast(op, None, (child,), FORM, _checked_degree(degree + 1, child), line, col)
    if op == "star":
        return Ast(op, None, (child,), FORM, MAX_DEGREE - degree, line, col)
    if op == "int":
        if degree != MAX_DEGREE or child.kind != FORM:
            raise ExprTypeError(f"form of degree {MAX_DEGREE}", child.describe(), child.line, child.col)
        return Ast(op, None, (child,), SCALAR, 0, line, col)
    if op == "iota":
        if degree == 0:
            raise ExprTypeError("form of degree ≥ 1", child.describe(), child.line, child.col)
        return Ast(op, value, (child,), FORM, degree - 1, line, col)
    if op == "lie":
        return Ast(op, None, (value, child), FORM, degree, line, col)
    raise ValueError(f"unknown unary operator: {op}")


# =============================================================================
# PARSER
# =============================================================================
class Parser:
    """
    Recursive-descent parser.

    expr    := product (('+' | '-') product)*
    product := wedge ('*' wedge)*
    wedge   := unary ('^' unary)*
    unary   := '-' unary | call | atom
    """

    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        token = self.peek()
        self.pos = min(self.pos + 1, len(self.tokens) - 1)
        return token

    def expect(self, text: str) -> Token:
        token = self.next()
        if token.text != text or token.kind == "end":
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise ParseError(f"expected {text!r}, found {found}", token.line, token.col)
        return token

    def parse(self) -> Ast:
        ast = self.expr()
        token = self.peek()
        if token.kind != "end":
            raise ParseError(f"unexpected {token.text!r}", token.line, token.col)
        return ast

    def expr(self) -> Ast:
        left = self.product()
        while self.peek().text in ("+", "-") and self.peek().kind == "symbol":
            token = self.next()
            op = "add" if token.text == "+" else "sub"
            left = make_binary(op, left, self.product(), token.line, token.col)
        return left

    def product(self) -> Ast:
        left = self.wedge()
        while self.peek().text == "*":
            token = self.next()
            left = make_binary("mul", left, self.wedge(), token.line, token.col)
        return left

    def wedge(self) -> Ast:
        left = self.unary()
        while self.peek().text == "^":
            token = self.next()
            left = make_binary("wedge", left, self.unary(), token.line, token.col)
        return left

    def unary(self) -> Ast:
        token = self.peek()
        if token.text == "-" and token.kind == "symbol":
            self.next()
            return make_unary("neg", self.unary(), line=token.line, col=token.col)
        if token.kind == "name" and token.text in CALLS:
            self.next()
            self.expect("(")
            child = self.expr()
            self.expect(")")
            return make_unary(token.text, child, line=token.line, col=token.col)
        if token.kind == "name" and token.text == "iota":
            self.next()
            self.expect("(")
            index = self.next()
            if index.kind != "number" or not index.text.isdigit() or int(index.text) >= MAX_DEGREE:
                raise ParseError("iota index must be 0..4", index.line, index.col)
            self.expect(")")
            self.expect("(")
            child = self.expr()
            self.expect(")")
            return make_unary("iota", child, int(index.text), token.line, token.col)
        if token.kind == "name" and token.text == "lie":
            self.next()
            self.expect("(")
            operator = self.expr()
            if operator.kind != OPERATOR:
                raise ExprTypeError("operator", operator.describe(), operator.line, operator.col)
            self.expect(")")
            self.expect("(")
            child = self.expr()
            self.expect(")")
            return make_unary("lie", child, operator, token.line, token.col)
        return self.atom()

    def signed_number(self) -> float:
        token = self.next()
        sign = 1.0
        if token.text == "-":
            sign = -1.0
            token = self.next()
        if token.kind != "number":
            raise ParseError("expected a number", token.line, token.col)
        return sign * float(token.text)

    def atom(self) -> Ast:
        token = self.next()
        line, col = token.line, token.col
        if token.kind == "number":
            value = Fraction(token.text)
            if self.peek().text == "/" and self.peek(1).kind == "number":
                self.next()
                denominator = self.next()
                value = value / Fraction(denominator.text)
                if value.denominator == 0:
                    raise ParseError("division by zero", denominator.line, denominator.col)
            return Ast("number", value, (), SCALAR, 0, line, col)
        if token.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if token.kind != "name":
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise ParseError(f"unexpected {found}", line, col)

        name = token.text
        if name == "i":
            return Ast("imag", None, (), SCALAR, 0, line, col)
        if name == "kappa":
            power = 1
            if self.peek().text == "^" and (self.peek(1).kind == "number"
                                            or (self.peek(1).text == "-" and self.peek(2).kind == "number")):
                self.next()
                sign = -1 if self.peek().text == "-" else 1
                if sign < 0:
                    self.next()
                exponent = self.next()
                if not exponent.text.isdigit():
                    raise ParseError("kappa exponent must be an integer", exponent.line, exponent.col)
                power = sign * int(exponent.text)
            return Ast("kappa", power, (), SCALAR, 0, line, col)
        if name == "wave":
            self.expect("(")
            mode = [self.signed_number()]
            for _ in range(3):
                self.expect(",")
                mode.append(self.signed_number())
            self.expect(")")
            return Ast("wave", tuple(mode), (), FORM, 0, line, col)
        if name in COORDINATES:
            return Ast("coord", COORDINATES[name], (), FORM, 0, line, col)
        if name in BASIS:
            return Ast("basis", BASIS[name], (), FORM, 1, line, col)
        if name == "vol":
            return Ast("vol", None, (), FORM, MAX_DEGREE, line, col)
        if name == "phi":
            return Ast("phi", None, (), FORM, 0, line, col)
        if name in OPERATOR_NAMES:
            return Ast("operator", name, (), OPERATOR, 0, line, col)
        if name in KEYWORDS:
            raise ParseError(f"{name!r} must be followed by '('", line, col)
        raise ParseError(f"unknown name {name!r}", line, col)


def parse(src: str) -> Ast:
    """
    Parse expression text.

    Raises:
        ParseError: on syntax errors
        ExprTypeError: on ill-kinded expressions
    """
    ast = Parser(src).parse()
    logger.debug(f"parsed {src!r} as {ast.node} ({ast.describe()})")
    return ast


# =============================================================================
# PRINTER
# =============================================================================
def _format_number(value: Fraction) -> str:
    return str(value)


def _format_float(value: float) -> str:
    return repr(float(value) + 0.0)


def _precedence(ast: Ast) -> int:
    return _PRECEDENCE.get(ast.node, 4)


def print_ast(ast: Ast) -> str:
    """Canonical text; parse(print_ast(a)) == a."""
    node = ast.node
    if node == "number":
        return _format_number(ast.value)
    if node == "imag":
        return "i"
    if node == "kappa":
        return "kappa" if ast.value == 1 else f"kappa^{ast.value}"
    if node == "wave":
        return "wave(" + ", ".join(_format_float(v) for v in ast.value) + ")"
    if node == "coord":
        return f"x{ast.value}"
    if node == "basis":
        return f"e{ast.value}"
    if node in ("vol", "phi"):
        return node
    if node == "operator":
        return ast.value
    if node == "neg":
        child = ast.children[0]
        text = print_ast(child)
        return f"-{text}" if _precedence(child) == 4 else f"-({text})"
    if node in CALLS:
        return f"{node}({print_ast(ast.children[0])})"
    if node == "iota":
        return f"iota({ast.value})({print_ast(ast.children[0])})"
    if node == "lie":
        operator, child = ast.children
        return f"lie({print_ast(operator)})({print_ast(child)})"

    symbol = {"add": "+", "sub": "-", "mul": "*", "wedge": "^"}[node]
    left, right = ast.children
    level = _PRECEDENCE[node]
    left_text = print_ast(left)
    right_text = print_ast(right)
    # "kappa ^ 2" would read back as a power
    if _precedence(left) < level or (node == "wedge" and left.node == "kappa" and left.value == 1):
        left_text = f"({left_text})"
    if _precedence(right) <= level:
        right_text = f"({right_text})"
    return f"{left_text} {symbol} {right_text}"
