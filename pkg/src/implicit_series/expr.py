"""A small expression language for entering G, F, H and gamma as text.

Grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := '-' factor | atom ['^' uint]
    atom     := rational | ident | ident '(' expr {',' expr} ')' | '(' expr ')'
    rational := int ['/' uint]          (no blanks around the slash)

``z`` is always the implicit variable; the remaining identifiers must be
declared ``w`` variables or builtin functions (see :data:`BUILTINS`).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ParseError
from .series import ZWSeries, exp_series, log_series, reciprocal


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Node:
    pos: tuple = field(default=(1, 1), compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Lit(Node):
    value: Fraction


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Neg(Node):
    arg: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: tuple


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<rat>\d+/\d+)"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),])"
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    i = 0
    line, line_start = 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        col = i - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            for j, ch in enumerate(chunk):
                if ch == "\n":
                    line += 1
                    line_start = i + j + 1
        else:
            toks.append(_Tok(kind, m.group(), line, col))
        i = m.end()
    toks.append(_Tok("eof", "", line, len(text) - line_start + 1))
    return toks


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text, variables, functions):
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = set(variables) | {"z"}
        self.functions = functions

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def take(self, text=None, kind=None):
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take()
            node = BinOp(op.text, node, self.term(), pos=(op.line, op.col))
        return node

    def term(self):
        node = self.factor()
        while self.tok.text in ("*", "/"):
            op = self.take()
            node = BinOp(op.text, node, self.factor(), pos=(op.line, op.col))
        return node

    def factor(self):
        if self.tok.text == "-":
            op = self.take()
            return Neg(self.factor(), pos=(op.line, op.col))
        node = self.atom()
        if self.tok.text == "^":
            self.take()
            tok = self.tok
            if tok.kind == "rat":
                # "w^4/7" means (w^4)/7: hand the "/7" back to the term loop
                num, den = tok.text.split("/")
                slash = tok.col + len(num)
                self.toks[self.i : self.i + 1] = [
                    _Tok("int", num, tok.line, tok.col),
                    _Tok("op", "/", tok.line, slash),
                    _Tok("int", den, tok.line, slash + 1),
                ]
                tok = self.tok
            if tok.kind != "int":
                raise self.error("exponent must be a non-negative integer literal")
            self.take()
            node = Pow(node, int(tok.text), pos=node.pos)
        return node

    def atom(self):
        tok = self.tok
        pos = (tok.line, tok.col)
        if tok.kind == "rat":
            self.take()
            num, den = tok.text.split("/")
            if int(den) == 0:
                raise self.error("zero denominator in literal", tok)
            return Lit(Fraction(int(num), int(den)), pos=pos)
        if tok.kind == "int":
            self.take()
            return Lit(Fraction(int(tok.text)), pos=pos)
        if tok.kind == "ident":
            self.take()
            if self.tok.text == "(":
                if tok.text not in self.functions:
                    raise self.error(f"unknown function {tok.text!r}", tok)
                self.take("(")
                args = [self.expr()]
                while self.tok.text == ",":
                    self.take(",")
                    args.append(self.expr())
                self.take(")")
                arity = self.functions[tok.text].arity
                if len(args) != arity:
                    raise self.error(
                        f"{tok.text} takes {arity} argument(s), got {len(args)}", tok
                    )
                return Call(tok.text, tuple(args), pos=pos)
            if tok.text not in self.variables:
                raise self.error(f"unknown variable {tok.text!r}", tok)
            return Var(tok.text, pos=pos)
        if tok.text == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        got = repr(tok.text) if tok.kind != "eof" else "end of input"
        raise self.error(f"unexpected {got}")


def parse(text: str, variables=("w",)) -> Node:
    """Parse ``text`` into an AST; ``variables`` are the declared w-variables."""
    if not text or not text.strip():
        raise ParseError("empty expression")
    return _Parser(text, variables, BUILTINS).parse()


def to_text(node: Node) -> str:
    """Fully parenthesized text that parses back to an equal AST."""
    if isinstance(node, Lit):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"-({to_text(node.arg)})"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)}) {node.op} ({to_text(node.right)})"
    if isinstance(node, Pow):
        return f"({to_text(node.base)})^{node.exponent}"
    if isinstance(node, Call):
        return f"{node.name}(" + ", ".join(to_text(a) for a in node.args) + ")"
    raise TypeError(node)


# ---------------------------------------------------------------------------
# builtins


@dataclass(frozen=True)
class Builtin:
    arity: int
    rule: object
    doc: str = ""


def _treef(x):
    return x * exp_series(-x)


def _sokal_f(x, s):
    """``sum_n x**n / n! * s**(n(n-1)/2)``; needs ``s`` with zero constant term."""
    if s.constant_term():
        raise DomainError("sokalF needs a second argument with zero constant term")
    cap = x.z_order + x.w_order
    total = x * 0 + 1
    xn = x * 0 + 1
    n = 0
    while True:
        n += 1
        e = n * (n - 1) // 2
        if e > cap:
            break
        xn = xn * x
        term = xn * (s**e) * Fraction(1, math.factorial(n))
        total = total + term
    return total


BUILTINS = {
    "exp": Builtin(1, exp_series, "exponential; argument must vanish at the origin"),
    "log": Builtin(1, log_series, "logarithm; argument must equal 1 at the origin"),
    "treef": Builtin(1, _treef, "x * exp(-x)"),
    "sokalF": Builtin(2, _sokal_f, "sum_n x^n/n! s^(n(n-1)/2)"),
}


# ---------------------------------------------------------------------------
# elaboration


def elaborate(node, z_order: int, w_order: int, variables=("w",)) -> ZWSeries:
    """Evaluate an AST (or expression text) to an exact truncated ``ZWSeries``."""
    variables = tuple(variables)
    if isinstance(node, str):
        node = parse(node, variables)
    return _Elaborator(variables, z_order, w_order).eval(node)


class _Elaborator:
    def __init__(self, variables, z_order, w_order):
        self.variables = variables
        self.zo = z_order
        self.wo = w_order

    def const(self, c):
        return ZWSeries.constant(c, self.variables, self.zo, self.wo)

    def eval(self, node):
        try:
            return self._eval(node)
        except DomainError as exc:
            if getattr(exc, "_located", False):
                raise
            line, col = node.pos
            err = DomainError(f"{exc} in '{to_text(node)}' at {line}:{col}")
            err._located = True
            raise err from exc

    def _eval(self, node):
        if isinstance(node, Lit):
            return self.const(node.value)
        if isinstance(node, Var):
            if node.name == "z":
                return ZWSeries.z(self.variables, self.zo, self.wo)
            return ZWSeries.w(node.name, self.variables, self.zo, self.wo)
        if isinstance(node, Neg):
            return -self.eval(node.arg)
        if isinstance(node, BinOp):
            left, right = self.eval(node.left), self.eval(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            if right.constant_term() == 0:
                raise DomainError("denominator has zero constant term")
            return left * reciprocal(right)
        if isinstance(node, Pow):
            return self.eval(node.base) ** node.exponent
        if isinstance(node, Call):
            args = [self.eval(a) for a in node.args]
            return BUILTINS[node.name].rule(*args)
        raise TypeError(node)
