"""Arithmetic expressions in one variable t: parser, evaluator, derivatives.

Grammar (usual precedence, ^ binds tightest and associates right):

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | power
    power   := atom ('^' factor)?
    atom    := number | 't' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
    func    := sin | cos | tan | sqrt | exp | ln | abs

Trees evaluate against scalars or numpy arrays, differentiate
symbolically, and pretty-print back to parseable text.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

FUNCTIONS = ("sin", "cos", "tan", "sqrt", "exp", "ln", "abs")
CONSTANTS = {"pi": math.pi, "e": math.e}

_NP_FUNC = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "sqrt": np.sqrt,
    "exp": np.exp,
    "ln": np.log,
    "abs": np.abs,
}


class ExpressionError(ValueError):
    """Parse failure; carries the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.reason = message


class EvalError(ValueError):
    """Evaluation left the function's domain (division by zero, ln(x<=0), ...)."""


# ---------------------------------------------------------------------------
# Nodes


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str  # only "t"


@dataclass(frozen=True)
class Const:
    name: str  # "pi" | "e"


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Num | Var | Const | Neg | BinOp | Call


# ---------------------------------------------------------------------------
# Tokenizer


_TOK_NUM = "number"
_TOK_IDENT = "ident"
_TOK_OP = "op"
_TOK_LPAREN = "("
_TOK_RPAREN = ")"
_TOK_EOF = "eof"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            # exponent suffix: 1e-3, 2.5E+10
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    while k < n and text[k].isdigit():
                        k += 1
                    j = k
            toks.append((_TOK_NUM, text[i:j], i))
            i = j
        elif c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append((_TOK_IDENT, text[i:j], i))
            i = j
        elif c in "+-*/^":
            toks.append((_TOK_OP, c, i))
            i += 1
        elif c == "(":
            toks.append((_TOK_LPAREN, c, i))
            i += 1
        elif c == ")":
            toks.append((_TOK_RPAREN, c, i))
            i += 1
        else:
            raise ExpressionError(f"unexpected character {c!r}", i)
    toks.append((_TOK_EOF, "", n))
    return toks


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def advance(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ExpressionError(f"expected {what}", tok[2])
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != _TOK_EOF:
            raise ExpressionError("expected end of expression", tok[2])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[:2] in ((_TOK_OP, "+"), (_TOK_OP, "-")):
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[:2] in ((_TOK_OP, "*"), (_TOK_OP, "/")):
            op = self.advance()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        tok = self.peek()
        if tok[:2] == (_TOK_OP, "-"):
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[:2] == (_TOK_OP, "^"):
            self.advance()
            # right-assoc, and allow a unary minus in the exponent: 2^-3
            return BinOp("^", base, self.factor())
        return base

    def atom(self) -> Node:
        kind, text, offset = self.peek()
        if kind == _TOK_NUM:
            self.advance()
            return Num(float(text))
        if kind == _TOK_IDENT:
            self.advance()
            if text in FUNCTIONS:
                self.expect(_TOK_LPAREN, "'(' after function name")
                tok = self.peek()
                if tok[0] == _TOK_RPAREN:
                    raise ExpressionError("expected expression", tok[2])
                arg = self.expr()
                self.expect(_TOK_RPAREN, "')'")
                return Call(text, arg)
            if text == "t":
                return Var("t")
            if text in CONSTANTS:
                return Const(text)
            raise ExpressionError(f"unknown identifier {text!r}", offset)
        if kind == _TOK_LPAREN:
            self.advance()
            node = self.expr()
            self.expect(_TOK_RPAREN, "')'")
            return node
        raise ExpressionError("expected expression", offset)


def parse_expression(text: str) -> Node:
    """Parse `text` into an expression tree; raises ExpressionError with offset."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Evaluation


def evaluate(node: Node, t):
    """Evaluate at t (float or ndarray). Raises EvalError on domain violations."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return t
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Neg):
        return -evaluate(node.arg, t)
    if isinstance(node, BinOp):
        a = evaluate(node.left, t)
        b = evaluate(node.right, t)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if np.any(b == 0):
                raise EvalError("division by zero")
            return a / b
        if node.op == "^":
            return _power(a, b)
        raise AssertionError(node.op)
    if isinstance(node, Call):
        x = evaluate(node.arg, t)
        if node.func == "ln":
            if np.any(np.asarray(x) <= 0):
                raise EvalError("ln of non-positive value")
        elif node.func == "sqrt":
            if np.any(np.asarray(x) < 0):
                raise EvalError("sqrt of negative value")
        return _NP_FUNC[node.func](x)
    raise AssertionError(type(node))


def _power(a, b):
    b_arr = np.asarray(b)
    if b_arr.ndim == 0 and float(b_arr) == int(float(b_arr)):
        return np.power(a, int(float(b_arr)))  # integer exponent: any base sign
    if np.any(np.asarray(a) < 0):
        raise EvalError("negative base with non-integer exponent")
    if np.any((np.asarray(a) == 0) & (b_arr < 0)):
        raise EvalError("zero base with negative exponent")
    return np.power(a, b)


# ---------------------------------------------------------------------------
# Symbolic derivative


def derivative(node: Node) -> Node:
    """d/dt of the tree, as a new tree (lightly simplified)."""
    if isinstance(node, (Num, Const)):
        return Num(0.0)
    if isinstance(node, Var):
        return Num(1.0)
    if isinstance(node, Neg):
        return _neg(derivative(node.arg))
    if isinstance(node, BinOp):
        u, v = node.left, node.right
        du, dv = derivative(u), derivative(v)
        if node.op == "+":
            return _add(du, dv)
        if node.op == "-":
            return _sub(du, dv)
        if node.op == "*":
            return _add(_mul(du, v), _mul(u, dv))
        if node.op == "/":
            return _div(_sub(_mul(du, v), _mul(u, dv)), _mul(v, v))
        if node.op == "^":
            if isinstance(v, Num):  # power rule, valid for negative bases too
                return _mul(_mul(v, BinOp("^", u, Num(v.value - 1.0))), du)
            # general case u^v = exp(v ln u)
            return _mul(
                BinOp("^", u, v),
                _add(_mul(dv, Call("ln", u)), _div(_mul(v, du), u)),
            )
        raise AssertionError(node.op)
    if isinstance(node, Call):
        u = node.arg
        du = derivative(u)
        if node.func == "sin":
            return _mul(Call("cos", u), du)
        if node.func == "cos":
            return _neg(_mul(Call("sin", u), du))
        if node.func == "tan":
            return _div(du, _mul(Call("cos", u), Call("cos", u)))
        if node.func == "sqrt":
            return _div(du, _mul(Num(2.0), Call("sqrt", u)))
        if node.func == "exp":
            return _mul(Call("exp", u), du)
        if node.func == "ln":
            return _div(du, u)
        if node.func == "abs":
            # sign(u) * u' — undefined at u = 0; evaluates to 0 there
            return _mul(_div(u, Call("abs", u)), du)
        raise AssertionError(node.func)
    raise AssertionError(type(node))


def _is_zero(n: Node) -> bool:
    return isinstance(n, Num) and n.value == 0.0


def _is_one(n: Node) -> bool:
    return isinstance(n, Num) and n.value == 1.0


def _neg(n: Node) -> Node:
    if isinstance(n, Num):
        return Num(-n.value)
    if isinstance(n, Neg):
        return n.arg
    return Neg(n)


def _add(a: Node, b: Node) -> Node:
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value + b.value)
    return BinOp("+", a, b)


def _sub(a: Node, b: Node) -> Node:
    if _is_zero(b):
        return a
    if _is_zero(a):
        return _neg(b)
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value - b.value)
    return BinOp("-", a, b)


def _mul(a: Node, b: Node) -> Node:
    if _is_zero(a) or _is_zero(b):
        return Num(0.0)
    if _is_one(a):
        return b
    if _is_one(b):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value * b.value)
    return BinOp("*", a, b)


def _div(a: Node, b: Node) -> Node:
    if _is_zero(a):
        return Num(0.0)
    if _is_one(b):
        return a
    return BinOp("/", a, b)


# ---------------------------------------------------------------------------
# Pretty-printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def to_text(node: Node) -> str:
    """Render back to parseable text; parse(to_text(n)) is structurally n."""
    return _fmt(node, 0)


def _fmt(node: Node, parent_prec: int) -> str:
    if isinstance(node, Num):
        if node.value < 0:
            return _fmt(Neg(Num(-node.value)), parent_prec)
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Neg):
        inner = _fmt(node.arg, _PREC["neg"])
        text = f"-{inner}"
        return f"({text})" if parent_prec > _PREC["neg"] else text
    if isinstance(node, Call):
        return f"{node.func}({_fmt(node.arg, 0)})"
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        if node.op == "^":
            # right-assoc: left operand needs parens at equal precedence
            left = _fmt(node.left, prec + 1)
            right = _fmt(node.right, prec)
        else:
            left = _fmt(node.left, prec)
            # left-assoc: right operand needs parens at equal precedence
            right = _fmt(node.right, prec + 1)
        text = f"{left}{node.op}{right}"
        return f"({text})" if parent_prec > prec else text
    raise AssertionError(type(node))
