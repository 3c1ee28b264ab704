"""Expression grammar for CLI inputs: a small precedence-climbing parser.

Grammar (EBNF):

    expr    = term , { ("+" | "-") , term } ;
    term    = unary , { ("*" | "/") , unary } ;
    unary   = "-" , unary | power ;
    power   = atom , [ "^" , integer ] ;
    atom    = integer | "x" | "q" | "(" , expr , ")" | matrix ;
    matrix  = "[" , row , { "," , row } , "]" ;
    row     = "[" , expr , { "," , expr } , "]" ;

Precedence (tightest first): ^ , unary - , * and / , binary + and -.
Exponents are nonnegative integer literals.  Whitespace is insignificant.
The symbol q is only admitted when evaluating over Q(q).
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExprSyntaxError, TwistcalcError
from .fields import QQ_Q
from .poly import UniPoly, poly_div_exact


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class MatLit:
    rows: tuple


@dataclass(frozen=True)
class Token:
    kind: str          # "int" | "name" | "op"
    text: str
    line: int
    col: int


_OPS = set("+-*/^()[],")


def tokenize(src):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(Token("int", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(Token("name", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _OPS:
            tokens.append(Token("op", ch, line, col))
            i += 1
            col += 1
            continue
        raise ExprSyntaxError((line, col), "a token", found=ch)
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def pop(self):
        tok = self.peek()
        if tok is not None:
            self.pos += 1
        return tok

    def fail(self, expected):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError(None, expected, found="end of input")
        raise ExprSyntaxError((tok.line, tok.col), expected, found=tok.text)

    def expect_op(self, text):
        tok = self.peek()
        if tok is None or tok.kind != "op" or tok.text != text:
            self.fail(f"'{text}'")
        return self.pop()

    def parse_expr(self):
        node = self.parse_term()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "op" and tok.text in "+-":
                self.pop()
                node = BinOp(tok.text, node, self.parse_term())
            else:
                return node

    def parse_term(self):
        node = self.parse_unary()
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == "op" and tok.text in "*/":
                self.pop()
                node = BinOp(tok.text, node, self.parse_unary())
            else:
                return node

    def parse_unary(self):
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == "-":
            self.pop()
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == "^":
            self.pop()
            etok = self.peek()
            if etok is None or etok.kind != "int":
                self.fail("a nonnegative integer exponent")
            self.pop()
            return Pow(base, int(etok.text))
        return base

    def parse_atom(self):
        tok = self.peek()
        if tok is None:
            self.fail("an expression")
        if tok.kind == "int":
            self.pop()
            return IntLit(int(tok.text))
        if tok.kind == "name":
            if tok.text not in ("x", "q"):
                self.fail("a symbol 'x' or 'q'")
            self.pop()
            return Sym(tok.text)
        if tok.kind == "op" and tok.text == "(":
            self.pop()
            node = self.parse_expr()
            self.expect_op(")")
            return node
        if tok.kind == "op" and tok.text == "[":
            return self.parse_matrix()
        self.fail("an expression")

    def parse_matrix(self):
        self.expect_op("[")
        rows = [self.parse_row()]
        while self.peek() is not None and self.peek().text == ",":
            self.pop()
            rows.append(self.parse_row())
        self.expect_op("]")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            self.fail("rows of equal length")
        return MatLit(tuple(rows))

    def parse_row(self):
        self.expect_op("[")
        entries = [self.parse_expr()]
        while self.peek() is not None and self.peek().text == ",":
            self.pop()
            entries.append(self.parse_expr())
        self.expect_op("]")
        return tuple(entries)


def parse(src):
    parser = _Parser(tokenize(src))
    node = parser.parse_expr()
    if parser.peek() is not None:
        parser.fail("end of input")
    return node


# -- printing (round-trips through parse) ------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC_ADD if node.op in "+-" else _PREC_MUL
    if isinstance(node, Neg):
        return _PREC_NEG
    if isinstance(node, Pow):
        return _PREC_POW
    return _PREC_ATOM


def to_string(node):
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, _PREC_NEG)
    if isinstance(node, BinOp):
        mine = _prec(node)
        left = _wrap(node.left, mine)
        right = _wrap(node.right, mine + 1)
        return f"{left} {node.op} {right}"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, _PREC_POW + 1)}^{node.exponent}"
    if isinstance(node, MatLit):
        rows = ", ".join(
            "[" + ", ".join(to_string(e) for e in row) + "]"
            for row in node.rows)
        return f"[{rows}]"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node, min_prec):
    s = to_string(node)
    return f"({s})" if _prec(node) < min_prec else s


# -- evaluation ---------------------------------------------------------------


class _Value:
    """Evaluation result: a scalar, a polynomial in x, or a matrix grid."""

    __slots__ = ("kind", "data")

    def __init__(self, kind, data):
        self.kind = kind
        self.data = data


def _eval(node, field):
    if isinstance(node, IntLit):
        return _Value("scalar", field.coerce(node.value))
    if isinstance(node, Sym):
        if node.name == "x":
            return _Value("poly", UniPoly.monomial(field, 1))
        if field is not QQ_Q:
            raise TwistcalcError("the symbol q needs the field Q(q)")
        from .fields import q as q_gen
        return _Value("scalar", q_gen)
    if isinstance(node, Neg):
        v = _eval(node.operand, field)
        if v.kind == "mat":
            return _Value("mat", tuple(tuple(-c for c in row) for row in v.data))
        return _Value(v.kind, -v.data)
    if isinstance(node, Pow):
        v = _eval(node.base, field)
        if v.kind == "mat":
            return _mat_pow(v, node.exponent, field)
        return _Value(v.kind, v.data ** node.exponent)
    if isinstance(node, MatLit):
        rows = []
        for row in node.rows:
            out = []
            for e in row:
                v = _eval(e, field)
                if v.kind != "scalar":
                    raise TwistcalcError("matrix entries must be scalars")
                out.append(v.data)
            rows.append(tuple(out))
        return _Value("mat", tuple(rows))
    if isinstance(node, BinOp):
        return _eval_binop(node, field)
    raise TypeError(f"not an expression node: {node!r}")


def _to_poly(v, field):
    if v.kind == "poly":
        return v.data
    return UniPoly.const(field, v.data)


def _eval_binop(node, field):
    lhs = _eval(node.left, field)
    rhs = _eval(node.right, field)
    op = node.op
    if lhs.kind == "mat" or rhs.kind == "mat":
        return _eval_matrix_op(op, lhs, rhs, field)
    if op in "+-" or op == "*":
        if lhs.kind == "poly" or rhs.kind == "poly":
            a, b = _to_poly(lhs, field), _to_poly(rhs, field)
            out = a + b if op == "+" else a - b if op == "-" else a * b
            return _Value("poly", out)
        a, b = lhs.data, rhs.data
        out = a + b if op == "+" else a - b if op == "-" else a * b
        return _Value("scalar", out)
    # division: exact everywhere
    if lhs.kind == "scalar" and rhs.kind == "scalar":
        return _Value("scalar", lhs.data / rhs.data)
    if rhs.kind == "scalar":
        return _Value("poly", lhs.data.scale(field.one / rhs.data))
    return _Value("poly", poly_div_exact(_to_poly(lhs, field), rhs.data))


def _eval_matrix_op(op, lhs, rhs, field):
    from .linalg import mat_add, mat_mul, mat_scale, mat_sub
    if lhs.kind == "mat" and rhs.kind == "mat":
        if len(lhs.data) != len(rhs.data):
            raise TwistcalcError("matrix size mismatch")
        if op == "+":
            return _Value("mat", mat_add(lhs.data, rhs.data))
        if op == "-":
            return _Value("mat", mat_sub(lhs.data, rhs.data))
        if op == "*":
            return _Value("mat", mat_mul(lhs.data, rhs.data))
        raise TwistcalcError("matrices cannot be divided")
    scalar, mat, mat_first = (rhs, lhs, True) if lhs.kind == "mat" else (lhs, rhs, False)
    if scalar.kind != "scalar":
        raise TwistcalcError("cannot mix polynomials and matrices")
    if op == "*":
        return _Value("mat", mat_scale(mat.data, scalar.data))
    if op == "/" and mat_first:
        return _Value("mat", mat_scale(mat.data, field.one / scalar.data))
    raise TwistcalcError(f"unsupported matrix operation '{op}'")


def _mat_pow(v, n, field):
    from .linalg import mat_eye, mat_mul
    size = len(v.data)
    out = mat_eye(field, size)
    base = v.data
    while n:
        if n & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        n >>= 1
    return _Value("mat", out)


def eval_scalar(src, field):
    v = _eval(parse(src), field)
    if v.kind == "poly" and v.data.is_constant():
        return v.data.constant_value()
    if v.kind != "scalar":
        raise TwistcalcError(f"expected a scalar, got a {v.kind}")
    return v.data


def eval_poly(src, field):
    """Evaluate to a polynomial in x over the field."""
    v = _eval(parse(src), field)
    if v.kind == "scalar":
        return UniPoly.const(field, v.data)
    if v.kind != "poly":
        raise TwistcalcError(f"expected a polynomial, got a {v.kind}")
    return v.data


def eval_matrix(src, field, size=None):
    v = _eval(parse(src), field)
    if v.kind != "mat":
        raise TwistcalcError(f"expected a matrix, got a {v.kind}")
    if size is not None and len(v.data) != size:
        raise TwistcalcError(f"expected a {size}x{size} matrix")
    return v.data
