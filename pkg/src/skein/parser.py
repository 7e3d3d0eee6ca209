"""Text syntax for elements.

Grammar (juxtaposition is the noncommutative product)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (['*'] factor)*
    factor := atom ['^' exponent]
    atom   := INT | 'q' | 'a' | 'b' | symbol | '(' expr ')'

Symbols are ``t3``, ``s12``, ``s123`` or braced ``t{10}``, ``s{10,12}``.
Single-digit labels are concatenated; ``s22`` is the s_ii macro.  In
template mode symbols are ``t[k]``/``s[24]`` and name formal positions.
"""

import re
from fractions import Fraction

from skein.algebra import (
    S2,
    T,
    Element,
    IndexOutOfRange,
    InvalidSymbol,
    gen_make,
    s_symbol,
)
from skein.qring import ALPHA, BETA, qpow


class SyntaxError(ValueError):  # noqa: A001
    """Parse failure carrying the byte offset of the offending token."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<sym>[ts](?:\{\d+(?:\s*,\s*\d+)*\}|\[\d+\]|\d+))
  | (?P<scalar>[qab](?![A-Za-z0-9_\[{]))
  | (?P<op>[-+*^()/{}])
    """,
    re.VERBOSE,
)


def tokenize(text):
    out = []
    pos = 0
    data = text.encode()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SyntaxError(f"unexpected character {text[pos]!r}", len(text[:pos].encode()))
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), len(text[:pos].encode())))
        pos = m.end()
    out.append(("end", "", len(data)))
    return out


def _symbol_labels(body):
    if body.startswith("{"):
        return tuple(int(x) for x in body[1:-1].split(","))
    if body.startswith("["):
        return tuple(int(ch) for ch in body[1:-1])
    return tuple(int(ch) for ch in body)


def _resolve(text, n=None, positions=None):
    """Element for a symbol token; ``positions`` maps formal slots to labels."""
    letter, body = text[0], text[1:]
    raw = _symbol_labels(body)
    if body.startswith("[") != (positions is not None):
        raise InvalidSymbol(f"symbol {text!r} not allowed here")
    labels = tuple(positions[k] for k in raw) if positions is not None else raw
    if n is not None:
        for i in labels:
            if i < 1 or i > n:
                raise IndexOutOfRange(f"label {i} in {text!r} exceeds n={n}")
    if letter == "t":
        if len(labels) != 1:
            raise InvalidSymbol(f"t-symbol needs one label: {text!r}")
        return Element.gen(gen_make(T, labels, n))
    if len(labels) == 2 and labels[0] == labels[1]:
        return s_symbol(labels, n)
    if len(labels) not in (2, 3):
        raise InvalidSymbol(f"s-symbol needs two or three labels: {text!r}")
    return Element.gen(gen_make(len(labels) - 1, labels, n))


def parse_symbol(text, n=None):
    """Generator code of a single symbol such as ``s13`` (no macros)."""
    letter, body = text[0], text[1:]
    if letter not in "ts" or not body:
        raise InvalidSymbol(f"not a symbol: {text!r}")
    try:
        labels = _symbol_labels(body)
    except ValueError:
        raise InvalidSymbol(f"not a symbol: {text!r}") from None
    kind = T if letter == "t" else len(labels) - 1
    if letter == "s" and kind < S2:
        raise InvalidSymbol(f"not a symbol: {text!r}")
    return gen_make(kind, labels, n)


class _Parser:
    def __init__(self, text, n, positions):
        self.tokens = tokenize(text)
        self.i = 0
        self.n = n
        self.positions = positions

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise SyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        e = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise SyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return e

    def expr(self):
        negate = False
        if self.peek()[1] == "-":
            self.take()
            negate = True
        result = self.term()
        if negate:
            result = -result
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def _starts_factor(self, tok):
        return tok[0] in ("int", "sym", "scalar") or tok[1] == "("

    def term(self):
        result = self.factor()
        while True:
            tok = self.peek()
            if tok[1] == "*":
                self.take()
                result = result * self.factor()
            elif self._starts_factor(tok):
                result = result * self.factor()
            else:
                return result

    def factor(self):
        tok = self.peek()
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        self.take()
        exp_tok = self.peek()
        exponent = self.exponent()
        if tok[1] == "q":
            doubled = exponent * 2
            if doubled.denominator != 1:
                raise SyntaxError("q exponent must be a multiple of 1/2", exp_tok[2])
            return Element.scalar(qpow(int(doubled)))
        if exponent.denominator != 1:
            raise SyntaxError("fractional exponent only allowed on q", exp_tok[2])
        k = int(exponent)
        if k >= 0:
            return base ** k
        if len(base.terms) == 1 and () in base.terms:
            inv = base.terms[()].unit_inverse()
            if inv is not None:
                return Element.scalar(inv ** (-k))
        raise SyntaxError("negative exponent of a non-unit", exp_tok[2])

    def exponent(self):
        tok = self.peek()
        if tok[1] in ("{", "("):
            close = "}" if tok[1] == "{" else ")"
            self.take()
            value = self._signed_fraction()
            self.take(close)
            return value
        return self._signed_int()

    def _signed_int(self):
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "int":
            raise SyntaxError(f"expected integer exponent, found {tok[1] or 'end of input'!r}", tok[2])
        return Fraction(sign * int(tok[1]))

    def _signed_fraction(self):
        value = self._signed_int()
        if self.peek()[1] == "/":
            self.take()
            tok = self.take()
            if tok[0] != "int" or int(tok[1]) == 0:
                raise SyntaxError("bad denominator", tok[2])
            value = value / int(tok[1])
        return value

    def atom(self):
        tok = self.take()
        kind, text, offset = tok
        if kind == "int":
            return Element.scalar(int(text))
        if kind == "scalar":
            return Element.scalar({"q": qpow(2), "a": ALPHA, "b": BETA}[text])
        if kind == "sym":
            return _resolve(text, self.n, self.positions)
        if text == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise SyntaxError(f"unexpected {text or 'end of input'!r}", offset)


def parse_element(text, n=None, positions=None):
    """Parse text into an :class:`Element`; labels checked against ``n``."""
    return _Parser(text, n, positions).parse()
