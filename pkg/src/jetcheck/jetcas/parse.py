"""Expression grammar: parser and canonical printer.

Grammar (bit-exact):

    identifiers   [A-Za-z][A-Za-z0-9]*
    derivatives   identifier '_' followed by one or more declared
                  variable names concatenated (U_XXY, x_z0z0z1);
                  resolved by maximal munch against the catalog
    operators     + - * / ^ with integer exponents, parentheses
    rationals     p/q (plain division of integer literals)

Parsing, printing, then re-parsing is a fixed point: the printer emits
terms in descending monomial order with explicit '*' products.
"""

from __future__ import annotations

from fractions import Fraction

from . import backend as bk
from .expr import Expression, ExprError


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (offset {position})")
        self.position = position


_OPS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            name = text[i:j]
            if j < n and text[j] == "_":
                k = j + 1
                m = k
                while m < n and text[m].isalnum():
                    m += 1
                if m == k:
                    raise ParseError("empty derivative suffix", k)
                tokens.append(("jet", (name, text[k:m], k), i))
                i = m
            else:
                tokens.append(("name", name, i))
                i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


def _split_suffix(space, suffix, pos):
    """Maximal-munch split of a derivative suffix into variable names."""
    names = sorted((v.name for v in space.variables), key=len, reverse=True)
    out = []
    i = 0
    while i < len(suffix):
        for name in names:
            if suffix.startswith(name, i):
                out.append(name)
                i += len(name)
                break
        else:
            raise ParseError(
                f"cannot match derivative suffix {suffix[i:]!r} against declared variables",
                pos + i,
            )
    return out


class _Parser:
    def __init__(self, space, tokens):
        self.space = space
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1]!r}", t[2])
        return t

    def parse(self):
        e = self.expression()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected trailing input {t[1]!r}", t[2])
        return e

    def expression(self):
        t = self.peek()
        if t[0] == "-":
            self.next()
            e = -self.term()
        elif t[0] == "+":
            self.next()
            e = self.term()
        else:
            e = self.term()
        while True:
            t = self.peek()
            if t[0] == "+":
                self.next()
                e = e + self.term()
            elif t[0] == "-":
                self.next()
                e = e - self.term()
            else:
                return e

    def term(self):
        e = self.factor()
        while True:
            t = self.peek()
            if t[0] == "*":
                self.next()
                e = e * self.factor()
            elif t[0] == "/":
                self.next()
                d = self.factor()
                if d.is_zero():
                    raise ParseError("division by zero", t[2])
                e = e / d
            else:
                return e

    def factor(self):
        t = self.peek()
        if t[0] == "-":
            self.next()
            return -self.factor()
        base = self.primary()
        t = self.peek()
        if t[0] == "^":
            self.next()
            return base ** self.exponent()
        return base

    def exponent(self):
        t = self.next()
        sign = 1
        if t[0] == "-":
            sign = -1
            t = self.next()
        if t[0] == "(":
            inner = self.exponent()
            self.expect(")")
            return sign * inner
        if t[0] != "int":
            raise ParseError("integer exponent expected", t[2])
        return sign * int(t[1])

    def primary(self):
        t = self.next()
        kind, val, pos = t
        if kind == "int":
            return Expression.const(self.space, Fraction(int(val)))
        if kind == "(":
            e = self.expression()
            self.expect(")")
            return e
        if kind == "name":
            return self._atom(val, (), pos)
        if kind == "jet":
            name, suffix, spos = val
            orders = _split_suffix(self.space, suffix, spos)
            return self._atom(name, orders, pos)
        raise ParseError(f"unexpected token {val!r}", pos)

    def _atom(self, name, orders, pos):
        space = self.space
        if name not in space.field_index:
            raise ParseError(f"undeclared symbol {name!r}", pos)
        f = space.fields[space.field_index[name]]
        if orders and f.kind != "field":
            raise ParseError(
                f"{f.kind} symbol {name!r} takes no derivative suffix", pos
            )
        try:
            key = space.jet(name, orders)
        except Exception as exc:
            raise ParseError(str(exc), pos) from None
        return Expression.atom(space, key)


def parse_expression(text, space):
    """Parse `text` against the catalog; returns a canonical Expression."""
    return _Parser(space, _tokenize(text)).parse()


# -- printing ---------------------------------------------------------------


def _mono_sort_key(space, m):
    # descending graded-lex, realized by sorting on a per-monomial key
    return (bk.mono_deg(m), tuple((g, e) for g, e in m))


def _poly_to_text(space, p):
    if not p:
        return "0"
    import functools

    terms = sorted(p.items(), key=functools.cmp_to_key(
        lambda a, b: bk.mono_cmp(a[0], b[0])), reverse=True)
    parts = []
    for idx, (m, c) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        factors = []
        if not m:
            factors.append(_frac_text(mag))
        else:
            if mag != 1:
                factors.append(_frac_text(mag))
            for g, e in m:
                name = space.jet_name(g)
                factors.append(name if e == 1 else f"{name}^{e}")
        body = "*".join(factors)
        if idx == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def _frac_text(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def expression_to_text(e):
    num = _poly_to_text(e.space, e.num)
    if e.den == {(): Fraction(1)}:
        return num
    den = _poly_to_text(e.space, e.den)
    return f"({num})/({den})"
