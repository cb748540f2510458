"""Polynomial text grammar: parser and canonical printer.

Grammar (whitespace ignored, no implicit multiplication):

    poly    := [sign] term { sign term }
    term    := factor { "*" factor }
    factor  := NUMBER [ "/" NUMBER ]          rational coefficient
             | "i"                            the imaginary unit
             | IDENT [ "^" NUMBER ]           declared variable power
             | "(" poly ")"                   parenthesized constant, e.g. (1+2*i)

Every identifier must be a declared variable or the literal ``i``; ``i`` is
reserved and cannot be declared as a variable.  Parenthesized sub-expressions
must evaluate to constants (they exist for complex coefficients only).
Exponents are positive integers.  Errors carry the offending position.

The printer emits a canonical form (terms in descending graded reverse
lexicographic order, monic-style coefficient formatting) that re-parses to the
identical polynomial; round-tripping is property-tested.
"""

from __future__ import annotations

from fractions import Fraction

from germlab.poly import Monomial, Poly, mono_degree
from germlab.qi import QI, format_qi


class ParseError(ValueError):
    """Syntax or validation error with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_SYMBOLS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    k = 0
    n = len(text)
    while k < n:
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < n and text[k].isdigit():
                k += 1
            tokens.append(("number", text[start:k], start))
            continue
        if ch.isalpha() or ch == "_":
            start = k
            while k < n and (text[k].isalnum() or text[k] == "_"):
                k += 1
            tokens.append(("ident", text[start:k], start))
            continue
        if ch in _SYMBOLS:
            tokens.append(("sym", ch, k))
            k += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", k)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: list[str]):
        if "i" in variables:
            raise ParseError("'i' is reserved for the imaginary unit", 0)
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = variables
        self.var_index = {name: j for j, name in enumerate(variables)}
        self.nvars = len(variables)

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, sym: str):
        kind, value, at = self.peek()
        if kind != "sym" or value != sym:
            raise ParseError(f"expected {sym!r}", at)
        return self.advance()

    # poly := [sign] term { sign term }
    def parse_poly(self) -> Poly:
        total = Poly.zero(self.nvars)
        sign = 1
        kind, value, _ = self.peek()
        if kind == "sym" and value in "+-":
            self.advance()
            sign = -1 if value == "-" else 1
        while True:
            term = self.parse_term()
            if sign < 0:
                term = -term
            total = total + term
            kind, value, at = self.peek()
            if kind == "sym" and value in "+-":
                self.advance()
                sign = -1 if value == "-" else 1
                continue
            return total

    # term := factor { "*" factor }
    def parse_term(self) -> Poly:
        out = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value == "*":
                self.advance()
                out = out * self.parse_factor()
                continue
            return out

    def parse_factor(self) -> Poly:
        kind, value, at = self.peek()
        if kind == "number":
            self.advance()
            num = int(value)
            k2, v2, _ = self.peek()
            if k2 == "sym" and v2 == "/":
                self.advance()
                k3, v3, at3 = self.peek()
                if k3 != "number":
                    raise ParseError("expected a denominator", at3)
                self.advance()
                den = int(v3)
                if den == 0:
                    raise ParseError("zero denominator", at3)
                return Poly.constant(self.nvars, QI(Fraction(num, den)))
            return Poly.constant(self.nvars, QI(num))
        if kind == "ident":
            self.advance()
            if value == "i":
                base = Poly.constant(self.nvars, QI.i())
            elif value in self.var_index:
                base = Poly.variable(self.nvars, self.var_index[value])
            else:
                raise ParseError(f"unknown identifier {value!r}", at)
            k2, v2, _ = self.peek()
            if k2 == "sym" and v2 == "^":
                self.advance()
                k3, v3, at3 = self.peek()
                if k3 == "sym" and v3 == "-":
                    raise ParseError("negative exponent", at3)
                if k3 != "number":
                    raise ParseError("expected an integer exponent", at3)
                self.advance()
                e = int(v3)
                if e < 1:
                    raise ParseError("exponent must be a positive integer", at3)
                return base ** e
            return base
        if kind == "sym" and value == "(":
            self.advance()
            inner = self.parse_poly()
            self.expect_sym(")")
            if not inner.is_constant():
                raise ParseError("parenthesized coefficients must be constant", at)
            return inner
        raise ParseError("expected a coefficient, variable, or '('", at)


def parse_poly(text: str, variables: list[str]) -> Poly:
    """Parse ``text`` over the declared variables (order fixes exponent slots)."""
    parser = _Parser(text, variables)
    poly = parser.parse_poly()
    kind, value, at = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r}", at)
    return poly


# ---------------------------------------------------------------------------
# canonical printing


def _grevlex_key(mono: Monomial):
    return (mono_degree(mono), tuple(-e for e in reversed(mono)))


def _mono_string(mono: Monomial, names: list[str]) -> str:
    parts = []
    for e, name in zip(mono, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_to_string(f: Poly, names: list[str]) -> str:
    """Canonical text form; ``parse_poly(poly_to_string(f), names) == f``."""
    if f.is_zero():
        return "0"
    pieces: list[str] = []
    for mono in sorted(f.terms, key=_grevlex_key, reverse=True):
        c = f.terms[mono]
        mono_str = _mono_string(mono, names)
        # Sign handling: absorb the sign for real and pure-imaginary
        # coefficients; mixed complex coefficients stay parenthesized with a
        # leading "+".
        if c.im and c.re:
            coeff_str, negative = format_qi(c), False
        else:
            value = c.re if not c.im else c.im
            negative = value < 0
            abs_c = QI(-c.re, -c.im) if negative else c
            if not mono_str and abs_c == QI.one():
                coeff_str = "1"
            elif abs_c == QI.one():
                coeff_str = ""
            elif not abs_c.re and abs_c.im == 1:
                coeff_str = "i"
            else:
                coeff_str = format_qi(abs_c)
        if coeff_str and mono_str:
            body = f"{coeff_str}*{mono_str}"
        else:
            body = coeff_str or mono_str
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)
