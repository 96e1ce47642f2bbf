"""Session-file DSL and the ideal-expression language used by ``eval``.

Session grammar::

    file      := ring_decl stmt*
    ring_decl := "ring" ("QQ" | "GF(" prime ")") "[" ident ("," ident)* "]"
                 ["order" ("lex" | "degrevlex")]
    stmt      := "ideal" ident "=" poly ("," poly)*
    poly      := ["+"|"-"] term (("+"|"-") term)*
    term      := [coeff "*"] var ["^" nat] ("*" var ["^" nat])*  |  coeff
    coeff     := integer | integer "/" integer

``#`` starts a comment. Statements may span lines; a new statement starts
at the keyword ``ideal``.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .core import DEGREVLEX, QQ, Field, Polynomial, Ring, order_from_name


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),=\[\]])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col: int = 1) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        chunk = m.group()
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, chunk, line, col))
        for ch in chunk:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Stream:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "ident") and self.tok.text == text:
            self.advance()
            return True
        return False

    def expect(self, text: str, what: Optional[str] = None) -> Token:
        t = self.tok
        if t.text != text or t.kind == "eof":
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {what or repr(text)}, found {found}", t.line, t.col)
        return self.advance()

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.tok.line, self.tok.col)


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

def _parse_coeff(s: _Stream) -> Fraction:
    num = int(s.advance().text)
    if s.tok.text == "/" and s.peek().kind == "num":
        s.advance()
        den_tok = s.advance()
        den = int(den_tok.text)
        if den == 0:
            raise ParseError("zero denominator", den_tok.line, den_tok.col)
        return Fraction(num, den)
    return Fraction(num)


def _parse_power(s: _Stream, ring: Ring, exp: List[int]):
    t = s.tok
    if t.kind != "ident":
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"expected a variable, found {found}", t.line, t.col)
    try:
        idx = ring.index(t.text)
    except KeyError:
        raise ParseError(f"unknown variable {t.text!r} (ring has {', '.join(ring.vars)})", t.line, t.col) from None
    s.advance()
    e = 1
    if s.accept("^"):
        nt = s.tok
        if nt.kind != "num":
            raise ParseError("expected a nonnegative exponent after '^'", nt.line, nt.col)
        e = int(s.advance().text)
    exp[idx] += e


def _parse_term(s: _Stream, ring: Ring) -> Tuple[Tuple[int, ...], Fraction]:
    exp = [0] * ring.nvars
    coeff = Fraction(1)
    if s.tok.kind == "num":
        coeff = _parse_coeff(s)
        if not s.accept("*"):
            return tuple(exp), coeff
    _parse_power(s, ring, exp)
    while s.accept("*"):
        _parse_power(s, ring, exp)
    return tuple(exp), coeff


def _parse_poly(s: _Stream, ring: Ring) -> Polynomial:
    terms = []
    sign = 1
    op = s.tok if s.tok.text in ("+", "-") else None
    if s.accept("-"):
        sign = -1
    else:
        s.accept("+")
    while True:
        t = s.tok
        if op is not None and (t.kind == "eof" or t.text == "ideal"):
            raise ParseError(f"dangling {op.text!r} with no term after it", op.line, op.col)
        if t.kind not in ("num", "ident"):
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected a term, found {found}", t.line, t.col)
        exp, c = _parse_term(s, ring)
        terms.append((exp, sign * c))
        op = s.tok
        if s.accept("+"):
            sign = 1
        elif s.accept("-"):
            sign = -1
        else:
            break
    return Polynomial(ring, terms)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    s = _Stream(tokenize(text))
    p = _parse_poly(s, ring)
    if s.tok.kind != "eof":
        raise s.error(f"unexpected {s.tok.text!r} after polynomial")
    return p


# --------------------------------------------------------------------------
# session files
# --------------------------------------------------------------------------

@dataclass
class IdealDecl:
    name: str
    gens: List[Polynomial]
    line: int
    col: int


@dataclass
class SessionFile:
    ring: Ring
    ideals: Dict[str, IdealDecl] = field(default_factory=dict)

    def ideal(self, name: str):
        from .ideal import Ideal

        try:
            decl = self.ideals[name]
        except KeyError:
            raise KeyError(f"no ideal named {name!r} (declared: {', '.join(self.ideals) or 'none'})") from None
        return Ideal(self.ring, decl.gens)

    def to_text(self, canonical: bool = False) -> str:
        ring = self.ring
        head = f"ring {ring.field.name}[{','.join(ring.vars)}]"
        if ring.order != DEGREVLEX:
            head += f" order {ring.order.name}"
        lines = [head]
        for name, decl in self.ideals.items():
            if canonical:
                gens = self.ideal(name).generator_strings()
            else:
                gens = [str(g) for g in decl.gens]
            lines.append(f"ideal {name} = {', '.join(gens)}")
        return "\n".join(lines) + "\n"


def _parse_ring(s: _Stream) -> Ring:
    s.expect("ring", "'ring' declaration")
    t = s.tok
    if s.accept("QQ"):
        fld: Field = QQ
    elif s.accept("GF"):
        s.expect("(")
        pt = s.tok
        if pt.kind != "num":
            raise ParseError("expected a prime modulus", pt.line, pt.col)
        p = int(s.advance().text)
        s.expect(")")
        try:
            fld = Field(p)
        except ValueError as exc:
            raise ParseError(str(exc), pt.line, pt.col) from None
        warnings.warn(f"session declares GF({p}); the cuspidal theory assumes characteristic 0", stacklevel=3)
    else:
        raise ParseError("expected coefficient field QQ or GF(p)", t.line, t.col)
    s.expect("[")
    names = []
    while True:
        vt = s.tok
        if vt.kind != "ident":
            raise ParseError("expected a variable name", vt.line, vt.col)
        if vt.text in names:
            raise ParseError(f"duplicate variable {vt.text!r}", vt.line, vt.col)
        names.append(s.advance().text)
        if not s.accept(","):
            break
    s.expect("]")
    order = DEGREVLEX
    if s.accept("order"):
        ot = s.tok
        try:
            order = order_from_name(ot.text)
        except ValueError:
            raise ParseError("expected 'lex' or 'degrevlex'", ot.line, ot.col) from None
        s.advance()
    return Ring(tuple(names), fld, order)


def parse_session(text: str) -> SessionFile:
    s = _Stream(tokenize(text))
    ring = _parse_ring(s)
    session = SessionFile(ring)
    while s.tok.kind != "eof":
        kw = s.tok
        if kw.text != "ideal":
            raise ParseError(f"expected 'ideal', found {kw.text!r}", kw.line, kw.col)
        s.advance()
        nt = s.tok
        if nt.kind != "ident":
            raise ParseError("expected an ideal name", nt.line, nt.col)
        name = s.advance().text
        if name in session.ideals:
            raise ParseError(f"duplicate ideal name {name!r}", nt.line, nt.col)
        if name in ring.vars:
            raise ParseError(f"ideal name {name!r} clashes with a variable", nt.line, nt.col)
        s.expect("=")
        gens = [_parse_poly(s, ring)]
        while s.accept(","):
            gens.append(_parse_poly(s, ring))
        session.ideals[name] = IdealDecl(name, gens, kw.line, kw.col)
    return session


# --------------------------------------------------------------------------
# ideal expressions:  expr := name | func "(" expr ("," expr)* ")" | nat
# --------------------------------------------------------------------------

_FUNCS = {
    "sum": 2,
    "product": 2,
    "power": 2,
    "intersect": 2,
    "colon": 2,
    "saturate": 2,
}


class EvalError(ValueError):
    def __init__(self, message: str, col: int = 0):
        self.col = col
        super().__init__(f"column {col}: {message}" if col else message)


def eval_expr(session: SessionFile, text: str):
    """Evaluate ``sum/product/power/intersect/colon/saturate`` over named ideals."""
    from . import ideal as ops

    s = _Stream(tokenize(text))

    def node():
        t = s.tok
        if t.kind == "num":
            s.advance()
            return int(t.text)
        if t.kind != "ident":
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise EvalError(f"expected an ideal name or function, found {found}", t.col)
        s.advance()
        if t.text in _FUNCS and s.tok.text == "(":
            s.advance()
            args = [node()]
            while s.accept(","):
                args.append(node())
            s.expect(")")
            if len(args) != _FUNCS[t.text]:
                raise EvalError(f"{t.text} takes {_FUNCS[t.text]} arguments", t.col)
            return apply(t, args)
        if t.text in session.ideals:
            return session.ideal(t.text)
        raise EvalError(f"unknown ideal {t.text!r}", t.col)

    def apply(t: Token, args):
        name = t.text
        try:
            if name == "power":
                I, k = args
                if not isinstance(k, int) or not isinstance(I, ops.Ideal):
                    raise EvalError("power(ideal, nat)", t.col)
                return ops.power(I, k)
            if not all(isinstance(a, ops.Ideal) for a in args):
                raise EvalError(f"{name} expects ideal arguments", t.col)
            fn = {
                "sum": ops.ideal_sum,
                "product": ops.product,
                "intersect": ops.intersect,
                "colon": ops.colon,
                "saturate": ops.saturate,
            }[name]
            return fn(*args)
        except EvalError:
            raise
        except (ValueError, RuntimeError) as exc:
            raise EvalError(f"{name}: {exc}", t.col) from exc

    try:
        result = node()
        if s.tok.kind != "eof":
            raise EvalError(f"unexpected {s.tok.text!r}", s.tok.col)
    except ParseError as exc:
        raise EvalError(exc.message, exc.col) from exc
    if isinstance(result, int):
        raise EvalError("expression evaluates to an integer, not an ideal")
    return result
