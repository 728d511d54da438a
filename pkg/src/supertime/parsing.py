"""Expression text format: parser and printers.

Grammar (text format, ASCII with an optional unicode pi alias on input):

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('+' | '-') factor | power
    power   := base ('^' NUMBER)?
    base    := NUMBER | 'i' | IDENT | '(' expr ')'
    IDENT   := letter (letter | digit)* "'"*

Identifiers must be registered symbols; ``theta`` and ``thetabar`` are
reserved generator names, legal only when parsing supernumbers.  The
printers emit text this same parser accepts, and printing is canonical:
equal values print identically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import ParseError, UnknownSymbol
from .grassmann import THETA, THETABAR, SuperFunction
from .scalars import I_UNIT, ONE, REGISTRY, ScalarExpr

_OPS = {
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "/": "SLASH",
    "^": "CARET",
    "(": "LPAREN",
    ")": "RPAREN",
}


class Token(NamedTuple):
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _OPS:
            toks.append(Token(_OPS[c], c, i))
            i += 1
            continue
        if c.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            toks.append(Token("NUMBER", text[start:i], start))
            continue
        if c.isalpha() or c == "π":
            start = i
            chars: list[str] = []
            while i < n and (text[i].isalnum() or text[i] == "π"):
                chars.append("pi" if text[i] == "π" else text[i])
                i += 1
            while i < n and text[i] == "'":
                chars.append("'")
                i += 1
            toks.append(Token("IDENT", "".join(chars), start))
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    toks.append(Token("END", "", n))
    return toks


_BASE_EXPECTED = ("number", "symbol", "'i'", "'('")


class _Parser:
    def __init__(self, text: str, super_mode: bool):
        self.toks = _tokenize(text)
        self.pos = 0
        self.super_mode = super_mode

    def peek(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> SuperFunction:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError(
                f"unexpected {tok.value!r}", tok.pos, ("end of input", "operator")
            )
        return value

    def expr(self) -> SuperFunction:
        value = self.term()
        while self.peek().kind in ("PLUS", "MINUS"):
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op.kind == "PLUS" else value - rhs
        return value

    def term(self) -> SuperFunction:
        value = self.factor()
        while self.peek().kind in ("STAR", "SLASH"):
            op = self.advance()
            rhs = self.factor()
            value = value * rhs if op.kind == "STAR" else self._divide(value, rhs)
        return value

    def factor(self) -> SuperFunction:
        tok = self.peek()
        if tok.kind in ("PLUS", "MINUS"):
            self.advance()
            inner = self.factor()
            return inner if tok.kind == "PLUS" else -inner
        return self.power()

    def power(self) -> SuperFunction:
        value = self.base()
        if self.peek().kind == "CARET":
            self.advance()
            tok = self.peek()
            if tok.kind != "NUMBER":
                raise ParseError(
                    f"bad exponent {tok.value!r}", tok.pos, ("unsigned integer",)
                )
            self.advance()
            exp = int(tok.value)
            if not self.super_mode:
                return SuperFunction.scalar(value.u1 ** exp)
            return value ** exp
        return value

    def base(self) -> SuperFunction:
        tok = self.advance()
        if tok.kind == "NUMBER":
            return SuperFunction.scalar(ScalarExpr.from_int(int(tok.value)))
        if tok.kind == "LPAREN":
            value = self.expr()
            closing = self.advance()
            if closing.kind != "RPAREN":
                raise ParseError(
                    f"unexpected {closing.value!r}", closing.pos, ("')'",)
                )
            return value
        if tok.kind == "IDENT":
            name = tok.value
            if name == "i":
                return SuperFunction.scalar(I_UNIT)
            if name in (THETA, THETABAR):
                if not self.super_mode:
                    raise ParseError(
                        f"generator {name!r} is reserved; "
                        "not allowed in a scalar expression",
                        tok.pos,
                    )
                return (
                    SuperFunction.theta() if name == THETA else SuperFunction.thetabar()
                )
            if REGISTRY.lookup(name) is None:
                raise UnknownSymbol(f"unknown symbol {name!r}", tok.pos)
            return SuperFunction.scalar(ScalarExpr.symbol(name))
        raise ParseError(f"unexpected {tok.value!r}", tok.pos, _BASE_EXPECTED)

    def _divide(self, lhs: SuperFunction, rhs: SuperFunction) -> SuperFunction:
        if not self.super_mode:
            return SuperFunction.scalar(lhs.u1 / rhs.u1)
        return lhs / rhs


def parse_scalar(text: str) -> ScalarExpr:
    """Parse a scalar expression (generators rejected)."""
    return _Parser(text, super_mode=False).parse().u1


def parse_super(text: str) -> SuperFunction:
    """Parse a supernumber expression over theta, thetabar."""
    return _Parser(text, super_mode=True).parse()


# ---------------------------------------------------------------------------
# text printer
# ---------------------------------------------------------------------------


def _complex_inline(re: Fraction, im: Fraction) -> str:
    im_mag = abs(im)
    im_txt = "i" if im_mag == 1 else f"{im_mag}*i"
    joiner = " - " if im < 0 else " + "
    return f"{re}{joiner}{im_txt}"


def _term_text(mono, re: Fraction, im: Fraction) -> tuple[bool, str]:
    """One monomial as (is_negative, unsigned_text)."""
    factors: list[str] = []
    if im == 0:
        negative = re < 0
        mag = abs(re)
        if mag != 1 or not mono:
            factors.append(str(mag))
    elif re == 0:
        negative = im < 0
        mag = abs(im)
        if mag != 1:
            factors.append(str(mag))
        factors.append("i")
    else:
        negative = False
        factors.append(f"({_complex_inline(re, im)})")
    for label, exp in mono:
        factors.append(label if exp == 1 else f"{label}^{exp}")
    return negative, "*".join(factors)


def _poly_text(terms) -> str:
    parts: list[str] = []
    for mono, (re, im) in terms:
        negative, txt = _term_text(mono, re, im)
        if not parts:
            parts.append(f"-{txt}" if negative else txt)
        else:
            parts.append(f" - {txt}" if negative else f" + {txt}")
    return "".join(parts)


def _is_one_view(view) -> bool:
    return (
        len(view) == 1
        and view[0][0] == ()
        and view[0][1] == (Fraction(1), Fraction(0))
    )


def scalar_to_text(e: ScalarExpr) -> str:
    num_view, den_view = e.fraction_views()
    if not num_view:
        return "0"
    num_txt = _poly_text(num_view)
    if _is_one_view(den_view):
        return num_txt
    return f"({num_txt})/({_poly_text(den_view)})"


def _coef_part(coef: ScalarExpr, suffix: str) -> str:
    """Render coef*suffix so the result parses back to the same value."""
    txt = scalar_to_text(coef)
    if txt == "1":
        return suffix
    if txt == "-1":
        return f"-{suffix}"
    num_view, den_view = coef.fraction_views()
    plain = _is_one_view(den_view) and len(num_view) > 1
    if plain:
        return f"({txt})*{suffix}"
    return f"{txt}*{suffix}"


_SUFFIXES = (None, THETA, THETABAR, f"{THETABAR}*{THETA}")


def super_to_text(f: SuperFunction) -> str:
    parts: list[str] = []
    for coef, suffix in zip((f.u1, f.ut, f.utb, f.utbt), _SUFFIXES):
        if coef.is_zero:
            continue
        part = scalar_to_text(coef) if suffix is None else _coef_part(coef, suffix)
        if not parts:
            parts.append(part)
        elif part.startswith("-"):
            parts.append(f" - {part[1:]}")
        else:
            parts.append(f" + {part}")
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# TeX printer
# ---------------------------------------------------------------------------

_TEX_BASE = {
    "a": "a",
    "aB": "a_{B}",
    "aS": "a_{S}",
    "eps": "\\epsilon",
    "hbar": "\\hbar",
    "p": "p",
    "q": "q",
    "r": "r",
    "sigma1": "\\sigma_{1}",
    "phiQ": "\\varphi^{Q}",
    "gammath": "\\gamma_{\\theta}",
    "gammathb": "\\gamma_{\\bar{\\theta}}",
    "deltath": "\\delta_{\\theta}",
    "deltathb": "\\delta_{\\bar{\\theta}}",
    "alphath": "\\alpha_{\\theta}",
    "alphathb": "\\alpha_{\\bar{\\theta}}",
    "betath": "\\beta_{\\theta}",
    "betathb": "\\beta_{\\bar{\\theta}}",
}
for _k in ("b", "c", "d", "e"):
    _TEX_BASE[f"{_k}B"] = f"{_k}_{{B}}"
    _TEX_BASE[f"{_k}S"] = f"{_k}_{{S}}"
for _n in range(1, 6):
    _TEX_BASE[f"pi{_n}"] = f"\\pi_{{{_n}}}"
for _n in range(1, 8):
    _TEX_BASE[f"pi{_n}Q"] = f"\\pi^{{Q}}_{{{_n}}}"


def _label_tex(label: str) -> str:
    primes = len(label) - len(label.rstrip("'"))
    name = label[: len(label) - primes] if primes else label
    base = _TEX_BASE.get(name, f"\\mathrm{{{name}}}")
    return base + "'" * primes


def _frac_tex(fr: Fraction) -> str:
    if fr.denominator == 1:
        return str(fr.numerator)
    sign = "-" if fr < 0 else ""
    return f"{sign}\\frac{{{abs(fr.numerator)}}}{{{fr.denominator}}}"


def _term_tex(mono, re: Fraction, im: Fraction) -> tuple[bool, str]:
    factors: list[str] = []
    if im == 0:
        negative = re < 0
        mag = abs(re)
        if mag != 1 or not mono:
            factors.append(_frac_tex(mag))
    elif re == 0:
        negative = im < 0
        mag = abs(im)
        if mag != 1:
            factors.append(_frac_tex(mag))
        factors.append("i")
    else:
        negative = False
        im_mag = abs(im)
        im_txt = "i" if im_mag == 1 else f"{_frac_tex(im_mag)} i"
        joiner = " - " if im < 0 else " + "
        factors.append(f"\\left({_frac_tex(re)}{joiner}{im_txt}\\right)")
    for label, exp in mono:
        t = _label_tex(label)
        factors.append(t if exp == 1 else f"{t}^{{{exp}}}")
    return negative, " ".join(factors)


def _poly_tex(terms) -> str:
    parts: list[str] = []
    for mono, (re, im) in terms:
        negative, txt = _term_tex(mono, re, im)
        if not parts:
            parts.append(f"-{txt}" if negative else txt)
        else:
            parts.append(f" - {txt}" if negative else f" + {txt}")
    return "".join(parts)


def scalar_to_tex(e: ScalarExpr) -> str:
    num_view, den_view = e.fraction_views()
    if not num_view:
        return "0"
    num_txt = _poly_tex(num_view)
    if _is_one_view(den_view):
        return num_txt
    return f"\\frac{{{num_txt}}}{{{_poly_tex(den_view)}}}"


_TEX_SUFFIXES = (None, "\\theta", "\\bar{\\theta}", "\\bar{\\theta}\\theta")


def super_to_tex(f: SuperFunction) -> str:
    parts: list[str] = []
    for coef, suffix in zip((f.u1, f.ut, f.utb, f.utbt), _TEX_SUFFIXES):
        if coef.is_zero:
            continue
        if suffix is None:
            part = scalar_to_tex(coef)
        else:
            txt = scalar_to_tex(coef)
            if txt == "1":
                part = suffix
            elif txt == "-1":
                part = f"-{suffix}"
            else:
                num_view, den_view = coef.fraction_views()
                if _is_one_view(den_view) and len(num_view) > 1:
                    txt = f"\\left({txt}\\right)"
                part = f"{txt}\\,{suffix}"
        if not parts:
            parts.append(part)
        elif part.startswith("-"):
            parts.append(f" - {part[1:]}")
        else:
            parts.append(f" + {part}")
    return "".join(parts) if parts else "0"


def render_scalar(e: ScalarExpr, fmt: str = "text") -> str:
    if fmt == "text":
        return scalar_to_text(e)
    if fmt == "tex":
        return scalar_to_tex(e)
    raise ValueError(f"unknown format {fmt!r}")


def render_super(f: SuperFunction, fmt: str = "text") -> str:
    if fmt == "text":
        return super_to_text(f)
    if fmt == "tex":
        return super_to_tex(f)
    raise ValueError(f"unknown format {fmt!r}")
