"""Text formats: polynomials, system files, matrix files, rational points.

Polynomial grammar (whitespace is insignificant, ``*`` is mandatory)::

    poly     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | variable | '(' poly ')'
    rational := int ['/' uint]

A system file starts with ``vars x1 x2 ... xn`` followed by one line
``fi = <poly>`` per component, in order.  A matrix file holds rows of
whitespace-separated rationals.  In both, ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Sequence

from .errors import ArityMismatch, ParseError, UnknownVariable
from .poly import Polynomial, PolySystem, RingContext, pow_

# Guard against inputs like "(x1+x2+x3)^99999" whose expansion would not fit
# in memory; the bound is on the worst-case number of expanded terms.
MAX_EXPANDED_TERMS = 200_000
MAX_EXPONENT = 10_000

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op" or "eof"
    text: str
    line: int
    column: int


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


def tokenize(text: str, line: int = 1, column: int = 1) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(Token(kind, chunk, line, column))
        nl = chunk.count("\n")
        if nl:
            line += nl
            column = len(chunk) - chunk.rfind("\n")
        else:
            column += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, column))
    return tokens


class _Parser:
    def __init__(self, tokens: list, ring: RingContext, allowed: set | None):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring
        self.allowed = allowed

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _fail(self, expected) -> None:
        tok = self.tok
        raise ParseError(
            f"unexpected {_describe(tok)}", tok.line, tok.column, expected
        )

    def _is_op(self, *ops) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Polynomial:
        p = self.poly()
        if self.tok.kind != "eof":
            self._fail({"'+'", "'-'", "'*'", "'^'", "end of input"})
        return p

    def poly(self) -> Polynomial:
        negate = False
        if self._is_op("-"):
            self._advance()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self._is_op("+", "-"):
            op = self._advance().text
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self._is_op("*"):
            self._advance()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.base()
        if self._is_op("^"):
            self._advance()
            tok = self.tok
            if tok.kind != "int":
                self._fail({"unsigned integer"})
            self._advance()
            e = int(tok.text)
            if e > MAX_EXPONENT or _expansion_bound(base, e) > MAX_EXPANDED_TERMS:
                raise ParseError("power too large to expand", tok.line, tok.column)
            base = pow_(base, e)
        return base

    def base(self) -> Polynomial:
        tok = self.tok
        if tok.kind == "int":
            self._advance()
            value = Fraction(int(tok.text))
            if self._is_op("/"):
                self._advance()
                dtok = self.tok
                if dtok.kind != "int":
                    self._fail({"unsigned integer"})
                self._advance()
                d = int(dtok.text)
                if d == 0:
                    raise ParseError("zero denominator", dtok.line, dtok.column)
                value /= d
            return Polynomial.constant(self.ring, value)
        if tok.kind == "ident":
            self._advance()
            if self.allowed is not None and tok.text not in self.allowed:
                raise UnknownVariable(tok.text, tok.line, tok.column)
            try:
                return Polynomial.variable(self.ring, tok.text)
            except KeyError:
                raise UnknownVariable(tok.text, tok.line, tok.column) from None
        if self._is_op("("):
            self._advance()
            inner = self.poly()
            if not self._is_op(")"):
                self._fail({"')'", "'+'", "'-'", "'*'", "'^'"})
            self._advance()
            return inner
        self._fail({"integer", "variable", "'('"})


def _expansion_bound(p: Polynomial, e: int) -> int:
    if len(p) <= 1 or e <= 1:
        return len(p)
    v = len(p.support())
    return comb(p.total_degree() * e + v, v)


def parse_polynomial(
    text: str,
    ring: RingContext,
    *,
    allowed: Sequence[str] | None = None,
    line: int = 1,
    column: int = 1,
) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``.

    ``allowed`` optionally restricts which variable names may appear; other
    names of the ring are then reported as unknown.
    """
    tokens = tokenize(text, line, column)
    return _Parser(tokens, ring, set(allowed) if allowed is not None else None).parse()


# Rendering -------------------------------------------------------------------


def render_rational(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_monomial(m, ring: RingContext) -> str:
    parts = []
    for name, e in zip(ring.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def render_polynomial(p: Polynomial) -> str:
    """Canonical text: descending degrevlex, ``*`` between factors."""
    if p.is_zero():
        return "0"
    pieces = []
    for i, (m, c) in enumerate(p.items()):
        c = Fraction(c)
        neg = c < 0
        a = -c if neg else c
        mono = render_monomial(m, p.ring) if any(m) else ""
        if not mono:
            body = render_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{render_rational(a)}*{mono}"
        if i == 0:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


# Files -------------------------------------------------------------------------


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _read(source) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    return source


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_LABEL = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=")


def parse_system_file(source) -> PolySystem:
    """Parse a system file given as text or a :class:`pathlib.Path`."""
    text = _read(source)
    lines = text.splitlines()
    declared = None
    bodies = []
    for lineno, raw in enumerate(lines, start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if declared is None:
            words = line.split()
            if words[0] != "vars":
                col = raw.find(words[0]) + 1
                raise ParseError("system file must start with a 'vars' line", lineno, col, {"'vars'"})
            names = words[1:]
            if not names:
                raise ParseError("'vars' declares no variables", lineno, len(line.rstrip()) + 1, {"variable name"})
            for name in names:
                if not _IDENT.match(name):
                    raise ParseError(f"invalid variable name {name!r}", lineno, raw.find(name) + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", lineno, 1)
            y_block = {f"y{i}" for i in range(1, len(names) + 1)}
            clash = [v for v in names if v in y_block]
            if clash:
                raise ParseError(
                    f"{clash[0]!r} is reserved for the internal y-block",
                    lineno,
                    raw.find(clash[0]) + 1,
                )
            declared = names
            continue
        m = _LABEL.match(line)
        if m is None:
            raise ParseError("expected 'fi = <poly>'", lineno, 1, {"label"})
        label = m.group(1)
        expected = f"f{len(bodies) + 1}"
        if label != expected:
            raise ParseError(
                f"expected label {expected!r}, found {label!r}", lineno, m.start(1) + 1, {repr(expected)}
            )
        bodies.append((lineno, m.end(), line[m.end():]))
    if declared is None:
        raise ParseError("empty system file", 1, 1, {"'vars'"})
    if len(bodies) != len(declared):
        raise ArityMismatch(
            f"{len(declared)} variables declared but {len(bodies)} polynomials given",
            len(lines) or 1,
            1,
        )
    ring = RingContext.with_x_names(declared)
    polys = [
        parse_polynomial(body, ring, allowed=declared, line=lineno, column=col + 1)
        for lineno, col, body in bodies
    ]
    return PolySystem(ring, tuple(polys))


def render_system(f: PolySystem) -> str:
    lines = ["vars " + " ".join(f.ring.x_names)]
    for i, p in enumerate(f.polys, start=1):
        lines.append(f"f{i} = {render_polynomial(p)}")
    return "\n".join(lines) + "\n"


def parse_rational(text: str, line: int = 1, column: int = 1) -> Fraction:
    """Parse ``[-]int[/uint]``."""
    m = re.fullmatch(r"\s*([+-]?[0-9]+)(?:/([0-9]+))?\s*", text)
    if m is None:
        raise ParseError(f"invalid rational {text!r}", line, column, {"rational"})
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator", line, column)
    return Fraction(num, den)


def parse_matrix_file(source) -> tuple:
    """Parse a square matrix of rationals; returns a tuple of row tuples."""
    text = _read(source)
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        row = []
        for m in re.finditer(r"\S+", line):
            row.append(parse_rational(m.group(), lineno, m.start() + 1))
        if row:
            if rows and len(row) != len(rows[0]):
                raise ParseError("matrix rows have different lengths", lineno, 1)
            rows.append(tuple(row))
    if not rows:
        raise ParseError("empty matrix file", 1, 1, {"rational"})
    if len(rows) != len(rows[0]):
        raise ParseError(f"matrix is {len(rows)}x{len(rows[0])}, not square", len(rows), 1)
    return tuple(rows)


def render_matrix(A) -> str:
    return "\n".join(" ".join(render_rational(v) for v in row) for row in A) + "\n"


def parse_point(text: str, n: int | None = None) -> tuple:
    """Parse ``"1,-2,3/4"`` into a tuple of Fractions."""
    parts = text.split(",")
    coords = []
    col = 1
    for part in parts:
        coords.append(parse_rational(part, 1, col))
        col += len(part) + 1
    if n is not None and len(coords) != n:
        raise ParseError(f"point has {len(coords)} coordinates, expected {n}", 1, 1)
    return tuple(coords)


def render_point(q) -> str:
    return ",".join(render_rational(c) for c in q)
