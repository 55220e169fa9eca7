"""Round-trippable text grammar for polynomials and rational functions.

Grammar (used by all CLI input/output):

    ratfunc  := sum | sum "/" sum | "(" sum ")" "/" "(" sum ")"
    sum      := term (("+"|"-") term)*
    term     := factor ("*" factor)*
    factor   := INT | VAR ("^" INT)? | "(" sum ")"
    VAR      := t | t1 | t2 | ... | u1 | s | named generators

Example rendering: "(t^2+1)/(t^3+t)".
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .multipoly import MPoly
from .poly import Poly, render_poly
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(\d+|[a-zA-Z_][a-zA-Z_0-9]*|\^|\*|\+|-|/|\(|\))")


def tokenize(s: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            if s[pos:].strip():
                raise ParseError(f"bad token at {s[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent parser producing {var-name exponent dict: coeff} terms."""

    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def parse_sum(self) -> dict:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = _term_scale(self.parse_term(), sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            acc = _term_add(acc, _term_scale(self.parse_term(), sign))
        return acc

    def parse_term(self) -> dict:
        acc = self.parse_factor()
        while self.peek() == "*":
            self.take()
            acc = _term_mul(acc, self.parse_factor())
        return acc

    def parse_factor(self) -> dict:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok == "(":
            self.take()
            inner = self.parse_sum()
            self.take(")")
            return self._maybe_pow(inner)
        if tok.isdigit():
            self.take()
            return {(): int(tok)}
        self.take()
        exp = 1
        if self.peek() == "^":
            self.take()
            exp = int(self.take())
        return {((tok, exp),): 1}

    def _maybe_pow(self, base: dict) -> dict:
        if self.peek() == "^":
            self.take()
            n = int(self.take())
            acc = {(): 1}
            for _ in range(n):
                acc = _term_mul(acc, base)
            return acc
        return base


def _term_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return out


def _term_scale(a: dict, c: int) -> dict:
    return {k: v * c for k, v in a.items()}


def _term_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            merged: dict = {}
            for name, e in ka + kb:
                merged[name] = merged.get(name, 0) + e
            key = tuple(sorted(merged.items()))
            out[key] = out.get(key, 0) + va * vb
    return out


def _parse_terms(s: str) -> dict:
    parser = _Parser(tokenize(s))
    acc = parser.parse_sum()
    if parser.peek() is not None:
        raise ParseError(f"trailing input at {parser.toks[parser.i:]}")
    return acc


def parse_poly(s: str, p: int) -> Poly:
    """Parse a univariate polynomial in t."""
    terms = _parse_terms(s)
    cs: dict[int, int] = {}
    for key, c in terms.items():
        deg = 0
        for name, e in key:
            if name != "t":
                raise ParseError(f"unexpected variable {name!r} in univariate polynomial")
            deg += e
        cs[deg] = cs.get(deg, 0) + c
    out = [0] * (max(cs, default=0) + 1)
    for deg, c in cs.items():
        out[deg] = c % p
    return Poly(out, p)


def parse_ratfunc(s: str, p: int) -> RatFunc:
    s = s.strip()
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return RatFunc(parse_poly(s[:i], p), parse_poly(s[i + 1:], p))
    return RatFunc.from_poly(parse_poly(s, p))


def parse_mpoly(s: str, p: int, m: int) -> MPoly:
    """Parse a polynomial in t (m = 1) or t1..tm."""
    terms = _parse_terms(s)
    out: dict[tuple, int] = {}
    for key, c in terms.items():
        e = [0] * m
        for name, exp in key:
            if m == 1 and name == "t":
                j = 0
            elif name.startswith("t") and name[1:].isdigit():
                j = int(name[1:]) - 1
            else:
                raise ParseError(f"unexpected variable {name!r}")
            if not (0 <= j < m):
                raise ParseError(f"variable {name!r} out of range for {m} variables")
            e[j] += exp
        et = tuple(e)
        out[et] = out.get(et, 0) + c
    return MPoly(out, p, m)


def render_ratfunc(f: RatFunc, var: str = "t") -> str:
    num = render_poly(f.num, var)
    if f.den.is_one():
        return num
    den = render_poly(f.den, var)
    num_s = num if "+" not in num and "-" not in num else f"({num})"
    den_s = den if "+" not in den and "-" not in den and "*" not in den else f"({den})"
    return f"{num_s}/{den_s}"
