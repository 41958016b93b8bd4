"""Parser and printer for the polynomial input grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

The identifier ``p`` is the prime unless it is declared as a variable.
Results are exact integer polynomials: dicts from exponent tuples to ints.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ExprError(ValueError):
    def __init__(self, msg, text, col):
        super().__init__(f"{msg} at column {col + 1}: {text!r}")
        self.col = col + 1
        self.text = text


def _tokens(text):
    out = []
    pos = 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt.group(0).strip() == "":
            break
        num, ident, op = mt.groups()
        start = mt.start(1) if num else mt.start(2) if ident else mt.start(3)
        if num:
            out.append(("int", int(num), start))
        elif ident:
            out.append(("id", ident, start))
        elif op in "+-*^()":
            out.append(("op", op, start))
        else:
            raise ExprError(f"unexpected character {op!r}", text, start)
        pos = mt.end()
    out.append(("end", None, len(text)))
    return out


def _padd(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _pmul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def parse_poly(text: str, variables, p: int) -> dict:
    variables = list(variables)
    nv = len(variables)
    zero_exp = (0,) * nv
    toks = _tokens(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def const(c):
        return {zero_exp: c} if c else {}

    def expr():
        sign = 1
        if peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
        acc = _padd({}, term(), sign)
        while peek()[:2] in (("op", "+"), ("op", "-")):
            s = -1 if take()[1] == "-" else 1
            acc = _padd(acc, term(), s)
        return acc

    def term():
        acc = factor()
        while peek()[:2] == ("op", "*"):
            take()
            acc = _pmul(acc, factor())
        return acc

    def factor():
        base = atom()
        if peek()[:2] == ("op", "^"):
            take()
            kind, val, col = take()
            if kind != "int":
                raise ExprError("exponent must be a non-negative integer", text, col)
            out = const(1)
            for _ in range(val):
                out = _pmul(out, base)
            return out
        return base

    def atom():
        kind, val, col = take()
        if kind == "int":
            return const(val)
        if kind == "id":
            if val in variables:
                e = [0] * nv
                e[variables.index(val)] = 1
                return {tuple(e): 1}
            if val == "p":
                return const(p)
            raise ExprError(f"unknown identifier {val!r}", text, col)
        if (kind, val) == ("op", "("):
            inner = expr()
            k2, v2, c2 = take()
            if (k2, v2) != ("op", ")"):
                raise ExprError("expected ')'", text, c2)
            return inner
        raise ExprError("unexpected end of input" if kind == "end" else f"unexpected {val!r}", text, col)

    result = expr()
    kind, val, col = peek()
    if kind != "end":
        raise ExprError(f"unexpected {val!r}", text, col)
    return result


def _monomial(exp, variables):
    parts = []
    for v, e in zip(variables, exp):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(terms: dict, variables) -> str:
    """Inverse of ``parse_poly``: graded-lex order, integer coefficients."""
    if not terms:
        return "0"
    keys = sorted(terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    out = []
    for k in keys:
        c = terms[k]
        mono = _monomial(k, variables)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)
