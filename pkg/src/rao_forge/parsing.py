"""Reader for the plain-text ideal format: one generator per line."""

import re

from .algebra import Polynomial, RingConfig, AlgebraError

_TOKEN = re.compile(r"\s*(?:(\d+)|(x[0-3])|(\^)|(\*)|(\+)|(-)|(\S))")


class ParseError(ValueError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _tokens(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, var, caret, star, plus, minus, bad = m.groups()
        if bad:
            raise ParseError(f"unexpected character {bad!r}")
        if num:
            out.append(("num", int(num)))
        elif var:
            out.append(("var", int(var[1])))
        elif caret:
            out.append(("^", None))
        elif star:
            out.append(("*", None))
        elif plus:
            out.append(("+", None))
        elif minus:
            out.append(("-", None))
        pos = m.end()
    return out


def parse_polynomial(text, cfg=None):
    cfg = cfg or RingConfig()
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty polynomial")
    terms = {}
    i = 0
    n = len(toks)
    expect_term = True
    while i < n:
        sign = 1
        while i < n and toks[i][0] in "+-":
            if toks[i][0] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign")
        coef = 1
        exps = [0, 0, 0, 0]
        need_factor = True
        while i < n and need_factor:
            kind, val = toks[i]
            if kind == "num":
                coef *= val
                i += 1
            elif kind == "var":
                e = 1
                i += 1
                if i < n and toks[i][0] == "^":
                    if i + 1 >= n or toks[i + 1][0] != "num":
                        raise ParseError("exponent must be a nonnegative integer")
                    e = toks[i + 1][1]
                    i += 2
                exps[val] += e
            else:
                raise ParseError(f"unexpected {kind!r}")
            if i < n and toks[i][0] == "*":
                i += 1
            else:
                need_factor = False
        if need_factor:
            raise ParseError("dangling '*'")
        m = tuple(exps)
        terms[m] = terms.get(m, 0) + sign * coef
        expect_term = False
        if i < n and toks[i][0] not in "+-":
            raise ParseError(f"expected '+' or '-', got {toks[i][0]!r}")
    if expect_term:
        raise ParseError("empty polynomial")
    try:
        return Polynomial(terms, cfg)
    except AlgebraError as exc:
        raise ParseError(str(exc)) from exc


def parse_ideal(text, cfg=None):
    """Parse generators; '#' starts a comment, blank lines are skipped."""
    cfg = cfg or RingConfig()
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            f = parse_polynomial(line, cfg)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
        if f.is_zero():
            raise ParseError("generator reduces to zero", lineno)
        if not f.is_homogeneous():
            raise ParseError("generator is not homogeneous", lineno)
        gens.append(f)
    if not gens:
        raise ParseError("no generators found")
    return gens
