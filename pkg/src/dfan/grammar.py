"""ASCII operator grammar.

    term    = [rational] factors
    factors = { x<i>[^<e>] | d<i>[^<e>] | t[^<e>] | e<i> }
    sum     = term { (+|-) term }

Examples: ``3/2 x1^2 d1 e1 - d2 e1``, ``x1 d1 + x2 d2``.  Component
markers ``e<i>`` are required for vectors and forbidden for scalars; ``t``
factors are only legal in D[t].  Formatting is deterministic and
``parse(format(v)) == v`` holds bit-exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import SemanticError, SyntaxErrorWithPos
from .weyl import DtOp, DtVec, RingDescriptor, WeylOp, WeylVec

_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+(?:/\d+)?)|(?P<fac>[xdet]\d*(?:\^\d+)?)|(?P<sign>[+-]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.lastgroup is None:
            break
        out.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    if text[pos:].strip():
        raise SyntaxErrorWithPos(
            f"unexpected input {text[pos:].strip()[:10]!r}", 1, pos + 1
        )
    return out


def _parse_factor(tok: str, pos: int):
    head = tok[0]
    body = tok[1:]
    exp = 1
    if "^" in body:
        body, etxt = body.split("^", 1)
        exp = int(etxt)
    if head == "t":
        if body:
            raise SyntaxErrorWithPos(f"bad factor {tok!r}", 1, pos + 1)
        return ("t", 0, exp)
    if not body:
        raise SyntaxErrorWithPos(f"missing index in factor {tok!r}", 1, pos + 1)
    return (head, int(body), exp)


def parse_terms(text: str, ring: RingDescriptor, *, vector: bool, dt: bool):
    """Parse into a list of (alpha, beta, l, comp, coef) tuples."""
    toks = _tokenize(text)
    if not toks:
        raise SyntaxErrorWithPos("empty operator", 1, 1)
    terms = []
    i = 0
    first = True
    while i < len(toks):
        sign = 1
        kind, val, pos = toks[i]
        if kind == "sign":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise SyntaxErrorWithPos("expected + or - between terms", 1, pos + 1)
        first = False
        coef = Fraction(sign)
        saw_rat = False
        if i < len(toks) and toks[i][0] == "rat":
            coef = sign * Fraction(toks[i][1])
            saw_rat = True
            i += 1
        alpha = [0] * ring.n
        beta = [0] * ring.n
        l = 0
        comp = None
        saw_factor = False
        while i < len(toks) and toks[i][0] == "fac":
            saw_factor = True
            head, idx, exp = _parse_factor(toks[i][1], toks[i][2])
            if head in ("x", "d"):
                if not (1 <= idx <= ring.n):
                    raise SemanticError(f"{head}{idx} out of range (n = {ring.n})")
                (alpha if head == "x" else beta)[idx - 1] += exp
            elif head == "t":
                if not dt:
                    raise SemanticError("t factor outside D[t]")
                l += exp
            else:  # component marker
                if not vector:
                    raise SemanticError("component marker e<i> in a scalar")
                if not (1 <= idx <= ring.r):
                    raise SemanticError(f"e{idx} out of range (r = {ring.r})")
                if comp is not None and comp != idx - 1:
                    raise SemanticError("two component markers in one term")
                if exp != 1:
                    raise SemanticError("component marker cannot carry an exponent")
                comp = idx - 1
            i += 1
        if not saw_rat and not saw_factor:
            raise SyntaxErrorWithPos("empty term", 1, pos + 1)
        if vector:
            if comp is None:
                if ring.r == 1:
                    comp = 0
                else:
                    raise SemanticError("vector term without component marker")
        else:
            comp = 0
        terms.append((tuple(alpha), tuple(beta), l, comp, coef))
    return terms


def parse_op(text: str, ring: RingDescriptor) -> WeylOp:
    terms = parse_terms(text, ring, vector=False, dt=False)
    return WeylOp(ring, (((a, b), c) for a, b, _, _, c in terms))


def parse_dt_op(text: str, ring: RingDescriptor) -> DtOp:
    terms = parse_terms(text, ring, vector=False, dt=True)
    return DtOp(ring, (((a, b, l), c) for a, b, l, _, c in terms))


def _build_vec(cls, scalar, ring, terms, dt):
    buckets = [[] for _ in range(ring.r)]
    for a, b, l, comp, c in terms:
        key = (a, b, l) if dt else (a, b)
        buckets[comp].append((key, c))
    return cls(ring, tuple(scalar(ring, bucket) for bucket in buckets))


def parse_vec(text: str, ring: RingDescriptor) -> WeylVec:
    terms = parse_terms(text, ring, vector=True, dt=False)
    return _build_vec(WeylVec, WeylOp, ring, terms, False)


def parse_dt_vec(text: str, ring: RingDescriptor) -> DtVec:
    terms = parse_terms(text, ring, vector=True, dt=True)
    return _build_vec(DtVec, DtOp, ring, terms, True)


def _display_key(key):
    # descending total degree, then reverse-lexicographic on (beta, alpha, t);
    # stable, so leading-ish terms print first
    if len(key) == 3:
        a, b, l = key
    else:
        (a, b), l = key, 0
    return (-(sum(a) + sum(b) + l), tuple(-e for e in b), tuple(-e for e in a), -l)


def _format_term(key, coef: Fraction, comp: int | None) -> str:
    if len(key) == 3:
        a, b, l = key
    else:
        (a, b), l = key, 0
    factors = []
    for i, e in enumerate(a):
        if e:
            factors.append(f"x{i + 1}" + (f"^{e}" if e > 1 else ""))
    for i, e in enumerate(b):
        if e:
            factors.append(f"d{i + 1}" + (f"^{e}" if e > 1 else ""))
    if l:
        factors.append("t" + (f"^{l}" if l > 1 else ""))
    has_var = bool(factors)
    if comp is not None:
        factors.append(f"e{comp + 1}")
    mag = abs(coef)
    parts = []
    if mag != 1 or not factors:
        parts.append(str(mag))
    elif not has_var and comp is None:
        parts.append(str(mag))
    parts.extend(factors)
    return " ".join(parts)


def _format_terms(items) -> str:
    # items: list of (key, comp_or_None, coef) already sorted
    if not items:
        return "0"
    chunks = []
    for idx, (key, comp, coef) in enumerate(items):
        body = _format_term(key, coef, comp)
        if idx == 0:
            chunks.append(("-" if coef < 0 else "") + body)
        else:
            chunks.append(("- " if coef < 0 else "+ ") + body)
    return " ".join(chunks)


def format_op(P) -> str:
    """Render a scalar WeylOp or DtOp."""
    items = sorted(P.terms.items(), key=lambda kv: _display_key(kv[0]))
    return _format_terms([(key, None, coef) for key, coef in items])


def format_vec(V) -> str:
    """Render a WeylVec or DtVec, component-major."""
    items = []
    for i, comp in enumerate(V.components):
        for key in sorted(comp.terms, key=_display_key):
            items.append((key, i, comp.terms[key]))
    return _format_terms(items)
