"""Problem files: one problem per file, line-oriented.

    # comments and blank lines are skipped
    ring n=2 k=2 r=1
    shifts = [[0,0]]
    gen: x1 d1 + x2 d2
    target: x1^2 d1            (optional)
    cone = [[1,0],[0,1]]       (optional)
    weight = [1, 1/2]          (optional)
    ideal = W1, W2             (optional)
    s = [0, 0]                 (optional)
    degree_bound = 4           (optional)
    l_max = 8                  (optional)
    order = deg-revlex-pot     (optional; the only supported name)

Printing a parsed problem and reparsing yields an equal value."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SemanticError, SyntaxErrorWithPos
from .grammar import format_vec, parse_vec
from .weights import LinearForm, TermOrder
from .weyl import RingDescriptor, WeylVec

_RING = re.compile(r"ring\s+n\s*=\s*(\d+)\s+k\s*=\s*(\d+)\s+r\s*=\s*(\d+)\s*$")
_WMON = re.compile(r"W(\d+)(?:\^(\d+))?\s*", re.IGNORECASE)


@dataclass
class ProblemFile:
    ring: RingDescriptor
    generators: tuple
    target: WeylVec | None = None
    cone: tuple | None = None
    weight: LinearForm | None = None
    ideal: tuple | None = None  # monomial exponents in N^k
    s: tuple | None = None
    degree_bound: int | None = None
    l_max: int | None = None
    order_name: str | None = None

    def __eq__(self, other):
        if not isinstance(other, ProblemFile):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.generators == other.generators
            and self.target == other.target
            and self.cone == other.cone
            and self.weight == other.weight
            and self.ideal == other.ideal
            and self.s == other.s
            and self.degree_bound == other.degree_bound
            and self.l_max == other.l_max
            and self.order_name == other.order_name
        )


def _parse_int_matrix(text: str, line: int) -> tuple:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise SyntaxErrorWithPos("expected a bracketed list of rows", line, 1)
    inner = text[1:-1].strip()
    rows = []
    for chunk in re.findall(r"\[([^\]]*)\]", inner):
        row = []
        for piece in chunk.split(","):
            piece = piece.strip()
            if not re.fullmatch(r"-?\d+", piece):
                raise SyntaxErrorWithPos(f"bad integer {piece!r}", line, 1)
            row.append(int(piece))
        rows.append(tuple(row))
    if not rows:
        raise SyntaxErrorWithPos("empty matrix", line, 1)
    return tuple(rows)


def _parse_rational_vector(text: str, line: int) -> tuple:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise SyntaxErrorWithPos("expected a bracketed vector", line, 1)
    out = []
    for piece in text[1:-1].split(","):
        piece = piece.strip()
        if not re.fullmatch(r"-?\d+(/\d+)?", piece):
            raise SyntaxErrorWithPos(f"bad rational {piece!r}", line, 1)
        out.append(Fraction(piece))
    return tuple(out)


def parse_w_monomials(text: str, k: int) -> tuple:
    """Comma-separated W-monomials like ``W1^2, W2`` into exponents."""
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if chunk in ("1", ""):
            if chunk == "1":
                out.append((0,) * k)
            continue
        exp = [0] * k
        pos = 0
        while pos < len(chunk):
            m = _WMON.match(chunk, pos)
            if not m:
                raise SemanticError(f"bad W-monomial {chunk!r}")
            idx = int(m.group(1))
            if not 1 <= idx <= k:
                raise SemanticError(f"W{idx} out of range (k = {k})")
            exp[idx - 1] += int(m.group(2) or 1)
            pos = m.end()
        out.append(tuple(exp))
    if not out:
        raise SemanticError("empty ideal")
    return tuple(out)


def format_w_monomials(exps) -> str:
    def one(e):
        parts = [
            f"W{i + 1}" + (f"^{c}" if c > 1 else "") for i, c in enumerate(e) if c
        ]
        return " ".join(parts) if parts else "1"

    return ", ".join(one(e) for e in exps)


def parse_problem(text: str) -> ProblemFile:
    ring = None
    shifts = None
    gens: list[str] = []
    target_text = None
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("ring"):
            m = _RING.match(line)
            if not m:
                raise SyntaxErrorWithPos("bad ring line", lineno, 1)
            n, k, r = (int(g) for g in m.groups())
            if not 1 <= k <= n:
                raise SemanticError(f"need 1 <= k <= n, got k={k}, n={n}")
            if r < 1:
                raise SemanticError(f"need r >= 1, got r={r}")
            ring = (n, k, r)
            continue
        if line.startswith("gen:"):
            gens.append((line[4:].strip(), lineno))
            continue
        if line.startswith("target:"):
            target_text = (line[7:].strip(), lineno)
            continue
        if "=" in line:
            key, value = line.split("=", 1)
            key = key.strip()
            value = value.strip()
            if key in fields:
                raise SyntaxErrorWithPos(f"duplicate field {key!r}", lineno, 1)
            fields[key] = (value, lineno)
            continue
        raise SyntaxErrorWithPos(f"unrecognized line {line[:20]!r}", lineno, 1)
    if ring is None:
        raise SyntaxErrorWithPos("missing ring line", 1, 1)
    n, k, r = ring
    if "shifts" in fields:
        shifts = _parse_int_matrix(*fields.pop("shifts"))
        if len(shifts) != r or any(len(col) != k for col in shifts):
            raise SemanticError(
                f"shifts must be {r} rows of length {k}, got {list(map(list, shifts))}"
            )
    ring_desc = RingDescriptor(n, k, r, shifts)
    generators = []
    for gtext, lineno in gens:
        try:
            g = parse_vec(gtext, ring_desc)
        except SyntaxErrorWithPos as exc:
            raise SyntaxErrorWithPos(exc.message, lineno, exc.column)
        if g.is_zero():
            raise SemanticError(f"zero generator at line {lineno}")
        generators.append(g)
    if not generators:
        raise SemanticError("problem has no generators")
    target = None
    if target_text is not None:
        target = parse_vec(target_text[0], ring_desc)
    out = ProblemFile(ring_desc, tuple(generators), target)
    if "cone" in fields:
        out.cone = _parse_int_matrix(*fields.pop("cone"))
        if any(len(row) != k for row in out.cone):
            raise SemanticError(f"cone rows must have length {k}")
    if "weight" in fields:
        vec = _parse_rational_vector(*fields.pop("weight"))
        if len(vec) != k:
            raise SemanticError(f"weight must have length {k}")
        out.weight = LinearForm(vec)
    if "ideal" in fields:
        out.ideal = parse_w_monomials(fields.pop("ideal")[0], k)
    if "s" in fields:
        vec = _parse_rational_vector(*fields.pop("s"))
        if len(vec) != k or any(v.denominator != 1 for v in vec):
            raise SemanticError(f"s must be an integer vector of length {k}")
        out.s = tuple(int(v) for v in vec)
    if "degree_bound" in fields:
        out.degree_bound = int(fields.pop("degree_bound")[0])
    if "l_max" in fields:
        out.l_max = int(fields.pop("l_max")[0])
    if "order" in fields:
        name = fields.pop("order")[0]
        if name != TermOrder.NAME:
            raise SemanticError(f"unsupported order {name!r}")
        out.order_name = name
    if fields:
        key, (_, lineno) = sorted(fields.items())[0]
        raise SyntaxErrorWithPos(f"unknown field {key!r}", lineno, 1)
    return out


def format_problem(p: ProblemFile) -> str:
    lines = [f"ring n={p.ring.n} k={p.ring.k} r={p.ring.r}"]
    lines.append(
        "shifts = [" + ", ".join("[" + ", ".join(map(str, col)) + "]" for col in p.ring.shifts) + "]"
    )
    if p.order_name:
        lines.append(f"order = {p.order_name}")
    for g in p.generators:
        lines.append(f"gen: {format_vec(g)}")
    if p.target is not None:
        lines.append(f"target: {format_vec(p.target)}")
    if p.cone is not None:
        lines.append(
            "cone = [" + ", ".join("[" + ", ".join(map(str, row)) + "]" for row in p.cone) + "]"
        )
    if p.weight is not None:
        lines.append("weight = [" + ", ".join(str(c) for c in p.weight.coeffs) + "]")
    if p.ideal is not None:
        lines.append(f"ideal = {format_w_monomials(p.ideal)}")
    if p.s is not None:
        lines.append("s = [" + ", ".join(map(str, p.s)) + "]")
    if p.degree_bound is not None:
        lines.append(f"degree_bound = {p.degree_bound}")
    if p.l_max is not None:
        lines.append(f"l_max = {p.l_max}")
    return "\n".join(lines) + "\n"


@dataclass
class SyzygyFile:
    n: int
    k: int
    a: tuple
    q_texts: tuple


_SYZ = re.compile(r"syzygy\s+n\s*=\s*(\d+)\s+k\s*=\s*(\d+)\s*$")


def parse_syzygy(text: str) -> SyzygyFile:
    header = None
    a = None
    qs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("syzygy"):
            m = _SYZ.match(line)
            if not m:
                raise SyntaxErrorWithPos("bad syzygy header", lineno, 1)
            header = (int(m.group(1)), int(m.group(2)))
            continue
        if line.startswith("a"):
            _, value = line.split("=", 1)
            a = _parse_int_matrix(value, lineno)
            continue
        if line.startswith("q:"):
            qs.append(line[2:].strip())
            continue
        raise SyntaxErrorWithPos(f"unrecognized line {line[:20]!r}", lineno, 1)
    if header is None or a is None or not qs:
        raise SemanticError("syzygy file needs a header, exponents and q: lines")
    n, k = header
    if any(len(row) != k for row in a):
        raise SemanticError(f"exponent rows must have length {k}")
    if any(any(c < 0 for c in row) for row in a):
        raise SemanticError("exponents must be nonnegative")
    if len(a) != len(qs):
        raise SemanticError("need as many q: lines as exponent rows")
    return SyzygyFile(n, k, tuple(a), tuple(qs))
