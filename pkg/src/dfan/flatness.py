"""Constructive flatness machinery: monomial ideals of the toric
coordinate ring, the coordinate-colon filtration chain, the syzygy
normalization behind flatness of the Rees ring over the W-polynomials,
and the flat-decomposition certifier that splits a filtered module
element into cone-shifted module pieces.

The certifier follows the proof pipeline: homogenize and divide by a
simultaneous standard basis, peel the top stratum of the first ray form,
split the stratum quotients along the Newton-diagram regions of the
remaining ideal coordinates, and close with the complementary piece.  All
claimed invariants (sum, filtration membership, module membership) are
machine-checked before a certificate is returned, and certificates replay
bit-identically from their recorded inputs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ._linalg import nullspace, reduce_against, rref
from .basis import StandardBasis, _mul_scalar_vec
from .errors import (
    CertificateError,
    ConeError,
    DfanError,
    SemanticError,
    ZeroInputError,
)
from .filtration import in_V_gamma, multi_weight
from .grammar import format_op, format_vec
from .toric import BasicCone, _det, _inverse_unimodular
from .weights import LinearForm, ord_L_vec, symbol_L
from .weyl import (
    DtOp,
    DtVec,
    WeylOp,
    WeylVec,
    dehomogenize,
    homogenize_vec,
    t_power_times,
)

# ---------------------------------------------------------------------------
# monomial ideals of Q[W]


class MonomialIdeal:
    """Monomial ideal of Q[W_1..W_k], kept as its minimal generators."""

    __slots__ = ("k", "gens")

    def __init__(self, k: int, exponents):
        self.k = k
        gens = []
        for e in sorted(tuple(int(c) for c in e) for e in exponents):
            if len(e) != k or any(c < 0 for c in e):
                raise SemanticError(f"bad monomial exponent {e}")
            if not any(all(x >= y for x, y in zip(e, g)) for g in gens):
                gens = [g for g in gens if not all(x >= y for x, y in zip(g, e))]
                gens.append(e)
        self.gens = tuple(sorted(gens))

    def contains(self, e) -> bool:
        return any(all(x >= y for x, y in zip(e, g)) for g in self.gens)

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.k,)

    def is_zero(self) -> bool:
        return not self.gens

    def colon(self, m) -> "MonomialIdeal":
        """(H : W^m) by componentwise exponent arithmetic."""
        return MonomialIdeal(
            self.k,
            (tuple(max(g[i] - m[i], 0) for i in range(self.k)) for g in self.gens),
        )

    def plus_monomial(self, m) -> "MonomialIdeal":
        return MonomialIdeal(self.k, self.gens + (tuple(m),))

    def coordinate_set(self):
        """The subset J when this is a coordinate ideal W_J, else None.
        The zero ideal is the empty coordinate ideal."""
        js = []
        for g in self.gens:
            if sum(g) != 1:
                return None
            js.append(g.index(1) + 1)
        return tuple(sorted(js))

    def graded_dimension(self, d: int) -> int:
        """Number of degree-d monomials inside the ideal."""
        from itertools import product

        count = 0
        for e in product(range(d + 1), repeat=self.k):
            if sum(e) == d and self.contains(e):
                count += 1
        return count

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.k == other.k
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.k, self.gens))

    def __repr__(self):
        return f"MonomialIdeal(k={self.k}, gens={list(self.gens)})"

    def format(self) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(_format_w_monomial(g) for g in self.gens) + ")"


def _format_w_monomial(e) -> str:
    parts = [
        f"W{i + 1}" + (f"^{c}" if c > 1 else "")
        for i, c in enumerate(e)
        if c
    ]
    return " ".join(parts) if parts else "1"


def coordinate_ideal(k: int, J) -> MonomialIdeal:
    return MonomialIdeal(
        k, (tuple(1 if i == j - 1 else 0 for i in range(k)) for j in J)
    )


@dataclass(frozen=True)
class ChainStep:
    monomial: tuple
    J: tuple
    colon: MonomialIdeal


@dataclass
class FiltrationChain:
    """H = H_0 < H_1 < ... < H_len = (1) with coordinate colon quotients."""

    start: MonomialIdeal
    steps: tuple

    def ideals(self):
        out = [self.start]
        h = self.start
        for st in self.steps:
            h = h.plus_monomial(st.monomial)
            out.append(h)
        return out

    def verify(self) -> None:
        h = self.start
        for st in self.steps:
            if h.contains(st.monomial):
                raise DfanError("chain monomial already in the ideal")
            colon = h.colon(st.monomial)
            if colon != st.colon:
                raise DfanError("recorded colon certificate mismatch")
            if colon.coordinate_set() != st.J:
                raise DfanError("colon is not the recorded coordinate ideal")
            h = h.plus_monomial(st.monomial)
        if not h.is_unit():
            raise DfanError("chain does not reach the unit ideal")


def monomial_filtration(H: MonomialIdeal) -> FiltrationChain:
    """Greedy chain construction: at each step pick the first monomial
    outside the ideal (by total degree, then lex, inside the componentwise
    generator-degree box) whose colon is a coordinate ideal.  Capping at
    the box loses nothing: colons are constant beyond it."""
    if H.is_unit():
        return FiltrationChain(H, ())
    steps = []
    h = H
    from itertools import product

    guard = 0
    while not h.is_unit():
        guard += 1
        if guard > 10_000:
            raise DfanError("runaway filtration chain")
        box = tuple(
            max((g[i] for g in h.gens), default=0) for i in range(h.k)
        )
        candidates = sorted(
            (e for e in product(*(range(b + 1) for b in box))),
            key=lambda e: (sum(e), e),
        )
        for m in candidates:
            if h.contains(m):
                continue
            colon = h.colon(m)
            J = colon.coordinate_set()
            if J is not None:
                steps.append(ChainStep(m, J, colon))
                h = h.plus_monomial(m)
                break
        else:
            raise DfanError("no socle-style monomial found (unexpected)")
    chain = FiltrationChain(H, tuple(steps))
    chain.verify()
    return chain


def offsets(a_i, a_p):
    """Minimal (v, w) in N^k with a_i + v = a_p + w, componentwise."""
    v = tuple(max(p - i, 0) for i, p in zip(a_i, a_p))
    w = tuple(max(i - p, 0) for i, p in zip(a_i, a_p))
    return v, w


# ---------------------------------------------------------------------------
# operators in the (X, Delta, W) coordinates of a cone context


class WOp:
    """Finite sum of terms X^alpha Delta^beta W^ell with ell in N^k; only
    the W-monomial action is needed here (W is central)."""

    __slots__ = ("n", "k", "terms")

    def __init__(self, n: int, k: int, terms=None):
        self.n = n
        self.k = k
        if terms is None:
            self.terms = {}
        elif isinstance(terms, dict):
            self.terms = {key: c for key, c in terms.items() if c}
        else:
            self.terms = {}
            for key, coef in terms:
                c = self.terms.get(key)
                c = coef if c is None else c + coef
                if c:
                    self.terms[key] = c
                elif key in self.terms:
                    del self.terms[key]

    def is_zero(self):
        return not self.terms

    def w_shift(self, v) -> "WOp":
        """Multiply by W^v (v may have negative entries if every term
        stays in N^k)."""
        out = {}
        for (a, b, l), c in self.terms.items():
            nl = tuple(x + y for x, y in zip(l, v))
            if any(x < 0 for x in nl):
                raise SemanticError("W-shift leaves the polynomial range")
            out[(a, b, nl)] = c
        return WOp(self.n, self.k, out)

    def __add__(self, other):
        out = dict(self.terms)
        for key, coef in other.terms.items():
            c = out.get(key)
            c = coef if c is None else c + coef
            if c:
                out[key] = c
            elif key in out:
                del out[key]
        return WOp(self.n, self.k, out)

    def __neg__(self):
        return WOp(self.n, self.k, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, WOp)
            and (self.n, self.k) == (other.n, other.k)
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"WOp({format_w_op(self)!r})"


_W_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+(?:/\d+)?)|(?P<fac>[xdw]\d+(?:\^\d+)?)|(?P<sign>[+-]))"
)


def parse_w_op(text: str, n: int, k: int) -> WOp:
    """Parse the x/d/w grammar for cone-coordinate operators."""
    pos = 0
    toks = []
    while pos < len(text):
        m = _W_TOKEN.match(text, pos)
        if not m or m.lastgroup is None:
            break
        toks.append((m.lastgroup, m.group(m.lastgroup)))
        pos = m.end()
    if text[pos:].strip():
        raise SemanticError(f"unexpected input {text[pos:].strip()[:10]!r}")
    if not toks:
        raise SemanticError("empty operator")
    terms = []
    i = 0
    first = True
    while i < len(toks):
        sign = 1
        if toks[i][0] == "sign":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise SemanticError("expected + or - between terms")
        first = False
        coef = Fraction(sign)
        saw = False
        if i < len(toks) and toks[i][0] == "rat":
            coef = sign * Fraction(toks[i][1])
            saw = True
            i += 1
        alpha = [0] * n
        beta = [0] * n
        ell = [0] * k
        while i < len(toks) and toks[i][0] == "fac":
            saw = True
            tok = toks[i][1]
            head, body = tok[0], tok[1:]
            exp = 1
            if "^" in body:
                body, e = body.split("^")
                exp = int(e)
            idx = int(body)
            if head == "x":
                if not 1 <= idx <= n:
                    raise SemanticError(f"x{idx} out of range")
                alpha[idx - 1] += exp
            elif head == "d":
                if not 1 <= idx <= n:
                    raise SemanticError(f"d{idx} out of range")
                beta[idx - 1] += exp
            else:
                if not 1 <= idx <= k:
                    raise SemanticError(f"w{idx} out of range")
                ell[idx - 1] += exp
            i += 1
        if not saw:
            raise SemanticError("empty term")
        terms.append(((tuple(alpha), tuple(beta), tuple(ell)), coef))
    return WOp(n, k, terms)


def format_w_op(q: WOp) -> str:
    if not q.terms:
        return "0"
    chunks = []
    for idx, key in enumerate(sorted(q.terms, key=lambda key: (sum(key[0]) + sum(key[1]) + sum(key[2]), key))):
        a, b, l = key
        coef = q.terms[key]
        factors = []
        for i, e in enumerate(a):
            if e:
                factors.append(f"x{i + 1}" + (f"^{e}" if e > 1 else ""))
        for i, e in enumerate(b):
            if e:
                factors.append(f"d{i + 1}" + (f"^{e}" if e > 1 else ""))
        for i, e in enumerate(l):
            if e:
                factors.append(f"w{i + 1}" + (f"^{e}" if e > 1 else ""))
        body = " ".join(factors) if factors else str(abs(coef))
        if abs(coef) != 1 and factors:
            body = f"{abs(coef)} {body}"
        if idx == 0:
            chunks.append(("-" if coef < 0 else "") + body)
        else:
            chunks.append(("- " if coef < 0 else "+ ") + body)
    return " ".join(chunks)


@dataclass
class SyzygyNormalization:
    """The per-region rewrite of a W-monomial syzygy: operators R[i][p]
    with Q_i = sum_p W^(v_ip) R_ip and, for each region p, the exact
    cancellation sum_(i>=p) W^(w_ip) R_ip = 0."""

    a: tuple
    matrix: dict  # (i, p) -> WOp
    offsets: dict  # (i, p) -> (v, w)

    def verify(self, q_list) -> None:
        r = len(self.a)
        for i, q in enumerate(q_list):
            total = WOp(q.n, q.k)
            for p in range(i + 1):
                rip = self.matrix.get((i, p))
                if rip is None:
                    continue
                total = total + rip.w_shift(self.offsets[(i, p)][0])
            if total != q:
                raise DfanError(f"row {i}: sum of region parts differs from Q_i")
        for p in range(r):
            total = WOp(q_list[0].n, q_list[0].k)
            for i in range(p, r):
                rip = self.matrix.get((i, p))
                if rip is None:
                    continue
                total = total + rip.w_shift(self.offsets[(i, p)][1])
            if not total.is_zero():
                raise DfanError(f"region {p}: cancellation identity fails")


def kernel_normalize(a_list, q_list) -> SyzygyNormalization:
    """Split a syzygy sum_i W^(a_i) Q_i = 0 along the disjoint-region
    partition of the W-lattice and factor each part as W^(v_ip) R_ip.
    The per-region identities then rewrite the corresponding tensor to
    zero, which is the constructive content of flatness of the Rees ring
    over the W-polynomials."""
    r = len(a_list)
    if r != len(q_list) or r == 0:
        raise SemanticError("need matching nonempty exponent/operator lists")
    a_list = tuple(tuple(int(c) for c in a) for a in a_list)
    k = len(a_list[0])
    n = q_list[0].n
    # the defining relation must hold exactly
    total = WOp(n, k)
    for a, q in zip(a_list, q_list):
        total = total + q.w_shift(a)
    if not total.is_zero():
        raise SemanticError("the syzygy relation does not hold")

    def region(point):
        for p in range(r):
            if all(x >= y for x, y in zip(point, a_list[p])):
                return p
        raise DfanError("lattice point outside every region")

    matrix = {}
    offs = {}
    for i, q in enumerate(q_list):
        buckets: dict = {}
        for key, c in q.terms.items():
            point = tuple(x + y for x, y in zip(key[2], a_list[i]))
            p = region(point)
            if p > i:
                raise DfanError("region index exceeds the row index")
            buckets.setdefault(p, {})[key] = c
        for p, terms in sorted(buckets.items()):
            v, w = offsets(a_list[i], a_list[p])
            offs[(i, p)] = (v, w)
            qip = WOp(n, k, terms)
            matrix[(i, p)] = qip.w_shift(tuple(-x for x in v))
    out = SyzygyNormalization(a_list, matrix, offs)
    out.verify(q_list)
    return out


# ---------------------------------------------------------------------------
# the flat-decomposition certifier


class _IdealFrame:
    """Cone rows renumbered so the ideal coordinates come first; only
    L L' = 1 matters here, so the determinant may be -1."""

    __slots__ = ("rows", "inverse", "columns", "original", "p")

    def __init__(self, gamma: BasicCone, J):
        J = tuple(sorted(set(J)))
        k = gamma.k
        if not J or any(not 1 <= j <= k for j in J):
            raise ConeError(f"ideal coordinates {J} out of range")
        order = [j - 1 for j in J] + [j for j in range(k) if j + 1 not in J]
        rows = tuple(gamma.rows[j] for j in order)
        d = _det(rows)
        if d not in (1, -1):
            raise ConeError("frame is not unimodular")
        self.rows = rows
        self.inverse = _inverse_unimodular(rows)
        self.columns = tuple(
            tuple(self.inverse[i][j] for i in range(k)) for j in range(k)
        )
        self.original = tuple(order)
        self.p = len(J)

    @property
    def k(self):
        return len(self.rows)


class _UnitFrame:
    """Degenerate frame for the unit ideal: one region, no column drop."""

    __slots__ = ("rows", "columns", "original", "p")

    def __init__(self, gamma: BasicCone):
        self.rows = gamma.rows
        self.columns = ((0,) * gamma.k,)
        self.original = (0,)
        self.p = 1

    @property
    def k(self):
        return len(self.rows)


def _in_region(point, s, frame, j):
    """point in (s - C_j) - dual cone: every row form drops by delta_ij."""
    unit = isinstance(frame, _UnitFrame)
    for i, row in enumerate(frame.rows):
        bound = sum(r * x for r, x in zip(row, s)) - (
            1 if (i == j and not unit) else 0
        )
        if sum(r * x for r, x in zip(row, point)) > bound:
            return False
    return True


@dataclass
class FlatCertificate:
    """Witness that Q u^s lies in the ideal times the Rees submodule: the
    decomposition Q = sum Q'_j with every piece in the cone filtration at
    s - C_j and in the module."""

    Q: WeylVec
    s: tuple
    gamma: BasicCone
    J: tuple
    parts: tuple
    pieces: tuple  # aligned with J's frame order
    t_power: int
    quotients: tuple
    split: tuple  # ((m, key, coef, j) ...) audit of the stratum split
    member_powers: tuple
    basis: StandardBasis

    def verify(self) -> None:
        frame = _IdealFrame(self.gamma, self.J)
        total = WeylVec.zero(self.Q.ring)
        for piece in self.pieces:
            total = total + piece
        if total != self.Q:
            raise CertificateError("pieces do not sum to the input")
        for j, piece in enumerate(self.pieces):
            if piece.is_zero():
                continue
            target = tuple(
                x - c for x, c in zip(self.s, frame.columns[j])
            )
            if not in_V_gamma(piece, target, frame.rows):
                raise CertificateError(
                    f"piece {j + 1} leaves the cone filtration"
                )
            if not self.basis.member(piece):
                raise CertificateError(f"piece {j + 1} fails module membership")

    def replay(self) -> "FlatCertificate":
        return flat_decompose(
            self.Q, self.s, self.gamma, self.J, self.basis, self.parts
        )

    def to_report(self) -> dict:
        return {
            "input": format_vec(self.Q),
            "degree": list(self.s),
            "cone": [list(r) for r in self.gamma.rows],
            "ideal": list(self.J),
            "t_power": self.t_power,
            "pieces": [format_vec(p) for p in self.pieces],
            "piece_degrees": [
                [x - c for x, c in zip(self.s, _IdealFrame(self.gamma, self.J).columns[j])]
                for j in range(len(self.pieces))
            ],
            "quotients": [format_op(a) for a in self.quotients],
            "split": [
                {"m": m, "key": [list(key[0]), list(key[1]), key[2]], "coef": str(c), "j": j}
                for (m, key, c, j) in self.split
            ],
            "member_powers": list(self.member_powers),
        }


def flat_decompose(
    Q: WeylVec,
    s,
    gamma: BasicCone,
    J,
    basis: StandardBasis,
    parts,
    fan_cone=None,
    l_max: int | None = None,
) -> FlatCertificate:
    """Execute the decomposition pipeline for the coordinate ideal W_J.

    ``parts`` is the given decomposition Q = sum Q_i with each Q_i in the
    cone filtration at s - C_i (frame order, ideal coordinates first);
    ``basis`` is a simultaneous standard basis valid on a fan cone whose
    closure contains the cone.  When ``fan_cone`` is supplied, that
    hypothesis is checked up front."""
    ring = Q.ring
    if Q.is_zero():
        raise ZeroInputError("nothing to decompose")
    frame = _IdealFrame(gamma, J)
    p = frame.p
    s = tuple(int(c) for c in s)
    if fan_cone is not None:
        for row in frame.rows:
            L = LinearForm(row)
            if not all(
                sum(Fraction(c) * v for c, v in zip(L.coeffs, eq)) == 0
                for eq in fan_cone.equalities
            ) or not all(
                sum(Fraction(c) * v for c, v in zip(L.coeffs, st)) >= 0
                for st in fan_cone.stricts
            ):
                raise CertificateError(
                    "cone is not included in the closure of the fan cone"
                )
    parts = tuple(parts)
    if len(parts) != p:
        raise CertificateError(f"need {p} decomposition parts, got {len(parts)}")
    total = WeylVec.zero(ring)
    for part in parts:
        total = total + part
    if total != Q:
        raise CertificateError("decomposition parts do not sum to the input")
    for j, part in enumerate(parts):
        if part.is_zero():
            continue
        target = tuple(x - c for x, c in zip(s, frame.columns[j]))
        if not in_V_gamma(part, target, frame.rows):
            raise CertificateError(
                f"part {j + 1} is not in the cone filtration at {target}"
            )
    mem = basis.member(Q, l_max)
    if not mem.is_member:
        raise CertificateError(
            f"module membership of the input is inconclusive up to t^{mem.l_max}"
        )
    # extend the division context with the cone rows so the L-order bounds
    # are machine-checked for every ray
    row_forms = [LinearForm(r) for r in frame.rows]
    work_basis = StandardBasis(
        ring,
        basis.elements,
        basis.order,
        tuple(basis.context) + tuple(row_forms),
        basis.caps,
    )
    dq = Q.order()
    degs = [part.order() for part in parts if not part.is_zero()]
    big = max([dq + mem.l, *degs]) if degs else dq + mem.l
    ell = big - dq
    G = t_power_times(homogenize_vec(Q), ell)
    division = work_basis.divide(G)
    if not division.remainder.is_zero():
        raise CertificateError(
            "division leaves a remainder: the basis does not span the module"
        )
    L1 = row_forms[0]
    d_top = L1.of(s)
    if ord_L_vec(G, L1, ring.shifts) > d_top:
        raise CertificateError("input exceeds the stated filtration degree")
    splits = []
    r_pieces = [DtVec.zero(ring) for _ in range(p)]
    for m, (a_m, h_m) in enumerate(zip(division.quotients, work_basis.elements)):
        if a_m.is_zero():
            continue
        d1m = ord_L_vec(h_m, L1, ring.shifts)
        try:
            top = symbol_L(a_m, L1, d_top - d1m)
        except DfanError as exc:
            raise CertificateError(f"quotient {m} breaks the order bound: {exc}")
        if top.is_zero():
            continue
        exp = work_basis.exponents[m]
        w_m = multi_weight((exp[0], exp[1], exp[2]), exp[3], ring.shifts, ring.k)
        for key, coef in sorted(top.terms.items()):
            delta = tuple(
                key[1][i] - key[0][i] for i in range(ring.k)
            )
            point = tuple(x + y for x, y in zip(delta, w_m))
            for j in range(1, p):
                if _in_region(point, s, frame, j):
                    splits.append((m, key, coef, j))
                    term = DtOp(ring, {key: coef})
                    r_pieces[j] = r_pieces[j] + _mul_scalar_vec(term, h_m)
                    break
            else:
                raise CertificateError(
                    f"stratum term {key} of quotient {m} fits no ideal region"
                )
    pieces = [None] * p
    rest = Q
    for j in range(1, p):
        pieces[j] = dehomogenize(r_pieces[j])
        rest = rest - pieces[j]
    pieces[0] = rest
    member_powers = []
    for j, piece in enumerate(pieces):
        if piece.is_zero():
            member_powers.append(0)
            continue
        check = basis.member(piece, l_max)
        if not check.is_member:
            raise CertificateError(
                f"piece {j + 1} has inconclusive module membership"
            )
        member_powers.append(check.l)
    cert = FlatCertificate(
        Q=Q,
        s=s,
        gamma=gamma,
        J=tuple(sorted(set(J))),
        parts=parts,
        pieces=tuple(pieces),
        t_power=ell,
        quotients=tuple(division.quotients),
        split=tuple(splits),
        member_powers=tuple(member_powers),
        basis=basis,
    )
    cert.verify()
    return cert


def greedy_parts(Q: WeylVec, s, gamma: BasicCone, J):
    """Assign each term of Q to the first admissible ideal region,
    producing the decomposition flat_decompose needs.  Returns None when
    some term fits no region (Q is then outside the graded piece of the
    ideal times the free module)."""
    ring = Q.ring
    frame = _IdealFrame(gamma, J)
    s = tuple(int(c) for c in s)
    buckets = [
        [dict() for _ in range(ring.r)] for _ in range(frame.p)
    ]
    for key, i, c in Q.iter_terms():
        delta = multi_weight(key, i, ring.shifts, ring.k)
        for j in range(frame.p):
            if _in_region(delta, s, frame, j):
                buckets[j][i][key] = c
                break
        else:
            return None
    return tuple(
        WeylVec(ring, tuple(WeylOp(ring, bkt) for bkt in comp_buckets))
        for comp_buckets in buckets
    )


# ---------------------------------------------------------------------------
# the independent intersection oracle


@dataclass
class OracleResult:
    equal: bool
    lhs_dim: int
    rhs_dim: int
    counterexample: WeylVec | None
    elements: tuple  # basis of the intersection, as module vectors
    part_assignments: tuple  # per element: list of p parts
    bound: int
    slack: int


def intersection_oracle(
    generators,
    gamma: BasicCone,
    J,
    s,
    degree_bound: int,
    slack: int | None = None,
) -> OracleResult:
    """Compare, degree by degree up to a truncation bound, the graded
    piece of (ideal times free Rees module) intersected with the module
    against the ideal times the module's Rees submodule.  Pure linear
    algebra over the generators; independent of every standard-basis
    route.

    Both verdicts are relative to the recorded truncation (``bound`` on
    element degree, ``slack`` of extra multiplier room when spanning the
    module): enlarge the slack to push a suspicious counterexample.

    An empty ``J`` encodes the unit ideal, for which both sides are the
    graded piece of the module itself and equality is trivial (the
    enumeration is still useful)."""
    ring = generators[0].ring
    frame = _UnitFrame(gamma) if not tuple(J) else _IdealFrame(gamma, J)
    p = frame.p
    s = tuple(int(c) for c in s)
    if slack is None:
        slack = max(g.total_degree() for g in generators) + 2
    prod_bound = degree_bound + slack
    from itertools import product as iproduct

    # columns: products (monomial * generator) up to the padded bound
    columns = []
    for g in generators:
        room = prod_bound - g.total_degree()
        for exps in iproduct(range(room + 1), repeat=2 * ring.n):
            if sum(exps) > room:
                continue
            mu = WeylOp(
                ring,
                {(tuple(exps[: ring.n]), tuple(exps[ring.n :])): Fraction(1)},
            )
            prod = WeylVec(ring, tuple(mu * c for c in g.components))
            if not prod.is_zero():
                columns.append(prod)
    keys = sorted(
        {key + (i,) for col in columns for key, i, _ in col.iter_terms()}
    )
    key_index = {key: idx for idx, key in enumerate(keys)}
    rows = []
    for col in columns:
        vec = [Fraction(0)] * len(keys)
        for key, i, c in col.iter_terms():
            vec[key_index[key + (i,)]] = c
        rows.append(vec)
    n_basis, n_pivots = rref(rows)

    def admissible(key, j):
        delta = multi_weight(key, key[2], ring.shifts, ring.k)
        return _in_region(delta, s, frame, j)

    def key_degree(key):
        return sum(key[0]) + sum(key[1])

    bad_any = [
        idx
        for idx, key in enumerate(keys)
        if key_degree(key) > degree_bound
        or not any(admissible(key, j) for j in range(p))
    ]
    bad_per_j = [
        [
            idx
            for idx, key in enumerate(keys)
            if key_degree(key) > degree_bound or not admissible(key, j)
        ]
        for j in range(p)
    ]

    def constrained_subspace(basis_rows, bad_cols):
        if not basis_rows:
            return []
        mat = [[row[c] for row in basis_rows] for c in bad_cols]
        combos = nullspace(mat, len(basis_rows))
        out = []
        for combo in combos:
            vec = [Fraction(0)] * len(keys)
            for c, row in zip(combo, basis_rows):
                if c:
                    for idx, val in enumerate(row):
                        if val:
                            vec[idx] += c * val
            out.append(vec)
        red, piv = rref(out)
        return red

    lhs = constrained_subspace(n_basis, bad_any)
    rhs_rows = []
    for j in range(p):
        rhs_rows.extend(constrained_subspace(n_basis, bad_per_j[j]))
    rhs, rhs_piv = rref(rhs_rows)
    lhs_red, lhs_piv = rref(lhs)

    def to_vec(dense) -> WeylVec:
        buckets = [dict() for _ in range(ring.r)]
        for idx, c in enumerate(dense):
            if c:
                a, b, i = keys[idx]
                buckets[i][(a, b)] = c
        return WeylVec(ring, tuple(WeylOp(ring, bkt) for bkt in buckets))

    counterexample = None
    for vec in lhs_red:
        remainder = reduce_against(rhs, rhs_piv, vec)
        if any(remainder):
            counterexample = to_vec(vec)
            break
    elements = []
    assignments = []
    for vec in lhs_red:
        w = to_vec(vec)
        elements.append(w)
        # per-term greedy assignment to the first admissible region
        buckets = [dict() for _ in range(p)]
        for key, i, c in w.iter_terms():
            for j in range(p):
                if admissible(key + (i,), j):
                    buckets[j][(key, i)] = c
                    break
        parts = []
        for j in range(p):
            comp_buckets = [dict() for _ in range(ring.r)]
            for (key, i), c in buckets[j].items():
                comp_buckets[i][key] = c
            parts.append(
                WeylVec(ring, tuple(WeylOp(ring, bkt) for bkt in comp_buckets))
            )
        assignments.append(tuple(parts))
    return OracleResult(
        equal=counterexample is None,
        lhs_dim=len(lhs_red),
        rhs_dim=len(rhs),
        counterexample=counterexample,
        elements=tuple(elements),
        part_assignments=tuple(assignments),
        bound=degree_bound,
        slack=slack,
    )
