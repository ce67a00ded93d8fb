"""Graded Rees elements P u^s, the graded algebra isomorphic to the plain
Rees ring, and fibers at zero.

An element of the Rees ring of the V-multifiltration is a pair (P, s)
with P in V_s; the graded isomorphism sends x^alpha d^beta u^s to
X^alpha Delta^beta U^sigma with sigma = s + alpha - beta on the first k
coordinates.  At polynomial scale the target algebra is Q[X][Delta, U]
with Delta_i X_i = X_i Delta_i + 1 and U central.

The fiber-at-zero test decides whether the classes of the unit vectors
die in the quotient by the submodule plus the ideal of positive u-degrees:
a conclusive "nonzero" comes from graded symbol-module membership (the
necessary condition through the strictly positive reference form), a
conclusive "zero" from an explicit witness found by bounded graded linear
algebra; anything else is reported inconclusive at its bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._linalg import solve_affine
from .basis import plain_module_basis, reduce_basis
from .errors import ConeError, GradingError, RingMismatchError, ZeroInputError
from .filtration import in_V_gamma, in_V_s, multi_weight
from .toric import BasicCone
from .weights import LinearForm, ones_form, ord_L_vec, symbol_L
from .weyl import (
    RingDescriptor,
    WeylOp,
    WeylVec,
    _mul_terms,
    dehomogenize,
)


class ReesElement:
    """P u^s for P in V_s (plain context) or in V^Gamma_s (cone context).

    ``op`` is a scalar WeylOp (ring elements) or a WeylVec (module
    elements, filtered through the ring's shift matrix)."""

    __slots__ = ("op", "s", "cone")

    def __init__(self, op, s, cone: BasicCone | None = None):
        self.op = op
        self.s = tuple(int(c) for c in s)
        self.cone = cone
        k = op.ring.k
        if len(self.s) != k:
            raise GradingError(f"degree must live in Z^{k}")
        shifts = None if isinstance(op, WeylOp) else op.ring.shifts
        if cone is None:
            if not in_V_s(op, self.s, shifts):
                raise GradingError(f"operator is not in V_s for s = {self.s}")
        else:
            if not in_V_gamma(op, self.s, cone, shifts):
                raise GradingError(
                    f"operator is not in the cone filtration at s = {self.s}"
                )

    def __eq__(self, other):
        return (
            isinstance(other, ReesElement)
            and self.op == other.op
            and self.s == other.s
            and self.cone == other.cone
        )

    def __repr__(self):
        return f"ReesElement({self.op!r}, s={self.s})"


def rees_mul(e1: ReesElement, e2: ReesElement) -> ReesElement:
    """(P1 u^s1)(P2 u^s2) = (P1 P2) u^(s1+s2); the u variables are central."""
    if e1.cone != e2.cone:
        raise RingMismatchError("Rees elements in different contexts")
    if isinstance(e1.op, WeylVec):
        raise TypeError("left factor must be a scalar ring element")
    if isinstance(e2.op, WeylVec):
        prod = WeylVec(
            e2.op.ring, tuple(e1.op * c for c in e2.op.components)
        )
    else:
        prod = e1.op * e2.op
    s = tuple(a + b for a, b in zip(e1.s, e2.s))
    return ReesElement(prod, s, e1.cone)


class AElement:
    """Graded image of a scalar Rees element: terms X^alpha Delta^beta
    U^sigma with sigma in N^k, all of one degree (sigma + beta - alpha)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor, terms):
        self.ring = ring
        if isinstance(terms, dict):
            self.terms = {k: v for k, v in terms.items() if v}
        else:
            self.terms = {}
            for key, coef in terms:
                c = self.terms.get(key)
                c = coef if c is None else c + coef
                if c:
                    self.terms[key] = c
                elif key in self.terms:
                    del self.terms[key]
        for (a, b, sig) in self.terms:
            if any(c < 0 for c in sig):
                raise GradingError("negative U-exponent")

    def degree(self):
        degs = {
            tuple(sig[i] + b[i] - a[i] for i in range(self.ring.k))
            for (a, b, sig) in self.terms
        }
        if len(degs) > 1:
            raise GradingError("inhomogeneous element of the graded algebra")
        return degs.pop() if degs else None

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, AElement)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __mul__(self, other: "AElement") -> "AElement":
        if self.ring != other.ring:
            raise RingMismatchError("A-elements over different rings")
        acc = {}
        for (a1, b1, s1), c1 in self.terms.items():
            for (a2, b2, s2), c2 in other.terms.items():
                sig = tuple(x + y for x, y in zip(s1, s2))
                for (na, nb), cc in _mul_terms((a1, b1), c1, (a2, b2), c2, False):
                    key = (na, nb, sig)
                    v = acc.get(key)
                    v = cc if v is None else v + cc
                    if v:
                        acc[key] = v
                    elif key in acc:
                        del acc[key]
        return AElement(self.ring, acc)

    def __repr__(self):
        return f"AElement({self.format()!r})"

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, sig) in sorted(self.terms):
            coef = self.terms[(a, b, sig)]
            factors = []
            for i, e in enumerate(a):
                if e:
                    factors.append(f"X{i + 1}" + (f"^{e}" if e > 1 else ""))
            for i, e in enumerate(b):
                if e:
                    factors.append(f"D{i + 1}" + (f"^{e}" if e > 1 else ""))
            for i, e in enumerate(sig):
                if e:
                    factors.append(f"U{i + 1}" + (f"^{e}" if e > 1 else ""))
            body = " ".join(factors) if factors else "1"
            if abs(coef) != 1 or not factors:
                body = f"{abs(coef)} {body}" if factors else str(abs(coef))
            parts.append(("- " if coef < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def to_A(e: ReesElement) -> AElement:
    """The graded isomorphism on homogeneous elements (plain context)."""
    if e.cone is not None:
        raise GradingError("the graded isomorphism needs the plain context")
    if not isinstance(e.op, WeylOp):
        raise TypeError("the graded isomorphism acts on scalar elements")
    k = e.op.ring.k
    terms = {}
    for (a, b), c in e.op.terms.items():
        sig = tuple(e.s[i] + a[i] - b[i] for i in range(k))
        terms[(a, b, sig)] = c
    return AElement(e.op.ring, terms)


def from_A(a: AElement) -> ReesElement:
    """Inverse of the graded isomorphism; needs a homogeneous element."""
    s = a.degree()
    if s is None:
        raise ZeroInputError("the zero element has no homogeneous degree")
    op = WeylOp(a.ring, {(al, b): c for (al, b, _), c in a.terms.items()})
    return ReesElement(op, s)


@dataclass
class FiberResult:
    verdict: str  # "zero" | "nonzero" | "inconclusive"
    witnesses: list  # (unit index, witness WeylVec) pairs for "zero"
    failing_unit: int | None
    bound: int

    def __bool__(self):
        return self.verdict == "zero"


def _unit_vector(ring: RingDescriptor, i: int) -> WeylVec:
    zero = ((0,) * ring.n, (0,) * ring.n)
    comps = []
    for j in range(ring.r):
        comps.append(
            WeylOp(ring, {zero: Fraction(1)} if j == i else {})
        )
    return WeylVec(ring, comps)


def _witness_search(generators, unit: int, bound: int, gamma: BasicCone | None = None):
    """Find F = e_unit + (strictly smaller filtration terms) inside the
    module, by exact linear algebra over multiplier monomials of degree
    <= bound.  With a basic cone the lower stratum is the cone ideal's
    span: rows of L(s - delta) nonnegative and not all zero."""
    ring = generators[0].ring
    s = ring.shifts[unit]
    k = ring.k
    unit_key = ((0,) * ring.n, (0,) * ring.n, unit)

    def constrained(key):
        delta = multi_weight(key, key[2], ring.shifts, k)
        if gamma is None:
            if all(d <= t for d, t in zip(delta, s)):
                return delta == tuple(s)  # top stratum: must match the unit
            return True  # outside V_s: must vanish
        drops = tuple(
            sum(r * (si - d) for r, si, d in zip(row, s, delta))
            for row in gamma.rows
        )
        if any(dr < 0 for dr in drops):
            return True  # outside the cone filtration: must vanish
        return all(dr == 0 for dr in drops)  # top stratum otherwise free

    from itertools import product as iproduct

    for B in range(bound + 1):
        columns = []
        col_vecs = []
        for g in generators:
            gdeg = g.total_degree()
            for exps in iproduct(range(B + 1), repeat=2 * ring.n):
                if sum(exps) > B:
                    continue
                mu = WeylOp(
                    ring,
                    {(tuple(exps[: ring.n]), tuple(exps[ring.n :])): Fraction(1)},
                )
                prod = WeylVec(ring, tuple(mu * c for c in g.components))
                if prod.is_zero():
                    continue
                columns.append(prod)
                col_vecs.append(
                    {key + (i,): c for key, i, c in prod.iter_terms()}
                )
        keys = sorted(
            {key for vec in col_vecs for key in vec if constrained(key)}
            | {unit_key}
        )
        key_index = {key: idx for idx, key in enumerate(keys)}
        rows = [[Fraction(0)] * len(columns) for _ in keys]
        for cidx, vec in enumerate(col_vecs):
            for key, c in vec.items():
                ridx = key_index.get(key)
                if ridx is not None:
                    rows[ridx][cidx] = c
        rhs = [
            Fraction(1) if key == unit_key else Fraction(0) for key in keys
        ]
        sol = solve_affine(rows, rhs)
        if sol is not None:
            total = WeylVec.zero(ring)
            for x, prod in zip(sol, columns):
                if x:
                    total = total + prod.scale(x)
            return total
    return None


def fiber_V_zero_test(
    generators, bound: int | None = None, gamma: BasicCone | None = None
) -> FiberResult:
    """Decide whether every unit vector e_i u^(n^(i)) lies in the graded
    span of the submodule plus the positive-degree ideal, i.e. whether the
    fiber at zero of the quotient's Rees module vanishes.  With a basic
    cone the test runs against the cone-refined filtration and the toric
    ring's maximal graded ideal."""
    gens = [g for g in generators]
    if not gens or any(g.is_zero() for g in gens):
        raise ZeroInputError("generators must be nonzero")
    ring = gens[0].ring
    if gamma is not None and gamma.k != ring.k:
        raise ConeError(f"cone lives in the wrong dimension ({gamma.k} != {ring.k})")
    if bound is None:
        bound = 2 * max(g.total_degree() for g in gens) + 4
    # conclusive "nonzero": graded symbol-module membership must hold for
    # a strictly positive interior reference form (sum of the cone rows;
    # the plain case is the orthant, giving the all-ones form)
    if gamma is None:
        Lstar = ones_form(ring.k)
    else:
        Lstar = LinearForm(tuple(sum(col) for col in zip(*gamma.rows)))
    sbasis = reduce_basis(gens, Lstar)
    symbols = []
    for h in sbasis.elements:
        d = ord_L_vec(h, Lstar, ring.shifts)
        symbols.append(dehomogenize(symbol_L(h, Lstar, d, ring.shifts)))
    symbol_gb = plain_module_basis(symbols)
    for i in range(ring.r):
        if not symbol_gb.member(_unit_vector(ring, i)):
            return FiberResult("nonzero", [], i, bound)
    # conclusive "zero": exhibit a witness per unit
    witnesses = []
    for i in range(ring.r):
        w = _witness_search(gens, i, bound, gamma)
        if w is None:
            return FiberResult("inconclusive", witnesses, i, bound)
        witnesses.append((i, w))
    return FiberResult("zero", witnesses, None, bound)


def gamma_fiber_reduce(e: ReesElement):
    """Rewrite a cone-context element in (X, Delta, W) coordinates and
    drop every term with a nonzero W-exponent: reduction modulo the
    maximal graded ideal of the toric ring.  Returns the surviving
    operator in the X/Delta Weyl algebra."""
    if e.cone is None:
        raise ConeError("reduction needs a basic cone context")
    gamma = e.cone
    k = gamma.k
    ring = e.op.ring

    def survives(key, comp):
        a, b = key[0], key[1]
        shift = ring.shifts[comp] if isinstance(e.op, WeylVec) else (0,) * k
        sigma = tuple(
            e.s[i] - shift[i] + a[i] - b[i] for i in range(k)
        )
        wexp = tuple(
            sum(gamma.rows[i][j] * sigma[j] for j in range(k)) for i in range(k)
        )
        if any(c < 0 for c in wexp):
            raise GradingError("term escapes the cone filtration")
        return all(c == 0 for c in wexp)

    if isinstance(e.op, WeylVec):
        comps = []
        for i, comp in enumerate(e.op.components):
            comps.append(
                WeylOp(
                    ring,
                    {key: c for key, c in comp.terms.items() if survives(key, i)},
                )
            )
        return WeylVec(ring, comps)
    return WeylOp(
        ring, {key: c for key, c in e.op.terms.items() if survives(key, 0)}
    )
