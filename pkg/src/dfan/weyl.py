"""Exact arithmetic in the Weyl algebra D, in D^r, and in the homogenized
ring D[t], over the rationals.

Operators are sparse maps from exponent keys to nonzero Fractions:

    scalar D      key (alpha, beta)        x^alpha d^beta
    scalar D[t]   key (alpha, beta, l)     x^alpha d^beta t^l

Vectors are tuples of scalars of fixed rank r.  The product follows the
Leibniz rule d_i a = a d_i + (da/dx_i); in D[t] each contraction of a d
against an x emits one power of the central variable t.  Both products are
computed by the closed-form expansion

    d^b x^c = sum_nu  C(b, nu) * c!/(c-nu)! * x^(c-nu) d^(b-nu) [t^|nu|]

rather than by repeated single steps.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, perm

from .errors import HomogeneityError, RingMismatchError, ZeroInputError


class RingDescriptor:
    """Ambient data: n x/d pairs, k filtered coordinates, rank r, shifts.

    ``shifts`` is the shift matrix n_ = (n^(1), ..., n^(r)), one column in
    Z^k per component of D^r.
    """

    __slots__ = ("n", "k", "r", "shifts")

    def __init__(self, n: int, k: int, r: int = 1, shifts=None):
        if not (1 <= k <= n):
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        if r < 1:
            raise ValueError(f"need r >= 1, got r={r}")
        if shifts is None:
            shifts = tuple((0,) * k for _ in range(r))
        else:
            shifts = tuple(tuple(int(c) for c in col) for col in shifts)
            if len(shifts) != r or any(len(col) != k for col in shifts):
                raise ValueError("shift matrix must have r columns in Z^k")
        self.n = n
        self.k = k
        self.r = r
        self.shifts = shifts

    def __eq__(self, other):
        return (
            isinstance(other, RingDescriptor)
            and (self.n, self.k, self.r, self.shifts)
            == (other.n, other.k, other.r, other.shifts)
        )

    def __hash__(self):
        return hash((self.n, self.k, self.r, self.shifts))

    def __repr__(self):
        return f"RingDescriptor(n={self.n}, k={self.k}, r={self.r}, shifts={list(map(list, self.shifts))})"


def _canonical(terms) -> dict:
    out = {}
    for key, coef in terms:
        c = out.get(key)
        c = coef if c is None else c + coef
        if c:
            out[key] = c
        elif key in out:
            del out[key]
    return out


def _check_same_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


class _OpBase:
    """Shared behaviour of scalar operators (D and D[t])."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingDescriptor, terms=None):
        self.ring = ring
        if terms is None:
            self.terms = {}
        elif isinstance(terms, dict):
            self.terms = {k: v for k, v in terms.items() if v}
        else:
            self.terms = _canonical(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((type(self).__name__, self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        _check_same_ring(self, other)
        out = dict(self.terms)
        for key, coef in other.terms.items():
            c = out.get(key)
            c = coef if c is None else c + coef
            if c:
                out[key] = c
            elif key in out:
                del out[key]
        return type(self)(self.ring, out)

    def __neg__(self):
        return type(self)(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return type(self)(self.ring)
        return type(self)(self.ring, {k: c * v for k, v in self.terms.items()})

    def __repr__(self):
        from .grammar import format_op

        return f"{type(self).__name__}({format_op(self)!r})"


def _mul_terms(t1, c1, t2, c2, emit_t: bool):
    """Yield the expansion of (x^a1 d^b1 [t^l1]) * (x^a2 d^b2 [t^l2])."""
    if emit_t:
        a1, b1, l1 = t1
        a2, b2, l2 = t2
        lbase = l1 + l2
    else:
        a1, b1 = t1
        a2, b2 = t2
        lbase = 0
    n = len(a1)
    c = c1 * c2
    # iterate over nu <= min(b1, a2) componentwise
    ranges = [range(min(b1[i], a2[i]) + 1) for i in range(n)]
    stack = [((), 1)]
    for i in range(n):
        nxt = []
        bi, ai = b1[i], a2[i]
        for prefix, mult in stack:
            for nu in ranges[i]:
                m = mult * comb(bi, nu) * perm(ai, nu)
                if m:
                    nxt.append((prefix + (nu,), m))
        stack = nxt
    for nu, mult in stack:
        alpha = tuple(a1[i] + a2[i] - nu[i] for i in range(n))
        beta = tuple(b1[i] + b2[i] - nu[i] for i in range(n))
        if emit_t:
            yield (alpha, beta, lbase + sum(nu)), c * mult
        else:
            yield (alpha, beta), c * mult


class WeylOp(_OpBase):
    """Element of D: finite Q-linear combination of x^alpha d^beta."""

    __slots__ = ()

    def __mul__(self, other: "WeylOp") -> "WeylOp":
        if not isinstance(other, WeylOp):
            return NotImplemented
        _check_same_ring(self, other)
        acc = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                for key, coef in _mul_terms(t1, c1, t2, c2, False):
                    c = acc.get(key)
                    c = coef if c is None else c + coef
                    if c:
                        acc[key] = c
                    elif key in acc:
                        del acc[key]
        return WeylOp(self.ring, acc)

    def order(self) -> int:
        """Usual order: max |beta| over the support.  Zero gives -1."""
        if not self.terms:
            return -1
        return max(sum(b) for _, b in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(a) + sum(b) for a, b in self.terms)


class DtOp(_OpBase):
    """Element of D[t]; t is central and [d_i, a] = (da/dx_i) t."""

    __slots__ = ()

    def __mul__(self, other: "DtOp") -> "DtOp":
        if not isinstance(other, DtOp):
            return NotImplemented
        _check_same_ring(self, other)
        acc = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                for key, coef in _mul_terms(t1, c1, t2, c2, True):
                    c = acc.get(key)
                    c = coef if c is None else c + coef
                    if c:
                        acc[key] = c
                    elif key in acc:
                        del acc[key]
        return DtOp(self.ring, acc)

    def f_degree(self) -> int | None:
        """F-degree l + |beta| when homogeneous, else None; zero gives -1."""
        degs = {l + sum(b) for _, b, l in self.terms}
        if not degs:
            return -1
        if len(degs) > 1:
            return None
        return degs.pop()

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(a) + sum(b) + l for a, b, l in self.terms)


class _VecBase:
    __slots__ = ("ring", "components")

    _scalar: type

    def __init__(self, ring: RingDescriptor, components):
        comps = tuple(components)
        if len(comps) != ring.r:
            raise ValueError(f"expected {ring.r} components, got {len(comps)}")
        for c in comps:
            if not isinstance(c, self._scalar):
                raise TypeError(f"component of wrong type {type(c).__name__}")
            if c.ring != ring:
                raise RingMismatchError("component over a different ring")
        self.ring = ring
        self.components = comps

    @classmethod
    def zero(cls, ring: RingDescriptor):
        return cls(ring, tuple(cls._scalar(ring) for _ in range(ring.r)))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.ring == other.ring
            and self.components == other.components
        )

    def __hash__(self):
        return hash((type(self).__name__, self.components))

    def __add__(self, other):
        _check_same_ring(self, other)
        return type(self)(
            self.ring,
            tuple(a + b for a, b in zip(self.components, other.components)),
        )

    def __neg__(self):
        return type(self)(self.ring, tuple(-c for c in self.components))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return type(self)(self.ring, tuple(p.scale(c) for p in self.components))

    def iter_terms(self):
        """Yield (key, comp_index, coef) over the whole support."""
        for i, comp in enumerate(self.components):
            for key, coef in comp.terms.items():
                yield key, i, coef

    def __repr__(self):
        from .grammar import format_vec

        return f"{type(self).__name__}({format_vec(self)!r})"


class WeylVec(_VecBase):
    """Element of D^r."""

    __slots__ = ()
    _scalar = WeylOp

    def __rmul__(self, P: WeylOp) -> "WeylVec":
        _check_same_ring(P, self)
        return WeylVec(self.ring, tuple(P * c for c in self.components))

    def order(self) -> int:
        return max(c.order() for c in self.components)

    def total_degree(self) -> int:
        return max(c.total_degree() for c in self.components)


class DtVec(_VecBase):
    """Element of D[t]^r."""

    __slots__ = ()
    _scalar = DtOp

    def __rmul__(self, P: DtOp) -> "DtVec":
        _check_same_ring(P, self)
        return DtVec(self.ring, tuple(P * c for c in self.components))

    def f_degree(self) -> int | None:
        """Common F-degree across all components, None if inhomogeneous."""
        degs = {l + sum(b) for _, b, l in
                (key for key, _, _ in self.iter_terms())}
        if not degs:
            return -1
        if len(degs) > 1:
            return None
        return degs.pop()

    def total_degree(self) -> int:
        return max(c.total_degree() for c in self.components)


def homogenize(P: WeylOp) -> DtOp:
    """h(P) = sum p_b(x) d^b t^(d-|b|) with d the usual order of P."""
    if P.is_zero():
        raise ZeroInputError("cannot homogenize the zero operator")
    d = P.order()
    return DtOp(
        P.ring, {(a, b, d - sum(b)): c for (a, b), c in P.terms.items()}
    )


def homogenize_vec(B: WeylVec) -> DtVec:
    """Componentwise t^(d-d_i) h(P_i) where d = max of the usual orders.

    Every term of every component ends with t-exponent d - |beta|, so the
    result is F-homogeneous of degree d; zero components stay zero.
    """
    if B.is_zero():
        raise ZeroInputError("cannot homogenize the zero vector")
    d = B.order()
    comps = []
    for comp in B.components:
        comps.append(
            DtOp(B.ring, {(a, b, d - sum(b)): c for (a, b), c in comp.terms.items()})
        )
    return DtVec(B.ring, comps)


def dehomogenize(G):
    """Substitute t = 1 and recanonicalize; accepts DtOp or DtVec."""
    if isinstance(G, DtOp):
        return WeylOp(G.ring, (((a, b), c) for (a, b, _), c in G.terms.items()))
    if isinstance(G, DtVec):
        return WeylVec(G.ring, tuple(dehomogenize(c) for c in G.components))
    raise TypeError(f"cannot dehomogenize {type(G).__name__}")


def t_power_times(G: DtVec, l: int) -> DtVec:
    """Multiply by the central monomial t^l."""
    if l == 0:
        return G
    comps = [
        DtOp(G.ring, {(a, b, t + l): c for (a, b, t), c in comp.terms.items()})
        for comp in G.components
    ]
    return DtVec(G.ring, comps)


def require_f_homogeneous(G) -> int:
    """Return the F-degree of G, raising if G is not F-homogeneous."""
    d = G.f_degree()
    if d is None:
        raise HomogeneityError("element is not F-homogeneous")
    return d
