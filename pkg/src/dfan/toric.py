"""Basic rational cones in the nonnegative dual quadrant.

A basic cone is given by k integer row forms L_1, ..., L_k with
nonnegative entries and determinant 1 after reordering; the columns
C_1, ..., C_k of the inverse matrix span the dual-cone monoid freely, and
W_i = U^(C_i) are the toric coordinates.  Non-basic simplicial cones are
refined into basic subcones by stellar subdivision."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ConeError
from .filtration import normalize_rays


def _det(rows):
    k = len(rows)
    if k == 1:
        return rows[0][0]
    total = 0
    for j in range(k):
        minor = [r[:j] + r[j + 1 :] for r in [list(x) for x in rows[1:]]]
        total += (-1) ** j * rows[0][j] * _det([tuple(m) for m in minor])
    return total


def _inverse_unimodular(rows):
    """Exact inverse of an integer matrix with det +-1 (integer entries)."""
    k = len(rows)
    d = _det(rows)
    inv = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            minor = [
                tuple(rows[a][b] for b in range(k) if b != i)
                for a in range(k)
                if a != j
            ]
            cof = (-1) ** (i + j) * (_det(minor) if minor else 1)
            inv[i][j] = cof // d if d in (1, -1) else Fraction(cof, d)
    return tuple(tuple(r) for r in inv)


class BasicCone:
    """Rows L_i (forms, det = 1), inverse columns C_j, toric data."""

    __slots__ = ("rows", "inverse", "columns")

    def __init__(self, rows):
        rows = tuple(tuple(int(c) for c in r) for r in rows)
        k = len(rows)
        if any(len(r) != k for r in rows):
            raise ConeError("need k forms on Q^k")
        if any(c < 0 for r in rows for c in r):
            raise ConeError("cone rays must have nonnegative entries")
        d = _det(rows)
        if d == -1:
            rows = rows[:-2] + (rows[-1], rows[-2]) if k >= 2 else rows
            d = _det(rows)
        if d != 1:
            raise ConeError(f"not basic: determinant {d} != 1")
        self.rows = rows
        self.inverse = _inverse_unimodular(rows)
        self.columns = tuple(
            tuple(self.inverse[i][j] for i in range(k)) for j in range(k)
        )

    @property
    def k(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, BasicCone) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"BasicCone({list(map(list, self.rows))})"


def make_basic_cone(rows) -> BasicCone:
    """Validate and orient k integer forms into a basic cone."""
    return BasicCone(rows)


def orthant_cone(k: int) -> BasicCone:
    return BasicCone(tuple(tuple(1 if j == i else 0 for j in range(k)) for i in range(k)))


def dual_membership(a, gamma: BasicCone) -> bool:
    """a in the dual cone iff L_i(a) >= 0 for every row."""
    return all(sum(c * x for c, x in zip(row, a)) >= 0 for row in gamma.rows)


def w_to_u(a, gamma: BasicCone):
    """Exponent of u representing W^a: the matrix product L' a."""
    k = gamma.k
    return tuple(sum(gamma.inverse[i][j] * a[j] for j in range(k)) for i in range(k))


def u_to_w(sigma, gamma: BasicCone):
    """Exponent of W representing u^sigma: the matrix product L sigma."""
    k = gamma.k
    return tuple(sum(gamma.rows[i][j] * sigma[j] for j in range(k)) for i in range(k))


def _primitive(v):
    g = 0
    for c in v:
        g = gcd(g, abs(c))
    return tuple(c // g for c in v) if g else v


def _solve_membership(rays, v):
    """Barycentric coordinates of v in the simplicial cone spanned by rays
    (rows as points), or None if v is outside."""
    k = len(rays)
    # solve lambda . rays = v exactly
    a = [[Fraction(rays[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(k)]
    # gaussian elimination
    cols = list(range(k))
    row = 0
    for col in cols:
        piv = next((r for r in range(row, k) if a[r][col]), None)
        if piv is None:
            return None
        a[row], a[piv] = a[piv], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for r in range(k):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        row += 1
    lam = [a[j][k] for j in range(k)]
    if any(l < 0 for l in lam):
        return None
    return lam


def refine_to_basic(rays) -> tuple[BasicCone, ...]:
    """Refine a full-dimensional simplicial cone (given by its ray forms)
    into basic subcones by iterated stellar subdivision at the
    lexicographically smallest primitive vector reducing the determinant."""
    rays = [tuple(r) for r in normalize_rays(rays)]
    k = len(rays)
    if any(len(r) != k for r in rays):
        raise ConeError("refinement needs a full-dimensional simplicial cone")
    d = abs(_det(tuple(rays)))
    if d == 0:
        raise ConeError("rays are linearly dependent")
    if d == 1:
        return (BasicCone(_orient(rays)),)
    # candidate subdivision points: nonzero lattice points of the half-open
    # fundamental parallelepiped, lexicographically smallest primitive first
    candidates = set()
    bound = max(abs(c) for r in rays for c in r) * k
    from itertools import product

    for point in product(range(bound + 1), repeat=k):
        if all(c == 0 for c in point):
            continue
        lam = _solve_membership(tuple(rays), point)
        if lam is None or any(l >= 1 for l in lam):
            continue
        candidates.add(_primitive(point))
    for v in sorted(candidates):
        lam = _solve_membership(tuple(rays), v)
        if lam is None:
            continue
        pieces = []
        ok = True
        for i in range(k):
            if lam[i] == 0:
                continue
            sub = rays[:i] + [v] + rays[i + 1 :]
            dsub = abs(_det(tuple(sub)))
            if dsub == 0 or dsub >= d:
                ok = False
                break
            pieces.append(sub)
        if ok and pieces:
            out = []
            for sub in pieces:
                out.extend(refine_to_basic(sub))
            return tuple(out)
    raise ConeError("stellar refinement failed to reduce the determinant")


def _orient(rays):
    rows = tuple(tuple(r) for r in rays)
    if _det(rows) == -1 and len(rows) >= 2:
        rows = rows[:-2] + (rows[-1], rows[-2])
    return rows
