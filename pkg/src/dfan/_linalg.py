"""Dense exact linear algebra over Fraction: rref, solve, nullspace, and a
small phase-1 simplex used to find relative-interior points of rational
cones.  Everything is deterministic (Bland's rule, fixed tie-breaks)."""

from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    a = [list(map(Fraction, r)) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(a)) if a[r][col]), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for r in range(len(a)):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == len(a):
            break
    return [r for r in a if any(r)], pivots


def solve_affine(a_rows, b):
    """One exact solution of A x = b with free variables set to 0, or None."""
    if not a_rows:
        return [] if not any(b) else None
    aug = [list(r) + [bi] for r, bi in zip(a_rows, b)]
    red, pivots = rref(aug)
    ncols = len(a_rows[0])
    for r in red:
        if not any(r[:ncols]) and r[ncols]:
            return None
    x = [Fraction(0)] * ncols
    for r, ncol in zip(red, pivots):
        if ncol < ncols:
            x[ncol] = r[ncols]
    return x


def nullspace(a_rows, ncols=None):
    """Basis of the right nullspace of A (list of Fraction vectors)."""
    if not a_rows:
        if ncols is None:
            return []
        return [
            [Fraction(1) if j == i else Fraction(0) for j in range(ncols)]
            for i in range(ncols)
        ]
    ncols = len(a_rows[0]) if ncols is None else ncols
    red, pivots = rref(a_rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = -r[fc]
        basis.append(v)
    return basis


def in_row_space(red_rows, pivots, v):
    """Is v in the row space described by an rref basis?"""
    w = list(map(Fraction, v))
    for r, pc in zip(red_rows, pivots):
        if w[pc]:
            f = w[pc]
            w = [x - f * y for x, y in zip(w, r)]
    return not any(w)


def reduce_against(red_rows, pivots, v):
    """Remainder of v against an rref row basis."""
    w = list(map(Fraction, v))
    for r, pc in zip(red_rows, pivots):
        if w[pc]:
            f = w[pc]
            w = [x - f * y for x, y in zip(w, r)]
    return w


def _phase1_simplex(a, b):
    """Find x >= 0 with A x = b (b >= 0), or None.  Bland's rule."""
    m = len(a)
    if m == 0:
        return []
    n = len(a[0])
    # tableau with artificial variables: columns 0..n-1 original, n..n+m-1
    # artificial, last column rhs
    t = [list(map(Fraction, a[i])) + [Fraction(0)] * m + [Fraction(b[i])] for i in range(m)]
    for i in range(m):
        t[i][n + i] = Fraction(1)
    basis = list(range(n, n + m))
    # objective row: minimize sum of artificials (reduced costs; basic
    # artificial columns must start at zero)
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        obj = [o - x for o, x in zip(obj, t[i])]
    for i in range(m):
        obj[n + i] += 1
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        ratios = [
            (t[i][n + m] / t[i][enter], basis[i], i)
            for i in range(m)
            if t[i][enter] > 0
        ]
        if not ratios:
            return None  # unbounded phase-1 cannot happen, defensive
        _, _, leave = min(ratios, key=lambda z: (z[0], z[1]))
        pv = t[leave][enter]
        t[leave] = [x / pv for x in t[leave]]
        for i in range(m):
            if i != leave and t[i][enter]:
                f = t[i][enter]
                t[i] = [x - f * y for x, y in zip(t[i], t[leave])]
        if obj[enter]:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, t[leave])]
        basis[leave] = enter
    if obj[n + m] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = t[i][n + m]
    return x


def cone_interior_point(eqs, stricts, k):
    """A rational point L in Q^k with L.v = 0 for v in eqs and L.w >= 1
    for w in stricts (hence > 0; the region is a cone so scaling is free).
    Returns None when the relatively open cone is empty."""
    eq_rows = [list(map(Fraction, v)) for v in eqs]
    ns = nullspace(eq_rows, k)
    if not ns:
        if stricts:
            return None
        return [Fraction(0)] * k
    m = len(ns)
    if not stricts:
        return [Fraction(0)] * k
    g = [[sum(Fraction(w[i]) * nsj[i] for i in range(k)) for nsj in ns] for w in stricts]
    # G y >= 1 with free y: y = u - v, slack s: G u - G v - s = 1
    rows = []
    for gr in g:
        rows.append(gr + [-c for c in gr] + [Fraction(0)] * len(stricts))
    for i in range(len(stricts)):
        rows[i][2 * m + i] = Fraction(-1)
    sol = _phase1_simplex(rows, [Fraction(1)] * len(stricts))
    if sol is None:
        return None
    y = [sol[j] - sol[m + j] for j in range(m)]
    return _combine(ns, y, k)


def _combine(ns, y, k):
    return [sum(y[j] * ns[j][i] for j in range(len(ns))) for i in range(k)]


def to_primitive_int(vec):
    """Scale a rational vector to a primitive integer vector (same ray)."""
    from math import gcd, lcm

    fr = [Fraction(x) for x in vec]
    if not any(fr):
        return tuple(0 for _ in fr)
    den = 1
    for f in fr:
        den = lcm(den, f.denominator)
    ints = [int(f * den) for f in fr]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return tuple(c // g for c in ints)
