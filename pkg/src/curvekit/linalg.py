"""Exact dense linear algebra over a field (rationals or number-field elements)."""

from __future__ import annotations

import flint

from ._upoly import Q

_MPQ = type(Q(0))


def _coerce(rows):
    return [[Q(v) if isinstance(v, (int, float)) else v for v in r] for r in rows]


def _all_rational(m) -> bool:
    return all(type(v) is _MPQ for r in m for v in r)


def _flint_mat(m):
    return flint.fmpq_mat(len(m), len(m[0]), [flint.fmpq(int(v.numerator), int(v.denominator)) for r in m for v in r])


def _flint_rref(m, ncols):
    """rref of a rational matrix via FLINT, or None when a pivot lands past ncols
    (the full-width form would then differ from the restricted one)."""
    R, rk = _flint_mat(m).rref()
    tab = R.table()
    pivots, out = [], []
    for i in range(rk):
        row = tab[i]
        c = next(j for j, v in enumerate(row) if v != 0)
        if c >= ncols:
            return None
        pivots.append(c)
        out.append([Q(int(v.p), int(v.q)) for v in row])
    return out, pivots


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    m = _coerce(rows)
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    if len(m) * len(m[0]) > 64 and _all_rational(m):
        res = _flint_rref(m, ncols)
        if res is not None:
            return res
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        row_r = m[r]
        nz = [j for j in range(c, len(row_r)) if row_r[j]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row_i = m[i]
                for j in nz:
                    row_i[j] = row_i[j] - f * row_r[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols: int | None = None) -> int:
    if not rows:
        return 0
    m = _coerce(rows)
    if ncols is not None:
        m = [r[:ncols] for r in m]
    if len(m) * len(m[0]) > 64 and _all_rational(m):
        return _flint_mat(m).rank()
    return len(echelon_rank_rows(rows, ncols))


def echelon_rank_rows(rows, ncols=None):
    """Forward elimination only; returns the nonzero echelon rows."""
    m = _coerce(rows)
    if not m:
        return []
    ncols = len(m[0]) if ncols is None else ncols
    out = []
    for c in range(ncols):
        piv = None
        for i, row in enumerate(m):
            if row[c]:
                piv = i
                break
        if piv is None:
            continue
        prow = m.pop(piv)
        inv = 1 / prow[c]
        for row in m:
            if row[c]:
                f = row[c] * inv
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = row[j] - f * prow[j]
        out.append(prow)
        if not m:
            break
    return out


def nullspace(rows, ncols: int):
    """Basis of {v : A v = 0}."""
    if not rows:
        return [[Q(1) if i == j else Q(0) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Q(0)] * ncols
        v[fc] = Q(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of A v = rhs or None when inconsistent; also returns the kernel basis."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None, None
    v = [Q(0)] * ncols
    for i, pc in enumerate(pivots):
        v[pc] = red[i][ncols]
    kernel = nullspace(rows, ncols)
    return v, kernel


def det(rows):
    m = _coerce(rows)
    n = len(m)
    d = Q(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Q(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d = d * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                for j in range(c, n):
                    m[i][j] = m[i][j] - f * m[c][j]
    return d


def inverse(rows):
    n = len(rows)
    aug = [list(r) + [Q(1) if i == j else Q(0) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Q(0)) for j in range(len(b[0]))] for i in range(len(a))]


def matvec(a, v):
    return [sum((a[i][k] * v[k] for k in range(len(v))), Q(0) * 0) for i in range(len(a))]
