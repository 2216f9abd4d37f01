"""Dense exact linear algebra over any of the scalar domains.

Matrices are lists of row lists; vectors are lists.  Everything goes through
the domain object for zero tests and inversion, so the same elimination code
serves plain fields and truncated Novikov coefficients.  When entries carry a
valuation (Novikov mode) pivots are chosen with minimal valuation, which keeps
the precision loss of the elimination as small as possible.
"""

from __future__ import annotations

Matrix = list
Vector = list


def zeros(dom, rows: int, cols: int) -> Matrix:
    return [[dom.zero for _ in range(cols)] for _ in range(rows)]


def identity(dom, n: int) -> Matrix:
    out = zeros(dom, n, n)
    for i in range(n):
        out[i][i] = dom.one
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def mat_mul(dom, a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(dom, rows, cols)
    for i in range(rows):
        for k in range(inner):
            x = a[i][k]
            if dom.is_zero(x):
                continue
            for j in range(cols):
                out[i][j] = out[i][j] + x * b[k][j]
    return out


def mat_vec(dom, a: Matrix, v: Vector) -> Vector:
    out = []
    for row in a:
        acc = dom.zero
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return out


def mat_pow(dom, a: Matrix, n: int) -> Matrix:
    result = identity(dom, len(a))
    base = [row[:] for row in a]
    while n:
        if n & 1:
            result = mat_mul(dom, result, base)
        base = mat_mul(dom, base, base)
        n >>= 1
    return result


def mat_eq(dom, a: Matrix, b: Matrix) -> bool:
    return all(dom.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _best_pivot(dom, rows: list, col: int, start: int) -> int | None:
    best, best_val = None, None
    for i in range(start, len(rows)):
        x = rows[i][col]
        if dom.is_zero(x):
            continue
        val_fn = getattr(x, "val", None)
        if not callable(val_fn):
            return i
        v = val_fn()
        if best is None or v < best_val:
            best, best_val = i, v
    return best


def rref(dom, a: Matrix) -> tuple[Matrix, list]:
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [row[:] for row in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = _best_pivot(dom, m, c, r)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = dom.inv(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not dom.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(dom, a: Matrix) -> int:
    _, pivots = rref(dom, a)
    return len(pivots)


def kernel_basis(dom, a: Matrix) -> list:
    """Basis of the right kernel of a (list of column vectors as lists)."""
    ncols = len(a[0]) if a else 0
    red, pivots = rref(dom, a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [dom.zero] * ncols
        v[fc] = dom.one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(dom, a: Matrix, b: Vector) -> Vector | None:
    """One solution of a x = b, or None if inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    aug = [a[i][:] + [b[i]] for i in range(nrows)]
    red, pivots = rref(dom, aug)
    for r in range(len(pivots)):
        if pivots[r] == ncols:
            return None
    for r in range(len(pivots), nrows):
        if not dom.is_zero(red[r][ncols]):
            return None
    x = [dom.zero] * ncols
    for r, pc in enumerate(pivots):
        if pc < ncols:
            x[pc] = red[r][ncols]
    return x


def solve_matrix(dom, a: Matrix, b: Matrix) -> Matrix | None:
    """Solve a X = b column by column; None if any column is inconsistent."""
    cols = []
    for j in range(len(b[0])):
        col = solve(dom, a, [row[j] for row in b])
        if col is None:
            return None
        cols.append(col)
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(a[0]))]


def inverse(dom, a: Matrix) -> Matrix:
    n = len(a)
    aug = [a[i][:] + identity(dom, n)[i] for i in range(n)]
    red, pivots = rref(dom, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red[:n]]


def columns_to_matrix(cols: list) -> Matrix:
    return [[col[i] for col in cols] for i in range(len(cols[0]))]


def coords_in_basis(dom, basis: list, v: Vector) -> Vector | None:
    """Coordinates of v in the span of the given vectors, or None."""
    return solve(dom, columns_to_matrix(basis), v)


def charpoly(dom, a: Matrix) -> list:
    """Coefficients of det(xI - a), ascending degree (Samuelson-Berkowitz).

    Division free, so no precision is lost on Novikov entries.
    """
    n = len(a)
    poly = [dom.one]  # descending coefficients, char poly of the empty matrix
    for k in range(1, n + 1):
        diag = a[k - 1][k - 1]
        row = a[k - 1][: k - 1]
        col = [a[i][k - 1] for i in range(k - 1)]
        sub = [r[: k - 1] for r in a[: k - 1]]
        vec = [dom.one, -diag]
        w = col
        for _ in range(k - 1):
            acc = dom.zero
            for x, y in zip(row, w):
                acc = acc + x * y
            vec.append(-acc)
            w = mat_vec(dom, sub, w)
        new = []
        for i in range(k + 1):
            acc = dom.zero
            for j in range(len(poly)):
                if 0 <= i - j < len(vec):
                    acc = acc + vec[i - j] * poly[j]
            new.append(acc)
        poly = new
    poly.reverse()
    return poly
