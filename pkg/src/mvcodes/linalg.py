"""Gaussian elimination over GF(2^t) on small dense matrices of FieldElement."""


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    nrows, ncols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inv()
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def nullspace(rows):
    """A basis of {x : rows @ x = 0}."""
    M, pivots = rref(rows)
    ncols = len(rows[0])
    zero = rows[0][0].ctx.zero
    one = rows[0][0].ctx.one
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        x = [zero] * ncols
        x[free] = one
        for i, c in enumerate(pivots):
            x[c] = -M[i][free]
        basis.append(x)
    return basis


def solve(rows, rhs):
    """One solution of rows @ x = rhs, or None when the system is inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    M, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    zero = rhs[0].ctx.zero
    x = [zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = M[i][ncols]
    return x
