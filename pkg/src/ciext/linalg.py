"""Dense exact linear algebra over a coefficient field (Gaussian elimination)."""


def rref(rows, field, ncols=None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)`` (input untouched)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(x, inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field, ncols=None):
    return len(rref(rows, field, ncols)[1])


def nullspace(rows, field, ncols):
    """Basis of ``{x : rows · x = 0}`` as a list of vectors of length ``ncols``."""
    red, pivots = rref(rows, field, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [field.zero] * ncols
        v[fcol] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = field.neg(row[fcol])
        basis.append(v)
    return basis


def solve(rows, rhs, field, ncols):
    """One solution ``x`` of ``rows · x = rhs``, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field, ncols + 1)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def in_span(vectors, v, field):
    """True if ``v`` is a linear combination of ``vectors``."""
    if not any(v):
        return True
    if not vectors:
        return False
    n = len(v)
    return rank(vectors + [v], field, n) == rank(vectors, field, n)
