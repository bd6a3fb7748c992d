"""Gaussian elimination over an exact field.

Vectors are lists of field elements; ``field`` supplies ``zero`` and ``one``
and elements support ``+ - *``, ``inverse()`` and truthiness.  Works for
F_p and F_p(t) alike.
"""


def rref(rows, field):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        row = [v * inv for v in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], row)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field):
    return len(rref(rows, field)[0])


def nullspace(rows, ncols, field):
    """Basis of {v : rows . v = 0}, one vector per free column (free value 1)."""
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs, field):
    """Solve rows . v = rhs.

    Returns (solution, kernel_dim) with free variables set to zero, or
    (None, kernel_dim) when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    kernel_dim = ncols - sum(1 for c in pivots if c < ncols)
    if ncols in pivots:
        return None, kernel_dim
    v = [field.zero] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v, kernel_dim


def in_span(basis_rref, pivots, vec):
    """Membership test against an rref basis."""
    v = list(vec)
    for row, pc in zip(basis_rref, pivots):
        if v[pc]:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)
