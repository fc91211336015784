"""Exact integer and rational linear algebra.

Matrices are plain lists of rows.  Integer matrices hold Python ints,
rational ones hold :class:`fractions.Fraction`.  Nothing here ever touches
floating point.
"""

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

IntMatrix = List[List[int]]
Vector = List[int]


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and strings like ``"-2/3"`` into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> IntMatrix:
    return [[0] * c for _ in range(r)]


def transpose(A: Sequence[Sequence]) -> list:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v: Sequence) -> Vector:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [as_fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = vec_gcd(ints)
    if g == 0:
        return ints
    return [x // g for x in ints]


def determinant(A: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(A)
    M = [[as_fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def rref(A: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    M = [[as_fraction(x) for x in row] for row in A]
    if not M:
        return [], []
    rows, cols = len(M), len(M[0])
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A: Sequence[Sequence], ncols: int = None) -> List[List[Fraction]]:
    """Rational basis of {x : A x = 0}."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, piv = rref(A)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence):
    """One rational solution of A x = b, or None when inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(piv):
        x[p] = R[i][ncols]
    return x


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(A: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U*A*V = D diagonal, d_i | d_{i+1}, U and V unimodular.

    Pivots are chosen as the entry of smallest absolute value in the
    remaining block, which keeps intermediate entries small.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)

    t = 0
    while t < min(m, n):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        _swap_rows(D, t, pi)
        _swap_rows(U, t, pi)
        _swap_cols(D, t, pj)
        _swap_cols(V, t, pj)
        done = True
        for i in range(t + 1, m):
            q = D[i][t] // D[t][t]
            if q:
                D[i] = [a - q * b for a, b in zip(D[i], D[t])]
                U[i] = [a - q * b for a, b in zip(U[i], U[t])]
            if D[i][t]:
                done = False
        for j in range(t + 1, n):
            q = D[t][j] // D[t][t]
            if q:
                for row in D:
                    row[j] -= q * row[t]
                for row in V:
                    row[j] -= q * row[t]
            if D[t][j]:
                done = False
        if not done:
            continue
        # row and column t are clear; enforce divisibility on the rest
        bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                    if D[i][j] % D[t][t]), None)
        if bad is not None:
            i = bad[0]
            D[t] = [a + b for a, b in zip(D[t], D[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
            continue
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def hermite_normal_form(A: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: returns (H, U) with U*A = H.

    H is in row echelon form, pivots are positive and the entries above a
    pivot lie in [0, pivot).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [[int(x) for x in row] for row in A]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [(abs(H[i][c]), i) for i in range(r, m) if H[i][c]]
            if not rows:
                break
            _, p = min(rows)
            _swap_rows(H, r, p)
            _swap_rows(U, r, p)
            finished = True
            for i in range(r + 1, m):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                if H[i][c]:
                    finished = False
            if finished:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
                U[r] = [-x for x in U[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
            r += 1
    return H, U


def kernel_lattice(A: Sequence[Sequence[int]], ncols: int = None) -> List[Vector]:
    """Basis of the integer kernel lattice {v in Z^n : A v = 0}.

    The basis is read off from the column transform of the Smith form, so
    it spans a saturated lattice; it is then put in Hermite form so the
    output does not depend on pivoting details.
    """
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    D, _, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    basis = [[V[i][j] for i in range(ncols)] for j in range(r, ncols)]
    if not basis:
        return []
    H, _ = hermite_normal_form(basis)
    return [row for row in H if any(row)]


def lattice_index_in_saturation(vectors: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``vectors`` inside its saturation.

    Equals the product of the nonzero Smith invariants; 1 means saturated.
    """
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return 1
    D, _, _ = smith_normal_form(vecs)
    idx = 1
    for i in range(min(len(D), len(D[0]))):
        if D[i][i]:
            idx *= D[i][i]
    return idx


def is_unimodular(U: Sequence[Sequence[int]]) -> bool:
    return len(U) == len(U[0]) and abs(determinant(U)) == 1 if U else True
