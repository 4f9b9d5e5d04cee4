"""Small exact linear algebra helpers over Fraction.

Used for rational ranks (irrationality tests, oracle checks) and for
solving the square systems behind conjugated characters.  Everything is
dense and list-based; matrices at this scale are tiny.
"""

from __future__ import annotations

from fractions import Fraction


def frac_matrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rank(rows) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    m = frac_matrix(rows)
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    return r


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def matmul(a, b) -> list[list[Fraction]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix shape mismatch")
    return [
        [sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)]
        for row in a
    ]


def matvec(a, v) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def invert(rows) -> list[list[Fraction]]:
    """Inverse of a square rational matrix; raises ValueError if singular."""
    m = frac_matrix(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    aug = [row + ident_row for row, ident_row in zip(m, identity(n))]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def solve_transform(domain_cols, image_cols):
    """Rational matrix M with M * domain_cols[j] = image_cols[j] for all j.

    domain_cols must span the full column space (their matrix has full row
    rank); raises ValueError otherwise.  Used to express a group map on a
    finite abelianization in matrix form from its values on generators.
    """
    if not domain_cols:
        return []
    dim = len(domain_cols[0])
    if dim == 0:
        return []
    # Pick dim columns of the domain forming an invertible square matrix.
    chosen: list[int] = []
    probe: list[list[Fraction]] = []
    for j, col in enumerate(domain_cols):
        trial = probe + [list(map(Fraction, col))]
        if rank(trial) == len(trial):
            probe = trial
            chosen.append(j)
            if len(chosen) == dim:
                break
    if len(chosen) != dim:
        raise ValueError("domain columns do not span the space")
    d_sq = [[Fraction(domain_cols[j][i]) for j in chosen] for i in range(dim)]
    out_dim = len(image_cols[0])
    i_rect = [[Fraction(image_cols[j][i]) for j in chosen] for i in range(out_dim)]
    return matmul(i_rect, invert(d_sq))
