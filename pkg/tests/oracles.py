"""Independent dense linear algebra used as a reference in tests."""
from fractions import Fraction


def dense_rank(mat, modulus=None):
    """Gaussian elimination over Q (Fractions) or GF(modulus)."""
    rows = [[Fraction(x) if modulus is None else x % modulus for x in r] for r in mat]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = 1 / pr[c] if modulus is None else pow(pr[c], -1, modulus)
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b if modulus is None else (a - f * b) % modulus for a, b in zip(rows[i], pr)]
        rank += 1
    return rank
