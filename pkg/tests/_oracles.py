"""Independent test oracles.

These deliberately avoid the package's own algorithms: the resultant oracle
expands a Sylvester determinant, the root oracle scans signs on a fine grid,
and the group-order oracle enumerates matrices directly over Z/m. Slow and
simple on purpose.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def sylvester_resultant(a: list[Fraction], b: list[Fraction]) -> Fraction:
    """Resultant via Laplace expansion of the Sylvester matrix.

    Coefficient lists are constant-term first, nonzero leading coefficient.
    """
    m = len(a) - 1
    n = len(b) - 1
    if m < 0 or n < 0:
        raise ValueError("nonzero polynomials only")
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    arev = list(reversed(a))  # leading first for the classical layout
    brev = list(reversed(b))
    for i in range(n):
        rows.append([Fraction(0)] * i + arev + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + brev + [Fraction(0)] * (size - n - 1 - i))

    def det(mat: list[list[Fraction]]) -> Fraction:
        k = len(mat)
        if k == 1:
            return mat[0][0]
        total = Fraction(0)
        for col in range(k):
            if mat[0][col] == 0:
                continue
            minor = [row[:col] + row[col + 1:] for row in mat[1:]]
            term = mat[0][col] * det(minor)
            total += term if col % 2 == 0 else -term
        return total

    return det(rows)


def sign_scan_roots(
    coeffs: list[Fraction], lo: Fraction, hi: Fraction, step: Fraction
) -> list[tuple[Fraction, Fraction]]:
    """Bracket every sign change of the polynomial on a uniform grid.

    Exact rational evaluation; a grid point that is itself a root becomes a
    degenerate bracket. Misses nothing as long as the step is below the
    minimal root gap and roots are simple.
    """

    def value(x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    out = []
    x = lo
    prev_x, prev_v = lo, value(lo)
    if prev_v == 0:
        out.append((lo, lo))
    while x < hi:
        x = x + step
        v = value(x)
        if v == 0:
            out.append((x, x))
        elif (prev_v < 0 < v) or (v < 0 < prev_v):
            out.append((prev_x, x))
        prev_x, prev_v = x, v
    return out


def count_matrices_with_det_one(modulus: int, size: int) -> int:
    """|SL_size(Z/modulus)| by brute enumeration (tiny cases only)."""
    cells = size * size
    count = 0
    for entries in itertools.product(range(modulus), repeat=cells):
        mat = [list(entries[i * size:(i + 1) * size]) for i in range(size)]
        if _det_mod(mat, modulus) == 1 % modulus:
            count += 1
    return count


def _det_mod(mat: list[list[int]], m: int) -> int:
    k = len(mat)
    if k == 1:
        return mat[0][0] % m
    total = 0
    for col in range(k):
        minor = [row[:col] + row[col + 1:] for row in mat[1:]]
        term = mat[0][col] * _det_mod(minor, m)
        total += term if col % 2 == 0 else -term
    return total % m
