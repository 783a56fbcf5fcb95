from fractions import Fraction

import pytest

LEHMER = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]
LEHMER_MAX_MODULUS = 1.17628081825992


def sylvester_resultant(f, g):
    """Resultant as a Sylvester determinant; Fraction Gaussian elimination.

    ``f`` and ``g`` are integer coefficient lists, highest degree first.
    """
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - n - 1 - i))
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, size):
            k = a[r][c] / a[c][c]
            if k:
                for j in range(c, size):
                    a[r][j] -= k * a[c][j]
    assert det.denominator == 1
    return int(det)


@pytest.fixture
def lehmer():
    return list(LEHMER)
