"""Independent reference computations used to freeze expected values.

Nothing here imports the code under test beyond plain data containers.
"""
from itertools import product

import sympy


def to_sympy(x):
    return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(
        x.im.numerator, x.im.denominator
    )


def dense_of(linear_map):
    return sympy.Matrix(linear_map.rows, linear_map.cols, lambda i, j: to_sympy(linear_map[i, j]))


def kron(a, b):
    """Kronecker product of nested lists straight from the index formula."""
    ra, ca, rb, cb = len(a), len(a[0]), len(b), len(b[0])
    return [[a[i // rb][j // cb] * b[i % rb][j % cb] for j in range(ca * cb)] for i in range(ra * rb)]


def comultiplication_columns(table):
    """{z: set of (x, y) with x*y = z} by enumeration."""
    n = len(table)
    out = {z: set() for z in range(n)}
    for x, y in product(range(n), repeat=2):
        out[table[x][y]].add((x, y))
    return out


def haar_by_sympy(table):
    """Solve both invariance systems and h(1) = 1 with sympy's linsolve."""
    n = len(table)
    h = sympy.symbols(f"h0:{n}")
    eqs = []
    for z in range(n):
        for y in range(n):
            eqs.append(sum(h[x] for x in range(n) if table[x][y] == z) - h[z])
        for x in range(n):
            eqs.append(sum(h[y] for y in range(n) if table[x][y] == z) - h[z])
    eqs.append(sum(h) - 1)
    sol = sympy.linsolve(eqs, h)
    return [tuple(s) for s in sol]


def density_ranks(table):
    """Ranks of the two spanning families for C(S), using sympy."""
    n = len(table)
    left, right = [], []
    for a, b in product(range(n), repeat=2):
        # Delta(delta_b)(delta_a (x) 1) is the indicator of {(x, y): xy = b, x = a}
        left.append([1 if (x == a and table[x][y] == b) else 0 for x, y in product(range(n), repeat=2)])
        right.append([1 if (y == a and table[x][y] == b) else 0 for x, y in product(range(n), repeat=2)])
    return sympy.Matrix(left).rank(), sympy.Matrix(right).rank()
