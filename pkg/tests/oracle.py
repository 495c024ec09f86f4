"""Brute-force reference computations that share no code with ``critmap``.

Everything here works on plain ``Fraction`` values.  Derivatives of the
polynomial functions involved are taken exactly by Lagrange interpolation:
a polynomial of degree <= d in one variable is determined by d + 1 samples,
and the derivative of the interpolant at the base point is then exact.
"""

from fractions import Fraction
from itertools import permutations


def leibniz_det(rows):
    """Determinant as the signed sum over all permutations."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        total += term
    return total


def exact_derivative(func, t0, degree):
    """d/dt func at t0, for func a polynomial in t of degree <= ``degree``."""
    nodes = [Fraction(t0) + k for k in range(degree + 1)]
    values = [func(t) for t in nodes]
    # derivative of the Lagrange basis polynomial L_k at nodes[0]
    total = Fraction(0)
    x0 = nodes[0]
    for k, xk in enumerate(nodes):
        denom = Fraction(1)
        for m, xm in enumerate(nodes):
            if m != k:
                denom *= xk - xm
        # L_k'(x0) = sum_{m != k} prod_{l != k, m} (x0 - x_l) / denom
        deriv = Fraction(0)
        for m in range(len(nodes)):
            if m == k:
                continue
            prod_ = Fraction(1)
            for l, xl in enumerate(nodes):
                if l != k and l != m:
                    prod_ *= x0 - xl
            deriv += prod_
        total += values[k] * deriv / denom
    return total


def poly_value(roots, mults, x):
    out = Fraction(1)
    for a, k in zip(roots, mults):
        out *= (x - a) ** k
    return out


def critical_value(roots, mults, i):
    """f'(a_i) for f = prod (x - a_m)^{k_m}, by exact differentiation in x."""
    n = sum(mults)
    return exact_derivative(lambda x: poly_value(roots, mults, x), roots[i], n)


def jacobian_oracle(roots, mults=None):
    """Matrix of d/da_j f'(a_i) at the given rational roots."""
    roots = [Fraction(a) for a in roots]
    if mults is None:
        mults = [1] * len(roots)
    n = sum(mults)
    r = len(roots)
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            def shifted(t, i=i, j=j):
                moved = list(roots)
                moved[j] = t
                return critical_value(moved, mults, i)
            row.append(exact_derivative(shifted, roots[j], n))
        out.append(row)
    return out


def rank_oracle(rows):
    """Rank as the size of the largest nonzero minor (brute force over subsets)."""
    from itertools import combinations

    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    for size in range(min(nr, nc), 0, -1):
        for rs in combinations(range(nr), size):
            for cs in combinations(range(nc), size):
                if leibniz_det([[rows[i][j] for j in cs] for i in rs]):
                    return size
    return 0
