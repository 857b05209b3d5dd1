"""Independent reference computations used as test oracles.

None of these share code with the package: they are deliberately naive.
"""

import math

import numpy as np


def normal_equations_solve(A, b):
    """Normal-equations answer for a full-rank system.

    Tall: (A^T A) x = A^T b.  Wide: x = A^T (A A^T)^{-1} b, the minimum-norm solution.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if A.shape[0] >= A.shape[1]:
        return np.linalg.solve(A.T @ A, A.T @ b)
    return A.T @ np.linalg.solve(A @ A.T, b)


def newton_interpolate(nodes, values, x):
    """Newton divided-difference form of the interpolating polynomial, evaluated by Horner."""
    xs = [float(v) for v in nodes]
    coef = [float(v) for v in values]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    out = []
    for t in np.atleast_1d(x):
        acc = coef[-1]
        for i in range(n - 2, -1, -1):
            acc = acc * (t - xs[i]) + coef[i]
        out.append(acc)
    return np.array(out)


def chebyshev_lobatto_weights(M):
    """Closed-form barycentric weights for cos(j pi/(M-1)) points, ascending order."""
    w = np.array([(-1.0) ** j for j in range(M)])
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def central_difference(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    return (f(x + h) - f(x - h)) / (2 * h)


def runge_chebyshev_slope():
    """log10 of the geometric rate of Chebyshev interpolation of 1/(1+25x^2)."""
    return -math.log10((1 + math.sqrt(26)) / 5)


def plain_logistic(z):
    return 1.0 / (1.0 + math.exp(-z))


def lagrange_basis(nodes, t):
    """Values l_j(t) of the Lagrange basis polynomials, by direct products."""
    x = np.asarray(nodes, dtype=float)
    out = np.ones(x.size)
    for j in range(x.size):
        for k in range(x.size):
            if k != j:
                out[j] *= (t - x[k]) / (x[j] - x[k])
    return out
