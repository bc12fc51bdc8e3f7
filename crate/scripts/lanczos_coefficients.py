"""Regenerate the Lanczos coefficients used by crates/core/src/gamma.rs.

Godfrey's matrix construction (coefficients = D * B * C * F), evaluated with
mpmath at 50 digits. The printed values p_k fit

    Gamma(x + 1) = sqrt(2 pi) t^(x + 1/2) e^(-t) [p_0 + sum_k p_k / (x + k)],
    t = x + g + 1/2.

Usage: python3 scripts/lanczos_coefficients.py [g] [n]   (defaults: 7 9)
"""
import sys

from mpmath import mp, mpf, binomial, exp, factorial, gamma, matrix, nstr, pi, sqrt

mp.dps = 50


def coefficients(g, n):
    g = mpf(g)
    B = matrix(n, n)
    C = matrix(n, n)
    D = matrix(n, n)
    F = matrix(n, 1)
    for i in range(n):
        for j in range(n):
            if i == 0:
                B[i, j] = 1
            elif j >= i:
                B[i, j] = (-1) ** (j - i) * binomial(i + j - 1, j - i)
    C[0, 0] = mpf(1) / 2
    for i in range(1, n):
        for j in range(i + 1):
            C[i, j] = (-1) ** (i - j) * sum(
                binomial(2 * i, 2 * k) * binomial(k, k + j - i) for k in range(i + 1)
            )
    D[0, 0] = 1
    if n > 1:
        D[1, 1] = -1
    for i in range(2, n):
        D[i, i] = D[i - 1, i - 1] * 2 * (2 * i - 1) / (i - 1)
    half = mpf(1) / 2
    for i in range(n):
        F[i] = (
            factorial(2 * i)
            * exp(i + g + half)
            / (factorial(i) * mpf(2) ** (2 * i - 1) * (i + g + half) ** (i + half))
        )
    a = D * B * C * F
    return [a[i] / sqrt(2 * pi) for i in range(n)]


def max_rel_error(p, g):
    worst = mpf(0)
    for j in range(1, 200):
        x = mpf(j) / 20
        s = p[0] + sum(p[k] / (x + k) for k in range(1, len(p)))
        t = x + g + mpf(1) / 2
        approx = sqrt(2 * pi) * t ** (x + mpf(1) / 2) * exp(-t) * s
        worst = max(worst, abs(approx / gamma(x + 1) - 1))
    return worst


if __name__ == "__main__":
    g = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 9
    p = coefficients(g, n)
    for c in p:
        print(nstr(c, 20))
    print("# max relative error of Gamma(x + 1), x in (0, 10):", nstr(max_rel_error(p, g), 3))
