"""Inverse coefficients of t - t^n + t^(2n-1) by Lagrange inversion.

[t^m] h = (1/m) [y^(m-1)] (1 - y^(n-1) + y^(2n-2))^(-m), expanded with
exact integers. Prints the first negative exponent for each n, and the
Euler characteristics of the anti-associative minimal model.
"""

import sys
from fractions import Fraction
from math import comb


def inverse_coeff(n, m):
    # (1 - u + u^2)^(-m) with u = y^(n-1); need the u^k term, k = (m-1)/(n-1).
    if (m - 1) % (n - 1):
        return 0
    k = (m - 1) // (n - 1)
    # (1 - u + u^2)^(-m) = sum_j C(m+j-1, j) (u - u^2)^j
    total = 0
    for j in range(k + 1):
        # (u - u^2)^j = u^j sum_i C(j, i) (-u)^i, need j + i = k
        i = k - j
        if 0 <= i <= j:
            total += comb(m + j - 1, j) * comb(j, i) * (-1) ** i
    assert total % m == 0
    return total // m


def first_negative(n, bound):
    for m in range(1, bound + 1):
        if inverse_coeff(n, m) < 0:
            return m
    return None


def generic_inverse(f, order):
    """Inverse of f (dict exponent -> coefficient, f = t + ...) by fixed point."""
    h = {1: Fraction(1)}
    for _ in range(order):
        # h <- h - (f(h) - t)
        comp = compose(f, h, order)
        comp[1] = comp.get(1, 0) - 1
        h = {e: h.get(e, 0) - comp.get(e, 0) for e in set(h) | set(comp)}
        h = {e: c for e, c in h.items() if c != 0}
    return h


def mul(a, b, order):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            if e1 + e2 <= order:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return out


def compose(f, g, order):
    out = {}
    power = {0: Fraction(1)}
    for e in range(1, order + 1):
        power = mul(power, g, order)
        c = f.get(e, 0)
        if c:
            for k, v in power.items():
                out[k] = out.get(k, 0) + c * v
    return out


def main():
    for n, bound in [(2, 9), (3, 13), (4, 25), (5, 60), (6, 170), (7, 1200)]:
        print(n, bound, first_negative(n, bound))
    for n, order in [(2, 9), (3, 13), (4, 25)]:
        print(n, [inverse_coeff(n, m) for m in range(1, order + 1)])
    anti = {1: Fraction(1), 2: Fraction(-1), 3: Fraction(1)}
    h = generic_inverse(anti, 9)
    print("euler", [int((-1) ** a * h.get(a, 0)) for a in range(2, 10)])
    if len(sys.argv) > 1:
        print(8, int(sys.argv[1]), first_negative(8, int(sys.argv[1])))


if __name__ == "__main__":
    main()
