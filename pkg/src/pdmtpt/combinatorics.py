"""Integer and rational building blocks for the closed-form constructions.

Everything downstream (superpotential coefficients, resummed potential
coefficients, wavefunction prefactors) is assembled from double factorials,
binomials, one family of four-fold double-factorial sums, a small alternating
binomial polynomial, and classical orthogonal polynomials evaluated by their
three-term recurrences.  The sums are carried out in exact rational
arithmetic (fractions.Fraction) and converted to float only at the call
boundary, so cancellation inside them is never a float problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "double_factorial",
    "binomial",
    "SumIndex",
    "s_sum",
    "f_poly",
    "gegenbauer",
    "jacobi",
]


def double_factorial(n: int) -> int:
    """n!! with the empty-product convention 0!! = (-1)!! = 1.

    Args:
        n: integer >= -1.

    Returns:
        Product n*(n-2)*(n-4)*... down to 1 or 2.
    """
    if n < -1:
        raise ValueError(f"double_factorial undefined for n = {n} < -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class SumIndex:
    """Index bundle (m, k, a, b) for the double-factorial sum s_sum.

    Constraints: 0 <= a <= b <= m, and every double factorial appearing for
    l in [a, b] must have argument >= -1 (so b <= k <= m + a + 1).
    """

    m: int
    k: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if not (0 <= self.a <= self.b <= self.m):
            raise ValueError(f"need 0 <= a <= b <= m, got {self}")
        for l in (self.a, self.b):
            for arg in (2 * self.k - 2 * l - 1, 2 * self.m - 2 * self.k + 2 * l + 2):
                if arg < -1:
                    raise ValueError(
                        f"double factorial argument {arg} < -1 for {self}"
                    )


def s_sum(idx: SumIndex) -> Fraction:
    """Exact value of the four-fold double-factorial sum.

    S = sum_{l=a}^{b} [(2m+1)!!]^2 /
        [(2l+1)!! (2k-2l-1)!! (2m-2l)!! (2m-2k+2l+2)!!]

    An empty range (never produced by SumIndex, which requires a <= b) would
    be 0; callers that need an empty range simply skip the term.
    """
    m, k, a, b = idx.m, idx.k, idx.a, idx.b
    top = double_factorial(2 * m + 1) ** 2
    total = Fraction(0)
    for l in range(a, b + 1):
        den = (
            double_factorial(2 * l + 1)
            * double_factorial(2 * k - 2 * l - 1)
            * double_factorial(2 * m - 2 * l)
            * double_factorial(2 * m - 2 * k + 2 * l + 2)
        )
        total += Fraction(top, den)
    return total


def f_poly(n: int, k: int, z: float) -> float:
    """Alternating binomial polynomial F_n^k(z) = sum_{p=0}^n (-1)^p C(k,p) z^p.

    Defined for k > n so the binomials never truncate.
    """
    if k <= n:
        raise ValueError(f"f_poly requires k > n, got n={n}, k={k}")
    terms = [(-1.0) ** p * binomial(k, p) * z**p for p in range(n + 1)]
    return math.fsum(terms)


def gegenbauer(n: int, lam: float, t):
    """Gegenbauer polynomial C_n^(lam)(t) by the three-term recurrence.

    Accepts scalar or numpy-array t.  Requires lam > 0 (the degenerate
    lam = 0 case never appears in these potentials).
    """
    if n < 0:
        raise ValueError("polynomial degree must be >= 0")
    if lam <= 0.0:
        raise ValueError(f"gegenbauer order must be > 0, got {lam}")
    c_prev = 1.0
    if n == 0:
        return c_prev + 0.0 * t
    c_cur = 2.0 * lam * t
    for j in range(2, n + 1):
        c_prev, c_cur = c_cur, (
            2.0 * (j - 1 + lam) * t * c_cur - (j - 2 + 2.0 * lam) * c_prev
        ) / j
    return c_cur


def jacobi(n: int, a: float, b: float, t):
    """Jacobi polynomial P_n^(a,b)(t) by the three-term recurrence.

    Accepts scalar or numpy-array t.  Requires a > -1 and b > -1.
    """
    if n < 0:
        raise ValueError("polynomial degree must be >= 0")
    if a <= -1.0 or b <= -1.0:
        raise ValueError(f"jacobi parameters out of range: a={a}, b={b}")
    p_prev = 1.0 + 0.0 * t
    if n == 0:
        return p_prev
    p_cur = (a + 1.0) + (a + b + 2.0) * (t - 1.0) / 2.0
    for j in range(2, n + 1):
        c1 = 2.0 * j * (j + a + b) * (2.0 * j + a + b - 2.0)
        c2 = (2.0 * j + a + b - 1.0) * (a * a - b * b)
        c3 = (
            (2.0 * j + a + b - 1.0)
            * (2.0 * j + a + b)
            * (2.0 * j + a + b - 2.0)
        )
        c4 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * (2.0 * j + a + b)
        p_prev, p_cur = p_cur, ((c2 + c3 * t) * p_cur - c4 * p_prev) / c1
    return p_cur
