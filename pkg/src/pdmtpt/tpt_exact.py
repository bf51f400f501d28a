"""Exactly solvable deformed trigonometric Poschl-Teller baselines.

Two families, both with every bound state in closed form:

* one-parameter: V = A(A-1) sec^2 x on (-pi/2, pi/2) with mass profile
  f = 1 + alpha sin^2 x; spectrum E_n = (lam+n)^2 - alpha(lam - n^2) and
  Gegenbauer wavefunctions;
* two-parameter: V = A(A-1) sec^2 x + B(B-1) csc^2 x on (0, pi/2) with
  f = 1 + alpha cos 2x; spectrum E_n = (lam+mu+2n)^2 + 2 alpha(lam-mu)(2n+1)
  - 4 alpha^2 n^2 and Jacobi wavefunctions.

These serve both as physics results in their own right and as the trusted
reference layer for the quasi-exactly-solvable extensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import gegenbauer, jacobi
from .dsusy_core import DeformingFunction, Family, TrigLaurentPoly

__all__ = [
    "ExactOneParam",
    "ExactTwoParam",
    "energy_one_param",
    "wavefn_one_param",
    "energy_two_param",
    "wavefn_two_param",
    "potential_one_param",
    "potential_two_param",
    "superpotentials_one_param",
    "superpotentials_two_param",
]


@dataclass(frozen=True)
class ExactOneParam:
    """Well depth A > 1 and deformation alpha > -1 (alpha = 0 allowed,
    flagged as the constant-mass limit through `deforming.undeformed`)."""

    big_a: float
    alpha: float

    def __post_init__(self) -> None:
        if not self.big_a > 1.0:
            raise ValueError(f"need A > 1, got {self.big_a}")
        if not self.alpha > -1.0:
            raise ValueError(f"need alpha > -1, got {self.alpha}")

    @property
    def deforming(self) -> DeformingFunction:
        return DeformingFunction.trig_one(self.alpha)

    @property
    def delta(self) -> float:
        a, al = self.big_a, self.alpha
        return math.sqrt((1.0 + al) ** 2 + 4.0 * a * (a - 1.0))

    @property
    def lam(self) -> float:
        return 0.5 * (1.0 + self.alpha + self.delta)

    @property
    def lam_prime(self) -> float:
        return self.lam + 1.0 + self.alpha


def energy_one_param(p: ExactOneParam, n: int) -> float:
    """E_n = (lam + n)^2 - alpha (lam - n^2)."""
    lam = p.lam
    return (lam + n) ** 2 - p.alpha * (lam - n * n)


def potential_one_param(p: ExactOneParam, x):
    """V(x) = A(A-1) sec^2 x."""
    return p.big_a * (p.big_a - 1.0) / np.cos(x) ** 2


def superpotentials_one_param(p: ExactOneParam) -> tuple[TrigLaurentPoly, TrigLaurentPoly]:
    """(W, W') = (lam tan x, lam' tan x)."""
    return (
        TrigLaurentPoly(Family.ONE, (p.lam,)),
        TrigLaurentPoly(Family.ONE, (p.lam_prime,)),
    )


def wavefn_one_param(p: ExactOneParam, n: int, x):
    """Un-normalized psi_n, Gegenbauer form.

    psi_n = f^(-(L+1)/2) (cos x)^L C_n^(L)(t) with L = lam/(1+alpha) and
    t = sqrt((1+alpha)/f) sin x.
    """
    p.deforming.check_interior(x)
    f = p.deforming.f(x)
    big_l = p.lam / (1.0 + p.alpha)
    t = np.sqrt((1.0 + p.alpha) / f) * np.sin(x)
    return f ** (-0.5 * (big_l + 1.0)) * np.cos(x) ** big_l * gegenbauer(n, big_l, t)


@dataclass(frozen=True)
class ExactTwoParam:
    """Well depths A, B > 1 and deformation |alpha| < 1 (alpha = 0 allowed,
    flagged)."""

    big_a: float
    big_b: float
    alpha: float

    def __post_init__(self) -> None:
        if not self.big_a > 1.0:
            raise ValueError(f"need A > 1, got {self.big_a}")
        if not self.big_b > 1.0:
            raise ValueError(f"need B > 1, got {self.big_b}")
        if not abs(self.alpha) < 1.0:
            raise ValueError(f"need |alpha| < 1, got {self.alpha}")

    @property
    def deforming(self) -> DeformingFunction:
        return DeformingFunction.trig_two(self.alpha)

    @property
    def delta1(self) -> float:
        a, al = self.big_a, self.alpha
        return math.sqrt((1.0 - al) ** 2 + 4.0 * a * (a - 1.0))

    @property
    def delta2(self) -> float:
        b, al = self.big_b, self.alpha
        return math.sqrt((1.0 + al) ** 2 + 4.0 * b * (b - 1.0))

    @property
    def lam(self) -> float:
        return 0.5 * (1.0 - self.alpha + self.delta1)

    @property
    def mu(self) -> float:
        return 0.5 * (1.0 + self.alpha + self.delta2)

    @property
    def lam_prime(self) -> float:
        return self.lam + 1.0 - self.alpha

    @property
    def mu_prime(self) -> float:
        return self.mu + 1.0 + self.alpha


def energy_two_param(p: ExactTwoParam, n: int) -> float:
    """E_n = (lam + mu + 2n)^2 + 2 alpha (lam - mu)(2n + 1) - 4 alpha^2 n^2."""
    lam, mu, al = p.lam, p.mu, p.alpha
    return (lam + mu + 2 * n) ** 2 + 2.0 * al * (lam - mu) * (2 * n + 1) - 4.0 * al * al * n * n


def potential_two_param(p: ExactTwoParam, x):
    """V(x) = A(A-1) sec^2 x + B(B-1) csc^2 x."""
    return (
        p.big_a * (p.big_a - 1.0) / np.cos(x) ** 2
        + p.big_b * (p.big_b - 1.0) / np.sin(x) ** 2
    )


def superpotentials_two_param(p: ExactTwoParam) -> tuple[TrigLaurentPoly, TrigLaurentPoly]:
    """(W, W') = (lam tan x - mu cot x, lam' tan x - mu' cot x)."""
    return (
        TrigLaurentPoly(Family.TWO, (p.lam,), (p.mu,)),
        TrigLaurentPoly(Family.TWO, (p.lam_prime,), (p.mu_prime,)),
    )


def wavefn_two_param(p: ExactTwoParam, n: int, x):
    """Un-normalized psi_n, Jacobi form.

    psi_n = f^(-(1+L+M)/2) (cos x)^L (sin x)^M P_n^(M-1/2, L-1/2)(t) with
    L = lam/(1-alpha), M = mu/(1+alpha), t = (cos 2x + alpha)/(1 + alpha cos 2x).
    """
    p.deforming.check_interior(x)
    f = p.deforming.f(x)
    big_l = p.lam / (1.0 - p.alpha)
    big_m = p.mu / (1.0 + p.alpha)
    c2 = np.cos(2.0 * x)
    t = (c2 + p.alpha) / (1.0 + p.alpha * c2)
    return (
        f ** (-0.5 * (1.0 + big_l + big_m))
        * np.cos(x) ** big_l
        * np.sin(x) ** big_m
        * jacobi(n, big_m - 0.5, big_l - 0.5, t)
    )
