"""Quasi-exactly solvable extensions of the deformed Poschl-Teller wells.

Families built here:

* one-parameter extensions V = sum_{k=1}^{2m+1} A_2k sec^(2k) x, m >= 1,
  on (-pi/2, pi/2) with f = 1 + alpha sin^2 x;
* two-parameter extensions V = sum_{k=1}^{2m1+1} A_2k sec^(2k) x
  + sum_{l=1}^{2m2+1} B_2l csc^(2l) x on (0, pi/2) with f = 1 + alpha cos 2x.

Given the top coefficients (A_{4m+2}, and B_{4m2+2} or B_2) and alpha, the
lower coefficients are fixed so that the lowest two eigenstates come out in
closed form.  Every derived quantity is computed twice: once from the direct
closed-form coefficient formulas (long alternating sums over double
factorials and binomials) and once by expanding W^2 - f W' in exact
polynomial algebra over tan^2 x / cot^2 x and resumming.  The two paths must
agree to rounding level or the build aborts, which guards against
transcription errors in the long formulas.

For m2 = 0 the closed forms are reused with sqrt(B_2) replaced by
1 + alpha + Delta/2, Delta = sqrt((1+alpha)^2 + 4 B_2); the coefficient
formulas are polynomial identities in the replaced symbol, so they remain
valid, and the B_2 output reproduces the input exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .combinatorics import SumIndex, binomial, double_factorial, f_poly, s_sum
from .dsusy_core import (
    DeformingFunction,
    Family,
    GeneratingPair,
    TrigLaurentPoly,
    make_generating_pair,
    partner_potential,
    split_superpotentials,
)

__all__ = [
    "ExtendedOneParamSpec",
    "ExtendedTwoParamSpec",
    "ClosedFormWavefunction",
    "InternalConsistencyError",
    "build_one_param",
    "expand_and_resum_one_param",
    "psi0_closed_one_param",
    "psi1_closed_one_param",
    "build_two_param",
    "expand_and_resum_two_param",
    "cd_coefficients",
    "psi0_closed_two_param",
    "psi1_closed_two_param",
    "closed_form_wavefunction",
    "generating_pair",
    "potential_value",
]


class InternalConsistencyError(RuntimeError):
    """The two independent computation paths disagree (a bug trap, not a
    user-input problem)."""


def _check_match(label: str, closed, expanded, tol: float) -> float:
    """Max |closed - expanded| over matched entries, or raise."""
    ca = np.atleast_1d(np.asarray(closed, dtype=float))
    ea = np.atleast_1d(np.asarray(expanded, dtype=float))
    if ca.shape != ea.shape:
        raise InternalConsistencyError(
            f"{label}: paths produced different shapes {ca.shape} vs {ea.shape}"
        )
    scale = max(1.0, float(np.max(np.abs(ca))), float(np.max(np.abs(ea))))
    worst = float(np.max(np.abs(ca - ea))) if ca.size else 0.0
    if worst > tol * scale:
        raise InternalConsistencyError(
            f"{label}: closed-form and expansion paths disagree by {worst:.3e} "
            f"(scale {scale:.3e}, tolerance {tol:.1e})"
        )
    return worst


# ---------------------------------------------------------------------------
# Closed-form wavefunction container, shared by both families.


@dataclass(frozen=True)
class ClosedFormWavefunction:
    """Wavefunction of the form
    f^f_exp (cos x)^cos_exp (sin x)^sin_exp
      * P(sin^2 x) * (sin x if odd)
      * exp(-sum_K sec_coeffs[K-1] sec^(2K) x - sum_K csc_coeffs[K-1] csc^(2K) x).

    The leading sec (and csc, where present) coefficients are positive, so the
    exponential wins at the boundaries and the value decays to zero there.
    Evaluation is done in log space to stay finite arbitrarily close to the
    ends; scalar or numpy-array x is accepted.
    """

    df: DeformingFunction
    f_exp: float
    cos_exp: float
    sin_exp: float
    sec_coeffs: tuple[float, ...]
    csc_coeffs: tuple[float, ...]
    poly: tuple[float, ...] = (1.0,)
    odd: bool = False

    def value(self, x):
        self.df.check_interior(x)
        arr = np.asarray(x, dtype=float)
        f = self.df.f(arr)
        c = np.cos(arr)
        s = np.sin(arr)
        expo = self.f_exp * np.log(f) + self.cos_exp * np.log(c)
        if self.sin_exp != 0.0:
            expo = expo + self.sin_exp * np.log(s)
        if self.sec_coeffs:
            sec2 = 1.0 / (c * c)
            p = sec2
            for coef in self.sec_coeffs:
                expo = expo - coef * p
                p = p * sec2
        if self.csc_coeffs:
            csc2 = 1.0 / (s * s)
            p = csc2
            for coef in self.csc_coeffs:
                expo = expo - coef * p
                p = p * csc2
        s2 = s * s
        pref = np.zeros_like(arr)
        for coef in reversed(self.poly):
            pref = pref * s2 + coef
        if self.odd:
            pref = pref * s
        out = pref * np.exp(expo)
        return float(out) if np.ndim(x) == 0 else out

    def __call__(self, x):
        return self.value(x)


# ---------------------------------------------------------------------------
# One-parameter family.


@dataclass(frozen=True)
class ExtendedOneParamSpec:
    """Closed-form data of one extension V = sum A_2k sec^(2k) x.

    coeffs holds (A_2, A_4, ..., A_{4m+2}); c_odd holds (C_1, C_3, ...,
    C_{2m+1}), the partial-fraction constants wavefunction exponents are
    built from; psi1_poly holds the coefficients of the odd polynomial
    prefactor of the first excited state (in powers of sin^2 x, times sin x).
    """

    m: int
    a_top: float
    alpha: float
    lam: tuple[float, ...]
    lam_prime: tuple[float, ...]
    coeffs: tuple[float, ...]
    e0: float
    e1: float
    c_odd: tuple[float, ...]
    psi1_poly: tuple[float, ...]

    @property
    def gap(self) -> float:
        return self.e1 - self.e0

    @property
    def deforming(self) -> DeformingFunction:
        return DeformingFunction.trig_one(self.alpha)


def _gap_one(m: int, sa: float, alpha: float) -> float:
    return (
        2.0
        * sa
        * double_factorial(2 * m + 1)
        / double_factorial(2 * m)
        * (1.0 + alpha) ** (-m)
    )


def _w_plus_one(m: int, sa: float, alpha: float) -> TrigLaurentPoly:
    top = double_factorial(2 * m + 1)
    lam = tuple(
        2.0
        * sa
        * top
        / (double_factorial(2 * k + 1) * double_factorial(2 * m - 2 * k))
        * (1.0 + alpha) ** (k - m)
        for k in range(m + 1)
    )
    return TrigLaurentPoly(Family.ONE, lam)


def _ladders_one(
    m: int, sa: float, alpha: float
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    wp = _w_plus_one(m, sa, alpha).lam
    w_minus0 = (2 * m + 1) * (1.0 + alpha)
    lam = (0.5 * (wp[0] - w_minus0),) + tuple(0.5 * c for c in wp[1:])
    lam_p = (lam[0] + w_minus0,) + lam[1:]
    return lam, lam_p


def _e0_a2_one(m: int, sa: float, alpha: float, weight) -> float:
    """Shared alternating-sum skeleton of the closed E_0 and A_2 formulas.

    weight(k) is 1 for the E_0-type sums and k for the A_2-type sums; only
    the leading blocks differ between the two formulas and are added by the
    callers.
    """
    op = 1.0 + alpha
    a_top = sa * sa
    terms = []
    for k in range(1, m + 2):
        terms.append(
            (-1.0) ** k
            * weight(k)
            * float(s_sum(SumIndex(m, k, 0, k - 1)))
            * op ** (k - 1)
        )
    for k in range(m + 2, 2 * m + 2):
        terms.append(
            (-1.0) ** k
            * weight(k)
            * float(s_sum(SumIndex(m, k, k - m - 1, m)))
            * op ** (k - 1)
        )
    return -a_top * op ** (-2 * m) * math.fsum(terms)


def _e0_one_closed(m: int, sa: float, alpha: float) -> float:
    op = 1.0 + alpha
    front = 0.25 * (2 * m + 1) * op * (2 * m + 1 + (2 * m + 3) * alpha)
    bracket = [1.0]
    for k in range(1, m + 2):
        bracket.append(
            2.0
            * (2 * m + 1)
            * (-1.0) ** k
            * double_factorial(2 * m)
            / (double_factorial(2 * k - 1) * double_factorial(2 * m - 2 * k + 2))
            * op**k
        )
    linear = (
        sa
        * double_factorial(2 * m + 1)
        / double_factorial(2 * m)
        * op ** (-m)
        * math.fsum(bracket)
    )
    return front + linear + _e0_a2_one(m, sa, alpha, lambda k: 1.0)


def _a2_one_closed(m: int, sa: float, alpha: float) -> float:
    op = 1.0 + alpha
    front = 0.25 * (2 * m + 1) * (2 * m + 3) * op * op
    lin_terms = [
        2.0
        * (2 * m + 1)
        * sa
        * (-1.0) ** k
        * k
        * double_factorial(2 * m + 1)
        / (double_factorial(2 * k - 1) * double_factorial(2 * m - 2 * k + 2))
        * op ** (k - m)
        for k in range(1, m + 2)
    ]
    return front + math.fsum(lin_terms) + _e0_a2_one(m, sa, alpha, lambda k: float(k))


def _a2k_one_closed(m: int, k: int, sa: float, alpha: float) -> float:
    op = 1.0 + alpha
    a_top = sa * sa
    if 2 <= k <= m + 1:
        lin = [
            -2.0
            * (2 * m + 1)
            * sa
            * (-1.0) ** (l - k)
            * binomial(l, k)
            * double_factorial(2 * m + 1)
            / (double_factorial(2 * l - 1) * double_factorial(2 * m - 2 * l + 2))
            * op ** (l - m)
            for l in range(k, m + 2)
        ]
        quad = [
            (-1.0) ** (l - k)
            * binomial(l, k)
            * float(s_sum(SumIndex(m, l, 0, l - 1)))
            * op ** (l - 1)
            for l in range(k, m + 2)
        ]
        quad += [
            (-1.0) ** (l - k)
            * binomial(l, k)
            * float(s_sum(SumIndex(m, l, l - m - 1, m)))
            * op ** (l - 1)
            for l in range(m + 2, 2 * m + 2)
        ]
        return math.fsum(lin) + a_top * op ** (-2 * m) * math.fsum(quad)
    if m + 2 <= k <= 2 * m:
        terms = [
            (-1.0) ** (l - k)
            * binomial(l, k)
            * float(s_sum(SumIndex(m, l, l - m - 1, m)))
            * op ** (l - 2 * m - 1)
            for l in range(k, 2 * m + 2)
        ]
        return a_top * math.fsum(terms)
    raise ValueError(f"coefficient index {k} outside 2..{2 * m}")


def _c_odd_one(m: int, lam: tuple[float, ...], alpha: float) -> tuple[float, ...]:
    op = 1.0 + alpha
    out = []
    for kappa in range(m + 1):
        terms = []
        for p in range(m - kappa + 1):
            inner = math.fsum(
                (-1.0) ** l * binomial(l + m - p, l) * lam[l + m - p]
                for l in range(p + 1)
            )
            terms.append(alpha ** (m - kappa - p) * op**p * inner)
        out.append(op ** (kappa - m - 1) * math.fsum(terms))
    return tuple(out)


def _psi1_poly_one(m: int, alpha: float) -> tuple[float, ...]:
    """Coefficients of sum_k p_k sin^(2k+1) x in the first-excited prefactor;
    equals W_plus cos^(2m+1) x / (2 sqrt(A_top))."""
    op = 1.0 + alpha
    top = double_factorial(2 * m + 1)
    return tuple(
        math.fsum(
            (-1.0) ** (k - l)
            * binomial(m - l, k - l)
            * top
            / (double_factorial(2 * l + 1) * double_factorial(2 * m - 2 * l))
            * op ** (l - m)
            for l in range(k + 1)
        )
        for k in range(m + 1)
    )


def expand_and_resum_one_param(
    m: int, a_top: float, alpha: float
) -> tuple[float, tuple[float, ...]]:
    """Expansion-path (E_0, (A_2 ... A_{4m+2})): build W from the ladder
    coefficients, expand V_1 = W^2 - f W' in tan^2 x, resum in sec^2 x."""
    _validate_one(m, a_top, alpha)
    sa = math.sqrt(a_top)
    lam, _ = _ladders_one(m, sa, alpha)
    w = TrigLaurentPoly(Family.ONE, lam)
    df = DeformingFunction.trig_one(alpha)
    const, sec, _csc = partner_potential(w, df, "V1").resummed()
    return (-const, sec)


def _validate_one(m: int, a_top: float, alpha: float) -> None:
    if m == 0:
        raise ValueError(
            "m = 0 is the exactly solvable baseline; build it with tpt_exact"
        )
    if m < 0:
        raise ValueError(f"m must be a positive integer, got {m}")
    if not a_top > 0.0:
        raise ValueError(f"top coefficient must be positive, got {a_top}")
    if not alpha > -1.0:
        raise ValueError(f"need alpha > -1, got {alpha}")


def build_one_param(m: int, a_top: float, alpha: float) -> ExtendedOneParamSpec:
    """Construct the extension spec, cross-checking every coefficient.

    All closed-form quantities (energies, potential coefficients, the
    wavefunction constants) are recomputed through the polynomial-expansion
    path and must agree to 1e-9 relative; disagreement raises
    InternalConsistencyError.
    """
    _validate_one(m, a_top, alpha)
    sa = math.sqrt(a_top)
    op = 1.0 + alpha
    lam, lam_p = _ladders_one(m, sa, alpha)

    e0 = _e0_one_closed(m, sa, alpha)
    coeffs = [_a2_one_closed(m, sa, alpha)]
    coeffs += [_a2k_one_closed(m, k, sa, alpha) for k in range(2, 2 * m + 1)]
    coeffs.append(a_top)

    e0_exp, coeffs_exp = expand_and_resum_one_param(m, a_top, alpha)
    _check_match("one-param E0", e0, e0_exp, 1e-9)
    _check_match("one-param coefficients", coeffs, coeffs_exp, 1e-9)

    gap = _gap_one(m, sa, alpha)
    if not gap > 0.0:
        raise InternalConsistencyError(f"gap must be positive, got {gap}")

    c_odd = _c_odd_one(m, lam, alpha)
    _check_match("one-param top C", c_odd[-1], sa / op, 1e-9)

    psi1_poly = _psi1_poly_one(m, alpha)
    wp = _w_plus_one(m, sa, alpha)
    dual = _poly_in_sin2(wp)
    _check_match(
        "one-param psi1 prefactor", tuple(c * 2.0 * sa for c in psi1_poly), dual, 1e-9
    )

    return ExtendedOneParamSpec(
        m=m,
        a_top=a_top,
        alpha=alpha,
        lam=lam,
        lam_prime=lam_p,
        coeffs=tuple(coeffs),
        e0=e0,
        e1=e0 + gap,
        c_odd=c_odd,
        psi1_poly=psi1_poly,
    )


def _poly_in_sin2(wp: TrigLaurentPoly) -> tuple[float, ...]:
    """Expand W_plus cos^(2m1+1) x sin^(2m2+1) x as a polynomial in
    s = sin^2 x; with no cot ladder the lone sin x factor is dropped first."""
    m1 = len(wp.lam) - 1
    m2 = len(wp.mu) - 1 if wp.mu else -1
    deg = m1 + m2 + 1
    out = [0.0] * (deg + 1)
    acc: list[list[float]] = [[] for _ in range(deg + 1)]
    for k, lamc in enumerate(wp.lam):
        # tan^(2k+1) -> s^(k+m2+1) (1-s)^(m1-k)
        for j in range(m1 - k + 1):
            acc[k + m2 + 1 + j].append(lamc * (-1.0) ** j * binomial(m1 - k, j))
    for l, muc in enumerate(wp.mu):
        # -cot^(2l+1) -> -(1-s)^(l+m1+1) s^(m2-l)
        for j in range(l + m1 + 2):
            acc[m2 - l + j].append(-muc * (-1.0) ** j * binomial(l + m1 + 1, j))
    for j in range(deg + 1):
        out[j] = math.fsum(acc[j])
    return tuple(out)


def psi0_closed_one_param(spec: ExtendedOneParamSpec, x):
    """Closed-form ground state (un-normalized)."""
    return closed_form_wavefunction(spec, 0).value(x)


def psi1_closed_one_param(spec: ExtendedOneParamSpec, x):
    """Closed-form first excited state (un-normalized, odd)."""
    return closed_form_wavefunction(spec, 1).value(x)


# ---------------------------------------------------------------------------
# Two-parameter family.


@dataclass(frozen=True)
class ExtendedTwoParamSpec:
    """Closed-form data of one extension V = sum A_2k sec^(2k) x
    + sum B_2l csc^(2l) x.

    For m2 = 0, sqrt_b_eff is 1 + alpha + Delta/2 with
    Delta = sqrt((1+alpha)^2 + 4 B_2); otherwise it is sqrt(B_top).
    `reflected` records that the caller's (m1 < m2) input was mapped to this
    spec by x -> pi/2 - x, alpha -> -alpha, with the two coefficient ladders
    swapped; evaluate this spec at pi/2 - x to recover the original system.
    """

    m1: int
    m2: int
    a_top: float
    b_top: float
    alpha: float
    sqrt_b_eff: float
    lam: tuple[float, ...]
    lam_prime: tuple[float, ...]
    mu: tuple[float, ...]
    mu_prime: tuple[float, ...]
    a_coeffs: tuple[float, ...]
    b_coeffs: tuple[float, ...]
    e0: float
    e1: float
    c: tuple[float, ...]
    d: tuple[float, ...]
    psi1_poly: tuple[float, ...]
    reflected: bool = False

    @property
    def gap(self) -> float:
        return self.e1 - self.e0

    @property
    def deforming(self) -> DeformingFunction:
        return DeformingFunction.trig_two(self.alpha)


def _sqrt_b_eff(m2: int, b_top: float, alpha: float) -> float:
    if m2 > 0:
        return math.sqrt(b_top)
    return 1.0 + alpha + 0.5 * math.sqrt((1.0 + alpha) ** 2 + 4.0 * b_top)


def _gap_two(m1: int, m2: int, sa: float, sb: float, alpha: float) -> float:
    op, om = 1.0 + alpha, 1.0 - alpha
    return (
        4.0
        * math.factorial(m1 + m2 + 1)
        / (math.factorial(m1) * math.factorial(m2))
        * (sa * op ** (m1 + 1) / om**m1 + sb * om ** (m2 + 1) / op**m2)
    )


def _w_pair_two(
    m1: int, m2: int, sa: float, sb: float, alpha: float
) -> tuple[TrigLaurentPoly, TrigLaurentPoly]:
    big = m1 + m2 + 1
    rp = (1.0 + alpha) / (1.0 - alpha)
    rm = 1.0 / rp
    lam = tuple(
        2.0 * sa * binomial(big, m2 + k + 1) * rp ** (m1 - k) for k in range(m1 + 1)
    )
    mu = tuple(
        2.0 * sb * binomial(big, m1 + l + 1) * rm ** (m2 - l) for l in range(m2 + 1)
    )
    w_plus = TrigLaurentPoly(Family.TWO, lam, mu)
    w_minus = TrigLaurentPoly(
        Family.TWO,
        ((2 * m1 + 1) * (1.0 - alpha),),
        ((2 * m2 + 1) * (1.0 + alpha),),
    )
    return w_plus, w_minus


def _ladders_two(
    m1: int, m2: int, sa: float, sb: float, alpha: float
) -> tuple[tuple, tuple, tuple, tuple]:
    wp, wm = _w_pair_two(m1, m2, sa, sb, alpha)
    lam = (0.5 * (wp.lam[0] - wm.lam[0]),) + tuple(0.5 * c for c in wp.lam[1:])
    lam_p = (lam[0] + wm.lam[0],) + lam[1:]
    mu = (0.5 * (wp.mu[0] - wm.mu[0]),) + tuple(0.5 * c for c in wp.mu[1:])
    mu_p = (mu[0] + wm.mu[0],) + mu[1:]
    return lam, lam_p, mu, mu_p


def _conv_a(big: int, m2: int, l: int, lo: int, hi: int) -> float:
    return float(
        sum(
            binomial(big, m2 + p + 1) * binomial(big, m2 + l - p)
            for p in range(lo, hi + 1)
        )
    )


def _conv_b(big: int, m1: int, k: int, lo: int, hi: int) -> float:
    return float(
        sum(
            binomial(big, m1 + p + 1) * binomial(big, m1 + k - p)
            for p in range(lo, hi + 1)
        )
    )


def _linear_block_a(big: int, m1: int, m2: int, k: int) -> float:
    return (2 * m2 - 2 * k) * binomial(big, m2 + k + 1) - (2 * m1 + 2 * k) * binomial(
        big, m2 + k
    )


def _linear_block_b(big: int, m1: int, m2: int, l: int) -> float:
    return (2 * m1 - 2 * l) * binomial(big, m1 + l + 1) - (2 * m2 + 2 * l) * binomial(
        big, m1 + l
    )


def _e0_two_closed(m1: int, m2: int, sa: float, sb: float, alpha: float) -> float:
    big = m1 + m2 + 1
    op, om = 1.0 + alpha, 1.0 - alpha
    rp = op / om
    rm = om / op
    a_top = sa * sa
    b_top_eff = sb * sb

    terms = [
        float(big) ** 2
        - 2.0 * alpha * (m1 - m2) * (m1 + m2 + 2)
        + alpha * alpha * ((m1 - m2) ** 2 + 2 * big)
    ]

    lin_a = [2.0 * m2 * binomial(big, m2 + 1) * op ** (m1 + 1) / om**m1]
    for k in range(1, m1 + 2):
        lin_a.append(
            (-1.0) ** k
            * _linear_block_a(big, m1, m2, k)
            * op ** (m1 - k + 1)
            / om ** (m1 - k)
        )
    terms.append(-sa * math.fsum(lin_a))

    lin_b = [2.0 * m1 * binomial(big, m1 + 1) * om ** (m2 + 1) / op**m2]
    for l in range(1, m2 + 2):
        lin_b.append(
            (-1.0) ** l
            * _linear_block_b(big, m1, m2, l)
            * om ** (m2 - l + 1)
            / op ** (m2 - l)
        )
    terms.append(-sb * math.fsum(lin_b))

    quad_a = [
        (-1.0) ** k
        * rp ** (2 * m1 - k + 1)
        * _conv_a(big, m2, k, max(0, k - m1 - 1), min(k - 1, m1))
        for k in range(1, 2 * m1 + 2)
    ]
    terms.append(-a_top * math.fsum(quad_a))

    cross = [
        (-1.0) ** k
        * rp ** (m1 - m2 - k)
        * _conv_a(big, m2, k, k, min(m2 + k, m1))
        for k in range(0, m1 + 1)
    ]
    cross += [
        (-1.0) ** l * rp ** (m1 - m2 + l) * _conv_b(big, m1, l, l, m2)
        for l in range(1, m2 + 1)
    ]
    terms.append(2.0 * sa * sb * math.fsum(cross))

    quad_b = [
        (-1.0) ** l
        * rm ** (2 * m2 - l + 1)
        * _conv_b(big, m1, l, max(0, l - m2 - 1), min(l - 1, m2))
        for l in range(1, 2 * m2 + 2)
    ]
    terms.append(-b_top_eff * math.fsum(quad_b))

    return math.fsum(terms)


def _a2_two_closed(m1: int, m2: int, sa: float, sb: float, alpha: float) -> float:
    big = m1 + m2 + 1
    op, om = 1.0 + alpha, 1.0 - alpha
    rp = op / om
    a_top = sa * sa
    terms = [(m1 + 0.5) * (m1 + 1.5) * om * om]
    lin = [
        (-1.0) ** k
        * k
        * op ** (m1 - k + 1)
        / om ** (m1 - k)
        * _linear_block_a(big, m1, m2, k)
        for k in range(1, m1 + 2)
    ]
    terms.append(-sa * math.fsum(lin))
    quad = [
        (-1.0) ** k
        * k
        * rp ** (2 * m1 - k + 1)
        * _conv_a(big, m2, k, max(0, k - m1 - 1), min(k - 1, m1))
        for k in range(1, 2 * m1 + 2)
    ]
    terms.append(-a_top * math.fsum(quad))
    cross = [
        (-1.0) ** k
        * k
        * rp ** (m1 - m2 - k)
        * _conv_a(big, m2, k, k, min(m2 + k, m1))
        for k in range(1, m1 + 1)
    ]
    terms.append(2.0 * sa * sb * math.fsum(cross))
    return math.fsum(terms)


def _a2k_two_closed(
    m1: int, m2: int, k: int, sa: float, sb: float, alpha: float
) -> float:
    big = m1 + m2 + 1
    op, om = 1.0 + alpha, 1.0 - alpha
    rp = op / om
    a_top = sa * sa
    if 2 <= k <= m1 + 1:
        lin = [
            (-1.0) ** (l - k)
            * binomial(l, k)
            * op ** (m1 - l + 1)
            / om ** (m1 - l)
            * _linear_block_a(big, m1, m2, l)
            for l in range(k, m1 + 2)
        ]
        quad = [
            (-1.0) ** (l - k)
            * binomial(l, k)
            * rp ** (2 * m1 - l + 1)
            * _conv_a(big, m2, l, max(0, l - m1 - 1), min(l - 1, m1))
            for l in range(k, 2 * m1 + 2)
        ]
        cross = [
            (-1.0) ** (l - k)
            * binomial(l, k)
            * rp ** (m1 - m2 - l)
            * _conv_a(big, m2, l, l, min(m2 + l, m1))
            for l in range(k, m1 + 1)
        ]
        return math.fsum(
            [sa * math.fsum(lin), a_top * math.fsum(quad), -2.0 * sa * sb * math.fsum(cross)]
        )
    if m1 + 2 <= k <= 2 * m1:
        quad = [
            (-1.0) ** (l - k)
            * binomial(l, k)
            * rp ** (2 * m1 - l + 1)
            * _conv_a(big, m2, l, l - m1 - 1, m1)
            for l in range(k, 2 * m1 + 2)
        ]
        return a_top * math.fsum(quad)
    raise ValueError(f"sec coefficient index {k} outside 2..{2 * m1}")


def _b2_two_closed(m1: int, m2: int, sa: float, sb: float, alpha: float) -> float:
    big = m1 + m2 + 1
    op, om = 1.0 + alpha, 1.0 - alpha
    rp = op / om
    rm = om / op
    b_top_eff = sb * sb
    terms = [(m2 + 0.5) * (m2 + 1.5) * op * op]
    lin = [
        (-1.0) ** k
        * k
        * om ** (m2 - k + 1)
        / op ** (m2 - k)
        * _linear_block_b(big, m1, m2, k)
        for k in range(1, m2 + 2)
    ]
    terms.append(-sb * math.fsum(lin))
    cross = [
        (-1.0) ** k * k * rp ** (m1 - m2 + k) * _conv_b(big, m1, k, k, m2)
        for k in range(1, m2 + 1)
    ]
    terms.append(2.0 * sa * sb * math.fsum(cross))
    quad = [
        (-1.0) ** k
        * k
        * rm ** (2 * m2 - k + 1)
        * _conv_b(big, m1, k, max(0, k - m2 - 1), min(k - 1, m2))
        for k in range(1, 2 * m2 + 2)
    ]
    terms.append(-b_top_eff * math.fsum(quad))
    return math.fsum(terms)


def _b2l_two_closed(
    m1: int, m2: int, l: int, sa: float, sb: float, alpha: float
) -> float:
    big = m1 + m2 + 1
    op, om = 1.0 + alpha, 1.0 - alpha
    rp = op / om
    rm = om / op
    b_top_eff = sb * sb
    if 2 <= l <= m2 + 1:
        lin = [
            (-1.0) ** (k - l)
            * binomial(k, l)
            * om ** (m2 - k + 1)
            / op ** (m2 - k)
            * _linear_block_b(big, m1, m2, k)
            for k in range(l, m2 + 2)
        ]
        cross = [
            (-1.0) ** (k - l)
            * binomial(k, l)
            * rp ** (m1 - m2 + k)
            * _conv_b(big, m1, k, k, m2)
            for k in range(l, m2 + 1)
        ]
        quad = [
            (-1.0) ** (k - l)
            * binomial(k, l)
            * rm ** (2 * m2 - k + 1)
            * _conv_b(big, m1, k, max(0, k - m2 - 1), min(k - 1, m2))
            for k in range(l, 2 * m2 + 2)
        ]
        return math.fsum(
            [
                sb * math.fsum(lin),
                -2.0 * sa * sb * math.fsum(cross),
                b_top_eff * math.fsum(quad),
            ]
        )
    if m2 + 2 <= l <= 2 * m2:
        quad = [
            (-1.0) ** (k - l)
            * binomial(k, l)
            * rm ** (2 * m2 - k + 1)
            * _conv_b(big, m1, k, k - m2 - 1, m2)
            for k in range(l, 2 * m2 + 2)
        ]
        return b_top_eff * math.fsum(quad)
    raise ValueError(f"csc coefficient index {l} outside 2..{2 * m2}")


def _cd_two(
    m1: int,
    m2: int,
    lam: tuple[float, ...],
    mu: tuple[float, ...],
    alpha: float,
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    op, om = 1.0 + alpha, 1.0 - alpha
    c = []
    for p in range(1, m1 + 2):
        terms = []
        for q in range(p - 1, m1 + 1):
            inner = math.fsum(
                (-1.0) ** (k - q) * binomial(k, q) * lam[k] for k in range(q, m1 + 1)
            )
            terms.append(2.0**q * (-alpha) ** (q - p + 1) / om ** (q - p + 2) * inner)
        c.append(math.fsum(terms))
    d = []
    for q in range(1, m2 + 2):
        terms = []
        for p in range(q - 1, m2 + 1):
            inner = math.fsum(
                (-1.0) ** (l - p) * binomial(l, p) * mu[l] for l in range(p, m2 + 1)
            )
            terms.append(2.0**p * alpha ** (p - q + 1) / op ** (p - q + 2) * inner)
        d.append(math.fsum(terms))
    return tuple(c), tuple(d)


def _psi1_poly_two(
    m1: int, m2: int, sa: float, sb: float, alpha: float
) -> tuple[float, ...]:
    """Coefficients of the first-excited polynomial prefactor in s = sin^2 x;
    equals the expansion of W_plus cos^(2m1+1) x sin^(2m2+1) x."""
    big = m1 + m2 + 1
    op, om = 1.0 + alpha, 1.0 - alpha
    rp = op / om
    rm = om / op
    out = []
    for k in range(big + 1):
        if k <= m2:
            out.append(-2.0 * sb * (-1.0) ** k * binomial(big, k) * (2.0 * alpha / op) ** k)
        else:
            term_a = 2.0 * sa * rp ** (m1 + m2 - k + 1) * f_poly(k - m2 - 1, k, rp)
            term_b = -2.0 * sb * (-1.0) ** k * f_poly(m2, k, rm)
            out.append(binomial(big, k) * (term_a + term_b))
    return tuple(out)


def _validate_two(m1: int, m2: int, a_top: float, b_top: float, alpha: float) -> None:
    if m1 < 0 or m2 < 0:
        raise ValueError(f"ladder depths must be nonnegative, got {(m1, m2)}")
    if m1 == 0 and m2 == 0:
        raise ValueError(
            "m1 = m2 = 0 is the exactly solvable baseline; build it with tpt_exact"
        )
    if not (a_top > 0.0 and b_top > 0.0):
        raise ValueError(f"top coefficients must be positive, got {(a_top, b_top)}")
    if not abs(alpha) < 1.0:
        raise ValueError(f"need |alpha| < 1, got {alpha}")


def expand_and_resum_two_param(
    m1: int, m2: int, a_top: float, b_top: float, alpha: float
) -> tuple[float, tuple[float, ...], tuple[float, ...]]:
    """Expansion-path (E_0, A-array, B-array) for canonical m1 >= m2 input."""
    _validate_two(m1, m2, a_top, b_top, alpha)
    if m1 < m2:
        raise ValueError("expansion path expects the canonical ordering m1 >= m2")
    sa = math.sqrt(a_top)
    sb = _sqrt_b_eff(m2, b_top, alpha)
    lam, _, mu, _ = _ladders_two(m1, m2, sa, sb, alpha)
    w = TrigLaurentPoly(Family.TWO, lam, mu)
    df = DeformingFunction.trig_two(alpha)
    const, sec, csc = partner_potential(w, df, "V1").resummed()
    return (-const, sec, csc)


def build_two_param(
    m1: int, m2: int, a_top: float, b_top: float, alpha: float
) -> ExtendedTwoParamSpec:
    """Construct the two-parameter extension spec with dual-path checks.

    m1 < m2 inputs are reflected to the canonical ordering (swap the ladders
    and tops, alpha -> -alpha, x -> pi/2 - x) and flagged via `reflected`.
    Closed-form and expansion-path results must agree to 1e-8 relative.
    """
    _validate_two(m1, m2, a_top, b_top, alpha)
    if m1 < m2:
        canonical = build_two_param(m2, m1, b_top, a_top, -alpha)
        return replace(canonical, reflected=True)

    sa = math.sqrt(a_top)
    sb = _sqrt_b_eff(m2, b_top, alpha)
    op = 1.0 + alpha
    om = 1.0 - alpha
    lam, lam_p, mu, mu_p = _ladders_two(m1, m2, sa, sb, alpha)

    e0 = _e0_two_closed(m1, m2, sa, sb, alpha)
    a_coeffs = [_a2_two_closed(m1, m2, sa, sb, alpha)]
    a_coeffs += [_a2k_two_closed(m1, m2, k, sa, sb, alpha) for k in range(2, 2 * m1 + 1)]
    a_coeffs.append(a_top)
    if m2 == 0:
        b_closed = _b2_two_closed(m1, m2, sa, sb, alpha)
        _check_match("m2=0 bottom csc coefficient", b_closed, b_top, 1e-9)
        b_coeffs = [b_top]
    else:
        b_coeffs = [_b2_two_closed(m1, m2, sa, sb, alpha)]
        b_coeffs += [
            _b2l_two_closed(m1, m2, l, sa, sb, alpha) for l in range(2, 2 * m2 + 1)
        ]
        b_coeffs.append(b_top)

    e0_exp, a_exp, b_exp = expand_and_resum_two_param(m1, m2, a_top, b_top, alpha)
    _check_match("two-param E0", e0, e0_exp, 1e-8)
    _check_match("two-param sec coefficients", a_coeffs, a_exp, 1e-8)
    _check_match("two-param csc coefficients", b_coeffs, b_exp, 1e-8)

    gap = _gap_two(m1, m2, sa, sb, alpha)
    if not gap > 0.0:
        raise InternalConsistencyError(f"gap must be positive, got {gap}")

    c, d = _cd_two(m1, m2, lam, mu, alpha)
    _check_match("two-param top C", c[-1], 2.0**m1 * sa / om, 1e-9)
    if m2 > 0:
        _check_match("two-param top D", d[-1], 2.0**m2 * sb / op, 1e-9)
    else:
        _check_match("two-param top D", d[-1], sb / op - 0.5, 1e-9)

    psi1_poly = _psi1_poly_two(m1, m2, sa, sb, alpha)
    wp, _ = _w_pair_two(m1, m2, sa, sb, alpha)
    dual = _poly_in_sin2(wp)
    _check_match("two-param psi1 prefactor", psi1_poly, dual, 1e-8)

    return ExtendedTwoParamSpec(
        m1=m1,
        m2=m2,
        a_top=a_top,
        b_top=b_top,
        alpha=alpha,
        sqrt_b_eff=sb,
        lam=lam,
        lam_prime=lam_p,
        mu=mu,
        mu_prime=mu_p,
        a_coeffs=tuple(a_coeffs),
        b_coeffs=tuple(b_coeffs),
        e0=e0,
        e1=e0 + gap,
        c=c,
        d=d,
        psi1_poly=psi1_poly,
        reflected=False,
    )


def cd_coefficients(
    spec: ExtendedTwoParamSpec,
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """(C_1..C_{m1+1}, D_1..D_{m2+1}) as stored on the built spec."""
    return (spec.c, spec.d)


def psi0_closed_two_param(spec: ExtendedTwoParamSpec, x):
    """Closed-form ground state (un-normalized)."""
    return closed_form_wavefunction(spec, 0).value(x)


def psi1_closed_two_param(spec: ExtendedTwoParamSpec, x):
    """Closed-form first excited state (un-normalized)."""
    return closed_form_wavefunction(spec, 1).value(x)


# ---------------------------------------------------------------------------
# Shared surface over both spec types.


def closed_form_wavefunction(spec, level: int) -> ClosedFormWavefunction:
    """The level-0 or level-1 closed-form wavefunction of a built spec."""
    if level not in (0, 1):
        raise ValueError(f"only levels 0 and 1 exist in closed form, got {level}")
    if isinstance(spec, ExtendedOneParamSpec):
        c1 = spec.c_odd[0]
        sec = tuple(
            spec.c_odd[kappa] / (2.0 * kappa) for kappa in range(1, spec.m + 1)
        )
        if level == 0:
            return ClosedFormWavefunction(
                spec.deforming, -0.5 * (c1 + 1.0), c1, 0.0, sec, ()
            )
        return ClosedFormWavefunction(
            spec.deforming,
            -0.5 * (c1 + 2.0 * spec.m + 2.0),
            c1,
            0.0,
            sec,
            (),
            poly=spec.psi1_poly,
            odd=True,
        )
    if isinstance(spec, ExtendedTwoParamSpec):
        c1, d1 = spec.c[0], spec.d[0]
        sec = tuple(
            spec.c[p - 1] / (2.0**p * (p - 1)) for p in range(2, spec.m1 + 2)
        )
        csc = tuple(
            spec.d[q - 1] / (2.0**q * (q - 1)) for q in range(2, spec.m2 + 2)
        )
        if level == 0:
            return ClosedFormWavefunction(
                spec.deforming, -0.5 * (c1 + d1 + 1.0), c1, d1, sec, csc
            )
        return ClosedFormWavefunction(
            spec.deforming,
            -0.5 * (c1 + d1 + 2.0 * spec.m1 + 2.0 * spec.m2 + 3.0),
            c1,
            d1,
            sec,
            csc,
            poly=spec.psi1_poly,
            odd=False,
        )
    raise TypeError(f"not an extension spec: {type(spec).__name__}")


def generating_pair(spec) -> GeneratingPair:
    """The validated (W_plus, W_minus, gap) behind a built spec."""
    if isinstance(spec, ExtendedOneParamSpec):
        sa = math.sqrt(spec.a_top)
        wp = _w_plus_one(spec.m, sa, spec.alpha)
        wm = TrigLaurentPoly(Family.ONE, ((2 * spec.m + 1) * (1.0 + spec.alpha),))
        return make_generating_pair(wp, wm, spec.deforming)
    if isinstance(spec, ExtendedTwoParamSpec):
        wp, wm = _w_pair_two(
            spec.m1, spec.m2, math.sqrt(spec.a_top), spec.sqrt_b_eff, spec.alpha
        )
        return make_generating_pair(wp, wm, spec.deforming)
    raise TypeError(f"not an extension spec: {type(spec).__name__}")


def potential_value(spec, x):
    """V(x) from the resummed coefficient arrays; scalar or array x."""
    df = spec.deforming
    df.check_interior(x)
    arr = np.asarray(x, dtype=float)
    sec2 = 1.0 / np.cos(arr) ** 2
    if isinstance(spec, ExtendedOneParamSpec):
        acc = np.zeros_like(arr)
        for coef in reversed(spec.coeffs):
            acc = (acc + coef) * sec2
        return float(acc) if np.ndim(x) == 0 else acc
    if isinstance(spec, ExtendedTwoParamSpec):
        csc2 = 1.0 / np.sin(arr) ** 2
        acc = np.zeros_like(arr)
        for coef in reversed(spec.a_coeffs):
            acc = (acc + coef) * sec2
        acc2 = np.zeros_like(arr)
        for coef in reversed(spec.b_coeffs):
            acc2 = (acc2 + coef) * csc2
        out = acc + acc2
        return float(out) if np.ndim(x) == 0 else out
    raise TypeError(f"not an extension spec: {type(spec).__name__}")
