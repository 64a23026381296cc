"""Bessel functions of the first kind J_a and the normalized kernel
j_a(u) = J_a(u) / u^a for orders a >= -1/2.

Evaluation scheme: half-integer orders +-1/2 use the closed trigonometric
forms (no series error where the Fourier reduction is exercised); otherwise
an ascending series in 80-bit extended precision for u <= 14 and the large
argument cosine expansion for u > 14.  Both branches are vectorized; kernel
matrices for the transforms are built through these entry points.
"""

from __future__ import annotations

import numpy as np

from .errors import ArgumentError, DomainError

_SPLIT = 14.0
_SQRT_2_OVER_PI = float(np.sqrt(2.0 / np.pi))

# Lanczos approximation, g = 7, 9 coefficients.  Relative error is below
# 1e-13 on [0.5, inf), which is the only range needed (a + 1 with a >= -1/2).
_LANCZOS_G = 7.0
_LANCZOS_C = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])


def gamma(z):
    """Gamma(z) for z >= 0.5 via the Lanczos sum."""
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.5):
        raise DomainError("gamma: argument below 0.5 not supported")
    zz = z - 1.0
    acc = np.full_like(zz, _LANCZOS_C[0])
    for i in range(1, len(_LANCZOS_C)):
        acc = acc + _LANCZOS_C[i] / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    out = np.sqrt(2.0 * np.pi) * t ** (zz + 0.5) * np.exp(-t) * acc
    return out if out.ndim else float(out)


def _check_order(alpha: float) -> float:
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha < -0.5:
        raise ArgumentError(f"order must satisfy alpha >= -1/2, got {alpha}")
    return alpha


def _series_normalized(alpha: float, u: np.ndarray) -> np.ndarray:
    """j_a(u) = sum_k (-1)^k (u^2/4)^k / (k! (a+1)_k) / (2^a Gamma(a+1)),
    accumulated in extended precision.  Valid for u <= ~20."""
    q = np.asarray(u, dtype=np.longdouble) ** 2 / 4.0
    term = np.ones_like(q)
    acc = np.ones_like(q)
    for k in range(200):
        term = term * (-q) / ((k + 1.0) * (alpha + k + 1.0))
        acc += term
        if np.max(np.abs(term)) < 1e-21 * max(1.0, float(np.max(np.abs(acc)))):
            break
    lead = 1.0 / (2.0 ** np.longdouble(alpha) * np.longdouble(gamma(alpha + 1.0)))
    return np.asarray(acc * lead, dtype=float)


def _asymptotic_j(alpha: float, u: np.ndarray) -> np.ndarray:
    """Large-argument cosine expansion of J_a(u); terms added until they
    stop decreasing or fall below 1e-19.  Exact for half-integer orders."""
    u = np.asarray(u, dtype=float)
    mu = 4.0 * alpha * alpha
    p = np.ones_like(u)
    q = np.zeros_like(u)
    ak_over_uk = np.ones_like(u)
    prev = np.inf
    for k in range(1, 40):
        ak_over_uk = ak_over_uk * (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k) / u
        mag = float(np.max(np.abs(ak_over_uk))) if ak_over_uk.size else 0.0
        if mag > prev or mag == 0.0:
            break
        sign = (-1.0) ** (k // 2)
        if k % 2 == 1:
            q = q + sign * ak_over_uk
        else:
            p = p + sign * ak_over_uk
        if mag < 1e-19:
            break
        prev = mag
    omega = u - alpha * np.pi / 2.0 - np.pi / 4.0
    return np.sqrt(2.0 / (np.pi * u)) * (p * np.cos(omega) - q * np.sin(omega))


def bessel_j_normalized(alpha: float, u):
    """j_a(u) = J_a(u)/u^a, continuously extended to 1/(2^a Gamma(a+1))
    at u = 0.  Even entire function of u; vectorized over u >= 0."""
    alpha = _check_order(alpha)
    uu = np.asarray(u, dtype=float)
    scalar = uu.ndim == 0
    uu = np.atleast_1d(uu)
    if np.any(uu < 0.0):
        raise DomainError("bessel_j_normalized: argument must be >= 0")
    if alpha == -0.5:
        out = _SQRT_2_OVER_PI * np.cos(uu)
    elif alpha == 0.5:
        out = _SQRT_2_OVER_PI * np.sinc(uu / np.pi)
    else:
        out = np.empty_like(uu)
        small = uu <= _SPLIT
        if np.any(small):
            out[small] = _series_normalized(alpha, uu[small])
        large = ~small
        if np.any(large):
            ul = uu[large]
            out[large] = _asymptotic_j(alpha, ul) / ul ** alpha
    return float(out[0]) if scalar else out


def bessel_j(alpha: float, u):
    """J_a(u) for u >= 0, a >= -1/2.  Absolute error <= 1e-12 for u <= 10,
    relative error (against the amplitude envelope) <= 1e-10 beyond."""
    alpha = _check_order(alpha)
    uu = np.asarray(u, dtype=float)
    scalar = uu.ndim == 0
    uu = np.atleast_1d(uu)
    if np.any(uu < 0.0):
        raise DomainError("bessel_j: argument must be >= 0")
    if alpha == -0.5:
        with np.errstate(divide="ignore"):
            out = np.sqrt(2.0 / (np.pi * uu)) * np.cos(uu)
    elif alpha == 0.5:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.sqrt(2.0 / (np.pi * uu)) * np.sin(uu)
            out = np.where(uu == 0.0, 0.0, out)
    else:
        out = np.empty_like(uu)
        small = uu <= _SPLIT
        if np.any(small):
            us = uu[small]
            with np.errstate(divide="ignore", invalid="ignore"):
                pw = us ** alpha
            if alpha == 0.0:
                pw = np.where(us == 0.0, 1.0, pw)
            out[small] = _series_normalized(alpha, us) * pw
            if alpha > 0.0:
                out[small] = np.where(us == 0.0, 0.0, out[small])
        large = ~small
        if np.any(large):
            out[large] = _asymptotic_j(alpha, uu[large])
    return float(out[0]) if scalar else out
