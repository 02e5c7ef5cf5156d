"""Special-function kernel: gamma, generalized Laguerre polynomials, 1F1.

All functions are pure and vectorize over their last argument where that
makes sense (``x`` for Laguerre, ``z`` for 1F1).
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import AccuracyError, DomainError

# Accuracy constants; reported by the verification suites, not tunable.
HYP1F1_RTOL = 1e-15
HYP1F1_MAX_TERMS = 1000
HYP1F1_MAX_ABS_Z = 50.0
# Beyond this radius the direct series is replaced by Taylor continuation
# whenever its cancellation estimate exceeds HYP1F1_CANCEL_TOL.
HYP1F1_SERIES_RADIUS = 2.0
HYP1F1_CANCEL_TOL = 1e-13
HYP1F1_STEP = 0.1

_EPS = np.finfo(float).eps


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def gamma_fn(x: float) -> float:
    """Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"gamma_fn requires x > 0, got {x!r}")
    try:
        return math.gamma(x)
    except OverflowError:
        raise DomainError(f"Gamma({x!r}) overflows a double; use log_gamma") from None


class PolyEval(NamedTuple):
    value: np.ndarray | float
    first_derivative: np.ndarray | float
    second_derivative: np.ndarray | float


def _laguerre_value(k: int, alpha: float, x):
    # Three-term recurrence in the degree.
    x = np.asarray(x, dtype=float)
    if k < 0:
        return np.zeros_like(x)
    prev = np.ones_like(x)
    if k == 0:
        return prev
    cur = 1.0 + alpha - x
    for m in range(2, k + 1):
        prev, cur = cur, ((2 * m - 1 + alpha - x) * cur - (m - 1 + alpha) * prev) / m
    return cur


def laguerre(k: int, alpha: float, x) -> PolyEval:
    """Generalized Laguerre polynomial L_k^(alpha)(x) with two derivatives.

    Derivatives use d/dx L_k^(a) = -L_{k-1}^(a+1), applied twice.
    Scalars in give scalars out.
    """
    if int(k) != k or k < 0:
        raise DomainError(f"Laguerre degree must be a nonnegative integer, got {k!r}")
    if not alpha > -1:
        raise DomainError(f"Laguerre parameter must exceed -1, got {alpha!r}")
    k = int(k)
    scalar = np.ndim(x) == 0
    val = _laguerre_value(k, alpha, x)
    d1 = -_laguerre_value(k - 1, alpha + 1, x)
    d2 = _laguerre_value(k - 2, alpha + 2, x)
    if scalar:
        return PolyEval(float(val), float(d1), float(d2))
    return PolyEval(val, d1, d2)


def _check_b(b: complex) -> None:
    if b.imag == 0 and b.real <= 0 and float(b.real).is_integer():
        raise DomainError(f"1F1 undefined for nonpositive integer b={b.real:g}")


def _series(a: complex, b: complex, z: np.ndarray):
    """Direct Taylor series; also returns the largest term seen."""
    total = np.zeros_like(z)
    t = np.ones_like(z)
    biggest = np.ones(z.shape)
    for k in range(HYP1F1_MAX_TERMS):
        total = total + t
        mag = np.abs(t)
        biggest = np.maximum(biggest, mag)
        if a + k == 0:
            # a is a nonpositive integer: the series terminated.
            return total, biggest
        t = t * (a + k) / (b + k) * z / (k + 1)
        floor = HYP1F1_RTOL * np.maximum(np.abs(total), 1e-300)
        if k > 2 and np.all(mag <= floor) and np.all(np.abs(t) <= floor):
            return total, biggest
    attained = float(np.max(np.abs(t) / np.maximum(np.abs(total), 1e-300)))
    raise AccuracyError(
        f"1F1 series did not converge in {HYP1F1_MAX_TERMS} terms", attained=attained
    )


def _continue(a: complex, b: complex, z: np.ndarray, m, dm, z0: np.ndarray):
    """Carry (M, M') from z0 to z by stepping the Kummer ODE with local Taylor series.

    The ODE is z M'' + (b - z) M' - a M = 0. Points move radially in
    geometric steps, each at most HYP1F1_STEP times the current radius, so
    every local series converges at a fixed rate.
    """
    growth = np.abs(z) / np.abs(z0)
    nsteps = max(1, int(math.ceil(math.log(float(np.max(growth))) / math.log1p(HYP1F1_STEP))))
    ratio = growth ** (1.0 / nsteps)
    zc = z0.astype(complex)
    for step in range(nsteps):
        znext = z if step == nsteps - 1 else zc * ratio
        h = znext - zc
        ck, ck1 = m, dm
        val = m + dm * h
        der = dm.copy()
        hp = h.copy()            # h^(k+1)
        for k in range(400):
            ck2 = ((k + a) * ck - (k + 1) * (k + b - zc) * ck1) / (zc * (k + 2) * (k + 1))
            term_d = (k + 2) * ck2 * hp
            hp = hp * h
            term = ck2 * hp
            val = val + term
            der = der + term_d
            if np.all(np.abs(term) <= _EPS * 1e-2 * np.abs(val)) and np.all(
                np.abs(term_d) <= _EPS * 1e-2 * np.maximum(np.abs(der), 1e-300)
            ):
                break
            ck, ck1 = ck1, ck2
        else:
            raise AccuracyError("1F1 continuation step did not converge")
        m, dm = val, der
        zc = znext
    return m, dm


def _hyp1f1_core(a: complex, b: complex, z: np.ndarray):
    total, biggest = _series(a, b, z)
    cancel = _EPS * biggest / np.maximum(np.abs(total), 1e-300)
    bad = (cancel > HYP1F1_CANCEL_TOL) & (np.abs(z) > HYP1F1_SERIES_RADIUS)
    if np.any(bad):
        zb = z[bad]
        start = zb * (HYP1F1_SERIES_RADIUS / np.abs(zb))
        s0, _ = _series(a, b, start)
        s1, _ = _series(a + 1, b + 1, start)
        v, _ = _continue(a, b, zb, s0, (a / b) * s1, start)
        total = total.copy()
        total[bad] = v
    return total


def _hyp1f1_array(a: complex, b: complex, z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    neg = z.real < 0
    if np.any(~neg):
        out[~neg] = _hyp1f1_core(a, b, z[~neg])
    if np.any(neg):
        zn = z[neg]
        out[neg] = np.exp(zn) * _hyp1f1_core(b - a, b, -zn)
    return out


def hyp1f1_derivs(a, b, z):
    """Kummer's function M(a; b; z) with its first two z-derivatives.

    Uses the Taylor series at moderate |z| and, when the series would lose
    more than a few digits to cancellation, continues M along the ray from
    the origin by stepping the confluent ODE. Inputs with Re z < 0 go
    through Kummer's transformation M(a;b;z) = e^z M(b-a;b;-z) first.
    M' comes from M' = (a/b) M(a+1; b+1; z); M'' from the ODE for |z| > 1
    and from the same relation applied twice otherwise.
    """
    a = complex(a)
    b = complex(b)
    _check_b(b)
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(z) > HYP1F1_MAX_ABS_Z):
        raise DomainError(
            f"|z| = {np.max(np.abs(z)):.3g} exceeds the 1F1 budget {HYP1F1_MAX_ABS_Z:g}"
        )
    m0 = _hyp1f1_array(a, b, z)
    m1 = (a / b) * _hyp1f1_array(a + 1, b + 1, z) if a != 0 else np.zeros_like(z)
    # Away from the origin M'' follows from the ODE; near it, from the
    # contiguous relation (the ODE form cancels there).
    m2 = np.zeros_like(z)
    far = np.abs(z) > 1.0
    m2[far] = (a * m0[far] - (b - z[far]) * m1[far]) / z[far]
    if a * (a + 1) != 0 and np.any(~far):
        m2[~far] = (a * (a + 1)) / (b * (b + 1)) * _hyp1f1_array(a + 2, b + 2, z[~far])
    if scalar:
        return complex(m0[0]), complex(m1[0]), complex(m2[0])
    return m0, m1, m2


def hyp1f1(a, b, z):
    """Confluent hypergeometric function 1F1(a; b; z) for complex arguments."""
    return hyp1f1_derivs(a, b, z)[0]
