"""Separation, absolute separation, Mahler measure, discriminant, signature."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .poly import (
    CONJUGATE_TOL,
    Backing,
    Polynomial,
    RootSet,
    conjugate_pairing,
    derivative,
    height,
)
from .rootfind import SEPARABLE_TOL

EQUAL_MODULUS_TOL = 1e-9
REAL_TOL = 1e-9
# above this degree M and |D| are accumulated as logarithms
LOG_SPACE_DEGREE = 50
CROSS_CHECK_NODES = 65536


class SignatureError(ValueError):
    """Non-real roots could not be paired with their conjugates."""


class Signature(NamedTuple):
    t: int
    s: int

    @property
    def degree(self) -> int:
        return self.t + 2 * self.s

    def __str__(self):
        return f"({self.t},{self.s})"


@dataclass(frozen=True)
class MeasureReport:
    sep: Optional[float]
    abs_sep: Optional[float]
    mahler: float
    log_mahler: float
    disc: complex
    log_abs_disc: float
    height: Optional[float]
    signature: Optional[Signature]


def _distinct_scale(z: np.ndarray) -> float:
    return SEPARABLE_TOL * max(1.0, float(np.abs(z).max()))


def separation(rs: RootSet) -> Optional[float]:
    """Minimum distance between distinct roots; None when all roots coincide."""
    z = np.array(rs.roots)
    if len(z) < 2:
        return None
    d = np.abs(z[:, None] - z[None, :])
    iu = np.triu_indices(len(z), 1)
    d = d[iu]
    d = d[d > _distinct_scale(z)]
    return float(d.min()) if d.size else None


def abs_separation(rs: RootSet) -> Optional[float]:
    """Minimum nonzero gap between root moduli; None when all moduli agree."""
    m = np.sort(np.abs(np.array(rs.roots)))
    if len(m) < 2:
        return None
    best = None
    for i in range(len(m)):
        for j in range(i + 1, len(m)):
            gap = m[j] - m[i]
            if gap > EQUAL_MODULUS_TOL * max(1.0, m[i]):
                if best is None or gap < best:
                    best = float(gap)
                # later j only widen the gap
                break
    return best


def distinct_modulus_separation(rs: RootSet) -> Optional[float]:
    """Minimum ``|a_i - a_j|`` over pairs whose moduli differ; bounds abs_sep from above.

    Plain separation does not: a close conjugate pair shares one modulus.
    """
    z = rs.roots
    best = None
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            mi, mj = abs(z[i]), abs(z[j])
            if abs(mi - mj) > EQUAL_MODULUS_TOL * max(1.0, min(mi, mj)):
                d = abs(z[i] - z[j])
                if best is None or d < best:
                    best = d
    return best


def log_mahler_measure(rs: RootSet) -> float:
    return math.fsum(math.log(abs(z)) for z in rs.roots if abs(z) > 1.0)


def mahler_measure(rs: RootSet) -> float:
    """Product of ``max(1, |root|)``; summed in log space for large degree."""
    if len(rs) > LOG_SPACE_DEGREE:
        lm = log_mahler_measure(rs)
        return math.exp(lm) if lm < 709.0 else math.inf
    out = 1.0
    for z in rs.roots:
        out *= max(1.0, abs(z))
    return out


def mahler_cross_check(p: Polynomial, nodes: int = CROSS_CHECK_NODES) -> float:
    """Mahler measure as ``exp`` of the mean of ``log|p|`` on the unit circle.

    Trapezoid rule on ``nodes`` equispaced points.  A node within 1e-6 of a
    root on the circle (detected by the Newton step length ``|p/p'|``, so no
    roots are needed) is moved by half a step.
    """
    a = np.array([complex(c) for c in p.coeffs])
    da = np.array([complex(c) for c in derivative(p)])
    theta = 2 * np.pi * np.arange(nodes) / nodes
    z = np.exp(1j * theta)
    val = np.polynomial.polynomial.polyval(z, a)
    dval = np.polynomial.polynomial.polyval(z, da)
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.abs(val) / np.abs(dval)
    near = (val == 0) | (step <= 1e-6)
    if near.any():
        z2 = np.exp(1j * (theta[near] + np.pi / nodes))
        val[near] = np.polynomial.polynomial.polyval(z2, a)
    return float(np.exp(np.mean(np.log(np.abs(val)))))


def log_abs_discriminant(rs: RootSet) -> float:
    z = rs.roots
    acc = []
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            d = abs(z[i] - z[j])
            if d == 0:
                return -math.inf
            acc.append(math.log(d))
    return 2.0 * math.fsum(acc)


def discriminant_from_roots(rs: RootSet) -> complex:
    """``prod_{i<j} (a_i - a_j)^2``; log magnitude plus argument for large degree."""
    z = rs.roots
    n = len(z)
    if n <= LOG_SPACE_DEGREE:
        out = complex(1.0)
        for i in range(n):
            for j in range(i + 1, n):
                out *= (z[i] - z[j]) ** 2
        return out
    lm = log_abs_discriminant(rs)
    if lm == -math.inf:
        return complex(0.0)
    arg = math.fsum(
        2.0 * cmath.phase(z[i] - z[j]) for i in range(n) for j in range(i + 1, n)
    )
    arg = math.remainder(arg, 2 * math.pi)
    mag = math.exp(lm) if lm < 709.0 else math.inf
    return cmath.rect(mag, arg) if math.isfinite(mag) else complex(math.inf, 0.0)


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of ``lc(b)^(da-db+1) * a`` by ``b``; high-first lists."""
    r = list(a)
    db = len(b) - 1
    lb = b[0]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and any(r):
        lr = r[0]
        r = [lb * c for c in r]
        for k in range(len(b)):
            r[k] -= lr * b[k]
        r.pop(0)
        e -= 1
        while r and r[0] == 0:
            r.pop(0)
    if not r:
        return []
    return [lb ** e * c for c in r]


def resultant_int(f: list, g: list) -> int:
    """Resultant of integer polynomials (high-first) by subresultant PRS."""
    if not f or not g or not any(f) or not any(g):
        return 0
    a, b = list(f), list(g)
    s = 1
    if len(a) < len(b):
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            s = -1
        a, b = b, a
    if len(b) == 1:
        return s * b[0] ** (len(a) - 1)
    g_, h = 1, 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = _prem(a, b)
        if not r:
            return 0
        a = b
        den = g_ * h ** delta
        b = [c // den for c in r]
        g_ = a[0]
        if delta:
            h = g_ ** delta // h ** (delta - 1)
        if len(b) == 1:
            break
    da = len(a) - 1
    h = b[0] ** da // h ** (da - 1)
    return s * h


def discriminant_exact(p: Polynomial) -> int:
    """Exact integer discriminant ``(-1)^{n(n-1)/2} Res(f, f')`` of a monic f."""
    if p.backing is not Backing.EXACT:
        raise ValueError("exact discriminant needs exact integer backing")
    n = p.degree
    if n == 1:
        return 1
    f = list(p.coeffs[::-1])
    df = list(derivative(p)[::-1])
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant_int(f, df)


def signature_of(rs: RootSet) -> Signature:
    """Count real roots and conjugate pairs.

    Raises
    ------
    SignatureError
        If the non-real roots do not pair up under conjugation.
    """
    z = rs.roots
    real = [abs(v.imag) <= REAL_TOL * max(1.0, abs(v)) for v in z]
    t = sum(real)
    nonreal = [v for v, r in zip(z, real) if not r]
    partner = conjugate_pairing(nonreal, CONJUGATE_TOL)
    if partner is None or any(partner[i] == i for i in range(len(nonreal))):
        raise SignatureError("non-real roots are not closed under conjugation")
    return Signature(t, len(nonreal) // 2)


def measure(rs: RootSet, p: Optional[Polynomial] = None, *, real: Optional[bool] = None) -> MeasureReport:
    """Collect every measured quantity for one root set.

    ``real`` says whether the originating polynomial has real coefficients;
    by default it is read off ``p`` or, failing that, from conjugation
    closure of the roots.
    """
    if real is None:
        real = p.is_real if p is not None else conjugate_pairing(rs.roots) is not None
    sig = None
    if real:
        try:
            sig = signature_of(rs)
        except SignatureError:
            sig = None
    if p is not None and p.backing is Backing.EXACT:
        d_int = discriminant_exact(p)
        disc = complex(d_int) if abs(d_int) < 2 ** 1000 else complex(math.copysign(math.inf, d_int))
        log_disc = math.log(abs(d_int)) if d_int else -math.inf
    else:
        disc = discriminant_from_roots(rs)
        log_disc = log_abs_discriminant(rs)
    lm = log_mahler_measure(rs)
    return MeasureReport(
        sep=separation(rs),
        abs_sep=abs_separation(rs),
        mahler=mahler_measure(rs),
        log_mahler=lm,
        disc=disc,
        log_abs_disc=log_disc,
        height=height(p) if p is not None else None,
        signature=sig,
    )
