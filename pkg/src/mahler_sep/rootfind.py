"""Simultaneous root finding (Aberth-Ehrlich) with per-root error estimates."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .poly import Polynomial, RootSet, RootSource, height

EPS = np.finfo(float).eps
UNIT_ROUNDOFF = EPS / 2
BINARY64_DIGITS = 16
# digits used when an ill-conditioned binary64 result is refined automatically
REFINE_DIGITS = 40
ANGLE_OFFSET = 0.4
SEPARABLE_TOL = 1e-8


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 200
    convergence_tol: float = 1e-13
    polish_steps: int = 3
    precision: int = BINARY64_DIGITS
    refine: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be positive")
        if self.polish_steps < 0:
            raise ValueError("polish_steps must be >= 0")
        if self.precision < 1:
            raise ValueError("precision must be >= 1 digit")


class RootFindingError(RuntimeError):
    """Raised when the iteration does not converge; keeps the best iterate."""

    def __init__(self, message, best, residuals):
        super().__init__(message)
        self.best = tuple(best)
        self.residuals = tuple(residuals)


def initial_guesses(p: Polynomial) -> np.ndarray:
    n = p.degree
    radius = 1.0 + height(p)
    k = np.arange(n)
    return radius * np.exp(1j * (2 * np.pi * k / n + ANGLE_OFFSET))


def _eval_all(a_high, z):
    """Value and derivative at every point of ``z`` (coefficients highest first)."""
    p = np.full_like(z, a_high[0])
    dp = np.zeros_like(z)
    for c in a_high[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _abs_eval(abs_high, r):
    s = np.full_like(r, abs_high[0])
    for c in abs_high[1:]:
        s = s * r + c
    return s


def _aberth_binary64(coeffs, z, cfg: SolverConfig):
    a = np.array([complex(c) for c in coeffs[::-1]])
    abs_a = np.abs(a)
    n = len(a) - 1
    gamma = 4 * n * UNIT_ROUNDOFF
    done = np.zeros(n, dtype=bool)
    for _ in range(cfg.max_iterations):
        p, dp = _eval_all(a, z)
        done |= np.abs(p) <= gamma * _abs_eval(abs_a, np.abs(z))
        if done.all():
            return z, True
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dp != 0, p / dp, p)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            w = ratio / (1.0 - ratio * inv.sum(axis=1))
        w = np.where(np.isfinite(w), w, 0.0)
        w[done] = 0.0
        z = z - w
        # absolute floor: iterates creeping linearly onto a multiple root at 0
        done |= np.abs(w) <= cfg.convergence_tol * np.maximum(np.abs(z), EPS)
    p, _ = _eval_all(a, z)
    done |= np.abs(p) <= gamma * _abs_eval(abs_a, np.abs(z))
    return z, bool(done.all())


def _polish_binary64(coeffs, z, steps):
    a = np.array([complex(c) for c in coeffs[::-1]])
    for _ in range(steps):
        p, dp = _eval_all(a, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = np.where(dp != 0, z - p / dp, z)
        pc, _ = _eval_all(a, cand)
        z = np.where(np.isfinite(cand) & (np.abs(pc) < np.abs(p)), cand, z)
    return z


def _nearest_distances(z):
    if len(z) < 2:
        return np.full(len(z), np.inf)
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)


def _residuals_binary64(coeffs, z):
    """Forward error estimate per root.

    Newton quotient inflated by the Horner rounding bound; at near-multiple
    roots (derivative negligible) the distance to the nearest neighbour is
    used instead since the quotient carries no information there.
    """
    a = np.array([complex(c) for c in coeffs[::-1]])
    n = len(a) - 1
    abs_a = np.abs(a)
    abs_da = np.abs(np.array([k * complex(coeffs[k]) for k in range(n, 0, -1)]))
    r = np.abs(z)
    p, dp = _eval_all(a, z)
    s = _abs_eval(abs_a, r)
    s1 = _abs_eval(abs_da, r) if n > 1 else np.full_like(r, abs_da[0])
    gamma = 2 * n * UNIT_ROUNDOFF
    nn = _nearest_distances(z)
    floor = math.sqrt(EPS) * np.maximum(1.0, r)
    with np.errstate(divide="ignore", invalid="ignore"):
        newton = (np.abs(p) + gamma * s) / np.abs(dp)
    degenerate = ~(np.abs(dp) > 1e-12 * s1)
    cluster = np.maximum(np.where(np.isfinite(nn), nn, 0.0), floor)
    return np.where(degenerate, cluster, newton)


def _aberth_mp(coeffs, z0, cfg: SolverConfig, digits: int):
    """Aberth iteration at ``digits`` significant digits; returns (roots, residuals, ok)."""
    with mpmath.workdps(digits + 5):
        n = len(coeffs) - 1
        a = [mpmath.mpc(c.real, c.imag) if isinstance(c, complex) else mpmath.mpf(c)
             for c in coeffs]
        da = [k * a[k] for k in range(1, n + 1)]
        abs_a = [abs(c) for c in a]
        z = [mpmath.mpc(complex(v)) for v in z0]
        u = mpmath.mpf(10) ** (-digits)
        tol = min(mpmath.mpf(cfg.convergence_tol), u * 100)
        gamma = 4 * n * u

        def ev(x):
            pv = a[n]
            dv = mpmath.mpf(0)
            for k in range(n - 1, -1, -1):
                dv = dv * x + pv
                pv = pv * x + a[k]
            return pv, dv

        def sabs(cs, r):
            acc = mpmath.mpf(0)
            for c in reversed(cs):
                acc = acc * r + c
            return acc

        done = [False] * n
        for _ in range(cfg.max_iterations):
            for i in range(n):
                if done[i]:
                    continue
                pv, dv = ev(z[i])
                if abs(pv) <= gamma * sabs(abs_a, abs(z[i])):
                    done[i] = True
                    continue
                ratio = pv / dv if dv != 0 else pv
                s = mpmath.fsum(1 / (z[i] - z[j]) for j in range(n) if j != i)
                w = ratio / (1 - ratio * s)
                z[i] -= w
                if abs(w) <= tol * max(abs(z[i]), u):
                    done[i] = True
            if all(done):
                break
        res = []
        abs_da = [abs(c) for c in da]
        for i in range(n):
            pv, dv = ev(z[i])
            s = sabs(abs_a, abs(z[i]))
            s1 = sabs(abs_da, abs(z[i]))
            if abs(dv) > u * s1:
                e = (abs(pv) + gamma * s) / abs(dv)
            else:
                e = min(abs(z[i] - z[j]) for j in range(n) if j != i) if n > 1 else u
            res.append(float(e) + UNIT_ROUNDOFF * float(abs(z[i])))
        roots = np.array([complex(v) for v in z])
        return roots, np.array(res), all(done)


def _needs_refinement(z, res):
    nn = _nearest_distances(z)
    return bool(np.any(res > 1e-12 * nn))


def _sorted_rootset(z, res) -> RootSet:
    order = sorted(range(len(z)), key=lambda i: (abs(z[i]), cmath.phase(z[i])))
    return RootSet(
        tuple(complex(z[i]) for i in order),
        tuple(float(res[i]) for i in order),
        RootSource.COMPUTED,
    )


def find_roots(p: Polynomial, cfg: SolverConfig | None = None) -> RootSet:
    """All complex roots of ``p``, sorted by (modulus, argument).

    Parameters
    ----------
    p : Polynomial
        Monic polynomial of degree >= 1.
    cfg : SolverConfig, optional
        ``precision`` above 16 digits runs the iteration in software
        extended precision.  With ``refine`` set, binary64 results whose
        error estimates are not small against the root spacing are redone at
        higher precision.

    Raises
    ------
    RootFindingError
        If no path converges within ``max_iterations``.
    """
    cfg = cfg or SolverConfig()
    coeffs = p.coeffs
    n = p.degree
    if n == 1:
        root = -complex(coeffs[0])
        return RootSet((root,), (0.0,), RootSource.COMPUTED)

    z0 = initial_guesses(p)
    if cfg.precision > BINARY64_DIGITS:
        z, res, ok = _aberth_mp(coeffs, z0, cfg, cfg.precision)
        if not ok:
            raise RootFindingError("extended-precision iteration did not converge", z, res)
        return _sorted_rootset(z, res)

    z, ok = _aberth_binary64(coeffs, z0, cfg)
    if ok:
        z = _polish_binary64(coeffs, z, cfg.polish_steps)
        res = _residuals_binary64(coeffs, z)
        if cfg.refine and _needs_refinement(z, res):
            zr, resr, okr = _aberth_mp(coeffs, z, cfg, REFINE_DIGITS)
            if okr:
                z, res = zr, resr
        return _sorted_rootset(z, res)

    res = _residuals_binary64(coeffs, z)
    if cfg.refine:
        zr, resr, okr = _aberth_mp(coeffs, z, cfg, REFINE_DIGITS)
        if okr:
            return _sorted_rootset(zr, resr)
    raise RootFindingError(
        f"Aberth iteration did not converge in {cfg.max_iterations} steps", z, res
    )


def certify_separable(rs: RootSet) -> tuple[bool, float]:
    """Decide whether the roots are pairwise distinct.

    Returns ``(separable, min_distance)``.  Distinct means the closest pair
    is farther apart than ``1e-8 * max(1, max|root|)`` and no two error
    discs (radius ``residual_bound``) overlap.
    """
    z = np.array(rs.roots)
    if len(z) < 2:
        return True, math.inf
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    dmin = float(d.min())
    scale = max(1.0, float(np.abs(z).max()))
    if dmin <= SEPARABLE_TOL * scale:
        return False, dmin
    r = np.array(rs.residual_bound)
    overlap = d <= r[:, None] + r[None, :]
    return (not bool(overlap.any())), dmin
