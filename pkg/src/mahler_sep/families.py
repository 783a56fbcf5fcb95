"""Extremal polynomial families and their sharpness ratios.

Every family is built from closed-form roots, so ratios carry no solver
noise.  The coefficient form is only expanded when asked for.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .measures import log_mahler_measure, separation
from .poly import Polynomial, RootSet, from_coefficients, from_roots


class FamilyKind(str, enum.Enum):
    GAUSSIAN = "gaussian"
    CONJUGATE_CLOSED = "conjugate_closed"
    ARITHMETIC_PROGRESSION = "arithmetic_progression"
    QUARTIC = "quartic"
    CUBIC_EXTREMAL = "cubic_extremal"


QUARTIC_MIN_SCALE = 1 / math.sqrt(2)
GAUSSIAN_RATIO_CONSTANT = 1.6
CONJUGATE_RATIO_CONSTANT = 1.7


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    n: int
    t: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", FamilyKind(self.kind))
        if self.n < 2:
            raise ValueError("family degree must be >= 2")
        if self.kind is FamilyKind.QUARTIC and self.n != 4:
            raise ValueError("quartic family has degree 4")
        if self.kind is FamilyKind.CUBIC_EXTREMAL and self.n != 3:
            raise ValueError("cubic extremal family has degree 3")

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "n": self.n, "t": self.t}


@dataclass(frozen=True)
class FamilyInstance:
    spec: FamilySpec
    roots: RootSet

    @cached_property
    def polynomial(self) -> Polynomial:
        # x^3 - 1 has a known exact integer form
        if self.spec.kind is FamilyKind.CUBIC_EXTREMAL:
            return from_coefficients([-1, 0, 0, 1])
        return from_roots(self.roots.roots)

    def __iter__(self):
        # unpacks as (polynomial, roots)
        return iter((self.polynomial, self.roots))


@dataclass(frozen=True)
class SharpnessRecord:
    n: int
    sep: float
    mahler: float
    log_mahler: float
    ratio: float
    family: FamilySpec


def _phase0(a: int, b: int) -> float:
    ph = math.atan2(b, a)
    return ph + 2 * math.pi if ph < 0 else ph


def gaussian_points(R) -> list[complex]:
    """Gaussian integers of modulus at most ``R``, by (modulus, argument in [0, 2pi)).

    The radius test ``a^2 + b^2 <= R^2`` is done exactly on the rational
    value of ``R``.
    """
    if R < 0:
        raise ValueError("radius must be >= 0")
    r2 = Fraction(R) ** 2
    k = math.isqrt(math.floor(r2))
    pts = [(a, b) for a in range(-k, k + 1) for b in range(-k, k + 1) if a * a + b * b <= r2]
    pts.sort(key=lambda ab: (ab[0] ** 2 + ab[1] ** 2, _phase0(*ab)))
    return [complex(a, b) for a, b in pts]


def gaussian_count(R) -> int:
    """Number of Gaussian integers with modulus at most ``R``, counted row by row."""
    r2 = Fraction(R) ** 2
    k = math.isqrt(math.floor(r2))
    total = 0
    for a in range(-k, k + 1):
        rest = r2 - a * a
        total += 2 * math.isqrt(math.floor(rest)) + 1
    return total


def gaussian_radius(n: int) -> float:
    return math.sqrt(n / math.pi) + math.sqrt(2)


def conjugate_closed_radius(n: int) -> float:
    return math.sqrt((n + 1) / math.pi) + math.sqrt(2)


def _check_scale(t):
    if t < 1:
        raise ValueError("scale parameter must be >= 1")


def gaussian_family(n: int, t: float = 1.0) -> FamilyInstance:
    """``n`` Gaussian integers of least modulus (0 first), scaled by ``t``."""
    _check_scale(t)
    spec = FamilySpec(FamilyKind.GAUSSIAN, n, t)
    pts = gaussian_points(gaussian_radius(n))
    if len(pts) < n:
        raise RuntimeError(f"only {len(pts)} lattice points within radius for n={n}")
    return FamilyInstance(spec, RootSet.exact(t * z for z in pts[:n]))


def _conjugate_closed_selection(n: int) -> list[complex]:
    cands = [z for z in gaussian_points(conjugate_closed_radius(n)) if z != 0]
    chosen = {1j, -1j}
    order = [1j, -1j]
    i = 0
    while len(order) < n:
        if i >= len(cands):
            raise RuntimeError(f"cannot fill {n} conjugate-closed slots within radius")
        z = cands[i]
        i += 1
        if z in chosen:
            continue
        room = n - len(order)
        if z.imag == 0:
            order.append(z)
            chosen.add(z)
        elif room >= 2:
            order += [z, z.conjugate()]
            chosen |= {z, z.conjugate()}
        # one slot left and z is not real: move on to the next real point
    return order


def conjugate_closed_family(n: int, t: float = 1.0) -> FamilyInstance:
    """Conjugation-closed nonzero Gaussian integers with a non-real root of least modulus.

    Greedy: seed ``{i, -i}``, then walk the lattice in canonical order,
    adding real points singly and non-real points with their conjugates.
    """
    _check_scale(t)
    spec = FamilySpec(FamilyKind.CONJUGATE_CLOSED, n, t)
    sel = _conjugate_closed_selection(n)
    sel.sort(key=lambda z: (z.real ** 2 + z.imag ** 2, _phase0(int(z.real), int(z.imag))))
    return FamilyInstance(spec, RootSet.exact(t * z for z in sel))


def arithmetic_progression_family(n: int, r: float = 1.0) -> FamilyInstance:
    """Roots ``j r`` for ``j = -m..m`` (n = 2m+1) or ``j = -m..m+1`` (n = 2m+2)."""
    if n < 4:
        raise ValueError("arithmetic progression family needs n >= 4")
    _check_scale(r)
    m = (n - 1) // 2
    hi = m if n % 2 else m + 1
    spec = FamilySpec(FamilyKind.ARITHMETIC_PROGRESSION, n, r)
    return FamilyInstance(spec, RootSet.exact(complex(j * r) for j in range(-m, hi + 1)))


def quartic_family(t: float) -> FamilyInstance:
    """Roots ``t(+-1 +- i)``; equality case of the signature (0,2) bound."""
    if t < QUARTIC_MIN_SCALE * (1 - 1e-12):
        raise ValueError("quartic family needs t >= 1/sqrt(2)")
    spec = FamilySpec(FamilyKind.QUARTIC, 4, t)
    roots = [complex(t * a, t * b) for a, b in ((1, 1), (-1, 1), (-1, -1), (1, -1))]
    return FamilyInstance(spec, RootSet.exact(roots))


def cubic_extremal() -> FamilyInstance:
    """``x^3 - 1`` with its roots in closed form."""
    h = math.sqrt(3) / 2
    roots = [complex(1.0), complex(-0.5, h), complex(-0.5, -h)]
    return FamilyInstance(FamilySpec(FamilyKind.CUBIC_EXTREMAL, 3, 1.0), RootSet.exact(roots))


def build(fs: FamilySpec) -> FamilyInstance:
    kind = fs.kind
    if kind is FamilyKind.GAUSSIAN:
        return gaussian_family(fs.n, fs.t)
    if kind is FamilyKind.CONJUGATE_CLOSED:
        return conjugate_closed_family(fs.n, fs.t)
    if kind is FamilyKind.ARITHMETIC_PROGRESSION:
        return arithmetic_progression_family(fs.n, fs.t)
    if kind is FamilyKind.QUARTIC:
        return quartic_family(fs.t)
    return cubic_extremal()


def sharpness_ratio(fs: FamilySpec | FamilyInstance) -> SharpnessRecord:
    """Separation relative to the bound the family is built to approach.

    gaussian: ``sep 1.6 sqrt(n) / M^{1/(n-1)}`` (at least 1);
    conjugate_closed: ``sep 1.7 sqrt(n) / M^{1/n}`` (at least 1);
    arithmetic_progression: ``n sep / M^{1/(n-1)}`` (tends to 2e);
    quartic: ``sep / (sqrt(2) M^{1/4})`` and cubic_extremal:
    ``sep / (sqrt(3) M^{1/2})`` (both exactly 1).
    """
    inst = fs if isinstance(fs, FamilyInstance) else build(fs)
    spec = inst.spec
    n = spec.n
    sep = separation(inst.roots)
    lm = log_mahler_measure(inst.roots)
    kind = spec.kind
    if kind is FamilyKind.GAUSSIAN:
        log_ratio = math.log(sep * GAUSSIAN_RATIO_CONSTANT * math.sqrt(n)) - lm / (n - 1)
    elif kind is FamilyKind.CONJUGATE_CLOSED:
        log_ratio = math.log(sep * CONJUGATE_RATIO_CONSTANT * math.sqrt(n)) - lm / n
    elif kind is FamilyKind.ARITHMETIC_PROGRESSION:
        log_ratio = math.log(n * sep) - lm / (n - 1)
    elif kind is FamilyKind.QUARTIC:
        log_ratio = math.log(sep / math.sqrt(2)) - lm / 4
    else:
        log_ratio = math.log(sep / math.sqrt(3)) - lm / 2
    mahler = math.exp(lm) if lm < 709.0 else math.inf
    return SharpnessRecord(n, sep, mahler, lm, math.exp(log_ratio), spec)


def family_json(inst: FamilyInstance) -> dict:
    rec = sharpness_ratio(inst)
    return {
        "spec": inst.spec.to_json(),
        "roots": [[z.real, z.imag] for z in inst.roots.roots],
        "sep": rec.sep,
        "mahler": rec.mahler,
        "log_mahler": rec.log_mahler,
        "ratio": rec.ratio,
    }
