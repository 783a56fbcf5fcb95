"""Lower and upper bounds on root separation, and the analytic inequalities behind them.

Every bound is evaluated in log space and exponentiated at the end, since
factors like ``n^{(n+2)/2}`` and ``M^{n-1}`` leave binary64 range quickly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .measures import (
    EQUAL_MODULUS_TOL,
    REAL_TOL,
    MeasureReport,
    Signature,
    measure,
    separation,
)
from .poly import Backing, Polynomial, RootSet, is_conjugate_closed
from .rootfind import certify_separable

SLACK = 1e-9
MAIN_CONSTANT = 34.0
TOTALLY_REAL_CONSTANT = 6.33

GENERAL = "general"
NONREAL_MIN = "nonreal_min"

LOWER = "lower"
UPPER = "upper"

PACKING_GRID = ("r", "2r", "4r", "8r", "max")

BOUND_IDS = (
    "mahler_lower",
    "mahler_lower_integer",
    "trivial_upper",
    "discriminant_upper",
    "main_upper_general",
    "main_upper_nonreal_min",
    "improved_upper",
) + tuple(f"packing_{g}" for g in PACKING_GRID)


class NotSeparableError(ValueError):
    pass


def _exp(x: float) -> float:
    if x > 709.7:
        return math.inf
    return math.exp(x)


def _log_lower(n: int, log_m: float, log_d: float) -> float:
    return 0.5 * (math.log(3.0) + log_d) - 0.5 * (n + 2) * math.log(n) - (n - 1) * log_m


def mahler_lower_bound(n: int, M: float, D_abs: float = 1.0, integer_case: bool = False) -> Optional[float]:
    """``sqrt(3|D|) / (n^{(n+2)/2} M^{n-1})``; ``|D|`` is taken as 1 in the integer case.

    Returns None (inapplicable) when ``|D| = 0``.
    """
    if n < 2 or M < 1:
        raise ValueError("need n >= 2 and M >= 1")
    if integer_case:
        D_abs = 1.0
    if D_abs <= 0:
        return None
    return _exp(_log_lower(n, math.log(M), math.log(D_abs)))


def trivial_upper(M: float) -> float:
    if M < 1:
        raise ValueError("M must be >= 1")
    return 2.0 * M


def _log_disc_upper(n: int, log_m: float) -> float:
    return math.log(n) / (n - 1) + 2.0 * log_m / n


def discriminant_upper(n: int, M: float) -> float:
    """``n^{1/(n-1)} M^{2/n}``."""
    if n < 2 or M < 1:
        raise ValueError("need n >= 2 and M >= 1")
    return _exp(_log_disc_upper(n, math.log(M)))


def main_constant(n: int) -> float:
    return min(2.0, MAIN_CONSTANT / math.sqrt(n))


def _log_main_upper(n: int, log_m: float, case: str) -> float:
    if case == GENERAL:
        e = 1.0 / (n - 1)
    elif case == NONREAL_MIN:
        e = 1.0 / n
    else:
        raise ValueError(f"unknown exponent case {case!r}")
    return math.log(main_constant(n)) + e * log_m


def main_upper(n: int, M: float, exponent_case: str = GENERAL) -> float:
    """``min(2, 34/sqrt(n)) M^{1/(n-1)}``, or ``M^{1/n}`` in the non-real case."""
    if n < 2 or M < 1:
        raise ValueError("need n >= 2 and M >= 1")
    return _exp(_log_main_upper(n, math.log(M), exponent_case))


def applicable_exponent_case(rs: RootSet) -> str:
    """``nonreal_min`` iff a root of least modulus is not real."""
    mods = [abs(z) for z in rs.roots]
    m0 = min(mods)
    for z, m in zip(rs.roots, mods):
        if m - m0 <= EQUAL_MODULUS_TOL * max(1.0, m0) and abs(z.imag) > REAL_TOL * max(1.0, m):
            return NONREAL_MIN
    return GENERAL


def _log_improved_upper(sig: Signature, n: int, log_m: float) -> Optional[float]:
    t, s = sig
    if t + 2 * s != n:
        raise ValueError(f"signature {sig} inconsistent with degree {n}")
    if n < 2:
        raise ValueError("need n >= 2")
    if (t, s) == (1, 1):
        return 0.5 * math.log(3.0) + log_m / 2
    if (t, s) == (0, 2):
        return 0.5 * math.log(2.0) + log_m / 4
    if s == 0:
        if n >= 4:
            return math.log(TOTALLY_REAL_CONSTANT / n) + log_m / (n - 1)
        # degrees 2 and 3 fall back on the general bound
        return _log_main_upper(n, log_m, GENERAL)
    return None


def improved_upper(sig, n: int, M: float) -> Optional[float]:
    """Signature-specific upper bound, or None where no constant is known.

    (1,1): ``sqrt(3) M^{1/2}``; (0,2): ``sqrt(2) M^{1/4}``; (t,0), n >= 4:
    ``6.33/n M^{1/(n-1)}``; (t,0), n < 4 uses :func:`main_upper`.
    """
    sig = Signature(*sig)
    lv = _log_improved_upper(sig, n, math.log(M))
    return None if lv is None else _exp(lv)


@dataclass(frozen=True)
class LehmerWindow:
    n: int
    mu: float
    lo: float
    hi: float


def lehmer_window(n: int, mu: float) -> LehmerWindow:
    """Interval of separations left open for a polynomial with ``M < mu``."""
    if n < 2 or not mu > 1:
        raise ValueError("need n >= 2 and mu > 1")
    log_mu = math.log(mu)
    lo = _exp(_log_lower(n, log_mu, 0.0))
    hi = _exp(_log_main_upper(n, log_mu, GENERAL))
    return LehmerWindow(n, mu, lo, hi)


class PackingResult(NamedTuple):
    count: int
    count_closed: int
    bound: float
    ok: bool


def packing_check(rs: RootSet, R: float, sep: Optional[float] = None) -> PackingResult:
    """Disjoint-disc count: roots with ``|a| < R`` (and ``<= R``) vs ``(R/r + 1)^2``.

    ``r`` is half the separation.  Both counts must be strictly below the bound.
    """
    if sep is None:
        ok, _ = certify_separable(rs)
        if not ok:
            raise NotSeparableError("packing check needs distinct roots")
        sep = separation(rs)
    if sep is None or sep <= 0:
        raise NotSeparableError("packing check needs distinct roots")
    r = sep / 2.0
    mods = np.abs(np.array(rs.roots))
    count = int((mods < R).sum())
    count_closed = int((mods <= R).sum())
    bound = (R / r + 1.0) ** 2
    return PackingResult(count, count_closed, bound, count < bound and count_closed < bound)


@dataclass(frozen=True)
class BoundEntry:
    bound_id: str
    side: str
    value: Optional[float]
    applicable: bool
    satisfied: Optional[bool]
    margin: Optional[float]

    def to_json(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "side": self.side,
            "value": self.value,
            "applicable": self.applicable,
            "satisfied": self.satisfied,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class BoundReport:
    n: int
    measured: MeasureReport
    entries: tuple = field(default=())

    @property
    def all_satisfied(self) -> bool:
        return all(e.satisfied for e in self.entries if e.applicable)

    @property
    def violations(self) -> list:
        return [e for e in self.entries if e.applicable and not e.satisfied]

    def entry(self, bound_id: str) -> BoundEntry:
        for e in self.entries:
            if e.bound_id == bound_id:
                return e
        raise KeyError(bound_id)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sep": self.measured.sep,
            "abs_sep": self.measured.abs_sep,
            "mahler": self.measured.mahler,
            "entries": [e.to_json() for e in self.entries],
        }


def _entry(bound_id, side, log_value, quantity) -> BoundEntry:
    if log_value is None or quantity is None:
        return BoundEntry(bound_id, side, None, False, None, None)
    value = _exp(log_value)
    margin = quantity - value if side == LOWER else value - quantity
    return BoundEntry(bound_id, side, value, True, margin >= -SLACK * max(1.0, quantity), margin)


def check_all(
    rs: RootSet,
    p: Optional[Polynomial] = None,
    *,
    real: Optional[bool] = None,
    measured: Optional[MeasureReport] = None,
) -> BoundReport:
    """Evaluate every bound against the measured separation of ``rs``.

    ``p`` (when given) decides realness and enables the integer variant of
    the lower bound for exact-backed input.  Entries that do not apply are
    kept and flagged ``applicable=False``.

    Raises
    ------
    NotSeparableError
        If the roots are not certified distinct.
    """
    n = len(rs)
    if n < 2:
        raise ValueError("bounds need degree >= 2")
    if real is None:
        real = p.is_real if p is not None else is_conjugate_closed(rs.roots)
    m = measured or measure(rs, p, real=real)
    separable, _ = certify_separable(rs)
    if p is not None and p.backing is Backing.EXACT:
        separable = m.log_abs_disc > -math.inf
    if not separable or m.sep is None:
        raise NotSeparableError("roots are not certified distinct")
    sep = m.sep
    log_m = m.log_mahler
    integer = p is not None and p.backing is Backing.EXACT

    case = applicable_exponent_case(rs) if real else GENERAL
    log_improved = None
    if real and m.signature is not None:
        log_improved = _log_improved_upper(m.signature, n, log_m)

    entries = [
        _entry("mahler_lower", LOWER,
               _log_lower(n, log_m, m.log_abs_disc) if m.log_abs_disc > -math.inf else None, sep),
        _entry("mahler_lower_integer", LOWER, _log_lower(n, log_m, 0.0) if integer else None, sep),
        _entry("trivial_upper", UPPER, math.log(2.0) + log_m, sep),
        _entry("discriminant_upper", UPPER, _log_disc_upper(n, log_m), sep),
        _entry("main_upper_general", UPPER, _log_main_upper(n, log_m, GENERAL), sep),
        _entry("main_upper_nonreal_min", UPPER,
               _log_main_upper(n, log_m, NONREAL_MIN) if case == NONREAL_MIN else None, sep),
        _entry("improved_upper", UPPER, log_improved, sep),
    ]

    r = sep / 2.0
    max_mod = max(abs(z) for z in rs.roots)
    radii = (r, 2 * r, 4 * r, 8 * r, max_mod)
    for label, R in zip(PACKING_GRID, radii):
        pk = packing_check(rs, R, sep=sep)
        entries.append(BoundEntry(
            f"packing_{label}", UPPER, pk.bound, True, pk.ok, pk.bound - pk.count_closed,
        ))
    return BoundReport(n, m, tuple(entries))


class InequalityCheck(NamedTuple):
    lhs: float
    rhs: float
    ok: bool


def central_binomial_check(n: int) -> InequalityCheck:
    """``C(n, floor(n/2)) <= 2^{n+1} / sqrt(pi (2n+1))`` with an exact left side."""
    if n < 3:
        raise ValueError("n must be >= 3")
    c = math.comb(n, n // 2)
    log_rhs = (n + 1) * math.log(2.0) - 0.5 * math.log(math.pi * (2 * n + 1))
    log_lhs = math.log(c)
    return InequalityCheck(_exp(log_lhs), _exp(log_rhs), log_lhs <= log_rhs)


def central_binomial_even_check(ell: int) -> InequalityCheck:
    """``C(2l, l) <= 4^l / sqrt(pi (l + 1/4))``."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    log_lhs = math.log(math.comb(2 * ell, ell))
    log_rhs = ell * math.log(4.0) - 0.5 * math.log(math.pi * (ell + 0.25))
    return InequalityCheck(_exp(log_lhs), _exp(log_rhs), log_lhs <= log_rhs)


def wendel_check(m: int) -> InequalityCheck:
    """``Gamma(m + 1/2) > m! / sqrt(m + 1/2)``.

    The left side is ``(2m)! sqrt(pi) / (4^m m!)``, formed from exact integers.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    log_lhs = (math.log(math.factorial(2 * m) // math.factorial(m))
               + 0.5 * math.log(math.pi) - m * math.log(4.0))
    log_rhs = math.log(math.factorial(m)) - 0.5 * math.log(m + 0.5)
    return InequalityCheck(_exp(log_lhs), _exp(log_rhs), log_lhs > log_rhs)


def robbins_check(n: int) -> InequalityCheck:
    """``n! > sqrt(2 pi n) (n/e)^n e^{1/(12n+1)}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    log_lhs = math.log(math.factorial(n))
    log_rhs = math.fsum([
        0.5 * math.log(2 * math.pi * n), n * math.log(n), -float(n), 1.0 / (12 * n + 1),
    ])
    return InequalityCheck(_exp(log_lhs), _exp(log_rhs), log_lhs > log_rhs)


def totally_real_constant_check(n: int) -> InequalityCheck:
    """Numeric steps closing the 6.33/n bound for real-rooted polynomials, n >= 4.

    Checks ``2 sqrt(2n(2n+1)) e^{1/(12n+1)} / (n+1) > 3.46`` and
    ``2e (2e/3.46)^{1/3} / n^{n/(n-1)} <= 6.33/n``; reports the second.
    """
    if n < 4:
        raise ValueError("n must be >= 4")
    c = 2.0 * math.sqrt(2 * n * (2 * n + 1)) * math.exp(1.0 / (12 * n + 1)) / (n + 1)
    two_e = 2.0 * math.e
    lhs = two_e * (two_e / 3.46) ** (1.0 / 3.0) / n ** (n / (n - 1))
    rhs = TOTALLY_REAL_CONSTANT / n
    return InequalityCheck(lhs, rhs, c > 3.46 and lhs <= rhs)
