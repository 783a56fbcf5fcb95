"""Monic univariate polynomials and root multisets.

Coefficients are stored constant term first.  A polynomial has one of two
backings: ``EXACT`` (Python integers, arbitrary precision) or ``FLOAT``
(binary64 complex numbers).
"""

from __future__ import annotations

import enum
import numbers
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Sequence


class Backing(enum.Enum):
    EXACT = "exact-integer"
    FLOAT = "floating-complex"


class RootSource(enum.Enum):
    COMPUTED = "computed"
    EXACT = "exact-construction"


# relative tolerance for pairing a root with the conjugate of another
CONJUGATE_TOL = 1e-9


@dataclass(frozen=True)
class Polynomial:
    """A monic polynomial.

    ``scale`` is the leading coefficient seen before normalization; it is
    metadata only and never enters any measure.
    """

    coeffs: tuple
    backing: Backing
    scale: complex | int = 1

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if self.coeffs[-1] != 1:
            raise ValueError("polynomial is not monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_real(self) -> bool:
        if self.backing is Backing.EXACT:
            return True
        return all(c.imag == 0 for c in self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r}, {self.backing.name})"


@dataclass(frozen=True)
class RootSet:
    roots: tuple
    residual_bound: tuple = field(default=())
    source: RootSource = RootSource.COMPUTED

    def __post_init__(self):
        roots = tuple(complex(z) for z in self.roots)
        object.__setattr__(self, "roots", roots)
        res = tuple(float(r) for r in self.residual_bound)
        if self.source is RootSource.EXACT:
            if any(res):
                raise ValueError("exact-construction roots carry zero residuals")
            res = (0.0,) * len(roots)
        if len(res) != len(roots):
            raise ValueError("one residual bound per root required")
        object.__setattr__(self, "residual_bound", res)

    @classmethod
    def exact(cls, roots: Iterable[complex]) -> "RootSet":
        return cls(tuple(roots), source=RootSource.EXACT)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def degree(self) -> int:
        return len(self.roots)


def _parse_number(c):
    """Return an int for integral input, otherwise a complex."""
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, numbers.Integral):
        return int(c)
    if isinstance(c, str):
        s = c.strip()
        try:
            d = Decimal(s)
        except InvalidOperation:
            return complex(s.replace(" ", ""))
        if not d.is_finite():
            raise ValueError(f"non-finite coefficient {c!r}")
        if d == d.to_integral_value():
            return int(d)
        return complex(float(Fraction(d)))
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else complex(float(c))
    return complex(c)


def from_coefficients(coeffs: Sequence) -> Polynomial:
    """Build a monic polynomial from coefficients ``[c0, c1, ..., cn]``.

    Integer input with leading coefficient +-1 keeps exact backing; anything
    else is divided through by the leading coefficient in floating point.
    Decimal strings are accepted and parsed at full precision.
    """
    vals = [_parse_number(c) for c in coeffs]
    if len(vals) < 2:
        raise ValueError("degree 0 polynomial rejected")
    lead = vals[-1]
    if lead == 0:
        raise ValueError("leading coefficient is zero")
    if all(isinstance(v, int) for v in vals) and lead in (1, -1):
        return Polynomial(tuple(v * lead for v in vals), Backing.EXACT, lead)
    lead_c = complex(lead)
    out = [complex(v) / lead_c for v in vals[:-1]] + [complex(1)]
    return Polynomial(tuple(out), Backing.FLOAT, lead if isinstance(lead, int) else lead_c)


def conjugate_pairing(roots: Sequence[complex], tol: float = CONJUGATE_TOL):
    """Pair each root with a conjugate partner.

    Returns a list ``partner`` with ``partner[i] = j`` meaning
    ``|roots[i] - conj(roots[j])| <= tol * max(1, |roots[i]|)``, or None if
    no perfect pairing exists.  Self-pairs are the real roots.
    """
    n = len(roots)
    order = sorted(range(n), key=lambda i: (roots[i].real, abs(roots[i].imag)))
    partner = [-1] * n
    for i in order:
        if partner[i] >= 0:
            continue
        a = roots[i]
        free = [j for j in order if partner[j] < 0]
        j = min(free, key=lambda k: abs(a - roots[k].conjugate()))
        if abs(a - roots[j].conjugate()) > tol * max(1.0, abs(a)):
            return None
        partner[i] = j
        partner[j] = i
    return partner


def is_conjugate_closed(roots: Sequence[complex], tol: float = CONJUGATE_TOL) -> bool:
    return conjugate_pairing(roots, tol) is not None


def from_roots(roots: Sequence[complex]) -> Polynomial:
    """Expand ``prod (x - r)`` by multiplying in one linear factor at a time."""
    rs = [complex(r) for r in roots]
    if not rs:
        raise ValueError("need at least one root")
    coeffs = [complex(1)]
    for r in rs:
        nxt = [complex(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= r * c
        coeffs = nxt
    if is_conjugate_closed(rs):
        coeffs = [complex(c.real, 0.0) for c in coeffs]
    coeffs[-1] = complex(1)
    return Polynomial(tuple(coeffs), Backing.FLOAT)


def horner(coeffs: Sequence, z):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def evaluate(p: Polynomial, z):
    """Horner evaluation; exact at integer or Fraction points for exact backing."""
    if p.backing is Backing.EXACT and isinstance(z, (numbers.Integral, Fraction)):
        return horner(p.coeffs, z)
    return complex(horner(p.coeffs, complex(z)))


def derivative(p) -> tuple:
    """Formal derivative, as a coefficient tuple (not normalized)."""
    coeffs = p.coeffs if isinstance(p, Polynomial) else tuple(p)
    if len(coeffs) < 2:
        raise ValueError("degree must be >= 1")
    return tuple(k * coeffs[k] for k in range(1, len(coeffs)))


def height(p: Polynomial) -> float:
    """Largest coefficient modulus."""
    return float(max(abs(c) for c in p.coeffs))


def parse_polynomial_json(obj) -> Polynomial:
    """Accept ``{"coeffs": [...]}`` with numbers or decimal strings."""
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ValueError('expected an object with a "coeffs" list')
    return from_coefficients(obj["coeffs"])


def parse_roots_json(items) -> RootSet:
    """Accept ``[[re, im], ...]`` pairs, plain numbers, or complex strings."""
    out = []
    for it in items:
        if isinstance(it, (list, tuple)):
            if len(it) != 2:
                raise ValueError(f"root {it!r} is not a [re, im] pair")
            out.append(complex(float(it[0]), float(it[1])))
        elif isinstance(it, str):
            out.append(complex(it.replace(" ", "")))
        else:
            out.append(complex(it))
    if not out:
        raise ValueError("empty root list")
    return RootSet.exact(out)
