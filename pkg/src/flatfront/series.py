"""Truncated complex Laurent/Puiseux series with one exact rational leading
exponent.

A series is ``c_0 z^nu + c_1 z^(nu+1) + ... + c_N z^(nu+N)``: the exponent
step is always exactly 1 and all fractional structure lives in the leading
exponent ``nu``, which is a `fractions.Fraction`.  Coefficients are complex
floats; every order, pitch and classification result downstream depends only
on exponents (exact) and on coefficient vanishing tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

#: default truncation order N (number of tail terms kept past the leading one)
DEFAULT_TRUNCATION = 24

#: relative magnitude below which a coefficient counts as zero
VANISH_RTOL = 1e-12

RationalLike = Union[int, Fraction]


class SeriesError(ValueError):
    pass


class LogarithmicMonodromyError(SeriesError):
    """Raised when integrating a series with a z^(-1) term."""

    def __init__(self, residue: complex):
        super().__init__(f"logarithmic monodromy: residue {residue}")
        self.residue = residue


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise SeriesError(f"exponent must be an exact rational, got {x!r}")


@dataclass(frozen=True)
class FractionalLaurentSeries:
    """Immutable truncated series with exact rational leading exponent.

    The zero series is represented by an empty coefficient tuple; its order
    is +infinity and its exponent is meaningless.  ``branch`` counts extra
    full turns of the leading coefficient's argument, so that fractional
    powers and rescalings compose predictably.
    """

    exponent: Fraction = Fraction(0)
    coeffs: tuple = ()
    branch: int = 0

    # -- construction -----------------------------------------------------

    @staticmethod
    def make(exponent: RationalLike, coeffs: Iterable[complex],
             branch: int = 0) -> "FractionalLaurentSeries":
        nu = _as_fraction(exponent)
        cs = [complex(c) for c in coeffs]
        return _normalized(nu, cs, branch)

    @staticmethod
    def zero() -> "FractionalLaurentSeries":
        return FractionalLaurentSeries(Fraction(0), ())

    @staticmethod
    def monomial(coeff: complex, exponent: RationalLike = 0,
                 truncation: int = DEFAULT_TRUNCATION) -> "FractionalLaurentSeries":
        if coeff == 0:
            return FractionalLaurentSeries.zero()
        cs = [complex(coeff)] + [0.0] * truncation
        return FractionalLaurentSeries(_as_fraction(exponent), tuple(cs))

    @staticmethod
    def constant(value: complex,
                 truncation: int = DEFAULT_TRUNCATION) -> "FractionalLaurentSeries":
        return FractionalLaurentSeries.monomial(value, 0, truncation)

    @staticmethod
    def from_taylor(coeffs: Sequence[complex],
                    leading_exponent: RationalLike = 0) -> "FractionalLaurentSeries":
        """Series from raw coefficients for z^nu, z^(nu+1), ...; leading
        zeros are stripped."""
        return FractionalLaurentSeries.make(leading_exponent, coeffs)

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def order(self) -> Fraction:
        """Exact order; +inf (as math.inf) for the zero series."""
        if self.is_zero:
            return math.inf
        return self.exponent

    def leading_coefficient(self) -> complex:
        if self.is_zero:
            raise SeriesError("zero series has no leading coefficient")
        return self.coeffs[0]

    def coefficient(self, exponent: RationalLike) -> complex:
        """Coefficient of z^exponent (0 if outside the retained window)."""
        if self.is_zero:
            return 0.0
        k = _as_fraction(exponent) - self.exponent
        if k.denominator != 1 or k < 0 or k > self.truncation:
            return 0.0
        return self.coeffs[int(k)]

    def scale_magnitude(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return FractionalLaurentSeries(self.exponent,
                                       tuple(-c for c in self.coeffs),
                                       self.branch)

    def __add__(self, other):
        other = _coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        shift = other.exponent - self.exponent
        if shift.denominator != 1:
            raise SeriesError(
                f"cannot add series with exponent offset {shift} not in Z")
        k = int(shift)
        if k < 0:
            return other + self
        # other starts k steps later; retained window is the intersection
        n = min(self.truncation, other.truncation + k)
        cs = list(self.coeffs[:n + 1])
        cs += [0.0] * (n + 1 - len(cs))
        for j, c in enumerate(other.coeffs):
            if k + j > n:
                break
            cs[k + j] += c
        return _normalized(self.exponent, cs, self.branch)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)) and not isinstance(other, bool):
            if other == 0:
                return FractionalLaurentSeries.zero()
            return FractionalLaurentSeries(
                self.exponent, tuple(complex(other) * c for c in self.coeffs),
                self.branch)
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return FractionalLaurentSeries.zero()
        n = min(self.truncation, other.truncation)
        a = np.asarray(self.coeffs[:n + 1], dtype=complex)
        b = np.asarray(other.coeffs[:n + 1], dtype=complex)
        conv = np.convolve(a, b)[:n + 1]
        return _normalized(self.exponent + other.exponent, conv.tolist(), 0)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)) and not isinstance(other, bool):
            return self * (1.0 / complex(other))
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def inverse(self) -> "FractionalLaurentSeries":
        """Reciprocal series; requires a nonzero leading coefficient."""
        if self.is_zero:
            raise SeriesError("division by zero series")
        c0 = self.coeffs[0]
        n = self.truncation
        u = np.asarray(self.coeffs, dtype=complex) / c0  # unit: 1 + tail
        inv = np.zeros(n + 1, dtype=complex)
        inv[0] = 1.0
        for k in range(1, n + 1):
            inv[k] = -np.dot(u[1:k + 1], inv[k - 1::-1][:k])
        inv /= c0
        return FractionalLaurentSeries(-self.exponent, tuple(inv.tolist()),
                                       -self.branch)

    def shift(self, exponent: RationalLike) -> "FractionalLaurentSeries":
        """Multiply by the exact monomial z^exponent."""
        if self.is_zero:
            return self
        return FractionalLaurentSeries(self.exponent + _as_fraction(exponent),
                                       self.coeffs, self.branch)

    def truncate(self, n: int) -> "FractionalLaurentSeries":
        if self.is_zero or n >= self.truncation:
            return self
        return _normalized(self.exponent, list(self.coeffs[:n + 1]), self.branch)

    # -- calculus ---------------------------------------------------------

    def differentiate(self) -> "FractionalLaurentSeries":
        if self.is_zero:
            return self
        cs = []
        for j, c in enumerate(self.coeffs):
            e = self.exponent + j
            cs.append(c * float(e))
        out = _normalized(self.exponent - 1, cs, self.branch)
        # a killed constant term loses one order of information at the top;
        # that is accepted (truncation shrinks by construction elsewhere too)
        return out

    def integrate(self) -> "FractionalLaurentSeries":
        """Term-wise antiderivative; a z^(-1) term raises with its residue."""
        if self.is_zero:
            return self
        res = self.coefficient(-1)
        if res != 0:
            raise LogarithmicMonodromyError(res)
        cs = []
        for j, c in enumerate(self.coeffs):
            e = self.exponent + j
            if e == -1:
                cs.append(0.0)  # coefficient is exactly 0 here
            else:
                cs.append(c / float(e + 1))
        return _normalized(self.exponent + 1, cs, self.branch)

    # -- powers, exp, log -------------------------------------------------

    def pow_int(self, k: int) -> "FractionalLaurentSeries":
        if k == 0:
            return FractionalLaurentSeries.constant(1.0, max(self.truncation, 0))
        if k < 0:
            return self.inverse().pow_int(-k)
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def pow_rational(self, alpha: RationalLike) -> "FractionalLaurentSeries":
        """Principal-branch rational power c0^a z^(a nu) (1+u)^a.

        The branch tag feeds extra 2*pi turns into arg(c0).
        """
        if self.is_zero:
            raise SeriesError("pow of zero series")
        alpha = _as_fraction(alpha)
        if alpha.denominator == 1:
            return self.pow_int(int(alpha))
        c0 = self.coeffs[0]
        a = float(alpha)
        arg = cmath.phase(c0) + 2.0 * math.pi * self.branch
        head = abs(c0) ** a * cmath.exp(1j * a * arg)
        u = self._unit_tail()
        powered = _unit_pow(u, a)
        return _normalized(alpha * self.exponent,
                           [head * c for c in powered], 0)

    def sqrt(self) -> "FractionalLaurentSeries":
        return self.pow_rational(Fraction(1, 2))

    def exp(self) -> "FractionalLaurentSeries":
        """exp of a series with order >= 0 (else the result has an essential
        singularity and is not representable)."""
        if self.is_zero:
            return FractionalLaurentSeries.constant(1.0)
        if self.exponent < 0:
            raise SeriesError("exp of a pole: essential singularity")
        if self.exponent.denominator != 1:
            raise SeriesError("exp of fractional-order series not supported")
        n = self.truncation
        # pack into plain taylor coefficients a_0..a_n of z^0..z^(n)
        k0 = int(self.exponent)
        width = n + k0 + 1
        a = np.zeros(width, dtype=complex)
        for j, c in enumerate(self.coeffs):
            if k0 + j < width:
                a[k0 + j] = c
        out = np.zeros(width, dtype=complex)
        out[0] = cmath.exp(a[0])
        # (e^f)' = f' e^f  =>  k out_k = sum_{j=1..k} j a_j out_{k-j}
        for k in range(1, width):
            s = 0.0
            for j in range(1, k + 1):
                s += j * a[j] * out[k - j]
            out[k] = s / k
        return _normalized(Fraction(0), out.tolist(), 0)

    def log(self) -> "FractionalLaurentSeries":
        """Principal log of a unit series (order exactly 0)."""
        if self.is_zero or self.exponent != 0:
            raise SeriesError("log requires a unit series of order 0")
        c0 = self.coeffs[0]
        u = self._unit_tail()
        n = len(u) - 1
        out = np.zeros(n + 1, dtype=complex)
        out[0] = cmath.log(c0) + 2j * math.pi * self.branch
        # log(1+t)' = t'/(1+t)
        for k in range(1, n + 1):
            s = k * u[k]
            for j in range(1, k):
                s -= j * out[j] * u[k - j]
            out[k] = s / k
        return _normalized(Fraction(0), out.tolist(), 0)

    def _unit_tail(self) -> np.ndarray:
        """Coefficients of the unit series 1 + u with u = tail/c0."""
        c = np.asarray(self.coeffs, dtype=complex)
        return c / c[0]

    # -- substitution -----------------------------------------------------

    def rescale(self, k: complex, branch: int = 0) -> "FractionalLaurentSeries":
        """Substitute z = k*w; coefficient j picks up k^(nu+j).

        Fractional powers of k use the principal argument plus ``branch``
        extra turns.
        """
        if k == 0:
            raise SeriesError("rescale by zero")
        if self.is_zero:
            return self
        arg = cmath.phase(k) + 2.0 * math.pi * branch
        mag = abs(k)
        cs = []
        for j, c in enumerate(self.coeffs):
            e = float(self.exponent + j)
            cs.append(c * mag ** e * cmath.exp(1j * e * arg))
        return _normalized(self.exponent, cs, self.branch)

    def compose(self, inner: "FractionalLaurentSeries") -> "FractionalLaurentSeries":
        """Substitute z = inner(w); requires integer exponents >= 0 on self
        and order(inner) >= 1."""
        if self.is_zero:
            return self
        if self.exponent < 0 or self.exponent.denominator != 1:
            raise SeriesError("compose requires a Taylor outer series")
        if inner.is_zero or inner.order() < 1:
            raise SeriesError("compose requires inner order >= 1")
        out = FractionalLaurentSeries.zero()
        # Horner from the top coefficient down
        for c in reversed(self.coeffs):
            out = out * inner + c if not out.is_zero else \
                FractionalLaurentSeries.constant(c, inner.truncation)
        return out.shift(0) if self.exponent == 0 else \
            out * inner.pow_int(int(self.exponent))

    # -- evaluation -------------------------------------------------------

    def evaluate(self, z):
        """Evaluate at complex z (scalar or array), principal branch of
        z^nu.  For sheet-aware evaluation use `evaluate_polar`."""
        z = np.asarray(z, dtype=complex)
        if self.is_zero:
            return np.zeros_like(z)
        tail = _polyval(self.coeffs, z)
        nu = float(self.exponent)
        head = np.exp(nu * np.log(z))
        return head * tail

    def evaluate_polar(self, r, t):
        """Evaluate at z = r e^{it} with t allowed to run over several
        sheets: z^nu = r^nu e^{i nu t} continuously in t."""
        r = np.asarray(r, dtype=float)
        t = np.asarray(t, dtype=float)
        z = r * np.exp(1j * t)
        if self.is_zero:
            return np.zeros(np.broadcast(r, t).shape, dtype=complex)
        tail = _polyval(self.coeffs, z)
        nu = float(self.exponent)
        head = r ** nu * np.exp(1j * nu * t)
        return head * tail

    def validity_radius(self) -> float:
        """Crude convergence-radius estimate from coefficient growth."""
        if self.is_zero or self.truncation < 4:
            return math.inf
        mags = [abs(c) for c in self.coeffs]
        best = math.inf
        for j in range(max(1, len(mags) // 2), len(mags)):
            if mags[j] > 0:
                best = min(best, (1.0 / mags[j]) ** (1.0 / j))
        return best

    # -- misc -------------------------------------------------------------

    def terms(self):
        for j, c in enumerate(self.coeffs):
            if c != 0:
                yield (self.exponent + j, c)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.terms():
            parts.append(f"({c:.6g})z^{e}")
            if len(parts) >= 6:
                parts.append("...")
                break
        return " + ".join(parts)


def _polyval(coeffs, z):
    out = np.zeros_like(z)
    for c in reversed(coeffs):
        out = out * z + c
    return out


def _coerce(x) -> FractionalLaurentSeries:
    if isinstance(x, FractionalLaurentSeries):
        return x
    if isinstance(x, (int, float, complex)):
        return FractionalLaurentSeries.constant(complex(x))
    raise TypeError(f"cannot coerce {type(x)} to series")


_VANISH_WINDOW = 8


def _normalized(nu: Fraction, coeffs, branch: int) -> FractionalLaurentSeries:
    cs = [complex(c) for c in coeffs]
    if not any(c != 0 for c in cs):
        return FractionalLaurentSeries(Fraction(0), ())
    # A leading coefficient is cancellation junk when it is negligible
    # against its *nearby* successors; comparing against the global max
    # would wrongly strip small genuine leaders of series whose tail
    # coefficients grow (convergence radius below 1).
    lead = 0
    while lead < len(cs):
        a = abs(cs[lead])
        if a == 0.0:
            lead += 1
            continue
        window = cs[lead + 1: lead + 1 + _VANISH_WINDOW]
        scale = max((abs(c) for c in window), default=0.0)
        if a > VANISH_RTOL * scale:
            break
        lead += 1
    if lead == len(cs) or all(c == 0 for c in cs[lead:]):
        return FractionalLaurentSeries(Fraction(0), ())
    cs = cs[lead:]
    return FractionalLaurentSeries(nu + lead, tuple(cs), branch)


def _unit_pow(u: np.ndarray, a: float) -> np.ndarray:
    """(1 + t)^a for unit coefficients u (u[0] == 1)."""
    n = len(u) - 1
    out = np.zeros(n + 1, dtype=complex)
    out[0] = 1.0
    # (1+t) p' = a t' p
    for k in range(1, n + 1):
        s = 0.0
        for j in range(1, k + 1):
            s += (a * j - (k - j)) * u[j] * out[k - j]
        out[k] = s / k
    return out


def schwarzian(h: FractionalLaurentSeries) -> FractionalLaurentSeries:
    """Coefficient series of the Schwarzian derivative
    ((h''/h')' - (h''/h')^2 / 2) dz^2."""
    hp = h.differentiate()
    if hp.is_zero:
        raise SeriesError("Schwarzian of constant")
    w = hp.differentiate() / hp
    if w.is_zero:
        return FractionalLaurentSeries.zero()
    return w.differentiate() - w * w * 0.5


def schwarzian_of_primitive(hp: FractionalLaurentSeries
                            ) -> FractionalLaurentSeries:
    """Schwarzian coefficient series of any primitive of hp: only the
    derivative enters, so hp may carry a z^-1 residue (log primitive)."""
    if hp.is_zero:
        raise SeriesError("Schwarzian of constant")
    w = hp.differentiate() / hp
    if w.is_zero:
        return FractionalLaurentSeries.zero()
    return w.differentiate() - w * w * 0.5


def exp_integral(form: FractionalLaurentSeries):
    """exp of the antiderivative of a one-form coefficient series, splitting
    off a z^(-1) residue: returns (residue c, unit series U) with
    exp(int form dz) = z^c * U(z) up to the basepoint constant.

    The residue must be (numerically) a real rational for the result to stay
    in the representable class.
    """
    if form.is_zero:
        return Fraction(0), FractionalLaurentSeries.constant(1.0)
    res = form.coefficient(-1)
    c = rationalize(res)
    stripped = form - FractionalLaurentSeries.monomial(res, -1, form.truncation)
    prim = stripped.integrate()
    if not prim.is_zero and prim.order() < 0:
        raise SeriesError("exp of a pole: essential singularity")
    return c, prim.exp()


def rationalize(x, max_denominator: int = 10 ** 4,
                tol: float = 1e-8) -> Fraction:
    """Snap a float (or near-real complex) to an exact rational, verifying
    the residual.

    The denominator cap must stay small enough that the tolerance can
    falsify it: with a cap of 10^6 every float (pi included) has a
    rational approximation within 1e-8, and snapping would silently
    accept transcendental values.
    """
    if isinstance(x, complex):
        if abs(x.imag) > tol * max(1.0, abs(x)):
            raise SeriesError(f"expected a real value, got {x}")
        x = x.real
    fr = Fraction(x).limit_denominator(max_denominator)
    if abs(float(fr) - x) > tol * max(1.0, abs(x)):
        raise SeriesError(f"{x} is not recognizably rational")
    return fr


def moebius_series(u, g: FractionalLaurentSeries) -> FractionalLaurentSeries:
    """(u11 g + u12)/(u21 g + u22) acting on a series Gauss map."""
    u11, u12, u21, u22 = u
    num = g * u11 + u12
    den = g * u21 + u22
    return num / den
