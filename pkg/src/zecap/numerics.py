"""Exact integer polynomials, rational fractions, recurrences and root finding.

All counting stays in big integers (or exact :class:`~fractions.Fraction`);
floating point appears only in roots and spectral radii.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

BISECTION_TOL = 1e-12
ABERTH_TOL = 1e-10
ABERTH_MAX_ITER = 200
POWER_ITER_TOL = 1e-12


class MultipleRootError(Exception):
    """Closed forms with repeated characteristic roots are not supported."""


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients.

    ``coefficients[i]`` is the coefficient of degree i; trailing zeros are
    stripped so the leading coefficient is nonzero unless the polynomial is 0.
    """

    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Sequence[int]):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coefficients])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def scale(self, k: int) -> "IntPolynomial":
        return IntPolynomial([k * c for c in self.coefficients])

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial([i * c for i, c in enumerate(self.coefficients)][1:])

    def content(self) -> int:
        return math.gcd(*self.coefficients) if self.coefficients else 0

    def primitive(self) -> "IntPolynomial":
        c = self.content()
        if c in (0, 1):
            return self
        return IntPolynomial([x // c for x in self.coefficients])

    def constant_term(self) -> int:
        return self.coefficients[0] if self.coefficients else 0

    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def reversed_coefficients(self) -> "IntPolynomial":
        """The reciprocal polynomial z^deg * p(1/z)."""
        return IntPolynomial(list(reversed(self.coefficients)))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mag = "" if (abs(c) == 1 and i > 0) else str(abs(c))
            var = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            parts.append(("-" if c < 0 else ("+" if parts else "")) +
                         (mag + var if mag or var else str(abs(c))))
        return " ".join(parts) if parts else "0"


def _pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    # exact integer pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b
    lead = b.leading()
    r = list(a.coefficients)
    db = b.degree
    while len(r) - 1 >= db and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db:
            break
        shift = len(r) - 1 - db
        top = r[-1]
        r = [c * lead for c in r]
        for i, bc in enumerate(b.coefficients):
            r[shift + i] -= top * bc
        r.pop()
    return IntPolynomial(r)


def polynomial_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """GCD over the integers via primitive pseudo-remainder sequence."""
    if a.is_zero:
        g = b
    elif b.is_zero:
        g = a
    else:
        a = a.primitive()
        b = b.primitive()
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero:
            r = _pseudo_remainder(a, b).primitive()
            a, b = b, r
        g = a
    g = g.primitive()
    if g.leading() < 0:
        g = g.scale(-1)
    return g


@dataclass(frozen=True)
class RationalFraction:
    """Quotient of integer polynomials, kept in lowest terms.

    The sign is normalized so the denominator's constant term is positive
    (falling back to a positive leading coefficient when it is zero).
    """

    numerator: IntPolynomial
    denominator: IntPolynomial

    def __init__(self, numerator: IntPolynomial, denominator: IntPolynomial):
        if isinstance(numerator, (list, tuple)):
            numerator = IntPolynomial(numerator)
        if isinstance(denominator, (list, tuple)):
            denominator = IntPolynomial(denominator)
        if denominator.is_zero:
            raise ZeroDivisionError("rational fraction with zero denominator")
        if numerator.is_zero:
            numerator, denominator = IntPolynomial([]), IntPolynomial([1])
        else:
            g = polynomial_gcd(numerator, denominator)
            if g.degree > 0 or g.leading() > 1:
                numerator = _exact_div(numerator, g)
                denominator = _exact_div(denominator, g)
            c = math.gcd(numerator.content(), denominator.content())
            if c > 1:
                numerator = IntPolynomial([x // c for x in numerator.coefficients])
                denominator = IntPolynomial([x // c for x in denominator.coefficients])
            anchor = denominator.constant_term() or denominator.leading()
            if anchor < 0:
                numerator = numerator.scale(-1)
                denominator = denominator.scale(-1)
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    @staticmethod
    def from_int(k: int) -> "RationalFraction":
        return RationalFraction(IntPolynomial([k]), IntPolynomial([1]))

    @staticmethod
    def z() -> "RationalFraction":
        return RationalFraction(IntPolynomial([0, 1]), IntPolynomial([1]))

    def __add__(self, other: "RationalFraction") -> "RationalFraction":
        return RationalFraction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator)

    def __mul__(self, other: "RationalFraction") -> "RationalFraction":
        return RationalFraction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    def __sub__(self, other: "RationalFraction") -> "RationalFraction":
        return self + RationalFraction(other.numerator.scale(-1), other.denominator)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFraction):
            return NotImplemented
        return (self.numerator * other.denominator).coefficients == \
               (other.numerator * self.denominator).coefficients

    def star(self) -> "RationalFraction":
        """1/(1 - f); requires f(0) = 0 so the series is well defined."""
        if self.numerator.constant_term() != 0:
            raise ValueError("star of a series with nonzero constant term")
        return RationalFraction(self.denominator, self.denominator - self.numerator)

    def value_at_zero(self) -> Fraction:
        d = self.denominator.constant_term()
        if d == 0:
            raise ZeroDivisionError("fraction has a pole at 0")
        return Fraction(self.numerator.constant_term(), d)

    def __str__(self) -> str:
        num = str(self.numerator).replace("X", "z")
        den = str(self.denominator).replace("X", "z")
        if self.denominator.degree == 0 and self.denominator.leading() == 1:
            return num
        return f"({num}) / ({den})"


def _exact_div(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Exact polynomial division over the rationals, result known integral."""
    num = [Fraction(c) for c in a.coefficients]
    out = [Fraction(0)] * (len(num) - len(b.coefficients) + 1)
    bl = Fraction(b.leading())
    for shift in range(len(out) - 1, -1, -1):
        q = num[shift + b.degree] / bl
        out[shift] = q
        if q:
            for i, bc in enumerate(b.coefficients):
                num[shift + i] -= q * bc
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    assert all(f.denominator == 1 for f in out)
    return IntPolynomial([int(f) for f in out])


def _is_rate_characteristic(p: IntPolynomial) -> bool:
    # shape X^n - sum a_l X^(n-l), a_l >= 0 not all zero
    if p.degree < 1 or p.leading() != 1:
        return False
    lower = p.coefficients[:-1]
    return all(c <= 0 for c in lower) and any(c < 0 for c in lower)


def unique_positive_root(p: IntPolynomial, tol: float = BISECTION_TOL) -> float:
    """The unique positive root of X^n = sum a_l X^(n-l) with a_l >= 0.

    sum a_l x^(-l) is strictly decreasing on (0, inf), so bisection on a
    guaranteed bracket suffices.
    """
    if not _is_rate_characteristic(p):
        raise ValueError("polynomial is not of the form X^n - sum a_l X^(n-l) with a_l >= 0")
    a = {p.degree - i: -c for i, c in enumerate(p.coefficients[:-1]) if c}

    def f(x: float) -> float:
        return sum(cl * x ** -l for l, cl in a.items()) - 1.0

    lo = 1e-9
    hi = 1.0 + max(a.values())
    while f(hi) > 0:
        hi *= 2
    while hi - lo > tol * max(1.0, lo):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def aberth_roots(p: IntPolynomial, tol: float = ABERTH_TOL,
                 max_iter: int = ABERTH_MAX_ITER) -> list[complex]:
    """All complex roots by simultaneous (Aberth-Ehrlich) iteration."""
    if p.degree < 1:
        raise ValueError("need a non-constant polynomial")
    coeffs = list(p.coefficients)
    roots: list[complex] = []
    while coeffs[0] == 0:  # factor out roots at the origin
        roots.append(0j)
        coeffs.pop(0)
    n = len(coeffs) - 1
    if n == 0:
        return roots
    lead = coeffs[-1]
    radius = 1.0 + max(abs(c) for c in coeffs[:-1]) / abs(lead)
    zs = [radius * cmath.exp(2j * math.pi * (k + 0.25) / n) for k in range(n)]
    dp = [i * c for i, c in enumerate(coeffs)][1:]

    def horner(cs, x):
        acc = 0j
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    for _ in range(max_iter):
        offsets = []
        for k, z in enumerate(zs):
            pv = horner(coeffs, z)
            dv = horner(dp, z)
            if dv == 0:
                offsets.append(0.0)
                continue
            ratio = pv / dv
            s = sum(1 / (z - zj) for j, zj in enumerate(zs) if j != k)
            offsets.append(ratio / (1 - ratio * s))
        zs = [z - w for z, w in zip(zs, offsets)]
        if max(abs(w) for w in offsets) < tol:
            break
    for _ in range(5):  # Newton polish
        zs = [z - horner(coeffs, z) / horner(dp, z) if horner(dp, z) != 0 else z
              for z in zs]
    return roots + zs


def smallest_modulus_root(p: IntPolynomial, tol: float = 1e-9) -> complex:
    """A root of minimal modulus; ties prefer positive real then imaginary part."""
    roots = aberth_roots(p)
    mmin = min(abs(r) for r in roots)
    tied = [r for r in roots if abs(r) <= mmin + tol * (1 + mmin)]
    return max(tied, key=lambda r: (r.real, r.imag))


def spectral_radius(matrix: Sequence[Sequence[int]], tol: float = POWER_ITER_TOL,
                    max_iter: int = 200_000) -> float:
    """Largest eigenvalue modulus of a non-negative square integer matrix.

    Power iteration runs on M + I to break periodicity; 1 is subtracted at
    the end.  Convergence is judged on the Rayleigh quotient.
    """
    n = len(matrix)
    if n == 0:
        return 0.0
    rows = [list(map(float, row)) for row in matrix]
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if any(c < 0 for r in rows for c in r):
        raise ValueError("matrix entries must be non-negative")
    if all(c == 0 for r in rows for c in r):
        return 0.0
    for i in range(n):
        rows[i][i] += 1.0
    v = [1.0] * n
    prev = 0.0
    stable = 0
    for _ in range(max_iter):
        w = [sum(rows[i][j] * v[j] for j in range(n)) for i in range(n)]
        lam = sum(wi * vi for wi, vi in zip(w, v)) / sum(vi * vi for vi in v)
        norm = max(abs(x) for x in w)
        v = [x / norm for x in w]
        if abs(lam - prev) <= tol * max(1.0, abs(lam)):
            stable += 1
            if stable >= 3:
                break
        else:
            stable = 0
        prev = lam
    return lam - 1.0


@dataclass(frozen=True)
class CompanionMatrix:
    """Companion matrix of X^n - sum a_l X^(n-l), last row (a_n, ..., a_1)."""

    last_row: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.last_row)

    @staticmethod
    def from_characteristic(p: IntPolynomial) -> "CompanionMatrix":
        if not _is_rate_characteristic(p):
            raise ValueError("not a rate characteristic polynomial")
        return CompanionMatrix(tuple(-c for c in p.coefficients[:-1]))

    def matrix(self) -> list[list[int]]:
        n = self.order
        rows = [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n - 1)]
        rows.append(list(self.last_row))
        return rows

    def recurrence_coefficients(self) -> tuple[int, ...]:
        """Weights (a_1, ..., a_n) with N[L] = sum a_l N[L-l]."""
        return tuple(reversed(self.last_row))


def linear_recurrence_extend(coefficients: Sequence[int], seed: Sequence[int],
                             up_to: int) -> list[int]:
    """Extend an integer sequence by N[L] = sum_l coefficients[l-1] * N[L-l].

    ``coefficients[i]`` is the weight of lag i+1; the seed must cover at least
    one full lag window.
    """
    order = len(coefficients)
    if len(seed) < order:
        raise ValueError(f"seed must provide at least {order} initial terms")
    terms = [int(x) for x in seed]
    for L in range(len(terms), up_to + 1):
        terms.append(sum(c * terms[L - l - 1] for l, c in enumerate(coefficients)))
    return terms[:up_to + 1]


def closed_form_counts(char_poly: IntPolynomial,
                       seed: Sequence[int]) -> list[tuple[complex, complex]]:
    """Coefficients h_i with N[L] = sum h_i root_i^L fitted on the seed.

    Requires distinct characteristic roots (checked through the gcd with the
    derivative); roots are returned sorted by decreasing modulus.
    """
    if polynomial_gcd(char_poly, char_poly.derivative()).degree > 0:
        raise MultipleRootError("characteristic polynomial has repeated roots")
    k = char_poly.degree
    if len(seed) < k:
        raise ValueError(f"need at least {k} seed terms")
    roots = sorted(aberth_roots(char_poly),
                   key=lambda r: (-abs(r), -r.real, -r.imag))
    # Vandermonde system V h = seed on exponents 0..k-1
    rows = [[r ** L for r in roots] + [complex(seed[L])] for L in range(k)]
    h = _gauss_solve(rows, k)
    out = list(zip(roots, h))
    for L, target in enumerate(seed):
        approx = sum(hi * (ri ** L) for ri, hi in out)
        scale = max(1.0, abs(target))
        if abs(approx - target) > 1e-6 * scale:
            raise ArithmeticError("closed form fails to reproduce the seed")
    return out


def _gauss_solve(rows: list[list[complex]], k: int) -> list[complex]:
    for col in range(k):
        piv = max(range(col, k), key=lambda r: abs(rows[r][col]))
        rows[col], rows[piv] = rows[piv], rows[col]
        pval = rows[col][col]
        rows[col] = [c / pval for c in rows[col]]
        for r in range(k):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][k] for i in range(k)]


def series_coefficients(f: RationalFraction, up_to: int) -> list[int]:
    """Exact power-series coefficients of f at 0, indices 0..up_to."""
    den = f.denominator.coefficients
    if not den or den[0] == 0:
        raise ValueError("denominator must have a nonzero constant term")
    num = f.numerator.coefficients
    d0 = Fraction(den[0])
    out: list[Fraction] = []
    for L in range(up_to + 1):
        acc = Fraction(num[L] if L < len(num) else 0)
        for j in range(1, min(L, len(den) - 1) + 1):
            acc -= den[j] * out[L - j]
        out.append(acc / d0)
    result = []
    for x in out:
        result.append(int(x) if x.denominator == 1 else x)
    return result
