"""Exact arithmetic in cyclotomic-rational fields Q(zeta_n), n <= 24.

Elements are vectors of rationals of length phi(n), the coordinates in the
power basis 1, zeta, ..., zeta^(phi(n)-1) modulo the n-th cyclotomic
polynomial.  Addition, multiplication and inversion (extended Euclid over
Q[x]) are exact.  Square roots are resolved by lookup only: rational perfect
squares, roots of unity in the field, and rational-square multiples of
those.  Anything else raises - no numerical root finding happens here.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

MAX_CONDUCTOR = 24


class CycloError(ArithmeticError):
    """Division by zero, unsupported conductors, or square roots off the table."""


def _euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact polynomial division
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_div_exact(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = num[:]
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] / den[-1]
        out[k] = c
        for j, dj in enumerate(den):
            num[k + j] -= c * dj
    if any(c != 0 for c in num[: len(den) - 1]):
        raise CycloError("inexact polynomial division")
    return out


class CycloField:
    """Arithmetic handle for Q(zeta_n); create elements via the call methods."""

    def __init__(self, n: int):
        if not 1 <= n <= MAX_CONDUCTOR:
            raise CycloError(f"conductor must be in 1..{MAX_CONDUCTOR}, got {n}")
        self.n = n
        self.phi = _euler_phi(n)
        mod = cyclotomic_polynomial(n)
        # x^k mod Phi_n for k = 0 .. 2*phi - 2, used to fold products
        self._xpow: list[tuple[Fraction, ...]] = []
        for k in range(2 * self.phi - 1):
            if k < self.phi:
                row = [Fraction(0)] * self.phi
                row[k] = Fraction(1)
            else:
                # x^k = x * x^(k-1), then reduce the top coefficient
                prev = list(self._xpow[k - 1])
                row = [Fraction(0)] + prev[:-1]
                top = prev[-1]
                if top:
                    for j in range(self.phi):
                        row[j] -= top * mod[j]
            self._xpow.append(tuple(row))
        self.modulus = mod
        self.zero = CycloNum(self, (Fraction(0),) * self.phi)
        one = [Fraction(0)] * self.phi
        one[0] = Fraction(1)
        self.one = CycloNum(self, tuple(one))
        self._roots_of_unity: tuple[CycloNum, ...] | None = None

    def rational(self, q) -> "CycloNum":
        coeffs = [Fraction(0)] * self.phi
        coeffs[0] = Fraction(q)
        return CycloNum(self, tuple(coeffs))

    def zeta(self, power: int = 1) -> "CycloNum":
        """zeta_n^power as a field element."""
        power %= self.n
        if self.n == 1:
            return self.one
        # reduce x^power mod Phi_n (power < n <= 2*phi cases handled by repeated mul)
        out = self.one
        gen = CycloNum(self, self._xpow[1]) if self.phi > 1 else self.one
        if self.phi == 1 and self.n == 2:
            gen = self.rational(-1)
        for _ in range(power):
            out = out * gen
        return out

    def roots_of_unity(self) -> tuple["CycloNum", ...]:
        """All roots of unity in the field: mu_n, together with their negatives."""
        if self._roots_of_unity is None:
            seen = {}
            for k in range(self.n):
                for sign in (1, -1):
                    u = self.zeta(k) if sign == 1 else -self.zeta(k)
                    seen.setdefault(u.coeffs, u)
            self._roots_of_unity = tuple(seen.values())
        return self._roots_of_unity

    def sqrt(self, v: "CycloNum") -> "CycloNum":
        """A square root of v, found by lookup; raises CycloError when absent.

        Covers q^2, roots of unity, and products (rational square) * (square
        of a root of unity) - everything the explicit curve families need.
        """
        if v.is_zero():
            return self.zero
        for u in self.roots_of_unity():
            ratio = v * (u * u).inverse()
            q = ratio.as_rational()
            if q is None or q <= 0:
                continue
            root = _rational_sqrt(q)
            if root is not None:
                return self.rational(root) * u
        raise CycloError("square root not available by lookup in this field")

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloField) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("CycloField", self.n))

    def __repr__(self) -> str:  # pragma: no cover
        return f"CycloField({self.n})"


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    num = _isqrt_exact(q.numerator)
    den = _isqrt_exact(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _isqrt_exact(k: int) -> int | None:
    r = int(k ** 0.5)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c * c == k:
            return c
    return None


class CycloNum:
    """An element of Q(zeta_n): immutable, hashable, exact."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "CycloNum":
        other = self._coerce(other)
        return CycloNum(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other) -> "CycloNum":
        other = self._coerce(other)
        return CycloNum(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycloNum":
        return CycloNum(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other) -> "CycloNum":
        other = self._coerce(other)
        phi = self.field.phi
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        out = [Fraction(0)] * phi
        xpow = self.field._xpow
        for k, c in enumerate(prod):
            if c:
                row = xpow[k]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloNum(self.field, tuple(out))

    def __truediv__(self, other) -> "CycloNum":
        other = self._coerce(other)
        return self * other.inverse()

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other) -> "CycloNum":
        return self._coerce(other) - self

    def __rtruediv__(self, other) -> "CycloNum":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "CycloNum":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "CycloNum":
        """Inverse via extended Euclid of the coefficient polynomial and Phi_n."""
        if self.is_zero():
            raise CycloError("division by zero")
        mod = list(self.field.modulus)
        a = list(self.coeffs)
        # extended gcd over Q[x]: s*a + t*mod = gcd (a unit, since Phi_n irreducible)
        r0, r1 = mod, _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _degree(r1) > 0:
            q = _poly_quo(r0, r1)
            r0, r1 = r1, _trim(_poly_sub(r0, _poly_mul(q, r1)))
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        if _degree(r1) != 0 or not r1:
            raise CycloError("element is not invertible (modulus not coprime?)")
        c = r1[0]
        inv = [x / c for x in s1]
        inv = inv[: self.field.phi] + [Fraction(0)] * max(0, self.field.phi - len(inv))
        # s1 may exceed the basis length only when a was unreduced; ours never is
        return CycloNum(self.field, tuple(inv[: self.field.phi]))

    # -- predicates and conversions ------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_rational(self) -> Fraction | None:
        if any(c != 0 for c in self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_rational(self) -> bool:
        return self.as_rational() is not None

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.field.n != self.field.n:
                raise CycloError("mixed conductors")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        raise TypeError(f"cannot mix CycloNum with {type(other)!r}")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        return isinstance(other, CycloNum) and other.field.n == self.field.n \
            and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((self.field.n, self.coeffs))

    def __repr__(self) -> str:
        q = self.as_rational()
        if q is not None:
            return str(q)
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z{k}" if k > 1 else "z"
                terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return "+".join(terms).replace("+-", "-") or "0"

    def sort_key(self) -> tuple:
        return tuple((c.numerator, c.denominator) for c in self.coeffs)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _degree(p: list[Fraction]) -> int:
    return len(p) - 1


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for j, y in enumerate(b):
        out[j] -= y
    return out


def _poly_quo(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _trim(list(a))
    b = _trim(list(b))
    if len(a) < len(b):
        return []
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = a[:]
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(b) - 1] / b[-1]
        out[k] = c
        for j, y in enumerate(b):
            rem[k + j] -= c * y
    return out


def cyclo_arith(n: int) -> CycloField:
    """Field handle for Q(zeta_n) with exact add/mul/inverse and lookup sqrt."""
    return CycloField(n)
