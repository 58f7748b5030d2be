"""Exact arithmetic in Z[zeta_M], the ring of integers extended by a root of
unity, presented as Z[x]/(Phi_M) with Phi_M the M-th cyclotomic polynomial.

Sums of character values live here.  A ring instance fixes M once; character
code asks for a ring large enough for every root-of-unity order it needs via
ring_for(...), which takes the lcm of the declared orders.  Elements are
integer coefficient tuples of length deg(Phi_M), so equality of two character
sums is literal tuple equality, with an independent complex embedding kept
alongside for floating-point cross-checks.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from .errors import ValidationError


def _cyclotomic(M: int) -> list[int]:
    """Coefficients of Phi_M, computed by exact division of x^M - 1."""
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            phi_d = _cyclotomic(d)
            poly = _exact_div(poly, phi_d)
    return poly


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    """num // den for integer polynomials, den monic, exact remainder zero."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = num[shift + len(den) - 1]
        out[shift] = c
        if c:
            for i, dc in enumerate(den):
                num[shift + i] -= c * dc
    if any(num):
        raise AssertionError("division was not exact")
    return out


class CycRing:
    """Z[zeta_M] with zeta_M the class of x in Z[x]/(Phi_M)."""

    def __init__(self, M: int):
        if M < 1:
            raise ValidationError("root-of-unity order must be positive")
        self.M = M
        phi = _cyclotomic(M)
        assert phi[-1] == 1
        self.deg = len(phi) - 1
        self._phi_tail = tuple(phi[:-1])
        # x^t mod Phi_M for every t < M; x^M is 1, so this closes reduction
        zpow = []
        cur = [0] * self.deg
        if self.deg:
            cur[0] = 1
        for _ in range(M):
            zpow.append(tuple(cur))
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                nxt = [a - top * b for a, b in zip(nxt, self._phi_tail)]
            cur = nxt
        self.zpow = zpow

    # -- constructors ------------------------------------------------------

    def zero(self) -> "CycElem":
        return CycElem(self, (0,) * self.deg)

    def one(self) -> "CycElem":
        return self.from_int(1)

    def from_int(self, n: int) -> "CycElem":
        coeffs = [0] * self.deg
        if self.deg:
            coeffs[0] = n
        return CycElem(self, tuple(coeffs))

    def from_coeffs(self, coeffs) -> "CycElem":
        coeffs = list(coeffs)
        if len(coeffs) > self.deg:
            raise ValidationError("coefficient vector too long for the ring")
        coeffs += [0] * (self.deg - len(coeffs))
        return CycElem(self, tuple(coeffs))

    def zeta(self, order: int, power: int = 1) -> "CycElem":
        """The root of unity zeta_order ** power; order must divide M."""
        if order < 1 or self.M % order:
            raise ValidationError(
                f"order {order} does not divide the ring order {self.M}")
        step = self.M // order
        return CycElem(self, self.zpow[(power % order) * step % self.M])

    def weighted_root_sum(self, order: int, counts) -> "CycElem":
        """sum_j counts[j] * zeta_order**j, for a counts vector of length order.

        This is the bridge from integer counting kernels to ring elements:
        exponential sums are accumulated as per-exponent counts and
        materialized here once.
        """
        if order < 1 or self.M % order:
            raise ValidationError(
                f"order {order} does not divide the ring order {self.M}")
        if len(counts) != order:
            raise ValidationError("counts vector length must equal the order")
        step = self.M // order
        acc = [0] * self.deg
        for j, c in enumerate(counts):
            if c:
                zp = self.zpow[j * step % self.M]
                for i, z in enumerate(zp):
                    if z:
                        acc[i] += c * z
        return CycElem(self, tuple(acc))

    def __eq__(self, other):
        return isinstance(other, CycRing) and other.M == self.M

    def __hash__(self):
        return hash(("CycRing", self.M))

    def __repr__(self):
        return f"Z[zeta_{self.M}]"


class CycElem:
    """Immutable element of a CycRing."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CycRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, CycElem):
            if other.ring.M != self.ring.M:
                raise ValidationError("elements of different cyclotomic rings")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElem(self.ring,
                       tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElem(self.ring,
                       tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ring = self.ring
        deg, M = ring.deg, ring.M
        conv = [0] * (2 * deg - 1 if deg else 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        conv[i + j] += a * b
        head = conv[:deg] + [0] * (deg - min(len(conv), deg))
        for e in range(deg, len(conv)):
            c = conv[e]
            if c:
                zp = ring.zpow[e % M]
                for i, z in enumerate(zp):
                    if z:
                        head[i] += c * z
        return CycElem(ring, tuple(head))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValidationError("negative powers are not defined here")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.ring.M, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def galois(self, t: int) -> "CycElem":
        """Apply zeta_M -> zeta_M**t; t must be prime to M."""
        ring = self.ring
        if math.gcd(t, ring.M) != 1:
            raise ValidationError("galois exponent must be prime to M")
        acc = [0] * ring.deg
        for i, c in enumerate(self.coeffs):
            if c:
                zp = ring.zpow[(i * t) % ring.M]
                for j, z in enumerate(zp):
                    if z:
                        acc[j] += c * z
        return CycElem(ring, tuple(acc))

    def conjugate(self) -> "CycElem":
        """Complex conjugation, zeta_M -> zeta_M**(-1)."""
        return self.galois(self.ring.M - 1) if self.ring.M > 1 else self

    def complex_value(self) -> complex:
        """Embedding zeta_M -> exp(2*pi*i/M), for floating cross-checks."""
        M = self.ring.M
        return sum(c * cmath.exp(2j * cmath.pi * i / M)
                   for i, c in enumerate(self.coeffs) if c)

    def to_json(self) -> dict:
        z = self.complex_value()
        return {"ring": self.ring.M, "coeffs": list(self.coeffs),
                "approx": [z.real, z.imag]}

    def __repr__(self):
        if not any(self.coeffs):
            return "Cyc(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"Cyc({' + '.join(parts)} @ M={self.ring.M})"


@lru_cache(maxsize=None)
def _ring_cached(M: int) -> CycRing:
    return CycRing(M)


def ring_for(*orders: int) -> CycRing:
    """The smallest ring containing roots of unity of all the given orders."""
    M = 1
    for d in orders:
        if d < 1:
            raise ValidationError("root-of-unity order must be positive")
        M = M * d // math.gcd(M, d)
    return _ring_cached(M)
