"""Truncated Laurent series over a finite field: the equal-characteristic
local field K = k((w)) and its unramified extensions k_r((w)), with explicit
precision bookkeeping.

An element tracks (val, coeffs, prec): coefficients of w^val, w^(val+1), ...
are known, everything at exponents >= prec is unknown, and exact elements
carry infinite precision.  Constants are their own Teichmuller lifts in equal
characteristic, so residue arithmetic stays exact.  The additive character of
K restricts an additive character of the residue field through residue().
"""

from __future__ import annotations

from . import ff
from .chars import AddChar
from .cyc import CycElem
from .errors import DomainError, PrecisionError, ValidationError

INF = float("inf")
DEFAULT_PREC = 8


class LaurentTrunc:
    """Laurent series truncated at absolute precision prec.

    coeffs[i] is the packed residue-field coefficient of w^(val+i); leading
    and trailing zero coefficients are normalized away, and a series with no
    tracked nonzero coefficient keeps val = prec as its canonical zero form.
    """

    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field: ff.FieldDesc, val: int, coeffs, prec=INF):
        if prec != INF and not isinstance(prec, int):
            raise ValidationError("precision must be an integer or infinite")
        coeffs = [c.packed if isinstance(c, ff.FFElem) else int(c)
                  for c in coeffs]
        if prec != INF:
            coeffs = coeffs[:max(prec - val, 0)]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            val = prec if prec != INF else 0
        if prec != INF and val > prec:
            val = prec
        self.field = field
        self.val = val
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- queries -----------------------------------------------------------

    def valuation(self) -> int | None:
        """Valuation, or None when the element is 0 within known precision."""
        return self.val if self.coeffs else None

    def is_zero(self) -> bool:
        """Zero as far as the tracked precision can tell."""
        return not self.coeffs

    def is_unit(self) -> bool:
        return bool(self.coeffs) and self.val == 0

    def in_unit_group_1(self) -> bool:
        """Membership in U^1 = 1 + p: distance from 1 has valuation >= 1."""
        d = self - self.field_one()
        v = d.valuation()
        return v is None or v >= 1

    def field_one(self) -> "LaurentTrunc":
        return LaurentTrunc(self.field, 0, (1,), self.prec)

    def coeff(self, v: int) -> ff.FFElem:
        """Coefficient of w^v; unknown positions raise."""
        if v >= self.prec:
            raise PrecisionError(
                f"coefficient of w^{v} is beyond precision {self.prec}")
        i = v - self.val
        code = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return self.field.elem(code)

    def residue(self) -> ff.FFElem:
        """Image in the residue field; requires valuation >= 0."""
        if self.coeffs and self.val < 0:
            raise DomainError("residue of an element with a pole")
        if self.prec < 1:
            raise PrecisionError("precision too low to read the residue")
        return self.coeff(0)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, LaurentTrunc):
            raise ValidationError("expected a Laurent series operand")
        if other.field is not self.field:
            raise ValidationError("series over different coefficient fields")
        return other

    def __add__(self, other):
        o = self._check(other)
        f = self.field
        prec = min(self.prec, o.prec)
        if not self.coeffs:
            return LaurentTrunc(f, o.val, o.coeffs, prec)
        if not o.coeffs:
            return LaurentTrunc(f, self.val, self.coeffs, prec)
        lo = min(self.val, o.val)
        hi = max(self.val + len(self.coeffs), o.val + len(o.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.val - lo + i] = c
        for i, c in enumerate(o.coeffs):
            j = o.val - lo + i
            out[j] = f.add_packed(out[j], c)
        return LaurentTrunc(f, lo, out, prec)

    def __neg__(self):
        f = self.field
        return LaurentTrunc(f, self.val, [f.neg_packed(c) for c in self.coeffs],
                            self.prec)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        o = self._check(other)
        f = self.field
        if not self.coeffs or not o.coeffs:
            if (not self.coeffs and self.prec == INF) or \
                    (not o.coeffs and o.prec == INF):
                return LaurentTrunc(f, 0, (), INF)
            # 0 * x is 0, but only to the precision the zero was known to;
            # an empty series acts as if its valuation were its precision
            v1 = self.val if self.coeffs else self.prec
            v2 = o.val if o.coeffs else o.prec
            return LaurentTrunc(f, 0, (), min(self.prec + v2, o.prec + v1))
        prec = min(self.prec + o.val, o.prec + self.val)
        val = self.val + o.val
        n_terms = len(self.coeffs) + len(o.coeffs) - 1
        if prec != INF:
            n_terms = min(n_terms, prec - val)
        out = [0] * max(n_terms, 0)
        for i, a in enumerate(self.coeffs):
            if a == 0 or i >= len(out):
                continue
            for j, b in enumerate(o.coeffs):
                if b and i + j < len(out):
                    out[i + j] = f.add_packed(out[i + j], f.mul_packed(a, b))
        return LaurentTrunc(f, val, out, prec)

    def scale(self, c: ff.FFElem) -> "LaurentTrunc":
        """Multiply by a residue-field constant (exact)."""
        if c.field is not self.field:
            raise ValidationError("constant from a different field")
        f = self.field
        return LaurentTrunc(
            f, self.val, [f.mul_packed(c.packed, a) for a in self.coeffs],
            self.prec)

    def shift(self, j: int) -> "LaurentTrunc":
        """Multiply by w^j (exact)."""
        return LaurentTrunc(self.field, self.val + j, self.coeffs,
                            self.prec if self.prec == INF else self.prec + j)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = LaurentTrunc(self.field, 0, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self, rel_prec: int | None = None) -> "LaurentTrunc":
        """Multiplicative inverse.

        Exact when the element is an exact monomial; otherwise computed to
        the precision the input supports (or to rel_prec terms if given).
        """
        if not self.coeffs:
            raise DomainError("inverse of zero (within known precision)")
        f = self.field
        c0 = self.coeffs[0]
        v = self.val
        inv0 = f.inv_packed(c0)
        if len(self.coeffs) == 1:
            prec = INF if self.prec == INF else self.prec - 2 * v
            return LaurentTrunc(f, -v, (inv0,), prec)
        if rel_prec is None:
            if self.prec == INF:
                raise PrecisionError(
                    "inverting an exact non-monomial needs a target precision")
            rel_prec = self.prec - v
        # write the element as c0 * w^v * (1 + y) and sum the geometric series
        unit = LaurentTrunc(f, 0, [f.mul_packed(inv0, c) for c in self.coeffs],
                            rel_prec)
        y = unit - unit.field_one()
        acc = unit.field_one()
        term = unit.field_one()
        yv = y.valuation()
        if yv is not None:
            for _ in range(0, rel_prec, yv):
                term = term * (-y)
                acc = acc + term
        # acc inverts the unit part to absolute precision rel_prec; shifting
        # by -v and scaling by a constant then yield precision rel_prec - v
        return acc.shift(-v).scale(f.elem(inv0))

    def truncate(self, new_prec: int) -> "LaurentTrunc":
        """Forget coefficients at exponents >= new_prec."""
        if new_prec > self.prec:
            raise PrecisionError("cannot increase precision by truncation")
        return LaurentTrunc(self.field, self.val, self.coeffs, new_prec)

    def __eq__(self, other):
        """Agreement on the common known precision."""
        if not isinstance(other, LaurentTrunc):
            return NotImplemented
        if other.field is not self.field:
            return False
        d = self - other
        return d.is_zero()

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "val": self.val if self.coeffs else None,
            "prec": None if self.prec == INF else self.prec,
            "coeffs": list(self.coeffs),
        }

    def __repr__(self):
        if not self.coeffs:
            return f"O(w^{self.prec})"
        parts = [f"{c}*w^{self.val + i}"
                 for i, c in enumerate(self.coeffs) if c]
        tail = "" if self.prec == INF else f" + O(w^{self.prec})"
        return " + ".join(parts) + tail


# ---------------------------------------------------------------------------
# constructors


def zero(field: ff.FieldDesc, prec=INF) -> LaurentTrunc:
    return LaurentTrunc(field, 0, (), prec)


def one(field: ff.FieldDesc, prec=INF) -> LaurentTrunc:
    return LaurentTrunc(field, 0, (1,), prec)


def uniformizer(field: ff.FieldDesc, prec=INF) -> LaurentTrunc:
    return LaurentTrunc(field, 1, (1,), prec)


def teichmuller(c: ff.FFElem, prec=INF) -> LaurentTrunc:
    """The constant-series lift of c (exact in equal characteristic)."""
    return LaurentTrunc(c.field, 0, (c.packed,), prec)


def from_coeffs(field: ff.FieldDesc, val: int, coeffs, prec=INF) -> LaurentTrunc:
    return LaurentTrunc(field, val, coeffs, prec)


# ---------------------------------------------------------------------------
# tower maps (the extension k_r((w))/k((w)) is unramified, so Galois acts on
# coefficients and fixes w)


def embed_series(x: LaurentTrunc, ext: ff.FieldDesc) -> LaurentTrunc:
    if not ext.has_subfield(x.field):
        raise ValidationError("target is not an extension of the series field")
    return LaurentTrunc(ext, x.val,
                        [ext.embed_packed(x.field, c) for c in x.coeffs],
                        x.prec)


def pullback_series(x: LaurentTrunc, onto: ff.FieldDesc) -> LaurentTrunc:
    """Rewrite a series whose coefficients lie in a subfield over that
    subfield; raises when a coefficient is not rational over it."""
    coeffs = [x.field.pullback_packed(onto, c) for c in x.coeffs]
    return LaurentTrunc(onto, x.val, coeffs, x.prec)


def galois_series(x: LaurentTrunc, j: int, over: ff.FieldDesc) -> LaurentTrunc:
    """Coefficientwise power of the residue Frobenius over a subfield."""
    if not x.field.has_subfield(over):
        raise ValidationError("series field does not extend the base")
    e = over.size ** (j % max(x.field.degree // over.degree, 1))
    return LaurentTrunc(x.field, x.val,
                        [x.field.pow_packed(c, e) for c in x.coeffs], x.prec)


def series_trace(x: LaurentTrunc, over: ff.FieldDesc) -> LaurentTrunc:
    """Trace of the unramified extension, coefficient by coefficient."""
    if not x.field.has_subfield(over):
        raise ValidationError("series field does not extend the base")
    coeffs = [ff.rel_trace(x.field.elem(c), over).packed for c in x.coeffs]
    return LaurentTrunc(over, x.val, coeffs, x.prec)


def series_norm(x: LaurentTrunc, over: ff.FieldDesc) -> LaurentTrunc:
    """Norm of the unramified extension: product of Galois conjugates."""
    if not x.field.has_subfield(over):
        raise ValidationError("series field does not extend the base")
    d = x.field.degree // over.degree
    acc = None
    for j in range(d):
        conj = galois_series(x, j, over)
        acc = conj if acc is None else acc * conj
    coeffs = [x.field.pullback_packed(over, c) for c in acc.coeffs]
    return LaurentTrunc(over, acc.val, coeffs, acc.prec)


# ---------------------------------------------------------------------------


def psi_K(psi: AddChar, x: LaurentTrunc) -> CycElem:
    """The additive character of K induced by psi on the residue field.

    Defined on integral elements only: the value is psi of the residue, and
    elements of positive valuation give 1.
    """
    if x.field is not psi.field:
        raise ValidationError("series and character fields must agree")
    v = x.valuation()
    if v is not None and v < 0:
        raise DomainError("character of K evaluated outside the integers")
    return psi.eval(x.residue())
