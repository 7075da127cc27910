"""Univariate polynomials over an exact field, in the variable y."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .fields import Field, FieldError, Scalar, evaluate_expression


class UniPoly:
    """Immutable polynomial; coeffs are raw field values, low degree first, trimmed."""

    __slots__ = ("field", "coeffs")
    var = "y"

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c).raw if not _is_raw(field, c) else c for c in coeffs]
        while cs and field.r_is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field: Field, raws: list) -> "UniPoly":
        obj = object.__new__(cls)
        while raws and field.r_is_zero(raws[-1]):
            raws.pop()
        obj.field = field
        obj.coeffs = tuple(raws)
        return obj

    @classmethod
    def gen(cls, field: Field) -> "UniPoly":
        return cls._raw(field, [field.zero_raw, field.one_raw])

    @classmethod
    def const(cls, field: Field, c) -> "UniPoly":
        return cls._raw(field, [field(c).raw])

    @classmethod
    def from_roots(cls, field: Field, roots: Sequence) -> "UniPoly":
        y = cls.gen(field)
        out = cls.const(field, 1)
        for r in roots:
            out = out * (y - field(r))
        return out

    @classmethod
    def parse(cls, field: Field, text: str) -> "UniPoly":
        names = {"y": cls.gen(field)}
        if field.gen_name:
            names[field.gen_name] = field.generator
        val = evaluate_expression(text, field, names)
        if isinstance(val, Scalar):
            return cls._raw(field, [val.raw])
        if not isinstance(val, UniPoly):
            raise FieldError(f"{text!r} is not a polynomial")
        return val

    # basic structure -------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Scalar:
        if 0 <= i < len(self.coeffs):
            return self.field.scalar(self.coeffs[i])
        return self.field.zero

    @property
    def coefficients(self) -> list[Scalar]:
        return [self.field.scalar(c) for c in self.coeffs]

    @property
    def leading(self) -> Scalar:
        if not self.coeffs:
            return self.field.zero
        return self.field.scalar(self.coeffs[-1])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one_raw

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        F = self.field
        inv = F.r_inv(self.coeffs[-1])
        return UniPoly._raw(F, [F.r_mul(c, inv) for c in self.coeffs])

    def _coerce(self, other) -> "UniPoly | None":
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise FieldError("polynomials over different fields")
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return UniPoly._raw(self.field, [self.field(other).raw])
        return None

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        out = [F.r_add(a[i] if i < len(a) else F.zero_raw, b[i] if i < len(b) else F.zero_raw) for i in range(n)]
        return UniPoly._raw(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return UniPoly._raw(F, [F.r_neg(c) for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UniPoly._raw(F, [])
        out = [F.zero_raw] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if F.r_is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = F.r_add(out[i + j], F.r_mul(x, y))
        return UniPoly._raw(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        # only division by scalars, or exact polynomial division via the
        # expression parser (e.g. "y^2/2")
        if isinstance(other, (Scalar, int)):
            c = self.field(other)
            return self * c.inverse()
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q, r = divmod(self, o)
        if not r.is_zero():
            raise FieldError("inexact polynomial division")
        return q

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = o.degree
        inv_lead = F.r_inv(o.coeffs[-1])
        if len(rem) <= db:
            return UniPoly._raw(F, []), self
        quo = [F.zero_raw] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if F.r_is_zero(c):
                continue
            c = F.r_mul(c, inv_lead)
            quo[k - db] = c
            for j, bj in enumerate(o.coeffs):
                rem[k - db + j] = F.r_sub(rem[k - db + j], F.r_mul(c, bj))
        return UniPoly._raw(F, quo), UniPoly._raw(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and self.coeffs == other.coeffs
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def __call__(self, x):
        if isinstance(x, UniPoly):
            out = UniPoly.const(self.field, 0)
            for c in reversed(self.coeffs):
                out = out * x + self.field.scalar(c)
            return out
        F = self.field
        xr = F(x).raw
        acc = F.zero_raw
        for c in reversed(self.coeffs):
            acc = F.r_add(F.r_mul(acc, xr), c)
        return F.scalar(acc)

    def eval_matrix(self, A: np.ndarray) -> np.ndarray:
        F = self.field
        n = A.shape[0]
        out = F.zeros((n, n))
        I = F.eye(n)
        for c in reversed(self.coeffs):
            out = F.add(F.matmul(out, A), F.mul(I, F._wrap(c)))
        return out

    def derivative(self) -> "UniPoly":
        F = self.field
        return UniPoly._raw(F, [F.r_mul(F.raw_from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, e: int, mod: "UniPoly") -> "UniPoly":
        result = UniPoly.const(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def sort_key(self):
        F = self.field
        return (self.degree, tuple(F.sort_key(c) for c in reversed(self.coeffs)))

    def __repr__(self):
        return format_poly(self)

    __str__ = __repr__


def _is_raw(field: Field, c) -> bool:
    return field.kind == "cyclotomic" and isinstance(c, tuple)


def format_poly(f: UniPoly) -> str:
    """ASCII rendering in y, highest degree first: 'y^2 + 3*y + 1'."""
    F = f.field
    if f.is_zero():
        return "0"
    parts: list[tuple[str, str]] = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if F.r_is_zero(c):
            continue
        text = F.format(c)
        sign = "+"
        compound = " " in text
        if not compound and text.startswith("-"):
            sign, text = "-", text[1:]
        if compound:
            text = f"({text})"
        if i == 0:
            body = text
        else:
            mono = "y" if i == 1 else f"y^{i}"
            body = mono if text == "1" else f"{text}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = UniPoly.const(F, 1), UniPoly.const(F, 0)
    t0, t1 = UniPoly.const(F, 0), UniPoly.const(F, 1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.leading.inverse()
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() or b.is_zero():
        return UniPoly.const(a.field, 0)
    return ((a * b) // poly_gcd(a, b)).monic()
