"""Exact base fields.

Three kinds are supported: prime fields F_p, small extensions F_{p^m} given by
an irreducible modulus, and cyclotomic fields Q(zeta_N).  Every field stores
elements in a compact "raw" encoding (an int for finite fields, a tuple of
Fractions for cyclotomic fields).  Scalars wrap a raw value; matrices are numpy
arrays of raw values (int64 for finite fields, object for cyclotomic fields),
manipulated through the array methods on the field.
"""
from __future__ import annotations

import ast
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import cyclotomic_poly, factorint, isprime, totient

MAX_FINITE_ORDER = 1 << 20


class FieldError(ValueError):
    """Raised for invalid field descriptors or impossible field operations."""


class Scalar:
    """An element of a field, tied to its field handle."""

    __slots__ = ("field", "raw")

    def __init__(self, field: "Field", raw):
        self.field = field
        self.raw = raw

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field and other.field != self.field:
                raise FieldError(f"mixed fields: {self.field} and {other.field}")
            return other.raw
        if isinstance(other, (int, Fraction)):
            return self.field.raw_from(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.r_add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.r_sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.r_sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.r_mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.r_mul(self.raw, self.field.r_inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, self.field.r_mul(o, self.field.r_inv(self.raw)))

    def __neg__(self):
        return Scalar(self.field, self.field.r_neg(self.raw))

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.r_pow(self.raw, int(e)))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.r_inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.r_is_zero(self.raw)

    def is_one(self) -> bool:
        return self.raw == self.field.one_raw

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._other(other) if isinstance(other, (Scalar, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.raw == o

    def __hash__(self):
        return hash((self.field.key, self.raw))

    def sort_key(self):
        return self.field.sort_key(self.raw)

    def __repr__(self):
        return self.field.format(self.raw)

    __str__ = __repr__


@dataclass(frozen=True)
class FieldDescriptor:
    """kind is 'prime', 'extension' or 'cyclotomic'."""

    kind: str
    p: int | None = None
    modulus: tuple[int, ...] | None = None  # low to high, monic, extension only
    N: int | None = None

    def __str__(self):
        if self.kind == "prime":
            return f"Fp({self.p})"
        if self.kind == "extension":
            return f"Fq({self.p}, {_format_int_poly(self.modulus, 'y')})"
        return f"QZeta({self.N})"


class Field:
    """Common interface.  Subclasses implement the raw scalar and array ops."""

    kind: str
    characteristic: int
    order: int | None
    descriptor: FieldDescriptor
    zero_raw = 0
    one_raw = 1
    gen_name = ""

    @property
    def key(self):
        return self.descriptor

    def __eq__(self, other):
        return isinstance(other, Field) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return str(self.descriptor)

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    # scalars ------------------------------------------------------------
    @property
    def zero(self) -> Scalar:
        return Scalar(self, self.zero_raw)

    @property
    def one(self) -> Scalar:
        return Scalar(self, self.one_raw)

    def __call__(self, value) -> Scalar:
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError(f"{value!r} is not in {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise FieldError("booleans are not field literals")
        if isinstance(value, (int, Fraction)):
            return Scalar(self, self.raw_from(value))
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def raw_from(self, value) -> object:
        if isinstance(value, Fraction):
            num = self.raw_from_int(value.numerator)
            den = self.raw_from_int(value.denominator)
            return self.r_mul(num, self.r_inv(den))
        return self.raw_from_int(int(value))

    def r_sub(self, a, b):
        return self.r_add(a, self.r_neg(b))

    def r_pow(self, a, e: int):
        if e < 0:
            a = self.r_inv(a)
            e = -e
        result = self.one_raw
        while e:
            if e & 1:
                result = self.r_mul(result, a)
            a = self.r_mul(a, a)
            e >>= 1
        return result

    def r_is_zero(self, a) -> bool:
        return a == self.zero_raw

    def parse(self, text: str) -> Scalar:
        names = {self.gen_name: self.generator} if self.gen_name else {}
        value = evaluate_expression(text, self, names)
        if not isinstance(value, Scalar):
            raise FieldError(f"{text!r} is not a scalar of {self}")
        return value

    @property
    def generator(self) -> Scalar:
        raise FieldError(f"{self} has no named generator")

    # roots of unity -----------------------------------------------------
    def multiplicative_order(self, x: Scalar) -> int | None:
        raise NotImplementedError

    def roots_of_unity(self, n: int) -> list[Scalar]:
        raise NotImplementedError

    def primitive_root_of_unity(self, n: int) -> Scalar:
        raise NotImplementedError

    # arrays -------------------------------------------------------------
    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one_raw
        return out

    def array(self, rows) -> np.ndarray:
        """Build an array from nested sequences of Scalars, ints, Fractions or raws."""
        shape = _nested_shape(rows)
        out = self.zeros(shape)
        flat = list(_flatten(rows))
        vals = [self._coerce_entry(v) for v in flat]
        if shape:
            it = iter(vals)
            for idx in np.ndindex(*shape):
                out[idx] = next(it)
        return out

    def _coerce_entry(self, v):
        if isinstance(v, Scalar):
            return self(v).raw
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            return self.raw_from_int(int(v))
        if isinstance(v, Fraction):
            return self.raw_from(v)
        if isinstance(v, str):
            return self.parse(v).raw
        raise FieldError(f"bad array entry {v!r}")

    def scalar(self, raw) -> Scalar:
        if isinstance(raw, np.integer):
            raw = int(raw)
        return Scalar(self, raw)

    def entry(self, A: np.ndarray, idx) -> Scalar:
        return self.scalar(A[idx])

    def to_scalars(self, A: np.ndarray) -> list:
        if A.ndim == 1:
            return [self.scalar(v) for v in A]
        return [self.to_scalars(row) for row in A]

    def iszero(self, A) -> np.ndarray:
        raise NotImplementedError

    def all_zero(self, A) -> bool:
        return bool(np.all(self.iszero(A)))

    def array_equal(self, A, B) -> bool:
        return A.shape == B.shape and self.all_zero(self.sub(A, B))

    def matmul(self, A, B) -> np.ndarray:
        raise NotImplementedError

    def matpow(self, A, e: int) -> np.ndarray:
        result = self.eye(A.shape[0])
        base = A
        while e:
            if e & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            e >>= 1
        return result

    def kron(self, A, B) -> np.ndarray:
        m, n = A.shape
        r, c = B.shape
        out = self.zeros((m * r, n * c))
        for i in range(m):
            for j in range(n):
                if not self.r_is_zero(self._raw(A[i, j])):
                    out[i * r:(i + 1) * r, j * c:(j + 1) * c] = self.mul(B, self._wrap(A[i, j]))
        return out

    def _raw(self, v):
        return int(v) if isinstance(v, np.integer) else v

    def _wrap(self, v):
        return v

    def random_array(self, shape, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def format(self, raw) -> str:
        raise NotImplementedError

    def sort_key(self, raw):
        return raw


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise FieldError(f"Fp({p}): modulus must be prime")
        if p >= 1 << 31:
            raise FieldError(f"Fp({p}): prime too large for int64 arithmetic")
        self.p = p
        self.characteristic = p
        self.order = p
        self.descriptor = FieldDescriptor("prime", p=p)
        self._prim = _primitive_root_prime(p)

    def elements(self) -> Iterator[Scalar]:
        for v in range(self.p):
            yield Scalar(self, v)

    def raw_from_int(self, n: int):
        return n % self.p

    def r_add(self, a, b):
        return (a + b) % self.p

    def r_neg(self, a):
        return (-a) % self.p

    def r_mul(self, a, b):
        return (a * b) % self.p

    def r_inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        return pow(int(a), -1, self.p)

    def r_pow(self, a, e):
        if e < 0:
            return pow(self.r_inv(a), -e, self.p)
        return pow(int(a), e, self.p)

    def parse(self, text: str) -> Scalar:
        return super().parse(text)

    def multiplicative_order(self, x: Scalar) -> int | None:
        return _finite_order(self, x.raw, self.p - 1)

    def roots_of_unity(self, n: int) -> list[Scalar]:
        d = math.gcd(n, self.p - 1)
        w = pow(self._prim, (self.p - 1) // d, self.p)
        return sorted({Scalar(self, pow(w, k, self.p)) for k in range(d)}, key=Scalar.sort_key)

    def primitive_root_of_unity(self, n: int) -> Scalar:
        if n < 1 or (self.p - 1) % n:
            raise FieldError(f"{self} has no primitive root of unity of order {n}")
        return Scalar(self, pow(self._prim, (self.p - 1) // n, self.p))

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def iszero(self, A):
        return np.asarray(A) == 0

    def add(self, A, B):
        return (A + B) % self.p

    def sub(self, A, B):
        return (A - B) % self.p

    def neg(self, A):
        return (-A) % self.p

    def mul(self, A, B):
        return (A * B) % self.p

    def inv(self, A):
        if np.ndim(A) == 0:
            return self.r_inv(int(A))
        return np.array([self.r_inv(int(v)) for v in np.ravel(A)], dtype=np.int64).reshape(np.shape(A))

    def matmul(self, A, B):
        # keep intermediate sums inside int64: chunk the inner dimension
        p = self.p
        if A.shape[1] == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        chunk = max(1, (1 << 62) // ((p - 1) * (p - 1) + 1))
        if A.shape[1] <= chunk:
            return (A @ B) % p
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(0, A.shape[1], chunk):
            out = (out + (A[:, k:k + chunk] @ B[k:k + chunk, :]) % p) % p
        return out

    def random_array(self, shape, rng):
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def format(self, raw) -> str:
        return str(int(raw))

    def sort_key(self, raw):
        return int(raw)


class ExtensionField(Field):
    """F_{p^m} = F_p[t]/(modulus).  Raw value: base-p digits of the coefficient vector."""

    kind = "extension"
    gen_name = "t"

    def __init__(self, p: int, modulus: Sequence[int]):
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise FieldError(f"Fq({p}, ...): characteristic must be prime")
        mod = [c % p for c in modulus]
        while mod and mod[-1] == 0:
            mod.pop()
        if len(mod) < 2 or mod[-1] != 1:
            raise FieldError("extension modulus must be monic of degree >= 1")
        m = len(mod) - 1
        q = p ** m
        if q > MAX_FINITE_ORDER:
            raise FieldError(f"field of order {q} is too large (limit {MAX_FINITE_ORDER})")
        self.p = p
        self.m = m
        self.modulus = tuple(mod)
        self.characteristic = p
        self.order = q
        self.descriptor = FieldDescriptor("extension", p=p, modulus=self.modulus)
        self._build_tables()

    def _poly_mulmod(self, a: list[int], b: list[int]) -> list[int]:
        p, m = self.p, self.m
        prod = [0] * (2 * m)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * m - 1, m - 1, -1):
            c = prod[k]
            if c:
                for j in range(m + 1):
                    prod[k - m + j] = (prod[k - m + j] - c * self.modulus[j]) % p
        return prod[:m]

    def _digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.m):
            code, d = divmod(code, self.p)
            out.append(d)
        return out

    def _code(self, digits: Sequence[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _build_tables(self):
        q, p = self.order, self.p
        for cand in range(1, q):
            powers = [0] * (q - 1)
            cur = [1] + [0] * (self.m - 1)
            g = self._digits(cand)
            ok = True
            for k in range(q - 1):
                code = self._code(cur)
                if k > 0 and code == 1:
                    ok = False
                    break
                powers[k] = code
                cur = self._poly_mulmod(cur, g)
            if ok and self._code(cur) == 1:
                break
        else:  # pragma: no cover - a reducible modulus
            raise FieldError(f"modulus {self.modulus} is not irreducible over F_{p}")
        if len(set(powers)) != q - 1:
            raise FieldError(f"modulus {self.modulus} is not irreducible over F_{p}")
        self._exp = np.array(powers + powers, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[np.array(powers, dtype=np.int64)] = np.arange(q - 1)
        self._log = log
        self._prim_code = powers[1] if q > 2 else 1
        pw = p ** np.arange(self.m, dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self._dig = (codes[:, None] // pw[None, :]) % p
        self._pw = pw
        # additive tables are cheap for small q; digit arithmetic otherwise
        self._neg = ((-self._dig) % p) @ pw

    def elements(self) -> Iterator[Scalar]:
        for v in range(self.order):
            yield Scalar(self, v)

    @property
    def generator(self) -> Scalar:
        if self.m == 1:
            return Scalar(self, (-self.modulus[0]) % self.p)
        return Scalar(self, self.p)

    def raw_from_int(self, n: int):
        return n % self.p

    def r_add(self, a, b):
        return int((((self._dig[a] + self._dig[b]) % self.p) @ self._pw))

    def r_neg(self, a):
        return int(self._neg[a])

    def r_sub(self, a, b):
        return int((((self._dig[a] - self._dig[b]) % self.p) @ self._pw))

    def r_mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def r_inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        return int(self._exp[(-self._log[a]) % (self.order - 1)])

    def r_pow(self, a, e):
        if a == 0:
            if e <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return int(self._exp[(int(self._log[a]) * e) % (self.order - 1)])

    def multiplicative_order(self, x: Scalar) -> int | None:
        return _finite_order(self, x.raw, self.order - 1)

    def roots_of_unity(self, n: int) -> list[Scalar]:
        q1 = self.order - 1
        d = math.gcd(n, q1)
        step = q1 // d
        return sorted({Scalar(self, int(self._exp[step * k])) for k in range(d)}, key=Scalar.sort_key)

    def primitive_root_of_unity(self, n: int) -> Scalar:
        q1 = self.order - 1
        if n < 1 or q1 % n:
            raise FieldError(f"{self} has no primitive root of unity of order {n}")
        return Scalar(self, int(self._exp[q1 // n]))

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def iszero(self, A):
        return np.asarray(A) == 0

    def add(self, A, B):
        return ((self._dig[A] + self._dig[B]) % self.p) @ self._pw

    def sub(self, A, B):
        return ((self._dig[A] - self._dig[B]) % self.p) @ self._pw

    def neg(self, A):
        return self._neg[A]

    def mul(self, A, B):
        A = np.asarray(A)
        B = np.asarray(B)
        out = self._exp[self._log[A] + self._log[B]]
        return np.where((A == 0) | (B == 0), 0, out)

    def inv(self, A):
        A = np.asarray(A)
        if np.any(A == 0):
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        out = self._exp[(-self._log[A]) % (self.order - 1)]
        return int(out) if out.ndim == 0 else out

    def matmul(self, A, B):
        m, n = A.shape[0], B.shape[1]
        acc = np.zeros((m, n, self.m), dtype=np.int64)
        for k in range(A.shape[1]):
            prod = self.mul(A[:, k][:, None], B[k, :][None, :])
            acc += self._dig[prod]
        return (acc % self.p) @ self._pw

    def random_array(self, shape, rng):
        return rng.integers(0, self.order, size=shape, dtype=np.int64)

    def format(self, raw) -> str:
        digits = self._digits(int(raw))
        return _format_poly([Fraction(d) for d in digits], self.gen_name)

    def sort_key(self, raw):
        return int(raw)


class CyclotomicField(Field):
    """Q(zeta_N) with power basis 1, zeta, ..., zeta^(phi(N)-1)."""

    kind = "cyclotomic"
    gen_name = "zeta"

    def __init__(self, N: int):
        if not isinstance(N, int) or N < 1:
            raise FieldError(f"QZeta({N}): N must be a positive integer")
        self.N = N
        self.characteristic = 0
        self.order = None
        self.descriptor = FieldDescriptor("cyclotomic", N=N)
        self.phi = int(totient(N))
        coeffs = cyclotomic_poly(N, polys=True).all_coeffs()[::-1]
        self._mod = tuple(Fraction(int(c)) for c in coeffs)
        self.zero_raw = tuple(Fraction(0) for _ in range(self.phi))
        self.one_raw = (Fraction(1),) + self.zero_raw[1:]
        # roots of unity available in Q(zeta_N)
        self.M = N if N % 2 == 0 else 2 * N
        self._zeta_M = self.generator if N % 2 == 0 else -self.generator
        self._ufuncs = {
            "add": np.frompyfunc(self.r_add, 2, 1),
            "sub": np.frompyfunc(self.r_sub, 2, 1),
            "mul": np.frompyfunc(self.r_mul, 2, 1),
            "neg": np.frompyfunc(self.r_neg, 1, 1),
            "inv": np.frompyfunc(self.r_inv, 1, 1),
            "iszero": np.frompyfunc(self.r_is_zero, 1, 1),
        }

    @property
    def generator(self) -> Scalar:
        if self.phi == 1:
            # zeta_1 = 1, zeta_2 = -1
            return Scalar(self, (Fraction(1 if self.N == 1 else -1),))
        v = [Fraction(0)] * self.phi
        v[1] = Fraction(1)
        return Scalar(self, tuple(v))

    def raw_from_int(self, n: int):
        return (Fraction(n),) + self.zero_raw[1:]

    def raw_from(self, value):
        return (Fraction(value),) + self.zero_raw[1:]

    def r_add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def r_sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def r_neg(self, a):
        return tuple(-x for x in a)

    def _reduce(self, v: list) -> tuple:
        phi = self.phi
        for k in range(len(v) - 1, phi - 1, -1):
            c = v[k]
            if c:
                for j in range(phi + 1):
                    v[k - phi + j] -= c * self._mod[j]
        return tuple(v[:phi]) if len(v) >= phi else tuple(v) + self.zero_raw[len(v):]

    def r_mul(self, a, b):
        if not any(a) or not any(b):
            return self.zero_raw
        prod = [Fraction(0)] * (2 * self.phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._reduce(prod)

    def r_inv(self, a):
        if not any(a):
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        inv = _qpoly_inverse_mod(list(a), list(self._mod))
        return self._reduce(inv + [Fraction(0)] * max(0, self.phi - len(inv)))

    def r_is_zero(self, a):
        return not any(a)

    def multiplicative_order(self, x: Scalar) -> int | None:
        if x.is_zero():
            raise FieldError("0 has no multiplicative order")
        if self.r_pow(x.raw, self.M) != self.one_raw:
            return None
        for d in _divisors(self.M):
            if self.r_pow(x.raw, d) == self.one_raw:
                return d
        return None  # pragma: no cover

    def roots_of_unity(self, n: int) -> list[Scalar]:
        d = math.gcd(n, self.M)
        w = self._zeta_M ** (self.M // d)
        return sorted({w ** k for k in range(d)}, key=Scalar.sort_key)

    def primitive_root_of_unity(self, n: int) -> Scalar:
        if n < 1 or self.M % n:
            raise FieldError(f"{self} has no primitive root of unity of order {n}")
        return self._zeta_M ** (self.M // n)

    def zeros(self, shape):
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(*out.shape):
            out[idx] = self.zero_raw
        return out

    def _wrap(self, v):
        if isinstance(v, np.ndarray):
            return v
        out = np.empty((), dtype=object)
        out[()] = v
        return out

    def iszero(self, A):
        res = self._ufuncs["iszero"](self._wrap(A))
        return np.asarray(res, dtype=bool)

    def add(self, A, B):
        return self._ufuncs["add"](self._wrap(A), self._wrap(B))

    def sub(self, A, B):
        return self._ufuncs["sub"](self._wrap(A), self._wrap(B))

    def neg(self, A):
        return self._ufuncs["neg"](self._wrap(A))

    def mul(self, A, B):
        return self._ufuncs["mul"](self._wrap(A), self._wrap(B))

    def inv(self, A):
        return self._ufuncs["inv"](self._wrap(A))

    def matmul(self, A, B):
        m, n = A.shape[0], B.shape[1]
        out = self.zeros((m, n))
        for k in range(A.shape[1]):
            col = A[:, k]
            row = B[k, :]
            if not any(any(v) for v in col) or not any(any(v) for v in row):
                continue
            out = self.add(out, self.mul(col[:, None], row[None, :]))
        return out

    def random_array(self, shape, rng):
        out = self.zeros(shape)
        for idx in np.ndindex(*out.shape):
            out[idx] = tuple(Fraction(int(c)) for c in rng.integers(-3, 4, size=self.phi))
        return out

    def format(self, raw) -> str:
        return _format_poly(list(raw), self.gen_name)

    def sort_key(self, raw):
        return tuple(raw)


# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def make_field(desc: FieldDescriptor) -> Field:
    if desc.kind == "prime":
        return PrimeField(desc.p)
    if desc.kind == "extension":
        return ExtensionField(desc.p, desc.modulus)
    if desc.kind == "cyclotomic":
        return CyclotomicField(desc.N)
    raise FieldError(f"unknown field kind {desc.kind!r}")


def GF(p: int) -> Field:
    return make_field(FieldDescriptor("prime", p=p))


def GFq(p: int, modulus: Sequence[int]) -> Field:
    mod = [c % p for c in modulus]
    while mod and mod[-1] == 0:
        mod.pop()
    return make_field(FieldDescriptor("extension", p=p, modulus=tuple(mod)))


def QZeta(N: int) -> Field:
    return make_field(FieldDescriptor("cyclotomic", N=N))


def parse_field(text: str) -> Field:
    """Parse 'Fp(5)', 'Fq(2, y^2+y+1)' or 'QZeta(3)'."""
    s = text.strip()
    try:
        head, rest = s.split("(", 1)
    except ValueError:
        raise FieldError(f"bad field descriptor {text!r}") from None
    if not rest.endswith(")"):
        raise FieldError(f"bad field descriptor {text!r}")
    body = rest[:-1]
    head = head.strip()
    try:
        if head in ("Fp", "GF"):
            return GF(int(body))
        if head == "QZeta":
            return QZeta(int(body))
        if head == "Fq":
            p_text, poly_text = body.split(",", 1)
            p = int(p_text)
            return GFq(p, _parse_int_poly(poly_text, p))
    except FieldError:
        raise
    except (ValueError, SyntaxError) as exc:
        raise FieldError(f"bad field descriptor {text!r}: {exc}") from None
    raise FieldError(f"unknown field kind in {text!r}")


def _parse_int_poly(text: str, p: int) -> list[int]:
    """Integer polynomial in y, returned low to high (reduced mod p)."""
    F = GF(p)
    from .poly import UniPoly  # local import: poly depends on fields

    poly = UniPoly.parse(F, text)
    return [int(c) for c in poly.coeffs]


def primitive_root_of_unity(F: Field, n: int) -> Scalar:
    return F.primitive_root_of_unity(n)


def roots_of_unity(F: Field, n: int) -> list[Scalar]:
    return F.roots_of_unity(n)


# ---------------------------------------------------------------------------
# helpers


def _primitive_root_prime(p: int) -> int:
    if p == 2:
        return 1
    fac = list(factorint(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fac):
            return g
    raise FieldError(f"no primitive root mod {p}")  # pragma: no cover


def _finite_order(F: Field, raw, group_order: int) -> int:
    if F.r_is_zero(raw):
        raise FieldError("0 has no multiplicative order")
    order = group_order
    for r, e in factorint(group_order).items():
        for _ in range(e):
            if F.r_pow(raw, order // r) == F.one_raw:
                order //= r
            else:
                break
    return order


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _qpoly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _qpoly_divmod(a, b):
    a = list(a)
    _qpoly_trim(a)
    quo = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        quo[k] = c
        for j, bj in enumerate(b):
            a[k + j] -= c * bj
        a.pop()
        _qpoly_trim(a)
    return quo, a


def _qpoly_inverse_mod(a, m):
    """Inverse of a modulo m in Q[y] (extended Euclid)."""
    r0, r1 = _qpoly_trim(list(m)), _qpoly_trim(list(a))
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1:
        qt, r = _qpoly_divmod(r0, r1)
        prod = [Fraction(0)] * (len(qt) + len(s1))
        for i, x in enumerate(qt):
            for j, y in enumerate(s1):
                prod[i + j] += x * y
        s = [Fraction(0)] * max(len(s0), len(prod))
        for i, x in enumerate(s0):
            s[i] += x
        for i, x in enumerate(prod):
            s[i] -= x
        r0, r1 = r1, r
        s0, s1 = s1, _qpoly_trim(s)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")  # pragma: no cover
    c = r0[0]
    return [x / c for x in s0]


def _format_poly(coeffs: Sequence[Fraction], var: str) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _format_int_poly(coeffs, var):
    return _format_poly([Fraction(c) for c in coeffs], var).replace(" ", "")


def _nested_shape(rows) -> tuple:
    shape = []
    cur = rows
    while isinstance(cur, (list, tuple)) and not _is_raw_tuple(cur):
        shape.append(len(cur))
        if not cur:
            break
        cur = cur[0]
    return tuple(shape)


def _is_raw_tuple(x) -> bool:
    return isinstance(x, tuple) and x and all(isinstance(v, Fraction) for v in x)


def _flatten(rows) -> Iterable:
    if isinstance(rows, (list, tuple)) and not _is_raw_tuple(rows):
        for r in rows:
            yield from _flatten(r)
    else:
        yield rows


# ---------------------------------------------------------------------------
# literal expressions: integers, fractions, a named generator, + - * / ^ ( )

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def evaluate_expression(text: str, F: Field, names: dict):
    """Evaluate an arithmetic expression whose integer constants live in F.

    names maps identifiers to values (Scalars, polynomials...).  '^' is power.
    """
    src = text.strip().replace("^", "**")
    if not src:
        raise FieldError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise FieldError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return F(node.value)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise FieldError(f"unknown name {node.id!r} in {text!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                neg = False
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    exp, neg = exp.operand, True
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise FieldError(f"exponent must be an integer literal in {text!r}")
                return ev(node.left) ** (-exp.value if neg else exp.value)
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            return left / right
        raise FieldError(f"unsupported syntax in {text!r}")

    try:
        return ev(tree)
    except ZeroDivisionError:
        raise FieldError(f"division by zero in {text!r}") from None
