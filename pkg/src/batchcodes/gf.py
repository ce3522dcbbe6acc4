"""Prime fields GF(p) and quadratic extensions GF(p^2).

Extension elements are pairs ``(a, b)`` meaning ``a + b*alpha`` with
``alpha**2 == n0``, where ``n0`` is the least quadratic nonresidue mod p.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterator

from sympy import isprime


class FieldError(ValueError):
    pass


def least_nonresidue(p: int) -> int:
    """Smallest quadratic nonresidue modulo an odd prime ``p``."""
    for n0 in range(2, p):
        if pow(n0, (p - 1) // 2, p) == p - 1:
            return n0
    raise FieldError(f"no quadratic nonresidue mod {p}")


@dataclass(frozen=True)
class Field:
    p: int
    extension: bool = False
    n0: int = dc_field(default=0, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not isprime(self.p):
            raise FieldError(f"p must be prime, got {self.p!r}")
        if self.extension:
            if self.p == 2:
                raise FieldError("characteristic-2 extensions are not supported")
            object.__setattr__(self, "n0", least_nonresidue(self.p))

    @property
    def order(self) -> int:
        return self.p ** 2 if self.extension else self.p

    def __len__(self) -> int:
        return self.order

    def __call__(self, a: int, b: int = 0) -> "FieldElement":
        if b and not self.extension:
            raise FieldError("prime field elements have a single coordinate")
        return FieldElement(self, a % self.p, b % self.p)

    def zero(self) -> "FieldElement":
        return self(0)

    def one(self) -> "FieldElement":
        return self(1)

    def alpha(self) -> "FieldElement":
        if not self.extension:
            raise FieldError("alpha only exists in an extension field")
        return self(0, 1)

    def elements(self) -> Iterator["FieldElement"]:
        """All elements, ordered lexicographically by ``(a, b)``."""
        if self.extension:
            for a in range(self.p):
                for b in range(self.p):
                    yield FieldElement(self, a, b)
        else:
            for a in range(self.p):
                yield FieldElement(self, a, 0)

    def index(self, x: "FieldElement") -> int:
        """Position of ``x`` in :meth:`elements` order."""
        self._check(x)
        return x.a * self.p + x.b if self.extension else x.a

    def _check(self, x: "FieldElement"):
        if x.field != self:
            raise FieldError(f"element of {x.field} used in {self}")

    def __repr__(self):
        return f"GF({self.p}^2)" if self.extension else f"GF({self.p})"


def field_make(p: int, extension: bool = False) -> Field:
    return Field(p, extension)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    a: int
    b: int = 0

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed-field arithmetic: {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElement(self.field, (self.a + o.a) % p, (self.b + o.b) % p)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, -self.a % p, -self.b % p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        p = f.p
        if not f.extension:
            return FieldElement(f, self.a * o.a % p, 0)
        # (a + b alpha)(c + d alpha) = (ac + bd n0) + (ad + bc) alpha
        a, b, c, d = self.a, self.b, o.a, o.b
        return FieldElement(f, (a * c + b * d * f.n0) % p, (a * d + b * c) % p)

    __rmul__ = __mul__

    def norm(self) -> int:
        """``x * frobenius(x)``, an element of the base field (as int)."""
        f = self.field
        return (self.a * self.a - f.n0 * self.b * self.b) % f.p

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        f = self.field
        p = f.p
        if not f.extension:
            return FieldElement(f, pow(self.a, p - 2, p), 0)
        ninv = pow(self.norm(), p - 2, p)
        return FieldElement(f, self.a * ninv % p, -self.b * ninv % p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.field.p
        if isinstance(other, FieldElement):
            return self.field == other.field and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.extension, self.a, self.b))

    def in_base_field(self) -> bool:
        return self.b == 0

    def __int__(self):
        if self.b:
            raise FieldError(f"{self} is not in the base field")
        return self.a

    def __repr__(self):
        if self.field.extension:
            return f"{self.a}+{self.b}a"
        return str(self.a)


def frobenius(x: FieldElement) -> FieldElement:
    """The involutive automorphism ``x -> x**p`` of GF(p^2)."""
    if not x.field.extension:
        raise FieldError("frobenius is defined on quadratic extensions only")
    # alpha**p = alpha * n0**((p-1)/2) = -alpha
    return FieldElement(x.field, x.a, -x.b % x.field.p)
