"""Iterated Laurent fields F_q((t_1))...((t_r)) with exact fraction arithmetic.

A value of ``LaurentField(base, sym)`` is a pair ``(num, den)`` of finitely
supported Laurent polynomials in ``sym``.  A polynomial is a tuple of
``(exponent, coeff)`` pairs sorted by exponent, with every coeff a nonzero
value of ``base``.  Fractions are never reduced by gcd; a monomial
denominator is folded into the numerator, which keeps the common case
(monomials, binomials) denominator-free.
"""

from __future__ import annotations

from .finite import FiniteField


def _combine(terms, base) -> tuple:
    """Sum (exp, coeff) terms sharing exponents and drop zeros."""
    acc: dict = {}
    for e, c in terms:
        acc[e] = base.add(acc[e], c) if e in acc else c
    return tuple((e, c) for e, c in sorted(acc.items()) if not base.is_zero(c))


class LaurentField:
    """Complete discretely valued field ``base((sym))``."""

    _cache: dict = {}

    def __new__(cls, base, sym: str):
        key = (base, sym)
        if key in cls._cache:
            return cls._cache[key]
        if sym in base.symbols:
            raise ValueError(f"uniformizer symbol {sym!r} already used in {base!r}")
        self = super().__new__(cls)
        self.base = base
        self.sym = sym
        self.height = base.height + 1
        self.symbols = base.symbols + (sym,)
        self.const_field = base.const_field
        self.one_poly = ((0, base.one),)
        self.zero = ((), self.one_poly)
        self.one = (self.one_poly, self.one_poly)
        cls._cache[key] = self
        return self

    def __reduce__(self):
        return (LaurentField, (self.base, self.sym))

    def __repr__(self) -> str:
        return f"{self.base!r}(({self.sym}))"

    # -- polynomial helpers ----------------------------------------------

    def padd(self, a: tuple, b: tuple) -> tuple:
        return _combine(a + b, self.base)

    def pneg(self, a: tuple) -> tuple:
        return tuple((e, self.base.neg(c)) for e, c in a)

    def pmul(self, a: tuple, b: tuple) -> tuple:
        if len(a) == 1 and len(b) == 1:
            (e1, c1), (e2, c2) = a[0], b[0]
            return ((e1 + e2, self.base.mul(c1, c2)),)
        B = self.base
        return _combine([(e1 + e2, B.mul(c1, c2)) for e1, c1 in a for e2, c2 in b], B)

    def _make(self, num: tuple, den: tuple) -> tuple:
        if not num:
            return self.zero
        if not den:
            raise ZeroDivisionError("zero denominator")
        if len(den) == 1:
            e, c = den[0]
            if e == 0 and self.base.eq(c, self.base.one):
                return (num, den)
            ci = self.base.inv(c)
            num = tuple((k - e, self.base.mul(v, ci)) for k, v in num)
            return (num, self.one_poly)
        return (num, den)

    def from_poly(self, poly: tuple) -> tuple:
        return self._make(_combine(poly, self.base), self.one_poly)

    # -- field operations on raw values ------------------------------------

    def add(self, x: tuple, y: tuple) -> tuple:
        (n1, d1), (n2, d2) = x, y
        if d1 == d2 or (d1 == self.one_poly and d2 == self.one_poly):
            return self._make(self.padd(n1, n2), d1)
        return self._make(self.padd(self.pmul(n1, d2), self.pmul(n2, d1)), self.pmul(d1, d2))

    def neg(self, x: tuple) -> tuple:
        return (self.pneg(x[0]), x[1])

    def sub(self, x: tuple, y: tuple) -> tuple:
        return self.add(x, self.neg(y))

    def mul(self, x: tuple, y: tuple) -> tuple:
        if not x[0] or not y[0]:
            return self.zero
        return self._make(self.pmul(x[0], y[0]), self.pmul(x[1], y[1]))

    def inv(self, x: tuple) -> tuple:
        if not x[0]:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return self._make(x[1], x[0])

    def div(self, x: tuple, y: tuple) -> tuple:
        return self.mul(x, self.inv(y))

    def pow(self, x: tuple, n: int) -> tuple:
        if n < 0:
            x, n = self.inv(x), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def is_zero(self, x: tuple) -> bool:
        return not x[0]

    def eq(self, x: tuple, y: tuple) -> bool:
        (n1, d1), (n2, d2) = x, y
        if d1 == d2 and n1 == n2:
            return True
        diff = self.padd(self.pmul(n1, d2), self.pneg(self.pmul(n2, d1)))
        return not diff

    def from_int(self, n: int) -> tuple:
        return self.constant(self.const_field.from_int(n))

    # -- structure ---------------------------------------------------------

    def uniformizer(self) -> tuple:
        return (((1, self.base.one),), self.one_poly)

    def lift(self, b) -> tuple:
        """Embed a value of the base (residue) field as a constant series."""
        if self.base.is_zero(b):
            return self.zero
        return (((0, b),), self.one_poly)

    def constant(self, a: int) -> tuple:
        return self.lift(self.base.constant(a))

    def monomial(self, coeff, exp: int) -> tuple:
        """coeff * sym**exp with coeff a base value."""
        if self.base.is_zero(coeff):
            return self.zero
        return (((exp, coeff),), self.one_poly)

    def make_monomial(self, ac: int, valvec: tuple) -> tuple:
        """Monomial with angular component ``ac`` and valuation vector
        ``valvec`` (lowest layer first)."""
        return self.monomial(self.base.make_monomial(ac, valvec[:-1]), valvec[-1])

    def map_coeffs(self, x: tuple, fn) -> tuple:
        """Apply a base-field ring map to every coefficient."""
        num = tuple((e, fn(c)) for e, c in x[0])
        den = tuple((e, fn(c)) for e, c in x[1])
        return self._make(_combine(num, self.base), _combine(den, self.base))

    # -- valuation ---------------------------------------------------------

    def valuation(self, x: tuple) -> int:
        if not x[0]:
            raise ValueError("valuation of zero")
        return x[0][0][0] - x[1][0][0]

    def residue_of_unit_part(self, x: tuple):
        """Leading coefficient of x, i.e. residue of x / sym**v(x)."""
        if not x[0]:
            raise ValueError("residue of zero")
        return self.base.div(x[0][0][1], x[1][0][1])

    def valvec(self, x: tuple) -> tuple:
        return self.base.valvec(self.residue_of_unit_part(x)) + (self.valuation(x),)

    def ac(self, x: tuple) -> int:
        """Angular component: the F_q leading coefficient down the tower."""
        return self.base.ac(self.residue_of_unit_part(x))


def tower(q_or_field, symbols=("t",)):
    """Build F_q((s_1))...((s_r)); ``q_or_field`` is an int prime power or a
    FiniteField."""
    if isinstance(q_or_field, int):
        q = q_or_field
        p = next(d for d in range(2, q + 1) if q % d == 0)
        k = 0
        while p**k < q:
            k += 1
        if p**k != q:
            raise ValueError(f"{q} is not a prime power")
        field = FiniteField(p, k=k)
    else:
        field = q_or_field
    for s in symbols:
        field = LaurentField(field, s)
    return field


class FieldElement:
    """Immutable element of a FiniteField or LaurentField with operators."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise TypeError(f"mismatched fields: {self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, int):
            return FieldElement(self.field, self.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field.eq(self.value, other.value)

    __hash__ = None

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def valuation(self) -> int:
        if self.field.height == 0:
            if self.is_zero():
                raise ValueError("valuation of zero")
            return 0
        return self.field.valuation(self.value)

    def residue(self) -> "FieldElement":
        """Residue of the unit part x / t**v(x) in the residue field."""
        if self.field.height == 0:
            raise ValueError("finite fields have no residue map")
        return FieldElement(self.field.base, self.field.residue_of_unit_part(self.value))

    def valuation_residue(self) -> tuple[int, "FieldElement"]:
        return self.valuation(), self.residue()

    def __repr__(self) -> str:
        return f"FieldElement({self.field!r}, {self.value!r})"


def element(field, value) -> FieldElement:
    return FieldElement(field, value)


def gen(field, sym: str | None = None) -> FieldElement:
    """Uniformizer of the named layer (top layer by default) as an element."""
    if field.height == 0:
        raise ValueError("finite fields have no uniformizer")
    sym = sym or field.sym
    f = field
    layers = []
    while f.height:
        layers.append(f)
        f = f.base
    target = next((L for L in layers if L.sym == sym), None)
    if target is None:
        raise ValueError(f"unknown symbol {sym!r}")
    value = target.uniformizer()
    for L in reversed(layers):
        if L.height > target.height:
            value = L.lift(value)
    return FieldElement(field, value)


def const(field, a: int) -> FieldElement:
    """Embed a raw F_q value (int) into any layer of the tower."""
    return FieldElement(field, field.constant(a))
