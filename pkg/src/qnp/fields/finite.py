"""Finite fields F_q, q = p^k odd, as polynomial quotients F_p[x]/(m(x)).

Elements are plain ints in [0, q): the base-p digits of the int are the
coefficients of the residue polynomial, lowest degree first.  All
multiplicative work goes through discrete log tables built once per field.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] % p == 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(list(modulus), list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k, enumerating low coefficients
    in increasing int order."""
    if k == 1:
        return (0, 1)
    for n in range(p**k):
        low = [(n // p**i) % p for i in range(k)]
        cand = tuple(low) + (1,)
        if cand[0] != 0 and is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


class FiniteField:
    """F_q with q = p**k.  Instances are interned by (p, modulus)."""

    height = 0
    _cache: dict = {}

    def __new__(cls, p: int, modulus: tuple[int, ...] | None = None, k: int | None = None):
        if modulus is None:
            modulus = default_modulus(p, k or 1)
        modulus = tuple(int(c) % p for c in modulus)
        key = (p, modulus)
        if key in cls._cache:
            return cls._cache[key]
        if not _is_prime(p) or p == 2:
            raise ValueError(f"characteristic must be an odd prime, got {p}")
        if not is_irreducible(modulus, p) or modulus[-1] != 1:
            raise ValueError(f"modulus {modulus} is not monic irreducible over F_{p}")
        self = super().__new__(cls)
        self.p = p
        self.modulus = modulus
        self.k = len(modulus) - 1
        self.q = p**self.k
        self._build_tables()
        cls._cache[key] = self
        return self

    def __reduce__(self):
        return (FiniteField, (self.p, self.modulus))

    # -- construction -------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def _from_digits(self, digits) -> int:
        return sum(int(c) % self.p * self.p**i for i, c in enumerate(digits))

    def _slow_mul(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self._from_digits(_poly_mod(prod, list(self.modulus), self.p))

    def _build_tables(self) -> None:
        q = self.q
        self.digits = [tuple(self._digits(a)) for a in range(q)]
        for g in range(1, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == q - 1:
                break
        self.primitive = g
        self.exp = exp
        self.log = [None] * q
        for i, x in enumerate(exp):
            self.log[x] = i
        self.neg_table = [self._from_digits(-c for c in self.digits[a]) for a in range(q)]
        if q <= 729:
            self.add_table = [
                [self._from_digits(x + y for x, y in zip(self.digits[a], self.digits[b])) for b in range(q)]
                for a in range(q)
            ]
        else:
            self.add_table = None
        # least nonsquare in int order: the canonical u
        self.nonsquare = next(a for a in range(1, q) if self.log[a] % 2)
        self.minus_one = self.neg_table[1]

    # -- arithmetic on raw values --------------------------------------

    zero = 0
    one = 1

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return self.add_table[a][b]
        return self._from_digits(x + y for x, y in zip(self.digits[a], self.digits[b]))

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg_table[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return 0
        return self.exp[(self.log[a] * n) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: int) -> bool:
        return a == 0

    def eq(self, a: int, b: int) -> bool:
        return a == b

    def from_int(self, n: int) -> int:
        return n % self.p

    def frobenius(self, a: int, power: int = 1) -> int:
        """a -> a^(p^power)."""
        return self.pow(a, self.p**power) if a else 0

    # -- tower interface (a finite field is a tower of height 0) --------

    symbols: tuple = ()

    @property
    def const_field(self) -> "FiniteField":
        return self

    def valvec(self, a: int) -> tuple:
        return ()

    def ac(self, a: int) -> int:
        return a

    def make_monomial(self, ac: int, valvec: tuple = ()) -> int:
        return ac

    def constant(self, a: int) -> int:
        return a

    # -- residuosity --------------------------------------------------

    def is_square(self, a: int) -> bool:
        return a != 0 and self.log[a] % 2 == 0

    def is_fourth_power(self, a: int) -> bool:
        if a == 0:
            return False
        g = 4 if (self.q - 1) % 4 == 0 else 2
        return self.log[a] % g == 0

    def nth_root(self, a: int, n: int) -> int | None:
        """Some b with b**n == a (least in int order), or None."""
        if a == 0:
            return 0
        for b in range(1, self.q):
            if self.pow(b, n) == a:
                return b
        return None

    def roots_of_unity(self, n: int) -> list[int]:
        return [b for b in range(1, self.q) if self.pow(b, n) == 1]

    def poly_eval(self, coeffs, x: int) -> int:
        """Evaluate a polynomial with F_p coefficients (low first) at x."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c % self.p)
        return acc

    def elements(self):
        return range(self.q)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"F_{self.q}"
        return f"F_{self.q}[{','.join(map(str, self.modulus))}]"

