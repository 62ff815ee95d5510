"""Square classes K*/K*^2 as bitmasks over the basis [u, t_1, ..., t_r].

Bit 0 is the canonical nonsquare unit u, bit i is the layer-i uniformizer.
Every decision reduces to valuations and one residue digit (Hensel's lemma,
residue characteristic odd).
"""

from __future__ import annotations

from .. import faults
from ..f2 import Subgroup
from .tower import FieldElement


def n_class_bits(field) -> int:
    return field.height + 1


def all_classes(field) -> range:
    return range(1 << n_class_bits(field))


def square_class_value(field, x) -> int:
    if field.height == 0:
        if x == 0:
            raise ValueError("square class of zero")
        return 0 if field.is_square(x) else 1
    v = field.valuation(x)
    low = square_class_value(field.base, field.residue_of_unit_part(x))
    return low | ((v & 1) << field.height)


def square_class(x: FieldElement) -> int:
    if x.is_zero():
        raise ValueError("square class of zero")
    return square_class_value(x.field, x.value)


def class_rep_value(field, c: int):
    """Canonical representative u^a t_1^e_1 ... t_r^e_r of class c."""
    const = field.const_field
    ac = const.nonsquare if c & 1 else const.one
    valvec = tuple((c >> i) & 1 for i in range(1, field.height + 1))
    return field.make_monomial(ac, valvec)


def class_rep(field, c: int) -> FieldElement:
    return FieldElement(field, class_rep_value(field, c))


def is_fourth_power_value(field, x) -> bool:
    if field.is_zero(x):
        return False
    if any(v % 4 for v in field.valvec(x)):
        return False
    return field.const_field.is_fourth_power(field.ac(x))


def is_fourth_power(x: FieldElement) -> bool:
    return is_fourth_power_value(x.field, x.value)


def minus_one_class(field) -> int:
    const = field.const_field
    return 0 if const.is_square(const.minus_one) else 1


def unit_mask(field) -> int:
    """Bits of classes that are units for the top valuation."""
    return (1 << field.height) - 1


def class_label(field, c: int) -> str:
    names = ["u"] + list(field.symbols)
    parts = [n for i, n in enumerate(names) if (c >> i) & 1]
    return "*".join(parts) or "1"


# -- Hilbert symbol --------------------------------------------------------

def _hilbert(height: int, minus1: int, a: int, b: int) -> int:
    if height == 0:
        return 1  # every binary form over a finite field is universal
    top = 1 << height
    alpha, beta = bool(a & top), bool(b & top)
    a0, b0 = a & (top - 1), b & (top - 1)
    if alpha and beta:
        # (a0 t, b0 t) = (a0 t, -a0 b0)
        b0, beta = minus1 ^ a0 ^ b0, False
    elif beta:
        a0, b0, alpha = b0, a0, True
    if not alpha:
        return _hilbert(height - 1, minus1, a0, b0)
    # <t a0, b0, -1> is isotropic iff b0 is a square of the residue field
    return 1 if b0 == 0 else -1


def hilbert_symbol_classes(field, a: int, b: int) -> int:
    """(a, b) in {+1, -1} for square classes a, b of ``field``.

    +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution.  For units the
    symbol is the residue symbol; (t a0, b0) is +1 iff the residue of b0 is
    a square, and (t a0, t b0) = (t a0, -a0 b0).
    """
    sym = _hilbert(field.height, minus_one_class(field), a, b)
    if faults.active("hilbert_symbol") and a and b:
        sym = -sym
    return sym


def hilbert_symbol(a: FieldElement, b: FieldElement) -> int:
    if a.field is not b.field:
        raise TypeError("mismatched fields")
    return hilbert_symbol_classes(a.field, square_class(a), square_class(b))


def norm_group(field, d: int) -> Subgroup:
    """N(K(sqrt d)*) K*^2 / K*^2 as {lambda : (lambda, d) = 1}."""
    if d == 0:
        raise ValueError("d must be a nontrivial square class")
    nbits = n_class_bits(field)
    return Subgroup(nbits, [c for c in all_classes(field) if hilbert_symbol_classes(field, c, d) == 1])
