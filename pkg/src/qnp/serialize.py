"""JSON round-trips for fields, elements, square classes, forms and H^1 classes."""

from __future__ import annotations

from .fields import FiniteField, LaurentField, n_class_bits


class FormatError(ValueError):
    pass


# -- fields -------------------------------------------------------------------

def field_to_json(field) -> dict:
    towers = list(field.symbols)
    F = field.const_field
    return {"base": {"q": F.q, "modulus": list(F.modulus)}, "towers": towers}


def field_from_json(obj) -> object:
    try:
        base = obj["base"]
        q = int(base["q"])
        modulus = base.get("modulus")
        towers = obj.get("towers", [])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed field description: {obj!r}") from exc
    p = next((d for d in range(2, q + 1) if q % d == 0), None)
    if p is None:
        raise FormatError(f"q must be a prime power, got {q}")
    k = 0
    while p**k < q:
        k += 1
    if p**k != q:
        raise FormatError(f"q must be a prime power, got {q}")
    try:
        field = FiniteField(p, modulus=tuple(modulus) if modulus else None, k=k)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if field.q != q:
        raise FormatError(f"modulus degree does not match q={q}")
    for sym in towers:
        field = LaurentField(field, str(sym))
    return field


# -- elements -----------------------------------------------------------------

def _poly_to_json(field, poly) -> dict:
    if not poly:
        return {"lo": 0, "coeffs": []}
    lo, hi = poly[0][0], poly[-1][0]
    table = dict(poly)
    coeffs = [value_to_json(field.base, table[e]) if e in table else None for e in range(lo, hi + 1)]
    return {"lo": lo, "coeffs": coeffs}


def _poly_from_json(field, obj) -> tuple:
    lo = int(obj["lo"])
    out = []
    for i, c in enumerate(obj["coeffs"]):
        if c is None:
            continue
        v = value_from_json(field.base, c)
        if field.base.is_zero(v):
            raise FormatError("explicit zero coefficient in a sparse polynomial")
        out.append((lo + i, v))
    return tuple(out)


def value_to_json(field, value):
    """Finite values become their base-p digit list; Laurent values a
    {num, den} pair of coefficient arrays starting at exponent ``lo``."""
    if field.height == 0:
        return list(field.digits[value])
    return {"num": _poly_to_json(field, value[0]), "den": _poly_to_json(field, value[1])}


def value_from_json(field, obj):
    if field.height == 0:
        if len(obj) != field.k:
            raise FormatError(f"expected {field.k} digits, got {obj!r}")
        return field._from_digits(obj)
    num = _poly_from_json(field, obj["num"])
    den = _poly_from_json(field, obj["den"])
    if not den:
        raise FormatError("zero denominator")
    return (num, den)


def element_to_json(x) -> dict:
    return {"field": field_to_json(x.field), "value": value_to_json(x.field, x.value)}


def element_from_json(obj):
    from .fields import FieldElement

    field = field_from_json(obj["field"])
    return FieldElement(field, value_from_json(field, obj["value"]))


# -- square classes and forms ----------------------------------------------

def class_to_bits(field, c: int) -> list[int]:
    return [(c >> i) & 1 for i in range(n_class_bits(field))]


def class_from_bits(field, bits) -> int:
    if isinstance(bits, int):
        c = bits
    else:
        bits = list(bits)
        if len(bits) != n_class_bits(field) or any(b not in (0, 1) for b in bits):
            raise FormatError(f"class bits {bits!r} do not match {field!r}")
        c = sum(b << i for i, b in enumerate(bits))
    if not 0 <= c < (1 << n_class_bits(field)):
        raise FormatError(f"class {c} out of range for {field!r}")
    return c


def form_to_json(Q) -> dict:
    return {"field": field_to_json(Q.field), "entries": [class_to_bits(Q.field, c) for c in Q.entries]}


def form_from_json(obj, field=None):
    from .quadform import QuadraticForm

    if field is None:
        field = field_from_json(obj["field"])
    return QuadraticForm(field, tuple(class_from_bits(field, e) for e in obj["entries"]))


# -- H^1 classes ------------------------------------------------------------

def h1_to_json(x) -> dict:
    ctx = x.ctx
    head = {"parity": ctx.parity, "field": field_to_json(ctx.X), "d": class_to_bits(ctx.X, ctx.d)}
    A = ctx.alg
    if not ctx.odd:
        if A.split:
            a, b = A.unpack(x.data)
            head["data"] = [class_to_bits(ctx.X, a), class_to_bits(ctx.X, b)]
        else:
            head["data"] = class_to_bits(A.Z, x.data)
        return head
    f, z = x.data
    if A.split:
        zj = [value_to_json(ctx.X, z[0]), value_to_json(ctx.X, z[1])]
    else:
        zj = value_to_json(A.Z, z)
    head["data"] = {"f": value_to_json(ctx.X, f), "z": zj}
    return head


def h1_from_json(obj):
    from .cohomology import H1Context

    X = field_from_json(obj["field"])
    ctx = H1Context(X, class_from_bits(X, obj["d"]), int(obj["parity"]))
    A = ctx.alg
    data = obj["data"]
    if not ctx.odd:
        if A.split:
            a, b = (class_from_bits(X, c) for c in data)
            return ctx.element(a | (b << A.nbits))
        return ctx.element(class_from_bits(A.Z, data))
    f = value_from_json(X, data["f"])
    if A.split:
        z = tuple(value_from_json(X, c) for c in data["z"])
    else:
        z = value_from_json(A.Z, data["z"])
    return ctx.element((f, z))
