"""Field embeddings, quadratic and constant extensions of towers.

Every extension is re-normalized to tower shape: an unramified step extends
a constant (or lower-layer) field, a ramified step replaces the top
uniformizer t by theta with theta^2 = c t.  Embeddings between towers of the
same height are *layered*: the layer-i uniformizer maps to w * x_i^e with w
a unit monomial of the layer below, so monomials map to monomials and
descent is a coefficient-by-coefficient inverse.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .. import faults
from .classes import all_classes, class_rep_value, square_class_value
from .finite import FiniteField
from .tower import FieldElement, LaurentField, gen


class Embedding:
    """Layered ring embedding src -> dst of towers of equal height."""

    def __init__(self, src, dst, table=None, base=None, w=None, e: int = 1):
        if src.height != dst.height:
            raise ValueError("layered embeddings need towers of equal height")
        self.src, self.dst = src, dst
        if src.height == 0:
            self.table = list(table)
            self.inverse = {b: a for a, b in enumerate(self.table)}
        else:
            self.base, self.w, self.e = base, w, e

    @classmethod
    def identity(cls, field) -> "Embedding":
        if field.height == 0:
            return cls(field, field, table=range(field.q))
        return cls(field, field, base=cls.identity(field.base), w=field.base.one, e=1)

    def _apply_poly(self, poly) -> tuple:
        D = self.dst.base
        terms = []
        for k, b in poly:
            terms.append((self.e * k, D.mul(self.base.apply(b), D.pow(self.w, k))))
        return terms

    def apply(self, x):
        if self.src.height == 0:
            return self.table[x]
        from .tower import _combine

        D = self.dst
        num = _combine(self._apply_poly(x[0]), D.base)
        den = _combine(self._apply_poly(x[1]), D.base)
        return D._make(num, den)

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field is not self.src:
            raise TypeError(f"element of {x.field!r} is not in {self.src!r}")
        return FieldElement(self.dst, self.apply(x.value))

    def _descend_poly(self, poly) -> tuple:
        D = self.dst.base
        out = []
        for m, c in poly:
            if m % self.e:
                raise ValueError("value is not in the image of the embedding")
            k = m // self.e
            out.append((k, self.base.descend(D.mul(c, D.pow(self.w, -k)))))
        return tuple(out)

    def descend(self, y):
        """Preimage of y; ValueError if y is not in the image."""
        if self.src.height == 0:
            try:
                return self.inverse[y]
            except KeyError:
                raise ValueError("value is not in the image of the embedding") from None
        num = self._descend_poly(y[0])
        den = self._descend_poly(y[1])
        return self.src._make(num, den)

    def compose(self, other: "Embedding") -> "Embedding":
        """other o self : src -> other.dst."""
        if other.src is not self.dst:
            raise ValueError("embeddings do not compose")
        if self.src.height == 0:
            return Embedding(self.src, other.dst, table=[other.table[b] for b in self.table])
        C = other.dst.base
        w = C.mul(other.base.apply(self.w), C.pow(other.w, self.e))
        return Embedding(self.src, other.dst, base=self.base.compose(other.base), w=w, e=self.e * other.e)


def monomial_sqrt(field, x):
    """Exact square root of a monomial value, or None."""
    if field.height == 0:
        return field.nth_root(x, 2)
    num, den = x
    if len(num) != 1 or len(den) != 1 or den[0][0] != 0 or not field.base.eq(den[0][1], field.base.one):
        x = field._make(num, den)
        num, den = x
        if len(num) != 1 or den != field.one_poly:
            return None
    m, c = num[0]
    if m % 2:
        return None
    s = monomial_sqrt(field.base, c)
    if s is None:
        return None
    return field.monomial(s, m // 2)


def _finite_extension_table(src: FiniteField, dst: FiniteField, consistent=None) -> list[int]:
    """Embedding table F_src -> F_dst sending x to a root of src.modulus.

    ``consistent`` optionally maps (table) -> bool to select among roots."""
    roots = [r for r in range(dst.q) if dst.poly_eval(src.modulus, r) == 0]
    for r in roots:
        table = [0] * src.q
        for a in range(src.q):
            acc = 0
            power = 1
            for c in src.digits[a]:
                acc = dst.add(acc, dst.mul(c, power))
                power = dst.mul(power, r)
            table[a] = acc
        if consistent is None or consistent(table):
            return table
    raise ValueError(f"{src!r} does not embed into {dst!r} as required")


def _ramified_symbol(field, sym: str) -> str:
    new = sym + "'"
    while new in field.symbols:
        new += "'"
    return new


def _integral_poly(field, poly):
    """Split poly = P / D with D in the base and no nested denominators in P."""
    B = field.base
    if B.height == 0:
        return poly, B.one
    parts = [integral_fraction(B, c) for _, c in poly]
    D = B.one
    for _, q in parts:
        D = B.mul(D, q)
    out = []
    for i, ((k, _), (p, _)) in enumerate(zip(poly, parts)):
        c = p
        for j, (_, q) in enumerate(parts):
            if j != i:
                c = B.mul(c, q)
        out.append((k, c))
    return tuple(out), D


def integral_fraction(field, x):
    """Values (A, C) with x = A / C where A and C carry no denominators at any layer.

    Conjugation-fixed polynomials in this shape descend term by term."""
    pn, dn = _integral_poly(field, x[0])
    pd, dd = _integral_poly(field, x[1])
    A = field.pmul(pn, ((0, dd),))
    C = field.pmul(pd, ((0, dn),))
    return (A, field.one_poly), (C, field.one_poly)


class Extension:
    """A finite extension L/K given by a layered embedding.

    ``level`` is the layer where L differs from K (0 = constant field).
    ``kind`` is relative to the top valuation: 'ramified' iff level equals
    the height."""

    degree = 2

    def __init__(self, K, L, d: int, level: int, emb: Embedding, gen_value, conj_fn, sub=None, degree: int = 2):
        self.K, self.L, self.d, self.level = K, L, d, level
        self.emb, self.gen_value, self._conj, self.sub = emb, gen_value, conj_fn, sub
        self.degree = degree
        self.kind = "ramified" if (level == K.height and K.height > 0) else "unramified"

    @property
    def ramified(self) -> bool:
        return self.kind == "ramified"

    def __repr__(self) -> str:
        return f"Extension({self.K!r} -> {self.L!r}, d={self.d}, {self.kind}, level={self.level})"

    # -- element level ----------------------------------------------------

    def embed_value(self, x):
        return self.emb.apply(x)

    def embed(self, x: FieldElement) -> FieldElement:
        return self.emb(x)

    def substitute_uniformizer(self) -> FieldElement:
        """Image of the top uniformizer of K inside L."""
        return self.emb(gen(self.K))

    def conj_value(self, z):
        if self._conj is None:
            raise ValueError("conjugation is only defined for quadratic extensions")
        return self._conj(z)

    def conj(self, z: FieldElement) -> FieldElement:
        return FieldElement(self.L, self.conj_value(z.value))

    def gen(self) -> FieldElement:
        """An element g of L with conj(g) = -g."""
        return FieldElement(self.L, self.gen_value)

    def norm_value(self, z):
        L = self.L
        if L.height == 0:
            return self.emb.descend(L.mul(z, self.conj_value(z)))
        num, den = integral_fraction(L, z)
        n = self.emb.descend(L.mul(num, self.conj_value(num)))
        d = self.emb.descend(L.mul(den, self.conj_value(den)))
        return self.K.div(n, d)

    def trace_value(self, z):
        L = self.L
        if L.height == 0:
            return self.emb.descend(L.add(z, self.conj_value(z)))
        num, den = integral_fraction(L, z)
        # z + conj z = (n conj(d) + conj(n) d) / (d conj(d))
        top = L.add(L.mul(num, self.conj_value(den)), L.mul(self.conj_value(num), den))
        bottom = L.mul(den, self.conj_value(den))
        if L.is_zero(top):
            return self.K.zero
        return self.K.div(self.emb.descend(top), self.emb.descend(bottom))

    def norm(self, z: FieldElement) -> FieldElement:
        return FieldElement(self.K, self.norm_value(z.value))

    def trace(self, z: FieldElement) -> FieldElement:
        return FieldElement(self.K, self.trace_value(z.value))

    def norm_and_trace(self, z: FieldElement) -> tuple[FieldElement, FieldElement]:
        return self.norm(z), self.trace(z)

    # -- class level ------------------------------------------------------

    @property
    def res_table(self) -> list[int]:
        if not hasattr(self, "_res"):
            self._res = [
                square_class_value(self.L, self.emb.apply(class_rep_value(self.K, c))) for c in all_classes(self.K)
            ]
        return self._res

    def res_class(self, c: int) -> int:
        """Class map K*/K*^2 -> L*/L*^2."""
        return self.res_table[c]

    @property
    def norm_table(self) -> list[int]:
        if not hasattr(self, "_norm"):
            self._norm = [
                square_class_value(self.K, self.norm_value(class_rep_value(self.L, c))) for c in all_classes(self.L)
            ]
        return self._norm

    def norm_class(self, c: int) -> int:
        """Class map N_{L/K}: L*/L*^2 -> K*/K*^2."""
        value = self.norm_table[c]
        if faults.active("norm_map") and c:
            value ^= 1
        return value


def _finite_quadratic(K: FiniteField, d: int) -> Extension:
    if d != 1:
        raise ValueError("the only nontrivial square class of a finite field is [u]")
    L = FiniteField(K.p, k=2 * K.k)
    emb = Embedding(K, L, table=_finite_extension_table(K, L))
    q = K.q
    g = L.nth_root(emb.table[K.nonsquare], 2)
    return Extension(K, L, d, 0, emb, g, lambda x: L.pow(x, q) if x else 0)


def _negate_odd(L):
    def conj(x):
        num = tuple((e, L.base.neg(c) if e & 1 else c) for e, c in x[0])
        den = tuple((e, L.base.neg(c) if e & 1 else c) for e, c in x[1])
        return L._make(num, den)

    return conj


@lru_cache(maxsize=None)
def quad_ext(K, d: int) -> Extension:
    """K(sqrt d) for a nontrivial square class d, in tower shape."""
    if d == 0:
        raise ValueError("d is the identity class: no field extension (use the split algebra)")
    if d >> (K.height + 1):
        raise ValueError(f"class {d} out of range for {K!r}")
    if K.height == 0:
        return _finite_quadratic(K, d)
    top = 1 << K.height
    if d & top:
        B = K.base
        c = class_rep_value(B, d & (top - 1))
        L = LaurentField(B, _ramified_symbol(K, K.sym))
        emb = Embedding(K, L, base=Embedding.identity(B), w=B.inv(c), e=2)
        return Extension(K, L, d, K.height, emb, L.uniformizer(), _negate_odd(L))
    sub = quad_ext(K.base, d)
    L = LaurentField(sub.L, K.sym)
    emb = Embedding(K, L, base=sub.emb, w=sub.L.one, e=1)
    sub_conj = sub._conj
    return Extension(K, L, d, sub.level, emb, L.lift(sub.gen_value), lambda x: L.map_coeffs(x, sub_conj), sub=sub)


@lru_cache(maxsize=None)
def constant_extension(K, degree: int) -> Extension:
    """Unramified extension extending the constants F_q -> F_{q^degree}."""
    if K.height == 0:
        L = FiniteField(K.p, k=K.k * degree)
        emb = Embedding(K, L, table=_finite_extension_table(K, L))
        conj = (lambda x: L.pow(x, K.q) if x else 0) if degree == 2 else None
        return Extension(K, L, 1, 0, emb, None, conj, degree=degree)
    sub = constant_extension(K.base, degree)
    L = LaurentField(sub.L, K.sym)
    emb = Embedding(K, L, base=sub.emb, w=sub.L.one, e=1)
    return Extension(K, L, 1, 0, emb, None, None, sub=sub, degree=degree)


def extend_embedding(emb: Embedding, ext: Extension) -> Embedding:
    """Extend emb: K -> M along ext: K -> Z to an embedding Z -> M."""
    Z, M = ext.L, emb.dst
    if ext.K.height == 0:
        K = ext.K
        table = _finite_extension_table(
            Z, M, consistent=lambda tab: all(tab[ext.emb.table[a]] == emb.table[a] for a in range(K.q))
        )
        return Embedding(Z, M, table=table)
    if ext.level == ext.K.height:
        if emb.e % 2:
            raise ValueError(f"{Z!r} does not embed into {M!r}")
        B = M.base
        c = class_rep_value(ext.K.base, ext.d & ((1 << ext.K.height) - 1))
        s = monomial_sqrt(B, B.mul(emb.base.apply(c), emb.w))
        if s is None:
            raise ValueError(f"{Z!r} does not embed into {M!r}")
        return Embedding(Z, M, base=emb.base, w=s, e=emb.e // 2)
    return Embedding(Z, M, base=extend_embedding(emb.base, ext.sub), w=emb.w, e=emb.e)


# -- automorphisms of towers ----------------------------------------------

class MonomialAutomorphism:
    """x -> Frobenius^frob on constants, layer-i uniformizer x_i -> c_i x_i."""

    def __init__(self, field, frob: int, mults: tuple[int, ...]):
        self.field, self.frob, self.mults = field, frob, mults

    def apply(self, x, field=None):
        field = field or self.field
        if field.height == 0:
            return field.frobenius(x, self.frob) if x else 0
        c = field.base.constant(self.mults[field.height - 1])
        B = field.base

        def poly(P):
            from .tower import _combine

            return _combine([(k, B.mul(self.apply(b, B), B.pow(c, k))) for k, b in P], B)

        return field._make(poly(x[0]), poly(x[1]))

    def __repr__(self) -> str:
        return f"MonomialAutomorphism(frob={self.frob}, mults={self.mults})"


def _generators(X) -> list:
    gens = []
    if X.const_field.k > 1:
        gens.append(X.constant(X.const_field.p))
    for sym in X.symbols:
        gens.append(gen(X, sym).value)
    return gens


def galois_group(emb: Embedding, expected: int | None = None) -> list[MonomialAutomorphism]:
    """Automorphisms of emb.dst fixing emb(src), among monomial automorphisms."""
    M = emb.dst
    F = M.const_field
    images = [emb.apply(g) for g in _generators(emb.src)]
    group = []
    for frob in range(F.k):
        for mults in itertools.product(range(1, F.q), repeat=M.height):
            sigma = MonomialAutomorphism(M, frob, mults)
            if all(M.eq(sigma.apply(y), y) for y in images):
                group.append(sigma)
    if expected is not None and len(group) != expected:
        raise ValueError(f"found {len(group)} automorphisms, expected {expected}")
    return group


def galois_norm_value(emb: Embedding, group, z):
    """N(z) = prod of sigma(z) over the group, descended along emb."""
    M = emb.dst
    if M.height == 0:
        acc = M.one
        for s in group:
            acc = M.mul(acc, s.apply(z))
        return emb.descend(acc)
    parts = []
    for poly in z:
        acc = M.one
        piece = M._make(poly, M.one_poly)
        for s in group:
            acc = M.mul(acc, s.apply(piece))
        parts.append(emb.descend(acc))
    return emb.src.div(parts[0], parts[1])
