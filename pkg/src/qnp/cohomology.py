"""Finite models of H^1(K, mu) attached to an even-dimensional form.

Z is the discriminant algebra of the form, psi its nontrivial automorphism.
For n = dim/2 even, H^1 is Z*/Z*^2 and an element is stored as a Z square
class code.  For n odd, H^1 is U/U0 with U = {(f, z) : f^4 = N(z)} and
U0 = {(N(w), w^4)}; an element is a representative pair compared by a
decision procedure that only looks at valuations and leading coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import faults
from .f2 import Subgroup
from .fields import (
    all_classes,
    class_rep_value,
    extend_embedding,
    galois_group,
    galois_norm_value,
    is_fourth_power_value,
    n_class_bits,
    norm_group,
    quad_ext,
    square_class_value,
)
from .quadform import PreconditionError, QuadraticForm, similarity_group


class MalformedClass(ValueError):
    """An odd-parity representative violates f^4 = N(z)."""


# -- the discriminant algebra ---------------------------------------------

class EtaleQuadratic:
    """K x K with the swap (d trivial) or the field K(sqrt d) with conj."""

    def __init__(self, X, d: int):
        self.X, self.d = X, d
        self.split = d == 0
        self.nbits = n_class_bits(X)
        if self.split:
            self.ext = None
            self.Z = None
        else:
            self.ext = quad_ext(X, d)
            self.Z = self.ext.L

    def __repr__(self) -> str:
        return f"EtaleQuadratic({self.X!r}, split)" if self.split else f"EtaleQuadratic({self.Z!r})"

    # element arithmetic; split elements are pairs of X values
    @property
    def one(self):
        return (self.X.one, self.X.one) if self.split else self.Z.one

    def mul(self, a, b):
        if self.split:
            return (self.X.mul(a[0], b[0]), self.X.mul(a[1], b[1]))
        return self.Z.mul(a, b)

    def inv(self, a):
        if self.split:
            return (self.X.inv(a[0]), self.X.inv(a[1]))
        return self.Z.inv(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if self.split:
            return (self.X.pow(a[0], n), self.X.pow(a[1], n))
        return self.Z.pow(a, n)

    def add(self, a, b):
        if self.split:
            return (self.X.add(a[0], b[0]), self.X.add(a[1], b[1]))
        return self.Z.add(a, b)

    def eq(self, a, b) -> bool:
        if self.split:
            return self.X.eq(a[0], b[0]) and self.X.eq(a[1], b[1])
        return self.Z.eq(a, b)

    def embed(self, x):
        return (x, x) if self.split else self.ext.embed_value(x)

    def psi(self, a):
        return (a[1], a[0]) if self.split else self.ext.conj_value(a)

    def norm(self, a):
        if self.split:
            return self.X.mul(a[0], a[1])
        return self.ext.norm_value(a)

    def gen(self):
        """An element with psi(g) = -g."""
        if self.split:
            return (self.X.one, self.X.neg(self.X.one))
        return self.ext.gen_value

    def is_zero_divisor(self, a) -> bool:
        if self.split:
            return self.X.is_zero(a[0]) or self.X.is_zero(a[1])
        return self.Z.is_zero(a)

    # square classes of Z*; split codes pack (c1, c2) as c1 | c2 << nbits
    def classes(self) -> range:
        if self.split:
            return range(1 << (2 * self.nbits))
        return all_classes(self.Z)

    def class_of(self, a) -> int:
        if self.split:
            return square_class_value(self.X, a[0]) | (square_class_value(self.X, a[1]) << self.nbits)
        return square_class_value(self.Z, a)

    def class_rep(self, code: int):
        if self.split:
            mask = (1 << self.nbits) - 1
            return (class_rep_value(self.X, code & mask), class_rep_value(self.X, code >> self.nbits))
        return class_rep_value(self.Z, code)

    def unpack(self, code: int) -> tuple[int, int]:
        mask = (1 << self.nbits) - 1
        return code & mask, code >> self.nbits

    def res_code(self, c: int) -> int:
        """Class map X*/X*^2 -> Z*/Z*^2."""
        if self.split:
            return c | (c << self.nbits)
        return self.ext.res_class(c)

    def norm_code(self, code: int) -> int:
        """Class map Z*/Z*^2 -> X*/X*^2 induced by the norm."""
        if self.split:
            a, b = self.unpack(code)
            return a ^ b
        return self.ext.norm_class(code)

    def norm_classes(self) -> Subgroup:
        """N(Z*) X*^2 / X*^2."""
        if self.split:
            return Subgroup.full(self.nbits)
        return norm_group(self.X, self.d)

    # fourth powers, decided on leading data only
    def is_fourth_power(self, a) -> bool:
        if self.split:
            return is_fourth_power_value(self.X, a[0]) and is_fourth_power_value(self.X, a[1])
        return is_fourth_power_value(self.Z, a)

    def _monomial_fourth_root(self, field, a):
        F = field.const_field
        root = F.nth_root(field.ac(a), 4)
        return field.make_monomial(root, tuple(v // 4 for v in field.valvec(a)))

    def monomial_fourth_root(self, a):
        """Monomial m with a / m^4 a principal unit at every layer."""
        if self.split:
            return (self._monomial_fourth_root(self.X, a[0]), self._monomial_fourth_root(self.X, a[1]))
        return self._monomial_fourth_root(self.Z, a)

    def mu4(self) -> list:
        if self.split:
            F = self.X.const_field
            roots = [self.X.constant(r) for r in F.roots_of_unity(4)]
            return [(a, b) for a in roots for b in roots]
        F = self.Z.const_field
        return [self.Z.constant(r) for r in F.roots_of_unity(4)]


# -- H^1 classes ------------------------------------------------------------

class H1Class:
    """Element of H^1(X, mu) in a fixed context; equality via the context."""

    __slots__ = ("ctx", "data")

    def __init__(self, ctx: "H1Context", data):
        self.ctx, self.data = ctx, data

    def __mul__(self, other: "H1Class") -> "H1Class":
        return self.ctx.mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, H1Class):
            return NotImplemented
        return self.ctx.equal(self, other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"H1Class(parity={self.ctx.parity}, data={self.data!r})"


class H1Context:
    """H^1(X, mu) for discriminant class d and parity of n = dim/2."""

    _cache: dict = {}

    def __new__(cls, X, d: int, parity: int):
        key = (X, d, parity % 2)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        self.X, self.d, self.parity = X, d, parity % 2
        self.alg = EtaleQuadratic(X, d)
        self._enum: dict = {}
        cls._cache[key] = self
        return self

    def __reduce__(self):
        return (H1Context, (self.X, self.d, self.parity))

    def __repr__(self) -> str:
        return f"H1Context({self.X!r}, d={self.d}, parity={self.parity})"

    @property
    def odd(self) -> bool:
        return self.parity == 1

    # -- construction and group law ------------------------------------------

    def element(self, data) -> H1Class:
        if self.odd:
            f, z = data
            if not self.X.eq(self.X.pow(f, 4), self.alg.norm(z)):
                raise MalformedClass("representative violates f^4 = N(z)")
        return H1Class(self, data)

    def one(self) -> H1Class:
        if self.odd:
            return H1Class(self, (self.X.one, self.alg.one))
        return H1Class(self, 0)

    def mul(self, x: H1Class, y: H1Class) -> H1Class:
        if self.odd:
            (f1, z1), (f2, z2) = x.data, y.data
            return H1Class(self, (self.X.mul(f1, f2), self.alg.mul(z1, z2)))
        return H1Class(self, x.data ^ y.data)

    def inverse(self, x: H1Class) -> H1Class:
        if self.odd:
            f, z = x.data
            return H1Class(self, (self.X.inv(f), self.alg.inv(z)))
        return x

    def equal(self, x: H1Class, y: H1Class) -> bool:
        if not self.odd:
            return x.data == y.data
        (fx, zx), (fy, zy) = x.data, y.data
        A, X = self.alg, self.X
        c = A.div(zy, zx)
        if not A.is_fourth_power(c):
            return False
        m = A.monomial_fourth_root(c)
        ratio = X.div(X.div(fy, fx), A.norm(m))
        target = X.ac(ratio)
        return any(X.ac(A.norm(zeta)) == target for zeta in A.mu4())

    # -- the maps i and j ---------------------------------------------------

    def map_i_value(self, f) -> H1Class:
        """i on an element f of X*."""
        if self.odd:
            return H1Class(self, (f, self.alg.embed(self.X.mul(f, f))))
        return H1Class(self, self.alg.class_of(self.alg.embed(f)))

    def map_i(self, c: int) -> H1Class:
        """i on a square class of X."""
        if self.odd:
            return self.map_i_value(class_rep_value(self.X, c))
        return H1Class(self, self.alg.res_code(c))

    def hilbert90(self, c):
        """z0 with z0 / psi(z0) = c, for c of norm one."""
        A = self.alg
        if A.split:
            return (c[0], self.X.one)
        minus_one = A.embed(self.X.neg(self.X.one))
        if A.eq(c, minus_one):
            return A.gen()
        return A.add(A.one, c)

    def map_j(self, x: H1Class) -> int:
        if not self.odd:
            return self.alg.norm_code(x.data)
        f, z = x.data
        A = self.alg
        c = A.mul(A.embed(self.X.inv(self.X.mul(f, f))), z)
        return square_class_value(self.X, A.norm(self.hilbert90(c)))

    def section(self, lam: int):
        """Class with j = lam built from some z0 with N(z0) in lam, or None."""
        A = self.alg
        for code in A.classes():
            z0 = A.class_rep(code)
            if square_class_value(self.X, A.norm(z0)) == lam:
                if self.odd:
                    return H1Class(self, (self.X.one, A.div(z0, A.psi(z0))))
                return H1Class(self, code)
        return None

    # -- enumeration ----------------------------------------------------------

    def _enumerate(self):
        key = faults.state()
        if key in self._enum:
            return self._enum[key]
        if not self.odd:
            result = ([H1Class(self, code) for code in self.alg.classes()], [])
        else:
            image_i: list[H1Class] = []
            for c in all_classes(self.X):
                x = self.map_i(c)
                if not any(self.equal(x, y) for y in image_i):
                    image_i.append(x)
            elements: list[H1Class] = []
            missing = []
            for lam in self.alg.norm_classes().elements():
                s = self.section(lam)
                if s is None:
                    missing.append(lam)
                    continue
                for y in image_i:
                    x = self.mul(s, y)
                    if not any(self.equal(x, e) for e in elements):
                        elements.append(x)
            result = (elements, missing)
        self._enum[key] = result
        return result

    def enumerate(self) -> list[H1Class]:
        return list(self._enumerate()[0])

    def enumeration_gaps(self) -> list[int]:
        """Classes expected in the image of j that no element reached."""
        return list(self._enumerate()[1])

    def kernel_i(self) -> list[int]:
        return [c for c in all_classes(self.X) if self.equal(self.map_i(c), self.one())]

    def image_i(self) -> list[H1Class]:
        out: list[H1Class] = []
        for c in all_classes(self.X):
            x = self.map_i(c)
            if not any(self.equal(x, y) for y in out):
                out.append(x)
        return out

    def image_j(self) -> Subgroup:
        return Subgroup(n_class_bits(self.X), [self.map_j(x) for x in self.enumerate()])

    def subgroup_H(self, Q: QuadraticForm) -> list[H1Class]:
        """Classes whose j-image is a similarity factor of Q."""
        if Q.field is not self.X:
            raise TypeError("form and context live over different fields")
        G = similarity_group(Q)
        return [x for x in self.enumerate() if self.map_j(x) in G]

    def contains(self, xs: list[H1Class], x: H1Class) -> bool:
        return any(self.equal(x, y) for y in xs)


def discriminant_class(Q: QuadraticForm) -> int:
    if Q.dim % 2:
        raise PreconditionError("the discriminant algebra needs an even dimension")
    return Q.disc()


def discriminant_algebra(Q: QuadraticForm) -> EtaleQuadratic:
    return EtaleQuadratic(Q.field, discriminant_class(Q))


def context_for(Q: QuadraticForm) -> H1Context:
    return H1Context(Q.field, discriminant_class(Q), (Q.dim // 2) % 2)


# -- base change along a quadratic L/K --------------------------------------

class H1Extension:
    """Restriction and corestriction between H^1(K, mu) and H^1(L, mu)."""

    def __init__(self, ctx: H1Context, ext):
        if ext.K is not ctx.X:
            raise TypeError("extension is not over the context field")
        self.ctxK, self.ext = ctx, ext
        dL = ctx.d and ext.res_class(ctx.d)
        self.ctxL = H1Context(ext.L, dL, ctx.parity)
        if ctx.d == 0:
            self.case = "split"
        elif dL == 0:
            self.case = "same"
        else:
            self.case = "field"
            M = self.ctxL.alg.ext
            self._zm = extend_embedding(ext.emb.compose(M.emb), ctx.alg.ext)
            self._galois = galois_group(self._zm, expected=2)

    # element level: Z_L -> Z and Z -> Z_L
    def norm_z(self, zL):
        e = self.ext
        if self.case == "split":
            return (e.norm_value(zL[0]), e.norm_value(zL[1]))
        if self.case == "same":
            a, b = zL
            return e.L.mul(a, e.conj_value(b))
        return galois_norm_value(self._zm, self._galois, zL)

    def res_z(self, z):
        e = self.ext
        if self.case == "split":
            return (e.embed_value(z[0]), e.embed_value(z[1]))
        if self.case == "same":
            return (z, e.conj_value(z))
        return self._zm.apply(z)

    def norm(self, x: H1Class) -> H1Class:
        K, e = self.ctxK, self.ext
        if K.odd:
            f, z = x.data
            return H1Class(K, (e.norm_value(f), self.norm_z(z)))
        if self.case == "split":
            a, b = self.ctxL.alg.unpack(x.data)
            return H1Class(K, e.norm_class(a) | (e.norm_class(b) << K.alg.nbits))
        zL = self.ctxL.alg.class_rep(x.data)
        return H1Class(K, K.alg.class_of(self.norm_z(zL)))

    def restrict(self, x: H1Class) -> H1Class:
        K, L = self.ctxK, self.ctxL
        if K.odd:
            f, z = x.data
            return H1Class(L, (self.ext.embed_value(f), self.res_z(z)))
        return H1Class(L, L.alg.class_of(self.res_z(K.alg.class_rep(x.data))))


# -- unit-level constructions ------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    unit_part: H1Class
    epsilon: int


def _top_valuation(X, value) -> int:
    return X.valuation(value)


def _times_theta_power(field, value, k: int):
    return field.mul(value, field.pow(field.uniformizer(), k))


def decompose_unramified(ctx: H1Context, u: H1Class) -> Decomposition:
    """u = u' * i(theta^eps) with u' of top valuation zero."""
    L = ctx.X
    if L.height == 0:
        raise PreconditionError("needs a Laurent field")
    top = 1 << L.height
    if ctx.d & top:
        raise PreconditionError("the discriminant must be a unit class")
    if ctx.map_j(u) & top:
        raise PreconditionError("j(u) is not a unit class")
    A = ctx.alg
    if not ctx.odd:
        if A.split:
            a, b = A.unpack(u.data)
            eps = (a & top) >> L.height
            strip = (a & ~top) | ((b & ~top) << A.nbits)
        else:
            eps = (u.data & top) >> L.height
            strip = u.data & ~top
        unit = H1Class(ctx, strip)
    else:
        f, z = u.data
        eps = _top_valuation(L, f)
        f0 = _times_theta_power(L, f, -eps)
        if A.split:
            z1, z2 = z
            e1 = _top_valuation(L, z1)
            if e1 % 2:
                raise AssertionError("valuation of the first coordinate must be even")
            unit = H1Class(ctx, (f0, (_times_theta_power(L, z1, -e1), _times_theta_power(L, z2, e1 - 4 * eps))))
            eps = eps + ((e1 - 2 * eps) // 2) % 2
        else:
            theta = A.embed(L.uniformizer())
            unit = H1Class(ctx, (f0, A.mul(z, A.pow(theta, -2 * eps))))
    theta_class = ctx.map_i_value(L.pow(L.uniformizer(), eps)) if ctx.odd else ctx.map_i(top if eps % 2 else 0)
    if not ctx.equal(u, ctx.mul(unit, theta_class)):
        raise AssertionError("recomposition u = u' i(theta^eps) failed")
    return Decomposition(unit, eps)


def is_unit_level(ctx: H1Context, x: H1Class) -> bool:
    """Top-valuation-zero representative data."""
    L = ctx.X
    top = 1 << L.height
    A = ctx.alg
    if not ctx.odd:
        if A.split:
            a, b = A.unpack(x.data)
            return not (a & top) and not (b & top)
        return not (x.data & (1 << A.Z.height))
    f, z = x.data
    if L.valuation(f):
        return False
    if A.split:
        return not L.valuation(z[0]) and not L.valuation(z[1])
    return not A.Z.valuation(z)


def unit_level_classes(ctx: H1Context) -> list[H1Class]:
    """Unit parts of the enumerated classes whose j-image is a unit class."""
    return [decompose_unramified(ctx, x).unit_part for x in ctx.enumerate() if not ctx.map_j(x) >> ctx.X.height]


def residue_context(ctx: H1Context) -> H1Context:
    X = ctx.X
    if X.height == 0:
        raise PreconditionError("finite fields have no residue field")
    top = 1 << X.height
    if ctx.d & top:
        raise PreconditionError("ramified discriminant algebra does not specialize")
    return H1Context(X.base, ctx.d, ctx.parity)


def specialize(ctx: H1Context, x: H1Class) -> H1Class:
    """Componentwise residue of unit-level data."""
    R = residue_context(ctx)
    if not is_unit_level(ctx, x):
        raise PreconditionError("specialization needs unit-level data")
    X, A = ctx.X, ctx.alg
    if not ctx.odd:
        if A.split:
            a, b = A.unpack(x.data)
            low = (1 << X.height) - 1
            return H1Class(R, (a & low) | ((b & low) << R.alg.nbits))
        return H1Class(R, x.data & ((1 << A.Z.height) - 1))
    f, z = x.data
    fr = X.residue_of_unit_part(f)
    if A.split:
        zr = (X.residue_of_unit_part(z[0]), X.residue_of_unit_part(z[1]))
    else:
        zr = A.Z.residue_of_unit_part(z)
    return H1Class(R, (fr, zr))

