"""Diagonal quadratic forms stored entry-wise as square classes.

Isometry is decided by invariants: dimension plus the anisotropic kernel,
which is computed recursively through the two residue forms of each layer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .f2 import Subgroup
from .fields import (
    all_classes,
    class_label,
    class_rep_value,
    minus_one_class,
    n_class_bits,
    norm_group,
    quad_ext,
)


class PreconditionError(ValueError):
    """An operation was called outside the regime it is defined for."""


class NotFound(LookupError):
    """A search exhausted its candidates although its hypotheses held."""


@dataclass(frozen=True)
class QuadraticForm:
    field: object
    entries: tuple

    def __post_init__(self):
        entries = tuple(int(c) for c in self.entries)
        limit = 1 << n_class_bits(self.field)
        for c in entries:
            if not 0 <= c < limit:
                raise ValueError(f"entry class {c} out of range for {self.field!r}")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __add__(self, other: "QuadraticForm") -> "QuadraticForm":
        if other.field is not self.field:
            raise TypeError("orthogonal sum of forms over different fields")
        return QuadraticForm(self.field, self.entries + other.entries)

    def scale(self, lam: int) -> "QuadraticForm":
        return QuadraticForm(self.field, tuple(c ^ lam for c in self.entries))

    def __neg__(self) -> "QuadraticForm":
        return self.scale(minus_one_class(self.field))

    def det(self) -> int:
        acc = 0
        for c in self.entries:
            acc ^= c
        return acc

    def disc(self) -> int:
        """Signed discriminant (-1)^(n(n-1)/2) * det as a class."""
        n = self.dim
        sign = minus_one_class(self.field) if (n * (n - 1) // 2) % 2 else 0
        return self.det() ^ sign

    def values(self) -> list:
        """Canonical monomial representatives of the entries."""
        return [class_rep_value(self.field, c) for c in self.entries]

    def __str__(self) -> str:
        return "<" + ", ".join(class_label(self.field, c) for c in self.entries) + ">"


def form(field, entries) -> QuadraticForm:
    return QuadraticForm(field, tuple(entries))


def hyperbolic(field, n: int = 1) -> QuadraticForm:
    return QuadraticForm(field, (0, minus_one_class(field)) * n)


# -- Springer decomposition and Witt classes --------------------------------

def springer_decompose(Q: QuadraticForm) -> tuple[QuadraticForm, QuadraticForm]:
    """Residue forms (unit part, uniformizer part) w.r.t. the top layer."""
    K = Q.field
    if K.height == 0:
        raise PreconditionError("Springer decomposition needs a Laurent field")
    top = 1 << K.height
    q1 = tuple(c for c in Q.entries if not c & top)
    q2 = tuple(c & (top - 1) for c in Q.entries if c & top)
    return QuadraticForm(K.base, q1), QuadraticForm(K.base, q2)


@lru_cache(maxsize=None)
def _kernel(field, entries: tuple) -> tuple:
    if field.height == 0:
        n = len(entries)
        m1 = minus_one_class(field)
        det = 0
        for c in entries:
            det ^= c
        if n % 2 == 0:
            disc = det ^ (m1 if (n // 2) % 2 else 0)
            return () if disc == 0 else tuple(sorted((0, 1 ^ m1)))
        disc = det ^ (m1 if ((n - 1) // 2) % 2 else 0)
        return (disc,)
    top = 1 << field.height
    q1 = tuple(sorted(c for c in entries if not c & top))
    q2 = tuple(sorted(c & (top - 1) for c in entries if c & top))
    k1 = _kernel(field.base, q1)
    k2 = _kernel(field.base, q2)
    return tuple(sorted(k1 + tuple(c | top for c in k2)))


def anisotropic_kernel(Q: QuadraticForm) -> QuadraticForm:
    return QuadraticForm(Q.field, _kernel(Q.field, tuple(sorted(Q.entries))))


@dataclass(frozen=True)
class WittClass:
    """Class in W(K), identified by the canonical sorted anisotropic kernel."""

    field: object
    kernel: tuple

    @property
    def dim(self) -> int:
        return len(self.kernel)

    def is_zero(self) -> bool:
        return not self.kernel

    def __add__(self, other: "WittClass") -> "WittClass":
        return WittClass(self.field, _kernel(self.field, tuple(sorted(self.kernel + other.kernel))))

    def __neg__(self) -> "WittClass":
        m1 = minus_one_class(self.field)
        return WittClass(self.field, tuple(sorted(c ^ m1 for c in self.kernel)))

    def residues(self) -> tuple["WittClass", "WittClass"]:
        """The two residue classes in W of the residue field."""
        q1, q2 = springer_decompose(QuadraticForm(self.field, self.kernel))
        return witt_class(q1), witt_class(q2)

    def tree(self):
        """Nested tuple form: base kernels at the leaves."""
        if self.field.height == 0:
            return self.kernel
        w1, w2 = self.residues()
        return (w1.tree(), w2.tree())


def witt_class(Q: QuadraticForm) -> WittClass:
    return WittClass(Q.field, anisotropic_kernel(Q).entries)


def is_isotropic(Q: QuadraticForm) -> bool:
    return anisotropic_kernel(Q).dim < Q.dim


def is_anisotropic(Q: QuadraticForm) -> bool:
    return not is_isotropic(Q)


def is_hyperbolic(Q: QuadraticForm) -> bool:
    return anisotropic_kernel(Q).dim == 0


def witt_index(Q: QuadraticForm) -> int:
    return (Q.dim - anisotropic_kernel(Q).dim) // 2


def is_isometric(Q1: QuadraticForm, Q2: QuadraticForm) -> bool:
    if Q1.field is not Q2.field:
        raise TypeError("forms over different fields")
    return Q1.dim == Q2.dim and anisotropic_kernel(Q1).entries == anisotropic_kernel(Q2).entries


def isotropic_vector(Q: QuadraticForm):
    """Brute-force nonzero isotropic vector over a finite field, or None."""
    F = Q.field
    if F.height != 0:
        raise PreconditionError("witness vectors are only produced over finite fields")
    coeffs = Q.values()
    for vec in itertools.product(range(F.q), repeat=Q.dim):
        if not any(vec):
            continue
        acc = 0
        for a, x in zip(coeffs, vec):
            acc = F.add(acc, F.mul(a, F.mul(x, x)))
        if acc == 0:
            return vec
    return None


# -- value groups -------------------------------------------------------------

def represented_classes(Q: QuadraticForm) -> list[int]:
    """Classes c with c in D(Q), i.e. Q + <-c> isotropic."""
    if Q.dim < 1:
        raise PreconditionError("the zero form represents nothing")
    m1 = minus_one_class(Q.field)
    return [c for c in all_classes(Q.field) if is_isotropic(Q + QuadraticForm(Q.field, (c ^ m1,)))]


def spinor_norm_group(Q: QuadraticForm) -> Subgroup:
    if Q.dim < 2:
        raise PreconditionError("spinor norms need dim >= 2")
    D = represented_classes(Q)
    return Subgroup(n_class_bits(Q.field), [d ^ D[0] for d in D])


def similarity_group(Q: QuadraticForm) -> Subgroup:
    return Subgroup(n_class_bits(Q.field), [c for c in all_classes(Q.field) if is_isometric(Q.scale(c), Q)])


def base_change(Q: QuadraticForm, ext) -> QuadraticForm:
    """Q over the extension field; ``ext=None`` marks the split algebra."""
    if ext is None:
        return Q
    if ext.K is not Q.field:
        raise TypeError(f"extension of {ext.K!r} applied to a form over {Q.field!r}")
    return QuadraticForm(ext.L, tuple(ext.res_class(c) for c in Q.entries))


def hyp2_subgroup(Q: QuadraticForm) -> Subgroup:
    """Span of norm groups of quadratic extensions that make Q hyperbolic."""
    if Q.dim % 2:
        raise PreconditionError("Hyp is only considered for even-dimensional forms")
    K = Q.field
    group = Subgroup.trivial(n_class_bits(K))
    for d in all_classes(K):
        if d and is_hyperbolic(base_change(Q, quad_ext(K, d))):
            group = group.join(norm_group(K, d))
    return group


def splitting_classes(Q: QuadraticForm) -> list[int]:
    """Nontrivial d such that Q becomes hyperbolic over K(sqrt d)."""
    K = Q.field
    return [d for d in all_classes(K) if d and is_hyperbolic(base_change(Q, quad_ext(K, d)))]


# -- lambda-splitting ---------------------------------------------------------

@dataclass(frozen=True)
class LambdaSplitting:
    f: QuadraticForm
    g: QuadraticForm


def witt_complement(Q: QuadraticForm, f: QuadraticForm) -> QuadraticForm:
    """g with f + g isometric to Q, padded with hyperbolic planes."""
    kernel = anisotropic_kernel(Q + (-f))
    pad = Q.dim - f.dim - kernel.dim
    if pad < 0 or pad % 2:
        raise ValueError("f is not a subform of Q")
    return kernel + hyperbolic(Q.field, pad // 2)


def find_lambda_splitting(Q: QuadraticForm, lam: int, ext) -> LambdaSplitting:
    """Binary f and complement g, both with lambda as a similarity factor
    (f over K, g over L), with f + g isometric to Q."""
    K = Q.field
    if K.height == 0:
        raise PreconditionError("lambda-splitting needs a Laurent field")
    top = 1 << K.height
    if lam == 0:
        raise PreconditionError("lambda must be a nonsquare class")
    if lam & top:
        raise PreconditionError("lambda must be a unit class")
    if ext.K is not K:
        raise PreconditionError("extension is not over the form's field")
    lam_L = ext.res_class(lam)
    QL = base_change(Q, ext)
    if not is_isometric(QL.scale(lam_L), QL):
        raise PreconditionError("lambda is not a similarity factor of Q over L")
    q, p = springer_decompose(Q)
    if q.dim == p.dim:
        raise PreconditionError("needs dim q != dim p")
    if Q.dim < 2:
        raise PreconditionError("needs dim >= 2")
    # a<1, lambda> first: the shape produced by solving q(x) = lambda q(y)
    scaled = [tuple(sorted((a, a ^ lam))) for a in all_classes(K)]
    rest = [pair for pair in itertools.combinations_with_replacement(all_classes(K), 2) if pair not in scaled]
    for a, b in scaled + rest:
        f = QuadraticForm(K, (a, b))
        if witt_index(Q + (-f)) < 2:
            continue
        if not is_isometric(f.scale(lam), f):
            continue
        g = witt_complement(Q, f)
        gL = base_change(g, ext)
        if not is_isometric(gL.scale(lam_L), gL):
            continue
        if not is_isometric(f + g, Q):
            raise AssertionError("complement construction violated f + g = Q")
        return LambdaSplitting(f, g)
    raise NotFound(f"no lambda-splitting of {Q} for lambda={lam}")
