from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_value
from qnp.cohomology import (
    H1Context,
    H1Extension,
    MalformedClass,
    context_for,
    decompose_unramified,
    discriminant_algebra,
    discriminant_class,
    is_unit_level,
    residue_context,
    specialize,
    unit_level_classes,
)
from qnp.fields import FiniteField, all_classes, class_rep_value, minus_one_class, quad_ext, tower
from qnp.quadform import PreconditionError, form, hyperbolic
from qnp.serialize import h1_from_json, h1_to_json

K3, K5 = tower(3), tower(5)
U, T = 0b01, 0b10

CONTEXTS = [H1Context(K, d, parity) for K in (K3, K5) for d in all_classes(K) for parity in (0, 1)]
CTX_IDS = [repr(c) for c in CONTEXTS]


# -- discriminant algebra ----------------------------------------------------------

def test_discriminant_examples():
    A = discriminant_algebra(form(K3, [0, 0, T, T]))
    assert A.split
    Q = form(K3, [0, 0, 0, 0, T, T])
    assert discriminant_class(Q) == U
    A = discriminant_algebra(Q)
    assert not A.split and A.ext.kind == "unramified" and A.Z.const_field.q == 9
    assert discriminant_algebra(hyperbolic(K3)).split
    with pytest.raises(PreconditionError):
        discriminant_class(form(K3, [0, 0, 0]))


def test_context_parity_follows_half_dimension():
    assert context_for(form(K3, [0, 0, T, T])).parity == 0
    assert context_for(form(K3, [0, 0, 0, 0, T, T])).parity == 1
    assert H1Context(K3, U, 1) is H1Context(K3, U, 3)


# -- the maps i and j -------------------------------------------------------------

@pytest.mark.parametrize("ctx", CONTEXTS, ids=CTX_IDS)
def test_j_kills_image_of_i(ctx):
    for c in all_classes(ctx.X):
        assert ctx.map_j(ctx.map_i(c)) == 0
    assert ctx.map_j(ctx.one()) == 0


@pytest.mark.parametrize("ctx", CONTEXTS, ids=CTX_IDS)
def test_exactness_and_counts(ctx):
    elems = ctx.enumerate()
    assert ctx.enumeration_gaps() == []
    assert ctx.contains(elems, ctx.one())
    for x, y in itertools.combinations(elems, 2):
        assert not ctx.equal(x, y)
    image_i = ctx.image_i()
    kernel_j = [x for x in elems if ctx.map_j(x) == 0]
    assert len(kernel_j) == len(image_i)
    assert all(ctx.contains(image_i, x) for x in kernel_j)
    assert len(elems) == len(image_i) * len(ctx.image_j())
    assert ctx.image_j() == ctx.alg.norm_classes()


def test_enumeration_counts():
    ctx = context_for(form(K3, [0, 0, T, T]))
    assert len(ctx.enumerate()) == 16
    ctx = context_for(form(K3, [0, 0, 0, 0, T, T]))
    assert ctx.odd and ctx.d == U
    # [-d] = [-u] is trivial over F_3, so |im i| = 4 / 1 and |im j| = |N| = 2
    assert ctx.kernel_i() == [0]
    assert len(ctx.image_i()) == 4 and len(ctx.image_j()) == 2
    assert len(ctx.enumerate()) == 8


@pytest.mark.parametrize("ctx", CONTEXTS, ids=CTX_IDS)
def test_kernel_of_i(ctx):
    m1 = minus_one_class(ctx.X)
    if ctx.odd:
        expected = sorted({0, ctx.d ^ m1})
    else:
        expected = [0] if ctx.d == 0 else sorted({0, ctx.d})
    assert ctx.kernel_i() == expected


def test_kernel_witness_from_square_root_of_d():
    # w = sqrt d gives N(w) = -d and w^4 = d^2, so i([-d]) is trivial
    ctx = H1Context(K3, U, 1)
    A, X = ctx.alg, ctx.X
    w = A.gen()
    d = X.neg(A.norm(w))
    assert X.eq(A.norm(w), X.neg(d))
    x = ctx.element((X.neg(d), A.embed(X.mul(d, d))))
    assert ctx.equal(x, ctx.one())
    assert ctx.equal(x, ctx.element((A.norm(w), A.pow(w, 4))))


def test_i_injective_off_its_kernel():
    ctx = H1Context(K3, T, 1)  # [u] differs from [-d] = [u t]
    u = class_rep_value(K3, U)
    x = ctx.element((u, ctx.alg.embed(K3.mul(u, u))))
    assert not ctx.equal(x, ctx.one())


def test_malformed_representative_rejected():
    ctx = H1Context(K3, U, 1)
    with pytest.raises(MalformedClass):
        ctx.element((K3.one, ctx.alg.embed(K3.uniformizer())))  # N(t) = t^2 != 1


def _random_unit_multiplier(ctx, rng):
    A = ctx.alg
    if A.split:
        return (random_value(ctx.X, rng, terms=2, span=2), random_value(ctx.X, rng, terms=2, span=2))
    return random_value(A.Z, rng, terms=2, span=2)


ODD = [c for c in CONTEXTS if c.odd]


@pytest.mark.parametrize("ctx", ODD, ids=[repr(c) for c in ODD])
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_equality_ignores_trivial_classes(ctx, seed):
    rng = random.Random(seed)
    elems = ctx.enumerate()
    x = elems[rng.randrange(len(elems))]
    w = _random_unit_multiplier(ctx, rng)
    A, X = ctx.alg, ctx.X
    f, z = x.data
    y = ctx.element((X.mul(f, A.norm(w)), A.mul(z, A.pow(w, 4))))
    assert ctx.equal(x, y)
    assert ctx.equal(ctx.mul(x, ctx.inverse(x)), ctx.one())


# -- restriction and corestriction ----------------------------------------------------

EXT_CASES = [(ctx, d) for ctx in CONTEXTS for d in all_classes(ctx.X) if d]


@pytest.mark.parametrize("ctx,d", EXT_CASES, ids=[f"{c!r}-L{d}" for c, d in EXT_CASES])
def test_norm_of_restriction_is_square(ctx, d):
    h = H1Extension(ctx, quad_ext(ctx.X, d))
    for x in ctx.enumerate():
        assert ctx.equal(h.norm(h.restrict(x)), ctx.mul(x, x))


@pytest.mark.parametrize("ctx,d", EXT_CASES, ids=[f"{c!r}-L{d}" for c, d in EXT_CASES])
def test_norm_commutes_with_j(ctx, d):
    ext = quad_ext(ctx.X, d)
    h = H1Extension(ctx, ext)
    for y in h.ctxL.enumerate():
        assert ctx.map_j(h.norm(y)) == ext.norm_class(h.ctxL.map_j(y))


@pytest.mark.parametrize("ctx,d", EXT_CASES, ids=[f"{c!r}-L{d}" for c, d in EXT_CASES])
def test_norm_commutes_with_i(ctx, d):
    ext = quad_ext(ctx.X, d)
    h = H1Extension(ctx, ext)
    for c in all_classes(ext.L):
        assert ctx.equal(h.norm(h.ctxL.map_i(c)), ctx.map_i(ext.norm_class(c)))


def test_extension_cases():
    assert H1Extension(H1Context(K3, 0, 0), quad_ext(K3, U)).case == "split"
    assert H1Extension(H1Context(K3, U, 0), quad_ext(K3, U)).case == "same"
    assert H1Extension(H1Context(K3, U, 0), quad_ext(K3, T)).case == "field"
    with pytest.raises(TypeError):
        H1Extension(H1Context(K3, U, 0), quad_ext(K5, U))


def test_split_even_norm_is_componentwise():
    ctx = H1Context(K3, 0, 0)
    ext = quad_ext(K3, T)
    h = H1Extension(ctx, ext)
    nb = h.ctxL.alg.nbits
    for a, b in itertools.product(all_classes(ext.L), repeat=2):
        y = h.ctxL.element(a | (b << nb))
        assert h.norm(y).data == ext.norm_class(a) | (ext.norm_class(b) << ctx.alg.nbits)


# -- unit-level decomposition -------------------------------------------------------

def test_decompose_even_strips_uniformizer():
    ctx = H1Context(K3, U, 0)
    top = 1 << ctx.alg.Z.height
    u = ctx.element(0b01 | top)  # [z theta^3] up to squares
    dec = decompose_unramified(ctx, u)
    assert dec.unit_part.data == 0b01 and dec.epsilon % 2 == 1
    assert ctx.equal(u, ctx.mul(dec.unit_part, ctx.map_i(T)))


def test_decompose_odd_field_case():
    ctx = H1Context(K3, U, 1)
    theta = K3.uniformizer()
    u = ctx.map_i_value(theta)  # (theta, theta^2)
    dec = decompose_unramified(ctx, u)
    assert dec.epsilon == 1 and ctx.equal(dec.unit_part, ctx.one())


def test_decompose_odd_split_unit_case():
    ctx = H1Context(K3, 0, 1)
    x = ctx.section(U)
    assert is_unit_level(ctx, x)
    dec = decompose_unramified(ctx, x)
    assert dec.epsilon == 0 and ctx.equal(dec.unit_part, x)


def test_decompose_preconditions():
    with pytest.raises(PreconditionError):
        decompose_unramified(H1Context(K3, T, 0), H1Context(K3, T, 0).one())
    with pytest.raises(PreconditionError):
        ctx = H1Context(FiniteField(3), 0, 0)
        decompose_unramified(ctx, ctx.one())
    ctx = H1Context(K3, 0, 0)
    bad = ctx.element(T)  # j = N(t, 1) = t
    with pytest.raises(PreconditionError):
        decompose_unramified(ctx, bad)


@pytest.mark.parametrize("ctx", [c for c in CONTEXTS if not c.d & T], ids=repr)
def test_decomposition_recomposes(ctx):
    for x in ctx.enumerate():
        if ctx.map_j(x) & T:
            continue
        dec = decompose_unramified(ctx, x)
        assert is_unit_level(ctx, dec.unit_part)


# -- specialization ----------------------------------------------------------------------

@pytest.mark.parametrize("ctx", [c for c in CONTEXTS if not c.d & T], ids=repr)
def test_specialize_commutes_with_j(ctx):
    R = residue_context(ctx)
    assert specialize(ctx, ctx.one()) == R.one()
    for x in unit_level_classes(ctx):
        assert R.map_j(specialize(ctx, x)) == ctx.map_j(x) & ~T


def test_specialize_even_field_example():
    K9 = tower(9)
    ctx = H1Context(K9, U, 0)
    x = ctx.element(U)
    assert specialize(ctx, x).data == U
    assert residue_context(ctx).X is K9.base


def test_specialize_rejects_ramified_and_nonunit():
    with pytest.raises(PreconditionError):
        residue_context(H1Context(K3, T, 1))
    ctx = H1Context(K3, 0, 0)
    with pytest.raises(PreconditionError):
        specialize(ctx, ctx.element(T))


# -- subgroup H and serialization ------------------------------------------------------

def test_subgroup_h_examples():
    Q = form(K3, [0, 0, T, T])
    ctx = context_for(Q)
    assert len(ctx.subgroup_H(Q)) == 16
    Q = form(K3, [0, 0, T])
    Q = Q + form(K3, [minus_one_class(K3)])  # isotropic
    ctx = context_for(Q)
    assert len(ctx.subgroup_H(Q)) == len(ctx.enumerate())
    for c in all_classes(K3):
        assert ctx.contains(ctx.subgroup_H(Q), ctx.map_i(c))


@pytest.mark.parametrize("ctx", CONTEXTS, ids=CTX_IDS)
def test_h1_serialization_round_trip(ctx):
    for x in ctx.enumerate():
        y = h1_from_json(h1_to_json(x))
        assert y.ctx is ctx and ctx.equal(x, y)
