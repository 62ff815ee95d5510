from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_isotropic_mod, brute_values_mod, class_value_mod, monomial_isotropic_vector, value_class_mod
from qnp.f2 import Subgroup
from qnp.fields import FiniteField, all_classes, minus_one_class, n_class_bits, norm_group, quad_ext, tower
from qnp.quadform import (
    NotFound,
    PreconditionError,
    QuadraticForm,
    anisotropic_kernel,
    base_change,
    find_lambda_splitting,
    form,
    hyp2_subgroup,
    hyperbolic,
    is_anisotropic,
    is_hyperbolic,
    is_isometric,
    is_isotropic,
    isotropic_vector,
    represented_classes,
    similarity_group,
    spinor_norm_group,
    splitting_classes,
    springer_decompose,
    witt_class,
    witt_complement,
    witt_index,
)

F3, F5 = FiniteField(3), FiniteField(5)
K3, K5 = tower(3), tower(5)
T = 0b10  # class of t over F_p((t))
U = 0b01


def forms_over(field, max_dim):
    for n in range(1, max_dim + 1):
        for entries in itertools.combinations_with_replacement(all_classes(field), n):
            yield QuadraticForm(field, entries)


# -- basic structure ------------------------------------------------------------

def test_entries_are_validated():
    with pytest.raises(ValueError):
        form(K3, [4])
    with pytest.raises(TypeError):
        form(K3, [0]) + form(K5, [0])


def test_det_and_signed_disc():
    Q = form(K3, [0, 0, T, T])
    assert Q.det() == 0 and Q.disc() == 0
    assert hyperbolic(K3).disc() == 0
    assert form(F3, [0, 0]).disc() == 1  # -1 is the nonsquare mod 3
    assert str(form(K3, [0, U, T, U | T])) == "<1, u, t, u*t>"


def test_springer_examples():
    q1, q2 = springer_decompose(form(K3, [0, 0, T, T]))
    assert q1.entries == (0, 0) and q2.entries == (0, 0) and q1.field is F3
    m1 = minus_one_class(K3)
    q1, q2 = springer_decompose(form(K3, [0, m1]))
    assert q1.entries == (0, m1) and q2.dim == 0
    K9 = tower(9)
    q1, q2 = springer_decompose(form(K9, [U | T]))
    assert q1.dim == 0 and q2.entries == (U,)
    with pytest.raises(PreconditionError):
        springer_decompose(form(F3, [0]))


# -- isotropy ------------------------------------------------------------------

def test_isotropy_examples():
    assert is_isotropic(form(F3, [0, 0, 0]))
    assert brute_isotropic_mod(3, [1, 1, 1])
    assert is_anisotropic(form(K3, [0, 0, T, T]))
    assert not brute_isotropic_mod(3, [1, 1])
    for K in (F3, F5, K3, K5, tower(3, ("s", "t"))):
        assert is_hyperbolic(hyperbolic(K))


@pytest.mark.parametrize("p", [3, 5])
def test_finite_isotropy_matches_brute_force(p):
    F = FiniteField(p)
    for Q in forms_over(F, 4):
        coeffs = [class_value_mod(p, c) for c in Q.entries]
        assert is_isotropic(Q) == brute_isotropic_mod(p, coeffs), Q
        vec = isotropic_vector(Q)
        assert (vec is not None) == is_isotropic(Q)


@pytest.mark.parametrize("p", [3, 5])
def test_laurent_isotropy_matches_residue_brute_force(p):
    # isotropic iff one residue form is isotropic over F_p (exact, with the
    # base decided by brute force rather than invariants)
    K = tower(p)
    for Q in forms_over(K, 4):
        q1 = [class_value_mod(p, c) for c in Q.entries if not c & T]
        q2 = [class_value_mod(p, c) for c in Q.entries if c & T]
        expected = any(len(r) > 1 and brute_isotropic_mod(p, r) for r in (q1, q2))
        assert is_isotropic(Q) == expected, Q


@pytest.mark.parametrize("K", [K3, K5], ids=repr)
def test_found_isotropic_vectors_imply_isotropy(K):
    rng = random.Random(3)
    classes = list(all_classes(K))
    found = 0
    for _ in range(60):
        entries = [rng.choice(classes) for _ in range(rng.randint(2, 4))]
        if monomial_isotropic_vector(K, entries, bound=1) is not None:
            found += 1
            assert is_isotropic(form(K, entries))
    assert found > 0


def test_isotropic_vector_only_over_finite_fields():
    with pytest.raises(PreconditionError):
        isotropic_vector(form(K3, [0, 0]))
    vec = isotropic_vector(form(F5, [0, 0]))
    assert (vec[0] ** 2 + vec[1] ** 2) % 5 == 0 and any(vec)


def test_anisotropic_dimension_bounds():
    # u-invariant 2 for F_q, 4 for F_q((t)), 8 at height two
    for field, bound in [(F3, 2), (F5, 2), (K3, 4), (K5, 4)]:
        assert max(anisotropic_kernel(Q).dim for Q in forms_over(field, bound + 1)) == bound


# -- Witt classes ---------------------------------------------------------------

def random_form(field, rng, max_dim=5):
    classes = list(all_classes(field))
    return form(field, [rng.choice(classes) for _ in range(rng.randint(1, max_dim))])


FIELDS = [F3, F5, K3, K5, tower(3, ("s", "t"))]


@pytest.mark.parametrize("field", FIELDS, ids=repr)
@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_witt_additivity(field, seed):
    rng = random.Random(seed)
    Q1, Q2 = random_form(field, rng), random_form(field, rng)
    assert witt_class(Q1 + Q2) == witt_class(Q1) + witt_class(Q2)
    assert (witt_class(Q1) + -witt_class(Q1)).is_zero()


@pytest.mark.parametrize("field", FIELDS, ids=repr)
@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_witt_cancellation(field, seed):
    rng = random.Random(seed)
    Q, R = random_form(field, rng), random_form(field, rng)
    Q2 = form(field, rng.sample(Q.entries, Q.dim)) if rng.random() < 0.5 else random_form(field, rng)
    Q2 = form(field, list(Q2.entries)[: Q.dim]) if Q2.dim > Q.dim else Q2
    assert is_isometric(Q + R, Q2 + R) == is_isometric(Q, Q2)


def test_witt_tree_and_residues():
    w = witt_class(form(K3, [0, 0, T, T]))
    assert w.tree() == ((0, 0), (0, 0))
    w1, w2 = w.residues()
    assert w1 == witt_class(form(F3, [0, 0]))
    assert witt_class(hyperbolic(K3, 3)).is_zero()
    assert witt_index(form(K3, [0, minus_one_class(K3), T])) == 1


def test_kernel_is_anisotropic_and_isometric_up_to_planes():
    for Q in forms_over(K3, 4):
        k = anisotropic_kernel(Q)
        assert is_anisotropic(k) or k.dim == 0
        assert is_isometric(Q, k + hyperbolic(K3, witt_index(Q)))


# -- value groups -----------------------------------------------------------------

def test_represented_classes_examples():
    vals = brute_values_mod(3, [1, 1])
    assert vals == {1, 2}
    assert represented_classes(form(F3, [0, 0])) == sorted({value_class_mod(3, v) for v in vals})
    assert represented_classes(hyperbolic(K3)) == list(all_classes(K3))
    assert represented_classes(form(K3, [0])) == [0]
    with pytest.raises(PreconditionError):
        represented_classes(form(K3, []))


@pytest.mark.parametrize("p", [3, 5])
def test_represented_classes_match_brute_values(p):
    F = FiniteField(p)
    for Q in forms_over(F, 3):
        vals = brute_values_mod(p, [class_value_mod(p, c) for c in Q.entries])
        assert represented_classes(Q) == sorted({value_class_mod(p, v) for v in vals})


def test_monomial_values_are_represented():
    # every class hit by a monomial vector lies in D(Q)
    Q = form(K3, [0, 0, T, T])
    D = represented_classes(Q)
    assert D == [0, 1, 2, 3]


def test_spinor_norm_examples():
    assert spinor_norm_group(form(F3, [0, 0])).is_full()
    assert spinor_norm_group(form(K3, [0, 0, T, T])).is_full()
    with pytest.raises(PreconditionError):
        spinor_norm_group(form(K3, [0]))


@pytest.mark.parametrize("K", [K3, K5], ids=repr)
def test_isotropic_forms_have_full_spinor_norms(K):
    for Q in forms_over(K, 4):
        if Q.dim >= 2 and is_isotropic(Q):
            assert spinor_norm_group(Q).is_full()


def test_similarity_examples():
    assert similarity_group(form(K3, [0, 0, T, T])).is_full()
    assert similarity_group(hyperbolic(K3, 2)).is_full()
    for Q in forms_over(K5, 3):
        assert 0 in similarity_group(Q)
    # a single line only has squares as similarity factors
    assert similarity_group(form(K3, [U])).elements() == [0]


def test_similarity_group_is_a_group_of_isometric_scalings():
    for Q in forms_over(K3, 3):
        G = similarity_group(Q)
        for c in all_classes(K3):
            assert (c in G) == is_isometric(Q.scale(c), Q)


# -- base change, splitting fields ----------------------------------------------------

def test_base_change_examples():
    E = quad_ext(F3, 1)
    assert is_hyperbolic(base_change(form(F3, [0, 0]), E))
    E = quad_ext(K3, T)
    assert base_change(form(K3, [T]), E).entries == (0,)
    E = quad_ext(K3, T | U)  # K(sqrt(-t))
    assert is_hyperbolic(base_change(form(K3, [0, 0, T, T]), E))
    assert base_change(form(K3, [U]), None) == form(K3, [U])
    with pytest.raises(TypeError):
        base_change(form(K5, [0]), E)


def test_hyp2_examples():
    Q = form(K3, [0, 0, T, T])
    assert T | U in splitting_classes(Q)
    assert norm_group(K3, T | U) <= hyp2_subgroup(Q)
    assert hyp2_subgroup(hyperbolic(K3, 2)).is_full()
    # <1, t> stays anisotropic over K(sqrt u) and K(sqrt ut); only K(sqrt(-t)) splits it
    Q = form(K5, [0, U])
    assert splitting_classes(Q) == [U ^ minus_one_class(K5)] or not splitting_classes(Q)
    with pytest.raises(PreconditionError):
        hyp2_subgroup(form(K3, [0]))


def test_every_quadratic_extension_splits_the_anisotropic_quaternary_form():
    Q = form(K3, [0, 0, T, T])
    assert is_anisotropic(Q)
    assert splitting_classes(Q) == [1, 2, 3]
    assert hyp2_subgroup(Q).is_full()


def test_hyp2_trivial_without_splitting_field():
    K = tower(3, ("s", "t"))
    Q = form(K, [0, 0, 0b010, 0b100])  # <1, 1, s, t>
    # a splitting field must kill the discriminant st, leaving one candidate
    assert Q.disc() == 0b110
    assert not is_hyperbolic(base_change(Q, quad_ext(K, 0b110)))
    assert splitting_classes(Q) == []
    assert hyp2_subgroup(Q) == Subgroup.trivial(n_class_bits(K))


# -- lambda splitting -----------------------------------------------------------------

def _verify_splitting(Q, lam, ext, res):
    f, g = res.f, res.g
    assert f.dim == 2 and g.dim == Q.dim - 2
    assert is_isometric(f + g, Q)
    assert is_isometric(f.scale(lam), f)
    gL = base_change(g, ext)
    assert is_isometric(gL.scale(ext.res_class(lam)), gL)


def test_lambda_splitting_binary_form():
    Q = form(K3, [0, 0])
    ext = quad_ext(K3, T)
    res = find_lambda_splitting(Q, U, ext)
    _verify_splitting(Q, U, ext, res)
    assert is_isometric(res.f, Q) and res.g.dim == 0


def test_lambda_splitting_six_dimensional():
    Q = form(K3, [0, 0, 0, 0, T, T])
    ext = quad_ext(K3, U)
    res = find_lambda_splitting(Q, U, ext)
    _verify_splitting(Q, U, ext, res)
    assert res.f.disc() == U ^ minus_one_class(K3)  # f = a<1, lambda>


def test_lambda_splitting_preconditions():
    Q = form(K3, [0, 0, 0, 0, T, T])
    ext = quad_ext(K3, U)
    with pytest.raises(PreconditionError):
        find_lambda_splitting(Q, 0, ext)
    with pytest.raises(PreconditionError):
        find_lambda_splitting(Q, T, ext)
    with pytest.raises(PreconditionError):
        find_lambda_splitting(form(K3, [0, 0, T, T]), U, quad_ext(K3, T))
    with pytest.raises(PreconditionError):
        find_lambda_splitting(form(F3, [0, 0]), U, quad_ext(F3, 1))


def test_witt_complement():
    Q = form(K3, [0, 0, 0, 0, T, T])
    g = witt_complement(Q, form(K3, [0, 0]))
    assert g.dim == 4 and is_isometric(form(K3, [0, 0]) + g, Q)
    with pytest.raises(ValueError):
        witt_complement(form(K3, [0, 0]), form(K3, [0, T]))


def test_not_found_is_a_lookup_error():
    assert issubclass(NotFound, LookupError)


def test_lambda_splitting_always_found_over_ramified_height_two_extensions():
    from qnp.harness import grid_field, grid_forms

    K = grid_field(3, 2)
    top = 1 << K.height
    found = 0
    for Q in grid_forms(K, (2, 4)):
        for d in (c for c in all_classes(K) if c & top):
            ext = quad_ext(K, d)
            for lam in range(1, top):
                try:
                    res = find_lambda_splitting(Q, lam, ext)
                except PreconditionError:
                    continue
                _verify_splitting(Q, lam, ext, res)
                found += 1
    assert found > 0
