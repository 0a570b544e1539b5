"""Test the indefinite-metric linear algebra and the transformation classifier."""

import os

import numpy as np
import pytest

from minkgeo.core.errors import DegenerateChain, DependentInput, PreconditionError, SignatureMismatch
from minkgeo.core.lorentz import (
    EUCLIDEAN3,
    LORENTZ3,
    CausalClass,
    Signature,
    SubspaceType,
    causal_character,
    causal_relations,
    cross3,
    cross_product,
    fake_norm,
    gram_matrix,
    gram_schmidt_adapted,
    inner,
    lightlike_plane_orientation,
    metric_trace_det,
    null_completion,
    orthogonal_complement,
    orthonormal_basis,
    subspace_analysis,
    time_orientation,
)
from minkgeo.core.transforms import (
    Component,
    Conjugacy,
    alexandrov_zeeman_decomposition,
    axis_flip,
    classify_transform,
    elliptic_model,
    hyperbolic_model,
    hyperbolic_rotation,
    margulis_invariant,
    parabolic_model,
)

CASES = int(os.environ.get("MINKGEO_PROPERTY_CASES", "200"))


def _timelike(rng, sig=LORENTZ3, future=True):
    x = rng.normal(size=sig.n - 1)
    t = np.sqrt(x @ x) + rng.uniform(0.1, 2.0)
    return np.append(x, t if future else -t)


def _random_member(rng):
    L = np.eye(3)
    for _ in range(4):
        pick = rng.integers(3)
        if pick == 0:
            L = L @ hyperbolic_model(rng.uniform(-2, 2))
        elif pick == 1:
            L = L @ elliptic_model(rng.uniform(-np.pi, np.pi))
        else:
            L = L @ axis_flip(int(rng.integers(3)))
    return L


def test_causal_character_of_basis_vectors():
    """Test causal classes in L^3."""
    assert causal_character([1.0, 0.0, 0.0], LORENTZ3).causal_class is CausalClass.SPACELIKE
    assert causal_character([0.0, 0.0, 1.0], LORENTZ3).causal_class is CausalClass.TIMELIKE
    report = causal_character([1.0, 0.0, 1.0], LORENTZ3)
    assert report.causal_class is CausalClass.LIGHTLIKE
    assert report.indicator == 0
    assert fake_norm([3.0, 0.0, 5.0], LORENTZ3) == pytest.approx(4.0)


def test_causal_character_rejects_zero_and_wrong_length():
    """Test zero vectors and signature mismatches."""
    with pytest.raises(PreconditionError):
        causal_character([0.0, 0.0, 0.0], LORENTZ3)
    with pytest.raises(SignatureMismatch):
        inner([1.0, 0.0], [1.0, 0.0, 0.0], LORENTZ3)


def test_signature_parse():
    """Test parsing of n,nu strings."""
    assert Signature.parse("4,1") == Signature(4, 1)
    with pytest.raises(PreconditionError):
        Signature.parse("three")
    with pytest.raises(PreconditionError):
        Signature(2, 3)


def test_causal_relations():
    """Test chronological and causal precedence."""
    rel = causal_relations([0, 0, 0], [0, 0, 1])
    assert rel.chron and rel.causal
    assert rel.time_orientation == "future"
    assert rel.hyperbolic_angle == pytest.approx(0.0)

    light = causal_relations([0, 0, 0], [1, 0, 1])
    assert not light.chron and light.causal

    past = causal_relations([0, 0, 1], [0, 0, 0])
    assert not past.chron and not past.causal

    assert time_orientation([0.0, 0.0, -2.0], LORENTZ3) == "past"


def test_subspace_types():
    """Test classification of planes in L^3."""
    assert subspace_analysis([[1, 0, 0], [0, 1, 0]], LORENTZ3).causal_type is SubspaceType.SPACELIKE
    assert subspace_analysis([[1, 0, 0], [0, 0, 1]], LORENTZ3).causal_type is SubspaceType.TIMELIKE
    light = subspace_analysis([[1, 0, 0], [0, 1, 1]], LORENTZ3)
    assert light.causal_type is SubspaceType.LIGHTLIKE
    assert not light.non_degenerate
    with pytest.raises(DependentInput):
        subspace_analysis([[1, 0, 0], [2, 0, 0]], LORENTZ3)


def test_orthogonal_complement_of_lightlike_line_contains_it():
    """Test that a lightlike line lies in its own complement."""
    comp = orthogonal_complement([[1.0, 0.0, 1.0]], LORENTZ3)
    assert comp.shape == (2, 3)
    for row in comp:
        assert inner(row, [1.0, 0.0, 1.0], LORENTZ3) == pytest.approx(0.0, abs=1e-12)


def test_gram_schmidt_degenerate_chain():
    """Test that a lightlike first vector stops the adapted process."""
    with pytest.raises(DegenerateChain):
        gram_schmidt_adapted([[1, 0, 1], [0, 1, 0], [0, 0, 1]], LORENTZ3)


def test_cross_product_defining_property():
    """Test <x, v1 x v2> = det(x, v1, v2)."""
    rng = np.random.default_rng(1)
    for sig in (EUCLIDEAN3, LORENTZ3, Signature(3, 2)):
        a, b, x = rng.normal(size=(3, 3))
        c = cross_product([a, b], sig)
        assert inner(x, c, sig) == pytest.approx(np.linalg.det(np.vstack([x, a, b])), abs=1e-10)
        assert np.allclose(cross3(a, b, sig), c)


def test_null_completion():
    """Test the lightlike vector completing a lightlike-plane basis."""
    L = np.array([1.0, 0.0, 1.0]) / np.sqrt(2)
    U = np.array([0.0, 1.0, 0.0])
    B = null_completion(L, U, LORENTZ3)
    assert inner(B, B, LORENTZ3) == pytest.approx(0.0, abs=1e-12)
    assert inner(B, L, LORENTZ3) == pytest.approx(-1.0)
    assert inner(B, U, LORENTZ3) == pytest.approx(0.0, abs=1e-12)


def test_lightlike_plane_orientation_lambda():
    """Test v x w = lambda v for a lightlike plane basis."""
    v = np.array([0.0, 1.0, 1.0])
    w = np.array([1.0, 0.0, 0.0])
    report = lightlike_plane_orientation(v, w)
    assert np.allclose(cross3(v, w, LORENTZ3), report.lam * v)
    assert report.positive is not None


def test_metric_trace_det():
    """Test trace and determinant of the metric itself relative to a basis."""
    basis = orthonormal_basis(np.eye(3), LORENTZ3)
    trace, det = metric_trace_det(LORENTZ3.metric, basis, LORENTZ3)
    assert trace == pytest.approx(3.0)
    assert det == pytest.approx(1.0)


def test_classify_boost_of_plane():
    """Test the L^2 boost: member of the +up component with angle phi."""
    report = classify_transform(hyperbolic_rotation(0.7), Signature(2, 1))
    assert report.is_member
    assert report.component is Component.PLUS_UP
    assert report.angle == pytest.approx(0.7)
    assert report.conjugacy is Conjugacy.HYPERBOLIC


def test_classify_models_of_l3():
    """Test conjugacy classes of the three model matrices."""
    assert classify_transform(hyperbolic_model(0.5), LORENTZ3).conjugacy is Conjugacy.HYPERBOLIC
    elliptic = classify_transform(elliptic_model(0.3), LORENTZ3)
    assert elliptic.conjugacy is Conjugacy.ELLIPTIC
    assert elliptic.angle == pytest.approx(0.3)
    assert classify_transform(parabolic_model(0.4), LORENTZ3).conjugacy is Conjugacy.PARABOLIC


def test_classify_components_and_non_members():
    """Test component labels and rejection of non-members."""
    assert classify_transform(axis_flip(0), LORENTZ3).component is Component.MINUS_UP
    assert classify_transform(axis_flip(2), LORENTZ3).component is Component.MINUS_DOWN
    assert classify_transform(axis_flip(0) @ axis_flip(2), LORENTZ3).component is Component.PLUS_DOWN
    report = classify_transform(2.0 * np.eye(3), LORENTZ3)
    assert not report.is_member
    assert report.component is None
    with pytest.raises(PreconditionError):
        classify_transform(np.eye(2), LORENTZ3)


def test_margulis_invariant_of_pure_translation_along_axis():
    """Test the displacement along the fixed spacelike axis of a boost."""
    L = hyperbolic_model(1.0)
    assert abs(margulis_invariant(L, np.array([2.0, 0.0, 0.0]))) == pytest.approx(2.0)
    assert margulis_invariant(L, np.array([0.0, 1.0, 0.0])) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(PreconditionError):
        margulis_invariant(elliptic_model(0.2), np.zeros(3))


def test_alexandrov_zeeman_scale_recovered():
    """Test that a scaled boost splits into its scale and a +up member."""
    out = alexandrov_zeeman_decomposition(3.0 * hyperbolic_model(0.4))
    assert out.scale == pytest.approx(3.0)
    assert out.is_decomposable
    flipped = alexandrov_zeeman_decomposition(3.0 * axis_flip(2))
    assert not flipped.is_decomposable


def test_block_determinant_identity():
    """Test det of the spatial block equals the temporal entry times det."""
    rng = np.random.default_rng(7)
    for _ in range(CASES):
        L = _random_member(rng)
        report = classify_transform(L, LORENTZ3)
        assert report.is_member
        residual = report.det_spatial - report.det_temporal * report.det_total
        assert abs(residual) < 1e-9 * max(1.0, np.max(np.abs(L)) ** 2)


def test_backwards_cauchy_schwarz_and_triangle():
    """Test the reversed inequalities for future timelike vectors."""
    rng = np.random.default_rng(11)
    for _ in range(CASES):
        u, v = _timelike(rng), _timelike(rng)
        nu, nv = fake_norm(u, LORENTZ3), fake_norm(v, LORENTZ3)
        assert abs(inner(u, v, LORENTZ3)) >= nu * nv * (1 - 1e-12)
        assert fake_norm(u + v, LORENTZ3) >= (nu + nv) * (1 - 1e-12)


def test_lagrange_identity():
    """Test <u x v, u x v> = (-1)^nu (<u,u><v,v> - <u,v>^2)."""
    rng = np.random.default_rng(13)
    for sig in (EUCLIDEAN3, LORENTZ3, Signature(3, 2)):
        for _ in range(CASES):
            u, v = rng.normal(size=(2, 3))
            c = cross3(u, v, sig)
            lhs = inner(c, c, sig)
            rhs = (-1) ** sig.nu * (inner(u, u, sig) * inner(v, v, sig) - inner(u, v, sig) ** 2)
            assert lhs == pytest.approx(rhs, abs=1e-9 * (1 + abs(rhs)))


def test_lightlike_orthogonal_vectors_are_parallel():
    """Test that the complement of a lightlike line has no other lightlike direction."""
    rng = np.random.default_rng(17)
    for _ in range(CASES):
        a = rng.uniform(0, 2 * np.pi)
        L = np.array([np.cos(a), np.sin(a), 1.0]) * rng.uniform(0.5, 2.0)
        comp = orthogonal_complement([L], LORENTZ3)
        gram = (comp * LORENTZ3.weights) @ comp.T
        values, vectors = np.linalg.eigh(gram)
        assert values[0] == pytest.approx(0.0, abs=1e-10)
        assert values[1] > 1e-6
        w = vectors[:, 0] @ comp
        assert np.linalg.norm(np.cross(w, L)) <= 1e-8 * np.linalg.norm(w) * np.linalg.norm(L)


def test_sylvester_count():
    """Test that every orthonormal basis has exactly nu timelike vectors."""
    rng = np.random.default_rng(19)
    for sig in (Signature(3, 1), Signature(4, 2), Signature(4, 1)):
        for _ in range(max(10, CASES // 4)):
            basis = orthonormal_basis(rng.normal(size=(sig.n, sig.n)), sig)
            negatives = sum(1 for w in basis if inner(w, w, sig) < 0)
            assert negatives == sig.nu


def test_gram_matrix():
    """Test the Gram matrix of mixed-character vectors."""
    us = [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 1.0]]
    G = gram_matrix(us, us, LORENTZ3)
    assert np.allclose(G, [[1.0, 0.0, 1.0], [0.0, -1.0, -1.0], [1.0, -1.0, 0.0]])
    assert gram_matrix(us[:1], us, LORENTZ3).shape == (1, 3)
    with pytest.raises(SignatureMismatch):
        gram_matrix([[1.0, 0.0]], us, LORENTZ3)
