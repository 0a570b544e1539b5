"""Test curve classification, trihedra, helices and reconstruction."""

import numpy as np
import pytest

from minkgeo.core.errors import PreconditionError
from minkgeo.core.jets import cos, sin, vector
from minkgeo.core.lorentz import EUCLIDEAN3, LORENTZ3, CausalClass, inner
from minkgeo.core.transforms import elliptic_model, hyperbolic_model
from minkgeo.curves import (
    CurveKind,
    ReconstructionKind,
    ReconstructionSpec,
    ReparamMode,
    StandardCurve,
    canonical_frame,
    cartan_apparatus,
    classify_curve,
    frenet_apparatus,
    helix_classify,
    planarity_residual,
    reconstruct_curve,
    reparametrize,
    semi_lightlike_plane,
    standard_curve,
)
from minkgeo.curves.base import ClosedFormCurve
from minkgeo.curves.reconstruct import pointwise_deviation
from minkgeo.curves.reparam import arc_photon_shift


@pytest.mark.parametrize("r", [0.25, 1.0, 4.0])
def test_gamma2_pseudo_torsion(r):
    """Test that the elliptic lightlike helix has pseudo-torsion -1/(2r)."""
    curve = standard_curve("gamma2", r=r)
    for t in (-1.0, 0.0, 0.7):
        data = cartan_apparatus(curve, t)
        assert data.eps == 0
        assert data.positive
        assert abs(data.pseudo_torsion + 1.0 / (2.0 * r)) < 1e-10
        assert data.residual < 1e-9


def test_gamma1_pseudo_torsion_is_positive():
    """Test that the hyperbolic lightlike helix has pseudo-torsion 1/(2r)."""
    data = cartan_apparatus(standard_curve("gamma1", r=2.0), 0.3)
    assert data.pseudo_torsion == pytest.approx(0.25, abs=1e-10)


def test_semi_lightlike_cosh_pseudo_torsion():
    """Test c(s) = tanh(s) on (s, cosh s, cosh s)."""
    curve = standard_curve("semi-lightlike-cosh")
    for s in (-1.5, 0.0, 0.4, 2.0):
        data = cartan_apparatus(curve, s)
        assert data.eps == 1
        assert not data.flipped
        assert abs(data.pseudo_torsion - np.tanh(s)) < 1e-10


def test_classify_curve_kinds():
    """Test admissible, lightlike, semi-lightlike and non-biregular curves."""
    assert classify_curve(standard_curve("beta2"), interval=(-1.0, 1.0)).kind is CurveKind.ADMISSIBLE
    lightlike = classify_curve(standard_curve("gamma2"), interval=(-1.0, 1.0))
    assert lightlike.kind is CurveKind.LIGHTLIKE
    assert lightlike.constant_class is CausalClass.LIGHTLIKE
    semi = classify_curve(standard_curve("semi-lightlike-cosh"), interval=(-1.0, 1.0))
    assert semi.kind is CurveKind.SEMI_LIGHTLIKE
    assert semi.constant_class is CausalClass.SPACELIKE
    line = classify_curve(standard_curve("time-line"), interval=(-1.0, 1.0))
    assert not line.biregular
    assert line.kind is None
    with pytest.raises(PreconditionError):
        classify_curve(standard_curve("gamma2"), samples=1)


def test_horocycle_is_semi_lightlike_on_hyperbolic_plane():
    """Test that the horocycle lies on H^2 with a lightlike osculating plane."""
    curve = standard_curve("horocycle", c=-1.0)
    points = curve.sample(np.linspace(-2.0, 2.0, 9))
    assert np.allclose(inner(points, points, LORENTZ3), -1.0)
    assert classify_curve(curve, interval=(-1.0, 1.0)).kind is CurveKind.SEMI_LIGHTLIKE
    assert cartan_apparatus(curve, 0.5).pseudo_torsion == pytest.approx(0.0, abs=1e-12)
    report = helix_classify(curve)
    assert report.is_helix
    assert report.family_label == "parabolic"


def test_frenet_circle_and_beta2():
    """Test curvature and torsion of a Euclidean circle and a spacelike helix."""
    circle = frenet_apparatus(standard_curve("circle"), 0.3)
    assert circle.kappa == pytest.approx(1.0)
    assert circle.tau == pytest.approx(0.0, abs=1e-12)
    assert circle.det == pytest.approx(1.0)

    helix = frenet_apparatus(standard_curve("beta2", a=2.0, b=1.0), 0.5)
    assert helix.eps == 1 and helix.eta == 1
    assert helix.kappa == pytest.approx(2.0 / 3.0)
    assert abs(helix.tau) == pytest.approx(1.0 / 3.0)
    assert helix.residual < 1e-9


def test_frenet_rejects_non_unit_speed():
    """Test that a radius-2 circle is rejected until reparametrized."""
    circle = standard_curve("circle", r=2.0)
    with pytest.raises(PreconditionError, match="unit-speed"):
        frenet_apparatus(circle, 0.0)
    unit = reparametrize(circle, ReparamMode.UNIT_SPEED)
    assert frenet_apparatus(unit, 0.5).kappa == pytest.approx(0.5, abs=1e-6)


def test_helix_classify_lightlike_helix():
    """Test the standard model and axis of gamma2."""
    report = helix_classify(standard_curve("gamma2", r=1.0))
    assert report.is_helix
    assert report.kind is CurveKind.LIGHTLIKE
    assert report.axis_class is CausalClass.TIMELIKE
    assert report.family_label == "elliptic"
    assert report.standard is StandardCurve.GAMMA2
    assert report.standard_params["r"] == pytest.approx(1.0)


def test_helix_classify_spacelike_helix():
    """Test that beta2 is recognized as its own standard model."""
    report = helix_classify(standard_curve("beta2", a=2.0, b=1.0))
    assert report.is_helix
    assert report.standard is StandardCurve.BETA2
    assert report.standard_params["a"] == pytest.approx(2.0, abs=1e-6)
    assert abs(report.standard_params["b"]) == pytest.approx(1.0, abs=1e-6)


def test_reconstruct_unit_circle():
    """Test that (kappa, tau) = (1, 0) in R^3 integrates to the unit circle."""
    spec = ReconstructionSpec(
        kind=ReconstructionKind.ADMISSIBLE,
        initial_point=np.zeros(3),
        initial_frame=canonical_frame(ReconstructionKind.ADMISSIBLE),
        param_range=(0.0, 2 * np.pi),
        step=1e-3,
        kappa=1.0,
        tau=0.0,
        ambient=EUCLIDEAN3,
    )
    result = reconstruct_curve(spec)
    radii = np.linalg.norm(result.points - np.array([0.0, 1.0, 0.0]), axis=1)
    assert np.max(np.abs(radii - 1.0)) < 1e-9
    assert np.max(np.abs(result.points[:, 2])) < 1e-12
    assert result.drift < 1e-9


def test_reconstruct_gamma2_from_its_frame():
    """Test that c = -1/2 with gamma2's initial frame reproduces gamma2."""
    curve = standard_curve("gamma2", r=1.0)
    data = cartan_apparatus(curve, 0.0)
    spec = ReconstructionSpec(
        kind=ReconstructionKind.LIGHTLIKE,
        initial_point=curve.sample(np.array([0.0]))[0],
        initial_frame=np.vstack([data.T, data.N, data.B]),
        param_range=(0.0, 10.0),
        step=1e-3,
        ctorsion=-0.5,
    )
    result = reconstruct_curve(spec)
    assert pointwise_deviation(result.points, curve.sample(result.params)) < 1e-5
    assert result.drift < 1e-6
    assert (result.eps, result.eta) == (0, 1)


def test_reconstruction_is_poincare_equivariant():
    """Test that frames related by a proper orthochronous map give congruent curves."""
    curve = standard_curve("gamma2", r=1.0)
    data = cartan_apparatus(curve, 0.0)
    frame = np.vstack([data.T, data.N, data.B])
    point = curve.sample(np.array([0.0]))[0]
    L = hyperbolic_model(0.7) @ elliptic_model(0.4)
    shift = np.array([1.0, -2.0, 3.0])
    runs = []
    for p, F in [(point, frame), (L @ point + shift, frame @ L.T)]:
        spec = ReconstructionSpec(
            kind=ReconstructionKind.LIGHTLIKE,
            initial_point=p,
            initial_frame=F,
            param_range=(0.0, 5.0),
            step=1e-3,
            ctorsion=-0.5,
        )
        runs.append(reconstruct_curve(spec))
    mapped = runs[0].points @ L.T + shift
    assert pointwise_deviation(runs[1].points, mapped) < 1e-8


def test_reconstruct_rejects_bad_input():
    """Test frame, step and curvature preconditions."""
    base = dict(
        kind=ReconstructionKind.LIGHTLIKE,
        initial_point=np.zeros(3),
        param_range=(0.0, 1.0),
        step=1e-2,
    )
    with pytest.raises(PreconditionError):
        reconstruct_curve(ReconstructionSpec(initial_frame=np.eye(3), **base))
    with pytest.raises(PreconditionError):
        reconstruct_curve(
            ReconstructionSpec(
                initial_frame=canonical_frame(ReconstructionKind.LIGHTLIKE),
                **{**base, "step": -1.0},
            )
        )
    with pytest.raises(PreconditionError):
        reconstruct_curve(
            ReconstructionSpec(
                kind=ReconstructionKind.ADMISSIBLE,
                initial_point=np.zeros(3),
                initial_frame=np.eye(3),
                param_range=(0.0, 1.0),
                step=1e-2,
                kappa=0.0,
                ambient=EUCLIDEAN3,
            )
        )


def test_arc_photon_reparametrization():
    """Test unit pseudo-norm of the second derivative and the constant parameter shift."""
    fast = ClosedFormCurve("gamma2-doubled", lambda t: vector(cos(2 * t), sin(2 * t), 2 * t))
    photon = reparametrize(fast, ReparamMode.ARC_PHOTON)
    for s in (0.3, 1.1):
        d = photon.derivatives(s, 2)
        assert abs(float(inner(d[2], d[2], LORENTZ3))) == pytest.approx(1.0, abs=1e-6)
        assert np.allclose(photon.position(s), standard_curve("gamma2", r=1.0).position(s), atol=1e-8)
    shifted = reparametrize(fast, ReparamMode.ARC_PHOTON, t0=0.5)
    slope, offset = arc_photon_shift(photon, shifted, np.linspace(-1.0, 1.0, 9))
    assert slope == pytest.approx(1.0, abs=1e-9)
    assert offset == pytest.approx(-1.0, abs=1e-8)
    with pytest.raises(PreconditionError):
        reparametrize(standard_curve("circle"), ReparamMode.ARC_PHOTON)


def test_standard_curve_errors():
    """Test unknown names and invalid parameters."""
    with pytest.raises(PreconditionError, match="Unknown curve"):
        standard_curve("spiral")
    with pytest.raises(PreconditionError):
        standard_curve("gamma2", r=0.0)
    with pytest.raises(PreconditionError):
        standard_curve("gamma2", radius=1.0)


def test_semi_lightlike_cosh_lies_in_a_lightlike_plane():
    """Test the constant normal lambda N with lambda = 1 / cosh s."""
    curve = standard_curve("semi-lightlike-cosh")
    ss = np.linspace(-1.0, 1.0, 9)
    report = semi_lightlike_plane(curve, 0.0, ss)
    assert np.allclose(report.lam, 1.0 / np.cosh(ss), atol=1e-8)
    assert report.variation < 1e-6
    assert report.offset < 1e-9
    assert inner(report.normal, report.normal, LORENTZ3) == pytest.approx(0.0, abs=1e-12)
    assert planarity_residual(curve.sample(ss)) < 1e-9
