"""Test surface curvature, B-scrolls, revolution realizations and Fermi charts."""

import numpy as np
import pytest

from minkgeo.core import jets
from minkgeo.core.errors import PreconditionError
from minkgeo.core.lorentz import EUCLIDEAN3, LORENTZ3
from minkgeo.curves import standard_curve
from minkgeo.surfaces import (
    REALIZATIONS,
    SampledFunctionSurface,
    StandardSurface,
    UmbilicLabel,
    b_scroll,
    constant_curvature_G,
    constant_curvature_profile,
    curvature_field,
    curvature_from_G,
    curvatures,
    fermi_chart,
    metric_from_surface,
    parameter_grid,
    revolution_ode_residual,
    standard_surface,
    umbilic_surface_check,
    verify_b_scroll,
)
from minkgeo.surfaces.forms import CSV_COLUMNS, Diagonalizable, curvature_summary
from minkgeo.surfaces.gallery import EXPECTED_CURVATURES, graph_curvature
from minkgeo.surfaces.intrinsic import (
    christoffel_geodesics,
    constant_curvature_residual,
    riemann_formula_patch,
)


@pytest.mark.parametrize(
    "kind",
    [
        StandardSurface.DE_SITTER,
        StandardSurface.HYPERBOLIC_PLANE,
        StandardSurface.SPHERE,
        StandardSurface.PLANE,
    ],
)
def test_gallery_curvatures(kind):
    """Test closed-form K and H of the quadrics over a 32x32 grid."""
    rows = curvature_field(standard_surface(kind.value), 32, 32)
    expected = EXPECTED_CURVATURES[kind]
    assert len(rows) == 32 * 32
    assert max(abs(r["K"] - expected["K"]) for r in rows) < 1e-8
    assert max(abs(r["H"] - expected["H"]) for r in rows) < 1e-8


@pytest.mark.slow
@pytest.mark.parametrize("kind", [StandardSurface.DE_SITTER, StandardSurface.HYPERBOLIC_PLANE])
def test_gallery_curvatures_full_grid(kind):
    """Test closed-form K and H of the pseudo-spheres over the full 64x64 grid."""
    rows = curvature_field(standard_surface(kind.value), 64, 64)
    expected = EXPECTED_CURVATURES[kind]
    assert len(rows) == 64 * 64
    assert max(abs(r["K"] - expected["K"]) for r in rows) < 1e-8
    assert max(abs(r["H"] - expected["H"]) for r in rows) < 1e-8


def test_anti_de_sitter_gaussian_curvature():
    """Test K = -1 on H^2_1 in R^3_2."""
    rows = curvature_field(standard_surface("anti-de-sitter"), 32, 32)
    assert max(abs(r["K"] + 1.0) for r in rows) < 1e-8


def test_curvature_rows_and_summary():
    """Test the record layout and the summary extremes."""
    rows = curvature_field(standard_surface("sphere"), 4, 3)
    assert set(rows[0]) == set(CSV_COLUMNS)
    assert [r["u"] for r in rows[:3]] == [rows[0]["u"]] * 3
    summary = curvature_summary(rows)
    assert summary["samples"] == 12
    assert summary["degenerate"] == 0
    assert summary["K_min"] == pytest.approx(1.0)


def test_graph_curvature_matches_formula():
    """Test the Minkowski graph of (u^2 + v^2)/4 against its closed form."""
    surface = standard_surface("graph")
    height = lambda u, v: (u * u + v * v) / 4.0  # noqa: E731
    assert curvatures(surface, 0.0, 0.0).K == pytest.approx(-0.25)
    for u, v in [(0.2, -0.1), (-0.3, 0.4)]:
        assert curvatures(surface, u, v).K == pytest.approx(graph_curvature(height, u, v))


def test_weingarten_map_is_self_adjoint():
    """Test <S x_u, x_v> = <x_u, S x_v> on several surfaces."""
    for name, (u, v) in [
        ("graph", (0.1, 0.2)),
        ("cylinder", (0.3, 0.5)),
        ("de-sitter", (0.4, 1.0)),
        ("anti-de-sitter", (0.2, -0.7)),
    ]:
        report = curvatures(standard_surface(name), u, v)
        assert report.asymmetry < 1e-9


def test_timelike_cylinder_principal_curvatures():
    """Test that the timelike cylinder has principal curvatures (0, 1) up to sign."""
    report = curvatures(standard_surface("cylinder"), 0.0, 0.3)
    assert report.K == pytest.approx(0.0, abs=1e-12)
    assert report.diagonalizable is Diagonalizable.YES
    assert sorted(abs(k) for k in report.principal) == pytest.approx([0.0, 1.0])


def test_lightlike_translation_is_critical():
    """Test H = 0 on the translation surface of two lightlike helices."""
    surface = standard_surface("lightlike-translation")
    for u, v in [(0.5, 0.7), (1.2, 2.0)]:
        report = curvatures(surface, u, v)
        assert report.H == pytest.approx(0.0, abs=1e-12)


def test_b_scroll_curvatures():
    """Test K = c^2 D^2 and H = c D on the B-scroll of gamma2."""
    scroll = b_scroll(standard_curve("gamma2", r=1.0), t_range=(-1.0, 1.0))
    result = verify_b_scroll(scroll, [-0.5, 0.0, 0.5], [-0.5, 0.25, 0.75])
    assert result.K_residual < 1e-6
    assert result.H_residual < 1e-6
    assert len(result.samples) == 9
    sample = result.samples[0]
    assert sample.K_expected == pytest.approx(0.25)
    assert result.to_dict()["samples"] == 9


def test_b_scroll_needs_lightlike_curve():
    """Test that non-lightlike base curves are rejected."""
    with pytest.raises(PreconditionError):
        b_scroll(standard_curve("beta2"))


@pytest.mark.parametrize("key", sorted(REALIZATIONS))
def test_realizations_have_constant_curvature(key):
    """Test each constant-curvature surface of revolution."""
    surface = standard_surface(f"realization:{key}")
    us, vs = parameter_grid(surface.domain, 3, 3, 0.1)
    for u in us:
        for v in vs:
            assert curvatures(surface, float(u), float(v)).K == pytest.approx(
                REALIZATIONS[key].K, abs=1e-6
            )


def test_constant_curvature_profile_ode():
    """Test the radius ODE and unit speed of a generated profile."""
    profile = constant_curvature_profile(-1.0, -1, "elliptic-z", LORENTZ3)
    a, b = profile.interval
    us = np.linspace(a + 0.05 * (b - a), b - 0.05 * (b - a), 7)
    out = revolution_ode_residual(profile.curve, -1.0, -1, profile.kind, us)
    assert out["ode_residual"] < 1e-10
    assert out["speed_residual"] < 1e-10


def test_fermi_chart_on_sphere():
    """Test that Fermi coordinates along the equator recover G = cos^2 u."""
    patch = metric_from_surface(standard_surface("sphere"))
    chart = fermi_chart(patch, (0.0, 0.0), (0.0, 1.0), width=0.5, length=1.0)
    expected = np.cos(chart.us)[:, None] ** 2
    assert np.max(np.abs(chart.G - expected)) < 1e-4
    assert chart.eps_gamma == 1
    assert chart.diagnostics["max_F"] < 1e-4
    assert chart.diagnostics["max_E_deviation"] < 1e-4


def test_fermi_chart_rejects_non_unit_direction():
    """Test the unit-speed precondition on the base geodesic."""
    patch = metric_from_surface(standard_surface("sphere"))
    with pytest.raises(PreconditionError):
        fermi_chart(patch, (0.0, 0.0), (0.0, 2.0))


def test_curvature_from_G():
    """Test K for du^2 + cos^2 u dv^2 and its Lorentzian counterparts."""
    cos2 = lambda u, v: jets.cos(u) * jets.cos(u) + 0.0 * v  # noqa: E731
    assert curvature_from_G(cos2, 0, 1, 0.3) == pytest.approx(1.0)
    metric = constant_curvature_G(-1.0, 1, 1)
    assert metric.label == "cos^2"
    assert curvature_from_G(metric.G, 1, 1, 0.2) == pytest.approx(-1.0)
    assert constant_curvature_residual(metric.G, 1, 1, -1.0, np.linspace(-0.5, 0.5, 5)) < 1e-12
    with pytest.raises(PreconditionError):
        curvature_from_G(cos2, 0, -1, 0.3)


@pytest.mark.parametrize(
    "name, label",
    [
        ("sphere", UmbilicLabel.SPHERE),
        ("de-sitter", UmbilicLabel.DE_SITTER),
        ("hyperbolic-plane", UmbilicLabel.HYPERBOLIC),
        ("plane", UmbilicLabel.PLANE),
    ],
)
def test_umbilic_surfaces(name, label):
    """Test identification of totally umbilic patches."""
    report = umbilic_surface_check(standard_surface(name))
    assert report.totally_umbilic
    assert report.label is label
    assert report.fit_residual < 1e-6
    if label is not UmbilicLabel.PLANE:
        assert report.radius == pytest.approx(1.0)


def test_translated_de_sitter_recovers_center_and_radius():
    """Test that the umbilic fit of S^2_1(c, 2) returns c and radius 2."""
    center = np.array([1.0, -2.0, 0.5])
    report = umbilic_surface_check(standard_surface("de-sitter", center=center, radius=2.0))
    assert report.totally_umbilic
    assert report.label is UmbilicLabel.DE_SITTER
    assert np.allclose(report.center, center, atol=1e-6)
    assert report.radius == pytest.approx(2.0, abs=1e-6)
    assert report.level == pytest.approx(4.0, abs=1e-6)


def test_cylinder_is_not_umbilic():
    """Test that the cylinder is rejected."""
    report = umbilic_surface_check(standard_surface("cylinder"))
    assert not report.totally_umbilic
    assert report.label is UmbilicLabel.NOT_UMBILIC


def test_black_box_sphere():
    """Test finite-difference curvature of a sampled sphere."""

    def fn(u, v):
        return np.array([np.cos(u) * np.cos(v), np.cos(u) * np.sin(v), np.sin(u)])

    surface = SampledFunctionSurface("sampled-sphere", fn, EUCLIDEAN3, ((-1.0, 1.0), (-3.0, 3.0)))
    assert abs(curvatures(surface, 0.3, 0.4).K - 1.0) < 1e-5


def test_parameter_grid_preconditions():
    """Test grid size and bounded-domain checks."""
    with pytest.raises(PreconditionError):
        parameter_grid(((0.0, 1.0), (0.0, 1.0)), 1, 4)
    with pytest.raises(PreconditionError):
        parameter_grid(((0.0, np.inf), (0.0, 1.0)), 4, 4)
    us, vs = parameter_grid(((0.0, 1.0), (0.0, 2.0)), 3, 5, 0.0)
    assert np.allclose(us, [0.0, 0.5, 1.0])
    assert len(vs) == 5


def test_sphere_geodesics():
    """Test that the equator is a geodesic and the speed is conserved."""
    patch = metric_from_surface(standard_surface("sphere"))
    equator = christoffel_geodesics(patch, (0.0, 0.0), (0.0, 1.0))
    assert np.max(np.abs(equator.points[:, 0])) < 1e-12
    assert equator.points[-1, 1] == pytest.approx(1.0)
    oblique = christoffel_geodesics(patch, (0.1, 0.0), (0.6, 0.8), step=0.01, steps=150)
    assert oblique.speeds[0] == pytest.approx(0.36 + 0.64 * np.cos(0.1) ** 2)
    assert oblique.drift < 1e-8


@pytest.mark.parametrize(
    "K, nu, eps_gamma",
    [(1.0, 0, 1), (-1.0, 0, 1), (1.0, 1, 1), (-1.0, 1, 1), (1.0, 1, -1), (-1.0, 1, -1)],
)
def test_constant_curvature_metrics(K, nu, eps_gamma):
    """Test that each constant-curvature G has the requested curvature."""
    metric = constant_curvature_G(K, nu, eps_gamma)
    assert abs(curvature_from_G(metric.G, nu, eps_gamma, 0.2) - K) < 1e-9
    assert metric.label.startswith("-") == (eps_gamma < 0)


def test_riemann_formula_on_the_sphere():
    """Test the polar expansion of du^2 + sin^2 u dv^2."""
    formula = riemann_formula_patch(lambda u, v: jets.sin(u) * jets.sin(u) + 0.0 * v)
    assert formula.origin_limit == pytest.approx(-1.0 / 3.0)
    assert formula.curvature_estimate == pytest.approx(1.0)
    assert formula.origin_curvature == pytest.approx(1.0, abs=1e-6)
    assert float(formula.evaluate(0.3, 0.0)) == pytest.approx(-1.0 / 3.0, abs=0.01)
    with pytest.raises(PreconditionError):
        formula.evaluate(0.0, 0.0)
    with pytest.raises(PreconditionError):
        riemann_formula_patch(lambda u, v: jets.cos(u) * jets.cos(u) + 0.0 * v)
