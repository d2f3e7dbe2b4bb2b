"""Sphere-plate gradients, thermal corrections, model bands and overlays."""
import numpy as np
import pytest

from cge.exceptions import DegenerateScenarioError, InputFileError
from cge.schemas import (
    BandSpec,
    Film,
    ModelBand,
    OscillatorSet,
    OverlayPoint,
    PlateStack,
    QuadratureConfig,
    SphereExperiment,
)
from cge.services.lifshitz_engine import evaluate_pressure
from cge.services.material_files import load_material
from cge.services.sphere_plate import (
    band_ordering_violations,
    band_variants,
    find_crossing,
    gradient_with_error,
    model_band,
    normalized_gradient,
    overlay_residuals,
    read_overlay,
    relative_error_line,
    relative_thermal_correction,
    sphere_scenario,
    thermal_correction,
)

OVERLAY = """\
# measured gradients
a_nm,a_err_nm,grad_Pa,grad_err_Pa
250,1,0.50,0.012
300,1,0.35,0.012
"""


@pytest.fixture
def coated_silica_experiment(silica, gold_drude, sheet):
    return SphereExperiment(plate=PlateStack(coating=sheet, substrate=silica), sphere=gold_drude)


class TestGradient:
    def test_gradient_is_minus_two_pi_pressure(self, coated_silica_experiment, loose_cfg):
        a = 300e-9
        pressure = evaluate_pressure(sphere_scenario(a, coated_silica_experiment), loose_cfg)
        gradient, error = gradient_with_error(a, coated_silica_experiment, loose_cfg)
        assert gradient == pytest.approx(-2 * np.pi * pressure.pressure)
        assert error == pytest.approx(2 * np.pi * pressure.estimated_error)
        assert gradient > 0

    def test_sphere_side_is_a_half_space(self, coated_silica_experiment):
        scenario = sphere_scenario(300e-9, coated_silica_experiment)
        assert scenario.side1 == coated_silica_experiment.plate
        assert scenario.side2.substrate == coated_silica_experiment.sphere
        assert scenario.side2.coating is None and scenario.side2.film is None

    def test_thermal_correction(self, coated_silica_experiment, loose_cfg):
        a = 300e-9
        hot = normalized_gradient(a, coated_silica_experiment, loose_cfg, "T")
        cold = normalized_gradient(a, coated_silica_experiment, loose_cfg, "T0")
        correction = thermal_correction(a, coated_silica_experiment, loose_cfg)
        assert correction == pytest.approx(hot - cold)
        assert correction > 0
        assert relative_thermal_correction(a, coated_silica_experiment, loose_cfg) == pytest.approx(correction / hot)
        assert 0 < correction / hot < 1

    def test_relative_error_line(self, coated_silica_experiment, loose_cfg):
        a = 300e-9
        gradient = normalized_gradient(a, coated_silica_experiment, loose_cfg)
        assert relative_error_line(a, coated_silica_experiment, loose_cfg) == pytest.approx(0.012 / gradient)

    def test_vanishing_gradient(self, loose_cfg):
        vacuum = OscillatorSet(eps_infinity=1.0, name="vacuum")
        exp = SphereExperiment(plate=PlateStack(substrate=vacuum), sphere=vacuum)
        with pytest.raises(DegenerateScenarioError):
            relative_thermal_correction(300e-9, exp, loose_cfg)
        with pytest.raises(DegenerateScenarioError):
            relative_error_line(300e-9, exp, loose_cfg)

    def test_large_separation_warns(self, ideal, loose_cfg, caplog):
        exp = SphereExperiment(radius=10e-6, plate=PlateStack(substrate=ideal), sphere=ideal)
        normalized_gradient(200e-9, exp, loose_cfg)
        assert any("PFA" in r.message for r in caplog.records)


class TestBand:
    def test_variant_box(self, coated_silica_experiment, silica, sheet):
        corners, central = band_variants(coated_silica_experiment, BandSpec())
        assert len(corners) == 4
        assert central.plate.coating.delta == 0.0
        assert {c.plate.coating.delta for c in corners} == {0.0, 0.1}

        bare = coated_silica_experiment.model_copy(update={"plate": PlateStack(substrate=silica)})
        assert len(band_variants(bare, BandSpec())[0]) == 2

        doped = SphereExperiment(
            plate=PlateStack(coating=sheet, film=Film(material=silica, thickness=300e-9),
                             substrate=load_material("silicon-doped")),
            sphere=load_material("gold"),
        )
        corners, central = band_variants(doped, BandSpec())
        assert len(corners) == 8
        assert {c.plate.substrate.carriers.omega_p for c in corners} == {0.25, 0.35}
        assert central.plate.substrate.carriers.omega_p == pytest.approx(0.30)
        assert central.sphere.extension.kind == "drude"

        corners, central = band_variants(doped, BandSpec(si_carrier_gamma=0.02))
        assert {c.plate.substrate.carriers.gamma for c in corners} == {0.02}
        assert central.plate.substrate.carriers.gamma == 0.02
        assert central.sphere.extension.gamma == 0.035

    def test_envelope_contains_central_curve(self, coated_silica_experiment, loose_cfg):
        grid = [300e-9, 500e-9]
        band = model_band(grid, coated_silica_experiment, BandSpec(), loose_cfg)
        assert band.variants == 5
        for low, mid, high in zip(band.lower, band.central, band.upper):
            assert low <= mid <= high
        width = (band.upper[0] - band.lower[0]) / band.central[0]
        assert 0 < width < 0.1

    def test_single_variant_has_zero_width(self, coated_silica_experiment, loose_cfg):
        spec = BandSpec(delta_max=0.0, metal_extrapolations=("drude",))
        band = model_band([300e-9], coated_silica_experiment, spec, loose_cfg)
        assert band.lower == band.upper == band.central

    def test_bad_band(self):
        with pytest.raises(ValueError):
            BandSpec(si_plasma_range=(0.35, 0.25))


class TestCrossing:
    def test_linear_curve(self):
        grid = [200e-9, 300e-9, 400e-9, 500e-9]
        values = [0.05, 0.03, 0.01, 0.005]
        assert find_crossing(grid, values, 0.012) == pytest.approx(390e-9)

    def test_sample_on_level(self):
        assert find_crossing([1.0, 2.0, 3.0], [3.0, 2.0, 1.0], 2.0) == 2.0

    def test_no_crossing(self):
        assert find_crossing([1.0, 2.0], [3.0, 2.5], 1.0) is None


class TestOverlay:
    def test_read(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text(OVERLAY)
        points = read_overlay(path)
        assert [p.a_nm for p in points] == [250.0, 300.0]
        assert points[0].separation == pytest.approx(250e-9)
        assert points[1].grad_err_pa == 0.012

    @pytest.mark.parametrize("text,message", [
        ("a_nm,a_err_nm,grad_Pa,grad_err_Pa\n250,1,x,0.01\n", "bad data row 1"),
        ("a_nm,a_err_nm,grad_Pa,grad_err_Pa\n250,1,0.5,0.01\n300,1,0.3\n", "bad data row 2"),
        ("a_nm,grad_Pa\n250,0.5\n", "missing columns a_err_nm, grad_err_Pa"),
        ("a_nm,a_err_nm,grad_Pa,grad_err_Pa\n", "no data rows"),
        ("a_nm,a_err_nm,grad_Pa,grad_err_Pa\n250,1,0.5,0\n", "bad data row 1"),
    ])
    def test_malformed(self, tmp_path, text, message):
        path = tmp_path / "bad.csv"
        path.write_text(text)
        with pytest.raises(InputFileError) as exc:
            read_overlay(path)
        assert message in exc.value.detail
        assert str(path) in exc.value.detail

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputFileError):
            read_overlay(tmp_path / "absent.csv")

    def test_distance_to_band(self):
        points = [
            OverlayPoint(a_nm=250, grad_pa=0.45, grad_err_pa=0.01),
            OverlayPoint(a_nm=300, grad_pa=0.30, grad_err_pa=0.02),
            OverlayPoint(a_nm=350, grad_pa=0.26, grad_err_pa=0.01),
        ]
        lower, upper = [0.455, 0.28, 0.20], [0.47, 0.32, 0.25]
        assert overlay_residuals(points, lower, upper) == pytest.approx([-0.5, 0.0, 1.0])

    def test_distance_ignores_central_curve(self):
        point = OverlayPoint(a_nm=300, grad_pa=0.30, grad_err_pa=0.01)
        assert overlay_residuals([point], [0.29], [0.40]) == [0.0]
        assert overlay_residuals([point], [0.30], [0.30]) == [0.0]

    def test_distance_needs_matching_lengths(self):
        points = [OverlayPoint(a_nm=250, grad_pa=0.5, grad_err_pa=0.01)]
        with pytest.raises(ValueError):
            overlay_residuals(points, [0.49, 0.3], [0.51, 0.4])


class TestBandOrdering:
    @staticmethod
    def band(lower, upper):
        return ModelBand(
            separations=(3e-7, 4e-7), lower=tuple(lower), upper=tuple(upper),
            central=tuple(lower), variants=2,
        )

    def test_wider_cold_band_below_warm_band(self):
        warm = self.band([0.50, 0.30], [0.52, 0.31])
        cold = self.band([0.40, 0.22], [0.45, 0.26])
        assert band_ordering_violations(warm, cold) == []

    def test_narrow_cold_band(self):
        warm = self.band([0.50, 0.30], [0.52, 0.31])
        cold = self.band([0.40, 0.29], [0.45, 0.295])
        assert band_ordering_violations(warm, cold) == [4e-7]

    def test_cold_band_above_warm_band(self):
        warm = self.band([0.50, 0.30], [0.52, 0.31])
        cold = self.band([0.51, 0.20], [0.56, 0.26])
        assert band_ordering_violations(warm, cold) == [3e-7]


@pytest.mark.slow
class TestReferenceResults:
    @pytest.fixture
    def gold_sphere(self, silica, sheet):
        return SphereExperiment(plate=PlateStack(coating=sheet, substrate=silica), sphere=load_material("gold"))

    def test_thermal_correction_crosses_the_error(self, gold_sphere):
        cfg = QuadratureConfig(rel_tol=1e-6)
        grid = np.linspace(200e-9, 600e-9, 17)
        corrections = [thermal_correction(a, gold_sphere, cfg) for a in grid]
        assert np.all(np.diff(corrections) < 0)
        crossing = find_crossing(grid, corrections, 0.012)
        assert crossing == pytest.approx(350e-9, abs=50e-9)
        assert 3.0 <= max(corrections) / 0.012 <= 7.0

        relative = [relative_thermal_correction(a, gold_sphere, cfg) for a in grid]
        error_line = [relative_error_line(a, gold_sphere, cfg) for a in grid]
        relative_crossing = find_crossing(grid, np.subtract(relative, error_line), 0.0)
        assert relative_crossing == pytest.approx(crossing, abs=50e-9)

    def test_thick_film_acts_as_half_space(self, silica, sheet):
        cfg = QuadratureConfig(rel_tol=1e-6)
        gold, doped = load_material("gold"), load_material("silicon-doped")

        def experiment(thickness=None):
            film = Film(material=silica, thickness=thickness) if thickness else None
            substrate = doped if thickness else silica
            return SphereExperiment(plate=PlateStack(coating=sheet, film=film, substrate=substrate), sphere=gold)

        for a in (200e-9, 350e-9, 500e-9):
            thin = thermal_correction(a, experiment(300e-9), cfg)
            thick = thermal_correction(a, experiment(2e-6), cfg)
            half_space = thermal_correction(a, experiment(), cfg)
            assert thick == pytest.approx(half_space, rel=0.01)
            assert thick > thin

    def test_gap_widens_the_cold_band(self, gold_sphere):
        cfg = QuadratureConfig(rel_tol=1e-6)
        grid = [250e-9, 400e-9, 550e-9]
        warm = model_band(grid, gold_sphere, BandSpec(), cfg, "T")
        cold = model_band(grid, gold_sphere, BandSpec(), cfg, "T0")
        for i in range(len(grid)):
            assert cold.upper[i] - cold.lower[i] > warm.upper[i] - warm.lower[i]
            assert cold.lower[i] < warm.lower[i]
            assert cold.upper[i] < warm.upper[i]
        assert band_ordering_violations(warm, cold) == []
