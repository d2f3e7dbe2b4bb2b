"""Permittivities on the imaginary axis and zero-frequency classification."""
import math

import numpy as np
import pytest

from cge.exceptions import ConfigurationError, DomainError
from cge.schemas import (
    Drude,
    DrudeLike,
    FiniteStatic,
    IdealLike,
    LowFrequencyExtension,
    OpticalTable,
    Plasma,
    PlasmaLike,
    Tabulated,
)
from cge.services.material_files import REGISTRY, load_material
from cge.services.material_response import (
    eps_drude,
    eps_imaginary,
    eps_oscillator,
    eps_plasma,
    eps_tabulated,
    imaginary_axis_response,
    with_carrier_parameters,
    with_extrapolation,
    zero_frequency_class,
)
from cge.utils.units import to_dimensionless_energy


def lorentz_absorption(omega, strength, omega0, gamma):
    return strength * omega0 ** 2 * gamma * omega / ((omega0 ** 2 - omega ** 2) ** 2 + gamma ** 2 * omega ** 2)


def drude_absorption(omega, omega_p, gamma):
    return omega_p ** 2 * gamma / (omega * (omega ** 2 + gamma ** 2))


class TestClosedForms:
    def test_drude_examples(self):
        assert eps_drude(9.0, 9.0, 0.0) == pytest.approx(2.0, rel=1e-15)
        assert eps_drude(9.0, 9.0, 0.035) == pytest.approx(1.0 + 81.0 / (9.0 * 9.035), rel=1e-14)
        assert eps_drude(9.0, 9.0, 0.035) == pytest.approx(1.99613, abs=1e-4)
        assert 1.0 < eps_drude(1e6, 9.0, 0.035) < 1.0 + 1e-9

    def test_plasma_examples(self):
        assert eps_plasma(9.0, 9.0) == pytest.approx(2.0)
        assert eps_plasma(4.5, 9.0) == pytest.approx(5.0)
        assert eps_plasma(90.0, 9.0) == pytest.approx(1.01)

    def test_drude_without_damping_is_plasma(self):
        xi = np.geomspace(1e-3, 1e3, 50)
        assert np.allclose(eps_drude(xi, 9.0, 0.0), eps_plasma(xi, 9.0), rtol=1e-14)

    @pytest.mark.parametrize("func,args", [(eps_drude, (9.0, 0.035)), (eps_plasma, (9.0,))])
    @pytest.mark.parametrize("xi", [0.0, -1.0])
    def test_non_positive_frequency_rejected(self, func, args, xi):
        with pytest.raises(DomainError):
            func(xi, *args)

    def test_arrays_keep_their_shape(self):
        xi = np.ones((3, 4))
        assert np.shape(eps_drude(xi, 9.0, 0.035)) == (3, 4)


class TestOscillators:
    @pytest.mark.parametrize("name,eps0", [
        ("fused-silica", 3.801),
        ("sapphire", 10.102),
        ("mica", 5.4),
        ("silicon", 11.7),
    ])
    def test_static_values(self, name, eps0):
        model = load_material(name)
        assert eps_oscillator(0.0, model) == pytest.approx(eps0, abs=1e-12)
        assert eps_oscillator(0.0, model) == model.eps0

    def test_acceptance_static_windows(self, silica):
        assert abs(eps_oscillator(0.0, silica) - 3.8) <= 0.1
        assert abs(eps_oscillator(0.0, load_material("sapphire")) - 10.1) <= 0.2

    def test_high_frequency_limit(self, silica):
        assert eps_oscillator(1e6, silica) == pytest.approx(silica.eps_infinity, abs=1e-6)

    def test_free_carriers_dominate_at_low_frequency(self):
        doped = load_material("silicon-doped")
        bound = load_material("silicon")
        assert eps_oscillator(1e-3, doped) > 100 * eps_oscillator(1e-3, bound)
        assert zero_frequency_class(doped) == DrudeLike()

    def test_negative_frequency_rejected(self, silica):
        with pytest.raises(DomainError):
            eps_oscillator(-0.1, silica)


@pytest.mark.parametrize("name", sorted(set(REGISTRY) - {"ideal"}))
def test_registry_materials_monotone_and_above_one(name):
    model = load_material(name)
    xi = np.geomspace(1e-3, 1e3, 200)
    eps = np.asarray(eps_imaginary(model, xi))
    assert np.all(eps >= 1.0)
    assert np.all(np.diff(eps) <= 1e-12 * eps[:-1])


class TestKramersKronig:
    def test_transparent_table_gives_unity(self):
        table = OpticalTable(rows=[(0.01, 0.0), (100.0, 0.0)])
        assert eps_tabulated(np.array([0.1, 1.0, 10.0]), table) == pytest.approx([1.0, 1.0, 1.0])

    def test_single_lorentzian_round_trip(self):
        energies = np.geomspace(1e-3, 1e3, 2000)
        rows = [(e, lorentz_absorption(e, 2.0, 1.0, 0.1)) for e in energies]
        table = OpticalTable(rows=rows, provenance_label="synthetic")
        xi = np.array([0.05, 0.3, 1.0, 3.0, 20.0])
        expected = 1.0 + 2.0 / (1.0 + xi ** 2 + 0.1 * xi)
        assert np.allclose(eps_tabulated(xi, table), expected, rtol=5e-3)

    def test_drude_extension_reproduces_drude(self):
        energies = np.geomspace(0.1, 1000.0, 800)
        rows = [(e, drude_absorption(e, 9.0, 0.035)) for e in energies]
        table = OpticalTable(rows=rows)
        extension = LowFrequencyExtension(kind="drude", omega_p=9.0, gamma=0.035)
        xi = np.array([0.02, 0.035, 0.16, 1.0, 10.0])
        assert np.allclose(eps_tabulated(xi, table, extension), eps_drude(xi, 9.0, 0.035), rtol=5e-3)

    def test_plasma_extension_removes_intraband_absorption(self):
        energies = np.geomspace(0.1, 1000.0, 800)
        rows = [(e, drude_absorption(e, 9.0, 0.035)) for e in energies]
        table = OpticalTable(rows=rows)
        extension = LowFrequencyExtension(kind="plasma", omega_p=9.0, gamma=0.035)
        xi = np.array([0.16, 1.0, 10.0])
        assert np.allclose(eps_tabulated(xi, table, extension), eps_plasma(xi, 9.0), rtol=1e-3)

    def test_high_frequency_limit(self, gold):
        assert 1.0 < eps_tabulated(1e4, gold.table, gold.extension) < 1.001

    def test_gold_drude_and_plasma_agree_above_the_infrared(self, gold):
        plasma = with_extrapolation(gold, "plasma")
        xi = np.array([5.0, 10.0, 20.0])
        drude_eps = eps_imaginary(gold, xi)
        plasma_eps = eps_imaginary(plasma, xi)
        assert np.allclose(drude_eps, plasma_eps, rtol=0.02)

    def test_non_positive_frequency_rejected(self, gold):
        with pytest.raises(DomainError):
            eps_tabulated(0.0, gold.table, gold.extension)

    def test_short_table_is_flagged(self, caplog):
        table = OpticalTable(rows=[(1.0, 0.5), (2.0, 0.4)], provenance_label="narrow")
        assert "less than one decade" in table.provenance_label
        assert any("less than one decade" in r.message for r in caplog.records)

    @pytest.mark.parametrize("rows", [
        [(1.0, 0.5)],
        [(2.0, 0.5), (1.0, 0.5)],
        [(0.0, 0.5), (1.0, 0.5)],
        [(1.0, -0.5), (20.0, 0.5)],
    ])
    def test_invalid_tables_rejected(self, rows):
        with pytest.raises(ValueError):
            OpticalTable(rows=rows)


class TestZeroFrequency:
    def test_classes(self, silica, gold):
        assert zero_frequency_class(Drude(omega_p=9.0, gamma=0.035)) == DrudeLike()
        assert zero_frequency_class(Plasma(omega_p=9.0)) == PlasmaLike(omega_p=9.0)
        assert zero_frequency_class(silica) == FiniteStatic(eps0=silica.eps0)
        assert zero_frequency_class(gold) == DrudeLike()
        assert zero_frequency_class(load_material("ideal")) == IdealLike()

    def test_tabulated_without_extension_is_finite(self):
        energies = np.geomspace(1e-3, 1e3, 2000)
        table = OpticalTable(rows=[(e, lorentz_absorption(e, 2.0, 1.0, 0.1)) for e in energies])
        cls = zero_frequency_class(Tabulated(table=table))
        assert isinstance(cls, FiniteStatic)
        assert cls.eps0 == pytest.approx(3.0, rel=5e-3)

    def test_layer_response_at_zero_frequency(self, silica):
        a = 100e-9
        zero = np.zeros(1)
        assert imaginary_axis_response(silica, zero, a).inv_eps[0] == pytest.approx(1.0 / silica.eps0)
        assert imaginary_axis_response(silica, zero, a).kappa2[0] == 0.0

        drude = imaginary_axis_response(Drude(omega_p=9.0, gamma=0.035), zero, a)
        assert (drude.inv_eps[0], drude.kappa2[0]) == (0.0, 0.0)

        plasma = imaginary_axis_response(Plasma(omega_p=9.0), zero, a)
        assert plasma.inv_eps[0] == 0.0
        assert plasma.kappa2[0] == pytest.approx(to_dimensionless_energy(9.0, a) ** 2)

        ideal = imaginary_axis_response(load_material("ideal"), zero, a)
        assert ideal.inv_eps[0] == 0.0 and math.isinf(ideal.kappa2[0])

    def test_layer_response_at_positive_frequency(self, silica):
        zeta = np.array([0.5, 2.0])
        response = imaginary_axis_response(silica, zeta, 1e-6)
        eps = 1.0 / response.inv_eps
        assert np.allclose(response.kappa2, (eps - 1.0) * zeta ** 2)


class TestVariants:
    def test_extrapolation_switch(self, gold):
        plasma = with_extrapolation(gold, "plasma")
        assert plasma.extension.kind == "plasma"
        assert plasma.extension.omega_p == 9.0
        assert with_extrapolation(plasma, "drude").model_dump() == gold.model_dump()
        assert isinstance(with_extrapolation(Drude(omega_p=9.0, gamma=0.1), "plasma"), Plasma)

    def test_extrapolation_leaves_dielectrics_alone(self, silica):
        assert with_extrapolation(silica, "plasma") is silica

    def test_unknown_extrapolation(self, gold):
        with pytest.raises(ConfigurationError):
            with_extrapolation(gold, "hydrodynamic")

    def test_plasma_to_drude_takes_the_given_relaxation(self):
        plasma = Plasma(omega_p=9.0, name="au")
        drude = with_extrapolation(plasma, "drude", gamma=0.035)
        assert isinstance(drude, Drude)
        assert drude.gamma == 0.035
        assert drude.omega_p == 9.0

    def test_plasma_to_drude_needs_a_relaxation(self):
        with pytest.raises(ConfigurationError, match="no relaxation rate"):
            with_extrapolation(Plasma(omega_p=9.0), "drude")

    def test_extrapolation_relaxation_override(self, gold):
        switched = with_extrapolation(gold, "drude", gamma=0.05)
        assert switched.extension.gamma == 0.05
        assert with_extrapolation(gold, "plasma").extension.gamma == 0.035

    def test_carrier_plasma_frequency(self):
        doped = load_material("silicon-doped")
        changed = with_carrier_parameters(doped, omega_p=0.25)
        assert changed.carriers.omega_p == 0.25
        assert changed.carriers.gamma == doped.carriers.gamma
        assert changed.terms == doped.terms

    def test_carrier_relaxation(self):
        doped = load_material("silicon-doped")
        changed = with_carrier_parameters(doped, gamma=0.02)
        assert changed.carriers.gamma == 0.02
        assert changed.carriers.omega_p == doped.carriers.omega_p

    def test_carrier_parameters_of_metals(self, gold):
        assert with_carrier_parameters(gold, omega_p=8.5, gamma=0.04).extension.omega_p == 8.5
        drude = with_carrier_parameters(Drude(omega_p=9.0, gamma=0.1), gamma=0.02)
        assert drude.gamma == 0.02
        assert with_carrier_parameters(Plasma(omega_p=9.0), omega_p=8.0, gamma=0.02).omega_p == 8.0

    def test_carrier_parameters_require_carriers(self):
        with pytest.raises(ConfigurationError):
            with_carrier_parameters(load_material("silicon"), omega_p=0.25)

    def test_carrier_parameters_reject_negative_relaxation(self):
        with pytest.raises(ConfigurationError):
            with_carrier_parameters(load_material("silicon-doped"), gamma=-0.1)
