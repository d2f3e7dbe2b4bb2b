"""Material data files, registry lookup and provenance."""
import hashlib

import pytest

from cge.exceptions import ConfigurationError, InputFileError
from cge.schemas import Drude, IdealConductor, OscillatorSet, Plasma, Tabulated
from cge.services.material_files import (
    REGISTRY,
    SHIPPED_DIR,
    header_source,
    list_materials,
    load_material,
    material_provenance,
    parse_material_text,
    resolve_material_path,
    search_path,
)

OSCILLATOR_FILE = """\
# Test dielectric
name test-dielectric
oscillator
1.5
2.0   1.0   0.1
"""


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_every_registry_entry_loads(name):
    model = load_material(name)
    assert model.name == name
    assert model.provenance


def test_model_variants():
    assert isinstance(load_material("gold"), Tabulated)
    assert isinstance(load_material("fused-silica"), OscillatorSet)
    assert isinstance(load_material("ideal"), IdealConductor)
    gold = load_material("gold")
    assert gold.extension.kind == "drude"
    assert gold.extension.omega_p == 9.0
    assert gold.extension.gamma == 0.035


def test_unknown_material():
    with pytest.raises(ConfigurationError):
        load_material("unobtainium")


def test_provenance_hash_matches_file():
    info = material_provenance("fused-silica")
    expected = hashlib.sha256((SHIPPED_DIR / "fused-silica.dat").read_bytes()).hexdigest()
    assert info.sha256 == expected
    assert "Fused silica" in info.label
    assert not info.parameter_sensitive
    assert info.source.startswith("D. B. Hough")


def test_header_source():
    assert header_source("# Oxide\n# Source: handbook, p. 12\noscillator\n2.0\n") == "handbook, p. 12"
    assert header_source("# Oxide\noscillator\n# Source: too late\n2.0\n") is None
    assert header_source("# source:\noscillator\n") is None


def test_doped_silicon_is_parameter_sensitive(caplog):
    assert material_provenance("silicon-doped").parameter_sensitive
    assert any("parameter-sensitive" in r.message for r in caplog.records)


class TestParsing:
    def test_oscillator_block(self):
        model = parse_material_text(OSCILLATOR_FILE)
        assert model.name == "test-dielectric"
        assert model.eps0 == pytest.approx(3.5)
        assert model.provenance == "Test dielectric"

    def test_closed_forms(self):
        drude = parse_material_text("drude 9.0 0.035")
        assert isinstance(drude, Drude)
        assert (drude.omega_p, drude.gamma, drude.provenance) == (9.0, 0.035, "<string>")
        assert isinstance(parse_material_text("plasma 9.0"), Plasma)
        assert isinstance(parse_material_text("ideal"), IdealConductor)

    def test_table_with_extension(self):
        text = "extension plasma 9.0 0.035\ntable\n0.1 100\n1.0 5\n10.0 1\n"
        model = parse_material_text(text)
        assert model.extension.kind == "plasma"
        assert len(model.table.rows) == 3

    def test_short_table_is_flagged(self):
        model = parse_material_text("table\n1.0 0.5\n2.0 0.4\n")
        assert "less than one decade" in model.table.provenance_label

    @pytest.mark.parametrize("text,where", [
        ("table\n1.0 0.5\nabc 0.4\n", ":3"),
        ("table\n1.0 0.5 7\n", ":2"),
        ("table\n1.0 -0.5\n10.0 0.5\n", ""),
        ("oscillator\n1.0\n2.0 1.0\n", ":3"),
        ("extension lorentz 1 2\ntable\n1 1\n20 1\n", ":1"),
        ("drude 9.0 0.035\nplasma 9.0\n", ":2"),
        ("# only a header\n", ""),
        ("name x\nfoo 1 2\n", ":2"),
    ])
    def test_malformed_files(self, text, where):
        with pytest.raises(InputFileError) as exc:
            parse_material_text(text, source="bad.dat")
        assert exc.value.detail.startswith(f"bad.dat{where}")
        assert exc.value.exit_code == 4

    def test_decreasing_energies(self):
        with pytest.raises(InputFileError):
            parse_material_text("table\n2.0 0.5\n1.0 0.4\n")


class TestSearchPath:
    def test_environment_directory_shadows_shipped_data(self, tmp_path, monkeypatch):
        (tmp_path / "fused-silica.dat").write_text(OSCILLATOR_FILE)
        monkeypatch.setenv("CGE_MATERIAL_PATH", str(tmp_path))
        from cge.config import get_settings
        get_settings.cache_clear()
        assert resolve_material_path("fused-silica") == tmp_path / "fused-silica.dat"
        assert load_material("fused-silica").eps0 == pytest.approx(3.5)

    def test_caller_directories_come_before_environment(self, tmp_path, monkeypatch):
        caller, env = tmp_path / "caller", tmp_path / "env"
        caller.mkdir()
        env.mkdir()
        (caller / "custom.dat").write_text(OSCILLATOR_FILE)
        (env / "custom.dat").write_text("oscillator\n2.0\n")
        monkeypatch.setenv("CGE_MATERIAL_PATH", str(env))
        from cge.config import get_settings
        get_settings.cache_clear()
        assert search_path((str(caller),))[:2] == [caller, env]
        assert resolve_material_path("custom", (str(caller),)) == caller / "custom.dat"
        assert resolve_material_path("custom") == env / "custom.dat"

    def test_extra_directories(self, tmp_path):
        (tmp_path / "custom.dat").write_text(OSCILLATOR_FILE)
        model = load_material("custom", (str(tmp_path),))
        assert model.name == "test-dielectric"
        assert "custom" in list_materials((str(tmp_path),))

    def test_direct_file_path(self, tmp_path):
        path = tmp_path / "layer.dat"
        path.write_text("oscillator\n2.0\n")
        model = load_material(str(path))
        assert model.name == "layer"
        assert model.eps0 == 2.0

    def test_unreadable_file(self, tmp_path):
        path = tmp_path / "binary.dat"
        path.write_bytes(b"\xff\xfe\x00")
        with pytest.raises(InputFileError):
            load_material(str(path))
