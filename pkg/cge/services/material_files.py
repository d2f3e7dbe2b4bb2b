"""Material data files and the material registry.

A material file is UTF-8 text. ``#`` lines form the provenance header. The
body holds directives and exactly one model block::

    name NAME
    extension drude|plasma|none OMEGA_P GAMMA     (tables only)
    carriers drude|plasma OMEGA_P GAMMA           (oscillator sets only)
    drude OMEGA_P GAMMA | plasma OMEGA_P | ideal  (closed-form models)
    oscillator                                    (eps_infinity line, then C omega gamma lines)
    table                                         (energy_eV im_eps lines)

All frequencies are in eV.
"""
import hashlib
import logging
import os
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ValidationError

from cge.config import get_settings
from cge.exceptions import ConfigurationError, InputFileError
from cge.schemas.material import (
    CarrierTerm,
    Drude,
    IdealConductor,
    LowFrequencyExtension,
    MaterialModel,
    OpticalTable,
    OscillatorSet,
    OscillatorTerm,
    Plasma,
    Tabulated,
)
from cge.utils.cache import build_cache_key, cached

logger = logging.getLogger(__name__)

SHIPPED_DIR = Path(__file__).resolve().parent.parent / "data" / "materials"
SUFFIX = ".dat"

REGISTRY: Dict[str, str] = {
    "gold": "gold.dat",
    "silicon": "silicon.dat",
    "silicon-doped": "silicon-doped.dat",
    "sapphire": "sapphire.dat",
    "mica": "mica.dat",
    "fused-silica": "fused-silica.dat",
    "vacuum": "vacuum.dat",
    "ideal": "ideal.dat",
}

PARAMETER_SENSITIVE = "parameter-sensitive"
SOURCE_TAG = "source:"


class MaterialProvenance(BaseModel):
    """Where a material came from."""
    name: str
    path: str
    label: str
    sha256: str
    source: Optional[str] = None
    parameter_sensitive: bool = False


def _floats(parts: Sequence[str], count: int, where: str) -> List[float]:
    if len(parts) != count:
        raise InputFileError(f"{where}: expected {count} numbers, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise InputFileError(f"{where}: not a number in {' '.join(parts)!r}")


def parse_material_text(text: str, source: str = "<string>") -> MaterialModel:
    """
    Parse the body of a material file.

    Args:
        text: file content
        source: file name used in error messages

    Returns:
        The material model, with ``name`` and ``provenance`` filled in

    Raises:
        InputFileError: on any malformed line, naming file and line
    """
    header: List[str] = []
    name = ""
    block: Optional[str] = None
    model_line: Optional[Tuple[str, List[float]]] = None
    extension: Optional[LowFrequencyExtension] = None
    carriers: Optional[CarrierTerm] = None
    eps_infinity: Optional[float] = None
    terms: List[OscillatorTerm] = []
    rows: List[Tuple[float, float]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        where = f"{source}:{lineno}"
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            header.append(line.lstrip("#").strip())
            continue
        parts = line.split()
        keyword = parts[0].lower()
        try:
            if keyword == "name":
                name = " ".join(parts[1:])
            elif keyword == "extension":
                kind = parts[1].lower() if len(parts) > 1 else ""
                if kind == "none":
                    extension = LowFrequencyExtension()
                elif kind in ("drude", "plasma"):
                    omega_p, gamma = _floats(parts[2:], 2, where)
                    extension = LowFrequencyExtension(kind=kind, omega_p=omega_p, gamma=gamma)
                else:
                    raise InputFileError(f"{where}: unknown extension {kind!r}")
            elif keyword == "carriers":
                kind = parts[1].lower() if len(parts) > 1 else ""
                if kind not in ("drude", "plasma"):
                    raise InputFileError(f"{where}: unknown carrier model {kind!r}")
                omega_p, gamma = _floats(parts[2:], 2, where)
                carriers = CarrierTerm(kind=kind, omega_p=omega_p, gamma=gamma)
            elif keyword in ("oscillator", "table"):
                if block is not None or model_line is not None:
                    raise InputFileError(f"{where}: more than one model block")
                block = keyword
            elif keyword in ("drude", "plasma", "ideal"):
                if block is not None or model_line is not None:
                    raise InputFileError(f"{where}: more than one model block")
                count = {"drude": 2, "plasma": 1, "ideal": 0}[keyword]
                model_line = (keyword, _floats(parts[1:], count, where))
            elif block == "oscillator":
                if eps_infinity is None:
                    (eps_infinity,) = _floats(parts, 1, where)
                else:
                    strength, omega, gamma = _floats(parts, 3, where)
                    terms.append(OscillatorTerm(strength=strength, omega=omega, gamma=gamma))
            elif block == "table":
                energy, im_eps = _floats(parts, 2, where)
                rows.append((energy, im_eps))
            else:
                raise InputFileError(f"{where}: unexpected line {line!r}")
        except ValidationError as exc:
            raise InputFileError(f"{where}: {exc.errors()[0]['msg']}")

    label = " ".join(header) or source
    common = {"name": name, "provenance": label}
    try:
        if block == "table":
            table = OpticalTable(rows=rows, provenance_label=label)
            return Tabulated(table=table, extension=extension or LowFrequencyExtension(), **common)
        if block == "oscillator":
            if eps_infinity is None:
                raise InputFileError(f"{source}: oscillator block without eps_infinity")
            return OscillatorSet(terms=tuple(terms), eps_infinity=eps_infinity, carriers=carriers, **common)
        if model_line is not None:
            keyword, values = model_line
            if keyword == "drude":
                return Drude(omega_p=values[0], gamma=values[1], **common)
            if keyword == "plasma":
                return Plasma(omega_p=values[0], **common)
            return IdealConductor(**common)
    except ValidationError as exc:
        raise InputFileError(f"{source}: {exc.errors()[0]['msg']}")
    raise InputFileError(f"{source}: no model block")


def header_source(text: str) -> Optional[str]:
    """The citation on the first ``# Source:`` line of a provenance header, if any."""
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if not line.startswith("#"):
            break
        entry = line.lstrip("#").strip()
        if entry.lower().startswith(SOURCE_TAG):
            return entry[len(SOURCE_TAG):].strip() or None
    return None


def search_path(extra: Sequence[str] = ()) -> List[Path]:
    """Material directories in lookup order: ``extra``, CGE_MATERIAL_PATH, shipped data."""
    dirs = [Path(p) for p in extra]
    dirs.extend(Path(p) for p in get_settings().parsed_material_path)
    dirs.append(SHIPPED_DIR)
    return dirs


def resolve_material_path(name: str, extra: Sequence[str] = ()) -> Path:
    """
    Locate the file of a material name.

    A name that points to an existing file is used as is. Otherwise
    ``<name>.dat`` (or the registry file name) is looked up along the search path.

    Raises:
        ConfigurationError: if the name cannot be resolved
    """
    direct = Path(name)
    if (os.sep in name or name.endswith(SUFFIX)) and direct.is_file():
        return direct
    filename = REGISTRY.get(name, f"{name}{SUFFIX}")
    for directory in search_path(extra):
        candidate = directory / filename
        if candidate.is_file():
            return candidate
    raise ConfigurationError(f"unknown material {name!r}")


def load_material_file(path: Path) -> MaterialModel:
    """Read and parse one material file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputFileError(f"{path}: {exc}")
    model = parse_material_text(text, source=str(path))
    if not model.name:
        model = model.model_copy(update={"name": Path(path).stem})
    return model


@cached(
    "material",
    key_builder=lambda name, extra=(): build_cache_key("material", name=name, extra=list(extra)),
)
def load_material(name: str, extra: Sequence[str] = ()) -> MaterialModel:
    """
    Load a material by registry name or path.

    Args:
        name: registry name (e.g. "gold"), user material name or file path
        extra: directories searched before CGE_MATERIAL_PATH and the shipped data

    Returns:
        The parsed material model
    """
    path = resolve_material_path(name, extra)
    logger.debug("Loading material %s from %s", name, path)
    model = load_material_file(path)
    if PARAMETER_SENSITIVE in model.provenance:
        logger.warning("Material %s uses %s default parameters", name, PARAMETER_SENSITIVE)
    return model


def material_provenance(name: str, extra: Sequence[str] = ()) -> MaterialProvenance:
    """Provenance label and SHA-256 of the file behind a material name."""
    path = resolve_material_path(name, extra)
    data = path.read_bytes()
    model = load_material(name, tuple(extra))
    return MaterialProvenance(
        name=name,
        path=str(path),
        label=model.provenance,
        sha256=hashlib.sha256(data).hexdigest(),
        source=header_source(data.decode("utf-8", errors="replace")),
        parameter_sensitive=PARAMETER_SENSITIVE in model.provenance,
    )


def list_materials(extra: Sequence[str] = ()) -> List[str]:
    """Registry names plus every ``.dat`` file found along the search path."""
    names = set(REGISTRY)
    for directory in search_path(extra):
        if directory.is_dir():
            names.update(p.stem for p in directory.glob(f"*{SUFFIX}"))
    return sorted(names)
