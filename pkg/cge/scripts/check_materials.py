#!/usr/bin/env python3
"""
Inspect the material registry.

Lists every material found along the search path with its provenance hash
and static permittivity, or validates a single material file. A material
whose provenance header has no ``# Source:`` line fails the check.

Usage:
    python -m cge.scripts.check_materials
    python -m cge.scripts.check_materials --file my-oxide.dat
"""
import argparse
import sys
from pathlib import Path

from cge.exceptions import CGEError, InputFileError
from cge.services.material_files import (
    header_source,
    list_materials,
    load_material,
    load_material_file,
    material_provenance,
)
from cge.services.material_response import zero_frequency_class

MISSING_SOURCE = "no Source line in provenance header"


def describe(name: str) -> str:
    """One line per material: name, zero-frequency class and short hash."""
    prov = material_provenance(name)
    if prov.source is None:
        raise InputFileError(f"{prov.path}: {MISSING_SOURCE}")
    cls = zero_frequency_class(load_material(name))
    detail = f"eps0={cls.eps0:.4g}" if cls.kind == "finite" else cls.kind
    flag = "  (parameter-sensitive)" if prov.parameter_sensitive else ""
    return f"{name:<16} {detail:<14} {prov.sha256[:12]}  {prov.path}{flag}"


def check_file(path: str) -> int:
    """Parse one material file and report its zero-frequency class."""
    try:
        model = load_material_file(path)
        if header_source(Path(path).read_text(encoding="utf-8")) is None:
            raise InputFileError(f"{path}: {MISSING_SOURCE}")
    except CGEError as exc:
        print(f"❌ {exc.detail}")
        return exc.exit_code
    print(f"✅ {path}: {model.kind} material {model.name!r}, zero-frequency class {zero_frequency_class(model).kind}")
    return 0


def main():
    parser = argparse.ArgumentParser(description="Inspect the material registry")
    parser.add_argument("--file", help="Validate a single material file instead of listing the registry")
    args = parser.parse_args()

    if args.file:
        sys.exit(check_file(args.file))

    status = 0
    for name in list_materials():
        try:
            print(describe(name))
        except CGEError as exc:
            print(f"❌ {name}: {exc.detail}")
            status = exc.exit_code
    sys.exit(status)


if __name__ == "__main__":
    main()
