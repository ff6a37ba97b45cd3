"""Shipped fixture files: system configs, spine codes, golden polynomials."""
from __future__ import annotations

from pathlib import Path

ROOT = Path(__file__).parent


def fixture_path(*parts: str) -> Path:
    path = ROOT.joinpath(*parts)
    if not path.exists():
        raise FileNotFoundError(f"no fixture {'/'.join(parts)}")
    return path


def system_config(name: str) -> Path:
    return fixture_path("systems", f"{name}.cfg")


def golden(name: str) -> Path:
    return fixture_path("golden", name)


def spine_file(name: str = "prop81.txt") -> Path:
    return fixture_path("spines", name)


def read_polynomials(path, registry):
    """Parse one polynomial per non-comment line."""
    from ..poly import Polynomial

    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                out.append(Polynomial.parse(line, registry))
    return out
