"""Bundled example theory and model files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

FILES = ("bool.mlt", "natbool.mlt", "natbool.mlm")


def corpus_path(name: str) -> Path:
    """Filesystem path of a bundled corpus file."""
    if name not in FILES:
        raise KeyError(f"no bundled corpus file named {name!r}")
    return Path(str(resources.files(__package__).joinpath(name)))
