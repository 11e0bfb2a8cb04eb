"""Species defaults shipped with the package (``data/species.json``)."""

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def _load():
    return json.loads(resources.files("rydmol").joinpath("data/species.json").read_text())


def species_version() -> str:
    return _load()["version"]


def species_defaults(name: str) -> dict:
    """Return a copy of the default parameter block for ``krb``, ``rb`` or ``ch``."""
    block = _load()[name]
    return {k: v for k, v in block.items() if k != "note"}
