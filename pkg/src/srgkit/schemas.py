"""JSON schemas for command output, shipped as ``schemas.json``."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema


@lru_cache(maxsize=1)
def _bundle() -> dict:
    return json.loads(resources.files("srgkit").joinpath("schemas.json").read_text(encoding="utf-8"))


def commands() -> list[str]:
    return sorted(_bundle()["commands"])


def schema_for(command: str) -> dict:
    """Self-contained schema for one command's JSON document."""
    b = _bundle()
    try:
        body = b["commands"][command]
    except KeyError:
        raise KeyError(f"no schema for command {command!r}") from None
    return {"$schema": b["$schema"], "$defs": b["$defs"], **body}


def validate_output(command: str, doc: dict) -> None:
    """Raise ``jsonschema.ValidationError`` when ``doc`` does not fit."""
    jsonschema.validate(doc, schema_for(command))
