import os
import sys
import json
import warnings
from typing import Any, cast

from .errors import UsageError


def resolve_path(path: str, required: bool = True) -> str | None:
    """Absolute path of an existing file. Missing is a UsageError, or a warning and None"""
    p = os.path.abspath(path)
    if os.path.exists(p):
        return p
    if required:
        raise UsageError(f"Unable to find path ({path})")
    warnings.warn(f"Unable to find {path}")
    return None


def load_json_object(path: str) -> dict[str, Any]:
    """A JSON preset file, which must hold one object of option defaults"""
    with open(path, "r", encoding="utf-8") as f:
        try:
            d = json.load(f)
        except json.JSONDecodeError as ex:
            raise UsageError(f"Invalid JSON in {path}: {ex}")
    if not isinstance(d, dict):
        raise UsageError(f"JSON preset {path} must be an object, got {type(d).__name__}")
    return d


def read_text(path: str) -> str:
    """Read a UTF-8 input file, `-` means stdin"""
    if path == "-":
        return sys.stdin.read()
    with open(cast(str, resolve_path(path)), "r", encoding="utf-8") as f:
        return f.read()


def write_output(text: str, out: str | None = None) -> None:
    """Write one JSON document (or JSON lines) to `out`, or stdout when None"""
    if not text.endswith("\n"):
        text = text + "\n"
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
