"""Dual-use RAN/LLM server economics.

Thin Python layer over the native engine. Scenario documents are plain
dicts with the same shape as the CLI's JSON config files.
"""

import json as _json
import os as _os

from . import _airan
from ._airan import (
    DomainError,
    LoadError,
    baseband_capacity,
    mixed_capacity,
    net_throughput,
)

__version__ = _airan.__version__

__all__ = [
    "ConfigError",
    "DomainError",
    "LoadError",
    "baseband_capacity",
    "mixed_capacity",
    "net_throughput",
    "catalog",
    "presets",
    "validate_spec",
    "run_scenario",
    "run_sweep",
    "export",
    "ingest_trace",
]


class ConfigError(ValueError):
    """Rejected scenario document. `issues` lists every problem found."""

    def __init__(self, issues):
        self.issues = issues
        super().__init__("; ".join(f"{i['path']}: {i['message']}" for i in issues))


def _call(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except _airan.ConfigError as e:
        raise ConfigError(_json.loads(str(e))) from None


def _doc(doc):
    if doc is None:
        return ""
    if isinstance(doc, (str, bytes, _os.PathLike)):
        with open(doc, "rb") as f:
            return f.read().decode("utf-8")
    return _json.dumps(doc)


def _base_dir(doc, base_dir):
    if base_dir is None and isinstance(doc, (str, bytes, _os.PathLike)):
        return _os.path.dirname(_os.path.abspath(doc))
    return None if base_dir is None else _os.fspath(base_dir)


def _path(p):
    return None if p is None else _os.fspath(p)


def catalog(path=None):
    return _json.loads(_call(_airan.catalog_json, _path(path)))


def presets():
    return _json.loads(_airan.presets_json())


def validate_spec(doc=None, preset=None, base_dir=None, catalog=None):
    """Canonical form of `doc` (a dict or a path to a JSON file) overlaid on
    its preset, plus its config_digest."""
    return _json.loads(_call(_airan.validate_spec_json, _doc(doc), preset,
                             _base_dir(doc, base_dir), _path(catalog)))


def run_scenario(doc=None, preset=None, base_dir=None, include_grid=False, catalog=None):
    """Runs one scenario; any sweep section is ignored."""
    return _json.loads(_call(_airan.run_scenario_json, _doc(doc), preset,
                             _base_dir(doc, base_dir), include_grid, _path(catalog)))


def run_sweep(doc, preset=None, base_dir=None, threads=0, catalog=None):
    return _json.loads(_call(_airan.run_sweep_json, _doc(doc), preset,
                             _base_dir(doc, base_dir), threads, _path(catalog)))


def export(doc, out_dir, preset=None, base_dir=None, full_grid=False,
           generated_at="", catalog=None):
    """Writes the CSV tables and manifest.json; returns the written paths."""
    return _call(_airan.export_json, _doc(doc), _os.fspath(out_dir), preset,
                 _base_dir(doc, base_dir), full_grid, generated_at, _path(catalog))


def ingest_trace(path, count_response_tokens=True, timestamp_col="timestamp",
                 request_col="request_tokens", response_col="response_tokens"):
    return _json.loads(_call(_airan.ingest_trace_json, _os.fspath(path),
                             count_response_tokens, timestamp_col, request_col,
                             response_col))
