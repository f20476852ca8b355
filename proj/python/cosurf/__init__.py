"""Numerical checks of Chern-Osserman type results for minimal surfaces."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import Error, run as _run


def run_config(config):
    """Run a configuration given as a dict or JSON text; returns (exit_code, report dict)."""
    text = config if isinstance(config, str) else _json.dumps(config)
    code, report = _run(text, write_outputs="output" in (config if isinstance(config, dict) else _json.loads(text)))
    return code, _json.loads(report)


__all__ = [name for name in dir() if not name.startswith("_")]
