"""Longest head run in Bernoulli trials.

Exact law of the longest run L(n), its moment generating function, large
deviation rate functions, confidence intervals for p and seeded simulation.
"""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, coverage_experiment_json as _coverage_json
from ._core import run_cli as _run_cli


def coverage_experiment(p, n, alpha, reps, seed, methods=("lr", "wilson", "cp"), threads=0):
    """Coverage report as a dict with keys config, generator, per_method, skipped."""
    return _json.loads(_coverage_json(p, n, alpha, reps, seed, list(methods), threads))


def cli(*args):
    """Run the command-line tool in-process.

    Returns (status, payload), where payload is the parsed JSON document, or
    the raw text for CSV output.
    """
    status, out, _ = _run_cli([str(a) for a in args])
    text = out.strip()
    if text.startswith("{"):
        return status, _json.loads(text)
    return status, out
