"""Numerical tolerances and their overrides.

Defaults live in :class:`Tolerances`.  A config file is a flat list of
``key = value`` lines (``#`` starts a comment), e.g.::

    tau_det = 1e-10
    rtol = 1e-11

The environment variable ``FLATFRONT_THREADS`` caps worker threads.
"""

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    tau_herm: float = 1e-9
    tau_det: float = 1e-9
    tau_lift: float = 1e-9
    tau_root: float = 1e-7
    tau_deriv: float = 1e-9
    tau_sing: float = 1e-6
    rtol: float = 1e-10
    atol: float = 1e-12
    cauchy: float = 1e-6


DEFAULT = Tolerances()


def parse_config(text):
    """Parse ``key = value`` lines into a dict of floats."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = float(value.strip("\"'"))
    return out


def load_tolerances(path=None, base=DEFAULT):
    if path is None:
        return base
    with open(path, encoding="utf-8") as fh:
        values = parse_config(fh.read())
    known = {f.name for f in fields(Tolerances)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
    return replace(base, **values)


def max_threads():
    value = os.environ.get("FLATFRONT_THREADS", "")
    try:
        n = int(value)
    except ValueError:
        return os.cpu_count() or 1
    return max(1, n)
