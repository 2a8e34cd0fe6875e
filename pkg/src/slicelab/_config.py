"""Module-wide numerical tolerances and the parallelism cap."""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    unit: float = 1e-12  # |I| = 1 check
    alg: float = 1e-12  # composed quaternion products
    sep: float = 1e-10  # minimum |J - K| for interpolation pairs
    zero: float = 1e-14  # invertibility threshold
    ray: float = 1e-9  # thickness of excluded cuts
    check: float = 1e-9  # representation-formula residual gate
    cr: float = 1e-6  # Cauchy-Riemann residual gate


_current = Tolerances()


def tolerances() -> Tolerances:
    return _current


def set_tolerances(**overrides: float) -> Tolerances:
    """Replace selected tolerances globally and return the previous set."""
    global _current
    known = {f.name for f in fields(Tolerances)}
    bad = set(overrides) - known
    if bad:
        raise KeyError(f"unknown tolerance(s): {sorted(bad)}")
    previous = _current
    _current = replace(_current, **{k: float(v) for k, v in overrides.items()})
    return previous


@contextmanager
def override(**overrides: float):
    previous = set_tolerances(**overrides)
    try:
        yield _current
    finally:
        _restore(previous)


def _restore(tol: Tolerances) -> None:
    global _current
    _current = tol


def max_threads() -> int:
    raw = os.environ.get("SLICELAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
