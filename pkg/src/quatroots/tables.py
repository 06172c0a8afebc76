"""Error tables against known roots, and convergence-order summaries.

Computed roots are matched to known roots greedily: all pairwise distances
are sorted and pairs are taken nearest first.  This is exact whenever the
known roots are separated by more than twice the largest error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import CountMismatch, DomainError
from .quaternion import Quaternion, class_key, norm
from .solver import IterationRecord, SolveOutcome, rho_or_none


@dataclass
class ErrorRow:
    k: int
    errors: tuple
    error: float
    rho: Optional[float]
    # only in class-key mode
    eps_re: Optional[float] = None
    eps_norm: Optional[float] = None


def _greedy(dist, n):
    pairs = sorted((dist[i][j], i, j) for i in range(n) for j in range(n))
    taken_i, taken_j = set(), set()
    match = [None] * n
    for _, i, j in pairs:
        if i in taken_i or j in taken_j:
            continue
        match[i] = j
        taken_i.add(i)
        taken_j.add(j)
    return match


def _check_counts(zeta, known):
    if len(zeta) != len(known):
        raise CountMismatch(f"{len(known)} known roots for {len(zeta)} computed roots")


def known_root_errors(zeta: Sequence, known: Sequence) -> list:
    """``|zeta_i - known_pi(i)|`` with ``pi`` the greedy nearest matching."""
    zeta = [Quaternion.coerce(q) for q in zeta]
    known = [Quaternion.coerce(q) for q in known]
    _check_counts(zeta, known)
    dist = [[norm(a - b) for b in known] for a in zeta]
    match = _greedy(dist, len(zeta))
    return [dist[i][match[i]] for i in range(len(zeta))]


def class_key_errors(zeta: Sequence, known: Sequence):
    """Per-root ``(|dRe|, |d norm|)`` pairs after matching on class keys."""
    zk = [class_key(Quaternion.coerce(q)) for q in zeta]
    kk = [class_key(Quaternion.coerce(q)) for q in known]
    _check_counts(zk, kk)
    dist = [[max(abs(a.re - b.re), abs(a.norm - b.norm)) for b in kk] for a in zk]
    match = _greedy(dist, len(zk))
    return [(abs(zk[i].re - kk[match[i]].re), abs(zk[i].norm - kk[match[i]].norm))
            for i in range(len(zk))]


def record_error(rec: IterationRecord, known: Sequence, class_keys: bool = False) -> ErrorRow:
    if class_keys:
        pairs = class_key_errors(rec.zeta, known)
        errs = tuple(max(r, n) for r, n in pairs)
        eps_re = max(r for r, _ in pairs)
        eps_norm = max(n for _, n in pairs)
        return ErrorRow(rec.k, errs, max(eps_re, eps_norm), None, eps_re, eps_norm)
    errs = tuple(known_root_errors(rec.zeta, known))
    return ErrorRow(rec.k, errs, max(errs), None)


def error_table(outcome: SolveOutcome, known: Sequence, class_keys: bool = False) -> list:
    """One row per trace record with per-root errors, their maximum and ``rho``."""
    rows = []
    for rec in outcome.trace:
        row = record_error(rec, known, class_keys)
        if rows:
            row.rho = rho_or_none(row.error, rows[-1].error)
        rows.append(row)
    return rows


def annotate(outcome: SolveOutcome, rows: Sequence[ErrorRow]) -> None:
    """Copy table errors onto the trace records, replacing increment-based ``rho``."""
    for rec, row in zip(outcome.trace, rows):
        rec.per_root_error = list(row.errors)
        rec.error = row.error
        rec.rho = row.rho


def known_root_stop(known: Sequence, tol: float, class_keys: bool = False) -> Callable:
    """Stopping rule ``max error < tol`` against known roots (test harness mode)."""
    if not tol > 0:
        raise ValueError("tol must be positive")

    def stop(rec: IterationRecord) -> bool:
        return record_error(rec, known, class_keys).error < tol

    return stop


def pre_convergence(errors: Sequence[float], floor: float) -> list:
    """Errors up to the point where they reach ``floor`` or stop improving.

    Errors at or below the floor, and a trailing plateau, are dominated by
    rounding and tell nothing about the order of convergence.
    """
    out = []
    for e in errors:
        if e <= floor:
            break
        out.append(e)
    while len(out) >= 2 and out[-1] >= out[-2]:
        out.pop()
    return out


def late_rho(errors: Sequence[float], floor: float = 1e-12, count: int = 3) -> float:
    """Mean of the last ``count`` order estimates before the error reaches ``floor``."""
    run = pre_convergence(errors, floor)
    rhos = [math.log(b) / math.log(a) for a, b in zip(run, run[1:]) if a < 1.0]
    if len(rhos) < count:
        raise DomainError(f"only {len(rhos)} order estimates above the floor {floor:g}")
    tail = rhos[-count:]
    return sum(tail) / len(tail)
