"""Deterministic in-process simulation of a server fleet storing an array code.

Each simulated server stores the t chunk values implied by its column: a
cell's value is the XOR of the database chunks of the parts it sums.  A
recovery session issues one read per column per recovery set, solves each
set's GF(2) system for the target part, and reports whether all surviving
sets agree.  Time is a simulated integer-microsecond clock: a response
arrives at base latency plus seeded uniform jitter, events are replayed in
(timestamp, kind, server) order, and identical (fleet, plan, seed) inputs
produce byte-identical transcripts.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParameterError
from .model import ArrayCode, RecoveryPlan
from .verify import verify_plan

__all__ = ["Fleet", "SetOutcome", "SessionTranscript", "SweepSummary", "retrieve", "availability_sweep"]

_REQUEST, _RESPONSE, _SOLVE, _VERDICT = 0, 1, 2, 3


def _per_server(value, m: int, name: str) -> tuple:
    if isinstance(value, (int, float)):
        return (value,) * m
    out = tuple(value)
    if len(out) != m:
        raise ParameterError(f"{name} needs one value per server ({m}), got {len(out)}")
    return out


@dataclass(frozen=True)
class Fleet:
    """An m-server fleet: the code, a seeded database, and per-server fault knobs."""

    code: ArrayCode
    seed: int
    chunk_width: int = 64
    base_latency_us: tuple[int, ...] = ()
    jitter_us: int = 250
    drop_probability: tuple[float, ...] = ()
    timeout_us: int = 10_000
    database: tuple[int, ...] = ()
    server_values: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.chunk_width < 1 or self.chunk_width % 4:
            raise ParameterError(f"chunk_width must be a positive multiple of 4, got {self.chunk_width}")
        if self.jitter_us < 0:
            raise ParameterError("jitter_us must be >= 0")
        m = self.code.m
        object.__setattr__(self, "base_latency_us", _per_server(self.base_latency_us or 1000, m, "base_latency_us"))
        object.__setattr__(self, "drop_probability", _per_server(self.drop_probability or 0.0, m, "drop_probability"))
        if any(not 0.0 <= q <= 1.0 for q in self.drop_probability):
            raise ParameterError("drop probabilities must lie in [0, 1]")
        if not self.database:
            rng = random.Random(self.seed * 0x9E3779B1 + 1)
            object.__setattr__(
                self, "database", tuple(rng.getrandbits(self.chunk_width) for _ in range(self.code.p))
            )
        elif len(self.database) != self.code.p:
            raise ParameterError(f"database needs one chunk per part ({self.code.p})")
        values = []
        for col in self.code.columns:
            cells = []
            for cell in col:
                chunk = 0
                for part in cell.parts():
                    chunk ^= self.database[part - 1]
                cells.append(chunk)
            values.append(tuple(cells))
        object.__setattr__(self, "server_values", tuple(values))

    def chunk_hex(self, value: int) -> str:
        return f"0x{value:0{self.chunk_width // 4}x}"


@dataclass(frozen=True)
class SetOutcome:
    columns: tuple[int, ...]
    faulted: bool
    value: int | None
    latency_us: int | None


@dataclass(frozen=True)
class SessionTranscript:
    """One part's recovery session: per-set outcomes plus the replayable event log."""

    part: int
    status: str
    agreement: bool
    value: int | None
    sets: tuple[SetOutcome, ...]
    events: tuple[dict, ...]

    def jsonl(self) -> str:
        return "\n".join(json.dumps(e, sort_keys=True, separators=(",", ":")) for e in self.events) + "\n"


def _solve_set(code: ArrayCode, values: Sequence[Sequence[int]], columns: Iterable[int], part: int) -> int:
    # eliminate over (coefficient bits, chunk) pairs, then reduce e_part
    pivots: dict[int, tuple[int, int]] = {}
    for j in sorted(columns):
        for cell, chunk in zip(code.columns[j - 1], values[j - 1]):
            bits, val = cell.bits, chunk
            while bits:
                high = bits.bit_length() - 1
                row = pivots.get(high)
                if row is None:
                    pivots[high] = (bits, val)
                    break
                bits ^= row[0]
                val ^= row[1]
    bits, val = 1 << (part - 1), 0
    while bits:
        high = bits.bit_length() - 1
        row = pivots.get(high)
        if row is None:
            raise ParameterError(f"recovery set does not span part {part}")
        bits ^= row[0]
        val ^= row[1]
    return val


def retrieve(
    fleet: Fleet, plan: RecoveryPlan, part: int, failed: Iterable[int] = ()
) -> SessionTranscript:
    """Replay one recovery session for `part`; servers in `failed` never answer."""
    code = fleet.code
    if not 1 <= part <= code.p:
        raise ParameterError(f"part {part} out of range 1..{code.p}")
    down = {int(j) for j in failed}
    if any(not 1 <= j <= code.m for j in down):
        raise ParameterError(f"failed server index out of range 1..{code.m}")
    sets = plan.sets(part)
    check = verify_plan(code, RecoveryPlan({part: sets}))
    if not check.ok:
        raise ParameterError(f"invalid plan: {check.violation}")

    rng = random.Random(fleet.seed * 1_000_003 + part)
    events: list[tuple[tuple[int, int, int], dict]] = []
    outcomes = []
    for set_idx, columns in enumerate(sets, start=1):
        ordered = sorted(columns)
        missing = []
        latest = 0
        for server in ordered:
            jitter = rng.randrange(fleet.jitter_us + 1) if fleet.jitter_us else 0
            dropped = rng.random() < fleet.drop_probability[server - 1]
            events.append(
                (
                    (0, _REQUEST, server),
                    {"event": "request", "time": 0, "part": part, "set": set_idx, "server": server},
                )
            )
            if server in down or dropped:
                missing.append(server)
                continue
            arrival = fleet.base_latency_us[server - 1] + jitter
            latest = max(latest, arrival)
            events.append(
                (
                    (arrival, _RESPONSE, server),
                    {
                        "event": "response",
                        "time": arrival,
                        "part": part,
                        "set": set_idx,
                        "server": server,
                        "cells": [fleet.chunk_hex(v) for v in fleet.server_values[server - 1]],
                    },
                )
            )
        solve: dict = {"event": "solve", "part": part, "set": set_idx, "columns": ordered}
        if missing:
            outcomes.append(SetOutcome(tuple(ordered), True, None, None))
            solve.update(time=fleet.timeout_us, status="faulted", missing=missing)
            events.append(((fleet.timeout_us, _SOLVE, set_idx), solve))
        else:
            value = _solve_set(code, fleet.server_values, columns, part)
            outcomes.append(SetOutcome(tuple(ordered), False, value, latest))
            solve.update(time=latest, status="ok", value=fleet.chunk_hex(value))
            events.append(((latest, _SOLVE, set_idx), solve))

    solved = [o.value for o in outcomes if not o.faulted]
    agreement = len(solved) > 0 and len(set(solved)) == 1
    status = "ok" if solved else "retrieval-failed"
    value = solved[0] if agreement else None
    end = max((key[0] for key, _ in events), default=0)
    verdict = {
        "event": "verdict",
        "time": end,
        "part": part,
        "status": status,
        "agreement": agreement,
        "sets_ok": len(solved),
        "sets_total": len(sets),
    }
    if value is not None:
        verdict["value"] = fleet.chunk_hex(value)
    events.append(((end, _VERDICT, 0), verdict))
    events.sort(key=lambda pair: pair[0])
    return SessionTranscript(
        part=part,
        status=status,
        agreement=agreement,
        value=value,
        sets=tuple(outcomes),
        events=tuple(e for _, e in events),
    )


@dataclass(frozen=True)
class SweepSummary:
    """Surviving-recovery-set statistics over seeded random failure draws."""

    trials: int
    failures_per_trial: int
    parts: tuple[int, ...]
    per_part_min: tuple[int, ...]
    per_part_mean: tuple[Fraction, ...]
    overall_min: int
    status: str

    def to_json(self) -> str:
        payload = {
            "trials": self.trials,
            "failures_per_trial": self.failures_per_trial,
            "overall_min": self.overall_min,
            "status": self.status,
            "per_part": [
                {"part": part, "min": lo, "mean": str(mean), "mean_decimal": float(mean)}
                for part, lo, mean in zip(self.parts, self.per_part_min, self.per_part_mean)
            ],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def availability_sweep(
    fleet: Fleet, plan: RecoveryPlan, trials: int, failures_per_trial: int
) -> SweepSummary:
    """Seeded sweep over random failed-server subsets of a fixed size.

    For every part, at least k - f recovery sets survive any f failures
    because the sets are pairwise disjoint.  f = m is accepted and reports
    status "retrieval-failed" (no set survives).
    """
    code = fleet.code
    if trials < 1:
        raise ParameterError(f"need trials >= 1, got {trials}")
    if not 0 <= failures_per_trial <= code.m:
        raise ParameterError(f"failures_per_trial out of range 0..{code.m}")
    check = verify_plan(code, plan)
    if not check.ok:
        raise ParameterError(f"invalid plan: {check.violation}")
    parts = plan.parts()
    if not parts:
        raise ParameterError("plan covers no parts")

    rng = random.Random(fleet.seed * 7_368_787 + failures_per_trial)
    minima = {part: plan.k_for(part) for part in parts}
    totals = {part: 0 for part in parts}
    for _ in range(trials):
        down = set(rng.sample(range(1, code.m + 1), failures_per_trial))
        for part in parts:
            surviving = sum(1 for columns in plan.sets(part) if not (columns & down))
            totals[part] += surviving
            if surviving < minima[part]:
                minima[part] = surviving
    per_part_min = tuple(minima[part] for part in parts)
    per_part_mean = tuple(Fraction(totals[part], trials) for part in parts)
    overall = min(per_part_min)
    return SweepSummary(
        trials=trials,
        failures_per_trial=failures_per_trial,
        parts=parts,
        per_part_min=per_part_min,
        per_part_mean=per_part_mean,
        overall_min=overall,
        status="ok" if overall > 0 else "retrieval-failed",
    )
