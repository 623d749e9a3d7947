"""Sweep tables, verification reports and their CSV/JSON serialization.

CSV files carry metadata as '#'-prefixed comment lines followed by a
header row and 12-significant-digit values; identical inputs serialize to
byte-identical files.  JSON round-trips at full float precision.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .core import WqedError
from .three_level import cross_g1
from .two_level import g1_fock_two_photon

__all__ = [
    "SweepTable",
    "CheckEntry",
    "VerificationReport",
    "figure_phase_dataset",
    "write_csv",
    "read_csv",
    "write_json",
    "read_json",
]


class IoFailure(WqedError):
    """Destination could not be written or parsed back."""


@dataclass
class SweepTable:
    """One sweep axis plus named observable columns of equal length."""

    axis_name: str
    axis: np.ndarray
    columns: dict[str, np.ndarray]
    metadata: dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.axis = np.asarray(self.axis, dtype=float)
        if self.axis.ndim != 1:
            raise ValueError("axis must be one-dimensional")
        if self.axis.size > 1 and not np.all(np.diff(self.axis) > 0):
            raise ValueError("axis must be strictly increasing")
        cols = {}
        for name, values in self.columns.items():
            arr = np.asarray(values, dtype=float)
            if arr.shape != self.axis.shape:
                raise ValueError(f"column {name!r} length mismatch")
            cols[name] = arr
        self.columns = cols

    @property
    def names(self) -> list[str]:
        return [self.axis_name, *self.columns.keys()]

    def row(self, i: int) -> list[float]:
        return [float(self.axis[i])] + [float(c[i]) for c in self.columns.values()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SweepTable):
            return NotImplemented
        return (
            self.axis_name == other.axis_name
            and np.array_equal(self.axis, other.axis)
            and list(self.columns) == list(other.columns)
            and all(np.array_equal(self.columns[k], other.columns[k]) for k in self.columns)
            and self.metadata == other.metadata
        )


@dataclass(frozen=True)
class CheckEntry:
    """One analytic-vs-numeric comparison.

    ``mode`` declares how the tolerance applies: 'abs' for a plain
    difference, 'rel' for a difference scaled by the analytic value,
    'bound' for a one-sided |numeric| <= tolerance check.
    """

    check_id: str
    reference: str
    analytic: float
    numeric: float
    tolerance: float
    mode: str = "abs"

    @property
    def deviation(self) -> float:
        if self.mode == "bound":
            return abs(self.numeric)
        d = abs(self.analytic - self.numeric)
        if self.mode == "rel":
            scale = abs(self.analytic)
            return d / scale if scale > 0 else math.inf
        return d

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass
class VerificationReport:
    entries: list[CheckEntry] = field(default_factory=list)
    metadata: dict[str, object] = field(default_factory=dict)

    def add(self, *args, **kwargs) -> CheckEntry:
        entry = CheckEntry(*args, **kwargs)
        self.entries.append(entry)
        return entry

    @property
    def n_passed(self) -> int:
        return sum(e.passed for e in self.entries)

    @property
    def n_failed(self) -> int:
        return len(self.entries) - self.n_passed

    @property
    def all_passed(self) -> bool:
        return self.n_failed == 0

    def summary_lines(self) -> list[str]:
        lines = []
        for e in self.entries:
            status = "pass" if e.passed else "FAIL"
            lines.append(
            f"[{status}] {e.check_id}: analytic={e.analytic:.6g} "
            f"numeric={e.numeric:.6g} dev={e.deviation:.3g} tol={e.tolerance:g} ({e.mode})"
            )
        lines.append(f"{self.n_passed}/{len(self.entries)} checks passed")
        return lines

    def to_dict(self) -> dict:
        return {
            "metadata": dict(self.metadata),
            "entries": [
                {
                    "check_id": e.check_id,
                    "reference": e.reference,
                    "analytic": e.analytic,
                    "numeric": e.numeric,
                    "tolerance": e.tolerance,
                    "mode": e.mode,
                    "deviation": e.deviation,
                    "status": "pass" if e.passed else "fail",
                }
                for e in self.entries
            ],
            "summary": {
                "passed": self.n_passed,
                "failed": self.n_failed,
                "total": len(self.entries),
            },
        }


def figure_phase_dataset(
    gamma: float = 0.1,
    intensity: float = 0.0125,
    grid: np.ndarray | None = None,
    drive_detuning: float = 0.0,
    vg: float = 1.0,
) -> SweepTable:
    """Kerr and cross-Kerr phase shifts versus probe detuning.

    Columns: linear phase, two-photon Kerr phase, their total, and the
    cross-Kerr shift of a probe by a matched single-photon drive
    (gamma_d = gamma, I_1d = intensity).  A zero-detuning grid point is
    filled with the one-sided limit from above and flagged in the
    ``resonance_limit`` column (+1 above, -1 below, 0 elsewhere).
    """
    if grid is None:
        grid = np.linspace(-1.0, 1.0, 401)
    grid = np.asarray(grid, dtype=float)
    length = 1.0 / intensity
    phi1 = np.empty_like(grid)
    phi2 = np.empty_like(grid)
    tot = np.empty_like(grid)
    dpd = np.empty_like(grid)
    flag = np.zeros_like(grid)
    from .core import FockInput

    drive = FockInput(n=1, length=length)
    for i, dp in enumerate(grid):
        limit = "above" if dp == 0.0 else None
        fock = g1_fock_two_photon(dp, gamma, length, vg=vg, resonance_limit=limit)
        cross = cross_g1(
            dp, drive_detuning, gamma, gamma, drive, vg=vg, resonance_limit=limit
        )
        phi1[i] = fock.phase.linear
        phi2[i] = fock.phase.nonlinear
        tot[i] = fock.phase.total
        dpd[i] = cross.phase.nonlinear
        if dp == 0.0:
            flag[i] = 1.0
    return SweepTable(
        axis_name="detuning",
        axis=grid,
        columns={
            "phi_linear": phi1,
            "phi_kerr": phi2,
            "phi_total": tot,
            "delta_phi_cross": dpd,
            "resonance_limit": flag,
        },
        metadata={
            "gamma_p": gamma,
            "gamma_d": gamma,
            "intensity": intensity,
            "drive_detuning": drive_detuning,
            "vg": vg,
        },
    )


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_csv(table: SweepTable, destination) -> None:
    """Write a sweep table; '#' comments carry sorted metadata."""
    try:
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"# wqed {__version__}\n")
            for key in sorted(table.metadata):
                fh.write(f"# {key} = {table.metadata[key]!r}\n")
            fh.write(",".join(table.names) + "\n")
            for i in range(table.axis.size):
                fh.write(",".join(_fmt(v) for v in table.row(i)) + "\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def read_csv(source) -> SweepTable:
    """Read back a table written by write_csv (12-digit precision)."""
    metadata: dict[str, object] = {}
    names: list[str] | None = None
    rows: list[list[float]] = []
    try:
        with open(source, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    body = line[1:].strip()
                    if "=" in body:
                        key, _, val = body.partition("=")
                        try:
                            metadata[key.strip()] = eval(val.strip(), {"__builtins__": {}})
                        except Exception:
                            metadata[key.strip()] = val.strip()
                    continue
                if names is None:
                    names = line.split(",")
                    continue
                rows.append([float(tok) for tok in line.split(",")])
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    if names is None:
        raise IoFailure("no header row found")
    data = np.array(rows, dtype=float) if rows else np.zeros((0, len(names)))
    return SweepTable(
        axis_name=names[0],
        axis=data[:, 0] if rows else np.zeros(0),
        columns={n: data[:, i + 1] if rows else np.zeros(0) for i, n in enumerate(names[1:])},
        metadata=metadata,
    )


def write_json(obj: SweepTable | VerificationReport, destination) -> None:
    try:
        if isinstance(obj, SweepTable):
            payload = {
                "metadata": dict(obj.metadata),
                "axis": {"name": obj.axis_name, "values": obj.axis.tolist()},
                "columns": {k: v.tolist() for k, v in obj.columns.items()},
            }
        else:
            payload = obj.to_dict()
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def read_json(source) -> SweepTable:
    try:
        with open(source, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise IoFailure(str(exc)) from exc
    return SweepTable(
        axis_name=payload["axis"]["name"],
        axis=np.array(payload["axis"]["values"], dtype=float),
        columns={k: np.array(v, dtype=float) for k, v in payload["columns"].items()},
        metadata=payload.get("metadata", {}),
    )
