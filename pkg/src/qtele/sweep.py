"""Point evaluation, 2-D parameter sweeps and the figure presets."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .measures import (
    QuadratureSpec,
    average_fidelity_closed,
    average_fidelity_inertial,
    average_fidelity_quadrature,
    teleport_fidelity,
)
from .rindler import R_MAX, InputParams, input_concurrence
from .spin_model import ModelParams, ParamError
from .teleport import output_concurrence

PARAM_NAMES = ("J", "D", "T", "theta", "phi", "r")
ANGLE_NAMES = ("theta", "phi", "r")
DEFAULTS = {"J": 1.0, "D": 0.0, "T": 0.1, "theta": math.pi / 4, "phi": 0.0, "r": 0.0}
MAX_COUNT = 2001

T_RANGE = (0.01, 2.0)
D_RANGE = (0.0, 5.0)
THETA_RANGE = (0.0, math.pi)
R_RANGE = (0.0, R_MAX)


def _cin(m, p, q):
    return input_concurrence(p)


def _cout(m, p, q):
    return output_concurrence(m, p)


def _fidelity(m, p, q):
    return teleport_fidelity(m, p)


def _fa(m, p, q):
    return average_fidelity_closed(m, p.r)


def _fa1(m, p, q):
    return average_fidelity_inertial(m)


def _faq(m, p, q):
    return average_fidelity_quadrature(m, p.r, q)


QUANTITIES: dict[str, Callable[[ModelParams, InputParams, QuadratureSpec], float]] = {
    "cin": _cin,
    "cout": _cout,
    "fidelity": _fidelity,
    "fa": _fa,
    "fa1": _fa1,
    "faq": _faq,
}


def evaluate(quantity: str, params: Mapping[str, float], quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Evaluate ``quantity`` at one parameter point.

    Missing parameters take their :data:`DEFAULTS`. Raises :class:`ParamError`
    naming the offending parameter when a value is out of its domain.
    """
    if quantity not in QUANTITIES:
        raise ParamError(f"unknown quantity {quantity!r}; choose from {', '.join(QUANTITIES)}")
    full = {**DEFAULTS, **params}
    m = ModelParams(full["J"], full["D"], full["T"])
    p = InputParams(full["theta"], full["phi"], full["r"])
    return float(QUANTITIES[quantity](m, p, quad))


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.name not in PARAM_NAMES:
            raise ParamError(f"axis name must be one of {', '.join(PARAM_NAMES)}, got {self.name!r}")
        if not 2 <= self.count <= MAX_COUNT:
            raise ParamError(f"axis {self.name} count must be in [2, {MAX_COUNT}], got {self.count}")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.lo > self.hi:
            raise ParamError(f"axis {self.name} needs finite lo <= hi, got {self.lo}..{self.hi}")
        for value in (self.lo, self.hi):
            _check_param(self.name, value)

    @classmethod
    def parse(cls, text: str, degrees: bool = False) -> Axis:
        """Parse ``name:lo:hi:count``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise ParamError(f"axis must look like name:lo:hi:count, got {text!r}")
        name = parts[0]
        try:
            lo, hi, count = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError:
            raise ParamError(f"axis must look like name:lo:hi:count, got {text!r}") from None
        if degrees and name in ANGLE_NAMES:
            lo, hi = math.radians(lo), math.radians(hi)
        return cls(name, lo, hi, count)

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)

    def with_count(self, count: int) -> Axis:
        return Axis(self.name, self.lo, self.hi, count)


def _check_param(name: str, value: float) -> None:
    probe = {**DEFAULTS, name: value}
    ModelParams(probe["J"], probe["D"], probe["T"])
    InputParams(probe["theta"], probe["phi"], probe["r"])


@dataclass(frozen=True)
class SweepSpec:
    x: Axis
    y: Axis
    quantity: str
    fixed: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.x.name == self.y.name:
            raise ParamError(f"x and y axes must differ, both are {self.x.name!r}")
        if self.quantity not in QUANTITIES:
            raise ParamError(f"unknown quantity {self.quantity!r}; choose from {', '.join(QUANTITIES)}")
        unknown = set(self.fixed) - set(PARAM_NAMES)
        if unknown:
            raise ParamError(f"unknown fixed parameter(s): {', '.join(sorted(unknown))}")
        for name, value in self.fixed.items():
            _check_param(name, value)

    def fixed_params(self) -> dict[str, float]:
        """All non-axis parameters, defaults filled in, in canonical order."""
        full = {**DEFAULTS, **self.fixed}
        return {k: full[k] for k in PARAM_NAMES if k not in (self.x.name, self.y.name)}


@dataclass(frozen=True)
class FigurePreset:
    id: str
    caption: str
    spec: SweepSpec


def _preset(fid, caption, quantity, x, y, **fixed):
    return FigurePreset(fid, caption, SweepSpec(Axis(*x, 51), Axis(*y, 51), quantity, fixed))


PRESETS: dict[str, FigurePreset] = {
    p.id: p
    for p in (
        _preset("fig1", "Input concurrence vs amplitude and acceleration",
                "cin", ("theta", *THETA_RANGE), ("r", *R_RANGE), J=1.0, D=0.0, T=0.1, phi=0.0),
        _preset("fig2", "Output concurrence vs amplitude and acceleration, D = 0, T = 0.1",
                "cout", ("theta", *THETA_RANGE), ("r", *R_RANGE), J=1.0, D=0.0, T=0.1, phi=0.0),
        _preset("fig3", "Output concurrence vs temperature and acceleration, D = 0, J = 1, theta = pi/4",
                "cout", ("T", *T_RANGE), ("r", *R_RANGE), J=1.0, D=0.0, theta=math.pi / 4, phi=0.0),
        _preset("fig4", "Output concurrence vs acceleration and DM strength, T = 0.1, J = -1, theta = pi/4",
                "cout", ("r", *R_RANGE), ("D", *D_RANGE), J=-1.0, T=0.1, theta=math.pi / 4, phi=0.0),
        _preset("fig5", "Average fidelity vs acceleration and temperature, D = 0, J = 1",
                "fa", ("r", *R_RANGE), ("T", *T_RANGE), J=1.0, D=0.0, theta=math.pi / 4, phi=0.0),
        _preset("fig6", "Average fidelity vs acceleration and DM strength, T = 0.1, J = 1",
                "fa", ("r", *R_RANGE), ("D", *D_RANGE), J=1.0, T=0.1, theta=math.pi / 4, phi=0.0),
        _preset("fig7", "Average fidelity vs acceleration and DM strength, T = 0.1, J = -1",
                "fa", ("r", *R_RANGE), ("D", *D_RANGE), J=-1.0, T=0.1, theta=math.pi / 4, phi=0.0),
    )
}


def preset_spec(fid: str, grid: int | None = None) -> SweepSpec:
    try:
        spec = PRESETS[fid].spec
    except KeyError:
        raise ParamError(f"unknown figure {fid!r}; choose from {', '.join(PRESETS)}") from None
    if grid is not None:
        spec = SweepSpec(spec.x.with_count(grid), spec.y.with_count(grid), spec.quantity, dict(spec.fixed))
    return spec


def run_sweep(spec: SweepSpec, quad: QuadratureSpec = QuadratureSpec(), jobs: int = 1) -> np.ndarray:
    """Evaluate the grid; returns an array of shape ``(y.count, x.count)``."""
    xs, ys = spec.x.values(), spec.y.values()
    base = spec.fixed_params()

    def row(y: float) -> list[float]:
        return [evaluate(spec.quantity, {**base, spec.x.name: x, spec.y.name: y}, quad) for x in xs]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, ys))
    else:
        rows = [row(y) for y in ys]
    return np.array(rows, dtype=float)


def _fmt(value: float) -> str:
    return "%.17g" % value


def format_csv(spec: SweepSpec, values: np.ndarray) -> str:
    fixed = " ".join(f"{k}={_fmt(v)}" for k, v in spec.fixed_params().items())
    lines = [f"# qtele {spec.quantity} {fixed}", "x,y,value"]
    xs, ys = spec.x.values(), spec.y.values()
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(values[iy, ix])}")
    return "\n".join(lines) + "\n"


def read_csv(text: str) -> tuple[str, np.ndarray]:
    """Parse sweep output back into its header line and an ``(n, 3)`` array."""
    lines = text.splitlines()
    rows = [tuple(map(float, line.split(","))) for line in lines[2:] if line]
    return lines[0], np.array(rows, dtype=float)
