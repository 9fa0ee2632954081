"""Experiment configuration: TOML file -> nested dataclasses.

Schema (all sections optional except [group])::

    seed = 0
    [group]      label, c            (Gamma_c)  or  generators = [[a,b,c,d], ...]
    [orbit]      T_max, T_grid = [..] or grid_decades = [lo, hi] + grid_points
    [ps]         s_offset ("auto" -> 1/log T_max), fourier_max, stability_T
    [sectors]    harmonics = [[n,k], ...], ratio_tol
    [[affine]]   mode, v, w, n_target, N, K = [..], y, q = [..], scaling_tol, bound_factor
    [congruence] moduli = [..], ramification, spectral_gap, coset_T, sigma_factor
    [specfun]    enabled, quick
    [checks]     delta_agreement, r_squared_min, mu_stability_tol
    [output]     dir
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .core import GroupElement
from .orbit import GroupPresentation, gamma_c


class ConfigError(ValueError):
    pass


@dataclass
class GroupConfig:
    label: str = "gamma4"
    c: int | None = 4
    generators: list | None = None

    def presentation(self) -> GroupPresentation:
        if self.generators:
            gens = tuple(GroupElement(*g) for g in self.generators)
            return GroupPresentation(gens, label=self.label)
        return gamma_c(self.c)


@dataclass
class OrbitConfig:
    T_max: float = 1e3
    T_grid: list | None = None
    grid_decades: tuple = (1.0, 3.0)
    grid_points: int = 11

    def grid(self) -> list[float]:
        if self.T_grid:
            return [float(x) for x in self.T_grid]
        lo, hi = self.grid_decades
        return [float(x) for x in np.logspace(lo, hi, self.grid_points)]


@dataclass
class PSConfig:
    s_offset: float | str = "auto"
    fourier_max: int = 4
    stability_T: float | None = None     # compare mu^ at this T and at T_max


@dataclass
class SectorConfig:
    harmonics: list = field(default_factory=lambda: [[1, 0], [0, 1], [1, 1], [2, 0]])
    ratio_tol: float = 0.1


@dataclass
class AffineBlock:
    mode: str = "lower-bound"
    v: tuple = (1, 0)
    w: tuple = (0, 3)
    n_target: int | None = None          # default 2T
    N: float | None = None               # default 4T (lower-bound) or 2T (vector-window)
    K: list = field(default_factory=lambda: [10, 20, 40])
    y: tuple | None = None               # default: row of an element with |row| ~ T/2
    q: list = field(default_factory=lambda: [1])
    scaling_tol: float = 0.2
    bound_factor: float = 5.0


@dataclass
class CongruenceConfig:
    moduli: list = field(default_factory=lambda: [1])
    ramification: int = 1
    spectral_gap: float = 5 / 6
    coset_T: float | None = None
    sigma_factor: float = 5.0


@dataclass
class SpecfunConfig:
    enabled: bool = True
    quick: bool = True


@dataclass
class ChecksConfig:
    delta_agreement: float = 0.02
    r_squared_min: float = 0.999
    mu_stability_tol: float = 0.05


@dataclass
class ExperimentConfig:
    group: GroupConfig = field(default_factory=GroupConfig)
    orbit: OrbitConfig = field(default_factory=OrbitConfig)
    ps: PSConfig = field(default_factory=PSConfig)
    sectors: SectorConfig = field(default_factory=SectorConfig)
    affine: list = field(default_factory=list)
    congruence: CongruenceConfig = field(default_factory=CongruenceConfig)
    specfun: SpecfunConfig = field(default_factory=SpecfunConfig)
    checks: ChecksConfig = field(default_factory=ChecksConfig)
    output_dir: str = "out"
    seed: int = 0

    def validate(self) -> "ExperimentConfig":
        g = self.group
        if not g.generators and (g.c is None or int(g.c) < 2):
            raise ConfigError("group needs generators or an integer c >= 2")
        if self.orbit.T_max < 2 ** 0.5:
            raise ConfigError("T_max must be at least sqrt(2)")
        grid = self.orbit.grid()
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError("T grid must be increasing")
        if grid and grid[-1] > self.orbit.T_max:
            raise ConfigError("T grid exceeds T_max")
        for q in self.congruence.moduli:
            if int(q) < 1:
                raise ConfigError(f"modulus {q} must be >= 1")
        for blk in self.affine:
            if blk.mode not in ("lower-bound", "vector-window"):
                raise ConfigError(f"unknown affine mode {blk.mode!r}")
            if any(int(q) < 1 for q in blk.q):
                raise ConfigError("affine moduli must be >= 1")
        if isinstance(self.ps.s_offset, str) and self.ps.s_offset != "auto":
            raise ConfigError("ps.s_offset must be a number or 'auto'")
        return self


_SECTIONS = {"group": GroupConfig, "orbit": OrbitConfig, "ps": PSConfig,
             "sectors": SectorConfig, "congruence": CongruenceConfig,
             "specfun": SpecfunConfig, "checks": ChecksConfig}


def _build(cls, data: dict, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"[{where}] must be a table")
    known = set(cls.__dataclass_fields__)
    extra = set(data) - known
    if extra:
        raise ConfigError(f"unknown keys in [{where}]: {sorted(extra)}")
    return cls(**data)


def config_from_dict(data: dict) -> ExperimentConfig:
    data = dict(data)
    kw = {}
    for name, cls in _SECTIONS.items():
        if name in data:
            kw[name] = _build(cls, data.pop(name), name)
    if "affine" in data:
        kw["affine"] = [_build(AffineBlock, b, "affine") for b in data.pop("affine")]
    if "output" in data:
        out = data.pop("output")
        kw["output_dir"] = out.get("dir", "out")
    if "seed" in data:
        kw["seed"] = int(data.pop("seed"))
    if data:
        raise ConfigError(f"unknown top-level keys: {sorted(data)}")
    if "group" not in kw:
        raise ConfigError("missing [group] section")
    try:
        return ExperimentConfig(**kw).validate()
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def load_config(path) -> ExperimentConfig:
    try:
        with open(Path(path), "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    return config_from_dict(data)
