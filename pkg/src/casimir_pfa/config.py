"""Run configuration: an INI document with flag overrides.

Sections and keys::

    [materials]        name = drude 9.0 0.035 | constant 2.5 | ideal
                              | oscillators f w0 g; f w0 g | table path.dat
    [stack]            regions = m1, m2, m3, m4, m5   (or m1, m3, m5)
                       d2 = 0, d4 = 0                 (nm, "inf" allowed)
    [geometry]         kind = sphere_substrate, plus R, L, B, A, gamma, delta,
                       alpha (rad) or alpha_deg; angle lists give batch runs
    [sweep]            min, max, points, spacing = log|linear, abscissa = x|z, jobs
    [output]           path, format = csv|json, magnitude, universal, local_exponent
    [tolerances]       quad_tol, oracle_tol
    [provider]         kind = stack|power_law, C, zeta, points

The materials ``gold``, ``vacuum`` and ``ideal_metal`` are always defined.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import materials as M
from . import shapes as S
from .errors import ConfigurationError
from .planar import LayerStack

__all__ = ["Sweep", "Output", "RunConfig", "load_config", "parse_material", "build_geometries"]

BUILTIN_MATERIALS = {"gold": M.GOLD, "vacuum": M.VACUUM, "ideal_metal": M.IDEAL_METAL}


@dataclass(frozen=True)
class Sweep:
    min: float
    max: float
    points: int
    spacing: str = "log"
    abscissa: str = "x"
    jobs: int = 1

    def __post_init__(self):
        if not self.min < self.max:
            raise ConfigurationError(f"sweep needs min < max, got {self.min} >= {self.max}")
        if self.points < 2:
            raise ConfigurationError("sweep needs at least 2 points")
        if self.spacing not in ("log", "linear"):
            raise ConfigurationError(f"spacing must be log or linear, got {self.spacing!r}")
        if self.spacing == "log" and not self.min > 0:
            raise ConfigurationError("log spacing needs min > 0")
        if self.abscissa not in ("x", "z"):
            raise ConfigurationError(f"abscissa must be x or z, got {self.abscissa!r}")
        if self.jobs < 1:
            raise ConfigurationError("jobs must be >= 1")

    def grid(self) -> list[float]:
        n = self.points
        if self.spacing == "linear":
            step = (self.max - self.min) / (n - 1)
            return [self.min + i * step for i in range(n - 1)] + [self.max]
        lo, hi = math.log(self.min), math.log(self.max)
        inner = [math.exp(lo + (hi - lo) * i / (n - 1)) for i in range(1, n - 1)]
        return [self.min, *inner, self.max]


@dataclass(frozen=True)
class Output:
    path: str | None = None
    format: str = "csv"
    magnitude: bool = False
    universal: bool = True
    local_exponent: bool = False

    def __post_init__(self):
        if self.format not in ("csv", "json"):
            raise ConfigurationError(f"format must be csv or json, got {self.format!r}")


@dataclass(frozen=True)
class RunConfig:
    materials: dict
    stack: LayerStack
    stack_names: tuple
    geometry: dict
    sweep: Sweep
    output: Output
    quad_tol: float = 1e-8
    oracle_tol: float = 1e-9
    provider: dict = field(default_factory=dict)
    source: str | None = None


def parse_material(text: str, base: Path | None = None):
    """Parse one ``[materials]`` value into a dielectric model."""
    parts = text.split(None, 1)
    if not parts:
        raise ConfigurationError("empty material definition")
    kind, rest = parts[0].lower(), (parts[1] if len(parts) > 1 else "")
    try:
        if kind == "ideal":
            return M.IDEAL_METAL
        if kind == "constant":
            return M.Constant(float(rest))
        if kind == "drude":
            vals = [float(v) for v in rest.split()]
            return M.Drude(*vals)
        if kind == "oscillators":
            terms = tuple(tuple(float(v) for v in chunk.split()) for chunk in rest.split(";") if chunk.strip())
            return M.OscillatorSum(terms)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"bad {kind} parameters {rest!r}: {exc}") from None
    if kind == "table":
        p = Path(rest.strip())
        if base is not None and not p.is_absolute():
            p = base / p
        try:
            return M.load_material_table(p)
        except FileNotFoundError:
            raise ConfigurationError(f"material table not found: {p}") from None
    raise ConfigurationError(f"unknown material kind {kind!r}")


def _float(v: str, what: str) -> float:
    try:
        return float(v)
    except ValueError:
        raise ConfigurationError(f"{what}: expected a number, got {v!r}") from None


def _bool(v: str) -> bool:
    t = v.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigurationError(f"expected a boolean, got {v!r}")


def _apply_overrides(cp: configparser.ConfigParser, overrides):
    for item in overrides:
        if "=" not in item:
            raise ConfigurationError(f"--param expects key=value, got {item!r}")
        key, value = (s.strip() for s in item.split("=", 1))
        section, _, name = key.rpartition(".")
        section = section or "geometry"
        if not cp.has_section(section):
            cp.add_section(section)
        cp.set(section, name, value)


def load_config(path=None, overrides=(), defaults: dict | None = None) -> RunConfig:
    """Read an INI file (optional), apply ``section.key=value`` overrides, and type-check.

    ``defaults`` supplies per-command fallbacks as ``{section: {key: value}}``.
    """
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keep R and L distinct from r and l
    for sec, kv in (defaults or {}).items():
        cp.add_section(sec)
        for k, v in kv.items():
            cp.set(sec, k, str(v))
    base = None
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"config file not found: {path}")
        try:
            cp.read(path, encoding="utf-8")
        except configparser.Error as exc:
            raise ConfigurationError(f"{path}: {exc}") from None
        base = path.parent
    _apply_overrides(cp, overrides)

    mats = dict(BUILTIN_MATERIALS)
    if cp.has_section("materials"):
        for name, text in cp.items("materials"):
            mats[name] = parse_material(text, base)

    st = dict(cp.items("stack")) if cp.has_section("stack") else {}
    names = tuple(n.strip() for n in st.get("regions", "gold, vacuum, gold").split(","))
    for n in names:
        if n not in mats:
            raise ConfigurationError(f"stack refers to undefined material {n!r}")
    models = [mats[n] for n in names]
    if len(models) == 3:
        stack = LayerStack.three_region(*models)
    elif len(models) == 5:
        d2 = _float(st.get("d2", "0"), "stack.d2")
        d4 = _float(st.get("d4", "0"), "stack.d4")
        stack = LayerStack(*models, d2=d2, d4=d4)
    else:
        raise ConfigurationError("stack.regions needs 3 or 5 material names")

    geo = dict(cp.items("geometry")) if cp.has_section("geometry") else {}

    sw = dict(cp.items("sweep")) if cp.has_section("sweep") else {}
    sweep = Sweep(
        _float(sw.get("min", "0.01"), "sweep.min"),
        _float(sw.get("max", "1"), "sweep.max"),
        int(_float(sw.get("points", "25"), "sweep.points")),
        sw.get("spacing", "log"),
        sw.get("abscissa", "x"),
        int(_float(sw.get("jobs", "1"), "sweep.jobs")),
    )
    out = dict(cp.items("output")) if cp.has_section("output") else {}
    output = Output(
        out.get("path") or None,
        out.get("format", "csv"),
        _bool(out.get("magnitude", "false")),
        _bool(out.get("universal", "true")),
        _bool(out.get("local_exponent", "false")),
    )
    tol = dict(cp.items("tolerances")) if cp.has_section("tolerances") else {}
    prov = dict(cp.items("provider")) if cp.has_section("provider") else {}
    return RunConfig(
        materials=mats,
        stack=stack,
        stack_names=names,
        geometry=geo,
        sweep=sweep,
        output=output,
        quad_tol=_float(tol.get("quad_tol", "1e-8"), "tolerances.quad_tol"),
        oracle_tol=_float(tol.get("oracle_tol", "1e-9"), "tolerances.oracle_tol"),
        provider=prov,
        source=str(path) if path is not None else None,
    )


def _angles(geo: dict) -> list[float | None]:
    if "alpha_deg" in geo:
        return [math.radians(_float(v, "geometry.alpha_deg")) for v in geo["alpha_deg"].split(",")]
    if "alpha" in geo:
        return [_float(v, "geometry.alpha") for v in geo["alpha"].split(",")]
    return [None]


def build_geometries(geo: dict) -> list:
    """Geometry objects described by a ``[geometry]`` section (one per angle)."""
    kind = geo.get("kind")
    if kind is None:
        raise ConfigurationError("geometry.kind is required (or pass --geometry)")
    cls = S.GEOMETRIES.get(kind)
    if cls is None:
        raise ConfigurationError(f"unknown geometry {kind!r}; choose from {', '.join(sorted(S.GEOMETRIES))}")
    names = [f.name for f in fields(cls)]
    out = []
    for alpha in _angles(geo):
        kw = {}
        for f in names:
            if f == "alpha":
                if alpha is None:
                    raise ConfigurationError(f"{kind} needs alpha or alpha_deg")
                kw[f] = alpha
            elif f in geo:
                kw[f] = _float(geo[f], f"geometry.{f}")
            elif f == "gamma":
                raise ConfigurationError(f"{kind} needs gamma")
            else:
                kw[f] = 1.0
        try:
            out.append(cls(**kw))
        except ValueError as exc:
            raise ConfigurationError(f"invalid {kind} parameters: {exc}") from None
    return out
