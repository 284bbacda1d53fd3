"""Dielectric response on the imaginary frequency axis.

Frequencies are photon energies in eV (hbar = 1). Every model returns a
real ``eps(i xi) >= 1`` for ``xi > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .errors import ConfigurationError, DomainError, MaterialParseError, ValidationError

__all__ = [
    "IdealMetal",
    "Constant",
    "Drude",
    "OscillatorSum",
    "Tabulated",
    "DielectricModel",
    "IDEAL_METAL",
    "VACUUM",
    "GOLD",
    "epsilon_iw",
    "fresnel_r",
    "load_material_table",
    "frequency_scale",
]


@dataclass(frozen=True)
class IdealMetal:
    """Perfect reflector. Has no finite permittivity; see :func:`fresnel_r`."""

    def epsilon(self, xi):
        raise DomainError("IdealMetal has no finite eps(i xi); use fresnel_r")


@dataclass(frozen=True)
class Constant:
    eps_s: float = 1.0

    def __post_init__(self):
        if not self.eps_s >= 1.0:
            raise ConfigurationError(f"Constant eps_s must be >= 1, got {self.eps_s}")

    def epsilon(self, xi):
        if np.ndim(xi):
            return np.full(np.shape(xi), float(self.eps_s))
        return float(self.eps_s)


@dataclass(frozen=True)
class Drude:
    """Free-electron response ``1 + omega_p**2 / (xi * (xi + gamma))``."""

    omega_p: float
    gamma: float = 0.0

    def __post_init__(self):
        if not self.omega_p > 0:
            raise ConfigurationError(f"Drude omega_p must be > 0, got {self.omega_p}")
        if not self.gamma >= 0:
            raise ConfigurationError(f"Drude gamma must be >= 0, got {self.gamma}")

    def epsilon(self, xi):
        return 1.0 + self.omega_p**2 / (xi * (xi + self.gamma))


@dataclass(frozen=True)
class OscillatorSum:
    """Sum of damped oscillators.

    Each term is ``(strength, resonance, damping)`` in (eV^2, eV, eV) and
    contributes ``strength / (resonance**2 + xi**2 + damping * xi)``.
    A term with zero resonance is a Drude term.
    """

    terms: tuple

    def __post_init__(self):
        terms = tuple(tuple(float(v) for v in t) for t in self.terms)
        for t in terms:
            if len(t) != 3:
                raise ConfigurationError(f"oscillator term needs 3 values, got {t}")
            f, w0, g = t
            if f < 0 or w0 < 0 or g < 0:
                raise ConfigurationError(f"oscillator parameters must be non-negative: {t}")
        object.__setattr__(self, "terms", terms)

    def epsilon(self, xi):
        out = 1.0
        for f, w0, g in self.terms:
            out = out + f / (w0 * w0 + xi * xi + g * xi)
        return out


@dataclass(frozen=True)
class Tabulated:
    """Sampled ``eps(i xi)``; log-log interpolation, clamped outside the range.

    Below the first sample the first value is used; above the last sample the
    medium is treated as vacuum (``eps = 1``).
    """

    xi: tuple
    eps: tuple
    source: str | None = None

    def __post_init__(self):
        xi = tuple(float(v) for v in self.xi)
        eps = tuple(float(v) for v in self.eps)
        if len(xi) == 0:
            raise ConfigurationError("Tabulated model has no samples")
        if len(xi) != len(eps):
            raise ConfigurationError("xi and eps must have the same length")
        if any(v <= 0 for v in xi):
            raise ValidationError("xi samples must be > 0", self.source)
        if any(v < 1 for v in eps):
            raise ValidationError("eps samples must be >= 1", self.source)
        if any(b <= a for a, b in zip(xi, xi[1:])):
            raise ValidationError("xi samples must be strictly increasing", self.source)
        if any(b > a for a, b in zip(eps, eps[1:])):
            raise ValidationError("eps samples must be non-increasing in xi", self.source)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "_lx", np.log(xi))
        object.__setattr__(self, "_le", np.log(eps))

    def epsilon(self, xi):
        lx = np.log(xi)
        x = np.asarray(xi)
        val = np.exp(np.interp(lx, self._lx, self._le))
        val = np.where(x < self.xi[0], self.eps[0], val)
        val = np.where(x > self.xi[-1], 1.0, val)
        return float(val) if np.ndim(val) == 0 else val

    def __eq__(self, other):
        return isinstance(other, Tabulated) and (self.xi, self.eps) == (other.xi, other.eps)

    def __hash__(self):
        return hash((self.xi, self.eps))


DielectricModel = Union[IdealMetal, Constant, Drude, OscillatorSum, Tabulated]

IDEAL_METAL = IdealMetal()
VACUUM = Constant(1.0)
#: Drude stand-in for gold used throughout the examples and tests.
GOLD = Drude(omega_p=9.0, gamma=0.035)


def epsilon_iw(model: DielectricModel, xi):
    """Return ``eps(i xi)`` for ``xi > 0`` (eV).

    Raises
    ------
    DomainError
        If ``xi <= 0`` or the model is an ideal metal.
    """
    if np.any(np.asarray(xi) <= 0):
        raise DomainError(f"xi must be > 0, got {xi}")
    if isinstance(model, IdealMetal):
        raise DomainError("IdealMetal has no finite eps(i xi); use fresnel_r")
    return model.epsilon(xi)


def fresnel_r(eps_i, eps_j) -> float:
    """Non-retarded interface reflection ``(eps_j - eps_i) / (eps_j + eps_i)``.

    Either argument may be an :class:`IdealMetal` instance: as medium ``j`` it
    gives +1 and as medium ``i`` it gives -1.
    """
    im_i = isinstance(eps_i, IdealMetal)
    im_j = isinstance(eps_j, IdealMetal)
    if im_i and im_j:
        raise DomainError("reflection between two ideal metals is undefined")
    if im_j:
        return 1.0
    if im_i:
        return -1.0
    return (eps_j - eps_i) / (eps_j + eps_i)


def _eps_or_marker(model, xi):
    return model if isinstance(model, IdealMetal) else model.epsilon(xi)


def reflection(model_i: DielectricModel, model_j: DielectricModel, xi) -> float:
    """``fresnel_r`` between two models evaluated at ``i xi``."""
    return fresnel_r(_eps_or_marker(model_i, xi), _eps_or_marker(model_j, xi))


def frequency_scale(*models: DielectricModel) -> float:
    """Characteristic response energy used to map the frequency axis.

    The largest plasma-like energy among the models, never below 1 eV.
    """
    scale = 1.0
    for m in models:
        if isinstance(m, Drude):
            scale = max(scale, m.omega_p)
        elif isinstance(m, OscillatorSum):
            for f, w0, _ in m.terms:
                scale = max(scale, math.sqrt(f), w0)
        elif isinstance(m, Tabulated):
            scale = max(scale, math.sqrt(m.xi[0] * m.xi[-1]))
    return scale


def load_material_table(path) -> Tabulated:
    """Read a two-column ``xi [eV]  eps(i xi)`` table.

    Blank lines and lines starting with ``#`` are ignored.

    Raises
    ------
    MaterialParseError
        On a malformed line (the message carries the line number).
    ConfigurationError
        If the file holds no samples.
    ValidationError
        If the samples violate the ordering or ``eps >= 1`` invariants.
    """
    path = Path(path)
    xs, es = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) != 2:
                raise MaterialParseError(f"expected 2 columns, got {len(parts)}", path, lineno)
            try:
                x, e = float(parts[0]), float(parts[1])
            except ValueError:
                raise MaterialParseError(f"non-numeric value in {text!r}", path, lineno) from None
            if not (math.isfinite(x) and math.isfinite(e)):
                raise MaterialParseError(f"non-finite value in {text!r}", path, lineno)
            xs.append(x)
            es.append(e)
    if not xs:
        raise ConfigurationError(f"{path}: material table is empty")
    return Tabulated(tuple(xs), tuple(es), source=str(path))
