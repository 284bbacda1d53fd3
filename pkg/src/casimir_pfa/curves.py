"""Sweep results and their CSV / JSON serialisation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigurationError, ValidationError

__all__ = ["ForceCurve", "read_json"]


def _num(v: float) -> str:
    # repr is the shortest string that round-trips exactly
    return repr(float(v))


@dataclass(frozen=True)
class ForceCurve:
    """Ordered ``(abscissa, value)`` samples plus the metadata to interpret them.

    ``abscissa_kind`` is e.g. ``"z [nm]"`` or ``"x = z/R"``; ``value_kind``
    names the plotted quantity with units, e.g. ``"R*F [eV]"``. ``extra``
    holds optional named columns aligned with the samples.
    """

    abscissa_kind: str
    value_kind: str
    abscissa: tuple
    value: tuple
    rel_error: tuple
    extra: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.abscissa)
        object.__setattr__(self, "abscissa", tuple(float(v) for v in self.abscissa))
        object.__setattr__(self, "value", tuple(float(v) for v in self.value))
        object.__setattr__(self, "rel_error", tuple(float(v) for v in self.rel_error))
        object.__setattr__(self, "extra", {k: tuple(float(v) for v in col) for k, col in self.extra.items()})
        if len(self.value) != n or len(self.rel_error) != n or any(len(c) != n for c in self.extra.values()):
            raise ValidationError("curve columns have different lengths")
        if any(b <= a for a, b in zip(self.abscissa, self.abscissa[1:])):
            raise ValidationError("curve abscissa must be strictly increasing")

    def magnitude(self) -> "ForceCurve":
        """Same curve with ``|value|``, for log-log plotting."""
        return ForceCurve(
            self.abscissa_kind,
            f"|{self.value_kind}|",
            self.abscissa,
            tuple(abs(v) for v in self.value),
            self.rel_error,
            dict(self.extra),
            dict(self.metadata),
        )

    def to_csv(self) -> str:
        lines = [f"# {k}: {self.metadata[k]}" for k in sorted(self.metadata)]
        lines.append(f"# abscissa: {self.abscissa_kind}")
        lines.append(f"# value: {self.value_kind}")
        cols = ["abscissa", "value", "abs_value", "rel_error_estimate", *self.extra]
        lines.append(",".join(cols))
        for i, x in enumerate(self.abscissa):
            row = [x, self.value[i], abs(self.value[i]), self.rel_error[i]]
            row += [self.extra[k][i] for k in self.extra]
            lines.append(",".join(_num(v) for v in row))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "abscissa_kind": self.abscissa_kind,
            "value_kind": self.value_kind,
            "abscissa": list(self.abscissa),
            "value": list(self.value),
            "rel_error": list(self.rel_error),
            "extra": {k: list(v) for k, v in self.extra.items()},
            "metadata": self.metadata,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ForceCurve":
        try:
            d = json.loads(text)
            return cls(
                d["abscissa_kind"],
                d["value_kind"],
                d["abscissa"],
                d["value"],
                d["rel_error"],
                d.get("extra", {}),
                d.get("metadata", {}),
            )
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"not a force curve document: {exc}") from None


def read_json(path) -> ForceCurve:
    with open(path, encoding="utf-8") as fh:
        return ForceCurve.from_json(fh.read())
