"""Run configuration and its ``key = value`` file format."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .superpoly import DarbouxSpace, Truncation


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    max_vertices: int = 8
    max_edges: int = 16
    hbar_order: int = 3
    u_order: int = 3
    poly_degree: int = 6
    seed: int = 0
    space: tuple[int, ...] = (1, -1)

    def __post_init__(self):
        for f in ("max_vertices", "max_edges", "hbar_order", "u_order", "poly_degree"):
            v = getattr(self, f)
            if not isinstance(v, int) or v <= 0:
                raise ConfigError(f"{f} must be a positive integer, got {v!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not self.space:
            raise ConfigError("space needs at least one Darboux pair")

    @property
    def truncation(self) -> Truncation:
        return Truncation(self.hbar_order, self.u_order, self.poly_degree)

    @property
    def darboux(self) -> DarbouxSpace:
        return DarbouxSpace(tuple(self.space))

    def updated(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


FIELDS = tuple(f.name for f in fields(RunConfig))


def format_config(cfg: RunConfig) -> str:
    lines = []
    for name in FIELDS:
        v = getattr(cfg, name)
        lines.append(f"{name} = {' '.join(map(str, v)) if name == 'space' else v}")
    return "\n".join(lines) + "\n"


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    vals: dict = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not eq or key not in FIELDS:
            raise ConfigError(f"bad config line {raw.strip()!r}; keys are {', '.join(FIELDS)}")
        if key in vals:
            raise ConfigError(f"duplicate config key {key!r}")
        try:
            vals[key] = tuple(int(t) for t in value.replace(",", " ").split()) if key == "space" else int(value)
        except ValueError:
            raise ConfigError(f"config value for {key!r} is not an integer: {value!r}") from None
    return replace(base or RunConfig(), **vals)
