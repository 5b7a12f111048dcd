"""Sweep configuration: a flat ``key = value`` text file, lists comma-separated."""
from dataclasses import dataclass, field, fields
from pathlib import Path

from hybridmark.attacks import AttackSpec
from hybridmark.dft import DEFAULT_ALPHA, DEFAULT_BAND, DEFAULT_MAG_FLOOR, DEFAULT_SEED
from hybridmark.errors import ConfigError, ParamError
from hybridmark.fixtures import NAMES as FIXTURE_NAMES
from hybridmark.hybrid import DEFAULT_THRESHOLD, HybridOrder

METHODS = ("lsb", "dft", "hybrid")


@dataclass
class SweepConfig:
    images: list = field(default_factory=lambda: [f"fixture:{n}" for n in FIXTURE_NAMES])
    methods: list = field(default_factory=lambda: list(METHODS))
    text: str = "document"
    alpha: float = DEFAULT_ALPHA
    seed: int = DEFAULT_SEED
    band: tuple = DEFAULT_BAND
    mag_floor: float = DEFAULT_MAG_FLOOR
    order: str = HybridOrder.DFT_THEN_LSB.value
    threshold: float = DEFAULT_THRESHOLD
    jpeg: list = field(default_factory=lambda: [90, 70, 50, 30, 20])
    gaussian: list = field(default_factory=lambda: [0.001, 0.005, 0.01, 0.02])
    saltpepper: list = field(default_factory=lambda: [0.01, 0.05, 0.10, 0.15])
    timing: bool = False

    def attack_grid(self):
        """(kind, parameter) pairs, JPEG first then Gaussian then impulse noise."""
        return ([("jpeg", q) for q in self.jpeg]
                + [("gauss", v) for v in self.gaussian]
                + [("sp", d) for d in self.saltpepper])

    def validate(self):
        if not self.images:
            raise ConfigError("no images configured")
        if not self.methods:
            raise ConfigError("no methods configured")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ConfigError(f"unknown methods {bad}; choose from {METHODS}")
        if len(set(self.methods)) != len(self.methods):
            raise ConfigError("methods listed more than once")
        if not 0 < self.alpha < 1:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        r_in, r_out = self.band
        if not 0 < r_in < r_out <= 0.5:
            raise ConfigError(f"band must satisfy 0 < r_in < r_out <= 0.5, got {self.band}")
        if not 0 <= self.threshold <= 1:
            raise ConfigError(f"threshold must lie in [0, 1], got {self.threshold}")
        try:
            HybridOrder(self.order)
        except ValueError:
            raise ConfigError(f"unknown hybrid order {self.order!r}") from None
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")
        try:
            self.text.encode("ascii")
        except UnicodeEncodeError:
            raise ConfigError("watermark text must be ASCII") from None
        for kind, param in self.attack_grid():
            try:
                AttackSpec(kind, param)
            except ParamError as exc:
                raise ConfigError(str(exc)) from None
        return self


def _floats(value):
    return [float(v) for v in value.split(",") if v.strip()]


def _strings(value):
    return [v.strip() for v in value.split(",") if v.strip()]


_PARSERS = {
    "images": _strings,
    "methods": _strings,
    "text": str.strip,
    "alpha": float,
    "seed": int,
    "band": lambda v: tuple(_floats(v)),
    "mag_floor": float,
    "order": str.strip,
    "threshold": float,
    "jpeg": lambda v: [int(x) for x in _floats(v)],
    "gaussian": _floats,
    "saltpepper": _floats,
    "timing": lambda v: v.strip().lower() in ("1", "true", "yes", "on"),
}


def parse_config(text, base_dir=None):
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"line {lineno}: expected key = value")
        if key not in _PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
    if "band" in values and len(values["band"]) != 2:
        raise ConfigError("band needs exactly two values: r_in, r_out")
    if base_dir is not None and "images" in values:
        values["images"] = [
            p if p.startswith("fixture:") or Path(p).is_absolute() else str(Path(base_dir) / p)
            for p in values["images"]
        ]
    return SweepConfig(**values).validate()


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, base_dir=path.parent)


def dump_config(config):
    lines = []
    for f in fields(config):
        v = getattr(config, f.name)
        if isinstance(v, (list, tuple)):
            v = ", ".join(str(x) for x in v)
        lines.append(f"{f.name} = {v}")
    return "\n".join(lines) + "\n"
