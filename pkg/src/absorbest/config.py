"""Flat key-value run configuration for the command-line tool.

The format is one ``key = value`` pair per line with dotted section keys,
``#`` comments, and blank lines ignored:

    kind = heralded
    channel.a = 1.0
    channel.length = 1.0
    herald.rate = 14000
    run.seed = 42

Unknown keys are errors (no silent typo acceptance), every physical
constraint is re-validated through the normal constructors on load, and a
resolved config serializes back to exactly this format so that any emitted
file can be re-run.
"""

from __future__ import annotations

from pathlib import Path

from .channel import AbsorbanceChannel
from .errors import ConfigError, DomainError
from .photon_stats import DetectorModel, PhotonSource, load_empirical_pmf
from .simulate import HeraldedExperimentConfig, SingleArmExperimentConfig

__all__ = [
    "parse_config_text",
    "parse_config_file",
    "format_config",
    "resolve_simulate_config",
]

_COMMON_KEYS = {
    "kind",
    "channel.a",
    "channel.length",
    "channel.beta",
    "channel.gamma",
    "run.window",
    "run.windows",
    "run.group_size",
    "run.seed",
}
_HERALDED_KEYS = _COMMON_KEYS | {"herald.rate", "estimator.literal_gamma"}
_SINGLE_ARM_KEYS = _COMMON_KEYS | {
    "source.kind",
    "source.mean",
    "source.fano",
    "source.n",
    "source.pmf_file",
    "detector.dark_mean",
    "detector.dark_var",
    "detector.rate_scaling",
    "run.calibrated_n0",
}
_KINDS = ("heralded", "single-arm")


def parse_config_text(text: str, origin: str = "<config>") -> dict[str, tuple[str, int]]:
    """Parse the flat format into {key: (raw value, line number)}."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigError(f"{origin}:{lineno}: empty key or value in {raw!r}")
        if key in entries:
            raise ConfigError(
                f"{origin}:{lineno}: duplicate key {key!r} "
                f"(first set on line {entries[key][1]})"
            )
        entries[key] = (value, lineno)
    return entries


def parse_config_file(path: str | Path) -> dict[str, tuple[str, int]]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    return parse_config_text(text, origin=str(path))


def format_config(resolved: dict[str, str]) -> str:
    """Serialize a resolved config back to the flat format."""
    return "\n".join(f"{key} = {value}" for key, value in resolved.items()) + "\n"


class _Reader:
    """Typed access to raw entries with line-level diagnostics."""

    def __init__(self, entries: dict[str, tuple[str, int]], origin: str):
        self.entries = entries
        self.origin = origin
        self.used: set[str] = set()

    def _raw(self, key: str) -> tuple[str, int] | None:
        if key in self.entries:
            self.used.add(key)
            return self.entries[key]
        return None

    def _fail(self, key: str, lineno: int | None, message: str) -> ConfigError:
        where = f"{self.origin}:{lineno}" if lineno is not None else self.origin
        return ConfigError(f"{where}: {key}: {message}")

    def str_(self, key: str, default: str | None = None) -> str | None:
        raw = self._raw(key)
        return raw[0] if raw else default

    def float_(self, key: str, default: float | None = None) -> float | None:
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return float(raw[0])
        except ValueError:
            raise self._fail(key, raw[1], f"expected a number, got {raw[0]!r}") from None

    def int_(self, key: str, default: int | None = None) -> int | None:
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            value = float(raw[0])
        except ValueError:
            raise self._fail(key, raw[1], f"expected an integer, got {raw[0]!r}") from None
        if value != int(value):
            raise self._fail(key, raw[1], f"expected an integer, got {raw[0]!r}")
        return int(value)

    def bool_(self, key: str, default: bool) -> bool:
        raw = self._raw(key)
        if raw is None:
            return default
        token = raw[0].lower()
        if token in ("true", "yes", "1", "on"):
            return True
        if token in ("false", "no", "0", "off"):
            return False
        raise self._fail(key, raw[1], f"expected true/false, got {raw[0]!r}")

    def require(self, key: str, value):
        if value is None:
            raise ConfigError(f"{self.origin}: missing required key {key!r}")
        return value

    def reject_unknown(self, allowed: set[str]) -> None:
        for key, (_, lineno) in self.entries.items():
            if key not in allowed:
                raise self._fail(key, lineno, "unknown key")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def resolve_simulate_config(
    kind: str,
    entries: dict[str, tuple[str, int]],
    origin: str = "<config>",
    seed_override: int | None = None,
):
    """Build the typed experiment config plus its canonical resolved form.

    Returns ``(config, resolved)`` where ``config`` is a
    :class:`HeraldedExperimentConfig` or :class:`SingleArmExperimentConfig`
    and ``resolved`` is an ordered {key: formatted value} mapping that
    reparses to the identical configuration (rate-scaled detector inputs
    are canonicalized to per-window values).
    """
    if kind not in _KINDS:
        raise ConfigError(f"unknown simulation kind {kind!r}; expected {_KINDS}")
    reader = _Reader(entries, origin)
    reader.reject_unknown(_HERALDED_KEYS if kind == "heralded" else _SINGLE_ARM_KEYS)

    file_kind = reader.str_("kind")
    if file_kind is not None and file_kind != kind:
        raise ConfigError(
            f"{origin}: config declares kind = {file_kind!r} but {kind!r} was requested"
        )

    try:
        channel = AbsorbanceChannel(
            a=reader.require("channel.a", reader.float_("channel.a")),
            length=reader.require("channel.length", reader.float_("channel.length")),
            beta=reader.float_("channel.beta", 0.0),
            gamma=reader.float_("channel.gamma", 1.0),
        )
        window = reader.float_("run.window", 0.5)
        n_windows = reader.int_("run.windows", 500)
        group_size = reader.int_("run.group_size", 100)
        seed = reader.int_("run.seed", 0)
        if seed_override is not None:
            seed = seed_override

        resolved: dict[str, str] = {"kind": kind}
        for key, value in (
            ("channel.a", channel.a),
            ("channel.length", channel.length),
            ("channel.beta", channel.beta),
            ("channel.gamma", channel.gamma),
        ):
            resolved[key] = _fmt(value)

        if kind == "heralded":
            rate = reader.require("herald.rate", reader.float_("herald.rate"))
            literal = reader.bool_("estimator.literal_gamma", False)
            cfg = HeraldedExperimentConfig(
                channel=channel,
                herald_rate=rate,
                window=window,
                n_windows=n_windows,
                group_size=group_size,
                seed=seed,
                literal_facet_convention=literal,
            )
            resolved["herald.rate"] = _fmt(rate)
            resolved["estimator.literal_gamma"] = _fmt(literal)
        else:
            source = _resolve_source(reader, origin)
            rate_scaling = reader.bool_("detector.rate_scaling", False)
            dark_mean = reader.float_("detector.dark_mean", 0.0)
            dark_var = reader.float_("detector.dark_var", dark_mean)
            if rate_scaling:
                # Inputs were rates: mean in s^-1, variance in s^-2.
                dark_mean *= window
                dark_var *= window**2
            detector = DetectorModel(
                dark_mean=dark_mean, dark_var=dark_var, window=window
            )
            calibrated_n0 = reader.float_("run.calibrated_n0")
            cfg = SingleArmExperimentConfig(
                channel=channel,
                source=source,
                detector=detector,
                calibrated_n0=calibrated_n0,
                n_windows=n_windows,
                group_size=group_size,
                seed=seed,
            )
            resolved["source.kind"] = source.kind
            if source.kind == "fock":
                resolved["source.n"] = _fmt(source.fock_n)
            elif source.kind == "empirical":
                resolved["source.pmf_file"] = reader.str_("source.pmf_file")
            else:
                resolved["source.mean"] = _fmt(source.mean)
                if source.kind == "fano":
                    resolved["source.fano"] = _fmt(source.fano)
            resolved["detector.dark_mean"] = _fmt(detector.dark_mean)
            resolved["detector.dark_var"] = _fmt(detector.dark_var)
            resolved["detector.rate_scaling"] = _fmt(False)
            resolved["run.calibrated_n0"] = _fmt(cfg.calibrated_n0)

        resolved["run.window"] = _fmt(window)
        resolved["run.windows"] = _fmt(n_windows)
        resolved["run.group_size"] = _fmt(group_size)
        resolved["run.seed"] = _fmt(seed)
    except DomainError as err:
        raise ConfigError(f"{origin}: {err}") from err

    for key, (_, lineno) in entries.items():
        if key != "kind" and key not in reader.used:
            raise ConfigError(
                f"{origin}:{lineno}: {key}: key does not apply to this "
                "configuration"
            )
    return cfg, resolved


def _resolve_source(reader: _Reader, origin: str) -> PhotonSource:
    kind = reader.require("source.kind", reader.str_("source.kind"))
    if kind == "coherent":
        return PhotonSource.coherent(
            reader.require("source.mean", reader.float_("source.mean"))
        )
    if kind == "thermal":
        return PhotonSource.thermal(
            reader.require("source.mean", reader.float_("source.mean"))
        )
    if kind == "fock":
        return PhotonSource.fock(reader.require("source.n", reader.int_("source.n")))
    if kind == "fano":
        return PhotonSource.from_fano(
            mean=reader.require("source.mean", reader.float_("source.mean")),
            fano=reader.require("source.fano", reader.float_("source.fano")),
        )
    if kind == "empirical":
        path = reader.require("source.pmf_file", reader.str_("source.pmf_file"))
        try:
            return load_empirical_pmf(path)
        except (DomainError, OSError) as err:
            raise ConfigError(f"{origin}: source.pmf_file: {err}") from err
    raise ConfigError(
        f"{origin}: source.kind must be one of coherent, thermal, fock, fano, "
        f"empirical; got {kind!r}"
    )
