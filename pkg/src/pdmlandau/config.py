"""Line-oriented key=value run configuration.

A run config drives one CLI sweep: which solvable scenario (mass-profile
power and electric-field kind), the physical parameters, the (m, n_rho)
ranges and optional grid/output settings.  Format:

    # comment
    power = 2
    field = none
    Q = 1
    B0 = 1
    eta = 1
    lambda = 0
    kz = 0
    m = 1:3
    n = 0:2
    grid_n = 12000      # optional
    rho_max = 20        # optional
    format = csv        # optional, csv|json
    out = report.csv    # optional

``problem = oscillator`` switches to the half-line unit-oscillator
calibration problem; only the ``n`` range (plus grid and output keys) is
meaningful there and physics keys are rejected to keep configs honest.

Unknown keys, duplicates, missing mandatory keys and unparsable values all
raise ConfigError with the offending line number.  Physics-level violations
(unsupported profile power, non-positive Q*B0) surface as the model-core
exceptions at load time.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, UnsupportedProfile
from .fields import ElectricFieldKind, PhysicalParams, require_landau_coupling

__all__ = ["RunConfig", "parse_config", "load_config"]

PHYSICS_KEYS = ("power", "field", "Q", "B0", "eta", "lambda", "kz", "m", "n")
OPTIONAL_KEYS = ("problem", "grid_n", "rho_max", "format", "out")
KNOWN_KEYS = PHYSICS_KEYS + OPTIONAL_KEYS
OSCILLATOR_KEYS = ("problem", "n", "grid_n", "rho_max", "format", "out")


@dataclass(frozen=True)
class RunConfig:
    """Parsed sweep description; ``params`` is None for the oscillator."""

    problem: str
    power: int | None
    kind: ElectricFieldKind | None
    params: PhysicalParams | None
    k_z: float
    m_values: tuple[int, ...]
    n_values: tuple[int, ...]
    grid_n: int | None = None
    rho_max: float | None = None
    fmt: str = "csv"
    out: str | None = None

    def as_dict(self) -> dict:
        """Plain-scalar echo of the config for JSON reports."""
        d: dict = {"problem": self.problem}
        if self.problem == "physics":
            d.update(power=self.power, field=self.kind.value,
                     Q=self.params.Q, B0=self.params.B0, eta=self.params.eta,
                     **{"lambda": self.params.lam}, kz=self.k_z,
                     m=list(self.m_values))
        d["n"] = list(self.n_values)
        if self.grid_n is not None:
            d["grid_n"] = self.grid_n
        if self.rho_max is not None:
            d["rho_max"] = self.rho_max
        d["format"] = self.fmt
        if self.out is not None:
            d["out"] = self.out
        return d


def _parse_float(key: str, raw: str, lineno: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key} expects a number, got {raw!r}") from None


def _parse_int(key: str, raw: str, lineno: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key} expects an integer, got {raw!r}") from None


def _parse_range(key: str, raw: str, lineno: int) -> tuple[int, ...]:
    """``a:b`` is the inclusive range a..b; a bare integer is a singleton."""
    if ":" in raw:
        lo_s, _, hi_s = raw.partition(":")
        lo = _parse_int(key, lo_s.strip(), lineno)
        hi = _parse_int(key, hi_s.strip(), lineno)
        if hi < lo:
            raise ConfigError(f"line {lineno}: empty {key} range {raw!r}")
        return tuple(range(lo, hi + 1))
    return (_parse_int(key, raw, lineno),)


def parse_config(text: str) -> RunConfig:
    """Parse key=value lines into a validated RunConfig."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key=value, got {line.strip()!r}")
        key, _, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(
                f"line {lineno}: duplicate key {key!r} (first on line {entries[key][1]})")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        entries[key] = (value, lineno)

    problem = entries.pop("problem", ("physics", 0))[0]
    if problem not in ("physics", "oscillator"):
        raise ConfigError(f"problem must be 'physics' or 'oscillator', got {problem!r}")

    fmt = "csv"
    if "format" in entries:
        fmt, lineno = entries.pop("format")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"line {lineno}: format must be csv or json, got {fmt!r}")
    out = entries.pop("out", (None, 0))[0]
    grid_n = rho_max = None
    if "grid_n" in entries:
        raw, lineno = entries.pop("grid_n")
        grid_n = _parse_int("grid_n", raw, lineno)
    if "rho_max" in entries:
        raw, lineno = entries.pop("rho_max")
        rho_max = _parse_float("rho_max", raw, lineno)

    if problem == "oscillator":
        for key in entries:
            if key not in OSCILLATOR_KEYS:
                raise ConfigError(
                    f"line {entries[key][1]}: key {key!r} is not meaningful "
                    "for problem=oscillator")
        if "n" not in entries:
            raise ConfigError("missing mandatory key 'n'")
        raw, lineno = entries["n"]
        n_values = _parse_range("n", raw, lineno)
        if n_values[0] < 0:
            raise ConfigError(f"line {lineno}: n must be non-negative")
        return RunConfig(problem="oscillator", power=None, kind=None, params=None,
                         k_z=0.0, m_values=(), n_values=n_values,
                         grid_n=grid_n, rho_max=rho_max, fmt=fmt, out=out)

    missing = [key for key in PHYSICS_KEYS if key not in entries]
    if missing:
        raise ConfigError(f"missing mandatory key{'s' if len(missing) > 1 else ''} "
                          + ", ".join(repr(k) for k in missing))

    raw, lineno = entries["power"]
    power = _parse_int("power", raw, lineno)
    if power not in (1, 2):
        raise UnsupportedProfile(
            f"line {lineno}: power must be 1 or 2, got {power}; the closed-form "
            "solutions only exist for these profiles")

    raw, lineno = entries["field"]
    try:
        kind = ElectricFieldKind(raw)
    except ValueError:
        raise ConfigError(
            f"line {lineno}: field must be one of "
            + ", ".join(k.value for k in ElectricFieldKind) + f", got {raw!r}") from None

    params = PhysicalParams(
        Q=_parse_float("Q", *entries["Q"]),
        B0=_parse_float("B0", *entries["B0"]),
        eta=_parse_float("eta", *entries["eta"]),
        lam=_parse_float("lambda", *entries["lambda"]),
    )
    require_landau_coupling(params)
    k_z = _parse_float("kz", *entries["kz"])

    m_values = _parse_range("m", *entries["m"])
    raw, lineno = entries["n"]
    n_values = _parse_range("n", raw, lineno)
    if n_values[0] < 0:
        raise ConfigError(f"line {lineno}: n must be non-negative")

    return RunConfig(problem="physics", power=power, kind=kind, params=params,
                     k_z=k_z, m_values=m_values, n_values=n_values,
                     grid_n=grid_n, rho_max=rho_max, fmt=fmt, out=out)


def load_config(path: str) -> RunConfig:
    """Read and parse a config file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
