"""Run configuration: plain-text parsing, validation, canonical emission.

Format: one ``key = value`` per line, ``#`` starts a comment, sections are
dotted key prefixes::

    trap.nu_z_hz = 1.0e6
    trap.nu_perp_hz = 5.0e6        # the only required keys
    species.name = Ca-40
    oracle.cutoffs = 10, 6, 10

Unknown keys are rejected with the offending line number.  Canonical text
written by :func:`format_config` re-parses to an equal RunConfig.
"""

from dataclasses import dataclass

from .constants import ION_MASSES_AMU
from .trap import IonSpecies

__all__ = [
    "ParseError",
    "ValidationError",
    "RunConfig",
    "parse_config",
    "format_config",
]

DEFAULT_SPECIES = "Ca-40"
DEFAULT_MASS_AMU = 39.9625909
DEFAULT_CUTOFFS = (10, 6, 10)
DEFAULT_XI_VALUES = (1e-2, 1e-3, 1e-4)
DEFAULT_OVERLAP_THRESHOLD = 0.5


class ParseError(ValueError):
    """Malformed config text; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ValidationError(ValueError):
    """A parsed value violates an invariant; the message names it."""


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs for the command-line workflows."""

    species_name: str | None
    mass_amu: float
    charge_multiple: int
    nu_z_hz: float
    nu_perp_hz: float
    sweep_start_hz: float
    sweep_stop_hz: float
    sweep_steps: int
    oracle_cutoffs: tuple[int, int, int]
    oracle_xi_values: tuple[float, ...]
    oracle_overlap_threshold: float
    output_path: str
    output_format: str

    def ion_species(self) -> IonSpecies:
        return IonSpecies.from_amu(self.mass_amu, self.charge_multiple)


_KNOWN_KEYS = {
    "species.name", "species.mass_amu", "species.charge_multiple",
    "trap.nu_z_hz", "trap.nu_perp_hz",
    "sweep.start_hz", "sweep.stop_hz", "sweep.steps",
    "oracle.cutoffs", "oracle.xi_values", "oracle.overlap_threshold",
    "output.path", "output.format",
}


def _parse_lines(text: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, f"expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ParseError(lineno, f"unknown key {key!r}")
        if not value:
            raise ParseError(lineno, f"empty value for {key!r}")
        if key in values:
            raise ParseError(lineno, f"duplicate key {key!r}")
        values[key] = value
    return values


def _as_float(values: dict[str, str], key: str, default: float | None) -> float | None:
    if key not in values:
        return default
    try:
        return float(values[key])
    except ValueError:
        raise ValidationError(f"{key} must be a number, got {values[key]!r}") from None


def _as_int(values: dict[str, str], key: str, default: int) -> int:
    if key not in values:
        return default
    try:
        return int(values[key])
    except ValueError:
        raise ValidationError(f"{key} must be an integer, got {values[key]!r}") from None


def parse_config(text: str) -> RunConfig:
    """Parse and validate; unset keys take their documented defaults."""
    values = _parse_lines(text)

    name = values.get("species.name")
    mass_amu = _as_float(values, "species.mass_amu", None)
    if name is not None and mass_amu is not None:
        raise ValidationError("species.name and species.mass_amu are mutually exclusive")
    if name is not None:
        if name not in ION_MASSES_AMU:
            known = ", ".join(sorted(ION_MASSES_AMU))
            raise ValidationError(f"unknown species.name {name!r}; known: {known}")
        mass_amu = ION_MASSES_AMU[name]
    elif mass_amu is None:
        name = DEFAULT_SPECIES
        mass_amu = DEFAULT_MASS_AMU
    charge = _as_int(values, "species.charge_multiple", 1)

    nu_z = _as_float(values, "trap.nu_z_hz", None)
    nu_perp = _as_float(values, "trap.nu_perp_hz", None)
    if nu_z is None or nu_perp is None:
        raise ValidationError("trap.nu_z_hz and trap.nu_perp_hz are required")

    start = _as_float(values, "sweep.start_hz", nu_z)
    stop = _as_float(values, "sweep.stop_hz", nu_z)
    steps = _as_int(values, "sweep.steps", 1)

    if "oracle.cutoffs" in values:
        try:
            cutoffs = tuple(int(p) for p in values["oracle.cutoffs"].split(","))
        except ValueError:
            raise ValidationError("oracle.cutoffs must be three integers") from None
        if len(cutoffs) != 3:
            raise ValidationError("oracle.cutoffs must be three integers")
    else:
        cutoffs = DEFAULT_CUTOFFS
    if "oracle.xi_values" in values:
        try:
            xi_values = tuple(float(p) for p in values["oracle.xi_values"].split(","))
        except ValueError:
            raise ValidationError("oracle.xi_values must be numbers") from None
    else:
        xi_values = DEFAULT_XI_VALUES
    threshold = _as_float(values, "oracle.overlap_threshold", DEFAULT_OVERLAP_THRESHOLD)

    config = RunConfig(
        species_name=name,
        mass_amu=mass_amu,
        charge_multiple=charge,
        nu_z_hz=nu_z,
        nu_perp_hz=nu_perp,
        sweep_start_hz=start,
        sweep_stop_hz=stop,
        sweep_steps=steps,
        oracle_cutoffs=cutoffs,
        oracle_xi_values=xi_values,
        oracle_overlap_threshold=threshold,
        output_path=values.get("output.path", "-"),
        output_format=values.get("output.format", "csv"),
    )
    _validate(config)
    return config


def _validate(config: RunConfig) -> None:
    if config.mass_amu <= 0:
        raise ValidationError("species.mass_amu must be positive")
    if config.charge_multiple < 1:
        raise ValidationError("species.charge_multiple must be >= 1")
    for key, value in (("trap.nu_z_hz", config.nu_z_hz),
                       ("trap.nu_perp_hz", config.nu_perp_hz),
                       ("sweep.start_hz", config.sweep_start_hz),
                       ("sweep.stop_hz", config.sweep_stop_hz)):
        if value <= 0:
            raise ValidationError(f"{key} must be positive")
    if config.nu_perp_hz <= config.nu_z_hz:
        raise ValidationError(
            "trap.nu_perp_hz must exceed trap.nu_z_hz "
            "(transverse confinement must dominate)")
    if config.sweep_steps < 1:
        raise ValidationError("sweep.steps must be >= 1")
    if config.sweep_start_hz > config.sweep_stop_hz:
        raise ValidationError("sweep.start_hz must not exceed sweep.stop_hz")
    if any(c < 0 for c in config.oracle_cutoffs):
        raise ValidationError("oracle.cutoffs must be nonnegative")
    if not config.oracle_xi_values or any(x <= 0 for x in config.oracle_xi_values):
        raise ValidationError("oracle.xi_values must be positive")
    if not 0.5 <= config.oracle_overlap_threshold < 1.0:
        raise ValidationError("oracle.overlap_threshold must lie in [0.5, 1)")
    if config.output_format not in ("csv",):
        raise ValidationError("output.format must be 'csv'")


def format_config(config: RunConfig) -> str:
    """Canonical text form; parse_config(format_config(c)) == c."""
    lines = []
    if config.species_name is not None:
        lines.append(f"species.name = {config.species_name}")
    else:
        lines.append(f"species.mass_amu = {config.mass_amu!r}")
    lines.append(f"species.charge_multiple = {config.charge_multiple}")
    lines.append(f"trap.nu_z_hz = {config.nu_z_hz!r}")
    lines.append(f"trap.nu_perp_hz = {config.nu_perp_hz!r}")
    lines.append(f"sweep.start_hz = {config.sweep_start_hz!r}")
    lines.append(f"sweep.stop_hz = {config.sweep_stop_hz!r}")
    lines.append(f"sweep.steps = {config.sweep_steps}")
    lines.append("oracle.cutoffs = " + ", ".join(str(c) for c in config.oracle_cutoffs))
    lines.append("oracle.xi_values = " + ", ".join(repr(x) for x in config.oracle_xi_values))
    lines.append(f"oracle.overlap_threshold = {config.oracle_overlap_threshold!r}")
    lines.append(f"output.path = {config.output_path}")
    lines.append(f"output.format = {config.output_format}")
    return "\n".join(lines) + "\n"
