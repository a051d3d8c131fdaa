"""Command-line interface.

Subcommands
-----------
chi      one-point report: mode data and chi/2pi per formula
sweep    chi/2pi over a grid of axial frequencies, as CSV
verify   cross-check closed form vs perturbation engine vs diagonalization
table1   cubic-coupling matrix elements out of one state, engine vs the
         published closed forms, mismatching rows flagged
compare  residuals of measured chi values against both formulas

All frequencies on the command line are linear (Hz).  Floats in reports
and CSV files carry 9 significant digits so identical invocations produce
byte-identical output.  A --config file supplies defaults for flags not
given explicitly.  Exit codes: 0 success, 1 validation or physics error,
2 I/O error, 3 verification gate failure.
"""

import argparse
import contextlib
import csv
import math
import sys

from .algebra import FockState
from .analytics import (NearResonance, chi_over_omega_z, chi_paper, chi_roos,
                        kerr_bracket, sweep_chi)
from .config import ParseError, ValidationError, parse_config
from .constants import ION_MASSES_AMU
from .diagonalization import (DEFAULT_CUTOFFS, DEFAULT_XI_LADDER,
                              extract_chi_numeric, extrapolate_chi)
from .hamiltonian import cubic_coupling
from .perturbation import (ROW_DELTAS, channel_denominator, cubic_channels,
                           kerr_coefficient_pt, published_element)
from .trap import DegenerateTrap, IonSpecies, TrapConfig, derive_spectrum

__all__ = ["main"]


def _fmt(x: float) -> str:
    """9 significant digits, lowercase scientific."""
    return f"{x:.8e}"


def _resolve_species(name_or_amu: str, charge: int) -> IonSpecies:
    if name_or_amu in ION_MASSES_AMU:
        return IonSpecies.from_name(name_or_amu, charge)
    try:
        mass_amu = float(name_or_amu)
    except ValueError:
        known = ", ".join(sorted(ION_MASSES_AMU))
        raise ValidationError(
            f"unknown species {name_or_amu!r}; give one of {known} "
            "or a mass in amu") from None
    return IonSpecies.from_amu(mass_amu, charge)


@contextlib.contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _parse_cutoffs(text: str) -> tuple[int, int, int]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 3:
        raise ValidationError("cutoffs must be three integers, e.g. 10,6,10")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ValidationError("cutoffs must be three integers, e.g. 10,6,10") from None


def _parse_xi_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(p) for p in text.replace(",", " ").split() if p)
    except ValueError:
        raise ValidationError("xi ladder must be numbers, e.g. 1e-2,1e-3,1e-4") from None
    if not values or any(v <= 0 for v in values):
        raise ValidationError("xi ladder values must be positive")
    return tuple(sorted(values, reverse=True))


def _load_config(args):
    if getattr(args, "config", None):
        with open(args.config) as fh:
            return parse_config(fh.read())
    return None


def _fill(args, attr, config_value, fallback=None):
    """Flag takes priority, then the config file, then the fallback."""
    if getattr(args, attr, None) is None:
        value = config_value if config_value is not None else fallback
        setattr(args, attr, value)


def _fill_common(args, cfg) -> None:
    if getattr(args, "species", None) is None:
        if cfg is not None:
            args.species = cfg.species_name if cfg.species_name else str(cfg.mass_amu)
        else:
            args.species = "Ca-40"
    _fill(args, "charge", cfg.charge_multiple if cfg else None, 1)


def _require(args, *names) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            raise ValidationError(
                f"--{name.replace('_', '-')} is required "
                "(on the command line or via --config)")


# -- chi ---------------------------------------------------------------------

def _cmd_chi(args) -> int:
    cfg = _load_config(args)
    _fill_common(args, cfg)
    _fill(args, "nu_z", cfg.nu_z_hz if cfg else None)
    _fill(args, "nu_perp", cfg.nu_perp_hz if cfg else None)
    _require(args, "nu_z", "nu_perp")

    species = _resolve_species(args.species, args.charge)
    trap = TrapConfig.from_linear(args.nu_perp, args.nu_z)
    spectrum = derive_spectrum(species, trap)
    lines = [
        f"nu_z_hz      {_fmt(args.nu_z)}",
        f"nu_perp_hz   {_fmt(args.nu_perp)}",
        f"omega_r_2pi  {_fmt(spectrum.omega_r / (2 * math.pi))}",
        f"omega_s_2pi  {_fmt(spectrum.omega_s / (2 * math.pi))}",
        f"z0_m         {_fmt(spectrum.z0)}",
        f"xi           {_fmt(spectrum.xi)}",
    ]
    if args.formula in ("paper", "both"):
        res = chi_paper(spectrum, species, trap)
        lines.append(f"chi_2pi_hz[paper]  {_fmt(res.chi_over_2pi)}")
    if args.formula in ("roos", "both"):
        res = chi_roos(spectrum, species, trap)
        lines.append(f"chi_2pi_hz[roos]   {_fmt(res.chi_over_2pi)}")
    print("\n".join(lines))
    if args.out:
        rows = sweep_chi(species, args.nu_perp, [args.nu_z], args.formula)
        with _output(args.out) as fh:
            _write_sweep_csv(fh, rows, args.formula)
    return 0


# -- sweep -------------------------------------------------------------------

def _write_sweep_csv(fh, rows, formula: str) -> None:
    header = ["nu_z_hz"]
    if formula in ("paper", "both"):
        header.append("chi_paper_hz")
    if formula in ("roos", "both"):
        header.append("chi_roos_hz")
    header.append("error")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        record = [_fmt(row.nu_z_hz)]
        if formula in ("paper", "both"):
            record.append("" if row.chi_paper_hz is None else _fmt(row.chi_paper_hz))
        if formula in ("roos", "both"):
            record.append("" if row.chi_roos_hz is None else _fmt(row.chi_roos_hz))
        record.append(row.error or "")
        writer.writerow(record)


def _cmd_sweep(args) -> int:
    cfg = _load_config(args)
    _fill_common(args, cfg)
    _fill(args, "nu_z_start", cfg.sweep_start_hz if cfg else None)
    _fill(args, "nu_z_stop", cfg.sweep_stop_hz if cfg else None)
    _fill(args, "nu_z_steps", cfg.sweep_steps if cfg else None, 1)
    _fill(args, "nu_perp", cfg.nu_perp_hz if cfg else None)
    _fill(args, "out", cfg.output_path if cfg else None, "-")
    _require(args, "nu_z_start", "nu_z_stop", "nu_perp")

    if args.nu_z_steps < 1:
        raise ValidationError("sweep steps must be >= 1")
    if args.nu_z_start > args.nu_z_stop:
        raise ValidationError("sweep start must not exceed stop")
    species = _resolve_species(args.species, args.charge)
    if args.nu_z_steps == 1:
        grid = [args.nu_z_start]
    else:
        step = (args.nu_z_stop - args.nu_z_start) / (args.nu_z_steps - 1)
        grid = [args.nu_z_start + i * step for i in range(args.nu_z_steps)]
    rows = sweep_chi(species, args.nu_perp, grid, args.formula)
    with _output(args.out) as fh:
        _write_sweep_csv(fh, rows, args.formula)
    return 0


# -- verify ------------------------------------------------------------------

def _slope_tolerance(r: float) -> float:
    """Gate on the diagonalization slope: 1e-3 in the stiff-rocking regime
    (w_r >= omega_z), loosened to 1e-2 for soft rocking where the coupling
    is stronger at equal xi."""
    return 1e-3 if math.sqrt(r * r - 1.0) >= 1.0 else 1e-2


def _cmd_verify(args) -> int:
    cfg = _load_config(args)
    _fill(args, "cutoffs", ",".join(str(c) for c in cfg.oracle_cutoffs) if cfg else None,
          ",".join(str(c) for c in DEFAULT_CUTOFFS))
    _fill(args, "xi", ",".join(repr(x) for x in cfg.oracle_xi_values) if cfg else None,
          ",".join(repr(x) for x in DEFAULT_XI_LADDER))
    _fill(args, "overlap_threshold",
          cfg.oracle_overlap_threshold if cfg else None, 0.5)
    _fill(args, "report", cfg.output_path if cfg else None, "-")

    r = args.r
    cutoffs = _parse_cutoffs(args.cutoffs)
    xi_values = _parse_xi_list(args.xi)
    xi_ref = xi_values[0]

    chi_closed = chi_over_omega_z(r, xi_ref, "paper") / xi_ref
    chi_engine = kerr_coefficient_pt(r, xi_ref) / xi_ref
    chi_other = chi_over_omega_z(r, xi_ref, "roos") / xi_ref

    if len(xi_values) >= 3:
        fit = extrapolate_chi(r, cutoffs, xi_values, args.overlap_threshold)
        slope = fit.slope
        max_residual = fit.max_residual
        fitted = True
    else:
        chi_num, _ = extract_chi_numeric(r, xi_values[0], cutoffs,
                                         args.overlap_threshold)
        slope = chi_num / xi_values[0]
        max_residual = None
        fitted = False

    smaller = tuple(max(2, c - 2) for c in cutoffs)
    chi_big, _ = extract_chi_numeric(r, xi_values[0], cutoffs, args.overlap_threshold)
    chi_small, _ = extract_chi_numeric(r, xi_values[0], smaller, args.overlap_threshold)
    convergence = abs(chi_big - chi_small)

    diff_engine = abs(chi_engine - chi_closed) / abs(chi_closed)
    diff_slope = abs(slope - chi_closed) / abs(chi_closed)
    expected_ratio = kerr_bracket(r, "roos") / kerr_bracket(r, "paper")
    measured_ratio = chi_other / slope
    diff_ratio = abs(measured_ratio / expected_ratio - 1.0)

    gates = [
        ("closed-vs-engine", diff_engine, 1e-10),
        ("closed-vs-slope", diff_slope, _slope_tolerance(r)),
        ("bracket-ratio", diff_ratio, 1e-2),
    ]
    if fitted:
        gates.append(("fit-residual", max_residual / abs(slope), 1e-3))

    cut_txt = ",".join(str(c) for c in cutoffs)
    small_txt = ",".join(str(c) for c in smaller)
    lines = [
        f"r                    {_fmt(r)}",
        f"cutoffs              {cut_txt}",
        "xi_ladder            " + ",".join(_fmt(x) for x in xi_values),
        f"chi_per_xi_closed    {_fmt(chi_closed)}",
        f"chi_per_xi_engine    {_fmt(chi_engine)}",
        f"chi_per_xi_numeric   {_fmt(slope)}"
        + ("" if fitted else "  (single xi, direct ratio)"),
        f"chi_per_xi_roos      {_fmt(chi_other)}",
        f"ratio_roos_measured  {_fmt(measured_ratio)}",
        f"ratio_roos_expected  {_fmt(expected_ratio)}",
        f"cutoff_convergence   {_fmt(convergence)}"
        f"  (|chi({cut_txt}) - chi({small_txt})| at xi={_fmt(xi_values[0])})",
    ]
    failed = 0
    for name, value, tol in gates:
        ok = value <= tol
        failed += 0 if ok else 1
        lines.append(f"gate {name:<18} rel {_fmt(value)}  tol {_fmt(tol)}  "
                     + ("PASS" if ok else "FAIL"))
    with _output(args.report) as fh:
        fh.write("\n".join(lines) + "\n")
    return 0 if failed == 0 else 3


# -- table1 ------------------------------------------------------------------

def _cmd_table1(args) -> int:
    state = FockState(args.nx, args.ny, args.ns)
    channels = {tuple(c.intermediate): c
                for c in cubic_channels(args.nx, args.ny, args.ns, args.r, args.xi)}
    zeta = cubic_coupling(args.r, args.xi)
    lines = [
        f"state ({args.nx},{args.ny},{args.ns})   r {_fmt(args.r)}   xi {_fmt(args.xi)}",
        f"{'row':<4}{'intermediate':<15}{'engine':<17}{'published':<17}"
        f"{'denominator':<17}flag",
    ]
    for row in sorted(ROW_DELTAS):
        dx, dy, ds = ROW_DELTAS[row]
        target = (args.nx + dx, args.ny + dy, args.ns + ds)
        channel = channels.pop(target, None)
        engine = channel.element if channel is not None else 0.0
        denom = channel.denominator if channel is not None \
            else channel_denominator(row, args.r)
        published = published_element(row, state, args.r, args.xi)
        flag = "MISMATCH" if abs(engine - published) > 1e-9 * zeta else "ok"
        target_txt = f"({target[0]},{target[1]},{target[2]})"
        lines.append(f"{row:<4}{target_txt:<15}{_fmt(engine):<17}"
                     f"{_fmt(published):<17}{_fmt(denom):<17}{flag}")
    for target in sorted(channels):
        c = channels[target]
        target_txt = f"({target[0]},{target[1]},{target[2]})"
        lines.append(f"{'-':<4}{target_txt:<15}{_fmt(c.element):<17}"
                     f"{'':<17}{_fmt(c.denominator):<17}stretch-only")
    print("\n".join(lines))
    return 0


# -- compare -----------------------------------------------------------------

def _read_experiment(path: str, allow_large: bool):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError(1, "empty data file") from None
        if header[:2] != ["nu_z_hz", "chi_over_2pi_hz"] or len(header) > 3 \
                or (len(header) == 3 and header[2] != "sigma_hz"):
            raise ParseError(1, "header must be nu_z_hz,chi_over_2pi_hz[,sigma_hz]")
        has_sigma = len(header) == 3
        records = []
        for rownum, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise ParseError(rownum, f"expected {len(header)} columns, got {len(row)}")
            try:
                nu_z = float(row[0])
                chi = float(row[1])
                sigma = float(row[2]) if has_sigma else None
            except ValueError:
                raise ParseError(rownum, f"non-numeric value in {row!r}") from None
            if nu_z <= 0:
                raise ValidationError(f"row {rownum}: nu_z_hz must be positive")
            if sigma is not None and sigma <= 0:
                raise ValidationError(f"row {rownum}: sigma_hz must be positive")
            if abs(chi) > 1000.0 and not allow_large:
                raise ValidationError(
                    f"row {rownum}: |chi| = {abs(chi):.3g} Hz exceeds 1 kHz, "
                    "a probable unit error; pass --allow-large to accept")
            records.append((nu_z, chi, sigma))
    return records, has_sigma


def _cmd_compare(args) -> int:
    _fill_common(args, None)
    species = _resolve_species(args.species, args.charge)
    records, has_sigma = _read_experiment(args.data, args.allow_large)
    header = ["nu_z_hz", "measured_hz", "paper_hz", "roos_hz",
              "resid_paper_hz", "resid_roos_hz"]
    if has_sigma:
        header += ["z_paper", "z_roos"]
    lines = ["  ".join(f"{h:<16}" for h in header).rstrip()]
    chi2 = {"paper": 0.0, "roos": 0.0}
    for nu_z, measured, sigma in records:
        trap = TrapConfig.from_linear(args.nu_perp, nu_z)
        spectrum = derive_spectrum(species, trap)
        model_p = chi_paper(spectrum).chi_over_2pi
        model_r = chi_roos(spectrum).chi_over_2pi
        cells = [nu_z, measured, model_p, model_r,
                 measured - model_p, measured - model_r]
        if has_sigma:
            z_p = (measured - model_p) / sigma
            z_r = (measured - model_r) / sigma
            chi2["paper"] += z_p * z_p
            chi2["roos"] += z_r * z_r
            cells += [z_p, z_r]
        lines.append("  ".join(f"{_fmt(v):<16}" for v in cells).rstrip())
    if has_sigma:
        lines.append(f"chi2_paper  {_fmt(chi2['paper'])}")
        lines.append(f"chi2_roos   {_fmt(chi2['roos'])}")
    with _output(args.out) as fh:
        fh.write("\n".join(lines) + "\n")
    return 0


# -- entry point ---------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ionkerr", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", help="single-point coefficient report")
    p.add_argument("--nu-z", type=float, default=None, dest="nu_z")
    p.add_argument("--nu-perp", type=float, default=None, dest="nu_perp")
    p.add_argument("--formula", choices=("paper", "roos", "both"), default="both")
    p.add_argument("--species", default=None,
                   help="species name (e.g. Ca-40) or mass in amu")
    p.add_argument("--charge", type=int, default=None)
    p.add_argument("--out", default=None, help="also write a one-row CSV here")
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_chi)

    p = sub.add_parser("sweep", help="chi over an axial-frequency grid (CSV)")
    p.add_argument("--nu-z-start", type=float, default=None, dest="nu_z_start")
    p.add_argument("--nu-z-stop", type=float, default=None, dest="nu_z_stop")
    p.add_argument("--nu-z-steps", type=int, default=None, dest="nu_z_steps")
    p.add_argument("--nu-perp", type=float, default=None, dest="nu_perp")
    p.add_argument("--formula", choices=("paper", "roos", "both"), default="both")
    p.add_argument("--species", default=None)
    p.add_argument("--charge", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="three-way cross-check with gates")
    p.add_argument("--r", type=float, default=5.0)
    p.add_argument("--cutoffs", default=None)
    p.add_argument("--xi", default=None,
                   help="descending xi ladder; a single value skips the fit")
    p.add_argument("--overlap-threshold", type=float, default=None,
                   dest="overlap_threshold")
    p.add_argument("--report", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("table1",
                       help="cubic-coupling channels vs published closed forms")
    p.add_argument("--nx", type=int, default=2)
    p.add_argument("--ny", type=int, default=1)
    p.add_argument("--ns", type=int, default=3)
    p.add_argument("--r", type=float, default=5.0)
    p.add_argument("--xi", type=float, default=1e-3)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("compare", help="residuals of measured data vs formulas")
    p.add_argument("--data", required=True,
                   help="CSV: nu_z_hz,chi_over_2pi_hz[,sigma_hz]")
    p.add_argument("--nu-perp", type=float, required=True, dest="nu_perp")
    p.add_argument("--species", default=None)
    p.add_argument("--charge", type=int, default=None)
    p.add_argument("--allow-large", action="store_true", dest="allow_large")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"ionkerr: i/o error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValidationError, DegenerateTrap, NearResonance,
            ValueError) as exc:
        print(f"ionkerr: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
