"""Command-line front end.

Every subcommand writes a CSV, JSON or SVG artifact to ``--output`` (or
stdout).  Data files contain no timestamps; when writing to a file, run
metadata goes to a ``<output>.meta.json`` sidecar.

Exit codes: 0 success, 2 config/input error, 3 numerical failure, 4 I/O.
"""

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, NumericalError
from .fitting import fit_power_law, read_heating_csv
from .noise_budget import budget_report, load_noise_config
from .optics import BeamSpec, side_access
from .pseudopotential import analyze
from .rf_power import (
    RFDrive,
    ScalingCoefficients,
    ladder_power_oracle,
    ohmic_power_distributed,
    power_breakdown,
    scaling_coefficients,
    scaling_projection,
)
from .species import preset
from .svgplot import loglog_svg
from .trap_model import BUNDLED_TRAPS, bundled_config_path, load_trap_description
from .units import parse_drive, parse_frequency, parse_length
from .wiring import check_budget, conflict_regions, load_wiring, signal_count

CONFIG_DIR_ENV = "TRAPBUDGET_CONFIG_DIR"
BUNDLED_CONFIGS = (
    *BUNDLED_TRAPS,
    "enchilada_wiring",
    "johnson_leads",
    "battery_rc206k",
    "dac_rc206k",
    "dac_cheb1p3m",
)
SUBCOMMANDS = ("power", "ladder", "scale", "pseudo", "clip", "heating", "fit", "wiring")
POWER_COLUMNS = [
    "frequency_hz",
    "ohmic_trap_w",
    "ohmic_lead_w",
    "dielectric_trap_w",
    "dielectric_lead_w",
    "total_w",
]

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


@dataclass
class Sweep:
    start_hz: float
    stop_hz: float
    points: int
    log_spacing: bool = False

    def __post_init__(self):
        if self.points < 1:
            raise ConfigError("points must be >= 1", "sweep")
        if self.points > 1 and not self.start_hz < self.stop_hz:
            raise ConfigError("start must be below stop", "sweep")
        if self.log_spacing and self.start_hz <= 0:
            raise ConfigError("log sweep needs start > 0", "sweep")

    def frequencies(self):
        if self.points == 1:
            return np.array([self.start_hz])
        if self.log_spacing:
            return np.geomspace(self.start_hz, self.stop_hz, self.points)
        return np.linspace(self.start_hz, self.stop_hz, self.points)

    @classmethod
    def parse(cls, text):
        """``start:stop:points[:log]`` with optional unit suffixes."""
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ConfigError("expected start:stop:points[:log]", "sweep")
        try:
            start, stop = parse_frequency(parts[0]), parse_frequency(parts[1])
            points = int(parts[2])
        except ValueError as exc:
            raise ConfigError(str(exc), "sweep") from None
        log = len(parts) == 4 and parts[3].lower() in ("log", "geom")
        return cls(start, stop, points, log)


@dataclass
class RunRequest:
    subcommand: str
    config_path: str | None = None
    output_path: str | None = None
    format: str = "csv"
    sweep: Sweep | None = None
    options: dict = field(default_factory=dict)


def resolve_config(name_or_path) -> Path:
    """A path that exists, else ``name`` in ``$TRAPBUDGET_CONFIG_DIR``, else a bundled config."""
    path = Path(name_or_path)
    if path.is_file():
        return path
    stem = path.name if path.suffix in (".yaml", ".yml") else f"{path.name}.yaml"
    env_dir = os.environ.get(CONFIG_DIR_ENV)
    if env_dir and (Path(env_dir) / stem).is_file():
        return Path(env_dir) / stem
    bundled = bundled_config_path(Path(stem).stem)
    if bundled.is_file():
        return bundled
    raise ConfigError(f"config {name_or_path!r} not found")


def _sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def version_text():
    lines = [f"trapbudget {__version__}"]
    for name in BUNDLED_CONFIGS:
        lines.append(f"  {name}.yaml  sha256:{_sha256(bundled_config_path(name))}")
    return "\n".join(lines) + "\n"


# --- rendering --------------------------------------------------------------


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=True) + "\n"


def _require_format(request, allowed):
    if request.format not in allowed:
        raise ConfigError(
            f"{request.subcommand} supports {', '.join(allowed)}, not {request.format}", "format"
        )


def _drive(request, default):
    volts, hz = parse_drive(request.options.get("drive") or default)
    return RFDrive.from_hz(volts, hz)


# --- subcommands ------------------------------------------------------------


def cmd_power(request):
    _require_format(request, ("csv", "json"))
    trap = load_trap_description(resolve_config(request.config_path or "enchilada_solid"))
    volts, hz = parse_drive(request.options.get("drive") or "300V@50MHz")
    freqs = request.sweep.frequencies() if request.sweep else np.array([hz])
    rows = []
    for f in freqs:
        b = power_breakdown(trap, RFDrive.from_hz(volts, float(f)))
        rows.append([float(f), b.ohmic_trap, b.ohmic_lead, b.dielectric_trap, b.dielectric_lead, b.total])
    if request.format == "csv":
        return _csv_text(POWER_COLUMNS, rows)
    return _json_text(
        {
            "config": trap.name,
            "amplitude_v": volts,
            "rows": [dict(zip(POWER_COLUMNS, r)) for r in rows],
        }
    )


def cmd_ladder(request):
    _require_format(request, ("csv", "json"))
    trap = load_trap_description(resolve_config(request.config_path or "enchilada_solid"))
    drive = _drive(request, "300V@50MHz")
    segments = [int(s) for s in str(request.options.get("segments") or "1,10,100,1000").split(",")]
    if any(s < 1 for s in segments):
        raise ConfigError("segment counts must be >= 1", "segments")
    c, r = trap.rf_model.c_trap, trap.rf_model.r_trap
    closed = ohmic_power_distributed(drive, c, r)
    header = ["segments", "ladder_w", "closed_form_w", "relative_error"]
    rows = []
    for n in segments:
        p = ladder_power_oracle(drive, c, r, n)
        rows.append([n, p, closed, (p - closed) / closed if closed else 0.0])
    if request.format == "csv":
        return _csv_text(header, rows)
    return _json_text({"config": trap.name, "rows": [dict(zip(header, row)) for row in rows]})


def cmd_scale(request):
    _require_format(request, ("csv", "json"))
    opts = request.options
    if opts.get("alpha_o") is not None or opts.get("alpha_d") is not None:
        coeffs = ScalingCoefficients(float(opts.get("alpha_o") or 0), float(opts.get("alpha_d") or 0))
    else:
        trap = load_trap_description(resolve_config(request.config_path or "enchilada_solid"))
        breakdown = power_breakdown(trap, _drive(request, "300V@50MHz"))
        coeffs = scaling_coefficients(breakdown, int(opts.get("reference_sites") or 200))
    sites = [int(s) for s in str(opts.get("sites") or "200").split(",")]
    launches = [int(k) for k in str(opts.get("launches") or "1").split(",")]
    header = ["n_sites", "n_launches", "sites_per_launch", "total_w"]
    rows = []
    for n in sites:
        for k in launches:
            try:
                total = scaling_projection(coeffs, n, k)
            except ValueError:
                continue
            rows.append([n, k, n // k, total])
    if not rows:
        raise ConfigError("no site count divides evenly over the requested launches", "launches")
    if request.format == "csv":
        return _csv_text(header, rows)
    return _json_text(
        {
            "alpha_o_w": coeffs.alpha_o,
            "alpha_d_w": coeffs.alpha_d,
            "rows": [dict(zip(header, row)) for row in rows],
        }
    )


def cmd_pseudo(request):
    _require_format(request, ("json",))
    trap = load_trap_description(resolve_config(request.config_path or "enchilada_solid"))
    species = trap.species
    if request.options.get("species"):
        try:
            species = preset(request.options["species"])
        except ValueError as exc:
            raise ConfigError(str(exc), "species") from None
    drive = _drive(request, "85V@41.54MHz")
    result = analyze(species, drive, trap.pseudo)
    return _json_text(result.as_dict())


def cmd_clip(request):
    _require_format(request, ("json",))
    trap = load_trap_description(resolve_config(request.config_path or "enchilada_solid"))
    try:
        beam = BeamSpec(
            parse_length(request.options.get("wavelength") or "532nm"),
            parse_length(request.options.get("waist") or "5um"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc), "beam") from None
    return _json_text(side_access(beam, trap.geometry))


def cmd_heating(request):
    _require_format(request, ("csv", "json", "svg"))
    cfg = load_noise_config(resolve_config(request.config_path or "johnson_leads"))
    sweep = request.sweep
    if sweep is None:
        if not cfg.sweep:
            raise ConfigError("no sweep given and none in config", "sweep")
        try:
            sweep = Sweep(
                float(cfg.sweep["start_hz"]),
                float(cfg.sweep["stop_hz"]),
                int(cfg.sweep["points"]),
                bool(cfg.sweep.get("log_spacing", False)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad sweep section: {exc}", "sweep") from None
    table = budget_report(cfg.species, sweep.frequencies(), cfg.sources)
    if not np.all(np.isfinite(table.total)):
        raise NumericalError("non-finite heating rate in budget")
    if request.format == "csv":
        return _csv_text(table.header(), table.rows())
    if request.format == "json":
        return _json_text(
            {
                "species": cfg.species.name,
                "units": "quanta/s",
                "rows": [dict(zip(table.header(), row)) for row in table.rows()],
            }
        )
    series = [
        {"label": name, "x": table.frequencies, "y": col, "style": "line"}
        for name, col in table.rates.items()
    ]
    series.append({"label": "total", "x": table.frequencies, "y": table.total, "style": "line"})
    return loglog_svg(series, title="heating budget")


def cmd_fit(request):
    _require_format(request, ("json", "csv", "svg"))
    data_path = request.options.get("data")
    if not data_path:
        raise ConfigError("--data is required", "data")
    path = Path(data_path)
    if not path.is_file():
        raise ConfigError(f"data file {data_path!r} not found", "data")
    data = read_heating_csv(path)
    fit = fit_power_law(data)
    if not np.isfinite(fit.exponent):
        raise NumericalError("power-law fit did not converge to a finite exponent")
    if request.format == "json":
        return _json_text({"points": len(data.points), **fit.as_dict()})
    if request.format == "csv":
        header = ["points", "exponent", "exponent_stderr", "log_amplitude", "reference_hz"]
        return _csv_text(
            header,
            [[len(data.points), fit.exponent, fit.exponent_stderr, fit.log_amplitude, fit.reference_hz]],
        )
    f = np.geomspace(data.frequency.min(), data.frequency.max(), 50)
    label = f"fit: f^({fit.exponent:.2f} ± {fit.exponent_stderr:.2f})"
    return loglog_svg(
        [
            {"label": "data", "x": data.frequency, "y": data.rate, "style": "points"},
            {"label": label, "x": f, "y": fit(f), "style": "line"},
        ],
        title="heating rate power law",
    )


def cmd_wiring(request):
    _require_format(request, ("json",))
    wiring = load_wiring(resolve_config(request.config_path or "enchilada_wiring"))
    budget = request.options.get("budget")
    if budget is not None:
        wiring = replace(wiring, io_budget=int(budget))
    check = check_budget(wiring)
    out = {
        "signals": signal_count(wiring),
        "electrodes": len(wiring.electrodes),
        "io_budget": check.io_budget,
        "pass": check.passed,
        "margin": check.margin,
    }
    active = request.options.get("active")
    if active:
        regions = [r for r in active.split(",") if r]
        out["active_regions"] = regions
        out["conflicts"] = [
            {"signal": s, "regions": regs} for s, regs in conflict_regions(wiring, regions)
        ]
    return _json_text(out)


_COMMANDS = {
    "power": cmd_power,
    "ladder": cmd_ladder,
    "scale": cmd_scale,
    "pseudo": cmd_pseudo,
    "clip": cmd_clip,
    "heating": cmd_heating,
    "fit": cmd_fit,
    "wiring": cmd_wiring,
}


def _error(kind, exc, code):
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc), "exit_code": code}) + "\n")
    return code


def run(request: RunRequest) -> int:
    """Execute ``request`` and return the process exit status."""
    try:
        if request.subcommand not in _COMMANDS:
            raise ConfigError(f"unknown subcommand {request.subcommand!r}")
        text = _COMMANDS[request.subcommand](request)
    except (ConfigError, ValueError) as exc:
        return _error("config", exc, EXIT_CONFIG)
    except (NumericalError, ArithmeticError, np.linalg.LinAlgError) as exc:
        return _error("numerical", exc, EXIT_NUMERIC)
    except OSError as exc:
        return _error("io", exc, EXIT_IO)

    try:
        if request.output_path:
            out = Path(request.output_path)
            out.write_text(text)
            meta = {
                "tool": "trapbudget",
                "version": __version__,
                "subcommand": request.subcommand,
                "config": request.config_path,
                "format": request.format,
                "options": request.options,
                "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
                "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            }
            out.with_name(out.name + ".meta.json").write_text(_json_text(meta))
        else:
            sys.stdout.write(text)
    except OSError as exc:
        return _error("io", exc, EXIT_IO)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trapbudget",
        description="RF power, pseudopotential, optics and heating budgets for surface ion traps.",
    )
    parser.add_argument("--version", action="store_true", help="print version and bundled config checksums")
    sub = parser.add_subparsers(dest="subcommand")

    def common(p, formats, default_format):
        p.add_argument("--config", help="bundled config name or path to a YAML file")
        p.add_argument("--output", "-o", help="output file (default: stdout)")
        p.add_argument("--format", choices=formats, default=default_format)

    p = sub.add_parser("power", help="ohmic/dielectric power breakdown")
    common(p, ("csv", "json"), "csv")
    p.add_argument("--drive", help="RF drive, e.g. 300V@50MHz")
    p.add_argument("--sweep", help="frequency sweep start:stop:points[:log]")

    p = sub.add_parser("ladder", help="RC-ladder convergence against the distributed closed form")
    common(p, ("csv", "json"), "csv")
    p.add_argument("--drive")
    p.add_argument("--segments", help="comma-separated segment counts")

    p = sub.add_parser("scale", help="power versus number of sites and RF launches")
    common(p, ("csv", "json"), "csv")
    p.add_argument("--drive")
    p.add_argument("--reference-sites", type=int, help="sites in the configured trap (default 200)")
    p.add_argument("--sites", help="comma-separated site counts")
    p.add_argument("--launches", help="comma-separated launch counts")
    p.add_argument("--alpha-o", type=float, help="ohmic coefficient, W per site^3")
    p.add_argument("--alpha-d", type=float, help="dielectric coefficient, W per site")

    p = sub.add_parser("pseudo", help="radial frequency, depth and Mathieu q")
    common(p, ("json",), "json")
    p.add_argument("--drive")
    p.add_argument("--species", help="override species preset (Ca-40, Yb-171, Ba-138)")

    p = sub.add_parser("clip", help="side optical access and beam clipping")
    common(p, ("json",), "json")
    p.add_argument("--wavelength")
    p.add_argument("--waist")

    p = sub.add_parser("heating", help="heating-rate budget over a secular-frequency sweep")
    common(p, ("csv", "json", "svg"), "csv")
    p.add_argument("--sweep")

    p = sub.add_parser("fit", help="power-law fit of a heating-rate dataset")
    common(p, ("json", "csv", "svg"), "json")
    p.add_argument("--data", help="CSV with frequency_hz, rate_quanta_per_s[, sigma]")

    p = sub.add_parser("wiring", help="co-wiring I/O budget and conflicts")
    common(p, ("json",), "json")
    p.add_argument("--budget", type=int, help="override the map's I/O budget")
    p.add_argument("--active", help="comma-separated active region tags")
    return parser


_REQUEST_KEYS = {"subcommand", "config", "output", "format", "sweep", "version"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        sys.stdout.write(version_text())
        return EXIT_OK
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    try:
        sweep = Sweep.parse(args.sweep) if getattr(args, "sweep", None) else None
    except ConfigError as exc:
        return _error("config", exc, EXIT_CONFIG)
    options = {k: v for k, v in vars(args).items() if k not in _REQUEST_KEYS and v is not None}
    request = RunRequest(
        subcommand=args.subcommand,
        config_path=args.config,
        output_path=args.output,
        format=args.format,
        sweep=sweep,
        options=options,
    )
    return run(request)


if __name__ == "__main__":
    sys.exit(main())
