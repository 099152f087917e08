"""Command line interface: distance sweeps and the leading-order table.

Two subcommands.  `sweep` evaluates selected potential columns on a
distance grid for one surface model; `table1` evaluates the closed-form
small-distance coefficient for all four models at a single distance.
Output is CSV (comment header lines starting with '#', then a column
row, 12 significant digits) or a JSON mirror of the same data.

Exit codes: 0 success, 1 runtime failure in at least one row (quadrature
non-convergence or an unsupported model request), 2 usage error.

A config file (`key = value` lines, '#' comments, keys named like the
long flags) supplies defaults; explicit flags win.  The header never
records argv, job counts, or timestamps, so output bytes depend only on
the physics request; serial and parallel runs are identical.
"""

from __future__ import annotations

import argparse
import math
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .constants import CONSTANTS
from .gravity import SphereSpec, earth_potential, sphere_potential
from .greens import IntegrationError
from .materials import (
    Drude,
    DrudeLorentz,
    Material,
    PerfectConductor,
    Plasma,
    UnsupportedModelError,
)
from .potential import (
    FieldConfig,
    local_power_law,
    nonretarded_leading,
    nonretarded_mirror_u_du,
    retarded_mirror_u_du,
    u_dd,
    u_du,
    u_resonant,
)

ALL_OUTPUTS = (
    "u_dd",
    "u_du",
    "u_resonant",
    "u_ground",
    "u_excited",
    "nonret_asymptote",
    "ret_asymptote",
    "table1",
    "gravity_earth",
    "gravity_sphere",
    "exponent",
)
_ENERGY_COLUMNS = frozenset(ALL_OUTPUTS) - {"exponent"}
_MODEL_ORDER = ("pc", "plasma", "drude", "drude-lorentz")
_DEFAULT_OUTPUTS = "u_dd,u_du,u_ground"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepRequest:
    model: str = "pc"
    omega_p: float = 0.0
    gamma: float = 0.0
    omega_t: float = 0.0
    b_ext: float = 2.0
    theta: Optional[float] = None
    z_min: float = 1e-9
    z_max: float = 1e-6
    points: int = 25
    scale: str = "log"
    outputs: tuple[str, ...] = tuple(_DEFAULT_OUTPUTS.split(","))
    rel_tol: float = 1e-9
    energy_unit: str = "J"


def _material(req: SweepRequest, model: Optional[str] = None) -> Material:
    name = req.model if model is None else model
    if name == "pc":
        return PerfectConductor()
    if name == "plasma":
        return Plasma(omega_p=req.omega_p)
    if name == "drude":
        return Drude(omega_p=req.omega_p, gamma=req.gamma)
    if name == "drude-lorentz":
        return DrudeLorentz(omega_p=req.omega_p, omega_t=req.omega_t)
    raise ValueError(f"unknown model {name!r}")


def _grid(req: SweepRequest) -> list[float]:
    n = req.points
    if n == 1:
        return [req.z_min]
    if req.scale == "log":
        ratio = req.z_max / req.z_min
        return [req.z_min * ratio ** (i / (n - 1)) for i in range(n)]
    step = (req.z_max - req.z_min) / (n - 1)
    return [req.z_min + i * step for i in range(n)]


def _sweep_point(payload: tuple[SweepRequest, float]) -> dict[str, object]:
    """Evaluate one grid point.  Top level so it pickles for worker pools."""
    req, z = payload
    m = _material(req)
    cfg = FieldConfig(b_ext=req.b_ext, theta=req.theta)
    want = set(req.outputs)
    row: dict[str, object] = {"z": z}
    status = "ok"

    dd = du = math.nan
    try:
        if want & {"u_dd", "u_ground", "u_excited", "exponent"}:
            dd = u_dd(z, cfg, m, rel_tol=req.rel_tol)
        if want & {"u_du", "u_ground", "u_excited", "exponent"}:
            du = u_du(z, cfg, m, rel_tol=req.rel_tol)
    except IntegrationError:
        status = "error"

    resonant = math.nan
    if want & {"u_resonant", "u_excited"} and status == "ok":
        try:
            resonant = u_resonant(z, cfg, m, rel_tol=req.rel_tol)
        except (IntegrationError, UnsupportedModelError):
            status = "error"
        except ValueError:
            pass  # no field, no resonant channel; not a runtime failure

    row["u_dd"] = dd
    row["u_du"] = du
    row["u_resonant"] = resonant
    row["u_ground"] = dd + du
    row["u_excited"] = dd - du + resonant

    if "nonret_asymptote" in want:
        row["nonret_asymptote"] = nonretarded_mirror_u_du(z, cfg)
    if "ret_asymptote" in want:
        try:
            row["ret_asymptote"] = retarded_mirror_u_du(z, cfg)
        except ValueError:
            row["ret_asymptote"] = math.nan
    if "table1" in want:
        try:
            row["table1"] = nonretarded_leading(m, cfg, z=z)
        except ValueError:
            row["table1"] = math.nan
    if "gravity_earth" in want:
        row["gravity_earth"] = earth_potential(z)
    if "gravity_sphere" in want:
        row["gravity_sphere"] = sphere_potential(z)
    if "exponent" in want:
        if status == "ok":
            def ground(zz: float) -> float:
                return u_dd(zz, cfg, m, rel_tol=req.rel_tol) + u_du(
                    zz, cfg, m, rel_tol=req.rel_tol
                )

            try:
                row["exponent"] = local_power_law(z, ground)
            except IntegrationError:
                status = "error"
                row["exponent"] = math.nan
            except ValueError:
                row["exponent"] = math.nan
        else:
            row["exponent"] = math.nan

    row["status"] = status
    keep = ["z", *(o for o in ALL_OUTPUTS if o in want), "status"]
    return {k: row[k] for k in keep}


def run_sweep(req: SweepRequest, jobs: int = 1) -> list[dict[str, object]]:
    """Rows in grid order, energies in joules; caller converts units."""
    payloads = [(req, z) for z in _grid(req)]
    if jobs <= 1:
        return [_sweep_point(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_point, payloads, chunksize=1))


def run_table1(req: SweepRequest) -> list[dict[str, object]]:
    """Closed-form small-distance coefficient for all four models at z_min."""
    cfg = FieldConfig(b_ext=req.b_ext, theta=req.theta)
    rows: list[dict[str, object]] = []
    for name in _MODEL_ORDER:
        m = _material(req, model=name)
        row: dict[str, object] = {"model": name, "z": req.z_min}
        try:
            row["table1"] = nonretarded_leading(m, cfg, z=req.z_min)
        except ValueError:
            row["table1"] = math.nan  # leading form undefined at these parameters
        row["status"] = "ok"
        rows.append(row)
    return rows


def _unit_factor(unit: str) -> float:
    if unit == "J":
        return 1.0
    if unit == "eV":
        return CONSTANTS.e
    if unit == "neV":
        return CONSTANTS.e * 1e-9
    raise UsageError(f"unknown energy unit {unit!r}")


def _convert_units(
    rows: list[dict[str, object]], columns: Sequence[str], unit: str
) -> list[dict[str, object]]:
    factor = _unit_factor(unit)
    out = []
    for row in rows:
        new = dict(row)
        for col in columns:
            if col in _ENERGY_COLUMNS and isinstance(new.get(col), float):
                new[col] = new[col] / factor
        out.append(new)
    return out


def _format_cell(value: object) -> str:
    if isinstance(value, str):
        return value
    x = float(value)
    if math.isnan(x):
        return "nan"
    return f"{x:.11e}"


def write_csv(
    rows: list[dict[str, object]],
    columns: Sequence[str],
    header: dict[str, object],
    stream: TextIO,
) -> None:
    for key, value in header.items():
        stream.write(f"# {key}={value}\n")
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(_format_cell(row[c]) for c in columns) + "\n")


def write_json(
    rows: list[dict[str, object]],
    columns: Sequence[str],
    header: dict[str, object],
    stream: TextIO,
) -> None:
    def cell(value: object) -> object:
        if isinstance(value, float) and math.isnan(value):
            return None
        return value

    payload = {
        "header": header,
        "columns": list(columns),
        "rows": [{c: cell(row[c]) for c in columns} for row in rows],
    }
    json.dump(payload, stream, indent=2, allow_nan=False)
    stream.write("\n")


def _sweep_header(req: SweepRequest, command: str) -> dict[str, object]:
    header: dict[str, object] = {
        "tool": f"neutroncp {command}",
        "model": req.model,
        "omega_p": repr(req.omega_p),
        "gamma": repr(req.gamma),
        "omega_t": repr(req.omega_t),
        "b_ext": repr(req.b_ext),
        "theta": "avg" if req.theta is None else repr(req.theta),
        "z_min": repr(req.z_min),
        "z_max": repr(req.z_max),
        "points": req.points,
        "scale": req.scale,
        "rel_tol": repr(req.rel_tol),
        "energy_unit": req.energy_unit,
    }
    if command == "table1":
        del header["model"]  # the table always spans all four models
    return header


_CONFIG_CONVERTERS = {
    "model": str,
    "omega_p": float,
    "gamma": float,
    "omega_t": float,
    "b_ext": float,
    "theta": str,
    "z": float,
    "z_min": float,
    "z_max": float,
    "points": int,
    "scale": str,
    "outputs": str,
    "rel_tol": float,
    "jobs": int,
    "energy_unit": str,
    "format": str,
    "out": str,
}


def _load_config(path: str) -> dict[str, object]:
    cfg: dict[str, object] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected 'key = value'")
                key, value = (part.strip() for part in line.split("=", 1))
                key = key.replace("-", "_")
                if key not in _CONFIG_CONVERTERS:
                    raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
                try:
                    cfg[key] = _CONFIG_CONVERTERS[key](value)
                except ValueError as exc:
                    raise UsageError(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neutroncp",
        description="Neutron-surface dispersion potential sweeps and tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="config file with key = value defaults")
        p.add_argument(
            "--model", choices=_MODEL_ORDER, help="surface response model"
        )
        p.add_argument("--omega-p", type=float, help="plasma frequency in rad/s")
        p.add_argument("--gamma", type=float, help="Drude damping rate in rad/s")
        p.add_argument(
            "--omega-t", type=float, help="transverse resonance frequency in rad/s"
        )
        p.add_argument("--b-ext", type=float, help="external field in tesla")
        p.add_argument(
            "--theta", help="field angle to the normal in radians, or 'avg'"
        )
        p.add_argument("--rel-tol", type=float, help="relative quadrature tolerance")
        p.add_argument(
            "--energy-unit", choices=("J", "eV", "neV"), help="output energy unit"
        )
        p.add_argument("--out", help="output path, '-' for stdout")
        p.add_argument("--format", choices=("csv", "json"), help="output format")

    sweep = sub.add_parser("sweep", help="sweep the potential over distance")
    add_common(sweep)
    sweep.add_argument("--z-min", type=float, help="smallest distance in m")
    sweep.add_argument("--z-max", type=float, help="largest distance in m")
    sweep.add_argument("--points", type=int, help="number of grid points")
    sweep.add_argument("--scale", choices=("log", "linear"), help="grid spacing")
    sweep.add_argument(
        "--outputs",
        help="comma-separated subset of: " + ",".join(ALL_OUTPUTS),
    )
    sweep.add_argument("--jobs", type=int, help="worker processes (default 1)")

    table = sub.add_parser(
        "table1", help="leading small-distance coefficient for all four models"
    )
    add_common(table)
    table.add_argument("--z", type=float, help="distance in m")
    return parser


def _pick(args: argparse.Namespace, cfg: dict[str, object], key: str, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return cfg.get(key, default)


def _parse_theta(raw: object) -> Optional[float]:
    if raw is None or raw == "avg":
        return None
    try:
        return float(raw)  # type: ignore[arg-type]
    except ValueError as exc:
        raise UsageError(f"invalid theta {raw!r}: use radians or 'avg'") from exc


def _parse_outputs(raw: str) -> tuple[str, ...]:
    names = [s.strip() for s in raw.split(",") if s.strip()]
    unknown = [s for s in names if s not in ALL_OUTPUTS]
    if unknown:
        raise UsageError(
            f"unknown outputs {unknown}; choose from {','.join(ALL_OUTPUTS)}"
        )
    if not names:
        raise UsageError("outputs must name at least one column")
    # canonical column order regardless of how the request spells it
    return tuple(o for o in ALL_OUTPUTS if o in set(names))


def _build_request(args: argparse.Namespace, cfg: dict[str, object]) -> SweepRequest:
    is_sweep = args.command == "sweep"
    if is_sweep:
        z_min = float(_pick(args, cfg, "z_min", 1e-9))
        z_max = float(_pick(args, cfg, "z_max", 1e-6))
        points = int(_pick(args, cfg, "points", 25))
        outputs = _parse_outputs(str(_pick(args, cfg, "outputs", _DEFAULT_OUTPUTS)))
    else:
        z_min = z_max = float(_pick(args, cfg, "z", 1e-9))
        points = 1
        outputs = ("table1",)
    req = SweepRequest(
        model=str(_pick(args, cfg, "model", "pc")),
        omega_p=float(_pick(args, cfg, "omega_p", 0.0)),
        gamma=float(_pick(args, cfg, "gamma", 0.0)),
        omega_t=float(_pick(args, cfg, "omega_t", 0.0)),
        b_ext=float(_pick(args, cfg, "b_ext", 2.0)),
        theta=_parse_theta(_pick(args, cfg, "theta", None)),
        z_min=z_min,
        z_max=z_max,
        points=points,
        scale=str(_pick(args, cfg, "scale", "log")),
        outputs=outputs,
        rel_tol=float(_pick(args, cfg, "rel_tol", 1e-9)),
        energy_unit=str(_pick(args, cfg, "energy_unit", "J")),
    )
    _validate_request(req, is_sweep)
    return req


def _validate_request(req: SweepRequest, is_sweep: bool) -> None:
    if req.model not in _MODEL_ORDER:
        raise UsageError(f"unknown model {req.model!r}")
    if req.scale not in ("log", "linear"):
        raise UsageError(f"unknown scale {req.scale!r}")
    if req.energy_unit not in ("J", "eV", "neV"):
        raise UsageError(f"unknown energy unit {req.energy_unit!r}")
    if not (req.z_min > 0.0 and math.isfinite(req.z_min)):
        raise UsageError("z_min must be > 0 and finite")
    if is_sweep:
        if not (req.z_max >= req.z_min and math.isfinite(req.z_max)):
            raise UsageError("z_max must be finite and >= z_min")
        if req.points < 1:
            raise UsageError("points must be >= 1")
    if not (req.rel_tol > 0.0 and math.isfinite(req.rel_tol)):
        raise UsageError("rel_tol must be > 0 and finite")
    try:
        FieldConfig(b_ext=req.b_ext, theta=req.theta)
        if is_sweep:
            _material(req)
        else:
            for name in _MODEL_ORDER:
                _material(req, model=name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        cfg = _load_config(args.config) if args.config else {}
        req = _build_request(args, cfg)
        jobs = int(_pick(args, cfg, "jobs", 1)) if args.command == "sweep" else 1
        if jobs < 1:
            raise UsageError("jobs must be >= 1")
        out_path = str(_pick(args, cfg, "out", "-"))
        fmt = str(_pick(args, cfg, "format", "csv"))
        if fmt not in ("csv", "json"):
            raise UsageError(f"unknown format {fmt!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "sweep":
            rows = run_sweep(req, jobs=jobs)
            columns = ["z", *req.outputs, "status"]
        else:
            rows = run_table1(req)
            columns = ["model", "z", "table1", "status"]
        rows = _convert_units(rows, columns, req.energy_unit)
        header = _sweep_header(req, args.command)
        writer = write_csv if fmt == "csv" else write_json
        if out_path == "-":
            writer(rows, columns, header, sys.stdout)
        else:
            with open(out_path, "w", encoding="utf-8", newline="") as fh:
                writer(rows, columns, header, fh)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    failed = any(row.get("status") == "error" for row in rows)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
