"""Command line interface.

Subcommands emit CSV or JSON tables for generic plotters: band tables,
resonance tables (with band intervals and transparency markers so a
scatter plot reproduces a full spectrum panel), transmission sweeps,
fixed-point classification sweeps, and resonance-depth convergence
studies.

Exit codes: 0 success (possibly an empty table), 2 invalid input,
3 precondition violation, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import (ContourError, DeterminantOverflowError,
                     EdgeDegeneracyError, HomogeneousCellError,
                     InvalidRangeError, NotCommensurateError, StepslabError)
from .medium import UnitCell, transparency_frequencies
from .mobius import fixed_points, iterate_limit, mobius_map, r1
from .monodromy import find_bands
from .resolvent import (Window, convergence_study, default_im_floor,
                        find_resonances, resonances_k1)
from .scattering import reflection_k, transmission_sq

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_NUMERICAL = 4

_CONFIG_KEYS = ("b1", "b2", "x2", "k", "lambda_max", "re_min", "re_max",
                "im_min", "grid_re", "format", "output", "k_list", "band_index")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return "%.12g" % value
    return str(value)


def _emit(header: list[str], rows: list[dict], meta: dict, fmt: str, output: str) -> None:
    if fmt == "json":
        text = json.dumps({"meta": meta, "rows": rows}, indent=2, sort_keys=True) + "\n"
    else:
        lines = [",".join(header)]
        lines.extend(",".join(_fmt(row.get(col)) for col in header) for row in rows)
        text = "\n".join(lines) + "\n"
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _add_shared(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--b1", type=float)
    parser.add_argument("--b2", type=float)
    parser.add_argument("--x2", type=float)
    parser.add_argument("--k", type=int)
    parser.add_argument("--lambda-max", type=float, dest="lambda_max")
    parser.add_argument("--re-min", type=float, dest="re_min")
    parser.add_argument("--re-max", type=float, dest="re_max")
    parser.add_argument("--im-min", type=float, dest="im_min")
    parser.add_argument("--grid-re", type=int, dest="grid_re")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--output")
    parser.add_argument("--config")


def _resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, an optional JSON config file, and explicit flags.

    Flags win over file values; file values win over defaults.
    """
    cfg = {
        "k": 1, "lambda_max": 4.0, "re_min": 0.0, "re_max": None,
        "im_min": None, "grid_re": 200, "format": "csv", "output": "-",
        "k_list": None, "band_index": 1,
    }
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(_CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key in _CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    for name in ("b1", "b2", "x2"):
        if cfg.get(name) is None:
            raise ValueError(f"missing cell parameter --{name}")
    cfg["cell"] = UnitCell(float(cfg["b1"]), float(cfg["b2"]), float(cfg["x2"]))
    if cfg["lambda_max"] is None or cfg["lambda_max"] <= 0.0:
        raise ValueError(f"lambda-max must be positive, got {cfg['lambda_max']}")
    if cfg["grid_re"] < 2:
        raise ValueError(f"grid-re must be at least 2, got {cfg['grid_re']}")
    if cfg["k"] < 1:
        raise ValueError(f"k must be a positive integer, got {cfg['k']}")
    if cfg["re_max"] is None:
        cfg["re_max"] = cfg["lambda_max"]
    if cfg["im_min"] is None:
        cfg["im_min"] = default_im_floor(cfg["cell"])
    if not cfg["re_min"] <= cfg["re_max"]:
        raise ValueError("window ill ordered: re-min exceeds re-max")
    return cfg


def _meta(cfg: dict, command: str) -> dict:
    return {
        "cell": {"b1": cfg["cell"].b1, "b2": cfg["cell"].b2, "x2": cfg["cell"].x2},
        "k": cfg["k"],
        "command": command,
        "version": __version__,
    }


def cmd_bands(cfg: dict) -> int:
    header = ["index", "lo", "hi", "lo_type", "hi_type"]
    rows = [{
        "index": b.index, "lo": b.lo, "hi": b.hi,
        "lo_type": b.lo_type.value if b.lo_type else None,
        "hi_type": b.hi_type.value if b.hi_type else None,
    } for b in find_bands(cfg["cell"], cfg["lambda_max"])]
    _emit(header, rows, _meta(cfg, "bands"), cfg["format"], cfg["output"])
    return EXIT_OK


def cmd_resonances(cfg: dict) -> int:
    cell = cfg["cell"]
    window = Window(cfg["re_min"], cfg["re_max"], cfg["im_min"])
    found = find_resonances(cell, cfg["k"], window)
    header = ["row_type", "re", "im", "residual", "band_index", "lo", "hi"]
    rows: list[dict] = [{
        "row_type": "resonance", "re": r.lam.real, "im": r.lam.imag,
        "residual": r.residual, "band_index": r.band_index,
    } for r in found]
    for b in find_bands(cell, cfg["re_max"]):
        rows.append({"row_type": "band", "band_index": b.index, "lo": b.lo, "hi": b.hi})
    for lam0 in transparency_frequencies(cell, cfg["re_max"]):
        rows.append({"row_type": "transparency", "re": lam0, "im": 0.0})
    _emit(header, rows, _meta(cfg, "resonances"), cfg["format"], cfg["output"])
    return EXIT_OK


def cmd_transmission(cfg: dict) -> int:
    cell = cfg["cell"]
    xs = np.linspace(0.0, cfg["lambda_max"], cfg["grid_re"] + 1)[1:]
    t = transmission_sq(cell, xs, cfg["k"])
    r = reflection_k(cell, xs, cfg["k"])
    r_sq = np.abs(r) ** 2
    header = ["lambda", "t_sq", "r_abs_sq"]
    rows = [{"lambda": float(x), "t_sq": float(tv), "r_abs_sq": float(rv)}
            for x, tv, rv in zip(xs, t, r_sq)]
    _emit(header, rows, _meta(cfg, "transmission"), cfg["format"], cfg["output"])
    return EXIT_OK


def cmd_fixed_points(cfg: dict) -> int:
    cell = cfg["cell"]
    if cell.homogeneous:
        raise HomogeneousCellError("fixed-point analysis needs a two-step cell (b1 != b2)")
    mobius_map(cell, 1.0)  # raises NotCommensurateError up front
    xs = np.linspace(0.0, cfg["lambda_max"], cfg["grid_re"] + 1)[1:]
    header = ["lambda", "kind", "z1_re", "z1_im", "z2_re", "z2_im",
              "limit_converged", "limit_re", "limit_im"]
    rows = []
    for x in xs:
        lam = float(x)
        try:
            fp = fixed_points(cell, lam)
        except EdgeDegeneracyError:
            rows.append({"lambda": lam, "kind": "degenerate_edge"})
            continue
        res = iterate_limit(cell, lam, r1(cell, lam))
        rows.append({
            "lambda": lam, "kind": fp.kind.value,
            "z1_re": fp.z1.real, "z1_im": fp.z1.imag,
            "z2_re": fp.z2.real, "z2_im": fp.z2.imag,
            "limit_converged": res.converged,
            "limit_re": res.value.real, "limit_im": res.value.imag,
        })
    _emit(header, rows, _meta(cfg, "fixed-points"), cfg["format"], cfg["output"])
    return EXIT_OK


def cmd_converge(cfg: dict) -> int:
    cell = cfg["cell"]
    k_list = cfg["k_list"]
    if not k_list:
        raise ValueError("converge requires --k-list")
    if any(b < a for a, b in zip(k_list, k_list[1:])):
        raise ValueError("k-list must be non-decreasing")
    bands = find_bands(cell, cfg["lambda_max"])
    idx = cfg["band_index"]
    matches = [b for b in bands if b.index == idx]
    if not matches:
        raise ValueError(f"no band with index {idx} below lambda-max={cfg['lambda_max']}")
    band = matches[0]
    header = ["k", "count", "max_im", "min_im"]
    rows: list[dict] = []
    for k in k_list:
        if k == 1:
            pad = 1e-6 + 1e-3 * band.width
            found = resonances_k1(cell, band.hi + pad, max(band.lo - pad, 0.0))
            found = [r for r in found if r.lam.imag >= cfg["im_min"]]
            ims = [r.lam.imag for r in found]
            rows.append({"k": 1, "count": len(found),
                         "max_im": max(ims) if ims else None,
                         "min_im": min(ims) if ims else None})
        else:
            row = convergence_study(cell, band, [k], im_floor=cfg["im_min"])[0]
            rows.append({"k": row.k, "count": row.count,
                         "max_im": row.max_im, "min_im": row.min_im})
    _emit(header, rows, _meta(cfg, "converge"), cfg["format"], cfg["output"])
    return EXIT_OK


def _parse_k_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"bad k-list {text!r}") from err


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stepslab",
        description="Band spectra, transmission and scattering resonances "
                    "of finite periodic two-step media.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("bands", "band intervals and edge types"),
        ("resonances", "complex resonances plus band and transparency markers"),
        ("transmission", "transmission and reflection over a frequency grid"),
        ("fixed-points", "disk-map fixed points, kinds and iteration limits"),
        ("converge", "resonance depth versus cell count"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_shared(p)
        if name == "converge":
            p.add_argument("--k-list", type=_parse_k_list, dest="k_list")
            p.add_argument("--band-index", type=int, dest="band_index")
    return parser


_HANDLERS = {
    "bands": cmd_bands,
    "resonances": cmd_resonances,
    "transmission": cmd_transmission,
    "fixed-points": cmd_fixed_points,
    "converge": cmd_converge,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
    except (ValueError, OSError, json.JSONDecodeError) as err:
        print(f"stepslab: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _HANDLERS[args.command](cfg)
    except (NotCommensurateError, HomogeneousCellError) as err:
        print(f"stepslab: precondition violated: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InvalidRangeError, ValueError) as err:
        print(f"stepslab: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (DeterminantOverflowError, ContourError, ArithmeticError) as err:
        print(f"stepslab: numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except StepslabError as err:
        print(f"stepslab: {err}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
