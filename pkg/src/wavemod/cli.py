"""Command-line front end for the BER / PSD / PAPR scenario runner.

Flags may be combined with a flat key=value config file; file entries
override flags.  Exit codes: 0 success, 2 configuration error, 3 numerical
failure.
"""

import argparse
import sys
from dataclasses import fields, replace

import numpy as np

from .channel import EqualizationError
from .sim import (
    CHANNELS,
    METRICS,
    WAVEFORMS,
    ConfigError,
    ScenarioConfig,
    WaveformParams,
    run_scenario,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_WP_FIELDS = {f.name for f in fields(WaveformParams)}
_SC_FIELDS = {f.name for f in fields(ScenarioConfig)} - {"waveform_params"}


def parse_config_file(path) -> dict:
    """Flat key=value lines; '#' starts a comment, blank lines are skipped."""
    values = {}
    with open(path) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key] = val
    return values


def _coerce(key: str, val: str):
    if key in ("ebn0_grid_db",):
        return tuple(float(v) for v in val.replace(",", " ").split())
    if key in ("active",):
        return tuple(int(v) for v in val.replace(",", " ").split())
    if key in ("frames", "seed", "qam_order", "subcarriers", "subsymbols",
               "overlap", "cp_len", "n_fft", "min_bits"):
        return int(val)
    if key == "error_target":
        return None if val.lower() in ("none", "off") else int(val)
    if key == "tvfs_corrected":
        return val.lower() in ("1", "true", "yes")
    return val


def build_config(args) -> ScenarioConfig:
    overrides = {}
    if args.config:
        for key, val in parse_config_file(args.config).items():
            if key not in _SC_FIELDS | _WP_FIELDS:
                raise ConfigError(f"config file: unknown key {key!r}")
            overrides[key] = _coerce(key, val)
    wp_kwargs = {k: v for k, v in overrides.items() if k in _WP_FIELDS}
    sc_kwargs = {k: v for k, v in overrides.items() if k in _SC_FIELDS}
    config = ScenarioConfig(
        waveform=sc_kwargs.pop("waveform", args.waveform),
        channel=sc_kwargs.pop("channel", args.channel),
        metric=args.metric,
        frames=sc_kwargs.pop("frames", args.frames),
        seed=sc_kwargs.pop("seed", args.seed),
        output_path=sc_kwargs.pop("output_path", args.out),
        waveform_params=WaveformParams(**wp_kwargs),
    )
    if args.ebn0 is not None and "ebn0_grid_db" not in sc_kwargs:
        sc_kwargs["ebn0_grid_db"] = tuple(args.ebn0)
    config = replace(config, **sc_kwargs)
    if config.waveform is None:
        raise ConfigError("waveform: required (flag --waveform or config file)")
    config.validate()
    return config


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavemod",
        description="Multicarrier waveform Monte Carlo simulations",
    )
    sub = parser.add_subparsers(dest="metric", required=True)
    for metric in METRICS:
        p = sub.add_parser(metric, help=f"run a {metric.upper()} scenario")
        p.add_argument("--waveform", choices=WAVEFORMS)
        p.add_argument("--channel", choices=CHANNELS, default="awgn")
        p.add_argument("--ebn0", type=float, nargs="+", default=None,
                       help="Eb/N0 grid in dB (BER only)")
        p.add_argument("--frames", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--config", default=None, help="key=value config file")
        p.add_argument("--out", default=None, help="CSV output path")
        p.add_argument("--emit-plot-data", default=None, metavar="PATH",
                       help="also write gnuplot-ready whitespace columns")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        config = build_config(args)
    except (ConfigError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        curve = run_scenario(config)
    except (EqualizationError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.emit_plot_data:
        cols = [curve.abscissa, curve.values] + [np.asarray(c) for c in curve.extra.values()]
        header = " ".join(["abscissa", "value"] + list(curve.extra))
        np.savetxt(args.emit_plot_data, np.column_stack(cols), header=header)
    for x, v in zip(curve.abscissa, curve.values):
        print(f"{x:g}\t{v:.6e}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
