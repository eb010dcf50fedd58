"""Command-line entry point: ``irsbeam {pattern,codebook,sweep,train}``.

Exit status is 0 on success, 1 on a usage error and 2 when a numerical
step (shape inversion) fails.
"""

from __future__ import annotations

import argparse
import io
import math
import sys

from . import __version__
from .array_factor import afm_grid_values
from .codebook import build_codebook
from .combining import CombinationSpec, bmw_ss_codebook, m_combination
from .geometry import ArrayConfig, CascadedDirection, ChannelRealization
from .io import dump_codebook, pattern_csv, pattern_json, trace_json, write_csv
from .shape_expr import ShapeSyntaxError, parse_shape
from .synthesis import BeamSpec, InversionError, narrow_profile, ncpd_flat, synthesize
from .training import (codebook_for, dws_train, hybrid_train, js_train,
                       misalignment_rate, sample_direction, trial_rng)

EXIT_USAGE = 1
EXIT_NUMERIC = 2

METHODS = ("ncpd", "comb4", "comb16", "narrow", "omni", "shaped")
RATE_COLUMNS = ("ncpd_rate", "bmwss_rate", "ideal_rate")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    return float(parts[0]), float(parts[1])


def parse_range(text: str) -> list[float]:
    """``start:stop:step`` (endpoints inclusive), a comma list, or one value."""
    if ":" in text:
        try:
            start, stop, step = (float(p) for p in text.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
        if step <= 0 or stop < start:
            raise argparse.ArgumentTypeError(f"bad range {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + k * step, 12) for k in range(count)]
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad value list {text!r}") from None


def parse_ints(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def parse_method(text: str) -> str:
    if text in METHODS or text.startswith("shaped:"):
        return text
    raise argparse.ArgumentTypeError(
        f"unknown method {text!r} (choose from {', '.join(METHODS)} or shaped:<expr>)")


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _spacing(args) -> float:
    return ArrayConfig(1, 1, args.spacing).kd


def _need(args, name, method):
    if getattr(args, name) is None:
        raise UsageError(f"--{name} is required for method {method}")
    return getattr(args, name)


def build_pattern_profile(args):
    if args.method.startswith("shaped:"):
        args.method, args.shape = "shaped", args.method[len("shaped:"):]
    m = args.method
    if m == "narrow":
        return narrow_profile(_need(args, "psi", m), args.n)
    if m == "omni":
        return ncpd_flat(-2.0, 2.0, args.n)
    a, b = _need(args, "band", m)
    if m == "ncpd":
        return ncpd_flat(a, b, args.n)
    if m in ("comb4", "comb16"):
        sub = 4 if m == "comb4" else 16
        return m_combination(CombinationSpec(sub, a, b, args.n, args.stitching))
    shape = parse_shape(_need(args, "shape", m))
    return synthesize(BeamSpec(a, b, shape), args.n)


def cmd_pattern(args) -> int:
    profile = build_pattern_profile(args)
    beta, values = afm_grid_values(profile, _spacing(args), args.grid)
    config = {
        "command": "pattern", "method": args.method, "n": args.n,
        "band": list(args.band) if args.band else None, "psi": args.psi,
        "shape": args.shape, "grid": args.grid, "spacing": args.spacing,
        "stitching": args.stitching, "seed": None,
    }
    if args.format == "json":
        _emit(pattern_json(beta, values, config), args.output)
    else:
        _emit(pattern_csv(beta, values, config), args.output)
    return 0


def cmd_codebook(args) -> int:
    if args.kind == "ncpd":
        cb = build_codebook(args.n)
    else:
        cb = bmw_ss_codebook(args.n, stitching=args.stitching)
    config = {"command": "codebook", "n": args.n, "kind": args.kind,
              "stitching": args.stitching if args.kind == "bmw-ss" else None,
              "seed": None}
    _emit(dump_codebook(cb, config), args.output)
    return 0


def sweep_rows(mode: str, snrs, sizes, scheme: str, trials: int, seed: int,
               sampler: str = "beta", stitching: str = "continuous"):
    """Misalignment rates for each SNR (``mode="snr"``) or array size (``mode="size"``)."""
    points = [(s, sizes[0]) for s in snrs] if mode == "snr" else [(snrs[0], n) for n in sizes]
    rows = []
    for snr, n in points:
        rates = [misalignment_rate(scheme, kind, snr, trials, seed, n,
                                   sampler=sampler, stitching=stitching)
                 for kind in ("ncpd", "bmw-ss", "ideal")]
        rows.append([snr if mode == "snr" else n, *rates])
    return rows


def cmd_sweep(args) -> int:
    if args.seed is None:
        raise UsageError("sweep is stochastic: --seed is required")
    if args.trials <= 0:
        raise UsageError("--trials must be positive")
    if args.mode == "snr" and len(args.n) != 1:
        raise UsageError("an SNR sweep takes a single --n")
    if args.mode == "size" and len(args.snr) != 1:
        raise UsageError("a size sweep takes a single --snr")
    rows = sweep_rows(args.mode, args.snr, args.n, args.scheme, args.trials,
                      args.seed, args.sampler, args.stitching)
    first = "snr_db" if args.mode == "snr" else "n"
    config = {"command": "sweep", "mode": args.mode, "seed": args.seed,
              "trials": args.trials, "scheme": args.scheme, "snr": args.snr,
              "n": args.n, "sampler": args.sampler, "stitching": args.stitching}
    buf = io.StringIO()
    write_csv(buf, (first, *RATE_COLUMNS), rows, config)
    _emit(buf.getvalue(), args.output)
    return 0


def cmd_train(args) -> int:
    n_ver = args.n if args.n_ver is None else args.n_ver
    noiseless = math.isinf(args.snr) and args.snr > 0
    given = args.beta_hor is not None and args.beta_ver is not None
    if args.seed is None and not (noiseless and given):
        raise UsageError("training with noise or a random direction needs --seed")
    if args.scheme in ("js", "hybrid") and n_ver != args.n:
        raise UsageError(f"{args.scheme} needs a square array (n == n-ver)")
    seed = 0 if args.seed is None else args.seed
    rng = trial_rng(seed, 0)
    if given:
        direction = CascadedDirection(args.beta_hor, args.beta_ver)
    else:
        direction = sample_direction(rng)
    ch = ChannelRealization(direction, args.gain)
    cb_h = codebook_for(args.kind, args.n, args.stitching)
    cb_v = codebook_for(args.kind, n_ver, args.stitching)
    ideal = args.kind == "ideal"
    if args.scheme == "js":
        out = js_train(cb_h, ch, args.snr, rng, cb_ver=cb_v, stop_layer=args.stop_layer,
                       ideal_first_layer=ideal)
    elif args.scheme == "dws":
        out = dws_train(cb_h, cb_v, ch, args.snr, rng, ideal_first_layer=ideal)
    else:
        if args.switch_layer is None:
            raise UsageError("--switch-layer is required for the hybrid scheme")
        out = hybrid_train(cb_h, cb_v, ch, args.snr, rng, args.switch_layer,
                           ideal_first_layer=ideal)
    config = {"command": "train", "scheme": args.scheme, "n": args.n, "n_ver": n_ver,
              "kind": args.kind, "snr_db": args.snr, "seed": args.seed,
              "stop_layer": args.stop_layer, "switch_layer": args.switch_layer,
              "gain": args.gain, "stitching": args.stitching}
    truth = {"beta_hor": direction.beta_hor, "beta_ver": direction.beta_ver}
    _emit(trace_json(out, config, truth), args.output)
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="irsbeam", description="IRS beam synthesis and beam-training simulation")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pat = sub.add_parser("pattern", help="normalised AFM of one synthesised beam")
    pat.add_argument("--method", type=parse_method, required=True,
                     help="ncpd, comb4, comb16, narrow, omni, shaped or shaped:<expr>")
    pat.add_argument("--n", type=int, required=True, help="elements on the axis")
    pat.add_argument("--band", type=parse_pair, help="target band 'a,b'")
    pat.add_argument("--psi", type=float, help="narrow-beam direction")
    pat.add_argument("--shape", help="shape expression in beta, e.g. 'beta' or '1+beta^2'")
    pat.add_argument("--grid", type=int, default=4001)
    pat.add_argument("--spacing", type=float, default=0.25, help="d / lambda")
    pat.add_argument("--stitching", choices=("continuous", "independent"), default="continuous")
    pat.add_argument("--format", choices=("csv", "json"), default="csv")
    pat.add_argument("-o", "--output")
    pat.set_defaults(func=cmd_pattern)

    cbk = sub.add_parser("codebook", help="dump a hierarchical codebook as JSON")
    cbk.add_argument("--n", type=int, required=True)
    cbk.add_argument("--kind", choices=("ncpd", "bmw-ss"), default="ncpd")
    cbk.add_argument("--stitching", choices=("continuous", "independent"), default="continuous")
    cbk.add_argument("-o", "--output")
    cbk.set_defaults(func=cmd_codebook)

    swp = sub.add_parser("sweep", help="misalignment rates versus SNR or array size")
    swp.add_argument("--mode", choices=("snr", "size"), default="snr")
    swp.add_argument("--snr", type=parse_range, required=True,
                     help="dB values: 'start:stop:step', 'a,b,c' or one value")
    swp.add_argument("--n", type=parse_ints, default=[256], help="element count(s)")
    swp.add_argument("--trials", type=int, default=10000)
    swp.add_argument("--seed", type=int)
    swp.add_argument("--scheme", choices=("first-layer", "js", "dws"), default="first-layer")
    swp.add_argument("--sampler", choices=("beta", "physical"), default="beta")
    swp.add_argument("--stitching", choices=("continuous", "independent"), default="continuous")
    swp.add_argument("-o", "--output")
    swp.set_defaults(func=cmd_sweep)

    trn = sub.add_parser("train", help="trace one beam-training run as JSON")
    trn.add_argument("--n", type=int, required=True, help="horizontal elements")
    trn.add_argument("--n-ver", type=int, help="vertical elements (default: --n)")
    trn.add_argument("--scheme", choices=("js", "dws", "hybrid"), default="js")
    trn.add_argument("--kind", choices=("ncpd", "bmw-ss", "ideal"), default="ncpd")
    trn.add_argument("--stop-layer", type=int)
    trn.add_argument("--switch-layer", type=int)
    trn.add_argument("--beta-hor", type=float)
    trn.add_argument("--beta-ver", type=float)
    trn.add_argument("--snr", type=float, default=math.inf, help="dB; 'inf' for noiseless")
    trn.add_argument("--gain", type=float, default=1.0)
    trn.add_argument("--seed", type=int)
    trn.add_argument("--stitching", choices=("continuous", "independent"), default="continuous")
    trn.add_argument("-o", "--output")
    trn.set_defaults(func=cmd_train)
    return p


_VALUE_FLAGS = ("--snr", "--band", "--psi", "--beta-hor", "--beta-ver", "--shape", "--method")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Attach values such as ``-10:40:5`` or ``-1,0`` to their flag.

    argparse only accepts a leading minus on plain numbers.
    """
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and len(argv[i + 1]) > 1 and (argv[i + 1][1].isdigit() or argv[i + 1][1] == "."):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = make_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        return args.func(args)
    except BrokenPipeError:
        sys.stderr.close()
        return 0
    except InversionError as exc:
        print(f"irsbeam: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ShapeSyntaxError, ValueError) as exc:
        print(f"irsbeam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
