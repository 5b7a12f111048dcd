"""Command-line interface: embed, extract, attack, metrics, sweep, plot, fixtures.

Exit status is 0 on success, 1 for usage errors and 2 for runtime errors.
"""
import argparse
import logging
import sys
from pathlib import Path

from hybridmark import bitcodec, fixtures
from hybridmark.attacks import AttackSpec
from hybridmark.bench.config import SweepConfig, dump_config, load_config
from hybridmark.bench.plots import emit_plots
from hybridmark.bench.records import emit_csv, read_csv
from hybridmark.bench.sweep import run_sweep, sweep_metadata
from hybridmark.bitcodec import HEADER_BITS, as_bits, stream_to_text, text_to_stream, validate_header
from hybridmark.dft import (DEFAULT_ALPHA, DEFAULT_BAND, DEFAULT_MAG_FLOOR, DEFAULT_SEED,
                            dft_embed, dft_extract, plan_coords)
from hybridmark.errors import WatermarkError
from hybridmark.hybrid import DEFAULT_THRESHOLD, HybridOrder, hybrid_embed, hybrid_extract
from hybridmark.lsb import lsb_embed, lsb_extract, lsb_extract_n
from hybridmark.metrics import ber, mse, nc, psnr
from hybridmark.raster import load_image, save_image
from hybridmark.spectral import fft2, to_double

log = logging.getLogger("hybridmark")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _band(value):
    try:
        lo, hi = (float(v) for v in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("band must be 'r_in,r_out'") from None
    return lo, hi


def _image(ref):
    if ref.startswith("fixture:"):
        return fixtures.make(ref.split(":", 1)[1])
    return load_image(ref)


def _plan_args(p):
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="coordinate key (default 42)")
    p.add_argument("--band", type=_band, default=DEFAULT_BAND, help="mid-band annulus r_in,r_out")
    p.add_argument("--mag-floor", type=float, default=DEFAULT_MAG_FLOOR)


def build_parser():
    parser = _Parser(prog="hybridmark", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="embed a text watermark")
    p.add_argument("--method", choices=("lsb", "dft", "hybrid"), required=True)
    p.add_argument("--in", dest="input", required=True, help="host image (PGM/PNG or fixture:NAME)")
    p.add_argument("--out", required=True, help="output PGM")
    p.add_argument("--text", default="document")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--order", choices=[o.value for o in HybridOrder],
                   default=HybridOrder.DFT_THEN_LSB.value)
    _plan_args(p)

    p = sub.add_parser("extract", help="recover a watermark")
    p.add_argument("--method", choices=("lsb", "dft", "hybrid"), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--original", help="pristine host (required for dft/hybrid)")
    p.add_argument("--reference", help="expected watermark text; enables NC and the hybrid check")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--bits-out", help="write the recovered bitstream as 0/1 text")
    _plan_args(p)

    p = sub.add_parser("attack", help="apply one attack")
    p.add_argument("--kind", choices=("jpeg", "gauss", "gaussian", "sp", "saltpepper"), required=True)
    p.add_argument("--param", type=float, required=True, help="QF, variance or density")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("metrics", help="PSNR/MSE between images, NC/BER between bitstreams")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--bits-a", help="0/1 text file")
    p.add_argument("--bits-b", help="0/1 text file")

    p = sub.add_parser("sweep", help="run the benchmark grid")
    p.add_argument("--config", help="key = value config file (defaults: 3 fixtures x 3 methods x 13 attacks)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-plots", action="store_true")

    p = sub.add_parser("plot", help="render SVG charts from a sweep CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("fixtures", help="write the synthetic 512x512 test images as PGM")
    p.add_argument("--out-dir", required=True)
    return parser


def cmd_embed(args):
    host = _image(args.input)
    bits = text_to_stream(args.text)
    if args.method == "lsb":
        out = lsb_embed(host, bits)
    else:
        plan = plan_coords(host, args.seed, bits.size, args.band, args.mag_floor)
        if args.method == "dft":
            out = dft_embed(host, bits, args.alpha, plan)
        else:
            out = hybrid_embed(host, bits, args.alpha, plan, args.order)
    save_image(out, args.out)
    print(f"psnr: {psnr(host, out):.6f}")


def _dft_blind(img, original, args, spectrum):
    """Read the DFT header from the first 16 planned bins, then the payload."""
    head_plan = plan_coords(original, args.seed, HEADER_BITS, args.band, args.mag_floor,
                            spectrum=spectrum)
    head = dft_extract(img, original, head_plan, spectrum)
    total = HEADER_BITS + bitcodec.bits_to_int(head)
    plan = plan_coords(original, args.seed, total, args.band, args.mag_floor, spectrum=spectrum)
    return plan, dft_extract(img, original, plan, spectrum)


def cmd_extract(args):
    if args.method in ("dft", "hybrid") and not args.original:
        raise UsageError(f"--original is required for --method {args.method} (non-blind extraction)")
    img = _image(args.input)
    reference = text_to_stream(args.reference) if args.reference is not None else None
    path = None
    if args.method == "lsb":
        stream = lsb_extract_n(img, reference.size) if reference is not None else lsb_extract(img)
    else:
        original = _image(args.original)
        spectrum = fft2(to_double(original))
        if reference is not None:
            plan = plan_coords(original, args.seed, reference.size, args.band, args.mag_floor,
                               spectrum=spectrum)
            if args.method == "dft":
                stream = dft_extract(img, original, plan, spectrum)
            else:
                rep = hybrid_extract(img, original, plan, reference, args.threshold, spectrum)
                stream, path = rep.stream, rep.path
        elif args.method == "dft":
            _, stream = _dft_blind(img, original, args, spectrum)
        else:
            try:
                _, stream = _dft_blind(img, original, args, spectrum)
            except WatermarkError:
                stream = None
            path = "dft"
            if stream is None or not validate_header(stream):
                stream, path = lsb_extract(img), "lsb_fallback"
    if args.bits_out:
        Path(args.bits_out).write_text("".join(str(int(b)) for b in stream) + "\n")
    try:
        text = stream_to_text(stream)
    except WatermarkError as exc:
        if reference is None:
            raise
        log.warning("recovered stream does not decode: %s", exc)
        text = ""
    print(text)
    if reference is not None:
        print(f"nc: {nc(reference, stream):.6f}")
    if path is not None:
        print(f"path: {path}")


def cmd_attack(args):
    spec = AttackSpec(args.kind, args.param, args.seed)
    save_image(spec.apply(_image(args.input)), args.out)


def _read_bits(path):
    return as_bits("".join(Path(path).read_text().split()))


def cmd_metrics(args):
    did = False
    if args.a or args.b:
        if not (args.a and args.b):
            raise UsageError("--a and --b go together")
        a, b = _image(args.a), _image(args.b)
        print(f"mse: {mse(a, b):.6f}")
        print(f"psnr: {psnr(a, b):.6f}")
        did = True
    if args.bits_a or args.bits_b:
        if not (args.bits_a and args.bits_b):
            raise UsageError("--bits-a and --bits-b go together")
        x, y = _read_bits(args.bits_a), _read_bits(args.bits_b)
        print(f"nc: {nc(x, y):.6f}")
        print(f"ber: {ber(x, y):.6f}")
        did = True
    if not did:
        raise UsageError("give --a/--b images and/or --bits-a/--bits-b streams")


def cmd_sweep(args):
    config = load_config(args.config) if args.config else SweepConfig().validate()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records = run_sweep(config)
    emit_csv(records, out / "results.csv", sweep_metadata(config))
    (out / "config.used").write_text(dump_config(config))
    if not args.no_plots:
        emit_plots(records, out)
    failed = sum(r.failed for r in records)
    print(f"{len(records)} records ({failed} failed) -> {out / 'results.csv'}")


def cmd_plot(args):
    for path in emit_plots(read_csv(args.csv), args.out_dir):
        print(path)


def cmd_fixtures(args):
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, img in fixtures.all_fixtures().items():
        save_image(img, out / f"{name}.pgm")
        print(out / f"{name}.pgm")


COMMANDS = {
    "embed": cmd_embed, "extract": cmd_extract, "attack": cmd_attack, "metrics": cmd_metrics,
    "sweep": cmd_sweep, "plot": cmd_plot, "fixtures": cmd_fixtures,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hybridmark {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (WatermarkError, OSError, ValueError, KeyError) as exc:
        print(f"hybridmark {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
