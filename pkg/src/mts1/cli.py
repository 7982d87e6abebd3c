"""mts1 command line: generate, encode, decode, bench, cost, entropy, simulate, replay.

Exit codes: 0 success, 2 usage error, 3 data/parse/IO error, 4 accuracy violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict
from pathlib import Path

from .baselines import FormatId, encode_as
from .bench import run_bench
from .codec import SnapshotPolicy, decode_stream
from .corpus import read_corpus, write_corpus
from .errors import AccuracyViolation, MTSError, UnknownFormat
from .metrics import empirical_entropy, fleet_projection
from .model import FIELDS, AccuracyPolicy, ThresholdConfig
from .reports import clean, dump_json, file_entry, render_table, report_doc, to_csv, write_manifest
from .simkit import GeneratorConfig, generate_series, load_graph, simulate

log = logging.getLogger("mts1")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_ACCURACY = 4


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _epsilon(text: str) -> ThresholdConfig:
    try:
        return ThresholdConfig.from_profile(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _default_seed() -> int:
    env = os.environ.get("MTS1_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"MTS1_SEED must be an integer, got {env!r}") from None


def _codec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon-profile", type=_epsilon, default=ThresholdConfig(),
                   help='"default", "lossless", or "field=eps,..." overrides (default: default)')
    p.add_argument("--snapshot-interval", type=_positive_int, default=100,
                   help="emit a FULL frame every K records (default: 100)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mts1", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic JSONL corpus")
    p.add_argument("--n", type=_positive_int, required=True, help="number of records")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: $MTS1_SEED or 0)")
    p.add_argument("--interval", type=_positive, default=30.0, help="seconds between samples")
    p.add_argument("--host", default="host-0001")
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("encode", help="encode a JSONL corpus in one format")
    p.add_argument("corpus", type=Path)
    p.add_argument("--format", default="mts1")
    p.add_argument("--out", type=Path, required=True)
    _codec_args(p)

    p = sub.add_parser("decode", help="decode an MTS-1 stream to a JSONL corpus")
    p.add_argument("stream", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--theta", default=None,
                   help='required accuracy "field=theta,..."; exit 4 if the stream cannot meet it')

    p = sub.add_parser("bench", help="compare encoded sizes across formats")
    p.add_argument("corpora", type=Path, nargs="+")
    p.add_argument("--formats", default=",".join(f.value for f in FormatId))
    p.add_argument("--no-reduction", action="store_true", help="skip ratios against JSON")
    p.add_argument("--out", type=Path, default=None, help="write OUT.csv, OUT.json and a manifest")
    _codec_args(p)

    p = sub.add_parser("cost", help="fleet bandwidth and cost projection")
    p.add_argument("--hosts", type=_non_negative, required=True)
    p.add_argument("--interval", type=_positive, required=True, help="seconds between payloads")
    p.add_argument("--days", type=_positive, default=30.0)
    p.add_argument("--b-json", type=_non_negative, required=True, help="JSON bytes per payload")
    p.add_argument("--b-fmt", type=_non_negative, required=True, help="compared format bytes per payload")
    p.add_argument("--price-per-gb", type=_non_negative, required=True)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("entropy", help="byte-level Shannon entropy of files")
    p.add_argument("files", type=Path, nargs="+")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("simulate", help="run the forwarding-graph loss simulation")
    p.add_argument("graph", type=Path, help='edge list: "src dst loss_prob" per line')
    p.add_argument("--source", action="append", required=True, metavar="NODE=CORPUS",
                   help="corpus transmitted by NODE (repeatable)")
    p.add_argument("--loss-seed", type=int, default=None, help="default: $MTS1_SEED or 0")
    p.add_argument("--out", type=Path, default=None)
    _codec_args(p)

    p = sub.add_parser("replay", help="re-run a manifest and verify output checksums")
    p.add_argument("manifest", type=Path)
    return parser


def _emit(args, command: str, params: dict, columns, rows, summary=None, seed=None) -> None:
    rows = clean(rows)
    summary = clean(summary or {})
    print(render_table(columns, rows))
    for key, value in summary.items():
        print(f"{key}: {json.dumps(value)}")
    if args.out is None:
        return
    args.out.parent.mkdir(parents=True, exist_ok=True)
    csv_path = args.out.with_name(args.out.name + ".csv")
    json_path = args.out.with_name(args.out.name + ".json")
    csv_path.write_text(to_csv(columns, rows), encoding="utf-8")
    json_path.write_text(dump_json(report_doc(command, params, columns, rows, summary)), encoding="utf-8")
    _manifest(args, command, params, seed, [csv_path, json_path])


def _manifest(args, command, params, seed, outputs) -> None:
    path = args.out.with_name(args.out.name + ".manifest.json")
    write_manifest(path, command, params, seed, args.argv, outputs)
    log.info("wrote %s", path)


def _eps_params(args) -> dict:
    return {"epsilon": args.epsilon_profile.as_dict(), "snapshot_interval": args.snapshot_interval}


def _pin_seed(args, flag: str, given, seed: int) -> None:
    # record the resolved seed so replay does not depend on the environment
    if given is None:
        args.argv = args.argv + [flag, str(seed)]


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    _pin_seed(args, "--seed", args.seed, seed)
    cfg = GeneratorConfig(seed=seed, n_records=args.n, interval=args.interval)
    series = generate_series(cfg, args.host)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    size = write_corpus(series, args.out)
    print(f"wrote {args.n} records ({size} bytes) to {args.out}")
    params = {"n": args.n, "seed": seed, "interval": args.interval, "host": args.host}
    _manifest(args, "generate", params, seed, [args.out])
    return EXIT_OK


def cmd_encode(args) -> int:
    fmt = FormatId.parse(args.format)
    series = read_corpus(args.corpus)
    data = encode_as(series, fmt, args.epsilon_profile, SnapshotPolicy(args.snapshot_interval))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_bytes(data)
    print(f"wrote {len(data)} bytes of {fmt.value} to {args.out}")
    params = {"corpus": str(args.corpus), "format": fmt.value, **_eps_params(args)}
    _manifest(args, "encode", params, None, [args.out])
    return EXIT_OK


def cmd_decode(args) -> int:
    policy = None
    if args.theta:
        theta = {}
        for item in args.theta.split(","):
            name, _, value = item.partition("=")
            if name.strip() not in FIELDS:
                raise UsageError(f"unknown field in --theta: {name!r}")
            theta[name.strip()] = float(value)
        policy = AccuracyPolicy(theta, ThresholdConfig.lossless())
    series = decode_stream(args.stream.read_bytes(), policy)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_corpus(series, args.out)
    print(f"decoded {len(series)} records for host {series.host_id!r} to {args.out}")
    _manifest(args, "decode", {"stream": str(args.stream), "theta": args.theta}, None, [args.out])
    return EXIT_OK


BENCH_COLUMNS = ["corpus", "n", "format", "bytes", "bytes_per_payload", "reduction_vs_json",
                 "entropy_bits_per_byte", "growth_factor"]


def cmd_bench(args) -> int:
    formats = []
    for name in args.formats.split(","):
        fmt = FormatId.parse(name)
        if fmt not in formats:
            formats.append(fmt)
    if len(formats) < 2:
        raise UsageError("bench needs at least two formats")
    reduction = not args.no_reduction
    if reduction and FormatId.JSON not in formats:
        raise UsageError("reduction ratios need the 'json' baseline format; add it or pass --no-reduction")
    corpora = [(path.stem, read_corpus(path)) for path in args.corpora]
    names = [n for n, _ in corpora]
    if len(set(names)) != len(names):
        raise UsageError("corpus file names must be distinct")
    report = run_bench(corpora, formats, args.epsilon_profile, SnapshotPolicy(args.snapshot_interval), reduction)
    largest = max(corpora, key=lambda c: len(c[1]))[0] if len(corpora) > 1 else None
    rows = []
    for row in report.rows:
        d = asdict(row)
        d["growth_factor"] = report.growth.get(row.format) if row.corpus == largest else None
        rows.append(d)
    params = {"corpora": [str(p) for p in args.corpora], "formats": [f.value for f in formats],
              "reduction": reduction, **_eps_params(args)}
    summary = {"growth_factor": report.growth} if report.growth else {}
    _emit(args, "bench", params, BENCH_COLUMNS, rows, summary)
    return EXIT_OK


COST_COLUMNS = ["format", "bytes_per_payload", "transmissions", "gb", "cost"]


def cmd_cost(args) -> int:
    proj = fleet_projection(args.hosts, args.interval, args.days, args.b_json, args.b_fmt, args.price_per_gb)
    rows = [
        {"format": "json", "bytes_per_payload": args.b_json, "transmissions": proj.transmissions,
         "gb": proj.json_gb, "cost": proj.json_cost},
        {"format": "fmt", "bytes_per_payload": args.b_fmt, "transmissions": proj.transmissions,
         "gb": proj.fmt_gb, "cost": proj.fmt_cost},
    ]
    summary = {
        "transmissions": proj.transmissions,
        "saved_gb": proj.saved_gb,
        "monthly_savings": proj.monthly_savings,
        "annual_savings": proj.annual_savings,
    }
    params = {"hosts": args.hosts, "interval": args.interval, "days": args.days,
              "b_json": args.b_json, "b_fmt": args.b_fmt, "price_per_gb": args.price_per_gb}
    _emit(args, "cost", params, COST_COLUMNS, rows, summary)
    return EXIT_OK


ENTROPY_COLUMNS = ["file", "size_bytes", "entropy_bits_per_byte", "total_bits", "density"]


def cmd_entropy(args) -> int:
    rows = []
    for path in args.files:
        rep = empirical_entropy(path.read_bytes())
        rows.append({"file": str(path), **rep.as_dict()})
    _emit(args, "entropy", {"files": [str(p) for p in args.files]}, ENTROPY_COLUMNS, rows)
    return EXIT_OK


SIM_COLUMNS = ["edge", "sent", "lost", "delivered", "bytes"]


def cmd_simulate(args) -> int:
    seed = args.loss_seed if args.loss_seed is not None else _default_seed()
    _pin_seed(args, "--loss-seed", args.loss_seed, seed)
    graph = load_graph(args.graph)
    series = {}
    for item in args.source:
        node, sep, path = item.partition("=")
        if not sep or not node or not path:
            raise UsageError(f"--source expects NODE=CORPUS, got {item!r}")
        if node in series:
            raise UsageError(f"duplicate --source for node {node!r}")
        series[node] = read_corpus(Path(path))
    report = simulate(graph, series, args.epsilon_profile, SnapshotPolicy(args.snapshot_interval), seed)
    rows = [{"edge": k, **asdict(v)} for k, v in report.edges.items()]
    doc = report.as_dict()
    summary = {
        "delivery_ratio": doc["delivery_ratio"],
        "within_theta": doc["within_theta"],
        "max_error": doc["max_error"],
        "sources": doc["sources"],
    }
    params = {"graph": str(args.graph), "sources": args.source, "loss_seed": seed, **_eps_params(args)}
    _emit(args, "simulate", params, SIM_COLUMNS, rows, summary, seed)
    if not report.within_theta:
        log.error("reconstruction exceeded theta")
        return EXIT_ACCURACY
    return EXIT_OK


def cmd_replay(args) -> int:
    doc = json.loads(args.manifest.read_text(encoding="utf-8"))
    code = main(doc["argv"])
    if code != EXIT_OK:
        return code
    mismatched = []
    for entry in doc["outputs"]:
        now = file_entry(Path(entry["path"]))
        if now["sha256"] != entry["sha256"]:
            mismatched.append(entry["path"])
    if mismatched:
        print("checksum mismatch: " + ", ".join(mismatched), file=sys.stderr)
        return EXIT_DATA
    print(f"replayed {doc['command']}: {len(doc['outputs'])} outputs identical")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "bench": cmd_bench,
    "cost": cmd_cost,
    "entropy": cmd_entropy,
    "simulate": cmd_simulate,
    "replay": cmd_replay,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, UnknownFormat) as exc:
        parser.print_usage(sys.stderr)
        print(f"mts1 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AccuracyViolation as exc:
        print(f"mts1 {args.command}: accuracy violation: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except (MTSError, OSError, ValueError) as exc:
        print(f"mts1 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
