"""Command-line interface.

Subcommands: ingest, detect, dmod, dominate, lexicon-score, pareto, run,
fixtures. Exit codes: 0 success, 1 usage error, 2 data error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import traceback
from pathlib import Path
from typing import Sequence

from . import __version__
from .community import AUTO, DetectionConfig, detect
from .domination import greedy_partial_dominating_set
from .errors import MalformedLineError, RadscalesError
from .events import WindowSpec, build_interaction_graph, ingest_events, parse_timestamp, slice_window
from .graph import induced_subgraph, load_edge_list, load_partition, write_edge_list, write_partition
from .lexicon import FoundationMap, parse_mfd_dic, score_by_community
from .modularity import d_modularity_report
from .pareto import CriterionSpec, Direction, ParetoPoint, pareto_frontier
from .pipeline import (
    AnalysisConfig,
    detect_membership,
    emit_plot_data,
    read_membership,
    run_speech_analysis,
    run_structural_analysis,
    write_json,
)
from .synth import PlantedPartitionParams, hub_hierarchy_graph, planted_partition, three_group_graph

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 on usage errors (default would be 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_window(arg: str) -> WindowSpec:
    """Parse ``label:start:end`` where start/end are ISO timestamps.

    Timestamps may themselves contain colons, so every split position is
    tried until both sides parse.
    """
    label, sep, rest = arg.partition(":")
    if not sep or not label:
        raise MalformedLineError(1, f"window {arg!r} is not label:start:end")
    positions = [i for i, ch in enumerate(rest) if ch == ":"]
    for pos in positions:
        try:
            start = parse_timestamp(rest[:pos])
            end = parse_timestamp(rest[pos + 1 :])
        except ValueError:
            continue
        return WindowSpec(label=label, start=start, end=end)
    raise MalformedLineError(1, f"window {arg!r} has no parseable start:end")


def _windows_from_config(raw: list[dict]) -> tuple[WindowSpec, ...]:
    return tuple(
        WindowSpec(
            label=w["label"],
            start=parse_timestamp(w["start"]),
            end=parse_timestamp(w["end"]),
        )
        for w in raw
    )


def _load_events(path: Path, kinds=None, keywords=None):
    with path.open("r", encoding="utf-8") as fh:
        return ingest_events(fh, kinds=kinds, keywords=keywords)


def _write_payload(payload: object, out: str | None) -> None:
    if out:
        write_json(payload, Path(out))
    else:
        json.dump(payload, sys.stdout, indent=2, ensure_ascii=False)
        sys.stdout.write("\n")


def _cmd_ingest(args) -> int:
    log = _load_events(Path(args.events), kinds=args.kinds, keywords=args.keywords)
    kinds_seen: dict[str, int] = {}
    for event in log:
        kinds_seen[event.kind] = kinds_seen.get(event.kind, 0) + 1
    _write_payload(
        {"events": len(log), "skipped": log.skipped, "byKind": dict(sorted(kinds_seen.items()))},
        args.out,
    )
    return EXIT_OK


def _cmd_detect(args) -> int:
    if args.edges:
        with open(args.edges, "r", encoding="utf-8") as fh:
            graph = load_edge_list(fh)
    else:
        if bool(args.start) != bool(args.end):
            raise ValueError("--start and --end must be given together")
        log = _load_events(Path(args.events), kinds=args.kinds)
        if args.start:
            window = WindowSpec(
                label="detection",
                start=parse_timestamp(args.start),
                end=parse_timestamp(args.end),
            )
            log = slice_window(log, window)
        graph = build_interaction_graph(log, args.kinds)
    config = DetectionConfig(
        seed=args.seed, max_passes=args.max_passes, min_gain_epsilon=args.min_gain
    )
    result = detect(graph, config)
    with open(args.out, "w", encoding="utf-8") as fh:
        write_partition(result.partition, graph.labels, fh)
    if args.log:
        write_json(list(result.pass_modularity), Path(args.log))
    print(
        f"{result.partition.group_count} communities, "
        f"Q={result.pass_modularity[-1]:.6f} -> {args.out}"
    )
    return EXIT_OK


def _cmd_dmod(args) -> int:
    with open(args.edges, "r", encoding="utf-8") as fh:
        graph = load_edge_list(fh)
    with open(args.partition, "r", encoding="utf-8") as fh:
        partition = load_partition(fh, graph)
    _write_payload(d_modularity_report(graph, partition).to_dict(), args.out)
    return EXIT_OK


def _cmd_dominate(args) -> int:
    with open(args.edges, "r", encoding="utf-8") as fh:
        graph = load_edge_list(fh)
    rhos = args.rho or [0.5, 0.75, 1.0]
    if args.partition:
        with open(args.partition, "r", encoding="utf-8") as fh:
            partition = load_partition(fh, graph)
        payload = {"communities": []}
        for i in range(partition.group_count):
            sub = induced_subgraph(graph, partition.members(i))
            payload["communities"].append(
                {
                    "label": partition.group_label(i),
                    "results": [
                        greedy_partial_dominating_set(sub, rho).to_dict(sub)
                        for rho in rhos
                    ],
                }
            )
    else:
        payload = {
            "results": [
                greedy_partial_dominating_set(graph, rho).to_dict(graph) for rho in rhos
            ]
        }
    _write_payload(payload, args.out)
    return EXIT_OK


def _cmd_lexicon_score(args) -> int:
    with open(args.dic, "r", encoding="utf-8") as fh:
        lexicon = parse_mfd_dic(fh)
    if args.map:
        with open(args.map, "r", encoding="utf-8") as fh:
            foundation_map = FoundationMap.from_dict(json.load(fh))
    else:
        foundation_map = FoundationMap.default()
    docs: dict[str, list[str]] = {}
    with open(args.docs, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            record = json.loads(line)
            if "community" not in record or "text" not in record:
                raise MalformedLineError(line_no, "expected {community, text} record")
            docs.setdefault(record["community"], []).append(record["text"])
    scores = score_by_community(lexicon, foundation_map, docs)
    _write_payload([s.to_dict() for s in scores], args.out)
    return EXIT_OK


def _cmd_pareto(args) -> int:
    with open(args.points, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    criteria = tuple(
        CriterionSpec(name=c["name"], direction=Direction(c["direction"]))
        for c in payload["criteria"]
    )
    points = [
        ParetoPoint(label=p["label"], values=tuple(float(v) for v in p["values"]))
        for p in payload["points"]
    ]
    frontier = pareto_frontier(points, criteria)
    _write_payload(
        {
            "criteria": [{"name": c.name, "direction": c.direction.value} for c in criteria],
            "points": [
                {"label": p.label, "values": list(p.values), "onFrontier": p.label in frontier}
                for p in points
            ],
        },
        args.out,
    )
    return EXIT_OK


def _cmd_run(args) -> int:
    config_path = Path(args.config)
    with config_path.open("r", encoding="utf-8") as fh:
        raw = json.load(fh)
    base = config_path.parent

    def resolve(key: str) -> Path | None:
        return base / raw[key] if raw.get(key) else None

    seed = args.seed if args.seed is not None else int(raw.get("seed", 0))
    rhos = tuple(args.rho) if args.rho else tuple(raw.get("rhos", [0.5, 0.75, 1.0]))
    primary = float(raw.get("primaryRho", 0.75))
    if primary not in rhos:
        primary = rhos[len(rhos) // 2]
    min_size = args.min_community_size if args.min_community_size is not None else raw.get("minCommunitySize", AUTO)
    if min_size != AUTO:
        min_size = int(min_size)
    config = AnalysisConfig(
        rhos=rhos,
        primary_rho=primary,
        min_community_size=min_size,
        kinds=tuple(raw.get("kinds", ["retweet"])),
        detection=DetectionConfig(
            seed=seed,
            max_passes=int(raw.get("maxPasses", 20)),
            min_gain_epsilon=float(raw.get("minGainEpsilon", 1e-7)),
        ),
        include_shares=bool(args.include_shares or raw.get("includeShares", False)),
    )
    windows = tuple(parse_window(w) for w in args.window) if args.window else _windows_from_config(raw["windows"])
    out_dir = Path(args.out_dir) if args.out_dir else base / raw.get("outDir", "out")
    out_dir.mkdir(parents=True, exist_ok=True)

    events = _load_events(
        base / raw["events"],
        keywords=tuple(raw["keywords"]) if raw.get("keywords") else None,
    )

    membership_path = resolve("membership")
    if membership_path:
        with membership_path.open("r", encoding="utf-8") as fh:
            membership = read_membership(fh)
    else:
        detection_window = None
        if raw.get("detectionRange"):
            detection_window = WindowSpec(
                label="detection",
                start=parse_timestamp(raw["detectionRange"]["start"]),
                end=parse_timestamp(raw["detectionRange"]["end"]),
            )
        membership, result = detect_membership(events, config, detection_window)
        write_json(list(result.pass_modularity), out_dir / "detection_log.json")
    with (out_dir / "membership.tsv").open("w", encoding="utf-8") as fh:
        for user in sorted(membership):
            fh.write(f"{user}\t{membership[user]}\n")

    structural = run_structural_analysis(
        events, windows, config=config, membership=membership
    )
    write_json([r.to_dict() for r in structural], out_dir / "structural.json")
    for report in structural:
        emit_plot_data(report, out_dir)

    lexicon_path = resolve("lexicon")
    if lexicon_path:
        with lexicon_path.open("r", encoding="utf-8") as fh:
            lexicon = parse_mfd_dic(fh)
        map_path = resolve("foundationMap")
        if map_path:
            with map_path.open("r", encoding="utf-8") as fh:
                foundation_map = FoundationMap.from_dict(json.load(fh))
        else:
            foundation_map = FoundationMap.default()
        speech = run_speech_analysis(
            events,
            windows,
            membership,
            lexicon,
            foundation_map,
            include_shares=config.include_shares,
        )
        write_json([r.to_dict() for r in speech], out_dir / "speech.json")
        for report in speech:
            emit_plot_data(report, out_dir)

    print(f"reports written to {out_dir}")
    return EXIT_OK


def _cmd_fixtures(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.name == "three-groups":
        graph, partition = three_group_graph()
    elif args.name == "hubs":
        graph, partition = hub_hierarchy_graph(), None
    else:
        graph, partition = planted_partition(
            PlantedPartitionParams(
                group_count=args.groups,
                group_size=args.size,
                p_in=args.p_in,
                p_out=args.p_out,
                seed=args.seed,
            )
        )
    edges_path = out_dir / f"{args.name}_edges.tsv"
    with edges_path.open("w", encoding="utf-8") as fh:
        write_edge_list(graph, fh)
    written = [str(edges_path)]
    if partition is not None:
        part_path = out_dir / f"{args.name}_partition.tsv"
        with part_path.open("w", encoding="utf-8") as fh:
            write_partition(partition, graph.labels, fh)
        written.append(str(part_path))
    print("\n".join(written))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="radscales", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and summarize a JSONL event stream")
    p.add_argument("--events", required=True)
    p.add_argument("--kinds", nargs="+", default=None)
    p.add_argument("--keywords", nargs="+", default=None)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("detect", help="community detection on an edge list or event range")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--edges")
    src.add_argument("--events")
    p.add_argument("--start")
    p.add_argument("--end")
    p.add_argument("--kinds", nargs="+", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-passes", type=int, default=20)
    p.add_argument("--min-gain", type=float, default=1e-7)
    p.add_argument("--out", required=True, help="partition file to write")
    p.add_argument("--log", help="detection log JSON (per-pass modularity)")
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("dmod", help="modularity and group contributions")
    p.add_argument("--edges", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_dmod)

    p = sub.add_parser("dominate", help="greedy partial dominating sets")
    p.add_argument("--edges", required=True)
    p.add_argument("--partition", help="run per community instead of whole graph")
    p.add_argument("--rho", type=float, action="append")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_dominate)

    p = sub.add_parser("lexicon-score", help="foundation-word frequencies per community")
    p.add_argument("--dic", required=True, help="LIWC-style dictionary file")
    p.add_argument("--docs", required=True, help="JSONL of {community, text}")
    p.add_argument("--map", help="foundation map JSON (default: standard axes)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_lexicon_score)

    p = sub.add_parser("pareto", help="frontier of a criteria/points JSON file")
    p.add_argument("--points", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_pareto)

    p = sub.add_parser("run", help="full pipeline from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--rho", type=float, action="append")
    p.add_argument("--min-community-size", default=None)
    p.add_argument("--window", action="append", help="label:start:end (repeatable)")
    p.add_argument("--include-shares", action="store_true", default=None)
    p.add_argument("--out-dir")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("fixtures", help="dump built-in demo graphs")
    p.add_argument("--name", required=True, choices=["three-groups", "hubs", "planted"])
    p.add_argument("--out-dir", required=True)
    p.add_argument("--groups", type=int, default=3)
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--p-in", type=float, default=0.9)
    p.add_argument("--p-out", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RadscalesError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"radscales: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
