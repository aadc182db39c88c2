"""Command-line driver: ingest, extract, evaluate, keywords, serve.

Every command is a thin client of the HTTP service. By default the
service runs in-process, so no server is needed; pass --server to point
the same commands at a remote instance. File reading and writing always
happens on the client side.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import cooccur, network
from .assocrules import load_records
from .client import ServiceClient
from .config import CONFIG_ENV_VAR, METHODS, RunConfig, load_config
from .corpus import read_documents_dir, read_documents_jsonl
from .errors import SocnetkitError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="socnetkit",
        description="Extract, disambiguate and evaluate social networks from corpora.",
    )
    parser.add_argument(
        "--server",
        default=None,
        help="URL of a running service; default runs the service in-process",
    )
    parser.add_argument(
        "--config",
        default=None,
        help=f"JSON config file (or set {CONFIG_ENV_VAR}); flags override file values",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="build a corpus artifact from documents")
    p_ingest.add_argument("--input", required=True, help="JSON-lines file or directory of .txt files")
    p_ingest.add_argument("--input-format", choices=("jsonl", "dir"), default=None,
                          help="default: dir when --input is a directory, else jsonl")
    p_ingest.add_argument("--out", required=True, help="corpus artifact path")

    p_extract = sub.add_parser("extract", help="extract a social network")
    p_extract.add_argument("--corpus", default=None, help="corpus artifact path")
    p_extract.add_argument("--seeds", default=None, help="file with one actor name per line")
    p_extract.add_argument("--method", choices=("srs", "usr", "ars"), default=None)
    p_extract.add_argument("--records", default=None,
                           help="bibliographic records (.jsonl or .bib), required for ars")
    p_extract.add_argument("--alpha", type=float, default=None, help="relation threshold override")
    p_extract.add_argument("--mode", choices=("noK", "K1", "K2", "K1K2"), default=None)
    p_extract.add_argument("--out", default=None, help="graph output path")
    p_extract.add_argument("--format", choices=network.FORMATS, default=None,
                           help="default: inferred from --out suffix")
    p_extract.add_argument("--scores-out", default=None,
                           help="pair-score audit CSV (default: <out>.scores.csv)")

    p_eval = sub.add_parser("evaluate", help="compare a graph against a benchmark")
    p_eval.add_argument("--graph", required=True, help="extracted graph file")
    p_eval.add_argument("--benchmark", required=True, help="benchmark graph file")
    p_eval.add_argument("--graph-format", choices=network.FORMATS, default=None)
    p_eval.add_argument("--benchmark-format", choices=network.FORMATS, default=None)
    p_eval.add_argument("--out", default=None, help="write the comparison as JSON")

    p_kw = sub.add_parser("keywords", help="per-actor keyword report")
    p_kw.add_argument("--corpus", default=None, help="corpus artifact path")
    p_kw.add_argument("--actor", default=None, help="actor name (default: all seeds)")
    p_kw.add_argument("--seeds", default=None, help="seed file used when --actor is absent")
    p_kw.add_argument("--out", default=None, help="write the report as CSV")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _read_seed_names(path: str) -> list[str]:
    names = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            names.append(line)
    return names


def _load_artifact_documents(path: str) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "documents" not in data:
        raise SocnetkitError(f"{path}: not a corpus artifact")
    return data["documents"]


def _documents_payload(docs) -> list[dict]:
    return [
        {
            "id": d.doc_id,
            "url": d.url,
            "title": d.title,
            "body": d.body,
            "source_tag": d.source_tag,
        }
        for d in docs
    ]


def cmd_ingest(args, client: ServiceClient, cfg: RunConfig) -> int:
    input_path = Path(args.input)
    fmt = args.input_format or ("dir" if input_path.is_dir() else "jsonl")
    if fmt == "dir":
        docs = read_documents_dir(input_path)
    else:
        docs = read_documents_jsonl(input_path)
    response = client.ingest_with_artifact(_documents_payload(docs))
    out = Path(args.out)
    out.write_text(response["artifact_json"], encoding="utf-8")
    manifest = dict(response["manifest"])
    manifest["created"] = datetime.now(timezone.utc).isoformat()
    manifest_path = Path(str(out) + ".manifest.json")
    manifest_path.write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(
        f"ingested {manifest['n_documents']} documents "
        f"({manifest['token_count']} tokens) -> {out}"
    )
    print(f"manifest: {manifest_path} ({manifest['checksum']})")
    return EXIT_OK


def cmd_extract(args, client: ServiceClient, cfg: RunConfig) -> int:
    corpus_path = args.corpus or cfg.corpus_path
    seeds_path = args.seeds or cfg.seeds_path
    records_path = args.records or cfg.records_path
    method = (args.method or cfg.method).upper()
    out_path = args.out or cfg.output_path
    if not seeds_path:
        print("error: --seeds is required", file=sys.stderr)
        return EXIT_USAGE
    if not out_path:
        print("error: --out is required", file=sys.stderr)
        return EXIT_USAGE
    if method not in METHODS:
        print(f"error: unknown method {method!r}", file=sys.stderr)
        return EXIT_USAGE
    if method == "ARS" and not records_path:
        print("error: --records is required for method ars", file=sys.stderr)
        return EXIT_USAGE
    if method != "ARS" and not corpus_path:
        print(f"error: --corpus is required for method {method.lower()}", file=sys.stderr)
        return EXIT_USAGE

    seeds = _read_seed_names(seeds_path)
    if not seeds:
        print(f"error: no seed names in {seeds_path}", file=sys.stderr)
        return EXIT_USAGE

    corpus_id = None
    if corpus_path:
        docs = _load_artifact_documents(corpus_path)
        corpus_id = client.ingest(docs)["corpus_id"]

    payload: dict = {
        "seeds": seeds,
        "method": method,
        "config": cfg.to_dict(),
    }
    if corpus_id:
        payload["corpus_id"] = corpus_id
    if args.alpha is not None:
        payload["alpha"] = args.alpha
    if args.mode is not None:
        payload["mode"] = args.mode
    if records_path:
        records = load_records(records_path)
        payload["records"] = [
            {
                "record_id": r.record_id,
                "title": r.title,
                "authors": list(r.authors),
                "venue": r.venue,
                "year": r.year,
            }
            for r in records
        ]

    response = client.extract(payload)
    net = network.from_json_dict(response["graph"])
    fmt = args.format
    if fmt is None:
        try:
            fmt = network.infer_format(out_path)
        except SocnetkitError:
            fmt = cfg.output_format
    network.save_network(net, out_path, fmt)

    scores_path = args.scores_out or str(out_path) + ".scores.csv"
    scores = [
        cooccur.PairScore(
            actor_a=row["actor_a"],
            actor_b=row["actor_b"],
            score=row["score"],
            method=row["method"],
            undefined=row.get("undefined", False),
        )
        for row in response["scores"]
    ]
    cooccur.write_scores_csv(scores, scores_path)
    print(
        f"extracted {method} network: {net.node_count} nodes, "
        f"{net.edge_count} edges -> {out_path}"
    )
    print(f"scores: {scores_path} ({len(scores)} pairs)")
    return EXIT_OK


def cmd_evaluate(args, client: ServiceClient, cfg: RunConfig) -> int:
    g1 = network.load_network(args.graph, args.graph_format)
    g2 = network.load_network(args.benchmark, args.benchmark_format)
    result = client.evaluate(network.to_json_dict(g1), network.to_json_dict(g2))

    labels = [
        ("shared edges", str(result["shared_edges"])),
        ("extracted |E1|", str(result["e1"])),
        ("benchmark |E2|", str(result["e2"])),
        ("edge jaccard", _metric_cell(result["sim_g"])),
        ("precision", _metric_cell(result["precision"])),
        ("recall", _metric_cell(result["recall"])),
        ("f-measure", _metric_cell(result["f_measure"])),
    ]
    width = max(len(label) for label, _ in labels)
    for label, value in labels:
        print(f"{label.ljust(width)}  {value}")
    if args.out:
        Path(args.out).write_text(
            json.dumps(result, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        print(f"report: {args.out}")
    return EXIT_OK


def _metric_cell(value) -> str:
    return "undefined" if value is None else f"{value:.6f}"


def cmd_keywords(args, client: ServiceClient, cfg: RunConfig) -> int:
    corpus_path = args.corpus or cfg.corpus_path
    if not corpus_path:
        print("error: --corpus is required", file=sys.stderr)
        return EXIT_USAGE
    if args.actor:
        actors = [args.actor]
    else:
        seeds_path = args.seeds or cfg.seeds_path
        if not seeds_path:
            print("error: give --actor or --seeds", file=sys.stderr)
            return EXIT_USAGE
        actors = _read_seed_names(seeds_path)

    docs = _load_artifact_documents(corpus_path)
    corpus_id = client.ingest(docs)["corpus_id"]

    rows = []
    for actor in actors:
        report = client.keyword_report(
            corpus_id,
            actor,
            cutoff_ratio=cfg.keyword_cutoff_ratio,
            cap=cfg.keyword_cap,
            snippet_cap=cfg.snippet_cap,
            log_base=cfg.log_base,
            delta_ascending=cfg.delta_ascending,
        )
        if not report["rows"]:
            print(f"warning: no snippets for {actor!r}, empty report", file=sys.stderr)
        for row in report["rows"]:
            rows.append({"actor": actor, **row})

    header = ["actor", "word", "tfidf", "hit_fraction", "delta", "selected"]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=header)
            writer.writeheader()
            writer.writerows(rows)
        print(f"keyword report: {args.out} ({len(rows)} rows)")
    else:
        print("\t".join(header))
        for row in rows:
            print(
                f"{row['actor']}\t{row['word']}\t{row['tfidf']:.6f}"
                f"\t{row['hit_fraction']:.6f}\t{row['delta']:.6f}\t{row['selected']}"
            )
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        return cmd_serve(args)

    try:
        cfg = load_config(args.config)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SocnetkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA

    handlers = {
        "ingest": cmd_ingest,
        "extract": cmd_extract,
        "evaluate": cmd_evaluate,
        "keywords": cmd_keywords,
    }
    try:
        with ServiceClient(server=args.server) as client:
            return handlers[args.command](args, client, cfg)
    except (FileNotFoundError, NotADirectoryError, PermissionError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SocnetkitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
