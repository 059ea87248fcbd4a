"""Command-line pipeline.

Subcommands: synth, extract, features, embed, train, evaluate, ablate,
report, pipeline. Exit codes: 0 success, 1 usage error, 2 data error,
3 numerical error. CONVGRAPH_SEED is the seed fallback when --seed is
absent. Embedding flags mirror the method parameter names (--dimensions,
--walk-length, --heat-coefficient, ...), with per-method defaults.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import analysis, classify, pipeline
from .corpus import (ABUSE, DatasetSpec, LabeledMessage, ingest,
                     sample_balanced, split_dev, synthesize, write_jsonl)
from .errors import DataError, NumericalError
from .extract import ExtractConfig
from .features import ALL_FEATURES, TOP_FEATURES, read_features_csv

log = logging.getLogger("convgraph")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _seed_of(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CONVGRAPH_SEED")
    return int(env) if env else 0


# --- embedding config resolution ---------------------------------------------

EMBED_FLAGS = ("dimensions", "window_size", "walk_number", "walk_length",
               "learning_rate", "epochs", "min_count", "p", "q", "iterations",
               "order", "alpha", "step_size", "heat_coefficient",
               "approximation", "switch", "hist_bins", "hist_range",
               "wl_iterations", "down_sampling", "label_mode")


def resolve_config(method: str, overrides: dict):
    """Per-method defaults, overridden by explicitly-given flags only."""
    base = pipeline.DEFAULT_CONFIGS[method]
    valid = {f.name for f in dataclasses.fields(base)}
    applied = {k: v for k, v in overrides.items() if v is not None and k in valid}
    return dataclasses.replace(base, **applied)


def _add_embed_flags(p: argparse.ArgumentParser) -> None:
    num = dict(type=float, default=None)
    integer = dict(type=int, default=None)
    p.add_argument("--dimensions", **integer)
    p.add_argument("--window-size", dest="window_size", **integer)
    p.add_argument("--walk-number", dest="walk_number", **integer)
    p.add_argument("--walk-length", dest="walk_length", **integer)
    p.add_argument("--learning-rate", dest="learning_rate", **num)
    p.add_argument("--epochs", **integer)
    p.add_argument("--min-count", dest="min_count", **integer)
    p.add_argument("--p", dest="p", **num)
    p.add_argument("--q", dest="q", **num)
    p.add_argument("--iterations", **integer)
    p.add_argument("--order", **integer)
    p.add_argument("--alpha", **num)
    p.add_argument("--step-size", dest="step_size", **num)
    p.add_argument("--heat-coefficient", dest="heat_coefficient", **num)
    p.add_argument("--approximation", **integer)
    p.add_argument("--switch", **integer)
    p.add_argument("--hist-bins", dest="hist_bins", **integer)
    p.add_argument("--hist-range", dest="hist_range", **num)
    p.add_argument("--wl-iterations", dest="wl_iterations", **integer)
    p.add_argument("--down-sampling", dest="down_sampling", **num)
    p.add_argument("--label-mode", dest="label_mode", choices=("author", "degree"),
                   default=None)


def _add_extract_flags(p: argparse.ArgumentParser) -> None:
    # --window-size belongs to the embeddings; the extraction window is the
    # sliding window of the linear weighting rule
    p.add_argument("--sliding-window", dest="sliding_window", type=int, default=10)
    p.add_argument("--context-period", dest="context_period", type=int, default=850)
    p.add_argument("--abuse-count", dest="abuse_count", type=int, default=None,
                   help="per-class dataset size (default: as many as possible)")
    p.add_argument("--no-disjoint", dest="disjoint", action="store_false",
                   help="drop the conversation-disjointness constraint")
    p.add_argument("--dev-fraction", dest="dev_fraction", type=float, default=0.0)


def _read_labels(dataset_path: Path) -> dict[str, str]:
    return {m.message.id: m.label for m in ingest(dataset_path)}


def _labels_for(rep: analysis.Representation, labels: dict[str, str]) -> list[str]:
    return [labels[gid] for gid in rep.ids]


# --- subcommands --------------------------------------------------------------

def cmd_synth(args) -> int:
    corpus = synthesize(args.n_conversations, args.msgs_per_conv,
                        args.abuse_rate, args.structure_signal, _seed_of(args))
    write_jsonl(corpus, args.out)
    log.info("wrote %d messages to %s", len(corpus), args.out)
    return 0


def _build_dataset(args, corpus: list[LabeledMessage]
                   ) -> tuple[list[LabeledMessage], list[LabeledMessage]]:
    spec = DatasetSpec(abuse_count=args.abuse_count, balance=True,
                       conversation_disjoint=args.disjoint, seed=_seed_of(args))
    dataset = sample_balanced(corpus, spec, context_period=args.context_period)
    if args.dev_fraction > 0:
        return split_dev(dataset, args.dev_fraction, _seed_of(args))
    return dataset, []


def cmd_extract(args) -> int:
    corpus = ingest(args.corpus)
    dataset, dev = _build_dataset(args, corpus)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_jsonl(dataset, out / "dataset.jsonl")
    if dev:
        write_jsonl(dev, out / "dev.jsonl")
    cfg = ExtractConfig(window_size=args.sliding_window,
                        context_period=args.context_period)
    paths = pipeline.extract_all(corpus, dataset, cfg, out / "graphs")
    log.info("extracted %d graphs into %s", len(paths), out / "graphs")
    return 0


def cmd_features(args) -> int:
    graphs = pipeline.load_graphs(args.graphs)
    if not graphs:
        raise DataError(f"no *.graph.json files under {args.graphs}")
    rep = pipeline.features_representation(graphs, jobs=args.jobs)
    pipeline.write_features_matrix_csv(rep, args.out)
    log.info("wrote %d x %d feature matrix to %s", rep.matrix.shape[0],
             rep.matrix.shape[1], args.out)
    return 0


def cmd_embed(args) -> int:
    methods = pipeline.ALL_METHODS if args.method == "all" else (args.method,)
    graphs = pipeline.load_graphs(args.graphs)
    if not graphs:
        raise DataError(f"no *.graph.json files under {args.graphs}")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    overrides = {k: getattr(args, k, None) for k in EMBED_FLAGS}
    seed = _seed_of(args)
    for method in methods:
        cfg = resolve_config(method, overrides)
        rep = pipeline.embed_graphs(graphs, method, cfg, seed, jobs=args.jobs)
        pipeline.write_embedding_csv(rep, method, out / f"{method}.csv")
        log.info("embedded %d graphs with %s (dim %d)", len(graphs), method,
                 rep.matrix.shape[1])
    return 0


def _representation_from_args(args) -> tuple[analysis.Representation, dict[str, str]]:
    labels = _read_labels(Path(args.dataset))
    reps = []
    if args.embedding:
        reps.append(pipeline.read_embedding_csv(args.embedding))
    if args.features:
        ids, names, matrix = read_features_csv(args.features)
        reps.append(analysis.Representation(tuple(ids), matrix, tuple(names), "topo"))
    if not reps:
        raise DataError("provide --embedding and/or --features")
    rep = reps[0]
    for extra in reps[1:]:
        rep = analysis.fuse(rep, extra)
    return rep, labels


def cmd_train(args) -> int:
    rep, labels = _representation_from_args(args)
    model = classify.train_svm(rep.matrix, _labels_for(rep, labels),
                               classify.SvmHyper(kernel=args.kernel, c=args.C))
    Path(args.out).write_text(json.dumps(model.to_dict(), sort_keys=True) + "\n",
                              encoding="utf-8")
    log.info("trained on %d rows, %d support vectors -> %s",
             rep.matrix.shape[0], len(model.support_vectors), args.out)
    return 0


def _evaluation_rows(features_path: Path | None, embeddings_dir: Path | None,
                     dataset_path: Path, seed: int,
                     ) -> tuple[list[tuple[str, classify.EvalResult, int]],
                                analysis.Representation | None,
                                dict[str, analysis.Representation]]:
    labels = _read_labels(dataset_path)
    topo = None
    if features_path is not None:
        ids, names, matrix = read_features_csv(features_path)
        topo = analysis.Representation(tuple(ids), matrix, tuple(names), "topo")
    embeddings: dict[str, analysis.Representation] = {}
    if embeddings_dir is not None:
        for path in sorted(Path(embeddings_dir).glob("*.csv")):
            rep = pipeline.read_embedding_csv(path)
            embeddings[rep.source] = rep
    if topo is None and not embeddings:
        raise DataError("nothing to evaluate: no features and no embeddings")

    some = topo if topo is not None else next(iter(embeddings.values()))
    y_all = _labels_for(some, labels)
    plan = classify.make_splits(y_all, seed)
    id_order = some.ids

    results: list[tuple[str, classify.EvalResult, int]] = []
    if topo is not None:
        results.append(("baseline", classify.evaluate(topo.matrix, y_all, plan),
                        topo.matrix.shape[1]))
    for method in sorted(embeddings):
        rep = embeddings[method].reordered(id_order)
        res = classify.evaluate(rep.matrix, y_all, plan)
        results.append((method, res, rep.matrix.shape[1]))
        if topo is not None:
            fused = analysis.fuse(rep, topo)
            res_f = classify.evaluate(fused.matrix, y_all, plan)
            results.append((f"{method}+topo", res_f, fused.matrix.shape[1]))
    return results, topo, embeddings


def _write_evaluation_csv(results, path: Path) -> None:
    import csv as _csv
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = _csv.writer(fh)
        writer.writerow(["method", "repetition", "f_measure"])
        for method, res, _dim in results:
            for rep_i, f in enumerate(res.f_measures):
                writer.writerow([method, rep_i, f"{f:.6f}"])
            writer.writerow([method, "mean", f"{res.mean:.6f}"])
            writer.writerow([method, "std", f"{res.std:.6f}"])


def cmd_evaluate(args) -> int:
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    results, _, _ = _evaluation_rows(
        Path(args.features) if args.features else None,
        Path(args.embeddings_dir) if args.embeddings_dir else None,
        Path(args.dataset), _seed_of(args))
    _write_evaluation_csv(results, out)
    for method, res, dim in results:
        log.info("%-18s dim %4d  F = %.4f +/- %.4f", method, dim, res.mean, res.std)
    return 0


def cmd_ablate(args) -> int:
    labels = _read_labels(Path(args.dataset))
    ids, names, matrix = read_features_csv(Path(args.features))
    topo = analysis.Representation(tuple(ids), matrix, tuple(names), "topo")
    embeddings: dict[str, analysis.Representation] = {}
    for path in sorted(Path(args.embeddings_dir).glob("*.csv")):
        rep = pipeline.read_embedding_csv(path)
        embeddings[rep.source] = rep.reordered(topo.ids)
    if not embeddings:
        raise DataError(f"no embedding CSVs under {args.embeddings_dir}")
    y = _labels_for(topo, labels)
    plan = classify.make_splits(y, _seed_of(args))
    report = analysis.capture_matrix(embeddings, topo, TOP_FEATURES, y, plan)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    analysis.write_fig4_csv(report, out)
    log.info("capture matrix (%d x %d) -> %s", len(report.methods),
             len(report.features), out)
    return 0


def _read_evaluation_csv(path: Path) -> dict[str, classify.EvalResult]:
    import csv as _csv
    scores: dict[str, list[float]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in _csv.DictReader(fh):
            if row["repetition"] in ("mean", "std"):
                continue
            scores.setdefault(row["method"], []).append(float(row["f_measure"]))
    return {m: classify.EvalResult.from_scores(v) for m, v in scores.items()}


def _read_fig4_csv(path: Path) -> analysis.CaptureReport:
    import csv as _csv
    methods: list[str] = []
    features: list[str] = []
    cells: dict[tuple[str, str], tuple[float, float, str]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in _csv.DictReader(fh):
            m, f = row["method"], row["feature"]
            if m not in methods:
                methods.append(m)
            if f not in features:
                features.append(f)
            cells[(m, f)] = (float(row["delta_f"]), float(row["p_value"]),
                             row["verdict"])
    delta = np.array([[cells[(m, f)][0] for f in features] for m in methods])
    pvals = np.array([[cells[(m, f)][1] for f in features] for m in methods])
    verdicts = tuple(tuple(cells[(m, f)][2] for f in features) for m in methods)
    return analysis.CaptureReport(tuple(methods), tuple(features), delta,
                                  pvals, verdicts, {})


def _dimension_lookup(embeddings_dir: Path | None, features_path: Path | None
                      ) -> dict[str, int]:
    dims: dict[str, int] = {}
    n_features = 0
    if features_path is not None and features_path.exists():
        _, names, _ = read_features_csv(features_path)
        n_features = len(names)
        dims["baseline"] = n_features
    if embeddings_dir is not None:
        for path in sorted(Path(embeddings_dir).glob("*.csv")):
            rep = pipeline.read_embedding_csv(path)
            dims[rep.source] = rep.matrix.shape[1]
            if n_features:
                dims[f"{rep.source}+topo"] = rep.matrix.shape[1] + n_features
    return dims


def cmd_report(args) -> int:
    results = _read_evaluation_csv(Path(args.evaluation))
    capture = None
    if args.capture and Path(args.capture).exists():
        capture = _read_fig4_csv(Path(args.capture))
    dims = _dimension_lookup(
        Path(args.embeddings_dir) if args.embeddings_dir else None,
        Path(args.features) if args.features else None)

    rows = []
    order = sorted(results, key=lambda m: (m != "baseline", "+" in m, m))
    for method in order:
        base = method.split("+")[0]
        res = results[method]
        if method.endswith("+topo"):
            continue  # folded into the embedding row below
        row = {
            "scale": ("baseline" if method == "baseline"
                      else pipeline.METHOD_SCALE.get(base, "")),
            "method": method,
            "dimension": dims.get(method, ""),
            "f_mean": res.mean, "f_std": res.std,
            "fused_dimension": "", "fused_f_mean": "", "fused_f_std": "",
        }
        fused = results.get(f"{method}+topo")
        if fused is not None:
            row["fused_dimension"] = dims.get(f"{method}+topo", "")
            row["fused_f_mean"] = fused.mean
            row["fused_f_std"] = fused.std
        rows.append(row)
    written = analysis.write_report(rows, capture, args.out_dir,
                                    figures=not args.no_figures)
    for path in written:
        log.info("wrote %s", path)
    return 0


# --- pipeline orchestration ---------------------------------------------------

def _hash_paths(*parts: str | Path) -> str:
    h = hashlib.sha256()
    for part in parts:
        p = Path(part)
        if p.exists() and p.is_file():
            h.update(p.read_bytes())
        else:
            h.update(str(part).encode())
    return h.hexdigest()


class _StageLog:
    def __init__(self, path: Path, resume: bool):
        self.path = path
        self.resume = resume
        self.state = {}
        if resume and path.exists():
            self.state = json.loads(path.read_text())

    def done(self, name: str, inputs_hash: str, outputs: Sequence[Path]) -> bool:
        entry = self.state.get(name)
        return (self.resume and entry is not None
                and entry["inputs"] == inputs_hash
                and all(Path(p).exists() for p in entry["outputs"]))

    def record(self, name: str, inputs_hash: str, outputs: Sequence[Path]) -> None:
        self.state[name] = {"inputs": inputs_hash,
                            "outputs": [str(p) for p in outputs]}
        self.path.write_text(json.dumps(self.state, indent=1, sort_keys=True))


def cmd_pipeline(args) -> int:
    run = Path(args.out_dir)
    run.mkdir(parents=True, exist_ok=True)
    seed = _seed_of(args)
    stages = _StageLog(run / ".stages.json", args.resume)

    corpus_path = run / "corpus.jsonl"
    if args.synth:
        sig = _hash_paths(f"synth:{args.n_conversations},{args.msgs_per_conv},"
                          f"{args.abuse_rate},{args.structure_signal},{seed}")
        if not stages.done("synth", sig, [corpus_path]):
            corpus = synthesize(args.n_conversations, args.msgs_per_conv,
                                args.abuse_rate, args.structure_signal, seed)
            write_jsonl(corpus, corpus_path)
            stages.record("synth", sig, [corpus_path])
            log.info("synth: %d messages", len(corpus))
        else:
            log.info("synth: skipped (up to date)")
    else:
        if not args.corpus:
            raise DataError("pipeline needs --synth or --corpus")
        corpus_path = Path(args.corpus)

    dataset_path = run / "dataset.jsonl"
    graphs_dir = run / "graphs"
    sig = _hash_paths(corpus_path, f"extract:{args.sliding_window},"
                      f"{args.context_period},{args.abuse_count},"
                      f"{args.disjoint},{args.dev_fraction},{seed}")
    if not stages.done("extract", sig, [dataset_path]):
        corpus = ingest(corpus_path)
        dataset, dev = _build_dataset(args, corpus)
        write_jsonl(dataset, dataset_path)
        if dev:
            write_jsonl(dev, run / "dev.jsonl")
        cfg = ExtractConfig(window_size=args.sliding_window,
                            context_period=args.context_period)
        pipeline.extract_all(corpus, dataset, cfg, graphs_dir)
        stages.record("extract", sig, [dataset_path])
        log.info("extract: %d graphs", len(dataset))
    else:
        log.info("extract: skipped (up to date)")

    graphs = pipeline.load_graphs(graphs_dir)
    features_path = run / "features.csv"
    sig = _hash_paths(dataset_path, "features")
    if not stages.done("features", sig, [features_path]):
        rep = pipeline.features_representation(graphs, jobs=args.jobs)
        pipeline.write_features_matrix_csv(rep, features_path)
        stages.record("features", sig, [features_path])
        log.info("features: %d columns", len(ALL_FEATURES))
    else:
        log.info("features: skipped (up to date)")

    embed_dir = run / "embeddings"
    embed_dir.mkdir(exist_ok=True)
    methods = pipeline.ALL_METHODS if args.method == "all" else (args.method,)
    overrides = {k: getattr(args, k, None) for k in EMBED_FLAGS}
    for method in methods:
        cfg = resolve_config(method, overrides)
        out_csv = embed_dir / f"{method}.csv"
        sig = _hash_paths(dataset_path, f"embed:{method}:{cfg}:{seed}")
        if stages.done(f"embed.{method}", sig, [out_csv]):
            log.info("embed %s: skipped (up to date)", method)
            continue
        rep = pipeline.embed_graphs(graphs, method, cfg, seed, jobs=args.jobs)
        pipeline.write_embedding_csv(rep, method, out_csv)
        stages.record(f"embed.{method}", sig, [out_csv])
        log.info("embed %s: dim %d", method, rep.matrix.shape[1])

    results_dir = run / "results"
    results_dir.mkdir(exist_ok=True)
    eval_path = results_dir / "evaluation.csv"
    results, topo, embeddings = _evaluation_rows(features_path, embed_dir,
                                                 dataset_path, seed)
    _write_evaluation_csv(results, eval_path)
    for method, res, dim in results:
        log.info("%-18s dim %4d  F = %.4f +/- %.4f", method, dim, res.mean, res.std)

    fig4_path = results_dir / "fig4.csv"
    labels = _read_labels(dataset_path)
    y = _labels_for(topo, labels)
    plan = classify.make_splits(y, seed)
    aligned = {m: rep.reordered(topo.ids) for m, rep in embeddings.items()}
    capture = analysis.capture_matrix(aligned, topo, TOP_FEATURES, y, plan)
    analysis.write_fig4_csv(capture, fig4_path)

    args.evaluation = str(eval_path)
    args.capture = str(fig4_path)
    args.embeddings_dir = str(embed_dir)
    args.features = str(features_path)
    args.out_dir = str(results_dir)
    cmd_report(args)
    return 0


# --- parser -------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="convgraph",
                     description="conversation-structure abuse detection toolkit")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", parents=[], help="generate a synthetic corpus")
    p.add_argument("--n-conversations", type=int, default=40)
    p.add_argument("--msgs-per-conv", type=int, default=10)
    p.add_argument("--abuse-rate", type=float, default=0.1)
    p.add_argument("--structure-signal", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("extract", help="sample a balanced dataset and extract graphs")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, default=None)
    _add_extract_flags(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("features", help="compute topological measures")
    p.add_argument("--graphs", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=pipeline.default_jobs())
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("embed", help="embed extracted graphs")
    p.add_argument("--graphs", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--method", default="all",
                   choices=("all",) + pipeline.ALL_METHODS)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=pipeline.default_jobs())
    _add_embed_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("train", help="train one SVM on a representation")
    p.add_argument("--dataset", required=True)
    p.add_argument("--embedding", default=None)
    p.add_argument("--features", default=None)
    p.add_argument("--kernel", default="rbf", choices=("rbf", "linear"))
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="run the split-plan evaluation")
    p.add_argument("--dataset", required=True)
    p.add_argument("--features", default=None)
    p.add_argument("--embeddings-dir", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("ablate", help="measure-capture ablation matrix")
    p.add_argument("--dataset", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--embeddings-dir", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("report", help="render tables, summary and figures")
    p.add_argument("--evaluation", required=True)
    p.add_argument("--capture", default=None)
    p.add_argument("--embeddings-dir", default=None)
    p.add_argument("--features", default=None)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("pipeline", help="run every stage end to end")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--corpus", default=None)
    p.add_argument("--synth", action="store_true")
    p.add_argument("--n-conversations", type=int, default=40)
    p.add_argument("--msgs-per-conv", type=int, default=10)
    p.add_argument("--abuse-rate", type=float, default=0.1)
    p.add_argument("--structure-signal", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=pipeline.default_jobs())
    p.add_argument("--method", default="all",
                   choices=("all",) + pipeline.ALL_METHODS)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--no-figures", action="store_true")
    _add_extract_flags(p)
    _add_embed_flags(p)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"convgraph: data error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"convgraph: numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
