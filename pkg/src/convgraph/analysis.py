"""Early fusion of embeddings with topological measures, and the
measure-capture ablation.

The capture matrix compares each embedding method on its own against the
same embedding completed by one Top Feature. A feature is Captured when the
mean micro-F gains less than 0.005 absolute, NotCaptured when the gain is at
least 0.005 and significant under a paired two-sided t-test over the
per-repetition scores (alpha 0.05), and Partial otherwise.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from scipy import stats

from .classify import EvalResult, SplitPlan, SvmHyper, evaluate
from .errors import IdentityMismatch

__all__ = ["Representation", "fuse", "CaptureReport", "capture_matrix",
           "verdict", "write_report", "write_fig4_csv", "CAPTURE_THRESHOLD",
           "ALPHA"]

CAPTURE_THRESHOLD = 0.005
ALPHA = 0.05

CAPTURED = "Captured"
PARTIAL = "Partial"
NOT_CAPTURED = "NotCaptured"


@dataclass(frozen=True)
class Representation:
    """A (rows x columns) feature block with per-column provenance."""
    ids: tuple[str, ...]
    matrix: np.ndarray
    columns: tuple[str, ...]
    source: str

    def __post_init__(self):
        if self.matrix.shape != (len(self.ids), len(self.columns)):
            raise ValueError("matrix shape does not match ids x columns")

    def reordered(self, ids: Sequence[str]) -> "Representation":
        pos = {gid: i for i, gid in enumerate(self.ids)}
        try:
            rows = [pos[g] for g in ids]
        except KeyError as exc:
            raise IdentityMismatch(f"missing item {exc.args[0]!r}") from exc
        return Representation(tuple(ids), self.matrix[rows], self.columns,
                              self.source)

    def column(self, name: str) -> np.ndarray:
        return self.matrix[:, self.columns.index(name)]


def fuse(embedding: Representation, features: Representation) -> Representation:
    """Column-wise concatenation; both sides must describe the same items."""
    if set(embedding.ids) != set(features.ids):
        raise IdentityMismatch(
            f"{embedding.source} and {features.source} cover different items")
    aligned = features.reordered(embedding.ids)
    columns = tuple(f"{embedding.source}:{c}" for c in embedding.columns) + \
        tuple(f"{features.source}:{c}" for c in aligned.columns)
    return Representation(
        ids=embedding.ids,
        matrix=np.hstack([embedding.matrix, aligned.matrix]),
        columns=columns,
        source=f"{embedding.source}+{features.source}",
    )


def verdict(delta_f: float, p_value: float,
            threshold: float = CAPTURE_THRESHOLD, alpha: float = ALPHA) -> str:
    if delta_f < threshold:
        return CAPTURED
    if p_value < alpha:
        return NOT_CAPTURED
    return PARTIAL


@dataclass(frozen=True)
class CaptureReport:
    methods: tuple[str, ...]
    features: tuple[str, ...]
    delta: np.ndarray          # (methods, features) mean F gain
    p_values: np.ndarray
    verdicts: tuple[tuple[str, ...], ...]
    base_scores: dict[str, EvalResult]


def _paired_p(fused: Sequence[float], base: Sequence[float]) -> float:
    diff = np.asarray(fused) - np.asarray(base)
    if np.allclose(diff, diff[0]):
        return 1.0  # constant difference: no evidence either way
    return float(stats.ttest_rel(fused, base).pvalue)


def capture_matrix(embeddings: Mapping[str, Representation],
                   features: Representation,
                   top_features: Sequence[str],
                   labels: Sequence[str],
                   plan: SplitPlan,
                   hyper: SvmHyper = SvmHyper()) -> CaptureReport:
    """Delta-F and verdict for every (embedding method x Top Feature) cell."""
    methods = tuple(embeddings)
    base_scores: dict[str, EvalResult] = {}
    delta = np.zeros((len(methods), len(top_features)))
    p_values = np.ones_like(delta)
    verdicts: list[tuple[str, ...]] = []

    for mi, method in enumerate(methods):
        rep = embeddings[method]
        y = list(labels)
        base = evaluate(rep.matrix, y, plan, hyper)
        base_scores[method] = base
        row: list[str] = []
        aligned = features.reordered(rep.ids)
        for fi, feat in enumerate(top_features):
            col = aligned.column(feat)[:, None]
            fused_matrix = np.hstack([rep.matrix, col])
            fused = evaluate(fused_matrix, y, plan, hyper)
            delta[mi, fi] = fused.mean - base.mean
            p_values[mi, fi] = _paired_p(fused.f_measures, base.f_measures)
            row.append(verdict(delta[mi, fi], p_values[mi, fi]))
        verdicts.append(tuple(row))

    return CaptureReport(methods=methods, features=tuple(top_features),
                         delta=delta, p_values=p_values,
                         verdicts=tuple(verdicts), base_scores=base_scores)


# --- report rendering ---------------------------------------------------------

VERDICT_COLORS = {CAPTURED: "#2e7d32", PARTIAL: "#1565c0", NOT_CAPTURED: "#c62828"}


def _write_table3(rows: Sequence[Mapping], path: Path) -> None:
    cols = ["scale", "method", "dimension", "f_mean", "f_std",
            "fused_dimension", "fused_f_mean", "fused_f_std"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)
        for row in rows:
            writer.writerow([row.get(c, "") for c in cols])


def write_fig4_csv(capture: CaptureReport, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "feature", "delta_f", "p_value", "verdict"])
        for mi, method in enumerate(capture.methods):
            for fi, feat in enumerate(capture.features):
                writer.writerow([method, feat,
                                 f"{capture.delta[mi, fi]:.6f}",
                                 f"{capture.p_values[mi, fi]:.6g}",
                                 capture.verdicts[mi][fi]])


def _write_summary_md(rows: Sequence[Mapping], capture: CaptureReport | None,
                      path: Path) -> None:
    lines = ["# Results", "", "## F-measures (10 stratified 70/30 repetitions)", ""]
    lines.append("| Scale | Method | Dim | F | Fused dim | Fused F |")
    lines.append("|---|---|---|---|---|---|")
    for row in rows:
        f = f"{row['f_mean']:.4f} +/- {row['f_std']:.4f}" if row.get("f_mean") != "" else ""
        fused = (f"{row['fused_f_mean']:.4f} +/- {row['fused_f_std']:.4f}"
                 if row.get("fused_f_mean", "") != "" else "")
        lines.append(f"| {row.get('scale', '')} | {row['method']} | "
                     f"{row.get('dimension', '')} | {f} | "
                     f"{row.get('fused_dimension', '')} | {fused} |")
    if capture is not None:
        lines += ["", "## Measure capture", ""]
        lines.append("| Method | " + " | ".join(capture.features) + " |")
        lines.append("|---" * (len(capture.features) + 1) + "|")
        for mi, method in enumerate(capture.methods):
            cells = [f"{capture.verdicts[mi][fi]} ({capture.delta[mi, fi]:+.4f})"
                     for fi in range(len(capture.features))]
            lines.append(f"| {method} | " + " | ".join(cells) + " |")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _render_figures(rows: Sequence[Mapping], capture: CaptureReport | None,
                    out_dir: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Patch

    plot_rows = [r for r in rows if r.get("f_mean", "") != ""]
    if plot_rows:
        fig, ax = plt.subplots(figsize=(9, 4.5))
        names = [r["method"] for r in plot_rows]
        x = np.arange(len(names))
        solo = [r["f_mean"] for r in plot_rows]
        ax.bar(x - 0.2, solo, width=0.4, label="representation only",
               color="#4878b0")
        fused_vals = [r.get("fused_f_mean", "") for r in plot_rows]
        if any(v != "" for v in fused_vals):
            heights = [v if v != "" else 0.0 for v in fused_vals]
            ax.bar(x + 0.2, heights, width=0.4, label="fused with measures",
                   color="#e1812c")
        ax.set_xticks(x, names, rotation=30, ha="right")
        ax.set_ylabel("micro F-measure")
        ax.set_ylim(0, 1)
        ax.legend(loc="lower right")
        ax.set_title("Classification performance by representation")
        fig.tight_layout()
        fig.savefig(out_dir / "f_measures.png", dpi=150,
                    metadata={"Software": None})
        plt.close(fig)

    if capture is not None:
        fig, ax = plt.subplots(
            figsize=(1.2 * len(capture.features) + 3, 0.6 * len(capture.methods) + 2))
        color_idx = {CAPTURED: 0, PARTIAL: 1, NOT_CAPTURED: 2}
        grid = np.array([[color_idx[v] for v in row] for row in capture.verdicts])
        cmap = matplotlib.colors.ListedColormap(
            [VERDICT_COLORS[CAPTURED], VERDICT_COLORS[PARTIAL],
             VERDICT_COLORS[NOT_CAPTURED]])
        ax.imshow(grid, cmap=cmap, vmin=0, vmax=2, aspect="auto")
        for mi in range(len(capture.methods)):
            for fi in range(len(capture.features)):
                ax.text(fi, mi, f"{capture.delta[mi, fi]:+.3f}", ha="center",
                        va="center", color="white", fontsize=8)
        ax.set_xticks(range(len(capture.features)), capture.features,
                      rotation=45, ha="right")
        ax.set_yticks(range(len(capture.methods)), capture.methods)
        ax.legend(handles=[Patch(color=VERDICT_COLORS[k], label=k)
                           for k in (CAPTURED, PARTIAL, NOT_CAPTURED)],
                  bbox_to_anchor=(1.02, 1), loc="upper left")
        ax.set_title("Topological measures captured by each embedding")
        fig.tight_layout()
        fig.savefig(out_dir / "fig4.png", dpi=150, metadata={"Software": None})
        plt.close(fig)


def write_report(rows: Sequence[Mapping], capture: CaptureReport | None,
                 out_dir: str | Path, figures: bool = True) -> list[Path]:
    """Write table3.csv, fig4.csv, summary.md and rendered PNG figures.

    rows: one mapping per representation with method/dimension/F statistics.
    Outputs are deterministic for identical inputs.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    _write_table3(rows, out / "table3.csv")
    written.append(out / "table3.csv")
    if capture is not None:
        write_fig4_csv(capture, out / "fig4.csv")
        written.append(out / "fig4.csv")
    _write_summary_md(rows, capture, out / "summary.md")
    written.append(out / "summary.md")
    if figures:
        _render_figures(rows, capture, out)
        written.append(out / "f_measures.png")
        if capture is not None:
            written.append(out / "fig4.png")
    return written
