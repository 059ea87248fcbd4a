"""Turn a message stream plus a targeted message into a conversation graph.

The context period is channel-local and centered on the targeted message:
up to floor(context_period / 2) messages on each side, truncated at stream
boundaries. Edges are accumulated with a linear-recency rule: each message
spreads one unit of outgoing weight over the distinct other authors seen in
the preceding window, more to the most recent ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .corpus import LabeledMessage, Message
from .errors import TargetNotFound
from .graph import ConvGraph

__all__ = ["ExtractConfig", "extract_context", "build_graph", "extract_graph"]


@dataclass(frozen=True)
class ExtractConfig:
    window_size: int = 10
    context_period: int = 850
    weighting: str = "linear"

    def __post_init__(self):
        if self.window_size < 1:
            raise ValueError("window_size must be >= 1")
        if self.context_period < self.window_size:
            raise ValueError("context_period must be >= window_size")
        if self.weighting != "linear":
            raise ValueError(f"unknown weighting {self.weighting!r}")


def _as_messages(stream: Sequence[LabeledMessage | Message]) -> list[Message]:
    return [m.message if isinstance(m, LabeledMessage) else m for m in stream]


def extract_context(stream: Sequence[LabeledMessage | Message], target_id: str,
                    cfg: ExtractConfig) -> list[Message]:
    """Channel-local slice of up to cp//2 messages each side of the target."""
    messages = _as_messages(stream)
    target = next((m for m in messages if m.id == target_id), None)
    if target is None:
        raise TargetNotFound(target_id)
    channel = [m for m in messages if m.channel == target.channel]
    idx = next(i for i, m in enumerate(channel) if m.id == target_id)
    half = cfg.context_period // 2
    return channel[max(0, idx - half): idx + half + 1]


def build_graph(context: Sequence[LabeledMessage | Message], target_id: str,
                cfg: ExtractConfig) -> ConvGraph:
    """Directed weighted graph over the authors active in the context.

    For each message after the first, every distinct other author v found in
    the previous window_size messages receives weight proportional to
    (window_size - g(v) + 1), where g(v) is how many messages back v last
    spoke; the increments are normalized to sum to 1. Messages whose window
    holds no other author contribute nothing (no self-loops).
    """
    messages = _as_messages(context)
    if not messages:
        raise ValueError("context must be non-empty")
    target = next((m for m in messages if m.id == target_id), None)
    if target is None:
        raise TargetNotFound(target_id)

    nodes: list[str] = []
    seen: set[str] = set()
    for m in messages:
        if m.author not in seen:
            seen.add(m.author)
            nodes.append(m.author)

    w = cfg.window_size
    weights: dict[tuple[str, str], float] = {}
    for i in range(1, len(messages)):
        u = messages[i].author
        recency: dict[str, int] = {}
        for j in range(max(0, i - w), i):
            v = messages[j].author
            if v != u:
                recency[v] = i - j  # later j wins: smallest distance kept
        if not recency:
            continue
        raw = {v: float(w - g + 1) for v, g in recency.items()}
        total = sum(raw.values())
        for v, r in raw.items():
            key = (u, v)
            weights[key] = weights.get(key, 0.0) + r / total

    meta = {
        "message_id": target_id,
        "channel": target.channel,
        "context_start": messages[0].id,
        "context_end": messages[-1].id,
        "context_size": len(messages),
    }
    return ConvGraph(nodes=tuple(nodes), edges=weights, target=target.author,
                     meta=meta, directed=True)


def extract_graph(stream: Sequence[LabeledMessage | Message], target_id: str,
                  cfg: ExtractConfig) -> ConvGraph:
    """extract_context followed by build_graph."""
    return build_graph(extract_context(stream, target_id, cfg), target_id, cfg)
