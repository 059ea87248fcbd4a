"""Chat-log corpora: ingestion, balanced sampling and a synthetic generator.

The interchange format is JSONL, one message object per line:

    {"id": str, "author": str, "ts": int, "channel": str,
     "label": "abuse" | "none", "text": str?}

CSV with the same columns is supported read-only. Message text is carried
opaquely and never used as a feature anywhere in the pipeline.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateId, InsufficientData, ParseError
from .util import rng_for

log = logging.getLogger(__name__)

ABUSE = "abuse"
NON_ABUSE = "none"
LABELS = (ABUSE, NON_ABUSE)


@dataclass(frozen=True)
class Message:
    id: str
    author: str
    ts: int               # epoch milliseconds, non-decreasing within a channel
    channel: str
    text: str | None = None


@dataclass(frozen=True)
class LabeledMessage:
    message: Message
    label: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {self.label!r}")


@dataclass(frozen=True)
class DatasetSpec:
    abuse_count: int | None      # None = as many as the pool supports
    balance: bool = True
    conversation_disjoint: bool = True
    seed: int = 0


def _message_to_dict(m: LabeledMessage) -> dict:
    d = {"id": m.message.id, "author": m.message.author, "ts": m.message.ts,
         "channel": m.message.channel, "label": m.label}
    if m.message.text is not None:
        d["text"] = m.message.text
    return d


def write_jsonl(messages: Iterable[LabeledMessage], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for m in messages:
            fh.write(json.dumps(_message_to_dict(m), sort_keys=True,
                                separators=(",", ":")) + "\n")


def _parse_record(rec: dict, lineno: int) -> LabeledMessage:
    try:
        ts = int(rec["ts"])
        label = rec["label"]
        if label not in LABELS:
            raise ParseError(lineno, f"label must be 'abuse' or 'none', got {label!r}")
        text = rec.get("text")
        if text is not None:
            text = str(text)
        return LabeledMessage(
            message=Message(id=str(rec["id"]), author=str(rec["author"]),
                            ts=ts, channel=str(rec["channel"]), text=text),
            label=label,
        )
    except ParseError:
        raise
    except KeyError as exc:
        raise ParseError(lineno, f"missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(lineno, str(exc)) from exc


def ingest(path: str | Path, format: str | None = None) -> list[LabeledMessage]:
    """Read a labeled corpus, check ids, sort by (channel, ts).

    A timestamp going backwards within a channel is repaired by the stable
    sort and only logged as a warning; duplicate ids are fatal.
    """
    path = Path(path)
    if format is None:
        format = "csv" if path.suffix.lower() == ".csv" else "jsonl"
    if format not in ("jsonl", "csv"):
        raise ValueError(f"unknown corpus format {format!r}")

    out: list[LabeledMessage] = []
    if format == "jsonl":
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ParseError(lineno, f"invalid JSON: {exc.msg}") from exc
                if not isinstance(rec, dict):
                    raise ParseError(lineno, "each line must be a JSON object")
                out.append(_parse_record(rec, lineno))
    else:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            for lineno, row in enumerate(reader, start=2):  # header is line 1
                rec = {k: v for k, v in row.items() if v not in (None, "")}
                out.append(_parse_record(rec, lineno))

    seen: set[str] = set()
    for m in out:
        if m.message.id in seen:
            raise DuplicateId(m.message.id)
        seen.add(m.message.id)

    last_ts: dict[str, int] = {}
    for m in out:
        prev = last_ts.get(m.message.channel)
        if prev is not None and m.message.ts < prev:
            log.warning("non-monotone timestamp in channel %s at message %s; "
                        "stable-sorting", m.message.channel, m.message.id)
            break
        last_ts[m.message.channel] = m.message.ts

    out.sort(key=lambda m: (m.message.channel, m.message.ts))
    return out


# --- balanced sampling ------------------------------------------------------

def _channel_positions(messages: Sequence[LabeledMessage]) -> dict[str, int]:
    """Position of each message within its channel's timeline."""
    counters: dict[str, int] = {}
    pos: dict[str, int] = {}
    for m in messages:
        c = m.message.channel
        pos[m.message.id] = counters.get(c, 0)
        counters[c] = counters.get(c, 0) + 1
    return pos


def contexts_overlap(m1: LabeledMessage, m2: LabeledMessage,
                     pos: dict[str, int], context_period: int) -> bool:
    """Same conversation = overlapping context periods (channel-local)."""
    if m1.message.channel != m2.message.channel:
        return False
    half = context_period // 2
    return abs(pos[m1.message.id] - pos[m2.message.id]) <= 2 * half


def _greedy_disjoint(pool: Sequence[LabeledMessage], order: np.ndarray,
                     blocked: Sequence[LabeledMessage], cap: int,
                     pos: dict[str, int], context_period: int,
                     disjoint: bool) -> list[LabeledMessage]:
    chosen: list[LabeledMessage] = []
    for i in order:
        cand = pool[i]
        if disjoint and any(contexts_overlap(cand, sel, pos, context_period)
                            for sel in list(blocked) + chosen):
            continue
        chosen.append(cand)
        if len(chosen) >= cap:
            break
    return chosen


def sample_balanced(messages: Sequence[LabeledMessage], spec: DatasetSpec,
                    context_period: int = 850) -> list[LabeledMessage]:
    """Equal-count Abuse/NonAbuse dataset; pure function of (pool, spec).

    With conversation_disjoint, a NonAbuse message is only selected if its
    context period overlaps no already selected message, Abuse or NonAbuse.
    abuse_count=None selects as many per class as the pool and the
    disjointness constraint allow.
    """
    rng = rng_for(spec.seed, "sample")
    abuse = [m for m in messages if m.label == ABUSE]
    nonabuse = [m for m in messages if m.label == NON_ABUSE]
    pos = _channel_positions(messages)
    abuse_order = rng.permutation(len(abuse))
    none_order = rng.permutation(len(nonabuse))

    if spec.abuse_count is None:
        # shrink the abuse selection until the NonAbuse side can match it
        count = len(abuse)
        while count > 0:
            chosen_abuse = [abuse[i] for i in abuse_order[:count]]
            chosen_none = _greedy_disjoint(nonabuse, none_order, chosen_abuse,
                                           count, pos, context_period,
                                           spec.conversation_disjoint)
            if len(chosen_none) >= count:
                break
            count = len(chosen_none)
        if count == 0:
            limiting = ABUSE if len(abuse) == 0 else NON_ABUSE
            raise InsufficientData(limiting, 1, 0)
    else:
        count = spec.abuse_count
        if len(abuse) < count:
            raise InsufficientData(ABUSE, count, len(abuse))
        chosen_abuse = [abuse[i] for i in abuse_order[:count]]
        chosen_none = _greedy_disjoint(nonabuse, none_order, chosen_abuse,
                                       count, pos, context_period,
                                       spec.conversation_disjoint)
        if len(chosen_none) < count:
            raise InsufficientData(NON_ABUSE, count, len(chosen_none))

    selected = chosen_abuse[:count] + chosen_none[:count]
    selected.sort(key=lambda m: (m.message.channel, m.message.ts, m.message.id))
    return selected


def split_dev(dataset: Sequence[LabeledMessage], dev_fraction: float,
              seed: int) -> tuple[list[LabeledMessage], list[LabeledMessage]]:
    """Stratified (main, dev) split used by the --dev-fraction flag."""
    if not 0 <= dev_fraction < 1:
        raise ValueError("dev_fraction must be in [0, 1)")
    rng = rng_for(seed, "dev-split")
    main: list[LabeledMessage] = []
    dev: list[LabeledMessage] = []
    for label in LABELS:
        group = [m for m in dataset if m.label == label]
        k = int(len(group) * dev_fraction)
        order = rng.permutation(len(group))
        dev.extend(group[i] for i in order[:k])
        main.extend(group[i] for i in order[k:])
    key = lambda m: (m.message.channel, m.message.ts, m.message.id)
    return sorted(main, key=key), sorted(dev, key=key)


# --- synthetic corpora ------------------------------------------------------

# a structural-signal abusive message triggers an argument of this many messages
BURST_LENGTH = 12


def synthesize(n_conversations: int, msgs_per_conv: int, abuse_rate: float,
               structure_signal: float, seed: int,
               author_pool: int = 30, authors_per_conv: tuple[int, int] = (8, 12),
               ) -> list[LabeledMessage]:
    """Generate a labeled corpus, one channel per conversation.

    Ordinary chatter rotates uniformly over the participants, so interaction
    weight spreads thinly and nobody accumulates much incoming weight.
    abuse_rate is the fraction of conversations that contain one abusive
    message. structure_signal in [0, 1] is the probability that an abusive
    message carries a structural signature: a recently quiet author provokes
    the previous speaker and a prolonged one-on-one argument follows, the
    author retorting after every reply. Incoming weight then concentrates on
    the abusive author far above what chatter gives anyone.

    Without the signature the abusive message is ordinary chatter at a
    position drawn uniformly over the conversation, exactly like the
    non-abusive ones, so at structure_signal=0 the labels are independent of
    any structure. Signature arguments start early in the conversation to
    have room; that placement cannot mark their graphs either, because the
    context period spans whole conversations at desk scales.
    """
    if not 0 < abuse_rate < 1:
        raise ValueError("abuse_rate must be in (0, 1)")
    if not 0 <= structure_signal <= 1:
        raise ValueError("structure_signal must be in [0, 1]")
    if n_conversations < 1 or msgs_per_conv < 1:
        raise ValueError("corpus dimensions must be positive")

    rng = rng_for(seed, "synth")
    pool = [f"u{k:03d}" for k in range(author_pool)]
    out: list[LabeledMessage] = []

    for c in range(n_conversations):
        channel = f"c{c:04d}"
        lo, hi = authors_per_conv
        k = int(rng.integers(lo, hi + 1))
        authors = [pool[i] for i in rng.choice(author_pool, size=min(k, author_pool),
                                               replace=False)]
        ts = 1_600_000_000_000 + c * 86_400_000

        abuse_pos = -1
        structural = False
        if rng.random() < abuse_rate:
            structural = rng.random() < structure_signal and msgs_per_conv >= 4
            if structural:
                abuse_pos = int(rng.integers(2, max(2, msgs_per_conv - 9) + 1))
            else:
                abuse_pos = int(rng.integers(0, msgs_per_conv))

        prev_author: str | None = None
        last_spoke = {a: -10 for a in authors}
        burst_queue: list[str] = []

        def next_chatter() -> str:
            choices = [a for a in authors if a != prev_author] or authors
            return choices[int(rng.integers(len(choices)))]

        for i in range(msgs_per_conv):
            label = NON_ABUSE
            if i == abuse_pos:
                label = ABUSE
                if structural:
                    # quiet author provokes the previous speaker into a
                    # prolonged duel; all replies point back at them
                    quiet = sorted(authors, key=lambda a: last_spoke[a])
                    candidates = [a for a in quiet[:3] if a != prev_author] or quiet[:1]
                    author = candidates[int(rng.integers(len(candidates)))]
                    others = [a for a in authors if a != author]
                    opponent = prev_author if prev_author in others \
                        else others[int(rng.integers(len(others)))]
                    queue = [opponent, author] * BURST_LENGTH
                    burst_queue = queue[:min(BURST_LENGTH, msgs_per_conv - i - 1)]
                else:
                    author = next_chatter()
            elif burst_queue:
                author = burst_queue.pop(0)
            else:
                author = next_chatter()

            ts += int(rng.integers(800, 3200))
            out.append(LabeledMessage(
                message=Message(id=f"{channel}-m{i:04d}", author=author, ts=ts,
                                channel=channel, text=f"t{i}"),
                label=label,
            ))
            prev_author = author
            last_spoke[author] = i

    out.sort(key=lambda m: (m.message.channel, m.message.ts))
    return out
