"""Small shared helpers: deterministic RNG streams and canonical JSON."""

from __future__ import annotations

import json
from typing import Any

import numpy as np


def rng_for(seed: int, *tags: str | int) -> np.random.Generator:
    """Independent generator for (seed, tags...).

    String tags are folded into the seed material bytewise, so streams are
    stable across runs, platforms and process boundaries.
    """
    entropy: list[int] = [int(seed) & 0xFFFFFFFFFFFFFFFF]
    for tag in tags:
        if isinstance(tag, str):
            entropy.append(int.from_bytes(tag.encode("utf-8"), "big"))
        else:
            entropy.append(int(tag) & 0xFFFFFFFFFFFFFFFF)
    return np.random.default_rng(np.random.SeedSequence(entropy))


def canonical_json(obj: Any) -> str:
    """JSON with sorted keys and no whitespace drift; floats round-trip."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)
