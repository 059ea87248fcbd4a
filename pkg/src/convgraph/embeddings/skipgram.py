"""SkipGram with negative sampling, trained by minibatch SGD.

The per-pair objective is

    l = -log sigmoid(u . v) - sum_j log sigmoid(-u . n_j)

with u the center's input vector, v the context's output vector and n_j the
output vectors of the sampled negatives. Input rows are initialized from a
per-row seeded stream (so row i starts identically across models sharing a
seed, whatever the vocabulary size); output rows start at zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import EmptyVocabulary
from ..util import rng_for

__all__ = ["SkipGramConfig", "SkipGramModel", "skipgram_train",
           "pair_loss_and_grads", "corpus_loss", "window_pairs",
           "init_input_vectors", "noise_distribution", "sgd_epoch"]

LR_FLOOR_FACTOR = 1e-4
NOISE_POWER = 0.75


@dataclass(frozen=True)
class SkipGramConfig:
    dimensions: int
    window_size: int
    learning_rate: float = 0.05
    epochs: int = 10
    min_count: int = 1
    negative: int = 5
    batch_size: int = 1024


@dataclass(frozen=True)
class SkipGramModel:
    vocab: tuple[str, ...]
    in_vectors: np.ndarray      # (V, d) — the embeddings
    out_vectors: np.ndarray     # (V, d)
    config: SkipGramConfig

    def vector(self, token: str) -> np.ndarray:
        return self.in_vectors[self.vocab.index(token)]


def _sigmoid(x: np.ndarray | float) -> np.ndarray | float:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -60, 60)))


def _log_sigmoid(x: np.ndarray) -> np.ndarray:
    # log sigma(x) = -log(1 + e^{-x}), stable on both tails
    return -np.logaddexp(0.0, -x)


def pair_loss_and_grads(u: np.ndarray, v: np.ndarray, negs: np.ndarray
                        ) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """Loss and analytic gradients w.r.t. u, v and each negative row."""
    pos_score = float(u @ v)
    neg_scores = negs @ u
    loss = -float(_log_sigmoid(np.array([pos_score]))[0]) \
        - float(_log_sigmoid(-neg_scores).sum())
    s_pos = float(_sigmoid(pos_score))
    s_neg = np.asarray(_sigmoid(neg_scores))
    grad_u = (s_pos - 1.0) * v + s_neg @ negs
    grad_v = (s_pos - 1.0) * u
    grad_negs = s_neg[:, None] * u[None, :]
    return loss, grad_u, grad_v, grad_negs


def corpus_loss(in_vectors: np.ndarray, out_vectors: np.ndarray,
                pairs: np.ndarray, negatives: np.ndarray) -> float:
    """Total negative-sampling loss of fixed (pair, negatives) draws."""
    u = in_vectors[pairs[:, 0]]
    v = out_vectors[pairs[:, 1]]
    pos = (u * v).sum(axis=1)
    neg = np.einsum("bd,bkd->bk", u, out_vectors[negatives])
    return float(-(_log_sigmoid(pos).sum() + _log_sigmoid(-neg).sum()))


def window_pairs(sequences: Iterable[Sequence[int]], window: int) -> np.ndarray:
    """(center, context) index pairs over full symmetric windows."""
    out: list[tuple[int, int]] = []
    for seq in sequences:
        n = len(seq)
        for i in range(n):
            lo = max(0, i - window)
            hi = min(n, i + window + 1)
            for j in range(lo, hi):
                if j != i:
                    out.append((seq[i], seq[j]))
    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def init_input_vectors(n_rows: int, dimensions: int, seed: int) -> np.ndarray:
    """Row i is drawn from stream (seed, 'sg-init', i): stable across models."""
    vecs = np.empty((n_rows, dimensions))
    bound = 0.5 / dimensions
    for i in range(n_rows):
        vecs[i] = rng_for(seed, "sg-init", i).uniform(-bound, bound, dimensions)
    return vecs


def noise_distribution(counts: np.ndarray, power: float = NOISE_POWER) -> np.ndarray:
    """Unigram^power distribution over the vocabulary."""
    w = np.asarray(counts, dtype=float) ** power
    total = w.sum()
    if total <= 0:
        raise EmptyVocabulary("no tokens left to sample negatives from")
    return w / total


def _averaged_scatter(target: np.ndarray, idx: np.ndarray, grads: np.ndarray,
                      lr: float) -> None:
    """target[r] -= lr * mean of grads rows hitting r.

    Averaging (rather than summing) repeated rows keeps the effective step
    size independent of how often a row occurs inside the batch, which is
    what per-pair SGD would give. The scatter-add runs as a one-hot matmul,
    which beats ufunc.at by an order of magnitude at these vocabulary sizes.
    """
    v = target.shape[0]
    if v <= 512:
        onehot = np.zeros((v, len(idx)), dtype=target.dtype)
        onehot[idx, np.arange(len(idx))] = 1.0
        acc = onehot @ grads
        counts = onehot.sum(axis=1)
    else:
        acc = np.zeros_like(target)
        np.add.at(acc, idx, grads)
        counts = np.bincount(idx, minlength=v).astype(target.dtype)
    hit = counts > 0
    target[hit] -= target.dtype.type(lr) * acc[hit] / counts[hit, None]


def sgd_epoch(in_vectors: np.ndarray, out_vectors: np.ndarray,
              pairs: np.ndarray, negatives: np.ndarray,
              lr_start: float, lr_end: float, batch_size: int) -> None:
    """One pass of minibatch SGD updates, in place; lr decays linearly."""
    n = len(pairs)
    if n == 0:
        return
    n_batches = (n + batch_size - 1) // batch_size
    for b in range(n_batches):
        sl = slice(b * batch_size, min((b + 1) * batch_size, n))
        lr = lr_start + (lr_end - lr_start) * (b / max(1, n_batches - 1)
                                               if n_batches > 1 else 0.0)
        c = pairs[sl, 0]
        o = pairs[sl, 1]
        neg = negatives[sl]
        u = in_vectors[c]
        v = out_vectors[o]
        vn = out_vectors[neg]
        s_pos = np.asarray(_sigmoid((u * v).sum(axis=1)))
        s_neg = np.asarray(_sigmoid((vn @ u[:, :, None])[:, :, 0]))
        grad_u = (s_pos - 1.0)[:, None] * v + (s_neg[:, None, :] @ vn)[:, 0, :]
        grad_v = (s_pos - 1.0)[:, None] * u
        grad_n = s_neg[:, :, None] * u[:, None, :]
        _averaged_scatter(in_vectors, c, grad_u, lr)
        _averaged_scatter(out_vectors, o, grad_v, lr)
        _averaged_scatter(out_vectors, neg.reshape(-1),
                          grad_n.reshape(-1, grad_n.shape[-1]), lr)


def skipgram_train(sequences: Sequence[Sequence[str]], cfg: SkipGramConfig,
                   seed: int, vocab: Sequence[str] | None = None) -> SkipGramModel:
    """Train on token sequences (random walks or any token documents).

    vocab, when given, fixes the vector row order; tokens below min_count are
    dropped from the training corpus but keep their (initialization) rows.
    With epochs=0 the seeded initialization is returned unchanged.
    """
    counts: dict[str, int] = {}
    for seq in sequences:
        for tok in seq:
            counts[tok] = counts.get(tok, 0) + 1
    surviving = {t for t, c in counts.items() if c >= cfg.min_count}
    if not surviving:
        raise EmptyVocabulary(
            f"no token reaches min_count={cfg.min_count} "
            f"({len(counts)} distinct tokens seen)")
    if vocab is None:
        vocab = [t for t in dict.fromkeys(t for seq in sequences for t in seq)
                 if t in surviving]
    vocab = tuple(vocab)
    tok2idx = {t: i for i, t in enumerate(vocab)}

    filtered = [[tok2idx[t] for t in seq if t in surviving and t in tok2idx]
                for seq in sequences]
    pairs = window_pairs(filtered, cfg.window_size)

    # float32 for training throughput; published vectors are float64
    in_vectors = init_input_vectors(len(vocab), cfg.dimensions, seed) \
        .astype(np.float32)
    out_vectors = np.zeros_like(in_vectors)
    if cfg.epochs == 0 or len(pairs) == 0:
        return SkipGramModel(vocab=vocab, in_vectors=in_vectors.astype(float),
                             out_vectors=out_vectors.astype(float), config=cfg)

    count_arr = np.array([counts.get(t, 0) if t in surviving else 0 for t in vocab],
                         dtype=float)
    noise = noise_distribution(count_arr)
    rng = rng_for(seed, "sg-train")
    lr0 = cfg.learning_rate
    floor = lr0 * LR_FLOOR_FACTOR
    for epoch in range(cfg.epochs):
        order = rng.permutation(len(pairs))
        shuffled = pairs[order]
        negatives = rng.choice(len(vocab), size=(len(pairs), cfg.negative), p=noise)
        lr_start = lr0 + (floor - lr0) * (epoch / cfg.epochs)
        lr_end = lr0 + (floor - lr0) * ((epoch + 1) / cfg.epochs)
        sgd_epoch(in_vectors, out_vectors, shuffled, negatives,
                  lr_start, lr_end, cfg.batch_size)
    return SkipGramModel(vocab=vocab, in_vectors=in_vectors.astype(float),
                         out_vectors=out_vectors.astype(float), config=cfg)
