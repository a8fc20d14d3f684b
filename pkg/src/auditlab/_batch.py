"""Vectorized evaluators for priority mechanisms over stacked problem batches.

Batches are numpy arrays: ``pref[b, i, k]`` is the object at rank ``k`` of
individual ``i``'s preference in batch row ``b``; ``score[b, i, o]`` is her
priority score at object ``o`` (distinct per object within a row). These are
used by the audit engine when a counterpart search space is too large to
materialize as a table.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import all_perms


@lru_cache(maxsize=None)
def pref_table(n: int) -> np.ndarray:
    """(n!, n) array: row p is the p-th preference permutation."""
    return np.array(all_perms(n), dtype=np.int64)


@lru_cache(maxsize=None)
def score_from_order_table(n: int) -> np.ndarray:
    """(n!, n) array: entry [q, i] is individual i's rank score when the
    priority order at an object is permutation q (position 0 = top)."""
    perms = all_perms(n)
    out = np.empty((len(perms), n), dtype=np.int64)
    for q, order in enumerate(perms):
        for pos, i in enumerate(order):
            out[q, i] = n - 1 - pos
    return out


def da_batch(pref: np.ndarray, score: np.ndarray) -> np.ndarray:
    """Individual-proposing deferred acceptance, vectorized over the batch.

    Simultaneous-proposal formulation: every individual proposes to the first
    preference she has not been rejected from; each object keeps the
    highest-score proposer; the rest advance. A tentative holder keeps
    re-proposing the same object, so the fixed point is the DA outcome.
    Returns the (B, n) assignment array.
    """
    B, n, _ = pref.shape
    ptr = np.zeros((B, n), dtype=np.int64)
    objects = np.arange(n)
    prop = np.take_along_axis(pref, ptr[:, :, None], axis=2)[:, :, 0]
    for _ in range(n * n):
        own = np.take_along_axis(score, prop[:, :, None], axis=2)[:, :, 0]
        claimed = prop[:, :, None] == objects[None, None, :]
        best = np.where(claimed, own[:, :, None], -1).max(axis=1)  # (B, n) per object
        rejected = own < np.take_along_axis(best, prop, axis=1)
        if not rejected.any():
            break
        ptr += rejected
        prop = np.take_along_axis(pref, ptr[:, :, None], axis=2)[:, :, 0]
    return prop


def ia_batch(pref: np.ndarray, score: np.ndarray) -> np.ndarray:
    """Immediate acceptance, vectorized: per round, unassigned individuals
    claim their best still-available object, and every claimed object is
    permanently assigned to its highest-score claimant."""
    B, n, _ = pref.shape
    assignment = np.full((B, n), -1, dtype=np.int64)
    available = np.ones((B, n), dtype=bool)
    for _ in range(n):
        active = assignment < 0
        if not active.any():
            break
        avail_by_rank = np.take_along_axis(
            available, pref.reshape(B, n * n), axis=1
        ).reshape(B, n, n)
        first = np.argmax(avail_by_rank, axis=2)
        claim = np.take_along_axis(pref, first[:, :, None], axis=2)[:, :, 0]
        own = np.take_along_axis(score, claim[:, :, None], axis=2)[:, :, 0]
        own = np.where(active, own, -1)
        claimed = (claim[:, :, None] == np.arange(n)[None, None, :]) & active[:, :, None]
        best = np.where(claimed, own[:, :, None], -1).max(axis=1)  # (B, n) per object
        winner = active & (own == np.take_along_axis(best, claim, axis=1)) & (own >= 0)
        assignment = np.where(winner, claim, assignment)
        taken = best >= 0
        available &= ~taken
    return assignment


def tau_batch(kind_name: str, e: int | None, pref: np.ndarray, score: np.ndarray) -> np.ndarray:
    """Vectorized score modification mirroring :func:`auditlab.priority.apply_tau`."""
    B, n, _ = pref.shape
    if kind_name == "identity":
        return score
    rank = np.empty_like(pref)
    np.put_along_axis(rank, pref, np.broadcast_to(np.arange(n), (B, n, n)).copy(), axis=2)
    primary = rank if kind_name == "ia-rank" else rank // e
    # secondary: rank-from-below of the score within each object column
    order = np.argsort(score, axis=1)
    secondary = np.empty_like(score)
    np.put_along_axis(
        secondary, order, np.broadcast_to(np.arange(n)[None, :, None], (B, n, n)).copy(), axis=1
    )
    return (n - primary) * n + secondary
