"""Deterministic random streams derived from (master seed, context keys).

Every stochastic component owns a generator spawned from the master seed plus
a stable context key (replicate index, network id, ...). String keys go
through sha256 so the derivation does not depend on Python's randomized
hash(), and integer keys feed SeedSequence directly. Two streams with
different keys are independent; the same key always reproduces the same
stream, regardless of the order streams are created in.
"""

from __future__ import annotations

import hashlib

import numpy as np


def _key_words(key) -> list[int]:
    if isinstance(key, (int, np.integer)):
        return [int(key) & 0xFFFFFFFF, (int(key) >> 32) & 0xFFFFFFFF]
    if isinstance(key, str):
        digest = hashlib.sha256(key.encode("utf-8")).digest()
        return [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]
    raise TypeError(f"unsupported rng key type {type(key)!r}")


def spawn_rng(master_seed: int, *keys) -> np.random.Generator:
    """Generator for the stream identified by (master_seed, *keys)."""
    entropy = [int(master_seed) & 0xFFFFFFFFFFFFFFFF]
    for key in keys:
        entropy.extend(_key_words(key))
    return np.random.default_rng(np.random.SeedSequence(entropy))
