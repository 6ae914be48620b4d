"""Counter-based random substreams.

Every randomized routine in this package draws from a Philox generator whose
128-bit key is derived from a user seed plus a tuple of context tags (suite
name, level, sample block, ...).  Philox is counter based, so two runs with
the same (seed, tags) produce identical streams, independent of how many
other streams were consumed in between.  This is what makes the verification
reports byte-reproducible and immune to parallel scheduling.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    """One splitmix64 output step; the standard 64-bit finalizer."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _tag_to_int(tag) -> int:
    if isinstance(tag, (int, np.integer)):
        return int(tag) & _MASK64
    if isinstance(tag, str):
        digest = hashlib.blake2b(tag.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "little")
    raise TypeError(f"substream tags must be int or str, got {type(tag)!r}")


def stream_key(seed: int, *tags) -> np.ndarray:
    """128-bit Philox key mixed from the seed and the context tags."""
    state = _splitmix64(int(seed) & _MASK64)
    for tag in tags:
        state = _splitmix64(state ^ _tag_to_int(tag))
    k0 = _splitmix64(state)
    k1 = _splitmix64(k0 ^ state)
    return np.array([k0, k1], dtype=np.uint64)


def substream(seed: int, *tags) -> np.random.Generator:
    """Independent generator for the given (seed, tags) context."""
    return np.random.Generator(np.random.Philox(key=stream_key(seed, *tags)))
