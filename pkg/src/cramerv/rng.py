"""Counter-based seeding of vectorized xoshiro256** streams.

Each simulation draw gets its own generator whose state is a pure function
of ``(seed, draw_index)``, so draws can be produced in any order, in
batches, or in parallel and still be identical. The state words come from
splitmix64; the stream itself is xoshiro256** (Blackman and Vigna).

All arithmetic is on ``numpy.uint64`` arrays, which wrap modulo 2**64.
"""

from __future__ import annotations

import numpy as np

_U64 = np.uint64
_MASK = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
INDEX_MULT = 0xD1B54A32D192ED03


def _rotl(x: np.ndarray, k: int) -> np.ndarray:
    return (x << _U64(k)) | (x >> _U64(64 - k))


def splitmix64_mix(z: np.ndarray) -> np.ndarray:
    """The splitmix64 output function (finalizer) applied elementwise."""
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


def splitmix64(state: np.ndarray, count: int) -> np.ndarray:
    """``count`` successive splitmix64 outputs from each starting state.

    Returns an array of shape ``(count,) + state.shape``.
    """
    s = np.array(state, dtype=np.uint64, ndmin=1)
    out = np.empty((count,) + s.shape, dtype=np.uint64)
    for i in range(count):
        s = s + _U64(GOLDEN_GAMMA)
        out[i] = splitmix64_mix(s)
    return out


def stream_keys(seed: int, indices: np.ndarray) -> np.ndarray:
    """Per-draw splitmix64 starting states derived from a seed and draw index."""
    idx = np.asarray(indices, dtype=np.uint64)
    base = splitmix64_mix(np.array([seed & _MASK], dtype=np.uint64))[0]
    return splitmix64_mix(base ^ (idx * _U64(INDEX_MULT)))


class Xoshiro256:
    """A batch of independent xoshiro256** generators stepped in lockstep.

    ``state`` has shape ``(4, k)``; every call returns ``k`` values, one per
    stream.
    """

    def __init__(self, state: np.ndarray):
        state = np.array(state, dtype=np.uint64)
        if state.ndim != 2 or state.shape[0] != 4:
            raise ValueError(f"state must have shape (4, k), got {state.shape}")
        if np.any(np.all(state == 0, axis=0)):
            raise ValueError("xoshiro256** state must not be all zero")
        self.s = state

    @classmethod
    def for_draws(cls, seed: int, indices) -> "Xoshiro256":
        """One stream per draw index, seeded from ``(seed, index)``."""
        keys = stream_keys(seed, np.atleast_1d(indices))
        return cls(splitmix64(keys, 4))

    @property
    def size(self) -> int:
        return self.s.shape[1]

    def next_u64(self) -> np.ndarray:
        s0, s1, s2, s3 = self.s
        result = _rotl(s1 * _U64(5), 7) * _U64(9)
        t = s1 << _U64(17)
        s2 = s2 ^ s0
        s3 = s3 ^ s1
        s1 = s1 ^ s2
        s0 = s0 ^ s3
        s2 = s2 ^ t
        s3 = _rotl(s3, 45)
        self.s = np.stack([s0, s1, s2, s3])
        return result

    def next_double(self) -> np.ndarray:
        """Uniform doubles in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> _U64(11)).astype(np.float64) * (1.0 / (1 << 53))
