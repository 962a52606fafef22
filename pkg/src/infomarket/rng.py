"""Counter-based random streams.

Every uniform variate is a pure function of a 64-bit stream key and a 64-bit
counter, so any trial (or any single draw inside a trial) can be regenerated
without replaying the draws before it, and batches of trials vectorize.

Mixing function (stable within a release):

    bits(key, i) = fmix(fmix(key + (i + 1) * GOLDEN) ^ rotl(key, 47))
    uniform      = (bits >> 11) * 2**-53                    in [0, 1)

``fmix`` is the SplitMix64 finalizer.  Keys are derived by folding integers
through ``fmix``: ``derive_key(a, b, c)`` hashes ``a``, then ``b``, then
``c`` into one word.  Trial keys are ``derive_key(base_seed, n, trial)`` and
each use inside a trial (common terms, idiosyncratic terms, tie breaks, ...)
gets its own child key ``derive_key(trial_key, purpose)``.
"""

from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_SALT = np.uint64(0x5851F42D4C957F2D)
_MASK64 = (1 << 64) - 1
_INV_2_53 = 1.0 / (1 << 53)

# Purpose tags for child streams inside a trial.
Q_STREAM = 1
PHI_STREAM = 2
TIE_STREAM = 3
NOINFO_STREAM = 4


def _as_u64(x) -> np.ndarray:
    if isinstance(x, np.ndarray) and x.dtype == np.uint64:
        return x
    if isinstance(x, (int, np.integer)):
        return np.array(int(x) & _MASK64, dtype=np.uint64)
    arr = np.asarray(x)
    if arr.dtype == np.uint64:
        return arr
    return arr.astype(np.int64).astype(np.uint64)


def fmix(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, elementwise on uint64 arrays (wrapping)."""
    z = _as_u64(z)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        z = z ^ (z >> np.uint64(31))
    return z


def derive_key(*parts) -> np.ndarray:
    """Fold integers (or broadcastable integer arrays) into one uint64 key."""
    h = fmix(_SALT)
    with np.errstate(over="ignore"):
        for p in parts:
            h = fmix(h ^ fmix(_as_u64(p) * GOLDEN + _SALT))
    return h


def random_bits(key, counter) -> np.ndarray:
    """Raw 64-bit outputs for broadcast ``key`` and ``counter`` arrays."""
    key = _as_u64(key)
    counter = _as_u64(counter)
    with np.errstate(over="ignore"):
        rot = (key << np.uint64(47)) | (key >> np.uint64(17))
        z = fmix(key + (counter + np.uint64(1)) * GOLDEN)
        z = fmix(z ^ rot)
    return z


def uniforms(key, counter) -> np.ndarray:
    """Uniform [0, 1) doubles at the given (key, counter) positions."""
    bits = random_bits(key, counter)
    return (bits >> np.uint64(11)).astype(np.float64) * _INV_2_53


def trial_keys(base_seed: int, n: int, trials) -> np.ndarray:
    """Keys for a vector of trial indices within the cell ``(base_seed, n)``."""
    return derive_key(base_seed, n, np.asarray(trials, dtype=np.int64))


def child_keys(keys, purpose: int) -> np.ndarray:
    return derive_key(keys, purpose)


class RandomStream:
    """Sequential view of one counter-based stream.

    Single owner; ``spawn`` gives an independent child stream for parallel use.
    """

    __slots__ = ("key", "position")

    def __init__(self, key, position: int = 0):
        self.key = np.uint64(int(_as_u64(key)))
        self.position = int(position)

    @classmethod
    def from_seed(cls, seed: int) -> "RandomStream":
        return cls(derive_key(seed))

    def spawn(self, *tags: int) -> "RandomStream":
        return RandomStream(derive_key(self.key, *tags))

    def uniform(self, count: int) -> np.ndarray:
        if count < 0:
            raise ValueError("count must be nonnegative")
        ctr = np.arange(self.position, self.position + count, dtype=np.uint64)
        self.position += count
        return uniforms(self.key, ctr)

    def random(self) -> float:
        return float(self.uniform(1)[0])

    def integer(self, high: int) -> int:
        """Uniform integer in ``[0, high)``."""
        if high < 1:
            raise ValueError("high must be >= 1")
        return min(int(self.random() * high), high - 1)

    def __repr__(self) -> str:
        return f"RandomStream(key=0x{int(self.key):016x}, position={self.position})"
