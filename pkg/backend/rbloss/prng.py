"""
Counter-based 64-bit generator (SplitMix64 output function).

Draw i of seed s is mix(s + (i + 1) * 0x9E3779B97F4A7C15) with the SplitMix64
finalizer, so the integer stream depends only on (seed, counter) and can be
reproduced in any language with wrapping 64-bit arithmetic.
"""
import math

import numpy as np

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
MIX_2 = np.uint64(0x94D049BB133111EB)
MASK_64 = (1 << 64) - 1
UNIT_53 = 2.0 ** -53


class CounterRng:
    def __init__(self, seed: int = 0):
        self.seed = np.uint64(int(seed) & MASK_64)
        self.counter = 0

    def next_uint64(self, size: int) -> np.ndarray:
        index = np.arange(self.counter + 1, self.counter + size + 1, dtype=np.uint64)
        self.counter += size
        with np.errstate(over='ignore'):
            z = self.seed + index * GOLDEN_GAMMA
            z = (z ^ (z >> np.uint64(30))) * MIX_1
            z = (z ^ (z >> np.uint64(27))) * MIX_2
        return z ^ (z >> np.uint64(31))

    def uniform(self, size: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        """Uniform on [low, high) from the top 53 bits"""
        unit = (self.next_uint64(size) >> np.uint64(11)).astype(float) * UNIT_53
        return low + (high - low) * unit

    def normal(self, size: int) -> np.ndarray:
        """Standard normal draws by Box-Muller, two uniforms per draw"""
        pairs = self.uniform(2 * size).reshape(size, 2)
        # 1 - u lies in (0, 1], keeping the logarithm finite
        radius = np.sqrt(-2.0 * np.log(1.0 - pairs[:, 0]))
        return radius * np.cos(2.0 * math.pi * pairs[:, 1])
