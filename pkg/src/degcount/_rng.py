"""Deterministic 64-bit generator shared by both switch-chain backends.

The compiled and pure kernels must produce bit-identical trajectories
for the same seed, so both implement this exact splitmix64 sequence
rather than depending on interpreter- or library-specific generators.
"""

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MUL1) & MASK64
        z = ((z ^ (z >> 27)) * _MUL2) & MASK64
        return (z ^ (z >> 31)) & MASK64

    def below(self, k: int) -> int:
        """Uniform-ish draw in [0, k) by multiply-shift."""
        return (self.next_u64() * k) >> 64
