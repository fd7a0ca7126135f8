"""
Counter-based random streams.

Every independent block of work (one sweep, one direction, one parity, one
time slice) draws from its own Philox stream keyed by the run seed and the
block coordinates. The numbers a block sees therefore never depend on how
many threads execute the blocks or in which order.
"""

import numpy as np


def block_generator(seed, *block):
    """numpy Generator for the stream identified by ``(seed, *block)``."""
    key = [int(seed)] + [int(b) for b in block]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))


class BlockStreams:
    """Stream factory for one sweep of a Markov chain."""

    def __init__(self, seed, sweep):
        self.seed = int(seed)
        self.sweep = int(sweep)

    def generator(self, *block):
        return block_generator(self.seed, self.sweep, *block)


def resolve(rng, *block):
    """
    Generator for ``block``.

    ``rng`` may be a BlockStreams (one stream per block) or a plain numpy
    Generator, which is then shared by all blocks in call order.
    """
    if isinstance(rng, BlockStreams):
        return rng.generator(*block)
    return rng
