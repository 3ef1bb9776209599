"""Seeded, splittable random streams on top of numpy's SeedSequence."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np


@dataclass(frozen=True)
class RandomStream:
    """(seed, stream path) -> an independent PCG64 generator.

    Identical seed and path always give the same draw sequence; children made
    by ``split`` are statistically independent of each other and the parent.
    """

    seed: int = 0
    stream: tuple[int, ...] = ()

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(int(self.seed), spawn_key=tuple(self.stream))
        return np.random.Generator(np.random.PCG64(ss))

    def split(self, i: int) -> "RandomStream":
        return RandomStream(self.seed, self.stream + (int(i),))


RngLike = Union[np.random.Generator, RandomStream, int, None]


def as_generator(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RandomStream):
        return rng.generator()
    return RandomStream(0 if rng is None else int(rng)).generator()
