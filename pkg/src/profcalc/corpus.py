"""Fixed test corpora and seeded random instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .errors import BoundExceeded
from .fincat import (CatFunctor, FinCategory, chain, discrete, iter_functors, monoid_category, parallel_pair,
                     poset, terminal, walking_arrow)
from .prof import Profunctor, random_profunctor


def bool4() -> FinCategory:
    """Subsets of a 2-element set, ordered by inclusion (as bitmasks)."""
    return poset(range(4), lambda a, b: a & b == a, name="bool4")


def diamond_m3() -> FinCategory:
    """Bottom 0, three atoms, top 4."""
    return poset(range(5), lambda a, b: a == b or a == 0 or b == 4, name="M3")


def pentagon_n5() -> FinCategory:
    """0 < 1 < 2 < 4 and 0 < 3 < 4."""
    up = {0: {0, 1, 2, 3, 4}, 1: {1, 2, 4}, 2: {2, 4}, 3: {3, 4}, 4: {4}}
    return poset(range(5), lambda a, b: b in up[a], name="N5")


def grid_2x3() -> FinCategory:
    els = [(i, j) for i in range(2) for j in range(3)]
    return poset(els, lambda a, b: a[0] <= b[0] and a[1] <= b[1], name="2x3")


def lattices() -> list:
    """Finite lattices with at most 6 elements; every small diagram has a colimit and a limit."""
    return [chain(1), chain(2), chain(3), chain(4), bool4(), diamond_m3(), pentagon_n5(), grid_2x3()]


def span() -> FinCategory:
    """``1 <- 0 -> 2``."""
    return poset(range(3), lambda a, b: a == b or a == 0, name="span")


def cospan() -> FinCategory:
    """``0 -> 2 <- 1``."""
    return poset(range(3), lambda a, b: a == b or b == 2, name="cospan")


def z2() -> FinCategory:
    return monoid_category(["1", "s"], lambda x, y: "1" if x == y else "s", "1", name="Z/2")


def idempotent() -> FinCategory:
    return monoid_category(["1", "e"], lambda x, y: "e" if "e" in (x, y) else "1", "1", name="idem")


def small_categories() -> list:
    """Every category here has at most 3 objects and at most 3 morphisms per hom-set."""
    return [terminal(), walking_arrow(), discrete([0, 1]), chain(3), span(), cospan(), parallel_pair(),
            z2(), idempotent(), discrete([0, 1, 2])]


def equipment_corpus() -> list:
    """Categories of at most 3 objects used for the equipment laws."""
    return [terminal(), walking_arrow(), discrete([0, 1]), chain(3), span(), z2()]


@dataclass
class KanInstance:
    d: CatFunctor
    J: Profunctor
    seed: int

    def describe(self) -> dict:
        return {"seed": self.seed, "A": self.J.src.name, "B": self.J.tgt.name, "M": self.d.tgt.name,
                "elements": sum(len(self.J.elements(a, b)) for a, b in self.J.pairs())}


def random_kan_instances(count: int = 50, seed: int = 0, max_elements: int = 3) -> Iterator[KanInstance]:
    """Seeded Kan problems ``(d: A -> M, J: A -|-> B)`` with lattice targets."""
    rng = random.Random(seed)
    cats = small_categories()
    targets = lattices()
    made = 0
    attempt = 0
    while made < count:
        attempt += 1
        if attempt > 50 * count:
            raise BoundExceeded("could not generate enough Kan instances")
        A, B, M = rng.choice(cats), rng.choice(cats), rng.choice(targets)
        functors = list(iter_functors(A, M, limit=400))
        if not functors:
            continue
        d = rng.choice(functors)
        try:
            J = random_profunctor(A, B, max_elements, rng)
        except BoundExceeded:
            continue
        yield KanInstance(d, J, attempt)
        made += 1
