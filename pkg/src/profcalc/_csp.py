"""Tiny finite-domain constraint solver used for enumerating action tables."""
from __future__ import annotations

import random
from typing import Callable, Hashable, Iterator, Mapping, Sequence

# A constraint returns True (satisfied), False (violated) or None (undecided yet).
Constraint = Callable[[Mapping], "bool | None"]


class CSP:
    def __init__(self, variables: Sequence[Hashable], domains: Mapping[Hashable, Sequence]):
        self.variables = list(variables)
        self.domains = {v: list(domains[v]) for v in self.variables}
        self.watch: dict = {v: [] for v in self.variables}

    def add(self, constraint: Constraint, watched: Sequence[Hashable]) -> None:
        """Attach ``constraint`` to every variable whose value may decide it."""
        for v in set(watched):
            if v in self.watch:
                self.watch[v].append(constraint)

    def solve(self, rng: random.Random | None = None, limit: int | None = None) -> Iterator[dict]:
        asg: dict = {}
        order = self.variables
        count = 0

        def rec(i: int):
            if i == len(order):
                yield dict(asg)
                return
            v = order[i]
            dom = self.domains[v]
            if rng is not None:
                dom = list(dom)
                rng.shuffle(dom)
            for val in dom:
                asg[v] = val
                if all(c(asg) is not False for c in self.watch[v]):
                    yield from rec(i + 1)
                del asg[v]

        for sol in rec(0):
            yield sol
            count += 1
            if limit is not None and count >= limit:
                return
