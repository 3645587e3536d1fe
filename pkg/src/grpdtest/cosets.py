"""Todd-Coxeter coset enumeration (HLT strategy with coincidence processing).

Words are sequences of ``(generator, exponent)`` pairs with exponent +1 or -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Word = tuple[tuple[str, int], ...]


@dataclass
class CosetTable:
    """A complete coset table: ``action[g][c]`` is ``c . g``."""

    size: int
    action: dict[str, list[int]]
    steps: int

    def apply(self, c: int, word: Word) -> int:
        for g, e in word:
            perm = self.action[g]
            c = perm[c] if e > 0 else perm.index(c)
        return c


class _Enumerator:
    def __init__(self, generators: Sequence[str], relators: Sequence[Word], budget: int):
        self.cols = [(g, 1) for g in generators] + [(g, -1) for g in generators]
        self.col_index = {x: i for i, x in enumerate(self.cols)}
        self.inv = [self.col_index[(g, -e)] for g, e in self.cols]
        self.rels = [[self.col_index[x] for x in r] for r in relators if r]
        self.table: list[list[int | None]] = [[None] * len(self.cols)]
        self.parent = [0]
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise _OutOfBudget

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def define(self, c: int, x: int) -> None:
        self.tick()
        n = len(self.table)
        self.table.append([None] * len(self.cols))
        self.parent.append(n)
        self.table[c][x] = n
        self.table[n][self.inv[x]] = c

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        lo, hi = min(k, l), max(k, l)
        self.parent[hi] = lo
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(len(self.cols)):
                f = self.table[e][x]
                if f is None:
                    continue
                self.tick()
                ix = self.inv[x]
                self.table[f][ix] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self.merge(f1, self.table[e1][x], queue)
                elif self.table[f1][ix] is not None:
                    self.merge(e1, self.table[f1][ix], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][ix] = e1

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        T = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and T[f][w[i]] is not None:
                f = T[f][w[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and T[b][self.inv[w[j]]] is not None:
                b = T[b][self.inv[w[j]]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.tick()
                T[f][w[i]] = b
                T[b][self.inv[w[i]]] = f
                return
            self.define(f, w[i])

    def run(self) -> None:
        c = 0
        while c < len(self.table):
            if self.parent[c] == c:
                for r in self.rels:
                    self.scan_and_fill(c, r)
                    if self.parent[c] != c:
                        break
                if self.parent[c] == c:
                    for x in range(len(self.cols)):
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1


class _OutOfBudget(Exception):
    pass


def enumerate_cosets(generators: Sequence[str], relators: Sequence[Word], budget: int = 10**5) -> CosetTable | None:
    """Enumerate cosets of the trivial subgroup.  Returns the regular
    permutation representation, or ``None`` when ``budget`` table
    deductions (definitions, fills and coincidence steps) are exhausted."""
    en = _Enumerator(generators, relators, budget)
    try:
        en.run()
    except _OutOfBudget:
        return None
    live = [c for c in range(len(en.table)) if en.parent[c] == c]
    index = {c: i for i, c in enumerate(live)}
    action = {}
    for g in generators:
        col = en.col_index[(g, 1)]
        action[g] = [index[en.rep(en.table[c][col])] for c in live]
    return CosetTable(len(live), action, en.steps)
