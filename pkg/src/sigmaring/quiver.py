"""Two-vertex quiver whose closed paths index the mixed trace generators.

Vertices 1 and 2 are swapped by the involution.  For an alphabet split into
u loops x_i, v arrows y_j and w arrows z_k, the traversal directions are

    x_i : 1 -> 1      x_i' : 2 -> 2
    y_j : 1 -> 2      y_j' : 1 -> 2
    z_k : 2 -> 1      z_k' : 2 -> 1

so a word is a path when read left to right.  Letter indices are packed as
x_i -> i, y_j -> u + j, z_k -> u + v + k.

Closed paths are taken up to rotation and transpose; enumeration returns one
canonical primitive representative per class together with its multidegree
and its counts of untransposed y and z letters (the transpose-parity of
deg_y + deg_z is class-invariant because closed paths cross between the two
vertices an even number of times).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .words import Letter, Word, canonicalize


@dataclass(frozen=True)
class QuiverCycle:
    word: Word
    mdeg: tuple[int, ...]
    deg_y: int
    deg_z: int

    def key(self) -> tuple:
        return (len(self.word), self.word.key())


class Quiver:
    """The quiver Q(u, v, w) with the packed-letter conventions above."""

    def __init__(self, u: int, v: int, w: int):
        if min(u, v, w) < 0:
            raise ValueError("block sizes must be nonnegative")
        self.u, self.v, self.w = u, v, w
        self.d = u + v + w

    def kind(self, index: int) -> str:
        if 1 <= index <= self.u:
            return "x"
        if index <= self.u + self.v:
            return "y"
        if index <= self.d:
            return "z"
        raise ValueError(f"letter index {index} out of range")

    def step(self, lt: Letter, at: int) -> int | None:
        """Target vertex when traversing lt from vertex `at`, else None."""
        k = self.kind(lt.index)
        if k == "x":
            home = 2 if lt.transposed else 1
            return at if at == home else None
        if k == "y":
            return 2 if at == 1 else None
        return 1 if at == 2 else None

    def steps_from(self, at: int) -> list[tuple[Letter, int]]:
        out = []
        for i in range(1, self.d + 1):
            for tr in (False, True):
                lt = Letter(i, tr)
                nxt = self.step(lt, at)
                if nxt is not None:
                    out.append((lt, nxt))
        return out

    def is_closed_path(self, word: Word) -> bool:
        for start in (1, 2):
            at = start
            ok = True
            for lt in word:
                at = self.step(lt, at)
                if at is None:
                    ok = False
                    break
            if ok and at == start:
                return True
        return False

    def closed_cycles(self, budget: dict[int, int]) -> list[QuiverCycle]:
        """Canonical primitive closed-path classes with mdeg <= budget.

        Walking from vertex 1 alone is complete: any class with a letter
        y/z has a rotation based at 1, and pure-x' classes equal pure-x
        classes under transpose.
        """
        budget = {i: budget.get(i, 0) for i in range(1, self.d + 1)}
        seen: set[tuple] = set()
        found: list[QuiverCycle] = []
        path: list[Letter] = []

        def record():
            w = Word(path)
            root, power = canonicalize(w)
            if power != 1 or root.key() in seen:
                return
            seen.add(root.key())
            md = [0] * self.d
            deg_y = deg_z = 0
            for lt in root:
                md[lt.index - 1] += 1
                if not lt.transposed:
                    k = self.kind(lt.index)
                    if k == "y":
                        deg_y += 1
                    elif k == "z":
                        deg_z += 1
            found.append(QuiverCycle(root, tuple(md), deg_y, deg_z))

        def walk(at: int):
            if at == 1 and path:
                record()
            for lt, nxt in self.steps_from(at):
                if budget[lt.index] == 0:
                    continue
                budget[lt.index] -= 1
                path.append(lt)
                walk(nxt)
                path.pop()
                budget[lt.index] += 1

        walk(1)
        found.sort(key=QuiverCycle.key)
        return found


IndexPair = tuple[int, QuiverCycle]


def index_sets(q: Quiver, target: dict[int, int]) -> Iterator[tuple[IndexPair, ...]]:
    """All ways to write the target multidegree as sum j_i * mdeg(cycle_i)
    over pairwise distinct primitive closed-path classes, j_i >= 1.

    The empty selection is yielded exactly when the target is zero.
    """
    goal = tuple(target.get(i, 0) for i in range(1, q.d + 1))
    if any(g < 0 for g in goal):
        raise ValueError("negative target multidegree")
    cycles = q.closed_cycles({i + 1: g for i, g in enumerate(goal)})
    chosen: list[IndexPair] = []

    def descend(i: int, remaining: tuple[int, ...]) -> Iterator[tuple[IndexPair, ...]]:
        if not any(remaining):
            yield tuple(chosen)
            # further cycles would only add degree
        if i >= len(cycles) or not any(remaining):
            return
        yield from descend(i + 1, remaining)
        cyc = cycles[i]
        j = 1
        while True:
            nxt = tuple(r - j * m for r, m in zip(remaining, cyc.mdeg))
            if any(r < 0 for r in nxt):
                break
            chosen.append((j, cyc))
            yield from descend(i + 1, nxt)
            chosen.pop()
            j += 1

    yield from descend(0, goal)
