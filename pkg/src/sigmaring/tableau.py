"""Two-column arrow tableaux and their determinant-pfaffian functions.

A tableau of n rows is a set of n labeled arrows whose 2n endpoints fill
the 2n cells (column, row), column in {1, 2}, exactly once.  Its function
bpf on n x n matrices X_1, X_2, ... is

    sum over pi_1, pi_2 in S_n of sign(pi_1) sign(pi_2) *
        prod over arrows a of (X_label(a))[pi_tailcol(tailrow), pi_headcol(headrow)]

restricted so that for arrows with equal labels the tail-column permutation
is increasing along their tail rows.  Dropping the restriction and dividing
by the product of factorials of the label multiplicities gives the same
function in characteristic zero.

The builder T(t, r) stacks t horizontal x-arrows over r vertical (y, z)
arrow pairs; bpf(T(t, r)) coincides with sigma_{t,r} on matrices of size
n = t + 2r.  decompose() recovers that sigma-polynomial combinatorially:
closed paths of T with its column-2 rows permuted by xi split into
transpose pairs whose words, when all primitive, contribute
sign(xi) * prod s_{j_i}(word_i), deduplicated over xi.

Several independent sign computations for the same decomposition are
provided (the literal sign(xi), a closed form per selection, a closed form
per path, a rewriting recursion per path, and the definitional search for
the column permutation realigning a path with the original tableau); tests
pin them against each other.
"""

from __future__ import annotations

from itertools import permutations
from typing import NamedTuple

from .matrices import ExactMatrix, as_element
from .ring import SigmaGen, SigmaPoly, _mono_sorted
from .words import Letter, Word, canonicalize

Cell = tuple[int, int]  # (column, row), both 1-based


class Arrow(NamedTuple):
    label: int
    tail: Cell
    head: Cell


class Element(NamedTuple):
    """An arrow of the tableau or its formal transpose."""

    arrow: int
    transposed: bool


class Tableau:
    def __init__(self, arrows: list[Arrow], kinds: dict[int, str] | None = None):
        self.arrows = [Arrow(*a) for a in arrows]
        self.n = len(self.arrows)
        self.kinds = dict(kinds) if kinds else None
        cells = [c for a in self.arrows for c in (a.tail, a.head)]
        expected = {(c, r) for c in (1, 2) for r in range(1, self.n + 1)}
        if len(set(cells)) != 2 * self.n or set(cells) != expected:
            raise ValueError("arrow endpoints must fill every cell exactly once")
        if any(a.label < 1 for a in self.arrows):
            raise ValueError("labels must be positive")
        # every cell is the tail of exactly one element (arrow or transpose)
        self._tail_at: dict[Cell, Element] = {}
        for i, a in enumerate(self.arrows):
            self._tail_at[a.tail] = Element(i, False)
            self._tail_at[a.head] = Element(i, True)

    def apply_tau(self, tau: tuple[int, ...]) -> "Tableau":
        """Permute the rows of the column-2 cells: tau[r-1] is the image
        of row r; column-1 cells stay put."""
        if sorted(tau) != list(range(1, self.n + 1)):
            raise ValueError("not a permutation of the rows")

        def move(cell: Cell) -> Cell:
            c, r = cell
            return (c, tau[r - 1]) if c == 2 else cell

        return Tableau(
            [Arrow(a.label, move(a.tail), move(a.head)) for a in self.arrows],
            self.kinds,
        )

    # -- elements ----------------------------------------------------------

    def tail_of(self, e: Element) -> Cell:
        a = self.arrows[e.arrow]
        return a.head if e.transposed else a.tail

    def head_of(self, e: Element) -> Cell:
        a = self.arrows[e.arrow]
        return a.tail if e.transposed else a.head

    def letter_of(self, e: Element) -> Letter:
        return Letter(self.arrows[e.arrow].label, e.transposed)

    def successor(self, e: Element) -> Element:
        c, r = self.head_of(e)
        return self._tail_at[(3 - c, r)]

    def labels(self) -> set[int]:
        return {a.label for a in self.arrows}


def build_T(t: int, r: int, multilinear: bool = False) -> Tableau:
    """t horizontal x-rows on top, then r stacked (y, z) vertical pairs."""
    if t < 0 or r < 0:
        raise ValueError("t and r must be nonnegative")
    arrows = []
    for i in range(1, t + 1):
        arrows.append(Arrow(i if multilinear else 1, (1, i), (2, i)))
    for j in range(1, r + 1):
        lo, hi = t + 2 * j - 1, t + 2 * j
        arrows.append(Arrow(t + j if multilinear else 2, (1, lo), (1, hi)))
        arrows.append(Arrow(t + r + j if multilinear else 3, (2, lo), (2, hi)))
    if multilinear:
        kinds = {i: "x" for i in range(1, t + 1)}
        kinds.update({t + j: "y" for j in range(1, r + 1)})
        kinds.update({t + r + j: "z" for j in range(1, r + 1)})
    else:
        kinds = {1: "x", 2: "y", 3: "z"}
    return Tableau(arrows, kinds)


# ---------------------------------------------------------------------------
# bpf and the dp specialization.
# ---------------------------------------------------------------------------


def _perm_sign(p: tuple[int, ...]) -> int:
    inv = sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )
    return -1 if inv % 2 else 1


def _ordered(p: tuple[int, ...], rows: list[int]) -> bool:
    vals = [p[r - 1] for r in rows]
    return all(a < b for a, b in zip(vals, vals[1:]))


def bpf(T: Tableau, mats: dict[int, ExactMatrix], form: str = "restricted"):
    """Evaluate the tableau function; form is "restricted", "full" or "Q"
    (full divided by the label-multiplicity factorials; needs those
    factorials invertible in the field)."""
    if form not in ("restricted", "full", "Q"):
        raise ValueError(f"unknown form {form!r}")
    n = T.n
    for lab in T.labels():
        if lab not in mats:
            raise ValueError(f"no matrix for label {lab}")
        if mats[lab].n != n:
            raise ValueError("matrix size must equal the number of rows")
    field = next(iter(mats.values())).field

    groups: dict[tuple[int, int], list[int]] = {}
    for a in T.arrows:
        groups.setdefault((a.label, a.tail[0]), []).append(a.tail[1])
    constraints = {1: [], 2: []}
    divisor = 1
    for (_, col), rows in groups.items():
        if len(rows) > 1:
            constraints[col].append(sorted(rows))
        for i in range(2, len(rows) + 1):
            divisor *= i

    restricted = form == "restricted"
    total = as_element(0, field)
    perms = list(permutations(range(1, n + 1)))
    signs = {p: _perm_sign(p) for p in perms}
    for p1 in perms:
        if restricted and not all(_ordered(p1, rows) for rows in constraints[1]):
            continue
        for p2 in perms:
            if restricted and not all(_ordered(p2, rows) for rows in constraints[2]):
                continue
            term = as_element(signs[p1] * signs[p2], field)
            pi = (None, p1, p2)
            for a in T.arrows:
                row = pi[a.tail[0]][a.tail[1] - 1]
                col = pi[a.head[0]][a.head[1] - 1]
                term = term * mats[a.label].entry(row, col)
                if not term:
                    break
            total = total + term
    if form == "Q":
        total = total * (as_element(1, field) / as_element(divisor, field))
    return total


def dp(r: int, x: ExactMatrix, y: ExactMatrix, z: ExactMatrix):
    """bpf of T(n - 2r, r) at (x, y, z) for n x n inputs."""
    n = x.n
    if n - 2 * r < 0:
        raise ValueError("need 2r <= n")
    return bpf(build_T(n - 2 * r, r), {1: x, 2: y, 3: z})


# ---------------------------------------------------------------------------
# Closed paths and the combinatorial decomposition.
# ---------------------------------------------------------------------------


def closed_path_reps(T: Tableau) -> list[list[Element]]:
    """One representative per transpose pair of closed paths.

    Successive elements share a row between the head of one and the tail of
    the next in opposite columns, which makes the successor map a
    permutation of the 2n arrows-and-transposes; its cycles come in
    transpose pairs and the representatives' lengths add up to n.
    """
    all_elements = [Element(i, tr) for i in range(T.n) for tr in (False, True)]
    seen: set[Element] = set()
    cycles: list[list[Element]] = []
    for e0 in all_elements:
        if e0 in seen:
            continue
        cycle = [e0]
        seen.add(e0)
        e = T.successor(e0)
        while e != e0:
            cycle.append(e)
            seen.add(e)
            e = T.successor(e)
        cycles.append(cycle)

    reps: list[list[Element]] = []
    taken: set[frozenset[Element]] = set()
    for cycle in cycles:
        key = frozenset(cycle)
        mate = frozenset(Element(i, not tr) for i, tr in cycle)
        if mate == key:
            raise ValueError("closed path equal to its own transpose")
        if mate in taken:
            continue
        taken.add(key)
        reps.append(cycle)
    assert sum(len(c) for c in reps) == T.n
    return reps


def path_word(T: Tableau, path: list[Element]) -> Word:
    return Word([T.letter_of(e) for e in path])


def decompose(T: Tableau, allow_large: bool = False) -> SigmaPoly:
    """The signed sum over distinct primitive closed-path selections
    arising from all column permutations of T."""
    if T.n > 6 and not allow_large:
        raise ValueError("decompose enumerates S_n; pass allow_large=True beyond n=6")
    found: dict[tuple, tuple[int, tuple]] = {}
    for xi in permutations(range(1, T.n + 1)):
        Ti = T.apply_tau(xi)
        roots = []
        ok = True
        for path in closed_path_reps(Ti):
            root, power = canonicalize(path_word(Ti, path))
            if power != 1:
                ok = False
                break
            roots.append(root)
        if not ok:
            continue
        counts: dict[Word, int] = {}
        for root in roots:
            counts[root] = counts.get(root, 0) + 1
        mono = _mono_sorted(SigmaGen(j, c) for c, j in counts.items())
        key = tuple(g.key() for g in mono)
        sign = _perm_sign(xi)
        if key in found:
            assert found[key][0] == sign, "conflicting signs for one selection"
        else:
            found[key] = (sign, mono)
    return SigmaPoly({mono: sign for sign, mono in found.values()})


# ---------------------------------------------------------------------------
# Independent sign computations for one decomposition.
# ---------------------------------------------------------------------------


def _kind(T: Tableau, lt: Letter) -> str:
    if not T.kinds:
        raise ValueError("tableau carries no label kinds")
    return T.kinds[lt.index]


def selection_sign_closed_form(T: Tableau, selection: list[tuple[int, Word]]) -> int:
    """(-1) ** (t + sum j * (deg_y + deg_z + 1)) with t the number of
    x-kind arrows and deg_y, deg_z counting untransposed letters."""
    t = sum(1 for a in T.arrows if T.kinds[a.label] == "x")
    e = t
    for j, word in selection:
        dy = sum(1 for lt in word if not lt.transposed and _kind(T, lt) == "y")
        dz = sum(1 for lt in word if not lt.transposed and _kind(T, lt) == "z")
        e += j * (dy + dz + 1)
    return (-1) ** e


def path_sign_closed_form(T: Tableau, word: Word) -> int:
    """(-1) ** (deg_x + deg_x' + deg_y' + deg_z' + 1)."""
    e = 1
    for lt in word:
        k = _kind(T, lt)
        if k == "x" or (lt.transposed and k in ("y", "z")):
            e += 1
    return (-1) ** e


_DROPS = {
    ("y", False, "z", False): 1,
    ("y", False, "z", True): -1,
    ("z", False, "y", False): 1,
    ("z", True, "y", False): -1,
}


def path_sign_rules(T: Tableau, word: Word) -> int:
    """Rewriting recursion on the path word, cyclically invariant:
    strip untransposed x-letters with a sign flip, fall back to the
    transposed word when only transposed letters block progress, drop
    adjacent y/z pairs with the tabulated signs, and read off two-letter
    and pure-x base cases directly."""
    letters = list(word)
    kinds = [_kind(T, lt) for lt in letters]
    if all(k == "x" for k in kinds):
        if all(not lt.transposed for lt in letters):
            return (-1) ** (len(letters) + 1)
        if all(lt.transposed for lt in letters):
            return path_sign_rules(T, word.T)
        raise ValueError("x and transposed x cannot meet in one closed path")
    for i, lt in enumerate(letters):
        if kinds[i] == "x" and not lt.transposed:
            return -path_sign_rules(T, Word(letters[:i] + letters[i + 1 :]))
    if any(k == "x" for k in kinds):
        return path_sign_rules(T, word.T)
    if len(letters) == 2:
        ntr = sum(1 for lt in letters if lt.transposed)
        return (-1) ** (ntr + 1)
    k = len(letters)
    for i in range(k):
        a, b = letters[i], letters[(i + 1) % k]
        s = _DROPS.get((kinds[i], a.transposed, kinds[(i + 1) % k], b.transposed))
        if s is not None:
            rest = [letters[j] for j in range(k) if j not in (i, (i + 1) % k)]
            return s * path_sign_rules(T, Word(rest))
    return path_sign_rules(T, word.T)


def path_sign_definitional(T: Tableau, Ti: Tableau, path: list[Element]) -> int:
    """Sign of the column permutation that realigns the path with T.

    The path lives in Ti (T with permuted column-2 rows); tau ranges over
    permutations of the column-2 rows the path touches, fixing everything
    else, and must move every path element onto an element of T with the
    same label and transpose status in exactly the same cells.  All valid
    tau share one parity, which is returned.
    """
    rows = sorted(
        {
            r
            for e in path
            for (c, r) in (Ti.tail_of(e), Ti.head_of(e))
            if c == 2
        }
    )
    targets = set()
    for a in T.arrows:
        targets.add((a.label, False, a.tail, a.head))
        targets.add((a.label, True, a.head, a.tail))

    signs = set()
    for image in permutations(rows):
        tau = dict(zip(rows, image))

        def move(cell: Cell) -> Cell:
            c, r = cell
            return (c, tau[r]) if c == 2 else cell

        if all(
            (
                Ti.arrows[e.arrow].label,
                e.transposed,
                move(Ti.tail_of(e)),
                move(Ti.head_of(e)),
            )
            in targets
            for e in path
        ):
            inv = sum(
                1
                for i in range(len(rows))
                for j in range(i + 1, len(rows))
                if tau[rows[i]] > tau[rows[j]]
            )
            signs.add(-1 if inv % 2 else 1)
    if len(signs) != 1:
        raise ValueError(f"realigning permutations give signs {sorted(signs)}")
    return signs.pop()
