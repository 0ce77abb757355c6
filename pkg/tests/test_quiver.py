import pytest

from sigmaring.quiver import Quiver, QuiverCycle, index_sets
from sigmaring.words import Letter, Naming, Word, canonicalize, is_primitive, word_text

XYZ = Naming.xyz(1, 1, 1)


def texts(cycles):
    return [word_text(c.word, XYZ) for c in cycles]


def test_step_table():
    q = Quiver(1, 1, 1)
    # x loops at 1, x' at 2; y-block leaves 1; z-block returns
    assert q.step(Letter(1), 1) == 1 and q.step(Letter(1), 2) is None
    assert q.step(Letter(1, True), 2) == 2 and q.step(Letter(1, True), 1) is None
    assert q.step(Letter(2), 1) == 2 and q.step(Letter(2, True), 1) == 2
    assert q.step(Letter(2), 2) is None
    assert q.step(Letter(3), 2) == 1 and q.step(Letter(3, True), 2) == 1
    assert q.step(Letter(3), 1) is None


def test_kind_packing():
    q = Quiver(2, 1, 3)
    assert [q.kind(i) for i in range(1, 7)] == ["x", "x", "y", "z", "z", "z"]
    with pytest.raises(ValueError):
        q.kind(7)


def test_closed_cycles_small_budgets():
    q = Quiver(1, 1, 1)
    assert texts(q.closed_cycles({1: 1})) == ["[x]"]
    assert texts(q.closed_cycles({1: 3})) == ["[x]"]  # powers are not primitive
    assert texts(q.closed_cycles({2: 1, 3: 1})) == ["[y z]", "[y z']"]
    got = texts(q.closed_cycles({1: 1, 2: 1, 3: 1}))
    assert got == [
        "[x]",
        "[y z]",
        "[y z']",
        "[x y z]",
        "[x y z']",
        "[x y' z]",
        "[x y' z']",
    ]


def test_cycles_are_canonical_closed_and_primitive():
    q = Quiver(1, 2, 1)
    for c in q.closed_cycles({1: 2, 2: 1, 3: 1, 4: 2}):
        assert q.is_closed_path(c.word)
        root, e = canonicalize(c.word)
        assert e == 1 and root == c.word
        assert is_primitive(c.word)
        assert sum(c.mdeg) == len(c.word)


def test_cycle_degrees_count_untransposed_only():
    q = Quiver(1, 1, 1)
    by_text = {word_text(c.word, XYZ): c for c in q.closed_cycles({1: 1, 2: 1, 3: 1})}
    assert (by_text["[y z]"].deg_y, by_text["[y z]"].deg_z) == (1, 1)
    assert (by_text["[y z']"].deg_y, by_text["[y z']"].deg_z) == (1, 0)
    assert (by_text["[x y' z']"].deg_y, by_text["[x y' z']"].deg_z) == (0, 0)


def test_index_sets_basics():
    q = Quiver(1, 1, 1)
    assert list(index_sets(q, {})) == [()]
    got = list(index_sets(q, {1: 3}))
    assert len(got) == 1 and got[0][0][0] == 3  # only x^3, exponent 3
    # unbalanced targets admit no closed-path decomposition
    assert list(index_sets(q, {2: 1})) == []
    assert list(index_sets(q, {2: 2, 3: 1})) == []


def test_index_sets_multidegree_and_distinctness():
    q = Quiver(1, 1, 1)
    target = {1: 1, 2: 1, 3: 1}
    sels = list(index_sets(q, target))
    seen = set()
    for sel in sels:
        total = [0, 0, 0]
        words = [c.word for _, c in sel]
        assert len(set(words)) == len(words)  # pairwise distinct classes
        for j, c in sel:
            assert j >= 1
            for i in range(3):
                total[i] += j * c.mdeg[i]
        assert total == [1, 1, 1]
        key = tuple(sorted((j, c.word.key()) for j, c in sel))
        assert key not in seen
        seen.add(key)
    # 4 three-cycles plus 2 pairs {x, two-cycle}
    assert len(sels) == 6


def test_index_sets_exponents():
    q = Quiver(1, 1, 1)
    sels = list(index_sets(q, {2: 2, 3: 2}))
    keys = {
        tuple(sorted((j, word_text(c.word, XYZ)) for j, c in sel)) for sel in sels
    }
    assert ((2, "[y z]"),) in keys
    assert ((1, "[y z']"), (1, "[y z]")) in keys
    # four-letter primitive cycles appear with exponent 1
    assert any(any(len(c.word) == 4 for _, c in sel) for sel in sels)
