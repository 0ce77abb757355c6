from itertools import permutations

import pytest

from sigmaring.matrices import EvalContext, random_matrix
from sigmaring.ring import poly_text
from sigmaring.sigmatr import sigma_lin, sigma_tr
from sigmaring.tableau import (
    Arrow,
    Tableau,
    _perm_sign,
    bpf,
    build_T,
    closed_path_reps,
    decompose,
    dp,
    path_sign_closed_form,
    path_sign_definitional,
    path_sign_rules,
    path_word,
    selection_sign_closed_form,
)
from sigmaring.words import Naming, canonicalize, word_text

XYZ = Naming.xyz(1, 1, 1)


def test_build_shapes():
    T = build_T(2, 1)
    assert T.n == 4
    assert [a.label for a in T.arrows] == [1, 1, 2, 3]
    Tm = build_T(2, 1, multilinear=True)
    assert [a.label for a in Tm.arrows] == [1, 2, 3, 4]
    assert Tm.kinds == {1: "x", 2: "x", 3: "y", 4: "z"}


def test_cell_validation():
    with pytest.raises(ValueError):
        Tableau([Arrow(1, (1, 1), (1, 1))])  # duplicate cell
    with pytest.raises(ValueError):
        Tableau([Arrow(1, (1, 1), (2, 2))])  # leaves cells empty
    with pytest.raises(ValueError):
        Tableau([Arrow(0, (1, 1), (2, 1))])


def test_apply_tau_moves_only_second_column():
    T = build_T(0, 1)
    Ti = T.apply_tau((2, 1))
    assert Ti.arrows[0] == T.arrows[0]  # the column-1 arrow is untouched
    assert Ti.arrows[1] == Arrow(3, (2, 2), (2, 1))
    with pytest.raises(ValueError):
        T.apply_tau((1, 1))


def test_bpf_trace_and_det():
    a = random_matrix(1, 3)
    assert bpf(build_T(1, 0), {1: a}) == a.trace()
    for n in (2, 3):
        a = random_matrix(n, 3 + n)
        assert bpf(build_T(n, 0), {1: a}) == a.det()


@pytest.mark.parametrize("t,r", [(2, 0), (0, 1), (1, 1), (0, 2), (2, 1)])
def test_bpf_forms_agree(t, r):
    n = t + 2 * r
    mats = {k: random_matrix(n, 40 + k) for k in (1, 2, 3)}
    T = build_T(t, r)
    assert bpf(T, mats) == bpf(T, mats, form="Q")
    with pytest.raises(ValueError):
        bpf(T, mats, form="nope")


def test_bpf_validation():
    T = build_T(1, 1)
    with pytest.raises(ValueError):
        bpf(T, {1: random_matrix(3, 1)})  # labels 2, 3 missing
    with pytest.raises(ValueError):
        bpf(T, {k: random_matrix(2, k) for k in (1, 2, 3)})  # wrong size


def test_closed_paths_of_fragment():
    """A horizontal arrow in row 1 plus two crossing verticals: the closed
    paths are the single arrow and the pair (second, transposed third)."""
    frag = Tableau(
        [Arrow(1, (1, 1), (2, 1)), Arrow(2, (1, 3), (2, 2)), Arrow(3, (2, 3), (1, 2))]
    )
    reps = closed_path_reps(frag)
    assert sorted(len(p) for p in reps) == [1, 2]
    texts = {
        word_text(canonicalize(path_word(frag, p))[0], Naming.generic(3))
        for p in reps
    }
    assert texts == {"[x1]", "[x2 x3']"}


def test_closed_paths_lengths_sum():
    T = build_T(1, 1)
    for tau in permutations(range(1, 4)):
        reps = closed_path_reps(T.apply_tau(tau))
        assert sum(len(p) for p in reps) == 3


def test_dp_equals_sigma():
    for n, r in [(2, 1), (3, 1), (4, 1), (4, 2)]:
        x = random_matrix(n, 60)
        y = random_matrix(n, 61)
        z = random_matrix(n, 62)
        want = EvalContext({1: x, 2: y, 3: z}).eval_poly(sigma_tr(n - 2 * r, r))
        assert dp(r, x, y, z) == want
    with pytest.raises(ValueError):
        dp(2, random_matrix(3, 1), random_matrix(3, 2), random_matrix(3, 3))


@pytest.mark.parametrize("t,r", [(1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (0, 2)])
def test_decompose_equals_sigma_tr(t, r):
    assert decompose(build_T(t, r)) == sigma_tr(t, r)


def test_decompose_multilinear():
    assert decompose(build_T(1, 1, multilinear=True)) == sigma_lin(1, 1)


def test_decompose_guard():
    with pytest.raises(ValueError):
        decompose(build_T(7, 0))


def test_definitional_sign_worked_example():
    """The 2-row tableau with one y and one z arrow: under the identity the
    single path reads y z' and realigns trivially (+1); under the swap it
    reads y z and needs the transposition (-1)."""
    T = build_T(0, 1)

    Ti = T.apply_tau((1, 2))
    (path,) = closed_path_reps(Ti)
    assert word_text(path_word(Ti, path), XYZ) == "[y z']"
    assert path_sign_definitional(T, Ti, path) == 1

    Ts = T.apply_tau((2, 1))
    (path,) = closed_path_reps(Ts)
    assert word_text(path_word(Ts, path), XYZ) == "[y z]"
    assert path_sign_definitional(T, Ts, path) == -1


@pytest.mark.parametrize("t,r", [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (0, 2)])
def test_sign_computations_agree(t, r):
    """Literal sign(xi), the per-selection closed form, the per-path closed
    form, the rewriting rules and the definitional search all coincide."""
    T = build_T(t, r)
    hits = 0
    for xi in permutations(range(1, T.n + 1)):
        Ti = T.apply_tau(xi)
        paths = closed_path_reps(Ti)
        selection = []
        ok = True
        for p in paths:
            root, power = canonicalize(path_word(Ti, p))
            if power != 1:
                ok = False
                break
            selection.append((1, root))
        if not ok:
            continue
        hits += 1
        literal = _perm_sign(xi)
        assert selection_sign_closed_form(T, selection) == literal
        prod = 1
        for p in paths:
            w = path_word(Ti, p)
            s = path_sign_rules(T, w)
            assert s == path_sign_closed_form(T, w)
            assert s == path_sign_definitional(T, Ti, p)
            prod *= s
        assert prod == literal
    assert hits > 0


def test_rules_base_cases():
    T = build_T(3, 1)  # kinds x, y, z with room for longer words
    from sigmaring.words import Letter, Word

    x, y, z = Letter(1), Letter(2), Letter(3)
    xp, yp, zp = x.T, y.T, z.T
    assert path_sign_rules(T, Word([x])) == 1
    assert path_sign_rules(T, Word([x, x])) == -1
    assert path_sign_rules(T, Word([xp, xp, xp])) == 1
    assert path_sign_rules(T, Word([y, z])) == -1
    assert path_sign_rules(T, Word([y, zp])) == 1
    assert path_sign_rules(T, Word([yp, zp])) == -1
    assert path_sign_rules(T, Word([x, y, z])) == 1
    assert path_sign_rules(T, Word([x, y, zp])) == -1
    # four-letter alternating words exercise the drop table
    assert path_sign_rules(T, Word([y, z, y, z])) == path_sign_closed_form(
        T, Word([y, z, y, z])
    )
    assert path_sign_rules(T, Word([y, zp, yp, z])) == path_sign_closed_form(
        T, Word([y, zp, yp, z])
    )
