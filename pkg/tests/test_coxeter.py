import itertools
import math

import pytest

from klmatch import INFINITY, CoxeterMatrix, new_system
from klmatch.field import CyclotomicRealField, minimal_polynomial_2cos

from conftest import dihedral, rank3


# -- independent oracles ---------------------------------------------------------


def perm_of_word(word, n):
    """Permutation (one-line notation) of a word in adjacent transpositions of S_n."""
    p = list(range(n))
    for s in word:
        p[s], p[s + 1] = p[s + 1], p[s]
    return tuple(p)


def inversions(p):
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])


def perm_bruhat_leq(u, w):
    """Tableau criterion for Bruhat order on S_n."""
    n = len(u)
    for i in range(n):
        for j in range(n):
            cu = sum(1 for a in range(i + 1) if u[a] >= j)
            cw = sum(1 for a in range(i + 1) if w[a] >= j)
            if cu > cw:
                return False
    return True


def subword_leq(cs, u, w):
    """u <= w iff some subword of one reduced word of w is a reduced word for u."""
    word = w.word
    for k in range(len(word) + 1):
        if k != u.length:
            continue
        for idx in itertools.combinations(range(len(word)), k):
            if cs.element([word[i] for i in idx]) is u:
                return True
    return False


# -- construction ----------------------------------------------------------------


def test_rank_one_group_has_order_two():
    cs = new_system(CoxeterMatrix(((1,),)))
    assert [repr(x) for x in cs.elements_up_to(5)] == ["e", "s1"]


def test_a3_has_24_elements(A3):
    assert len(A3.elements_up_to(20)) == 24


@pytest.mark.parametrize("m, order", [(2, 4), (3, 6), (5, 10), (7, 14), (8, 16)])
def test_dihedral_orders(m, order):
    assert len(dihedral(m).elements_up_to(3 * m)) == order


def test_h3_has_120_elements():
    assert len(rank3(5, 3, 2).elements_up_to(40)) == 120


def test_label_seven_minimal_polynomial_isolates_the_right_root():
    f = minimal_polynomial_2cos(7)
    y = 2 * math.cos(math.pi / 7)
    assert abs(sum(c * y**i for i, c in enumerate(f))) < 1e-12
    F = CyclotomicRealField(7)
    lo, hi = F.interval
    assert lo < y < hi
    other_roots = [2 * math.cos(k * math.pi / 7) for k in (3, 5)]
    assert all(not lo <= r <= hi for r in other_roots)


def test_mixed_labels_2_3_7():
    cs = rank3(3, 7, 2)
    assert cs.field.n == 42
    x = cs.element([1, 2] * 7)
    assert x.length == 0


def test_invalid_matrices_rejected():
    with pytest.raises(ValueError):
        CoxeterMatrix(((1, 3), (2, 1)))
    with pytest.raises(ValueError):
        CoxeterMatrix(((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        CoxeterMatrix(((2, 3), (3, 1)))


def test_matrix_json_uses_zero_for_infinity():
    B = CoxeterMatrix.from_json({"rank": 2, "labels": [[1, 0], [0, 1]]})
    assert B[0, 1] == INFINITY
    assert B.to_json() == {"rank": 2, "labels": [[1, 0], [0, 1]]}


# -- multiplication and words ------------------------------------------------------


def test_left_multiplication_by_descent_shortens(A3):
    w = A3.parse_word("1 2 3 1")
    assert 0 in w.left_descents
    assert A3.mult_gen(w, 0, "left").length == 3
    assert A3.mult_gen(A3.identity, 0, "left").length == 1


def test_infinite_dihedral_never_shortens():
    cs = dihedral(INFINITY)
    w = cs.identity
    for k in range(30):
        w = w.left(k % 2)
        assert w.length == k + 1


def test_words_are_reduced_and_shortlex_minimal(B3):
    for w in B3.elements_up_to(9):
        words = sorted(B3.reduced_words(w))
        assert w.word == words[0]
        assert all(B3.element(x) is w and len(x) == w.length for x in words)


def test_a3_matches_permutation_model(A3):
    els = A3.elements_up_to(6)
    perms = {w: perm_of_word(w.word, 4) for w in els}
    assert len(set(perms.values())) == 24
    for w in els:
        assert inversions(perms[w]) == w.length


def test_parse_word_reduces():
    cs = dihedral(3)
    assert repr(cs.parse_word("1 2 1 1 2")) == "s1"
    assert repr(cs.parse_word("2 1 2")) == "s1s2s1"
    with pytest.raises(ValueError):
        cs.parse_word("3")


# -- Bruhat order -------------------------------------------------------------------


def test_bruhat_order_matches_tableau_criterion(A3):
    els = A3.elements_up_to(6)
    perms = {w: perm_of_word(w.word, 4) for w in els}
    for u in els:
        for w in els:
            assert A3.bruhat_leq(u, w) == perm_bruhat_leq(perms[u], perms[w])


@pytest.mark.parametrize("labels", [(4, 3, 2), (5, 3, 2), (3, 3, 3), (INFINITY, 3, 4)])
def test_bruhat_order_matches_subword_search(labels):
    cs = rank3(*labels)
    els = cs.elements_up_to(5)
    for u in els:
        for w in els:
            assert cs.bruhat_leq(u, w) == subword_leq(cs, u, w), (u, w)


def test_worked_example_order_facts(A3):
    w = A3.parse_word("1 2 3 1")
    assert A3.bruhat_leq(A3.identity, w)
    assert A3.bruhat_leq(A3.parse_word("1"), w)
    assert A3.bruhat_leq(A3.parse_word("2 1 2"), w) == subword_leq(A3, A3.parse_word("2 1 2"), w)


@pytest.mark.parametrize("labels", [(3, 3, 2), (4, 3, 2), (3, 3, 3)])
def test_lifting_property(labels):
    cs = rank3(*labels)
    els = cs.elements_up_to(5)
    for w in els:
        for u in els:
            if not cs.bruhat_leq(u, w):
                continue
            for s in cs.generators:
                in_w, in_u = s in w.right_descents, s in u.right_descents
                if in_w and in_u:
                    assert cs.bruhat_leq(u.right(s), w.right(s))
                elif not in_w and not in_u:
                    assert cs.bruhat_leq(u.right(s), w.right(s))
                elif in_w:
                    assert cs.bruhat_leq(u.right(s), w)
                    assert cs.bruhat_leq(u, w.right(s))


def test_sign_certificates_survive_refinement(B3):
    cs = rank3(5, 3, 2)
    for system in (cs, B3):
        F = system.field
        els = system.elements_up_to(6)
        before = [[F.sign(c) for c in w.root_image(s)] for w in els for s in system.generators]
        F.refine(10)
        after = [[F.sign(c) for c in w.root_image(s)] for w in els for s in system.generators]
        assert before == after


# -- parabolic decompositions ---------------------------------------------------------


def brute_decompose_right(cs, w, J):
    """Minimal-length element of the coset w W_J, found by exhausting W_J."""
    coset = [w * g for g in cs.elements_up_to(w.length, J=J)]
    rep = min(coset, key=lambda v: v.length)
    return rep, rep.inverse() * w


def test_decompose_trivial_cases(A3):
    w = A3.parse_word("1 2 3 1")
    assert A3.decompose_right(w, ()) == (w, A3.identity)
    assert A3.decompose_right(w, range(3)) == (A3.identity, w)
    assert A3.decompose_left(w, ()) == (A3.identity, w)


def test_decompose_examples(A3):
    w = A3.parse_word("1 2 3 1")
    assert A3.decompose_right(w, (1, 2)) == brute_decompose_right(A3, w, (1, 2))
    assert A3.decompose_left(w, (0,)) == (A3.parse_word("1"), A3.parse_word("2 3 1"))


@pytest.mark.parametrize("labels", [(3, 3, 2), (4, 3, 2), (INFINITY, 3, 3)])
def test_decompositions_match_brute_force(labels):
    cs = rank3(*labels)
    subsets = [J for k in range(4) for J in itertools.combinations(range(3), k)]
    for w in cs.elements_up_to(5):
        for J in subsets:
            if not cs.is_finite_parabolic(J):
                continue
            wJ, w_J = cs.decompose_right(w, J)
            assert (wJ, w_J) == brute_decompose_right(cs, w, J)
            assert wJ.length + w_J.length == w.length
            a, b = cs.decompose_left(w, J)
            assert a.length + b.length == w.length and a * b is w
            assert not (b.left_descents & set(J))


def test_left_descent_transfer(A3):
    subsets = [J for k in range(4) for J in itertools.combinations(range(3), k)]
    for w in A3.elements_up_to(6):
        for J in subsets:
            part = A3.decompose_left(w, J)[0]
            assert part.left_descents == w.left_descents & set(J)


def test_projection_is_order_preserving(B3):
    subsets = [J for k in range(4) for J in itertools.combinations(range(3), k)]
    els = B3.elements_up_to(5)
    for J in subsets:
        for v in els:
            for w in els:
                if B3.bruhat_leq(v, w):
                    assert B3.bruhat_leq(B3.decompose_right(v, J)[0], B3.decompose_right(w, J)[0])
                    assert B3.bruhat_leq(B3.decompose_left(v, J)[1], B3.decompose_left(w, J)[1])


def test_max_parabolic_below(A3):
    w = A3.parse_word("1 2 3 1")
    assert A3.max_parabolic_below(w, ()) is A3.identity
    top = A3.max_parabolic_below(w, (0, 1))
    assert top is A3.parse_word("1 2 1")
    below = [v for v in A3.elements_up_to(3, J=(0, 1)) if A3.bruhat_leq(v, w)]
    assert max(below, key=lambda v: v.length) is top
    x = A3.parse_word("2 1")
    assert A3.max_parabolic_below(x, (0, 1)) is x


def test_min_coset_rep(A3):
    H = {1}
    assert A3.is_min_coset_rep(A3.identity, H)
    assert A3.is_min_coset_rep(A3.parse_word("1 2 3 1"), H)
    assert not A3.is_min_coset_rep(A3.parse_word("2"), H)


def test_finiteness_of_parabolics():
    cs = rank3(3, 3, 3)
    assert not cs.is_finite_parabolic((0, 1, 2))
    assert cs.is_finite_parabolic((0, 1))
    assert rank3(5, 3, 2).is_finite_parabolic((0, 1, 2))
    assert rank3(4, 4, 2).is_finite_parabolic((0, 1, 2)) is False
    assert rank3(4, 3, 2).longest_parabolic((0, 1, 2)).length == 9
