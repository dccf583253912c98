import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import random_cover, random_perm
from pullstab import InvalidCover, MonodromyCover, Permutation, branch_locus, genus_of_Y, make_cover, validate_cover
from pullstab.covers import cover_violations, relation_product
from pullstab.permgroup import cycle_type


def unramified_double_cover():
    return make_cover(2, [], base_genus=1, handles=[[[0, 1]], []])


class TestValidate:
    def test_example_valid(self, example_cover):
        assert validate_cover(example_cover) is example_cover

    def test_single_transposition(self):
        with pytest.raises(InvalidCover, match="product relation fails"):
            validate_cover(make_cover(2, [("0", [[0, 1]])]))

    def test_not_transitive(self):
        c = make_cover(4, [("0", [[0, 1]]), ("infty", [[0, 1]])])
        with pytest.raises(InvalidCover) as info:
            validate_cover(c)
        assert info.value.violations == ["action not transitive (Y reducible)"]

    def test_identity_listed(self):
        c = make_cover(2, [("0", [[0, 1]]), ("1", []), ("infty", [[0, 1]])])
        assert any("identity permutation listed" in v for v in cover_violations(c))

    def test_reports_every_violation(self):
        c = make_cover(3, [("0", [[0, 1]]), ("1", [])])
        problems = cover_violations(c)
        assert len(problems) == 3

    def test_degree_mismatch(self):
        c = MonodromyCover(3, 0, (("0", Permutation.from_cycles([[0, 1]], 2)),))
        assert any("degree mismatch" in v for v in cover_violations(c))

    def test_handle_count(self):
        c = make_cover(2, [], base_genus=1, handles=[[[0, 1]]])
        assert any("handle" in v for v in cover_violations(c))

    def test_order_matters(self):
        # (0 1)(1 2) is a 3-cycle; (1 2)(0 1) is its inverse
        a, b = [[0, 1]], [[1, 2]]
        c1 = make_cover(3, [("x", a), ("y", b), ("z", [[0, 2, 1]])])
        c2 = make_cover(3, [("y", b), ("x", a), ("z", [[0, 2, 1]])])
        assert relation_product(c1).is_identity() != relation_product(c2).is_identity()

    def test_unramified_torus_cover(self):
        assert validate_cover(unramified_double_cover())


class TestBranchData:
    def test_branch_locus(self, example_cover, hyperelliptic_cover):
        assert branch_locus(example_cover) == {"0", "infty"}
        assert branch_locus(unramified_double_cover()) == set()
        assert branch_locus(hyperelliptic_cover) == {"a", "b", "c", "d"}

    def test_ramification_profile(self, example_cover):
        from pullstab import ramification_profile

        assert ramification_profile(example_cover, "0") == [6]
        assert ramification_profile(example_cover, "elsewhere") == [1] * 6
        c = make_cover(5, [("x", [[0, 1], [2, 3]])])
        assert ramification_profile(c, "x") == [2, 2, 1]

    def test_fiber_points_ordered_by_smallest(self):
        c = make_cover(5, [("x", [[3, 4], [2, 0]])])
        assert c.fiber("x") == [(0, 2), (1,), (3, 4)]


class TestGenus:
    def test_example(self, example_cover):
        # -2 = 6 * (-2) + 5 + 5
        assert genus_of_Y(example_cover) == 0

    def test_unramified(self):
        assert genus_of_Y(unramified_double_cover()) == 1

    def test_four_branch_points(self, hyperelliptic_cover):
        assert genus_of_Y(hyperelliptic_cover) == 1

    def test_trigonal(self):
        # 3-cycles at 0, 1, infty: 2g - 2 = -6 + 6
        c = make_cover(3, [("0", [[0, 1, 2]]), ("1", [[0, 1, 2]]), ("infty", [[0, 1, 2]])])
        assert validate_cover(c) and genus_of_Y(c) == 1


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_corpus_properties(rnd):
    c = random_cover(rnd)
    validate_cover(c)
    for x, p in c.branch:
        assert sum(cycle_type(p)) == c.degree
    assert branch_locus(c) == {x for x, p in c.branch if cycle_type(p) != [1] * c.degree}
    h = random_perm(rnd, c.degree)
    relabeled = c.relabel(h)
    validate_cover(relabeled)
    assert genus_of_Y(relabeled) == genus_of_Y(c)
