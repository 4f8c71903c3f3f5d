from collections import Counter

import pytest

from springer_lab import gf, weyl
from springer_lab import flags_a as A
from springer_lab.combinat import TableauError, enumerate_two_column_tableaux, tableau_from_second_column
from springer_lab.poly import q_factorial

SMALL = [(n, r, p) for n in range(1, 5) for r in range(n // 2 + 1) for p in (2, 3)]


def fiber(N):
    return list(A.enumerate_fiber(N))


# -- nilpotent and fiber -------------------------------------------------------


def test_make_nilpotent_shape():
    N = A.make_nilpotent(5, 2, 3)
    assert N.im.dim == 2 and N.ker.dim == 3 and N.im <= N.ker
    assert N.shape.rows == (2, 2, 1)


def test_make_nilpotent_rejects_large_rank():
    with pytest.raises(ValueError):
        A.make_nilpotent(3, 2, 2)


@pytest.mark.parametrize("n,r,p,expected", [(2, 1, 2, 1), (3, 1, 2, 5), (3, 0, 2, 21), (4, 2, 2, 15), (4, 2, 3, 28)])
def test_fiber_counts(n, r, p, expected):
    assert len(fiber(A.make_nilpotent(n, r, p))) == expected


def test_zero_nilpotent_fiber_is_full_flag_variety():
    for n in range(1, 5):
        for p in (2, 3):
            assert len(fiber(A.make_nilpotent(n, 0, p))) == q_factorial(n)(p)


@pytest.mark.parametrize("n,r,p", [(n, r, p) for n, r, p in SMALL if p ** (n * (n - 1) // 2) <= 729])
def test_fiber_matches_brute_force(n, r, p):
    N = A.make_nilpotent(n, r, p)
    got = fiber(N)
    assert len(set(got)) == len(got)
    assert set(got) == set(A.brute_force_fiber(N))
    assert all(A.is_n_stable(N, f) for f in got)


def test_fiber_is_deterministic():
    N = A.make_nilpotent(4, 1, 2)
    assert fiber(N) == fiber(N)


# -- classification ------------------------------------------------------------


@pytest.mark.parametrize("n,r,p", SMALL)
def test_spaltenstein_equals_jump_tableau(n, r, p):
    N = A.make_nilpotent(n, r, p)
    for f in fiber(N):
        assert A.spaltenstein_tableau(N, f) == A.jump_tableau(N, f)
        assert len(A.jump_set(N, f)) == r


@pytest.mark.parametrize("n,r,p", SMALL)
def test_classes_partition_fiber_and_match_structural_counts(n, r, p):
    N = A.make_nilpotent(n, r, p)
    classes = A.classify_fiber(N)
    assert sum(c["count"] for c in classes.values()) == len(fiber(N))
    assert {t: c["count"] for t, c in classes.items()} == A.structural_class_counts(N)
    assert set(classes) == set(enumerate_two_column_tableaux(n, r))


def test_open_part_membership_is_exclusive():
    N = A.make_nilpotent(4, 1, 3)
    tabs = enumerate_two_column_tableaux(4, 1)
    for f in fiber(N):
        assert sum(A.in_open_part(N, f, t) for t in tabs) == 1


def test_non_stable_flag_rejected():
    N = A.make_nilpotent(2, 1, 2)
    bad = A.CompleteFlag((gf.zero_space(2, 2), gf.span([[0, 1]], 2, 2), gf.full_space(2, 2)))
    assert not A.is_n_stable(N, bad)
    with pytest.raises(A.NotInFiberError):
        A.spaltenstein_tableau(N, bad)


def test_jordan_type_of_whole_space():
    N = A.make_nilpotent(5, 2, 2)
    assert A.jordan_type(N.power_images, N.zero, N.full) == N.shape


# -- X-hat, lift and Y ---------------------------------------------------------


@pytest.mark.parametrize("n,r,p", [(3, 1, 2), (4, 1, 2), (4, 2, 3), (5, 2, 2)])
def test_lift_is_section_of_projection(n, r, p):
    N = A.make_nilpotent(n, r, p)
    for t in enumerate_two_column_tableaux(n, r):
        xhat = list(A.enumerate_xhat(N, t))
        above = Counter(pt.big_flag for pt in xhat)
        for f in fiber(N):
            if A.in_open_part(N, f, t):
                lift = A.xhat_lift(N, f, t)
                assert lift.big_flag == f
                assert above[f] == 1
                assert A.xhat_incidences_hold(N, t, lift.small_flag, f)


def test_lift_rejects_flag_outside_open_part():
    N = A.make_nilpotent(3, 1, 2)
    t0, t1 = enumerate_two_column_tableaux(3, 1)
    f = next(f for f in fiber(N) if A.in_open_part(N, f, t0))
    with pytest.raises(A.NotInOpenPartError):
        A.xhat_lift(N, f, t1)


def test_xhat_rejects_wrong_shape():
    N = A.make_nilpotent(4, 1, 2)
    with pytest.raises(TableauError):
        list(A.enumerate_xhat(N, tableau_from_second_column(4, [2, 4])))


@pytest.mark.parametrize("n,r,p", [(4, 1, 2), (4, 2, 2), (5, 2, 2)])
def test_y_contains_open_part_and_is_strictly_larger_somewhere(n, r, p):
    N = A.make_nilpotent(n, r, p)
    strict = False
    for t in enumerate_two_column_tableaux(n, r):
        y = {f for f in fiber(N) if A.y_membership(N, f, t)}
        opened = {f for f in fiber(N) if A.in_open_part(N, f, t)}
        assert opened <= y
        images = {pt.big_flag for pt in A.enumerate_xhat(N, t)}
        assert images <= y
        strict |= len(y) > len(opened)
    assert strict


# -- relative position and reference flag -------------------------------------


def test_reference_flag_structure():
    N = A.make_nilpotent(5, 2, 3)
    ref = A.reference_flag(N)
    assert ref[2] == N.im and ref[3] == N.ker
    assert ref[4] == gf.preimage(N.matrix, ref[1])


@pytest.mark.parametrize("n,p", [(3, 2), (3, 3), (4, 2)])
def test_relative_position_counts_bruhat_cells(n, p):
    N = A.make_nilpotent(n, 0, p)
    ref = A.reference_flag(N)
    cells = Counter(A.relative_position(A.CompleteFlag(f), ref) for f in A.enumerate_flags(N.full))
    for u, count in cells.items():
        w = weyl.WeylElement("A", u)
        assert count == p ** weyl.length(w)
    assert len(cells) == len(weyl.all_elements("A", n - 1))


def test_relative_position_reproduces_dimension_table():
    p, n = 2, 4
    N = A.make_nilpotent(n, 1, p)
    ref = A.reference_flag(N)
    for f in fiber(N):
        u = A.relative_position(f, ref)
        for i in range(n + 1):
            for j in range(n + 1):
                assert gf.intersect(f[i], ref[j]).dim == sum(1 for a in range(i) if u[a] <= j)


def test_flag_json_round_trip():
    N = A.make_nilpotent(4, 1, 3)
    for f in fiber(N)[:20]:
        assert A.CompleteFlag.from_json(f.to_json(), 3) == f


def test_fibration_groups_equal_size():
    N = A.make_nilpotent(4, 1, 3)
    for t in enumerate_two_column_tableaux(4, 1):
        groups = Counter(pt.small_flag for pt in A.enumerate_xhat(N, t))
        assert len(set(groups.values())) == 1
        assert len(groups) == q_factorial(1)(3)
