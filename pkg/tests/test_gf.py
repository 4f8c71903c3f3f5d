import itertools

import pytest
from hypothesis import given, settings, strategies as st

from springer_lab import gf
from springer_lab.gf import MatrixFp, PrimeField, Subspace


def members(s: Subspace) -> set:
    return set(s.vectors())


def brute_span(vectors, p, m) -> set:
    vectors = list(vectors)
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vectors)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % p for i in range(m)))
    return out or {tuple([0] * m)}


def split_form(m, p):
    return MatrixFp.from_rows([[int(i + j == m - 1) for j in range(m)] for i in range(m)], p)


@st.composite
def subspaces(draw, p=None, m=None, max_m=5):
    p = p or draw(st.sampled_from([2, 3, 5]))
    m = m or draw(st.integers(1, max_m))
    k = draw(st.integers(0, m))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=m, max_size=m), min_size=k, max_size=k))
    return gf.span(rows, p, m)


@st.composite
def triples(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    m = draw(st.integers(1, 6))
    return tuple(draw(subspaces(p=p, m=m)) for _ in range(3))


# -- rref -------------------------------------------------------------------


def test_rref_drops_zero_row():
    s = gf.rref([[1, 1], [0, 0]], 2, 2)
    assert s.basis == ((1, 1),)


def test_rref_identity_is_full():
    s = gf.rref(MatrixFp.identity(3, 3))
    assert s.dim == 3 and s == gf.full_space(3, 3)


def test_rref_scalar_multiple():
    s = gf.rref([[1, 2], [2, 4]], 5, 2)
    assert s.dim == 1 and s.basis == ((1, 2),)
    assert (2, 4) in s


@given(subspaces())
def test_rref_idempotent_and_canonical(s):
    again = gf.rref(list(s.basis), s.p, s.ambient_dim)
    assert again == s and again.basis == s.basis
    for row in s.basis:
        piv = next(i for i, x in enumerate(row) if x)
        assert row[piv] == 1
        assert all(other[piv] == 0 for other in s.basis if other is not row)


@given(subspaces(max_m=4))
@settings(max_examples=40)
def test_rref_membership_matches_brute_force(s):
    assert members(s) == brute_span(s.basis, s.p, s.ambient_dim)


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ValueError):
        PrimeField(2).require_odd()


# -- lattice ------------------------------------------------------------------


def test_two_lines_in_plane():
    a = gf.span([[1, 0]], 2, 2)
    b = gf.span([[1, 1]], 2, 2)
    assert gf.intersect(a, b).dim == 0
    assert gf.subspace_sum(a, b) == gf.full_space(2, 2)


def test_nested_sum_and_intersection():
    a = gf.span([[1, 0, 0]], 3, 3)
    b = gf.span([[1, 0, 0], [0, 1, 0]], 3, 3)
    assert gf.intersect(a, b) == a and gf.subspace_sum(a, b) == b


def test_random_planes_modular_identity_brute_force():
    p, m = 3, 4
    a = gf.span([[1, 0, 1, 0], [0, 1, 0, 2]], p, m)
    b = gf.span([[1, 1, 0, 0], [0, 0, 1, 1]], p, m)
    inter = members(a) & members(b)
    assert members(gf.intersect(a, b)) == inter
    assert gf.subspace_sum(a, b).dim + gf.intersect(a, b).dim == 4


def test_ambient_mismatch():
    with pytest.raises(gf.AmbientMismatchError):
        gf.intersect(gf.full_space(2, 2), gf.full_space(2, 3))


@given(triples())
@settings(max_examples=80)
def test_lattice_laws(t):
    a, b, c = t
    assert gf.subspace_sum(a, b).dim + gf.intersect(a, b).dim == a.dim + b.dim
    assert gf.intersect(gf.intersect(a, b), c) == gf.intersect(a, gf.intersect(b, c))
    assert gf.subspace_sum(gf.subspace_sum(a, b), c) == gf.subspace_sum(a, gf.subspace_sum(b, c))
    if a.ambient_dim <= 4:
        assert members(gf.intersect(a, b)) == members(a) & members(b)


# -- operators ----------------------------------------------------------------


def jordan2(p):
    return MatrixFp.from_rows([[0, 1], [0, 0]], p)


def test_preimage_of_zero_is_kernel():
    N = jordan2(3)
    assert gf.preimage(N, gf.zero_space(3, 2)) == gf.kernel(N)


def test_preimage_of_image_brute_force():
    N = jordan2(3)
    im = gf.image(N)
    pre = {v for v in gf.all_vectors(3, 2) if N.apply(v) in im}
    assert members(gf.preimage(N, im)) == pre == set(gf.all_vectors(3, 2))


def test_two_column_image_inside_kernel():
    N = MatrixFp.from_rows([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]], 2)
    assert gf.image(N) <= gf.kernel(N)


@given(subspaces(p=3, m=4))
@settings(max_examples=40)
def test_preimage_dimension_formula(w):
    N = MatrixFp.from_rows([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 2], [0, 0, 0, 0]], 3)
    pre = gf.preimage(N, w)
    assert pre.dim == gf.intersect(w, gf.image(N)).dim + gf.kernel(N).dim
    assert members(pre) == {v for v in gf.all_vectors(3, 4) if N.apply(v) in w}


# -- orthogonal complements -----------------------------------------------------


def test_orth_trivial_cases():
    form = split_form(4, 3)
    assert gf.orth_complement(gf.zero_space(3, 4), form) == gf.full_space(3, 4)
    assert gf.orth_complement(gf.full_space(3, 4), form) == gf.zero_space(3, 4)


def test_isotropic_line_in_its_complement():
    form = split_form(4, 3)
    line = gf.span([[1, 0, 0, 0]], 3, 4)
    perp = gf.orth_complement(line, form)
    assert line <= perp
    assert members(perp) == {v for v in gf.all_vectors(3, 4) if gf.bilinear(form, (1, 0, 0, 0), v) == 0}


def test_degenerate_form_rejected():
    with pytest.raises(gf.DegenerateFormError):
        gf.orth_complement(gf.zero_space(3, 2), MatrixFp.from_rows([[1, 0], [0, 0]], 3))


def test_orth_is_inclusion_reversing_involution_full_sweep():
    p, m = 3, 4
    form = split_form(m, p)
    subs = [s for k in range(m + 1) for s in gf.enumerate_subspaces(k, gf.zero_space(p, m), gf.full_space(p, m))]
    perp = {s: gf.orth_complement(s, form) for s in subs}
    for s in subs:
        assert s.dim + perp[s].dim == m
        assert gf.orth_complement(perp[s], form) == s
    for a, b in itertools.product(subs[:40], subs):
        if a <= b:
            assert perp[b] <= perp[a]


# -- enumeration --------------------------------------------------------------


def test_enumerate_k_equals_lower():
    low = gf.span([[1, 0, 0]], 2, 3)
    assert list(gf.enumerate_subspaces(1, low, gf.full_space(2, 3))) == [low]


def test_two_planes_of_f2_4_brute_force():
    seen = set()
    for a, b in itertools.combinations(gf.all_vectors(2, 4), 2):
        s = gf.span([a, b], 2, 4)
        if s.dim == 2:
            seen.add(s)
    enumerated = list(gf.enumerate_subspaces(2, gf.zero_space(2, 4), gf.full_space(2, 4)))
    assert len(enumerated) == 35 == len(seen) and set(enumerated) == seen


def test_lines_of_f3_2():
    assert len(list(gf.enumerate_subspaces(1, gf.zero_space(3, 2), gf.full_space(3, 2)))) == (3**2 - 1) // (3 - 1)


def test_enumeration_order_is_lexicographic():
    out = list(gf.enumerate_subspaces(2, gf.zero_space(3, 4), gf.full_space(3, 4)))
    keys = [s.sort_key() for s in out]
    assert keys == sorted(keys) and len(set(out)) == len(out)


def test_containment_violation():
    with pytest.raises(gf.ContainmentError):
        list(gf.enumerate_subspaces(1, gf.span([[1, 0]], 2, 2), gf.span([[0, 1]], 2, 2)))


def gaussian_product_formula(n, k, q):
    num = 1
    for i in range(k):
        num *= (q ** (n - i) - 1)
    den = 1
    for i in range(1, k + 1):
        den *= (q ** i - 1)
    return num // den


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("m", range(0, 6))
def test_enumeration_counts_match_gaussian_binomials(m, p):
    for k in range(m + 1):
        got = sum(1 for _ in gf.enumerate_subspaces(k, gf.zero_space(p, m), gf.full_space(p, m)))
        assert got == gaussian_product_formula(m, k, p) == gf.gaussian_binomial(m, k, p)


def test_relative_enumeration_count():
    p = 3
    low = gf.span([[1, 0, 0, 0, 0]], p, 5)
    up = gf.span([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]], p, 5)
    got = list(gf.enumerate_subspaces(2, low, up))
    assert len(got) == gf.gaussian_binomial(3, 1, p)
    assert all(low <= s <= up for s in got)


@given(subspaces(max_m=5))
@settings(max_examples=40)
def test_solve_returns_preimage(w):
    p, m = w.p, w.ambient_dim
    N = MatrixFp.from_rows([[int(j == i + 1) for j in range(m)] for i in range(m)], p)
    for v in w.basis:
        x = gf.solve(N, v)
        if v in gf.image(N):
            assert N.apply(x) == v
        else:
            assert x is None
