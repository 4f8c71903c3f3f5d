import itertools
from collections import Counter

import pytest

from springer_lab import bs, flags_a, weyl
from springer_lab.combinat import enumerate_two_column_tableaux
from springer_lab.poly import QPolynomial
from springer_lab.suites import subword_case
from springer_lab.weyl import Word


def base(n, p):
    N = flags_a.make_nilpotent(n, 0, p)
    return flags_a.reference_flag(N)


def all_words(rank, max_len):
    for k in range(max_len + 1):
        yield from (Word(w) for w in itertools.product(range(1, rank + 1), repeat=k))


@pytest.mark.parametrize("p", [2, 3])
def test_counts_for_all_short_words_rank_two(p):
    ref = base(3, p)
    for word in all_words(2, 4):
        pts = list(bs.enumerate_bs_points(bs.BSWord(ref, word)))
        assert len(pts) == (p + 1) ** len(word) == bs.bs_point_count(word)(p)
        assert len(set(pts)) == len(pts)


def test_count_polynomial():
    assert bs.bs_point_count(Word((1, 2, 1))) == QPolynomial((1, 3, 3, 1))


def test_reduced_word_end_flags_cover_schubert_cell_closure():
    p = 2
    ref = base(3, p)
    w0 = weyl.longest_element("A", 2)
    word = weyl.reduced_word(w0)
    ends = {pt.end_flag for pt in bs.enumerate_bs_points(bs.BSWord(ref, word))}
    assert len(ends) == weyl.schubert_point_count(w0)(p)


def test_end_flags_have_relative_position_below_word_product():
    p = 2
    ref = base(4, p)
    word = Word((1, 2, 3, 1))
    prod = weyl.word_product(word, "A", 3)
    for pt in bs.enumerate_bs_points(bs.BSWord(ref, word)):
        u = weyl.WeylElement("A", flags_a.relative_position(pt.end_flag, ref))
        assert weyl.bruhat_leq(u, prod)


def test_invalid_letter_rejected():
    with pytest.raises(ValueError):
        bs.BSWord(base(3, 2), Word((3,)))


def test_divisor_embedding_matches_section_locus():
    p = 3
    bw = bs.BSWord(base(3, p), Word((1, 2, 1)))
    pts = list(bs.enumerate_bs_points(bw))
    for J in [(1,), (2,), (1, 3), (1, 2, 3)]:
        sub = bs.subword_divisor(bw, J)
        embedded = {bs.embed_subword_point(bw, J, x) for x in bs.enumerate_bs_points(sub)}
        assert embedded == {x for x in pts if bs.in_divisor(bw, x, J)}
        for x in bs.enumerate_bs_points(sub):
            assert bs.embed_subword_point(bw, J, x).end_flag == x.end_flag


def test_divisor_lattice():
    p = 2
    bw = bs.BSWord(base(4, p), Word((1, 2, 3, 2)))
    pts = list(bs.enumerate_bs_points(bw))
    for a, b in itertools.combinations(range(1, 5), 2):
        both = {x for x in pts if bs.in_divisor(bw, x, [a]) and bs.in_divisor(bw, x, [b])}
        assert both == {x for x in pts if bs.in_divisor(bw, x, [a, b])}
        assert len(both) == (p + 1) ** 2


def test_divisor_positions_checked():
    bw = bs.BSWord(base(3, 2), Word((1, 2)))
    with pytest.raises(IndexError):
        bs.subword_divisor(bw, [3])


@pytest.mark.parametrize("n,r,p", [(3, 1, 2), (4, 1, 2), (4, 2, 2), (4, 1, 3)])
def test_subword_cases(n, r, p):
    N = flags_a.make_nilpotent(n, r, p)
    for t in enumerate_two_column_tableaux(n, r):
        d = subword_case(N, t)
        assert d["bs_counts_ok"] and d["image_in_fw"] and d["commutes"]
        assert d["divisor_match"] and d["lattice"]


def test_xtilde_grouped_enumeration():
    N = flags_a.make_nilpotent(6, 3, 2)
    word = Word((1, 2))
    pairs = list(bs.enumerate_xtilde(N, word))
    assert len(pairs) == bs.xtilde_point_count(word, "A", 2)(2) == 189
    sizes = Counter(bs.group_sizes(pairs).values())
    assert sizes == Counter({9: 21})
