import numpy as np
import pytest

from hypsector.core import GroupElement
from hypsector.orbit import (CongruenceContext, GroupPresentation, NonFreeGroupError,
                             brute_force_words, coset_counts, coset_filter, count_growth,
                             enumerate_ball, gamma_c, reduce_mod_q, reference_ball,
                             stabilizer_filter_row)


def keys(ball):
    return {GroupElement(*map(int, row)).key for row in ball.entries}


def test_tiny_balls(gamma4):
    assert len(enumerate_ball(gamma4, 2)) == 1
    b5 = enumerate_ball(gamma4, 5)
    assert len(b5) == 5
    assert keys(b5) == brute_force_words(gamma4, 5, depth=3)


def test_count_growth_example(gamma4):
    assert count_growth(gamma4, (2,)) == [(2.0, 1)]


@pytest.mark.parametrize("c", [3, 4, 6])
def test_pruned_equals_unpruned(c):
    g = gamma_c(c)
    ball = enumerate_ball(g, 100)
    assert ball.complete
    assert keys(ball) == reference_ball(g, 100)


def test_shortlex_order(gamma4):
    ball = enumerate_ball(gamma4, 300)
    lengths = [len(ball.word(i)) for i in range(len(ball))]
    assert lengths == sorted(lengths)
    for i in range(0, len(ball), 97):
        assert ball.element(i).entries == tuple(int(x) for x in ball.entries[i])


def test_words_rebuild_elements(gamma4):
    ball = enumerate_ball(gamma4, 200)
    letters = gamma4.letters()
    for i in range(len(ball)):
        g = GroupElement.identity()
        for w in ball.word(i):
            g = g @ letters[2 * (abs(w) - 1) + (w < 0)]
        assert g.entries == tuple(int(x) for x in ball.entries[i])


def test_non_free_detected():
    # commuting generators: x y and y x coincide
    grp = GroupPresentation((GroupElement(1, 1, 0, 1), GroupElement(1, 2, 0, 1)))
    with pytest.raises(NonFreeGroupError):
        enumerate_ball(grp, 20)
    ball = enumerate_ball(grp, 20, dedup=True)
    assert not ball.complete and "dedup" in ball.note


def test_restrict_matches_enumeration(ball_1e3, gamma4):
    small = ball_1e3.restrict(250)
    assert keys(small) == keys(enumerate_ball(gamma4, 250))


def test_reduce_mod_q():
    assert reduce_mod_q(GroupElement.identity(), 3) == (1, 0, 0, 1)
    assert reduce_mod_q(GroupElement(1, 4, 0, 1), 4) == (1, 0, 0, 1)


def test_coset_filter_trivial(ball_1e3, gamma4):
    ctx1 = CongruenceContext(gamma4, 1)
    assert len(coset_filter(ball_1e3, ctx1, GroupElement.identity())) == len(ball_1e3)
    ctx4 = CongruenceContext(gamma4, 4)
    assert len(coset_filter(ball_1e3, ctx4, GroupElement.identity())) == len(ball_1e3)
    assert ctx4.index == 1


def test_coset_filter_mod3_bruteforce(gamma4):
    ball = enumerate_ball(gamma4, 100)
    ctx = CongruenceContext(gamma4, 3)
    want = sum(1 for g in ball.elements() if reduce_mod_q(g, 3) == (1, 0, 0, 1))
    assert len(coset_filter(ball, ctx, GroupElement.identity())) == want


def test_index_mod3_is_full_sl2(gamma4):
    # Gamma_4 maps onto SL(2, Z/3), which has 24 elements
    assert CongruenceContext(gamma4, 3).index == 24


def test_coset_counts_partition(ball_1e3, gamma4):
    ctx = CongruenceContext(gamma4, 3)
    assert coset_counts(ball_1e3, ctx).sum() == len(ball_1e3)


def test_stabilizer_cells(ball_1e3, gamma4):
    assert list(stabilizer_filter_row(ball_1e3, CongruenceContext(gamma4, 1), (1, 0))) == [(0, 0)]
    cells = stabilizer_filter_row(ball_1e3, CongruenceContext(gamma4, 2), (1, 0))
    assert list(cells) == [(1, 0)]
    cells = stabilizer_filter_row(ball_1e3, CongruenceContext(gamma4, 3), (1, 0))
    assert sum(len(v) for v in cells.values()) == len(ball_1e3)
    e = ball_1e3.entries
    for (y1, y2), idx in cells.items():
        assert np.all(e[idx, 0] % 3 == y1) and np.all(e[idx, 1] % 3 == y2)


def test_homomorphism_mod_q(ball_1e3, gamma4):
    rng = np.random.default_rng(0)
    from hypsector.orbit import mul_mod
    for _ in range(50):
        i, j = rng.integers(len(ball_1e3), size=2)
        g, h = ball_1e3.element(i), ball_1e3.element(j)
        assert reduce_mod_q(g @ h, 5) == mul_mod(reduce_mod_q(g, 5), reduce_mod_q(h, 5), 5)
