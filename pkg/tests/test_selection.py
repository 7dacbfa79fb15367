from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selrec.selection import (Family, all_predicates, argmax_selection, argmin_selection,
                              dep_prod_quant, dep_prod_sel, dep_skewed_prod, exists_quant,
                              finite_prod, finite_prod_quant, forall_quant,
                              hilbert_selection, predicate_code, prod_quant, prod_sel,
                              sel_to_quant, skewed_prod, table_quantifier, table_selection)
from selrec.seqcore import concat, const_seq, periodic, zero_seq

BOOL_PAIRS = list(itertools.product((0, 1), repeat=2))


def pair_predicates():
    """All 16 boolean predicates on pairs."""
    for graph in itertools.product((0, 1), repeat=4):
        yield lambda xy, g=graph: g[2 * xy[0] + xy[1]]


def test_sel_to_quant_examples():
    phi = sel_to_quant(hilbert_selection)
    assert phi(lambda x: x) == 1
    assert phi(lambda x: 0) == 0
    assert phi(lambda x: 1 - x) == 1


def test_prod_quant_examples():
    ex = sel_to_quant(hilbert_selection)
    assert prod_quant(ex, ex)(lambda xy: xy[0] & xy[1]) == 1
    # brute-force oracle for "for all x there is y with x or y"
    fa, ex2 = forall_quant(2), exists_quant(2)
    assert prod_quant(fa, ex2)(lambda xy: xy[0] | xy[1]) == min(
        max(x | y for y in (0, 1)) for x in (0, 1)) == 1
    for r in (0, 1):
        assert prod_quant(ex, sel_to_quant(argmin_selection(2)))(lambda xy: r) == r


def test_prod_sel_examples():
    h = hilbert_selection
    assert prod_sel(h, h)(lambda xy: xy[0] & xy[1]) == (1, 1)
    assert prod_sel(h, h)(lambda xy: 0) == (0, 0)
    assert prod_sel(h, h)(lambda xy: 1 - xy[0]) == (0, 1)


def test_dependent_product_with_constant_family_is_simple_product():
    h = hilbert_selection
    am = argmin_selection(2)
    for p in pair_predicates():
        assert dep_prod_sel(h, lambda x: am)(p) == prod_sel(h, am)(p)
        assert dep_prod_quant(sel_to_quant(h), lambda x: sel_to_quant(am))(p) == \
            prod_quant(sel_to_quant(h), sel_to_quant(am))(p)


def test_dependent_product_follows_the_first_choice():
    delta = {1: lambda p: 1, 0: lambda p: 0}
    # p(x, y) = y: b(x) = x, so hilbert sees x -> x and picks 1
    assert dep_prod_sel(hilbert_selection, lambda x: delta[x])(lambda xy: xy[1]) == (1, 1)
    # exhaustive oracle: evaluate the defining clauses by hand
    for p in pair_predicates():
        b = {x: delta[x](lambda y, x=x: p((x, y))) for x in (0, 1)}
        a = 1 if p((1, b[1])) == 1 else 0
        assert dep_prod_sel(hilbert_selection, lambda x: delta[x])(p) == (a, b[a])


def test_dependent_homomorphism_exhaustive():
    h, am = hilbert_selection, argmin_selection(2)
    delta = lambda x: am if x else h
    for p in pair_predicates():
        assert sel_to_quant(dep_prod_sel(h, delta))(p) == \
            dep_prod_quant(sel_to_quant(h), lambda x: sel_to_quant(delta(x)))(p)


def test_skewed_product_examples():
    c = const_seq(1)
    constant = lambda p: c
    tail = lambda p: zero_seq()
    assert skewed_prod(constant, tail)(lambda a: a[0]) is c

    head_first = lambda p: concat((hilbert_selection(p),), zero_seq())
    out = skewed_prod(head_first, tail)(lambda a: a[0])
    assert out[0] == hilbert_selection(lambda x: x) == 1

    # a selection on tails: the constant-1 tail when it satisfies p, else zeros
    pick_tail = lambda p: const_seq(1) if p(const_seq(1)) == 1 else zero_seq()
    for graph in itertools.product((0, 1), repeat=4):
        p = lambda a, g=graph: g[2 * a[0] + a[1]]
        simple = skewed_prod(head_first, pick_tail)(p)
        dep = dep_skewed_prod(head_first, lambda x: pick_tail)(p)
        assert simple.take(5) == dep.take(5)


def test_skewed_product_feeds_tail_choice_to_head():
    # tail picks y = 1 - x; head picks hilbert on x -> p(x * b(x))
    tail = lambda p: zero_seq() if p(zero_seq()) == 1 else const_seq(1)
    head = lambda p: concat((hilbert_selection(p),), periodic([2]))
    p = lambda a: int(a[0] == 1 and a[1] == 1)
    out = skewed_prod(head, tail)(p)
    # b(1) = tail(y -> p(1 * y)) is the constant-1 tail since p(1 * 0...) = 0,
    # so the head sees p(1 * b(1)) = 1 and picks 1; its own tail is kept
    assert out.take(3) == (1, 2, 2)


def test_finite_product_examples():
    h = hilbert_selection
    for graph in ((0, 1), (1, 0), (1, 1), (0, 0)):
        p1 = lambda t, g=graph: g[t[0]]
        assert finite_prod([h])(p1) == (h(lambda x: p1((x,))),)
    for p in pair_predicates():
        assert finite_prod([h, argmin_selection(2)])(p) == prod_sel(h, argmin_selection(2))(p)
    conj = lambda t: t[0] & t[1] & t[2]
    assert finite_prod([h, h, h])(conj) == (1, 1, 1)
    assert finite_prod([])(conj) == ()
    assert finite_prod_quant([sel_to_quant(h)] * 3)(conj) == max(
        conj(t) for t in itertools.product((0, 1), repeat=3))


def test_finite_product_nesting_exhaustive():
    sels = [hilbert_selection, argmin_selection(2), argmax_selection(2)]
    for graph in itertools.product((0, 1), repeat=8):
        p = lambda t, g=graph: g[4 * t[0] + 2 * t[1] + t[2]]
        a, (b, c) = prod_sel(sels[0], prod_sel(sels[1], sels[2]))(
            lambda xt: p((xt[0],) + xt[1]))
        assert finite_prod(sels)(p) == (a, b, c)


def test_argmin_argmax_tie_breaking():
    assert argmin_selection(3)(lambda x: 0) == 0
    assert argmax_selection(3)(lambda x: 0) == 0
    assert argmin_selection(3, order=[2, 0, 1])(lambda x: 0) == 2
    assert argmin_selection(3, rank=[2, 0, 1])(lambda x: x) == 1
    assert argmax_selection(3)(lambda x: [1, 2, 2][x]) == 1


def test_predicate_code_and_tables():
    assert predicate_code(lambda x: [2, 0, 1][x], 3, 3) == 2 + 0 * 3 + 1 * 9
    graphs = list(all_predicates(2, 3))
    assert len(graphs) == 9 and len(set(graphs)) == 9
    for code, g in enumerate(graphs):
        assert predicate_code(lambda x: g[x], 2, 3) == code
    sel = table_selection(list(range(9)), 2, 3)
    assert sel(lambda x: (1, 2)[x]) == 1 + 2 * 3
    assert table_quantifier([5] * 9, 2, 3)(lambda x: 0) == 5


def test_family_views():
    fam = Family.by_position(lambda n: n * 10)
    assert fam.at(3) == 30 and fam.at_path((1, 1)) == 20
    dep = Family.by_path(lambda s: sum(s))
    assert dep.at_path((1, 2)) == 3
    with pytest.raises(TypeError):
        dep.at(0)
    with pytest.raises(ValueError):
        Family()


selection_tables = st.lists(st.integers(0, 2), min_size=27, max_size=27)
predicate_tables = st.lists(st.integers(0, 2), min_size=9, max_size=9)


@given(selection_tables, selection_tables, predicate_tables)
def test_homomorphism_on_three_valued_tables(t1, t2, graph):
    e, d = table_selection(t1, 3, 3), table_selection(t2, 3, 3)
    p = lambda xy: graph[3 * xy[0] + xy[1]]
    assert sel_to_quant(prod_sel(e, d))(p) == prod_quant(sel_to_quant(e), sel_to_quant(d))(p)
