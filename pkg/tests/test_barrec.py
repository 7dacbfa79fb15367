from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (strict_BR, strict_EPQ, strict_EPS, strict_SBR, strict_epq,
                     strict_eps, strict_ips, table_reader)
from selrec import barrec
from selrec.barrec import (BR, EPQ, EPS, IPS, MBR, SBR, Fuel, LengthFn, MBR_prime,
                           OmegaFn, default_fuel, eps, epq, ipq_diverging, ips, mbr,
                           run_deep)
from selrec.errors import ContractViolation, FuelExhausted
from selrec.harness.instances import RandomParams, random_instance
from selrec.selection import exists_quant, hilbert_selection
from selrec.seqcore import OutcomeFn, concat, const_seq, restrict_outcome, table_outcome, zero_seq

ID = LengthFn()


def const_q(r, modulus=0):
    return OutcomeFn(lambda a: r, modulus)


# selection used by the worked boolean example: prefer tt when it scores 0
def prefer_zero_score(n):
    return lambda p: 1 if p(1) == 0 else 0


# q(a) = 0 if a(0) is tt else 1
FIRST_IS_TT = table_outcome([1, 0], 2, 1)
CONJ = table_outcome([0, 0, 0, 1], 2, 2)


def test_fuel_budget_and_env(monkeypatch):
    f = Fuel(2)
    f.tick()
    f.tick()
    assert f.remaining == 0
    with pytest.raises(FuelExhausted):
        f.tick()
    monkeypatch.setenv("SELREC_FUEL", "77")
    assert default_fuel() == 77 and Fuel().budget == 77
    monkeypatch.delenv("SELREC_FUEL")
    assert default_fuel() == 100_000


def test_eps_examples():
    assert eps(1, prefer_zero_score, ID, const_q(0)).take(10) == (0,) * 10
    assert eps(0, prefer_zero_score, ID, FIRST_IS_TT).take(6) == (1, 0, 0, 0, 0, 0)
    zero_len = LengthFn([0, 0])
    for n in (1, 2, 5):
        assert eps(n, prefer_zero_score, zero_len, CONJ).take(8) == (0,) * 8


def test_eps_example_matches_strict_oracle():
    q = table_reader([1, 0], 2, 1)
    assert strict_eps(0, prefer_zero_score, lambda r: r, q, (), 6, 1) == (1, 0, 0, 0, 0, 0)


def test_epq_examples():
    ex = lambda n: exists_quant(2)
    for r in (0, 1, 2):
        assert epq(r + 1, ex, ID, const_q(r)) == r
    # length 0 stops after one quantifier: exists x (x and 0) = 0
    assert epq(0, ex, LengthFn([0, 0]), CONJ) == 0
    # length 1 unfolds twice: exists x exists y (x and y) = 1
    assert epq(0, ex, LengthFn([1, 1]), CONJ) == 1
    assert epq(0, ex, LengthFn([1, 1]), const_q(0)) == 0
    brute = max(x & y for x in (0, 1) for y in (0, 1))
    assert strict_epq(0, ex, lambda r: 1, table_reader([0, 0, 0, 1], 2, 2), ()) == brute


def test_dependent_explicit_examples():
    zero_len = LengthFn([0, 0])
    sel = lambda s: prefer_zero_score(len(s))
    assert EPS((1,), sel, zero_len, CONJ).take(5) == (0,) * 5
    assert EPQ((1,), lambda s: exists_quant(2), zero_len, CONJ) == CONJ(zero_seq())
    assert EPS((), sel, ID, FIRST_IS_TT).take(6) == (1, 0, 0, 0, 0, 0)


def test_ips_examples():
    h = lambda n: hilbert_selection
    assert ips(0, h, CONJ).take(6) == (1,) * 6
    assert strict_ips(0, h, table_reader([0, 0, 0, 1], 2, 2), (), 6, 2) == (1,) * 6
    assert ips(0, lambda n: (lambda p: 2), const_q(1)).take(5) == (2,) * 5
    seen = []
    spy = lambda n: (lambda p: seen.append(p(0)) or 1)
    ips(3, spy, const_q(7, 0))[0]
    assert seen == [7]


def test_IPS_examples():
    h = lambda s: hilbert_selection
    assert IPS((), h, CONJ).take(6) == (1,) * 6
    assert IPS((0, 1), lambda s: (lambda p: 1), const_q(0)).take(4) == (1,) * 4


def test_ipq_diverges():
    grow = lambda n: (lambda p: 1 + p(0))
    for budget in (0, 1, 10):
        with pytest.raises(FuelExhausted):
            ipq_diverging(0, grow, const_q(0), fuel=Fuel(budget))
    with pytest.raises(FuelExhausted):
        run_deep(ipq_diverging, 0, grow, const_q(0), fuel=Fuel(10 ** 5))


def test_ipq_projection_also_exhausts_fuel():
    # the naive equation never consults q, so even a constant q cannot stop it
    project = lambda n: (lambda p: p(0))
    with pytest.raises(FuelExhausted):
        run_deep(ipq_diverging, 0, project, const_q(3), fuel=Fuel(10 ** 5))


def test_mbr_examples():
    c = const_seq(1)
    assert mbr(0, lambda n: (lambda p: c), CONJ).take(6) == c.take(6)
    head = lambda n: (lambda p: concat((hilbert_selection(p),), zero_seq()))
    first = table_outcome([0, 1], 2, 1)
    assert mbr(0, head, first).take(5) == (1, 0, 0, 0, 0)
    dep_head = lambda s: head(len(s))
    assert MBR((), dep_head, first).take(5) == (1, 0, 0, 0, 0)


def test_MBR_prime_examples():
    c = const_seq(1)
    out = MBR_prime((0, 0), lambda s: (lambda p: c), CONJ)
    assert out.take(5) == (0, 0, 1, 1, 1)
    head = lambda s: (lambda p: concat((hilbert_selection(p),), zero_seq()))
    s = (1,)
    assert MBR_prime(s, head, CONJ).take(6) == concat(s, MBR(s, head, restrict_outcome(CONJ, s))).take(6)


def _omega_const(b):
    return OmegaFn(lambda a: b, 0, b)


def test_SBR_examples():
    pick1 = lambda s: (lambda p: 1)
    assert SBR((1,), pick1, _omega_const(0)).take(4) == (1, 0, 0, 0)
    assert SBR((), pick1, _omega_const(0)).take(4) == (1, 0, 0, 0)
    for b in range(5):
        fuel = Fuel()
        out = SBR((), pick1, _omega_const(b), fuel=fuel)
        assert fuel.used == b + 2  # paths of length 0 .. b+1
        assert out.take(b + 3) == (1,) * (b + 1) + (0, 0)


def test_BR_examples():
    ex = lambda s: exists_quant(2)
    assert BR((1,), ex, _omega_const(0), CONJ) == CONJ(concat((1,), zero_seq()))
    assert BR((), ex, _omega_const(1), CONJ) == 1
    assert BR((0,), ex, _omega_const(0), const_q(2)) == 2


def test_omega_bound_is_enforced():
    bad = OmegaFn(lambda a: 5, 0, 3)
    with pytest.raises(ContractViolation):
        SBR((), lambda s: (lambda p: 0), bad)


def test_run_deep_reraises_and_restores():
    import sys
    limit = sys.getrecursionlimit()
    with pytest.raises(ValueError):
        run_deep(lambda: (_ for _ in ()).throw(ValueError("boom")))
    assert sys.getrecursionlimit() == limit
    assert run_deep(lambda x: x + 1, 1) == 2


# --- randomized comparisons with the strict oracles ------------------------------

seeds = st.integers(0, 10 ** 6)
PARAMS = RandomParams(x_cards=(2, 3), r_cards=(2, 3), max_modulus=3, max_bound=4)


def _reader(inst):
    spec = inst.spec
    return table_reader(spec.outcome["table"], spec.x_card, spec.outcome["modulus"])


@given(seeds)
def test_eps_matches_strict_oracle(seed):
    inst = random_instance(seed, PARAMS).build()
    d = inst.spec.outcome["modulus"]
    want = strict_eps(inst.n, inst.sel.at, inst.l, _reader(inst), (), 12, d)
    assert eps(inst.n, inst.sel.at, inst.l, inst.q).take(12) == want


@given(seeds)
def test_EPS_matches_strict_oracle(seed):
    inst = random_instance(seed, PARAMS).build()
    d = inst.spec.outcome["modulus"]
    want = strict_EPS(inst.start, inst.sel.at_path, inst.l, _reader(inst), (), 12, d)
    assert EPS(inst.start, inst.sel.at_path, inst.l, inst.q).take(12) == want


@given(seeds)
def test_quantifier_products_match_strict_oracle(seed):
    inst = random_instance(seed, PARAMS).build()
    q = _reader(inst)
    assert epq(inst.n, inst.quant.at, inst.l, inst.q) == strict_epq(inst.n, inst.quant.at, inst.l, q, ())
    assert EPQ(inst.start, inst.quant.at_path, inst.l, inst.q) == \
        strict_EPQ(inst.start, inst.quant.at_path, inst.l, q, ())


@given(seeds)
def test_ips_matches_strict_oracle(seed):
    inst = random_instance(seed, PARAMS).build()
    d = inst.spec.outcome["modulus"]
    want = strict_ips(inst.n, inst.sel.at, _reader(inst), (), 12, d)
    assert ips(inst.n, inst.sel.at, inst.q).take(12) == want


@given(seeds)
def test_bar_recursion_matches_strict_oracle(seed):
    inst = random_instance(seed, PARAMS).build()
    spec = inst.spec
    om = table_reader(spec.omega["table"], spec.x_card, spec.omega["modulus"])
    q = _reader(inst)
    assert BR(inst.start, inst.quant.at_path, inst.omega, inst.q) == \
        strict_BR(inst.start, inst.quant.at_path, om, q)

    k = 12

    def choose(s):
        pick = inst.sel.at_path(s)
        return lambda p: pick(lambda x: q(p(x)))

    assert SBR(inst.start, inst.sbr_sel, inst.omega).take(k) == strict_SBR(inst.start, choose, om, k)


@given(seeds)
def test_constant_in_path_families_agree_with_simple_forms(seed):
    inst = random_instance(seed, PARAMS).build()
    pos = inst.sel.at
    by_len = lambda s: pos(len(s))
    n = inst.n
    assert EPS(inst.start, by_len, inst.l, inst.q).take(20) == eps(n, pos, inst.l, inst.q).take(20)
    assert IPS(inst.start, by_len, inst.q).take(20) == ips(n, pos, inst.q).take(20)
    qpos = inst.quant.at
    assert EPQ(inst.start, lambda s: qpos(len(s)), inst.l, inst.q) == epq(n, qpos, inst.l, inst.q)
    skew = inst.skew.at
    assert MBR(inst.start, lambda s: skew(len(s)), inst.q).take(20) == mbr(n, skew, inst.q).take(20)


@given(seeds)
def test_ips_terminates_within_default_fuel(seed):
    inst = random_instance(seed, RandomParams(x_cards=(2, 3, 4), max_modulus=4)).build()
    fuel = Fuel()
    ips(inst.n, inst.sel.at, inst.q, fuel=fuel).take(20)
    IPS(inst.start, inst.sel.at_path, inst.q, fuel=fuel).take(20)
    assert fuel.used <= barrec.DEFAULT_FUEL
