"""Property suites, one per library module.

Every suite returns a :class:`SuiteResult` with the number of individual
checks run and a list of failure records.  The same functions back the
``selrec check`` command and the acceptance tests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .. import barrec, interdef
from ..barrec import Fuel, OmegaFn
from ..errors import FuelExhausted
from ..selection import (all_predicates, dep_prod_quant, dep_prod_sel, finite_prod,
                         prod_quant, prod_sel, sel_to_quant)
from ..seqcore import (OutcomeFn, Seq, concat, init_seg, init_seg_zero, overwrite,
                       restrict_outcome, shift, table_outcome, zero_seq)
from ..spector import (chi, chi_plus, main_spec_witness, solve_spector_equations,
                       verify_spector)
from .equations import CHECKERS, check_equation
from .instances import Instance, RandomParams, random_instance


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, check: str, **detail) -> None:
        self.checks += 1
        if not ok:
            self.failures.append({"check": check, **{k: repr(v) for k, v in detail.items()}})

    def to_dict(self) -> dict:
        return {"suite": self.name, "checks": self.checks,
                "failures": self.failures, "passed": self.passed}


def _random_seq(rng: random.Random, x_card: int, length: int = 40) -> Seq:
    vals = [rng.randrange(x_card) for _ in range(length)]
    return Seq(lambda i: vals[i % length])


# --- seqcore -----------------------------------------------------------------

def seqcore_suite(seeds: int = 20) -> SuiteResult:
    res = SuiteResult("seqcore")
    rng = random.Random(0)
    for _ in range(seeds):
        x_card = rng.randint(2, 4)
        alpha = _random_seq(rng, x_card)
        for n in range(6):
            sh = shift(alpha, n)
            for i in range(20):
                res.expect(sh[i] == alpha[n + i], "shift law", n=n, i=i)
        for n in range(6):
            z = init_seg_zero(alpha, n)
            res.expect(z.take(n) == alpha.take(n), "init_seg_zero prefix", n=n)
            res.expect(all(z[i] == 0 for i in range(n, n + 20)),
                       "init_seg_zero suffix", n=n)

    # overwrite law, exhaustive over boolean prefixes of length <= 3
    alpha = Seq(lambda i: (i * 7 + 3) % 5)
    for k in range(4):
        for s in itertools.product(range(2), repeat=k):
            ow = overwrite(s, alpha)
            for i in range(11):
                want = s[i] if i < len(s) else alpha[i + len(s)]
                res.expect(ow[i] == want, "overwrite law", s=s, i=i)

    # memoisation: each index is generated at most once
    calls: list = []
    memo = Seq(lambda i: calls.append(i) or i % 3)
    for i in range(30):
        a, b = memo[i], memo[i]
        res.expect(a == b, "memo idempotence", i=i)
    res.expect(sorted(calls) == list(range(30)), "memo single evaluation")
    return res


# --- selection ----------------------------------------------------------------

def boolean_selections() -> list:
    """All 16 selection functions (2 -> 2) -> 2, as tables over predicate codes."""
    preds = list(all_predicates(2, 2))
    out = []
    for choice in itertools.product(range(2), repeat=len(preds)):
        table = dict(zip(preds, choice))
        out.append(lambda p, t=table: t[(p(0), p(1))])
    return out


def homomorphism_suite() -> SuiteResult:
    """sel_to_quant commutes with the binary products, exhaustively."""
    res = SuiteResult("selection.homomorphism")
    sels = boolean_selections()
    preds = [lambda xy, g=g: g[2 * xy[0] + xy[1]] for g in itertools.product(range(2), repeat=4)]
    for i, e in enumerate(sels):
        qe = sel_to_quant(e)
        for j, d in enumerate(sels):
            lhs = sel_to_quant(prod_sel(e, d))
            rhs = prod_quant(qe, sel_to_quant(d))
            for k, p in enumerate(preds):
                res.expect(lhs(p) == rhs(p), "homomorphism", eps=i, delta=j, p=k)
    return res


def selection_suite() -> SuiteResult:
    res = homomorphism_suite()
    res.name = "selection"
    sels = boolean_selections()
    preds = [lambda xy, g=g: g[2 * xy[0] + xy[1]] for g in itertools.product(range(2), repeat=4)]
    for i, e in enumerate(sels[::3]):
        for j, d in enumerate(sels[::5]):
            simple = prod_sel(e, d)
            dep = dep_prod_sel(e, lambda x, d=d: d)
            for k, p in enumerate(preds):
                res.expect(simple(p) == dep(p), "constant dependent product", p=k)
    # dependent homomorphism with a value-dependent second factor
    for i, e in enumerate(sels):
        for j, (d0, d1) in enumerate(itertools.product(sels[::4], repeat=2)):
            delta = lambda x, d0=d0, d1=d1: d1 if x else d0
            lhs = sel_to_quant(dep_prod_sel(e, delta))
            rhs = dep_prod_quant(sel_to_quant(e), lambda x: sel_to_quant(delta(x)))
            for k, p in enumerate(preds):
                res.expect(lhs(p) == rhs(p), "dependent homomorphism", p=k)
    # finite product nesting over three coordinates
    trip = [sels[5], sels[9], sels[12]]
    nested = lambda p: (lambda a: (a[0],) + a[1])(
        prod_sel(trip[0], prod_sel(trip[1], trip[2]))(lambda xt: p((xt[0],) + xt[1])))
    for g in itertools.product(range(2), repeat=8):
        p = lambda t, g=g: g[4 * t[0] + 2 * t[1] + t[2]]
        res.expect(finite_prod(trip)(p) == nested(p), "finite product nesting", g=g)
    return res


# --- barrec ---------------------------------------------------------------------

def main_lemma_failures(inst: Instance, depth: int = 20, max_i: int = 10) -> list[str]:
    """The lemma ``alpha = alpha[:i] * eps(n+i)(q_{alpha[:i]})`` and the pointwise
    unwinding formula for ``alpha(i)``, for every ``i <= max_i``."""
    sel, l, q, n = inst.sel.at, inst.l, inst.q, inst.n
    zeros = zero_seq()
    out: list[str] = []
    alpha = barrec.eps(n, sel, l, q, fuel=Fuel(inst.fuel))
    want = alpha.take(depth)
    for i in range(max_i + 1):
        t = init_seg(alpha, i)
        qt = restrict_outcome(q, t)
        rest = barrec.eps(n + i, sel, l, qt, fuel=Fuel(inst.fuel))
        got = concat(t, rest).take(depth)
        if got != want:
            out.append(f"lemma i={i}: {got} != {want}")
        if l(qt(zeros)) < n + i:
            unwound = 0
        else:
            def p(x):
                qtx = restrict_outcome(q, t + (x,))
                return qtx(barrec.eps(n + i + 1, sel, l, qtx, fuel=Fuel(inst.fuel)))
            unwound = sel(n + i)(p)
        if alpha[i] != unwound:
            out.append(f"unwinding i={i}: {alpha[i]} != {unwound}")
    return out


def acceptance_params() -> RandomParams:
    return RandomParams(x_cards=(1, 2, 3), r_cards=(1, 2, 3), max_modulus=3, max_bound=4)


def barrec_suite(seeds: int = 100, depth: int = 20, fuel: int | None = None) -> SuiteResult:
    res = SuiteResult("barrec")
    params = acceptance_params()
    if fuel is not None:
        params.fuel = fuel
    for seed in range(seeds):
        inst = random_instance(seed, params).build()
        try:
            fails = main_lemma_failures(inst, depth)
        except FuelExhausted as exc:
            fails = [str(exc)]
        res.expect(not fails, "main lemma and unwinding", seed=seed, detail=fails[:2])
        for scheme in CHECKERS:
            try:
                fails = check_equation(scheme, inst, depth)
            except FuelExhausted as exc:
                fails = [str(exc)]
            res.expect(not fails, f"defining equation {scheme}", seed=seed, detail=fails[:2])
    for budget in (10 ** 2, 10 ** 4, 10 ** 5):
        res.expect(ipq_diverges(budget), "ipq exhausts fuel", fuel=budget)
    return res


def _ipq_witness(budget: int) -> bool:
    quant = lambda n: (lambda p: 1 + p(0))
    try:
        barrec.ipq_diverging(0, quant, OutcomeFn(lambda a: 0, 0), fuel=Fuel(budget))
    except FuelExhausted:
        return True
    return False


def ipq_diverges(budget: int) -> bool:
    """The naive quantifier product with ``phi_n(p) = 1 + p(0)`` runs out of fuel."""
    return barrec.run_deep(_ipq_witness, budget)


# --- interdef --------------------------------------------------------------------

def interdef_suite(seeds: int = 20) -> SuiteResult:
    res = SuiteResult("interdef")
    rng = random.Random(1)

    # course-of-values: (d * alpha)^s = d(s) * alpha^(s * d(s))
    for _ in range(seeds):
        x_card = rng.randint(2, 3)
        table = {}

        def hist_fn(salt, table=table, x_card=x_card):
            def f(t):
                key = (salt, t)
                if key not in table:
                    table[key] = rng.randrange(x_card)
                return table[key]
            return f

        d = hist_fn("d")
        alpha = Seq(lambda i: hist_fn(i))
        s = tuple(rng.randrange(x_card) for _ in range(rng.randint(0, 3)))
        lhs = interdef.course_of_values(concat((d,), alpha), s).take(10)
        ds = d(s)
        rhs = concat((ds,), interdef.course_of_values(alpha, s + (ds,))).take(10)
        res.expect(lhs == rhs, "course-of-values lemma", s=s)

    # flagged decoding: decode(x^ * alpha, s) = x * decode(alpha, s * x)
    for _ in range(seeds):
        x_card = rng.randint(2, 3)
        flags = [rng.random() < 0.4 for _ in range(12)]
        salts = [rng.randrange(100) for _ in range(12)]

        def cell(i):
            salt = salts[i % 12]
            g = lambda t, salt=salt: Seq(lambda j: (salt + sum(t) + j) % x_card)
            return interdef.Flagged(flags[i % 12], g)

        alpha = Seq(cell)
        x = rng.randrange(x_card)
        s = tuple(rng.randrange(x_card) for _ in range(rng.randint(0, 3)))
        hat = interdef.Flagged(True, lambda t: concat((x,), zero_seq()))
        lhs = interdef.decode_flagged(concat((hat,), alpha), s).take(12)
        rhs = concat((x,), interdef.decode_flagged(alpha, s + (x,))).take(12)
        res.expect(lhs == rhs, "flagged decoding lemma", s=s, x=x)

    # chunk algebra, exhaustive for boolean chunk lists of total length <= 5
    chunks_upto = [c for k in range(1, 6) for c in itertools.product(range(2), repeat=k)]
    lists = [()]
    frontier = [((), 0)]
    while frontier:
        nxt = []
        for lst, total in frontier:
            for c in chunks_upto:
                if total + len(c) <= 5:
                    item = (lst + (c,), total + len(c))
                    lists.append(item[0])
                    nxt.append(item)
        frontier = nxt
    G, G_star, F_star, F = interdef.G, interdef.G_star, interdef.F_star, interdef.F
    for k in range(6):
        for v in itertools.product(range(2), repeat=k):
            seq = concat(v, zero_seq())
            res.expect(F(Seq(lambda i: G(seq[i]))).take(k + 3) == seq.take(k + 3),
                       "chunks of singletons", v=v)
            res.expect(F_star(G_star(v)) == v, "singleton chunks roundtrip", v=v)
    for a in lists:
        for b in lists:
            if sum(map(len, a)) + sum(map(len, b)) > 5:
                continue
            res.expect(F_star(a + b) == F_star(a) + F_star(b), "flatten concatenation",
                       a=a, b=b)
        flat = F_star(a)
        if len(flat) <= 5:
            for t in lists:
                if len(flat) + sum(map(len, t)) <= 5:
                    res.expect(F_star(G_star(flat) + t) == flat + F_star(t),
                               "flatten after singletons", s=flat, t=t)

    # restricted chunk outcome: (q o F)_<s> = (q_s) o F
    for _ in range(seeds):
        x_card = rng.randint(2, 3)
        d = rng.randint(0, 4)
        q = table_outcome([rng.randrange(3) for _ in range(x_card ** d)], x_card, d)
        s = tuple(rng.randrange(x_card) for _ in range(rng.randint(1, 3)))
        alpha = Seq(lambda i: tuple((i + j) % x_card for j in range(1 + i % 2)))
        lhs = (lambda a: q(F(a)))(concat((s,), alpha))
        rhs = restrict_outcome(q, s)(F(alpha))
        res.expect(lhs == rhs, "restricted chunk outcome", s=s)
    return res


def translation_equation_suite(seeds: int = 20, depth: int = 20,
                               fuel: int | None = None) -> SuiteResult:
    """Every translation satisfies the defining equation of its target."""
    from .matrix import PAIRS
    res = SuiteResult("translation equations")
    params = RandomParams() if fuel is None else RandomParams(fuel=fuel)
    instances = [random_instance(seed, params).build() for seed in range(seeds)]
    for pair in PAIRS.values():
        for inst in instances:
            try:
                fails = check_equation(pair.native_name, inst, depth, pair.derived)
            except FuelExhausted as exc:
                fails = [str(exc)]
            res.expect(not fails, f"{pair.name} equation", seed=inst.spec.seed,
                       detail=fails[:2])
    return res


# --- spector -----------------------------------------------------------------------

def _omega_tables(modulus: int, bound: int):
    for table in itertools.product(range(bound + 1), repeat=2 ** modulus):
        yield OmegaFn(table_outcome(table, 2, modulus).fn, modulus, bound)


def _boolean_sequences(period_max: int = 2):
    for k in range(1, period_max + 1):
        for vals in itertools.product(range(2), repeat=k):
            yield vals, Seq(lambda i, v=vals: v[i % len(v)])


def chi_suite() -> SuiteResult:
    """Exhaustive least-witness checks for the search functionals."""
    res = SuiteResult("spector.chi")
    for modulus in range(3):
        for bound in range(4):
            for omega in _omega_tables(modulus, bound):
                for vals, alpha in _boolean_sequences():
                    found = None
                    for n in range(bound + 2):
                        if omega(init_seg_zero(alpha, n)) < n:
                            found = n
                            break
                    res.expect(chi(omega, alpha) == found, "chi least witness",
                               modulus=modulus, bound=bound, alpha=vals)
                    for k in range(4):
                        n = chi_plus(k, omega, alpha)
                        ok = omega(init_seg_zero(alpha, n)) < n + k and all(
                            omega(init_seg_zero(alpha, i)) >= i + k for i in range(n))
                        res.expect(ok, "chi_plus minimal witness", k=k, alpha=vals)
    return res


def spector_failures(inst: Instance) -> list[str]:
    out: list[str] = []
    sel, l, q, omega = inst.sel.at, inst.l, inst.q, inst.omega
    alpha, p_family = main_spec_witness(sel, l, q, fuel=Fuel(inst.fuel))
    for n in range(l(q(alpha)) + 1):
        p = p_family(n)
        if alpha[n] != sel(n)(p):
            out.append(f"witness selection n={n}")
        if p(alpha[n]) != q(alpha):
            out.append(f"witness value n={n}")
    sol = solve_spector_equations(sel, q, omega, inst.x_card, fuel=Fuel(inst.fuel))
    for row in verify_spector(sol, sel, q, omega):
        if not row["ok"]:
            out.append(f"{row['equation']}: {row['lhs']!r} != {row['rhs']!r}")
    return out


def spector_suite(seeds: int = 100, fuel: int | None = None) -> SuiteResult:
    res = chi_suite()
    res.name = "spector"
    params = acceptance_params()
    if fuel is not None:
        params.fuel = fuel
    for seed in range(seeds):
        inst = random_instance(seed, params).build()
        try:
            fails = spector_failures(inst)
        except FuelExhausted as exc:
            fails = [str(exc)]
        res.expect(not fails, "spector equations", seed=seed, detail=fails[:2])
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "seqcore": seqcore_suite,
    "selection": selection_suite,
    "barrec": barrec_suite,
    "interdef": interdef_suite,
    "spector": spector_suite,
}
