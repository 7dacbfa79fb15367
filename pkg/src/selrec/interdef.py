"""Executable translations between the recursion schemes.

Each ``<target>_via_<source>`` function has exactly the call signature of
the target scheme in :mod:`selrec.barrec` but computes its answer by a
single call to the source scheme at a changed type, followed by decoding.
Nothing here calls the target scheme itself, so comparing a translation with
the native target is an independent check.

Encodings used:

* ``course_of_values(a, s)``: a sequence of history-dependent choices
  ``a(i) : path -> X`` becomes an ordinary sequence after history ``s``.
* :class:`Flagged` cells ``(flag, payload)`` mark which positions of a
  sequence carry real data (flag set) and which are padding.
* :class:`Tagged` cells form the sum of values and results.
* Chunks are non-empty tuples of values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, NamedTuple

from . import barrec
from .barrec import Fuel
from .seqcore import (Path, Seq, concat, init_seg_zero, lazy,
                      restrict_outcome, shift, zero_seq)
from .spector import chi_plus


def _memo_path_fn(f: Callable[[Path], Any]) -> Callable[[Path], Any]:
    cache: dict = {}

    def g(t):
        t = tuple(t)
        if t not in cache:
            cache[t] = f(t)
        return cache[t]

    return g


def _memo(p: Callable[[Any], Any]) -> Callable[[Any], Any]:
    cache: dict = {}

    def g(x):
        try:
            return cache[x]
        except KeyError:
            v = cache[x] = p(x)
            return v
        except TypeError:
            return p(x)

    return g


# --- eps from epq ------------------------------------------------------------

def eps_via_epq(n: int, sel, l, q, *, zero: Any = 0, fuel: Fuel | None = None) -> Seq:
    """eps computed by epq at result type "infinite sequence".

    The quantifiers ``phi_i(p) = p(sel(i)(x -> q^n(p(x))))`` let epq carry
    the whole play forward; ``f^n`` pads its argument with n zeros so the
    answer lives at absolute positions and is shifted back at the end.
    """
    def qn(alpha):
        return q(shift(alpha, n))

    def phi(i):
        choose = sel(i)

        def quant(p):
            p = _memo(p)
            return p(choose(lambda x: qn(p(x))))
        return quant

    pad = (zero,) * n

    def f_n(alpha):
        return concat(pad, alpha)

    out = barrec.epq(n, phi, lambda a: l(qn(a)), f_n, zero=zero, fuel=fuel)
    return shift(out, n)


# --- EPS / IPS from eps / ips ------------------------------------------------

def course_of_values(alpha: Seq, s: Path) -> Seq:
    """``alpha^s(i) = alpha(i)(s * [alpha^s](i))``."""
    s = tuple(s)
    out: Seq

    def gen(i):
        return alpha[i](s + out.take(i))

    out = Seq(gen)
    return out


def _const_fn(y):
    return lambda t: y


def lift_dependent(sel: Callable[[Path], Any]) -> Callable[[int], Any]:
    """Dependent selections turned into simple ones on history functions.

    ``lifted(k)(P) = t -> sel(t)(y -> P(const y))``.  The returned choice is a
    function of the history; it is memoised per history.
    """
    def lifted(k):
        def choose(P):
            return _memo_path_fn(lambda t: sel(t)(lambda y: P(_const_fn(y))))
        return choose
    return lifted


def EPS_via_eps(s: Path, sel, l, q, *, zero: Any = 0, fuel: Fuel | None = None) -> Seq:
    s = tuple(s)

    def qs(alpha):
        return q(course_of_values(alpha, s))

    out = barrec.eps(len(s), lift_dependent(sel), l, qs,
                     zero=_const_fn(zero), fuel=fuel)
    return course_of_values(out, s)


def IPS_via_ips(s: Path, sel, q, *, fuel: Fuel | None = None) -> Seq:
    s = tuple(s)

    def qs(alpha):
        return q(course_of_values(alpha, s))

    out = barrec.ips(len(s), lift_dependent(sel), qs, fuel=fuel)
    return course_of_values(out, s)


# --- EPQ from BR ---------------------------------------------------------------

def EPQ_via_BR(s: Path, quant, l, q, *, zero: Any = 0, fuel: Fuel | None = None) -> Any:
    s = tuple(s)
    k = len(s)

    def qk(alpha):
        return q(shift(alpha, k))

    return barrec.BR(s, quant, lambda a: l(qk(a)), qk, zero=zero, fuel=fuel)


# --- SBR from EPS --------------------------------------------------------------

def SBR_via_EPS(s: Path, sel, omega, *, zero: Any = 0, fuel: Fuel | None = None) -> Seq:
    """Spector's bar recursion as EPS with results ``(sequence, omega value)``."""
    s = tuple(s)

    def q_omega(alpha):
        return (alpha, omega(alpha))

    def tsel(t):
        choose = sel(t)
        return lambda p: choose(lambda x: p(x)[0])

    rest = barrec.EPS(s, tsel, lambda r: r[1], restrict_outcome(q_omega, s),
                      zero=zero, fuel=fuel)
    return concat(s, rest)


# --- MBR from mbr --------------------------------------------------------------

class Flagged(NamedTuple):
    """A padded cell: ``flag`` says whether ``payload`` is real data."""

    flag: bool
    payload: Any


def decode_flagged(alpha: Seq, s: Path, zero: Any = 0) -> Seq:
    """``alpha^[s]``: unfold flagged history functions into plain values.

    Position i reads the latest flagged cell ``alpha(m) = (True, g)`` with
    ``m <= i`` and answers ``g(s * out[:m])(i - m)``; zero if there is none.
    """
    s = tuple(s)
    out: Seq

    def gen(i):
        for m in range(i, -1, -1):
            flag, g = alpha[m]
            if flag:
                return g(s + out.take(m))[i - m]
        return zero

    out = Seq(gen)
    return out


def MBR_via_mbr(s: Path, skew, q, *, zero: Any = 0, fuel: Fuel | None = None) -> Seq:
    s = tuple(s)
    zeros = zero_seq(zero)
    padding = Flagged(False, lambda t: zeros)

    def hat(x):
        return Flagged(True, lambda t: concat((x,), zeros))

    def lifted(j):
        def skewed(P):
            g = _memo_path_fn(lambda t: skew(t)(lambda x: P(hat(x))))
            first = Flagged(True, g)
            return Seq(lambda k: first if k == 0 else padding)
        return skewed

    def q_s(alpha):
        return q(decode_flagged(alpha, s, zero))

    out = barrec.mbr(len(s), lifted, q_s, fuel=fuel)
    return decode_flagged(out, s, zero)


# --- MBR' <-> MBR --------------------------------------------------------------

def MBR_prime_via_MBR(s: Path, skew, q, *, fuel: Fuel | None = None) -> Seq:
    s = tuple(s)
    return concat(s, barrec.MBR(s, skew, restrict_outcome(q, s), fuel=fuel))


def MBR_via_MBR_prime(s: Path, skew, q, *, fuel: Fuel | None = None) -> Seq:
    s = tuple(s)
    return barrec.MBR_prime((), lambda t: skew(s + tuple(t)), q, fuel=fuel)


# --- mbr from ips --------------------------------------------------------------

def flatten_flagged(alpha: Seq) -> Seq:
    """Matrix of flagged rows to one sequence.

    Row k starts at position k.  While the rows carry flag True only their
    first entry is kept; from the first row whose head is unflagged onwards,
    that row is read to the end.
    """
    def gen(j):
        for k in range(j):
            row = alpha[k]
            if not row[0].flag:
                return row[j - k].payload
        return alpha[j][0].payload

    return Seq(gen)


def mbr_via_ips(n: int, skew, q, *, zero: Any = 0, fuel: Fuel | None = None) -> Seq:
    """mbr computed by ips over rows of flagged values.

    A skewed choice becomes one unflagged row; a value x passed down to a
    recursive call becomes the flagged row ``x, 0, 0, ...``.
    """
    def hat(x):
        return Seq(lambda j: Flagged(True, x if j == 0 else zero))

    def lifted(i):
        choose = skew(i)

        def sel(f):
            row = lazy(lambda: choose(lambda x: f(hat(x))))
            return Seq(lambda j: Flagged(False, row[j]))
        return sel

    def q_flat(alpha):
        return q(flatten_flagged(alpha))

    out = barrec.ips(n, lifted, q_flat, fuel=fuel)
    return Seq(lambda j: out[0][j].payload)


# --- IPS from MBR (chunks) -----------------------------------------------------

def G(x) -> tuple:
    return (x,)


def G_star(s: Path) -> tuple:
    return tuple((x,) for x in s)


def F_star(chunks) -> tuple:
    out: list = []
    for c in chunks:
        out.extend(c)
    return tuple(out)


def F(alpha: Seq) -> Seq:
    """Concatenate an infinite sequence of non-empty chunks."""
    def gen(i):
        k = 0
        while True:
            chunk = alpha[k]
            if not chunk:
                raise ValueError("chunks must be non-empty")
            if i < len(chunk):
                return chunk[i]
            i -= len(chunk)
            k += 1

    return Seq(gen)


def nu_family(sel: Callable[[Path], Any]) -> Callable[[Path], Any]:
    """Skewed selections on chunks driven by a dependent selection family.

    ``nu(r)(P)`` is a sequence of singleton chunks; its i-th entry is the
    choice of ``sel`` after history ``F*(r) + F*(first i entries)``, made
    against the chunk that extends those entries by one value.
    """
    def nu(r):
        prefix = F_star(r)

        def skewed(P):
            out: Seq

            def gen(i):
                ft = F_star(out.take(i))
                return G(sel(prefix + ft)(lambda x: P(ft + (x,))))

            out = Seq(gen)
            return out
        return skewed
    return nu


def IPS_via_MBR(s: Path, sel, q, *, fuel: Fuel | None = None) -> Seq:
    def q_chunks(alpha):
        return q(F(alpha))

    return F(barrec.MBR(G_star(s), nu_family(sel), q_chunks, fuel=fuel))


# --- EPQ from IPS --------------------------------------------------------------

class Tag(Enum):
    PLAIN = "plain"
    RESULT = "result"


@dataclass(frozen=True)
class Tagged:
    """Cell of the sum of values and results."""

    tag: Tag
    payload: Any

    @classmethod
    def plain(cls, x) -> "Tagged":
        return cls(Tag.PLAIN, x)

    @classmethod
    def result(cls, r) -> "Tagged":
        return cls(Tag.RESULT, r)


def check_path(t: Path, zero: Any = 0) -> Path:
    """Values kept, result cells replaced by zero."""
    return tuple(c.payload if c.tag is Tag.PLAIN else zero for c in t)


def check_seq(alpha: Seq, zero: Any = 0) -> Seq:
    def gen(i):
        c = alpha[i]
        return c.payload if c.tag is Tag.PLAIN else zero
    return Seq(gen)


def tilde_path(s: Path) -> Path:
    return tuple(Tagged.plain(x) for x in s)


def tagged_quant_family(quant: Callable[[Path], Any], zero: Any = 0) -> Callable[[Path], Any]:
    """Quantifiers turned into selections on the sum type.

    ``tq(t)(Fp) = result(quant(check t)(x -> Fp(plain x)))``; the predicate is
    only ever consulted on plain cells.
    """
    def tq(t):
        phi = quant(check_path(t, zero))
        return lambda Fp: Tagged.result(phi(lambda x: Fp(Tagged.plain(x))))
    return tq


def controlled_outcome(q: Callable, l: Callable, k: int, zero: Any = 0) -> Callable:
    """``q^{l,s}`` for a history of length k.

    Finds the first n where ``l(q(check(alpha)[:n] * 0)) < n + k``.  If a
    result cell appears before n, the first one is the answer; otherwise q
    is applied to the zero-padded prefix.
    """
    def lq(beta):
        return l(q(beta))

    def q_ls(alpha):
        plain = check_seq(alpha, zero)
        n = chi_plus(k, lq, plain, zero=zero)
        for i in range(n):
            c = alpha[i]
            if c.tag is Tag.RESULT:
                return c.payload
        return q(init_seg_zero(plain, n, zero))

    return q_ls


def EPQ_via_IPS(s: Path, quant, l, q, *, zero: Any = 0, fuel: Fuel | None = None) -> Any:
    s = tuple(s)
    q_ls = controlled_outcome(q, l, len(s), zero)
    run = barrec.IPS(tilde_path(s), tagged_quant_family(quant, zero), q_ls, fuel=fuel)
    return q_ls(run)
