"""The recursion schemes, each written straight from its defining equation.

Simple variants take a family indexed by position (``sel(n)``), dependent
variants a family indexed by the history so far (``sel(s)``).  Sequence-valued
schemes return lazy :class:`~selrec.seqcore.Seq` objects: tails are built on
demand, and the implicitly controlled schemes (ips, IPS, mbr, MBR, MBR')
terminate only because outcomes read finitely many positions.

Every scheme shares one :class:`Fuel` per top-level call; each unfolding of
a recursor costs one unit and an empty budget raises
:class:`~selrec.errors.FuelExhausted`.
"""

from __future__ import annotations

import os
import sys
import threading
from typing import Any, Callable

from .errors import ContractViolation, FuelExhausted
from .seqcore import (OutcomeFn, Path, Seq, concat, lazy, overwrite,
                      restrict_outcome, zero_seq)

DEFAULT_FUEL = 100_000


def default_fuel() -> int:
    return int(os.environ.get("SELREC_FUEL", DEFAULT_FUEL))


class Fuel:
    """Budget of recursor unfoldings."""

    __slots__ = ("budget", "used")

    def __init__(self, budget: int | None = None):
        self.budget = default_fuel() if budget is None else budget
        self.used = 0

    def tick(self) -> None:
        if self.used >= self.budget:
            raise FuelExhausted(self.budget)
        self.used += 1

    @property
    def remaining(self) -> int:
        return self.budget - self.used


def _fuel(fuel: Fuel | None) -> Fuel:
    return Fuel() if fuel is None else fuel


class LengthFn:
    """``l : R -> N`` given by a table over result codes (None = identity)."""

    def __init__(self, table=None):
        self.table = None if table is None else tuple(table)

    def __call__(self, r):
        return r if self.table is None else self.table[r]


class OmegaFn(OutcomeFn):
    """Control functional ``omega : Seq -> N`` with a declared bound.

    Values above ``bound`` raise ContractViolation: the bound is the
    operational form of Spector's condition.
    """

    def __init__(self, fn: Callable[[Seq], int], modulus: int | None, bound: int):
        def checked(alpha):
            v = fn(alpha)
            if v > bound:
                raise ContractViolation(f"omega returned {v} above its bound {bound}")
            return v

        object.__setattr__(self, "fn", checked)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "bound", bound)


def _cons_lazy(head: Callable[[], Any], tail_of: Callable[[Any], Seq]) -> Seq:
    """Sequence ``c * tail_of(c)`` where ``c = head()`` is forced on first read."""
    box: list = []

    def gen(i):
        if not box:
            box.append(head())
        c = box[0]
        return c if i == 0 else tail_of(c)[i - 1]

    return Seq(gen)


class _Children:
    """Per-node cache of recursive calls keyed by the extending value."""

    __slots__ = ("make", "memo")

    def __init__(self, make):
        self.make = make
        self.memo = {}

    def __call__(self, x):
        try:
            return self.memo[x]
        except KeyError:
            v = self.memo[x] = self.make(x)
            return v
        except TypeError:  # unhashable value
            return self.make(x)


# --- explicitly controlled ---------------------------------------------------

def eps(n: int, sel: Callable[[int], Any], l: Callable, q: Callable, *,
        zero: Any = 0, fuel: Fuel | None = None) -> Seq:
    """Explicitly controlled product of selection functions, started at n."""
    fuel = _fuel(fuel)
    fuel.tick()
    zeros = zero_seq(zero)
    if l(q(zeros)) < n:
        return zeros

    def make(x):
        qx = restrict_outcome(q, (x,))
        return qx, eps(n + 1, sel, l, qx, zero=zero, fuel=fuel)

    child = _Children(make)

    def head():
        def p(x):
            qx, rest = child(x)
            return qx(rest)
        return sel(n)(p)

    return _cons_lazy(head, lambda c: child(c)[1])


def epq(n: int, quant: Callable[[int], Any], l: Callable, q: Callable, *,
        zero: Any = 0, fuel: Fuel | None = None) -> Any:
    """Explicitly controlled product of quantifiers, started at n."""
    fuel = _fuel(fuel)
    fuel.tick()
    r0 = q(zero_seq(zero))
    if l(r0) < n:
        return r0
    return quant(n)(lambda x: epq(n + 1, quant, l, restrict_outcome(q, (x,)),
                                  zero=zero, fuel=fuel))


def EPS(s: Path, sel: Callable[[Path], Any], l: Callable, q: Callable, *,
        zero: Any = 0, fuel: Fuel | None = None) -> Seq:
    """Dependent explicitly controlled product after history s."""
    fuel = _fuel(fuel)
    fuel.tick()
    s = tuple(s)
    zeros = zero_seq(zero)
    if l(q(zeros)) < len(s):
        return zeros

    def make(x):
        qx = restrict_outcome(q, (x,))
        return qx, EPS(s + (x,), sel, l, qx, zero=zero, fuel=fuel)

    child = _Children(make)

    def head():
        def p(x):
            qx, rest = child(x)
            return qx(rest)
        return sel(s)(p)

    return _cons_lazy(head, lambda c: child(c)[1])


def EPQ(s: Path, quant: Callable[[Path], Any], l: Callable, q: Callable, *,
        zero: Any = 0, fuel: Fuel | None = None) -> Any:
    fuel = _fuel(fuel)
    fuel.tick()
    s = tuple(s)
    r0 = q(zero_seq(zero))
    if l(r0) < len(s):
        return r0
    return quant(s)(lambda x: EPQ(s + (x,), quant, l, restrict_outcome(q, (x,)),
                                  zero=zero, fuel=fuel))


# --- implicitly controlled ---------------------------------------------------

def ips(n: int, sel: Callable[[int], Any], q: Callable, *,
        fuel: Fuel | None = None) -> Seq:
    """Implicitly controlled product: no stopping test at all.

    Productive rather than terminating; reading a position terminates when q
    has a finite modulus.
    """
    fuel = _fuel(fuel)

    def make(x):
        qx = restrict_outcome(q, (x,))
        return qx, ips(n + 1, sel, qx, fuel=fuel)

    child = _Children(make)

    def head():
        fuel.tick()

        def p(x):
            qx, rest = child(x)
            return qx(rest)
        return sel(n)(p)

    return _cons_lazy(head, lambda c: child(c)[1])


def IPS(s: Path, sel: Callable[[Path], Any], q: Callable, *,
        fuel: Fuel | None = None) -> Seq:
    fuel = _fuel(fuel)
    s = tuple(s)

    def make(x):
        qx = restrict_outcome(q, (x,))
        return qx, IPS(s + (x,), sel, qx, fuel=fuel)

    child = _Children(make)

    def head():
        fuel.tick()

        def p(x):
            qx, rest = child(x)
            return qx(rest)
        return sel(s)(p)

    return _cons_lazy(head, lambda c: child(c)[1])


def ipq_diverging(n: int, quant: Callable[[int], Any], q: Callable, *,
                  fuel: Fuel | None = None) -> Any:
    """Naive unbounded product of quantifiers.

    There is no total functional satisfying this equation; the function
    exists to show the evaluation running out of fuel.
    """
    fuel = _fuel(fuel)
    fuel.tick()
    return quant(n)(lambda x: ipq_diverging(n + 1, quant, restrict_outcome(q, (x,)),
                                            fuel=fuel))


def mbr(n: int, skew: Callable[[int], Any], q: Callable, *,
        fuel: Fuel | None = None) -> Seq:
    """Iterated skewed product: the skewed selection's output is the result."""
    fuel = _fuel(fuel)

    def force():
        fuel.tick()

        def p(x):
            qx = restrict_outcome(q, (x,))
            return qx(mbr(n + 1, skew, qx, fuel=fuel))
        return skew(n)(p)

    return lazy(force)


def MBR(s: Path, skew: Callable[[Path], Any], q: Callable, *,
        fuel: Fuel | None = None) -> Seq:
    fuel = _fuel(fuel)
    s = tuple(s)

    def force():
        fuel.tick()

        def p(x):
            qx = restrict_outcome(q, (x,))
            return qx(MBR(s + (x,), skew, qx, fuel=fuel))
        return skew(s)(p)

    return lazy(force)


def MBR_prime(s: Path, skew: Callable[[Path], Any], q: Callable, *,
              fuel: Fuel | None = None) -> Seq:
    """Modified bar recursion proper: q always sees the whole sequence."""
    fuel = _fuel(fuel)
    s = tuple(s)

    def force():
        fuel.tick()
        return skew(s)(lambda x: q(MBR_prime(s + (x,), skew, q, fuel=fuel)))

    return concat(s, lazy(force))


# --- Spector's forms ---------------------------------------------------------

def SBR(s: Path, sel: Callable[[Path], Any], omega: Callable, *,
        zero: Any = 0, fuel: Fuel | None = None) -> Seq:
    """Spector's restricted bar recursion.

    ``sel(s)`` is a selection whose predicates return whole sequences.
    Stops with ``s @ 0`` once ``omega(s * 0) < |s|``; otherwise continues
    with ``SBR(s * c)`` for ``c = sel(s)(x -> SBR(s * x))``.
    """
    fuel = _fuel(fuel)
    fuel.tick()
    s = tuple(s)
    zeros = zero_seq(zero)
    if omega(concat(s, zeros)) < len(s):
        return overwrite(s, zeros)
    child = _Children(lambda x: SBR(s + (x,), sel, omega, zero=zero, fuel=fuel))
    return child(sel(s)(child))


def BR(s: Path, quant: Callable[[Path], Any], omega: Callable, q: Callable, *,
       zero: Any = 0, fuel: Fuel | None = None) -> Any:
    """General construction by bar recursion; q and omega see whole sequences."""
    fuel = _fuel(fuel)
    fuel.tick()
    s = tuple(s)
    z = concat(s, zero_seq(zero))
    if omega(z) < len(s):
        return q(z)
    return quant(s)(lambda x: BR(s + (x,), quant, omega, q, zero=zero, fuel=fuel))


# --- deep evaluation ---------------------------------------------------------

_DEEP_STACK = 1 << 30
_DEEP_LIMIT = 2_000_000


def run_deep(fn: Callable[..., Any], *args, **kwargs) -> Any:
    """Run fn in a worker thread with a large stack and recursion limit.

    Evaluation depth tracks fuel, so a budget of 1e5 unfoldings needs far
    more than the default interpreter stack.  Exceptions are re-raised in
    the caller.
    """
    result: dict[str, Any] = {}

    def target():
        try:
            result["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised below
            result["error"] = exc

    old_limit = sys.getrecursionlimit()
    old_size = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, _DEEP_LIMIT))
    try:
        threading.stack_size(_DEEP_STACK)
        worker = threading.Thread(target=target, name="selrec-deep")
        worker.start()
        worker.join()
    finally:
        threading.stack_size(old_size)
        sys.setrecursionlimit(old_limit)
    if "error" in result:
        raise result["error"]
    return result.get("value")
