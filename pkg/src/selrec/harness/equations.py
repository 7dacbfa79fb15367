"""Defining-equation checks for every recursion scheme.

Each checker takes an implementation with the scheme's call signature (the
native one or a translation), evaluates it on an instance, and compares the
output with the right-hand side of the scheme's defining equation, where
the recursive occurrences are again evaluated with the same implementation.
The check runs at the instance's start and at every one-step extension.
Sequences are compared on ``depth`` positions.
"""

from __future__ import annotations

from typing import Any, Callable

from .. import barrec
from ..barrec import Fuel
from ..seqcore import Seq, concat, restrict_outcome, shift, zero_seq
from .instances import Instance


def _take(v: Any, depth: int) -> Any:
    return v.take(depth) if isinstance(v, Seq) else v


class _Checker:
    def __init__(self, inst: Instance, depth: int):
        self.inst = inst
        self.depth = depth
        self.failures: list[str] = []

    def fuel(self) -> Fuel:
        return Fuel(self.inst.fuel)

    def same(self, label: str, lhs: Any, rhs: Any) -> None:
        a, b = _take(lhs, self.depth), _take(rhs, self.depth)
        if a != b:
            self.failures.append(f"{label}: {a!r} != {b!r}")


def _xs(inst: Instance):
    return range(inst.x_card)


# --- explicitly controlled -----------------------------------------------------

def check_eps(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    sel, l = inst.sel.at, inst.l

    def run(n, q):
        return impl(n, sel, l, q, fuel=ck.fuel())

    def at(n, q, label):
        out = run(n, q)
        if l(q(zero_seq())) < n:
            ck.same(f"{label} base", out, zero_seq())
            return
        c = sel(n)(lambda x: restrict_outcome(q, (x,))(run(n + 1, restrict_outcome(q, (x,)))))
        ck.same(f"{label} head", out[0], c)
        ck.same(f"{label} tail", shift(out, 1), run(n + 1, restrict_outcome(q, (c,))))

    at(inst.n, inst.q, "root")
    for x in _xs(inst):
        at(inst.n + 1, restrict_outcome(inst.q, (x,)), f"child {x}")
    return ck.failures


def check_epq(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    quant, l = inst.quant.at, inst.l

    def run(n, q):
        return impl(n, quant, l, q, fuel=ck.fuel())

    def at(n, q, label):
        out = run(n, q)
        r0 = q(zero_seq())
        if l(r0) < n:
            ck.same(f"{label} base", out, r0)
            return
        ck.same(f"{label} step", out,
                quant(n)(lambda x: run(n + 1, restrict_outcome(q, (x,)))))

    at(inst.n, inst.q, "root")
    for x in _xs(inst):
        at(inst.n + 1, restrict_outcome(inst.q, (x,)), f"child {x}")
    return ck.failures


def check_EPS(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    sel, l = inst.sel.at_path, inst.l

    def run(s, q):
        return impl(s, sel, l, q, fuel=ck.fuel())

    def at(s, q, label):
        out = run(s, q)
        if l(q(zero_seq())) < len(s):
            ck.same(f"{label} base", out, zero_seq())
            return
        c = sel(s)(lambda x: restrict_outcome(q, (x,))(run(s + (x,), restrict_outcome(q, (x,)))))
        ck.same(f"{label} head", out[0], c)
        ck.same(f"{label} tail", shift(out, 1), run(s + (c,), restrict_outcome(q, (c,))))

    at(inst.start, inst.q, "root")
    for x in _xs(inst):
        at(inst.start + (x,), restrict_outcome(inst.q, (x,)), f"child {x}")
    return ck.failures


def check_EPQ(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    quant, l = inst.quant.at_path, inst.l

    def run(s, q):
        return impl(s, quant, l, q, fuel=ck.fuel())

    def at(s, q, label):
        out = run(s, q)
        r0 = q(zero_seq())
        if l(r0) < len(s):
            ck.same(f"{label} base", out, r0)
            return
        ck.same(f"{label} step", out,
                quant(s)(lambda x: run(s + (x,), restrict_outcome(q, (x,)))))

    at(inst.start, inst.q, "root")
    for x in _xs(inst):
        at(inst.start + (x,), restrict_outcome(inst.q, (x,)), f"child {x}")
    return ck.failures


# --- implicitly controlled -----------------------------------------------------

def check_ips(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    sel = inst.sel.at

    def run(n, q):
        return impl(n, sel, q, fuel=ck.fuel())

    def at(n, q, label):
        out = run(n, q)
        c = sel(n)(lambda x: restrict_outcome(q, (x,))(run(n + 1, restrict_outcome(q, (x,)))))
        ck.same(f"{label} head", out[0], c)
        ck.same(f"{label} tail", shift(out, 1), run(n + 1, restrict_outcome(q, (c,))))

    at(inst.n, inst.q, "root")
    for x in _xs(inst):
        at(inst.n + 1, restrict_outcome(inst.q, (x,)), f"child {x}")
    return ck.failures


def check_IPS(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    sel = inst.sel.at_path

    def run(s, q):
        return impl(s, sel, q, fuel=ck.fuel())

    def at(s, q, label):
        out = run(s, q)
        c = sel(s)(lambda x: restrict_outcome(q, (x,))(run(s + (x,), restrict_outcome(q, (x,)))))
        ck.same(f"{label} head", out[0], c)
        ck.same(f"{label} tail", shift(out, 1), run(s + (c,), restrict_outcome(q, (c,))))

    at(inst.start, inst.q, "root")
    for x in _xs(inst):
        at(inst.start + (x,), restrict_outcome(inst.q, (x,)), f"child {x}")
    return ck.failures


def check_mbr(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    skew = inst.skew.at

    def run(n, q):
        return impl(n, skew, q, fuel=ck.fuel())

    def at(n, q, label):
        rhs = skew(n)(lambda x: restrict_outcome(q, (x,))(run(n + 1, restrict_outcome(q, (x,)))))
        ck.same(label, run(n, q), rhs)

    at(inst.n, inst.q, "root")
    for x in _xs(inst):
        at(inst.n + 1, restrict_outcome(inst.q, (x,)), f"child {x}")
    return ck.failures


def check_MBR(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    skew = inst.skew.at_path

    def run(s, q):
        return impl(s, skew, q, fuel=ck.fuel())

    def at(s, q, label):
        rhs = skew(s)(lambda x: restrict_outcome(q, (x,))(run(s + (x,), restrict_outcome(q, (x,)))))
        ck.same(label, run(s, q), rhs)

    at(inst.start, inst.q, "root")
    for x in _xs(inst):
        at(inst.start + (x,), restrict_outcome(inst.q, (x,)), f"child {x}")
    return ck.failures


def check_MBR_prime(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    skew, q = inst.skew.at_path, inst.q

    def run(s):
        return impl(s, skew, q, fuel=ck.fuel())

    def at(s, label):
        rhs = concat(s, skew(s)(lambda x: q(run(s + (x,)))))
        ck.same(label, run(s), rhs)

    at(inst.start, "root")
    for x in _xs(inst):
        at(inst.start + (x,), f"child {x}")
    return ck.failures


# --- Spector's forms -------------------------------------------------------------

def check_SBR(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    sel, omega = inst.sbr_sel, inst.omega

    def run(s):
        return impl(s, sel, omega, fuel=ck.fuel())

    def at(s, label):
        out = run(s)
        if omega(concat(s, zero_seq())) < len(s):
            ck.same(f"{label} base", out, concat(s, zero_seq()))
            return
        c = sel(s)(lambda x: run(s + (x,)))
        ck.same(f"{label} step", out, run(s + (c,)))

    at(inst.start, "root")
    for x in _xs(inst):
        at(inst.start + (x,), f"child {x}")
    return ck.failures


def check_BR(impl: Callable, inst: Instance, depth: int) -> list[str]:
    ck = _Checker(inst, depth)
    quant, omega, q = inst.quant.at_path, inst.omega, inst.q

    def run(s):
        return impl(s, quant, omega, q, fuel=ck.fuel())

    def at(s, label):
        out = run(s)
        z = concat(s, zero_seq())
        if omega(z) < len(s):
            ck.same(f"{label} base", out, q(z))
            return
        ck.same(f"{label} step", out, quant(s)(lambda x: run(s + (x,))))

    at(inst.start, "root")
    for x in _xs(inst):
        at(inst.start + (x,), f"child {x}")
    return ck.failures


CHECKERS: dict[str, Callable[[Callable, Instance, int], list[str]]] = {
    "eps": check_eps,
    "epq": check_epq,
    "EPS": check_EPS,
    "EPQ": check_EPQ,
    "ips": check_ips,
    "IPS": check_IPS,
    "mbr": check_mbr,
    "MBR": check_MBR,
    "MBR_prime": check_MBR_prime,
    "SBR": check_SBR,
    "BR": check_BR,
}

NATIVE: dict[str, Callable] = {
    "eps": barrec.eps,
    "epq": barrec.epq,
    "EPS": barrec.EPS,
    "EPQ": barrec.EPQ,
    "ips": barrec.ips,
    "IPS": barrec.IPS,
    "mbr": barrec.mbr,
    "MBR": barrec.MBR,
    "MBR_prime": barrec.MBR_prime,
    "SBR": barrec.SBR,
    "BR": barrec.BR,
}


def check_equation(scheme: str, inst: Instance, depth: int,
                   impl: Callable | None = None) -> list[str]:
    """Failures of the defining equation of ``scheme`` for ``impl``."""
    return CHECKERS[scheme](impl or NATIVE[scheme], inst, depth)
