"""Strict reference evaluators used as test oracles.

They work on plain tuples: an outcome reads a tuple padded with zeros, and
every recursion is unfolded eagerly.  Nothing here touches the lazy
sequence machinery of the package.
"""

from __future__ import annotations


def table_reader(table, x_card, modulus):
    def q(xs):
        xs = tuple(xs) + (0,) * max(0, modulus - len(xs))
        idx = 0
        for v in xs[:modulus]:
            idx = idx * x_card + v
        return table[idx]
    return q


def strict_eps(n, sel, l, q, t, k, modulus):
    """First k values of eps started at n for the outcome q restricted to t."""
    if k <= 0:
        return ()
    if l(q(t)) < n:
        return (0,) * k
    need = max(0, modulus - len(t) - 1)

    def value(x):
        return q(t + (x,) + strict_eps(n + 1, sel, l, q, t + (x,), need, modulus))

    c = sel(n)(value)
    return (c,) + strict_eps(n + 1, sel, l, q, t + (c,), k - 1, modulus)


def strict_EPS(s, sel, l, q, t, k, modulus):
    if k <= 0:
        return ()
    if l(q(t)) < len(s):
        return (0,) * k
    need = max(0, modulus - len(t) - 1)

    def value(x):
        return q(t + (x,) + strict_EPS(s + (x,), sel, l, q, t + (x,), need, modulus))

    c = sel(s)(value)
    return (c,) + strict_EPS(s + (c,), sel, l, q, t + (c,), k - 1, modulus)


def strict_epq(n, quant, l, q, t):
    r = q(t)
    if l(r) < n:
        return r
    return quant(n)(lambda x: strict_epq(n + 1, quant, l, q, t + (x,)))


def strict_EPQ(s, quant, l, q, t):
    r = q(t)
    if l(r) < len(s):
        return r
    return quant(s)(lambda x: strict_EPQ(s + (x,), quant, l, q, t + (x,)))


def strict_ips(n, sel, q, t, k, modulus):
    if k <= 0:
        return ()
    need = max(0, modulus - len(t) - 1)

    def value(x):
        return q(t + (x,) + strict_ips(n + 1, sel, q, t + (x,), need, modulus))

    c = sel(n)(value)
    return (c,) + strict_ips(n + 1, sel, q, t + (c,), k - 1, modulus)


def strict_BR(s, quant, omega, q):
    full = tuple(s)
    if omega(full) < len(s):
        return q(full)
    return quant(s)(lambda x: strict_BR(s + (x,), quant, omega, q))


def strict_SBR(s, choose, omega, k):
    """``choose(s)`` takes a predicate from values to finite prefixes."""
    if omega(tuple(s)) < len(s):
        return (tuple(s) + (0,) * k)[:k]
    c = choose(s)(lambda x: strict_SBR(s + (x,), choose, omega, k))
    return strict_SBR(s + (c,), choose, omega, k)
