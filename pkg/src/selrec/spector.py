"""Spector's search functional and his system of equations.

The system, for given ``eps_n``, ``q`` and ``omega``, asks for ``n``,
``alpha`` and a predicate ``p`` with::

    n              = omega(alpha)
    alpha(n)       = eps_n(p)
    p(alpha(n))    = q(alpha)

and is solved by the explicitly controlled product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .barrec import Fuel, eps
from .errors import ContractViolation, SearchFailed
from .seqcore import Seq, init_seg, init_seg_zero, restrict_outcome


def alpha_omega(omega: Callable[[Seq], int], alpha: Seq, zero: Any = 0) -> Seq:
    """alpha, cut to zeros from the first point where the search could stop.

    Position i is zero when some ``k <= i + 1`` has
    ``omega(init_seg_zero(alpha, k)) < k``, and ``alpha(i)`` otherwise.
    """
    def gen(i):
        for k in range(i + 2):
            if omega(init_seg_zero(alpha, k, zero)) < k:
                return zero
        return alpha[i]

    return Seq(gen)


def chi(omega: Callable[[Seq], int], alpha: Seq, zero: Any = 0) -> int:
    """Least n with ``omega(init_seg_zero(alpha, n)) < n``, by bounded search.

    The bound ``omega(alpha_omega) + 1`` comes from the search itself, not
    from the declared bound of omega; the declared bound (if any) is checked
    afterwards.
    """
    top = omega(alpha_omega(omega, alpha, zero)) + 1
    for n in range(top + 1):
        if omega(init_seg_zero(alpha, n, zero)) < n:
            bound = getattr(omega, "bound", None)
            if bound is not None and n > bound + 1:
                raise ContractViolation(f"search stopped at {n}, beyond bound {bound} + 1")
            return n
    raise SearchFailed(f"no n <= {top} with omega(alpha[:n] * 0) < n")


def chi_plus(k: int, omega: Callable[[Seq], int], alpha: Seq, zero: Any = 0) -> int:
    """Least n with ``omega(init_seg_zero(alpha, n)) < n + k``.

    Searched up to ``chi`` of ``omega`` minus k (cut off at zero).
    """
    def shifted(beta):
        return max(0, omega(beta) - k)

    top = chi(shifted, alpha, zero)
    for i in range(top + 1):
        if omega(init_seg_zero(alpha, i, zero)) < i + k:
            return i
    raise SearchFailed(f"no i <= {top} with omega(alpha[:i] * 0) < i + {k}")


def main_spec_witness(sel: Callable[[int], Any], l: Callable, q: Callable, *,
                      zero: Any = 0, fuel=None):
    """``alpha = eps_0(q)`` and the predicates ``p_n`` solving the variant system.

    ``p_n(x)`` is the value the product from ``n + 1`` on attains for the
    outcome restricted to ``alpha[:n] * x``.  For ``n <= l(q(alpha))`` they
    satisfy ``alpha(n) = sel(n)(p_n)`` and ``p_n(alpha(n)) = q(alpha)``.
    """
    fuel = Fuel() if fuel is None else fuel
    alpha = eps(0, sel, l, q, zero=zero, fuel=fuel)

    def p_family(n):
        prefix = init_seg(alpha, n)

        def p(x):
            qx = restrict_outcome(q, prefix + (x,))
            return qx(eps(n + 1, sel, l, qx, zero=zero, fuel=fuel))
        return p

    return alpha, p_family


@dataclass
class SpectorSolution:
    n: int
    alpha: Seq
    p: tuple  # p[x] for every value x

    def predicate(self) -> Callable[[int], Any]:
        return lambda x: self.p[x]


def solve_spector_equations(sel: Callable[[int], Any], q: Callable, omega: Callable,
                            x_card: int, *, zero: Any = 0, fuel=None) -> SpectorSolution:
    """Solve the system by pairing results with omega's value.

    Results become pairs ``(q(a), omega(a))`` and the length function reads
    the second component; selections only look at the first.
    """
    def q2(alpha):
        return (q(alpha), omega(alpha))

    def sel2(n):
        choose = sel(n)
        return lambda p: choose(lambda x: p(x)[0])

    alpha, p_family = main_spec_witness(sel2, lambda r: r[1], q2, zero=zero, fuel=fuel)
    n = omega(alpha)
    p2 = p_family(n)
    table = tuple(p2(x)[0] for x in range(x_card))
    return SpectorSolution(n=n, alpha=alpha, p=table)


def verify_spector(sol: SpectorSolution, sel: Callable[[int], Any], q: Callable,
                   omega: Callable) -> list[dict]:
    """Evaluate both sides of each of the three equations."""
    p = sol.predicate()
    rows = []
    lhs, rhs = sol.n, omega(sol.alpha)
    rows.append({"equation": "n = omega(alpha)", "lhs": lhs, "rhs": rhs, "ok": lhs == rhs})
    lhs, rhs = sol.alpha[sol.n], sel(sol.n)(p)
    rows.append({"equation": "alpha(n) = eps_n(p)", "lhs": lhs, "rhs": rhs, "ok": lhs == rhs})
    lhs, rhs = p(sol.alpha[sol.n]), q(sol.alpha)
    rows.append({"equation": "p(alpha(n)) = q(alpha)", "lhs": lhs, "rhs": rhs,
                 "ok": lhs == rhs})
    return rows
