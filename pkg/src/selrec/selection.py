"""Selection functions, quantifiers and their binary products.

A selection function is any callable ``eps(p) -> x`` taking a predicate
``p : X -> R``; a quantifier is a callable ``phi(p) -> r``; a skewed selection
returns a whole :class:`~selrec.seqcore.Seq` (head plus tail) instead of a
single value.

Products of pairs take predicates on 2-tuples, so pairs and finite paths
share one representation.  The skewed product takes predicates on sequences:
the pair ``(x, tail)`` is the sequence ``x * tail``.
"""

from __future__ import annotations

from typing import Any, Callable, Sequence

from .seqcore import Path, Seq, concat

Predicate = Callable[[Any], Any]
Selection = Callable[[Predicate], Any]
Quantifier = Callable[[Predicate], Any]
SkewedSelection = Callable[[Predicate], Seq]


def sel_to_quant(eps: Selection) -> Quantifier:
    """The quantifier attained by eps: ``p -> p(eps(p))``."""
    return lambda p: p(eps(p))


def prod_quant(phi: Quantifier, psi: Quantifier) -> Quantifier:
    return lambda p: phi(lambda x: psi(lambda y: p((x, y))))


def prod_sel(eps: Selection, delta: Selection) -> Selection:
    def product(p):
        def b(x):
            return delta(lambda y: p((x, y)))

        a = eps(lambda x: p((x, b(x))))
        return (a, b(a))

    return product


def dep_prod_quant(phi: Quantifier, psi: Callable[[Any], Quantifier]) -> Quantifier:
    return lambda p: phi(lambda x: psi(x)(lambda y: p((x, y))))


def dep_prod_sel(eps: Selection, delta: Callable[[Any], Selection]) -> Selection:
    def product(p):
        def b(x):
            return delta(x)(lambda y: p((x, y)))

        a = eps(lambda x: p((x, b(x))))
        return (a, b(a))

    return product


def skewed_prod(eps: SkewedSelection, delta: SkewedSelection) -> SkewedSelection:
    """Extend a skewed selection by a selection on the tail space.

    ``eps`` already returns a whole sequence; the result feeds it the
    predicate ``x -> p(x * b(x))`` where ``b(x) = delta(y -> p(x * y))``.
    """

    def product(p):
        def b(x):
            return delta(lambda y: p(concat((x,), y)))

        return eps(lambda x: p(concat((x,), b(x))))

    return product


def dep_skewed_prod(eps: SkewedSelection,
                    delta: Callable[[Any], SkewedSelection]) -> SkewedSelection:
    def product(p):
        def b(x):
            return delta(x)(lambda y: p(concat((x,), y)))

        return eps(lambda x: p(concat((x,), b(x))))

    return product


def finite_prod(sels: Sequence[Selection]) -> Selection:
    """Iterated product: a selection on paths of length ``len(sels)``.

    Right-nested, so ``finite_prod([e, d])`` behaves as ``prod_sel(e, d)``.
    """
    sels = tuple(sels)
    if not sels:
        return lambda p: ()
    head = sels[0]
    rest = finite_prod(sels[1:])

    def product(p):
        def b(x):
            return rest(lambda t: p((x,) + t))

        a = head(lambda x: p((x,) + b(x)))
        return (a,) + b(a)

    return product


def finite_prod_quant(quants: Sequence[Quantifier]) -> Quantifier:
    quants = tuple(quants)
    if not quants:
        return lambda p: p(())
    head = quants[0]
    rest = finite_prod_quant(quants[1:])
    return lambda p: head(lambda x: rest(lambda t: p((x,) + t)))


# --- concrete selection functions -------------------------------------------

def argmin_selection(x_card: int, rank: Sequence[int] | None = None,
                     order: Sequence[int] | None = None) -> Selection:
    """Pick x minimising ``rank[p(x)]``; ties go to the earliest x in ``order``.

    With the defaults this is argmin by result code with least-value
    tie-breaking.
    """
    xs = tuple(order) if order is not None else tuple(range(x_card))
    if rank is None:
        return lambda p: min(xs, key=p)
    rk = tuple(rank)
    return lambda p: min(xs, key=lambda x: rk[p(x)])


def argmax_selection(x_card: int) -> Selection:
    """Pick x maximising ``p(x)``; least x among ties."""
    xs = tuple(range(x_card))
    return lambda p: max(xs, key=lambda x: (p(x), -x))


def hilbert_selection(p: Predicate) -> int:
    """Boolean epsilon: choose tt (1) exactly when p(tt) holds."""
    return 1 if p(1) == 1 else 0


def predicate_code(p: Predicate, x_card: int, r_card: int) -> int:
    """Index of p's graph: ``sum(p(x) * r_card**x)``."""
    code = 0
    for x in reversed(range(x_card)):
        code = code * r_card + p(x)
    return code


def table_selection(table: Sequence[int], x_card: int, r_card: int) -> Selection:
    """Selection keyed by the whole predicate graph (see :func:`predicate_code`)."""
    tab = tuple(table)
    return lambda p: tab[predicate_code(p, x_card, r_card)]


def table_quantifier(table: Sequence[int], x_card: int, r_card: int) -> Quantifier:
    tab = tuple(table)
    return lambda p: tab[predicate_code(p, x_card, r_card)]


def exists_quant(x_card: int) -> Quantifier:
    xs = tuple(range(x_card))
    return lambda p: max(p(x) for x in xs)


def forall_quant(x_card: int) -> Quantifier:
    xs = tuple(range(x_card))
    return lambda p: min(p(x) for x in xs)


def all_predicates(x_card: int, r_card: int):
    """Every predicate ``range(x_card) -> range(r_card)`` as a tuple graph."""
    for code in range(r_card ** x_card):
        graph = []
        c = code
        for _ in range(x_card):
            graph.append(c % r_card)
            c //= r_card
        yield tuple(graph)


class Family:
    """A family of selections (or quantifiers, or skewed selections).

    ``at(n)`` gives the member used at position n by the simple recursors and
    ``at_path(s)`` the member used after history s by the dependent ones.  A
    family built from positions only answers ``at_path(s)`` with
    ``at(len(s))``.
    """

    def __init__(self, at: Callable[[int], Any] | None = None,
                 at_path: Callable[[Path], Any] | None = None):
        if at is None and at_path is None:
            raise ValueError("family needs at least one of at / at_path")
        self._at = at
        self._at_path = at_path

    def at(self, n: int):
        if self._at is None:
            raise TypeError("path-dependent family has no position-indexed view")
        return self._at(n)

    def at_path(self, s: Path):
        if self._at_path is None:
            return self._at(len(s))
        return self._at_path(tuple(s))

    @classmethod
    def constant(cls, member) -> "Family":
        return cls(at=lambda n: member)

    @classmethod
    def by_position(cls, f: Callable[[int], Any]) -> "Family":
        return cls(at=f)

    @classmethod
    def by_path(cls, f: Callable[[Path], Any],
                at: Callable[[int], Any] | None = None) -> "Family":
        return cls(at=at, at_path=f)
