"""Lazy infinite sequences and the finite-prefix algebra on them.

A :class:`Seq` is a generator ``index -> value`` behind a write-once cache, so
every position is computed at most once and only when somebody reads it.
Paths (finite sequences) are plain tuples.

Notation used throughout the package::

    concat(s, a)        s * a        prepend the path s
    overwrite(s, a)     s @ a        s on [0, |s|), a(i + |s|) after
    shift(a, n)         a^n          a(i + n)
    init_seg(a, n)      [a](n)       (a(0), ..., a(n-1))
    init_seg_zero(a, n) [a](n)*0     the same, padded with zeros
    restrict_outcome(q, s)  q_s      lambda a: q(s * a)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable

from .errors import ContractViolation

Path = tuple


class Seq:
    """Memoized infinite sequence.

    ``evaluations`` counts generator calls; it never exceeds the number of
    distinct indices read.
    """

    __slots__ = ("_gen", "_cache", "evaluations")

    def __init__(self, gen: Callable[[int], Any]):
        self._gen = gen
        self._cache: dict[int, Any] = {}
        self.evaluations = 0

    def __getitem__(self, i: int) -> Any:
        cache = self._cache
        if i in cache:
            return cache[i]
        if i < 0:
            raise IndexError(f"negative sequence index {i}")
        value = self._gen(i)
        self.evaluations += 1
        # a re-entrant read may have filled the slot already; first write wins
        return cache.setdefault(i, value)

    __call__ = __getitem__

    def take(self, n: int) -> tuple:
        return tuple(self[i] for i in range(n))

    def __iter__(self):
        i = 0
        while True:
            yield self[i]
            i += 1

    def __repr__(self) -> str:
        shown = ", ".join(repr(self._cache[i]) for i in sorted(self._cache)[:8])
        return f"Seq(<{len(self._cache)} cached: {shown}>)"


def seq_at(alpha: Seq, i: int) -> Any:
    return alpha[i]


def const_seq(value: Any) -> Seq:
    return Seq(lambda i: value)


def zero_seq(zero: Any = 0) -> Seq:
    """The constant sequence of the canonical zero element."""
    return Seq(lambda i: zero)


def from_list(values: Iterable[Any], fill: Any = 0) -> Seq:
    """Finite list followed by a constant tail."""
    vals = tuple(values)
    return Seq(lambda i: vals[i] if i < len(vals) else fill)


def periodic(values: Iterable[Any]) -> Seq:
    vals = tuple(values)
    return Seq(lambda i: vals[i % len(vals)])


def lazy(thunk: Callable[[], Seq]) -> Seq:
    """A sequence whose definition is only forced on the first read."""
    box: list[Seq] = []

    def gen(i):
        if not box:
            box.append(thunk())
        return box[0][i]

    return Seq(gen)


def concat(s: Path, alpha: Seq) -> Seq:
    """``s * alpha``: the path followed by the whole of alpha."""
    if not s:
        return alpha
    k = len(s)
    return Seq(lambda i: s[i] if i < k else alpha[i - k])


def cons(x: Any, alpha: Seq) -> Seq:
    return concat((x,), alpha)


def overwrite(s: Path, alpha: Seq) -> Seq:
    """``s @ alpha``: s_i below ``|s|`` and ``alpha(i + |s|)`` from there on.

    The index shift is deliberate; for constant alpha (the only way the
    recursors use it) this coincides with plain prefix overwriting.
    """
    if not s:
        return alpha
    k = len(s)
    return Seq(lambda i: s[i] if i < k else alpha[i + k])


def shift(alpha: Seq, n: int) -> Seq:
    if n == 0:
        return alpha
    return Seq(lambda i: alpha[i + n])


def init_seg(alpha: Seq, n: int) -> Path:
    return tuple(alpha[i] for i in range(n))


def init_seg_zero(alpha: Seq, n: int, zero: Any = 0) -> Seq:
    """Zero extension of the first n entries.

    Extensionally ``overwrite(init_seg(alpha, n), zero_seq())``, but alpha is
    read lazily so an outcome with a small modulus never forces alpha(n-1).
    """
    return Seq(lambda i: alpha[i] if i < n else zero)


def segment(alpha: Seq, k: int, n: int) -> Path:
    """``(alpha(k), ..., alpha(n))``, both ends included."""
    return tuple(alpha[i] for i in range(k, n + 1))


def seq_map(f: Callable[[Any], Any], alpha: Seq) -> Seq:
    return Seq(lambda i: f(alpha[i]))


def agree(a: Seq, b: Seq, depth: int) -> int | None:
    """First index below ``depth`` where a and b differ, or None."""
    for i in range(depth):
        if a[i] != b[i]:
            return i
    return None


@dataclass(frozen=True)
class OutcomeFn:
    """An outcome ``q : Seq -> R`` with a declared modulus of continuity.

    ``modulus`` is the number of leading positions q may read; ``None`` means
    unknown (outcomes built by the translations often do not track it).
    """

    fn: Callable[[Seq], Any]
    modulus: int | None = None

    def __call__(self, alpha: Seq) -> Any:
        return self.fn(alpha)


def modulus_of(q: Callable) -> int | None:
    return getattr(q, "modulus", None)


def restrict_outcome(q: Callable[[Seq], Any], s: Path) -> OutcomeFn:
    """``q_s = lambda a: q(s * a)``."""
    if isinstance(q, OutcomeFn) and q.modulus is not None:
        m = max(0, q.modulus - len(s))
    else:
        m = None
    if not s:
        return q if isinstance(q, OutcomeFn) else OutcomeFn(q, m)
    # Nested restrictions share one base; the full prefix is assembled on the
    # first call, so long chains cost neither deep closures nor quadratic copies.
    if isinstance(q, _Restricted):
        return _Restricted(q.base, q, tuple(s), m)
    return _Restricted(q, None, tuple(s), m)


class _Restricted(OutcomeFn):
    def __init__(self, base, parent, ext, modulus):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "_parent", parent)
        object.__setattr__(self, "_ext", ext)
        object.__setattr__(self, "_prefix", None)
        object.__setattr__(self, "fn", lambda a: base(concat(self.prefix, a)))
        object.__setattr__(self, "modulus", modulus)

    @property
    def prefix(self) -> tuple:
        if self._prefix is None:
            chain = []
            node = self
            while node is not None and node._prefix is None:
                chain.append(node)
                node = node._parent
            acc = () if node is None else node._prefix
            for link in reversed(chain):
                acc = acc + link._ext
                object.__setattr__(link, "_prefix", acc)
        return self._prefix


def table_outcome(table: Iterable[Any], x_card: int, modulus: int) -> OutcomeFn:
    """Outcome read off a table indexed by the first ``modulus`` entries.

    The index is big-endian: ``sum(a(i) * x_card**(modulus-1-i))``.
    """
    tab = tuple(table)
    if len(tab) != x_card ** modulus:
        raise ValueError(f"table needs {x_card ** modulus} entries, got {len(tab)}")

    def q(alpha):
        idx = 0
        for i in range(modulus):
            idx = idx * x_card + alpha[i]
        return tab[idx]

    return OutcomeFn(q, modulus)


def guarded(alpha: Seq, limit: int) -> Seq:
    """View of alpha that refuses reads at or beyond ``limit``."""

    def gen(i):
        if i >= limit:
            raise ContractViolation(f"read at index {i}, modulus is {limit}")
        return alpha[i]

    return Seq(gen)


def checked_call(q: OutcomeFn, alpha: Seq) -> Any:
    """Evaluate q on alpha, enforcing its declared modulus."""
    if q.modulus is None:
        return q(alpha)
    return q(guarded(alpha, q.modulus))
