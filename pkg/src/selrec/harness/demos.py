"""Two small demonstrations with independent oracles.

``demo_game`` solves an alternating two-player game on boolean moves by the
finite product of argmax/argmin selections (backward induction) and compares
it with a plain minimax search.  ``demo_search`` finds a boolean sequence
satisfying a finitely-read predicate with the implicitly controlled product
of Hilbert selections and compares it with brute force over all prefixes.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from ..barrec import Fuel, ips
from ..selection import argmax_selection, argmin_selection, finite_prod, hilbert_selection
from ..seqcore import table_outcome

GAME_RESULTS = 8


def random_payoffs(depth: int, seed: int, r_card: int = GAME_RESULTS) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(r_card) for _ in range(2 ** depth)]


def _leaf(payoffs: Sequence[int], path) -> int:
    idx = 0
    for x in path:
        idx = 2 * idx + x
    return payoffs[idx]


def minimax(payoffs: Sequence[int], depth: int, prefix: tuple = ()) -> tuple[int, tuple]:
    """Value and principal line; the maximiser moves at even positions and
    ties go to the smaller move."""
    if len(prefix) == depth:
        return _leaf(payoffs, prefix), ()
    best = None
    for x in (0, 1):
        v, line = minimax(payoffs, depth, prefix + (x,))
        maximise = len(prefix) % 2 == 0
        if best is None or (v > best[0] if maximise else v < best[0]):
            best = (v, (x,) + line)
    return best


def demo_game(depth: int, seed: int = 0, payoffs: Sequence[int] | None = None) -> dict:
    payoffs = list(payoffs) if payoffs is not None else random_payoffs(depth, seed)
    sels = [argmax_selection(2) if i % 2 == 0 else argmin_selection(2) for i in range(depth)]

    def p(path):
        return _leaf(payoffs, path)

    play = finite_prod(sels)(p)
    value, oracle_play = minimax(payoffs, depth)

    # a tie is a move on the chosen line where the other move is just as good
    ties = []
    for i in range(depth):
        vals = [minimax(payoffs, depth, play[:i] + (x,))[0] for x in (0, 1)]
        if vals[0] == vals[1]:
            ties.append(i)
    return {
        "depth": depth,
        "seed": seed,
        "payoffs": payoffs,
        "play": list(play),
        "value": p(play),
        "oracle_play": list(oracle_play),
        "oracle_value": value,
        "ties": ties,
        "agrees": list(play) == list(oracle_play) and p(play) == value,
    }


def random_predicate(modulus: int, seed: int) -> dict:
    rng = random.Random(seed)
    return {"modulus": modulus, "table": [rng.randrange(2) for _ in range(2 ** modulus)]}


def demo_search(predicate_spec: dict, fuel: int | None = None) -> dict:
    """``predicate_spec`` is ``{"modulus": d, "table": [...]}`` with 2**d
    boolean entries indexed big-endian by the first d positions."""
    d = predicate_spec["modulus"]
    table = list(predicate_spec["table"])
    q = table_outcome(table, 2, d)
    alpha = ips(0, lambda n: hilbert_selection, q, fuel=Fuel(fuel))
    witness = alpha.take(d)
    holds = q(alpha)
    satisfiable = [list(t) for t in itertools.product((0, 1), repeat=d)
                   if table[int("".join(map(str, t)) or "0", 2)] == 1]
    return {
        "modulus": d,
        "table": table,
        "witness": list(witness),
        "holds": holds,
        "brute_force_witnesses": len(satisfiable),
        "agrees": (holds == 1) == bool(satisfiable),
    }
