"""Instance documents: schema, validation, random generation, runtime objects.

An instance is a JSON object::

    {
      "x_card": 2, "r_card": 3, "start": [1],
      "selection_family":  {"kind": "argmin", "rank": [[2, 0, 1]], "order": [[1, 0]]},
      "quantifier_family": {"kind": "table", "tables": [[0, 1, 2, 0, 1, 2, 0, 1, 2]]},
      "skewed_family":     {"kind": "head", "selection": {"kind": "argmin"},
                            "tail": "shift"},
      "outcome": {"modulus": 2, "table": [0, 1, 2, 1]},
      "length":  {"kind": "identity"},
      "omega":   {"modulus": 1, "bound": 2, "table": [2, 0]},
      "fuel": 100000, "depth": 20
    }

Selection specs (also used inside quantifier and skewed specs):

* ``argmin``: minimise ``rank[p(x)]``, ties to the earliest x of ``order``.
  ``rank``/``order`` are optional lists of permutations, cycled by position.
* ``table``: ``tables`` is a list of tables, cycled by position; each maps a
  predicate graph code (``sum p(x) * r_card**x``) to a value.
* ``parity``: ``even``/``odd`` sub-specs; the dependent view picks by the
  parity of the sum of the history, the positional view by position parity.

Quantifier specs use the same kinds; ``argmin`` means the quantifier
attained by that selection and ``table`` entries are results.  Skewed specs
are ``head`` (a selection spec for the first value plus a ``tail`` of
``zero``, ``repeat`` or ``shift``), ``const`` (fixed ``values``, cycled) or
``parity``.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Any

from ..barrec import DEFAULT_FUEL, LengthFn, OmegaFn
from ..errors import ParseError, ValidationError
from ..selection import (Family, argmin_selection, sel_to_quant, table_quantifier,
                         table_selection)
from ..seqcore import Seq, concat, table_outcome

MAX_X = 4
MAX_R = 8
MAX_MODULUS = 4
DEFAULT_DEPTH = 20

SELECTION_KINDS = ("argmin", "table", "parity")
SKEW_KINDS = ("head", "const", "parity")
TAILS = ("zero", "repeat", "shift")


@dataclass
class InstanceSpec:
    x_card: int
    r_card: int
    start: list
    selection_family: dict
    quantifier_family: dict
    skewed_family: dict
    outcome: dict
    length: dict
    omega: dict
    fuel: int = DEFAULT_FUEL
    depth: int = DEFAULT_DEPTH
    seed: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["seed"] is None:
            del d["seed"]
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def build(self) -> "Instance":
        return Instance(self)


# --- validation --------------------------------------------------------------

def _nat(d: dict, key: str, where: str, lo: int = 0, hi: int | None = None) -> int:
    if key not in d:
        raise ValidationError(f"{where}.{key}" if where else key, "missing")
    v = d[key]
    name = f"{where}.{key}" if where else key
    if not isinstance(v, int) or isinstance(v, bool):
        raise ValidationError(name, f"expected an integer, got {v!r}")
    if v < lo or (hi is not None and v > hi):
        raise ValidationError(name, f"{v} outside [{lo}, {hi if hi is not None else 'inf'}]")
    return v


def _int_list(v: Any, name: str, length: int | None, lo: int, hi: int | None) -> None:
    if not isinstance(v, list):
        raise ValidationError(name, "expected a list")
    if length is not None and len(v) != length:
        raise ValidationError(name, f"expected {length} entries, got {len(v)}")
    for i, e in enumerate(v):
        if not isinstance(e, int) or isinstance(e, bool) or e < lo or (hi is not None and e > hi):
            raise ValidationError(f"{name}[{i}]", f"bad entry {e!r}")


def _perm_list(v: Any, name: str, size: int) -> None:
    if not isinstance(v, list) or not v:
        raise ValidationError(name, "expected a non-empty list of permutations")
    for i, perm in enumerate(v):
        if not isinstance(perm, list) or sorted(perm) != list(range(size)):
            raise ValidationError(f"{name}[{i}]", f"not a permutation of range({size})")


def _check_selection(spec: Any, name: str, x_card: int, r_card: int, *,
                     results: bool = False, nested: bool = False) -> None:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError(name, "expected an object with a 'kind'")
    kind = spec["kind"]
    if kind == "argmin":
        if "rank" in spec:
            _perm_list(spec["rank"], f"{name}.rank", r_card)
        if "order" in spec:
            _perm_list(spec["order"], f"{name}.order", x_card)
    elif kind == "table":
        tables = spec.get("tables")
        if not isinstance(tables, list) or not tables:
            raise ValidationError(f"{name}.tables", "expected a non-empty list of tables")
        hi = (r_card if results else x_card) - 1
        for i, t in enumerate(tables):
            _int_list(t, f"{name}.tables[{i}]", r_card ** x_card, 0, hi)
    elif kind == "parity" and not nested:
        for side in ("even", "odd"):
            if side not in spec:
                raise ValidationError(f"{name}.{side}", "missing")
            _check_selection(spec[side], f"{name}.{side}", x_card, r_card,
                             results=results, nested=True)
    else:
        raise ValidationError(f"{name}.kind", f"unknown kind {kind!r}")


def _check_skewed(spec: Any, name: str, x_card: int, r_card: int, nested: bool = False) -> None:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError(name, "expected an object with a 'kind'")
    kind = spec["kind"]
    if kind == "head":
        _check_selection(spec.get("selection"), f"{name}.selection", x_card, r_card)
        if spec.get("tail", "zero") not in TAILS:
            raise ValidationError(f"{name}.tail", f"expected one of {TAILS}")
    elif kind == "const":
        vals = spec.get("values")
        _int_list(vals, f"{name}.values", None, 0, x_card - 1)
        if not vals:
            raise ValidationError(f"{name}.values", "must be non-empty")
    elif kind == "parity" and not nested:
        for side in ("even", "odd"):
            if side not in spec:
                raise ValidationError(f"{name}.{side}", "missing")
            _check_skewed(spec[side], f"{name}.{side}", x_card, r_card, nested=True)
    else:
        raise ValidationError(f"{name}.kind", f"unknown kind {kind!r}")


def validate(doc: Any) -> InstanceSpec:
    """Check every invariant of an instance document and build the :class:`InstanceSpec`."""
    if not isinstance(doc, dict):
        raise ValidationError("<root>", "expected an object")
    x_card = _nat(doc, "x_card", "", 1, MAX_X)
    r_card = _nat(doc, "r_card", "", 1, MAX_R)

    start = doc.get("start", [])
    _int_list(start, "start", None, 0, x_card - 1)

    for key in ("selection_family", "quantifier_family", "skewed_family",
                "outcome", "length", "omega"):
        if key not in doc:
            raise ValidationError(key, "missing")
    _check_selection(doc["selection_family"], "selection_family", x_card, r_card)
    _check_selection(doc["quantifier_family"], "quantifier_family", x_card, r_card,
                     results=True)
    _check_skewed(doc["skewed_family"], "skewed_family", x_card, r_card)

    outcome = doc["outcome"]
    if not isinstance(outcome, dict):
        raise ValidationError("outcome", "expected an object")
    d = _nat(outcome, "modulus", "outcome", 0, MAX_MODULUS)
    _int_list(outcome.get("table"), "outcome.table", x_card ** d, 0, r_card - 1)

    length = doc["length"]
    if not isinstance(length, dict) or length.get("kind") not in ("identity", "table"):
        raise ValidationError("length.kind", "expected 'identity' or 'table'")
    if length["kind"] == "table":
        _int_list(length.get("table"), "length.table", r_card, 0, None)

    omega = doc["omega"]
    if not isinstance(omega, dict):
        raise ValidationError("omega", "expected an object")
    m = _nat(omega, "modulus", "omega", 0, MAX_MODULUS)
    bound = _nat(omega, "bound", "omega", 0)
    _int_list(omega.get("table"), "omega.table", x_card ** m, 0, None)
    for i, v in enumerate(omega["table"]):
        if v > bound:
            raise ValidationError(f"omega.table[{i}]", f"value {v} exceeds bound {bound}")

    fuel = _nat(doc, "fuel", "", 0) if "fuel" in doc else DEFAULT_FUEL
    depth = _nat(doc, "depth", "", 0) if "depth" in doc else DEFAULT_DEPTH
    seed = doc.get("seed")

    return InstanceSpec(x_card=x_card, r_card=r_card, start=list(start),
                        selection_family=doc["selection_family"],
                        quantifier_family=doc["quantifier_family"],
                        skewed_family=doc["skewed_family"],
                        outcome=outcome, length=length, omega=omega,
                        fuel=fuel, depth=depth, seed=seed)


def parse_instance(text: str) -> InstanceSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return validate(doc)


def load_instance(path) -> InstanceSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# --- random generation -------------------------------------------------------

@dataclass
class RandomParams:
    x_cards: tuple = (2, 3)
    r_cards: tuple = (2, 3)
    max_modulus: int = 3
    max_bound: int = 4
    max_start: int = 2
    fuel: int = DEFAULT_FUEL
    depth: int = DEFAULT_DEPTH
    kinds: tuple = SELECTION_KINDS
    extra: dict = field(default_factory=dict)


def _perm(rng: random.Random, n: int) -> list:
    p = list(range(n))
    rng.shuffle(p)
    return p


def _random_selection(rng, x_card, r_card, kinds, results=False, nested=False) -> dict:
    allowed = [k for k in kinds if not (nested and k == "parity")] or ["argmin", "table"]
    kind = rng.choice(allowed)
    cycle = rng.randint(1, 2)
    if kind == "argmin":
        return {"kind": "argmin",
                "rank": [_perm(rng, r_card) for _ in range(cycle)],
                "order": [_perm(rng, x_card) for _ in range(cycle)]}
    if kind == "table":
        hi = (r_card if results else x_card) - 1
        return {"kind": "table",
                "tables": [[rng.randint(0, hi) for _ in range(r_card ** x_card)]
                           for _ in range(cycle)]}
    return {"kind": "parity",
            "even": _random_selection(rng, x_card, r_card, kinds, results, True),
            "odd": _random_selection(rng, x_card, r_card, kinds, results, True)}


def _random_skewed(rng, x_card, r_card, kinds, nested=False) -> dict:
    kind = rng.choice(["head", "head", "const"] + ([] if nested else ["parity"]))
    if kind == "head":
        return {"kind": "head",
                "selection": _random_selection(rng, x_card, r_card, kinds, nested=True),
                "tail": rng.choice(TAILS)}
    if kind == "const":
        return {"kind": "const",
                "values": [rng.randrange(x_card) for _ in range(rng.randint(1, 3))]}
    return {"kind": "parity",
            "even": _random_skewed(rng, x_card, r_card, kinds, True),
            "odd": _random_skewed(rng, x_card, r_card, kinds, True)}


def random_instance(seed: int, params: RandomParams | None = None) -> InstanceSpec:
    """Deterministic pseudo-random instance; always passes validation."""
    params = params or RandomParams()
    rng = random.Random(seed)
    x_card = rng.choice(params.x_cards)
    r_card = rng.choice(params.r_cards)
    d = rng.randint(0, params.max_modulus)
    bound = rng.randint(0, params.max_bound)
    m = rng.randint(0, min(params.max_modulus, 2))
    if rng.random() < 0.5:
        length = {"kind": "identity"}
    else:
        length = {"kind": "table",
                  "table": [rng.randint(0, params.max_bound) for _ in range(r_card)]}
    doc = {
        "x_card": x_card,
        "r_card": r_card,
        "start": [rng.randrange(x_card) for _ in range(rng.randint(0, params.max_start))],
        "selection_family": _random_selection(rng, x_card, r_card, params.kinds),
        "quantifier_family": _random_selection(rng, x_card, r_card, params.kinds,
                                               results=True),
        "skewed_family": _random_skewed(rng, x_card, r_card, params.kinds),
        "outcome": {"modulus": d,
                    "table": [rng.randrange(r_card) for _ in range(x_card ** d)]},
        "length": length,
        "omega": {"modulus": m, "bound": bound,
                  "table": [rng.randint(0, bound) for _ in range(x_card ** m)]},
        "fuel": params.fuel,
        "depth": params.depth,
        "seed": seed,
    }
    doc.update(params.extra)
    return validate(doc)


# --- runtime objects ---------------------------------------------------------

def _cycled(items: list, n: int):
    return items[n % len(items)]


def _selection_at(spec: dict, n: int, x_card: int, r_card: int):
    kind = spec["kind"]
    if kind == "argmin":
        rank = _cycled(spec["rank"], n) if "rank" in spec else None
        order = _cycled(spec["order"], n) if "order" in spec else None
        return argmin_selection(x_card, rank, order)
    if kind == "table":
        return table_selection(_cycled(spec["tables"], n), x_card, r_card)
    raise ValueError(f"no positional member for kind {kind!r}")


def selection_family(spec: dict, x_card: int, r_card: int) -> Family:
    if spec["kind"] == "parity":
        even = selection_family(spec["even"], x_card, r_card)
        odd = selection_family(spec["odd"], x_card, r_card)
        return Family(
            at=lambda n: (odd if n % 2 else even).at(n),
            at_path=lambda s: (odd if sum(s) % 2 else even).at(len(s)),
        )
    cache: dict = {}

    def at(n):
        if n not in cache:
            cache[n] = _selection_at(spec, n, x_card, r_card)
        return cache[n]
    return Family(at=at)


def quantifier_family(spec: dict, x_card: int, r_card: int) -> Family:
    kind = spec["kind"]
    if kind == "parity":
        even = quantifier_family(spec["even"], x_card, r_card)
        odd = quantifier_family(spec["odd"], x_card, r_card)
        return Family(
            at=lambda n: (odd if n % 2 else even).at(n),
            at_path=lambda s: (odd if sum(s) % 2 else even).at(len(s)),
        )
    if kind == "table":
        return Family(at=lambda n: table_quantifier(_cycled(spec["tables"], n),
                                                   x_card, r_card))
    sels = selection_family(spec, x_card, r_card)
    return Family(at=lambda n: sel_to_quant(sels.at(n)))


def _tail(kind: str, x: int, x_card: int, zero: int = 0) -> Seq:
    if kind == "zero":
        return Seq(lambda j: zero)
    if kind == "repeat":
        return Seq(lambda j: x)
    return Seq(lambda j: (x + j + 1) % x_card)


def skewed_family(spec: dict, x_card: int, r_card: int) -> Family:
    kind = spec["kind"]
    if kind == "parity":
        even = skewed_family(spec["even"], x_card, r_card)
        odd = skewed_family(spec["odd"], x_card, r_card)
        return Family(
            at=lambda n: (odd if n % 2 else even).at(n),
            at_path=lambda s: (odd if sum(s) % 2 else even).at(len(s)),
        )
    if kind == "const":
        vals = tuple(spec["values"])
        return Family(at=lambda n: (lambda p: Seq(lambda j: vals[(n + j) % len(vals)])))
    heads = selection_family(spec["selection"], x_card, r_card)
    tail = spec.get("tail", "zero")

    def at(n):
        choose = heads.at(n)

        def skewed(p):
            x = choose(p)
            return concat((x,), _tail(tail, x, x_card))
        return skewed
    return Family(at=at)


class Instance:
    """Runtime view of an :class:`InstanceSpec`."""

    def __init__(self, spec: InstanceSpec):
        self.spec = spec
        self.x_card = spec.x_card
        self.r_card = spec.r_card
        self.start = tuple(spec.start)
        self.n = len(self.start)
        self.fuel = spec.fuel
        self.depth = spec.depth
        self.sel = selection_family(spec.selection_family, spec.x_card, spec.r_card)
        self.quant = quantifier_family(spec.quantifier_family, spec.x_card, spec.r_card)
        self.skew = skewed_family(spec.skewed_family, spec.x_card, spec.r_card)
        self.q = table_outcome(spec.outcome["table"], spec.x_card, spec.outcome["modulus"])
        self.l = LengthFn(spec.length["table"] if spec.length["kind"] == "table" else None)
        om = spec.omega
        tab = table_outcome(om["table"], spec.x_card, om["modulus"])
        self.omega = OmegaFn(tab.fn, om["modulus"], om["bound"])

    def sbr_sel(self, s):
        """Selection for Spector's form: predicates return whole sequences,
        scored through the instance's outcome."""
        choose = self.sel.at_path(s)
        q = self.q
        return lambda p: choose(lambda x: q(p(x)))
