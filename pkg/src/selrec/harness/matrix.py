"""The equivalence-check matrix: every translation against its native scheme."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .. import barrec, interdef
from ..barrec import Fuel
from ..errors import FuelExhausted, SelrecError
from ..seqcore import Seq
from .instances import Instance, InstanceSpec


@dataclass(frozen=True)
class Pair:
    """A translation, the native scheme it targets, and how to call both."""

    name: str
    native_name: str
    derived: Callable[..., Any]
    native: Callable[..., Any]
    call: Callable[[Callable, Instance, Fuel], Any]


def _eps_call(f, inst, fuel):
    return f(inst.n, inst.sel.at, inst.l, inst.q, fuel=fuel)


def _EPS_call(f, inst, fuel):
    return f(inst.start, inst.sel.at_path, inst.l, inst.q, fuel=fuel)


def _EPQ_call(f, inst, fuel):
    return f(inst.start, inst.quant.at_path, inst.l, inst.q, fuel=fuel)


def _SBR_call(f, inst, fuel):
    return f(inst.start, inst.sbr_sel, inst.omega, fuel=fuel)


def _IPS_call(f, inst, fuel):
    return f(inst.start, inst.sel.at_path, inst.q, fuel=fuel)


def _MBR_call(f, inst, fuel):
    return f(inst.start, inst.skew.at_path, inst.q, fuel=fuel)


def _mbr_call(f, inst, fuel):
    return f(inst.n, inst.skew.at, inst.q, fuel=fuel)


PAIRS: dict[str, Pair] = {p.name: p for p in (
    Pair("eps_via_epq", "eps", interdef.eps_via_epq, barrec.eps, _eps_call),
    Pair("EPS_via_eps", "EPS", interdef.EPS_via_eps, barrec.EPS, _EPS_call),
    Pair("EPQ_via_BR", "EPQ", interdef.EPQ_via_BR, barrec.EPQ, _EPQ_call),
    Pair("SBR_via_EPS", "SBR", interdef.SBR_via_EPS, barrec.SBR, _SBR_call),
    Pair("IPS_via_ips", "IPS", interdef.IPS_via_ips, barrec.IPS, _IPS_call),
    Pair("MBR_via_mbr", "MBR", interdef.MBR_via_mbr, barrec.MBR, _MBR_call),
    Pair("MBR_prime_via_MBR", "MBR_prime", interdef.MBR_prime_via_MBR,
         barrec.MBR_prime, _MBR_call),
    Pair("MBR_via_MBR_prime", "MBR", interdef.MBR_via_MBR_prime, barrec.MBR, _MBR_call),
    Pair("mbr_via_ips", "mbr", interdef.mbr_via_ips, barrec.mbr, _mbr_call),
    Pair("IPS_via_MBR", "IPS", interdef.IPS_via_MBR, barrec.IPS, _IPS_call),
    Pair("EPQ_via_IPS", "EPQ", interdef.EPQ_via_IPS, barrec.EPQ, _EPQ_call),
)}


@dataclass
class CheckReport:
    pair: tuple
    instances: int = 0
    failures: list = field(default_factory=list)
    fuel_used: int = 0
    digest: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"pair": list(self.pair), "instances": self.instances,
                "failures": self.failures, "fuel_used": self.fuel_used,
                "digest": self.digest, "passed": self.passed}


def _observe(value: Any, depth: int) -> Any:
    """Finite observation of a result: a prefix for sequences, else the value."""
    if isinstance(value, Seq):
        return list(value.take(depth))
    return value


def _evaluate(pair: Pair, impl: Callable, inst: Instance, depth: int):
    """Returns (observation, fuel used); the observation is an error marker
    when evaluation fails."""
    fuel = Fuel(inst.fuel)
    try:
        obs = _observe(pair.call(impl, inst, fuel), depth)
    except FuelExhausted:
        return "FuelExhausted", fuel.used
    except SelrecError as exc:
        return f"{type(exc).__name__}: {exc}", fuel.used
    return obs, fuel.used


def _first_mismatch(expected, got):
    if isinstance(expected, list) and isinstance(got, list):
        for i, (a, b) in enumerate(zip(expected, got)):
            if a != b:
                return i
        return None if len(expected) == len(got) else min(len(expected), len(got))
    return None


def check_instance(pair: Pair, inst: Instance, depth: int,
                   derived: Callable | None = None) -> tuple[dict | None, int, Any]:
    """Returns (failure or None, fuel used, native observation)."""
    expected, used_n = _evaluate(pair, pair.native, inst, depth)
    got, used_d = _evaluate(pair, derived or pair.derived, inst, depth)
    ok = (expected == got and not isinstance(expected, str)
          and not isinstance(got, str))
    if ok:
        return None, used_n + used_d, expected
    index = _first_mismatch(expected, got)
    failure = {"seed": inst.spec.seed, "index": index,
               "expected": _jsonable(expected), "got": _jsonable(got)}
    return failure, used_n + used_d, expected


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (int, str, float, bool)) or v is None:
        return v
    return repr(v)


def check_equivalence(pair_name: str, instances: Iterable[InstanceSpec | Instance],
                      depth: int, *, derived: Callable | None = None) -> CheckReport:
    """Compare a translation with its native scheme on every instance.

    Sequence outputs are compared on their first ``depth`` positions, result
    outputs exactly.  Fuel exhaustion on either side counts as a failure.
    ``derived`` replaces the translation (used for mutation checks).  The
    report's digest fingerprints the native outputs.
    """
    pair = PAIRS[pair_name]
    report = CheckReport(pair=(pair.name, pair.native_name))
    h = hashlib.sha256()
    for item in instances:
        inst = item if isinstance(item, Instance) else item.build()
        failure, used, observed = check_instance(pair, inst, depth, derived)
        report.instances += 1
        report.fuel_used += used
        h.update(json.dumps(_jsonable(observed)).encode())
        if failure is not None:
            report.failures.append(failure)
    report.digest = h.hexdigest()[:16]
    return report


def _epq_call(f, inst, fuel):
    return f(inst.n, inst.quant.at, inst.l, inst.q, fuel=fuel)


def _ips_call(f, inst, fuel):
    return f(inst.n, inst.sel.at, inst.q, fuel=fuel)


def _BR_call(f, inst, fuel):
    return f(inst.start, inst.quant.at_path, inst.omega, inst.q, fuel=fuel)


# Native schemes by command-line name, each with its calling convention.
RECURSORS: dict[str, tuple[Callable, Callable]] = {
    "eps": (barrec.eps, _eps_call),
    "epq": (barrec.epq, _epq_call),
    "EPS": (barrec.EPS, _EPS_call),
    "EPQ": (barrec.EPQ, _EPQ_call),
    "ips": (barrec.ips, _ips_call),
    "IPS": (barrec.IPS, _IPS_call),
    "mbr": (barrec.mbr, _mbr_call),
    "MBR": (barrec.MBR, _MBR_call),
    "MBRprime": (barrec.MBR_prime, _MBR_call),
    "SBR": (barrec.SBR, _SBR_call),
    "BR": (barrec.BR, _BR_call),
}


def evaluate(recursor: str, inst: Instance, indices: int) -> tuple[Any, int]:
    """Run a native scheme on an instance; sequences are read on ``indices``
    positions.  Returns (observation, fuel used)."""
    impl, call = RECURSORS[recursor]
    fuel = Fuel(inst.fuel)
    return _observe(call(impl, inst, fuel), indices), fuel.used
