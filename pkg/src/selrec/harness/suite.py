"""Run property suites and the translation matrix, and write a report."""

from __future__ import annotations

import json
import os
import time
from dataclasses import asdict, dataclass

from ..barrec import default_fuel, run_deep
from . import properties
from .instances import DEFAULT_DEPTH, RandomParams, random_instance
from .matrix import PAIRS, check_equivalence

# Property suites that run by default, in report order.  "interdef" names the
# translation matrix; the encoding lemmas behind it form their own suite.
PROPERTY_SUITES = ("seqcore", "selection", "barrec", "encodings", "spector")
SUITE_NAMES = ("all",) + PROPERTY_SUITES + ("interdef",) + tuple(PAIRS)


def default_depth() -> int:
    return int(os.environ.get("SELREC_DEPTH", DEFAULT_DEPTH))


@dataclass
class SuiteConfig:
    suite: str = "all"
    seeds: int = 50
    depth: int | None = None
    fuel: int | None = None
    report: str | None = None

    def resolved(self) -> "SuiteConfig":
        if self.suite not in SUITE_NAMES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITE_NAMES)}")
        return SuiteConfig(self.suite, self.seeds,
                           default_depth() if self.depth is None else self.depth,
                           default_fuel() if self.fuel is None else self.fuel,
                           self.report)


def _property(name: str, cfg: SuiteConfig) -> properties.SuiteResult:
    if name == "seqcore":
        return properties.seqcore_suite(cfg.seeds)
    if name == "selection":
        return properties.selection_suite()
    if name == "barrec":
        return properties.barrec_suite(cfg.seeds, cfg.depth, cfg.fuel)
    if name == "encodings":
        res = properties.interdef_suite(cfg.seeds)
        eqs = properties.translation_equation_suite(cfg.seeds, cfg.depth, cfg.fuel)
        res.name = "encodings"
        res.checks += eqs.checks
        res.failures.extend(eqs.failures)
        return res
    return properties.spector_suite(cfg.seeds, cfg.fuel)


def _plan(cfg: SuiteConfig) -> tuple[list[str], list[str]]:
    if cfg.suite == "all":
        return list(PROPERTY_SUITES), list(PAIRS)
    if cfg.suite == "interdef":
        return [], list(PAIRS)
    if cfg.suite in PAIRS:
        return [], [cfg.suite]
    return [cfg.suite], []


def _run(cfg: SuiteConfig) -> dict:
    suites, pairs = _plan(cfg)
    timing: dict = {}
    start = time.perf_counter()

    suite_reports = []
    for name in suites:
        t0 = time.perf_counter()
        suite_reports.append(_property(name, cfg).to_dict())
        timing[name] = round(time.perf_counter() - t0, 4)

    params = RandomParams(fuel=cfg.fuel, depth=cfg.depth)
    instances = [random_instance(seed, params).build() for seed in range(cfg.seeds)] if pairs else []
    matrix_reports = []
    for name in pairs:
        t0 = time.perf_counter()
        matrix_reports.append(check_equivalence(name, instances, cfg.depth).to_dict())
        timing[name] = round(time.perf_counter() - t0, 4)
    timing["total"] = round(time.perf_counter() - start, 4)

    passed = all(r["passed"] for r in suite_reports + matrix_reports)
    return {
        "config": {k: v for k, v in asdict(cfg).items() if k != "report"},
        "suites": suite_reports,
        "matrix": matrix_reports,
        "passed": passed,
        "timing": timing,
    }


def run_suite(config: SuiteConfig | None = None) -> tuple[int, dict]:
    """Run the configured checks; returns (exit status, report).

    The report is written as JSON to ``config.report`` when set.  Everything
    except the ``timing`` field is a deterministic function of the config.
    """
    cfg = (config or SuiteConfig()).resolved()
    report = run_deep(_run, cfg)
    if cfg.report:
        with open(cfg.report, "w", encoding="utf-8") as fh:
            fh.write(dumps_report(report))
    return (0 if report["passed"] else 1), report


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}
