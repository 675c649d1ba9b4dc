"""Acceptance criteria runner: oracle sweeps, structural bounds, scaling smoke test."""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .dp import Slice, dp_join, optimize, solve_klcp, solve_optimize
from .graph import Graph, LCPError, evaluate_coloring
from .instances import generate, random_decomposition
from .kernel import kernelize
from .oracle import brute_force_mu
from .treedecomp import (
    TreeDecomposition,
    bounded_width_or_coloring,
    check_nice,
    make_nice,
    validate,
    width,
)


@dataclass
class AcceptanceConfig:
    seed: int = 20240611
    exhaustive_n: int = 6
    exhaustive_ks: tuple = (0, 1, 2, 3, 4)
    exhaustive_budget_s: float = 600.0
    random_samples: int = 500
    random_n: tuple = (7, 14)
    random_ks: tuple = (0, 1, 2, 3, 4, 5)
    random_budget_s: float = 300.0
    width_samples: int = 500
    width_max_n: int = 40
    width_max_k: int = 6
    nice_samples: int = 200
    nice_max_n: int = 30
    scaling_n: int = 200
    scaling_m: int = 400
    scaling_ks: tuple = (1, 2, 3, 4, 5, 6)
    scaling_fit_ks: tuple = (1, 2, 3)
    scaling_factor: float = 10.0
    scaling_repeats: int = 5
    join: Callable = dp_join


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    counterexample: object = None
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        out = f"{mark} [{self.number}] {self.name}: {self.detail} ({self.seconds:.1f}s)"
        if self.counterexample is not None:
            out += f"\n    counterexample: {self.counterexample}"
        return out


@dataclass
class SweepRecord:
    """Everything criteria 1-3 and 6 need from one oracle sweep."""

    checked: int = 0
    mismatches: list = field(default_factory=list)
    bad_witnesses: list = field(default_factory=list)
    kernel_no_instances: int = 0
    kernel_size_violations: list = field(default_factory=list)
    kernel_verdict_changes: list = field(default_factory=list)
    budget_checks: int = 0
    budget_violations: list = field(default_factory=list)
    seconds: float = 0.0


def _describe(g: Graph) -> str:
    return f"n={g.n} edges={g.edge_list()}"


def sweep(graphs, ks, join=dp_join) -> SweepRecord:
    rec = SweepRecord()
    t0 = time.perf_counter()
    for g in graphs:
        mu, _ = brute_force_mu(g)
        kernel_mu: dict = {}
        for k in ks:
            rec.checked += 1
            try:
                res = solve_klcp(g, k, want_witness=True, join=join)
            except LCPError as exc:
                rec.mismatches.append((_describe(g), k, mu, f"error: {exc}"))
                continue
            if res.verdict != (mu >= k):
                rec.mismatches.append((_describe(g), k, mu, res.verdict, res.decided_by))
            if res.verdict and (res.witness is None or evaluate_coloring(g, res.witness).mu < k):
                rec.bad_witnesses.append((_describe(g), k))
            if "table_entries" in res.stats:
                rec.budget_checks += 1
                if res.stats["table_entries"] > res.stats["entry_budget"]:
                    rec.budget_violations.append((_describe(g), k, res.stats["table_entries"], res.stats["entry_budget"]))
            if k < 1:
                continue
            kern, _ = kernelize(g, k)
            key = (kern.vertices, kern.m)
            if key not in kernel_mu:
                kernel_mu[key] = mu if kern == g else brute_force_mu(kern)[0]
            kmu = kernel_mu[key]
            if (kmu >= k) != (mu >= k):
                rec.kernel_verdict_changes.append((_describe(g), k, mu, kmu))
            if kmu < k:
                rec.kernel_no_instances += 1
                if kern.n > 7 * k:
                    rec.kernel_size_violations.append((_describe(g), k, kern.n))
    rec.seconds = time.perf_counter() - t0
    return rec


def exhaustive_graphs(n: int):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(range(1, n + 1), [p for i, p in enumerate(pairs) if mask >> i & 1])


def random_graphs(config: AcceptanceConfig):
    rng = random.Random(config.seed)
    lo, hi = config.random_n
    for _ in range(config.random_samples):
        n = rng.randint(lo, hi)
        m = rng.randint(0, n * (n - 1) // 2)
        yield generate("random-gnm", n, m, seed=rng.randrange(2**31))


def _oracle_result(number, name, rec: SweepRecord, budget_s: float) -> CriterionResult:
    ok = not rec.mismatches and not rec.bad_witnesses and rec.seconds <= budget_s
    detail = (
        f"{rec.checked} (graph, k) checks, {len(rec.mismatches)} verdict mismatches, "
        f"{len(rec.bad_witnesses)} bad witnesses, {rec.seconds:.1f}s of {budget_s:.0f}s budget"
    )
    cex = rec.mismatches[0] if rec.mismatches else (rec.bad_witnesses[0] if rec.bad_witnesses else None)
    return CriterionResult(number, name, ok, detail, cex, rec.seconds)


def criterion_1(config: AcceptanceConfig, rec: Optional[SweepRecord] = None) -> tuple[CriterionResult, SweepRecord]:
    if rec is None:
        rec = sweep(exhaustive_graphs(config.exhaustive_n), config.exhaustive_ks, config.join)
    name = f"oracle equivalence, all graphs on {config.exhaustive_n} vertices"
    return _oracle_result(1, name, rec, config.exhaustive_budget_s), rec


def criterion_2(config: AcceptanceConfig, rec: Optional[SweepRecord] = None) -> tuple[CriterionResult, SweepRecord]:
    if rec is None:
        rec = sweep(random_graphs(config), config.random_ks, config.join)
    name = f"oracle equivalence, {config.random_samples} random graphs n in {list(config.random_n)}"
    return _oracle_result(2, name, rec, config.random_budget_s), rec


def criterion_3(records: list) -> CriterionResult:
    t0 = time.perf_counter()
    no_inst = sum(r.kernel_no_instances for r in records)
    size_bad = [x for r in records for x in r.kernel_size_violations]
    changed = [x for r in records for x in r.kernel_verdict_changes]
    ok = not size_bad and not changed and no_inst > 0
    detail = f"{no_inst} reduced No-instances, {len(size_bad)} exceed 7k, {len(changed)} verdict changes"
    cex = size_bad[0] if size_bad else (changed[0] if changed else None)
    return CriterionResult(3, "kernel has at most 7k vertices and preserves the answer", ok, detail, cex,
                           time.perf_counter() - t0)


def criterion_4(config: AcceptanceConfig) -> CriterionResult:
    rng = random.Random(config.seed + 4)
    t0 = time.perf_counter()
    bad = []
    counts = {"coloring": 0, "decomposition": 0}
    for _ in range(config.width_samples):
        n = rng.randint(1, config.width_max_n)
        m = rng.randint(0, min(n * (n - 1) // 2, 3 * n))
        k = rng.randint(1, config.width_max_k)
        g = generate("random-gnm", n, m, seed=rng.randrange(2**31))
        out = bounded_width_or_coloring(g, k)
        if out.coloring is not None:
            counts["coloring"] += 1
            prof = evaluate_coloring(g, out.coloring)
            if prof.red_edges < k or prof.blue_edges < k:
                bad.append((_describe(g), k, "coloring", prof))
        else:
            counts["decomposition"] += 1
            report = validate(g, out.decomposition)
            if not report.ok or width(out.decomposition) > 2 * k:
                bad.append((_describe(g), k, "decomposition", width(out.decomposition), report.violations[:3]))
    detail = f"{config.width_samples} graphs ({counts['coloring']} colorings, {counts['decomposition']} decompositions), {len(bad)} violations"
    return CriterionResult(4, "width lemma: coloring or width <= 2k", not bad, detail, bad[0] if bad else None,
                           time.perf_counter() - t0)


def criterion_5(config: AcceptanceConfig) -> CriterionResult:
    rng = random.Random(config.seed + 5)
    t0 = time.perf_counter()
    bad = []
    worst = 0.0
    for _ in range(config.nice_samples):
        n = rng.randint(0, config.nice_max_n)
        m = rng.randint(0, min(n * (n - 1) // 2, 3 * n))
        g = generate("random-gnm", n, m, seed=rng.randrange(2**31))
        td = random_decomposition(g, rng)
        nt = make_nice(g, td)
        bound = 4 * n if n > 1 else max(4 * n, 4)
        worst = max(worst, len(nt.bags) / max(bound, 1))
        problems = validate(g, nt).violations + check_nice(nt)
        if width(nt) != width(td) or len(nt.bags) > bound or problems:
            bad.append((_describe(g), width(td), width(nt), len(nt.bags), bound, problems[:3]))
    detail = f"{config.nice_samples} decompositions, {len(bad)} violations, worst nodes/4n = {worst:.2f}"
    return CriterionResult(5, "nice form keeps width and has at most 4n nodes", not bad, detail,
                           bad[0] if bad else None, time.perf_counter() - t0)


def criterion_6(records: list) -> CriterionResult:
    checks = sum(r.budget_checks for r in records)
    bad = [x for r in records for x in r.budget_violations]
    detail = f"{checks} DP runs checked against nodes*2^(t+1)*(k+1)^2, {len(bad)} over budget"
    return CriterionResult(6, "DP table within entry budget", not bad and checks > 0, detail, bad[0] if bad else None)


CANONICAL = [("K4", ("disjoint-cliques", 1, 4)), ("C6", ("cycle", 6)), ("C8", ("cycle", 8)), ("P6", ("path", 6))]
CANONICAL += [(f"K1,{n}", ("star", n)) for n in range(1, 11)]
CANONICAL += [("2K4", ("disjoint-cliques", 2, 4))]
# hand-checked values; the oracle is still the arbiter
EXPECTED = {"K4": 1, "C6": 2, "C8": 3, "P6": 2, "2K4": 6, **{f"K1,{n}": 0 for n in range(1, 11)}}


def criterion_7(config: AcceptanceConfig) -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    parts = []
    for name, (family, *params) in CANONICAL:
        g = generate(family, *params)
        oracle, _ = brute_force_mu(g)
        mu, f = optimize(g)
        single = TreeDecomposition.make({0: g.vertices})
        mu_td, f_td = solve_optimize(g, make_nice(g, single))
        ok = mu == oracle == mu_td == EXPECTED[name]
        ok = ok and evaluate_coloring(g, f).mu == mu and evaluate_coloring(g, f_td).mu == mu_td
        if not ok:
            bad.append((name, oracle, mu, mu_td, EXPECTED[name]))
        parts.append(f"{name}={mu}")
    return CriterionResult(7, "canonical family values", not bad, ", ".join(parts), bad[0] if bad else None,
                           time.perf_counter() - t0)


def _best_time(fn, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def criterion_8(config: AcceptanceConfig) -> CriterionResult:
    t0 = time.perf_counter()
    g = generate("random-gnm", config.scaling_n, config.scaling_m, seed=config.seed)
    times = {}
    verdicts = {}
    for k in config.scaling_ks:
        res = solve_klcp(g, k, want_witness=True)
        verdicts[k] = (res.verdict, res.decided_by)
        if res.verdict and evaluate_coloring(g, res.witness).mu < k:
            return CriterionResult(8, "scaling smoke test", False, f"bad witness at k={k}", None, 0.0)
        times[k] = _best_time(lambda: solve_klcp(g, k, want_witness=True), config.scaling_repeats)
    fit = [math.log(times[k]) - k * math.log(4) for k in config.scaling_fit_ks]
    c = math.exp(float(np.mean(fit)))
    ratios = {k: times[k] / (c * 4**k) for k in config.scaling_ks}
    ok = all(r <= config.scaling_factor for r in ratios.values())
    detail = ", ".join(f"k={k}: {times[k] * 1e3:.2f}ms ({verdicts[k][1]}, x{ratios[k]:.3g} of fit)" for k in config.scaling_ks)
    worst = max(ratios, key=ratios.get)
    return CriterionResult(8, f"scaling on random-gnm({config.scaling_n}, {config.scaling_m})", ok, detail,
                           None if ok else (worst, ratios[worst]), time.perf_counter() - t0)


def run_acceptance(config: Optional[AcceptanceConfig] = None, only: Optional[set] = None,
                   echo: Optional[Callable[[str], None]] = None) -> list[CriterionResult]:
    """Run the criteria in order; `only` restricts to a set of criterion numbers."""
    config = config or AcceptanceConfig()
    want = only or set(range(1, 9))
    results = []
    records = []

    def emit(r):
        results.append(r)
        if echo:
            echo(r.line())

    if want & {1, 3, 6}:
        r1, rec1 = criterion_1(config)
        records.append(rec1)
        if 1 in want:
            emit(r1)
    if want & {2, 3, 6}:
        r2, rec2 = criterion_2(config)
        records.append(rec2)
        if 2 in want:
            emit(r2)
    if 3 in want:
        emit(criterion_3(records))
    if 4 in want:
        emit(criterion_4(config))
    if 5 in want:
        emit(criterion_5(config))
    if 6 in want:
        emit(criterion_6(records))
    if 7 in want:
        emit(criterion_7(config))
    if 8 in want:
        emit(criterion_8(config))
    return results


def join_without_offset(bag, left: Slice, right: Slice, g: Graph, k: int) -> Slice:
    """Deliberately broken join that double-counts edges inside the bag."""
    bag = tuple(sorted(bag))
    rows = left.best.shape[0]
    r = np.arange(k + 1)
    out = np.full((rows, k + 1), -1, dtype=left.best.dtype)
    for rh in range(k + 1):
        lb = left.best[:, rh]
        rj = np.clip(r[None, :] - rh, 0, k)
        rb = np.take_along_axis(right.best, rj, axis=1)
        cand = np.where((lb >= 0)[:, None] & (rb >= 0), np.minimum(lb[:, None] + rb, k), -1)
        np.maximum(out, cand, out=out)
    return Slice(bag, out)


MUTANTS = {"join-no-offset": join_without_offset}
