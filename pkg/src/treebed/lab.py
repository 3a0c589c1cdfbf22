"""Experiment harness: degree-template sweeps, extremal verification, reports.

A sweep is fully determined by its config (seeds included): rerunning one
yields a byte-identical JSON report.  Verdicts are conservative: only an
exhausted oracle may call a trial a counterexample candidate, and a pipeline
"found" that contradicts an exhausted oracle is a hard failure of the run.
"""

from __future__ import annotations

import hashlib
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from . import checks
from .corpus import all_trees_up_to, host_corpus
from .embed import brute_force_embed, validate
from .errors import EmbedNotFound, OracleBudget, PreconditionViolated
from .generators import (
    gen_random_graph_min_degree,
    gen_random_tree,
    gen_three_branch_tree,
    gen_two_cliques_apex,
    gen_two_cliques_apex_grown,
)
from .graph import Graph, second_neighbourhood

SCHEMA = "treebed/1"
DEFAULT_ENVELOPE_N = 16
DEFAULT_ENVELOPE_K = 12

CONJECTURES = ("2k3", "alpha", "k2_maxdeg", "second_nbhd")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a sweep needs; two equal configs replay to identical reports."""

    conjecture: str
    k_values: tuple[int, ...]
    tree_max_degree: int
    trials: int
    seed: int
    host_family: str = "random_min_degree"
    host_params: dict = field(default_factory=dict)
    tree_family: str = "random_tree"
    tree_params: dict = field(default_factory=dict)
    alpha: Optional[str] = None  # fraction string, used by the alpha template
    oracle_budget: int = 10**7
    envelope_n: int = DEFAULT_ENVELOPE_N
    envelope_k: int = DEFAULT_ENVELOPE_K
    # shifts the template's min-degree floor; -1 reproduces the tight hosts
    min_degree_offset: int = 0
    extremal_mix: bool = False

    def __post_init__(self):
        if self.conjecture not in CONJECTURES:
            raise PreconditionViolated(f"unknown conjecture id {self.conjecture!r}")
        if not self.k_values or self.trials < 0:
            raise PreconditionViolated("need a nonempty k range and trials >= 0")

    def to_jsonable(self) -> dict:
        d = asdict(self)
        d["k_values"] = list(self.k_values)
        return d

    @classmethod
    def from_jsonable(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        d["k_values"] = tuple(d["k_values"])
        return cls(**d)

    def digest(self) -> str:
        payload = json.dumps(self.to_jsonable(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class TrialRecord:
    trial_index: int
    trial_seed: int
    instance: str  # which distribution produced the pair (plants are labelled)
    k: int
    host_n: int
    host_edges: int
    tree_edges: int
    template_ok: bool
    degree_checks: dict
    pipeline_stages: list  # [stage, outcome] pairs in attempt order
    pipeline_found: bool
    oracle_status: str  # found | not_found | budget_exhausted | skipped
    oracle_nodes: int
    verdict: str  # embedded | counterexample-candidate | inconclusive
    consistency_failure: bool
    wall_ms: int = 0  # excluded from canonical reports; kept for live inspection

    def to_jsonable(self, include_timing: bool = False) -> dict:
        d = {
            "trial_index": self.trial_index,
            "trial_seed": self.trial_seed,
            "instance": self.instance,
            "k": self.k,
            "host_n": self.host_n,
            "host_edges": self.host_edges,
            "tree_edges": self.tree_edges,
            "template_ok": self.template_ok,
            "degree_checks": self.degree_checks,
            "pipeline_stages": self.pipeline_stages,
            "pipeline_found": self.pipeline_found,
            "oracle_status": self.oracle_status,
            "oracle_nodes": self.oracle_nodes,
            "verdict": self.verdict,
            "consistency_failure": self.consistency_failure,
        }
        if include_timing:
            d["wall_ms"] = self.wall_ms
        return d


# ---------------------------------------------------------------------------
# Degree templates


def template_check(
    conjecture: str, g: Graph, k: int, alpha: Optional[Fraction], min_offset: int = 0
) -> dict:
    """Evaluate the conjecture's degree demands on a host; all exact counts.

    min_offset shifts the minimum-degree floor (a sweep may deliberately run
    one below the conjecture to surface tight hosts).
    """
    dmin, dmax = g.min_degree(), g.max_degree()
    if conjecture == "2k3":
        return {
            "min_degree": dmin,
            "max_degree": dmax,
            "min_ok": dmin >= (2 * k) // 3 + min_offset,
            "max_ok": dmax >= k,
        }
    if conjecture == "alpha":
        if alpha is None:
            raise PreconditionViolated("alpha template needs alpha")
        return {
            "min_degree": dmin,
            "max_degree": dmax,
            "min_ok": dmin >= (1 + alpha) * k / 2 + min_offset,
            "max_ok": dmax >= 2 * (1 - alpha) * k,
        }
    if conjecture == "k2_maxdeg":
        raise PreconditionViolated("k2_maxdeg template needs the tree bound; use template_check_tree")
    if conjecture == "second_nbhd":
        best = False
        for x in range(g.n):
            if g.degree(x) >= Fraction(4 * k, 3) and len(second_neighbourhood(g, x)) >= Fraction(4 * k, 3):
                best = True
                break
        return {
            "min_degree": dmin,
            "min_ok": dmin >= Fraction(k, 2) + min_offset,
            "witness_vertex_ok": best,
            "max_ok": best,
        }
    raise PreconditionViolated(f"unknown conjecture {conjecture!r}")


def template_check_tree(g: Graph, k: int, tree_max_degree: int, min_offset: int = 0) -> dict:
    dmin, dmax = g.min_degree(), g.max_degree()
    return {
        "min_degree": dmin,
        "max_degree": dmax,
        "min_ok": dmin >= Fraction(k, 2) + min_offset,
        "max_ok": dmax >= 2 * (1 - Fraction(1, tree_max_degree)) * k,
    }


def _template_for(cfg: ExperimentConfig, g: Graph, k: int) -> dict:
    if cfg.conjecture == "k2_maxdeg":
        return template_check_tree(g, k, cfg.tree_max_degree, cfg.min_degree_offset)
    alpha = Fraction(cfg.alpha) if cfg.alpha else None
    return template_check(cfg.conjecture, g, k, alpha, cfg.min_degree_offset)


def _is_planted_trial(cfg: ExperimentConfig, k: int, idx: int) -> bool:
    return cfg.extremal_mix and k % 3 == 0 and idx % 5 == 0


def _host_for_trial(cfg: ExperimentConfig, k: int, trial_seed: int, rng: random.Random) -> Graph:
    """Build a host aimed at the template (repairs may still miss; the trial
    then counts as template-violating and is skipped)."""
    if cfg.conjecture == "2k3":
        delta = (2 * k) // 3 + cfg.min_degree_offset
        want_max = k
    elif cfg.conjecture == "alpha":
        alpha = Fraction(cfg.alpha or "1/5")
        delta = int(-(-((1 + alpha) * k) // 2))
        want_max = int(-(-2 * (1 - alpha) * k // 1))
    elif cfg.conjecture == "k2_maxdeg":
        delta = -(-k // 2)
        want_max = int(-(-2 * (1 - Fraction(1, cfg.tree_max_degree)) * k // 1))
    else:
        delta = -(-k // 2)
        want_max = int(-(-Fraction(4 * k, 3) // 1))
    n_hi = min(cfg.host_params.get("n_hi", cfg.envelope_n), cfg.envelope_n)
    # the hub needs want_max neighbours, so aim the order above it when possible
    n_lo = cfg.host_params.get("n_lo", max(k + 1, min(want_max + 1, n_hi)))
    n = rng.randrange(n_lo, max(n_lo, n_hi) + 1)
    delta = min(delta, n - 1)
    g = gen_random_graph_min_degree(n, delta, trial_seed)
    if g.max_degree() < want_max and want_max <= n - 1:
        # lift one hub to the max-degree demand
        hub = max(range(n), key=lambda v: (g.degree(v), -v))
        adj = {v: set(g.neighbors(v)) for v in range(n)}
        others = [v for v in range(n) if v != hub and v not in adj[hub]]
        rng2 = random.Random(repr(("hub", trial_seed)))
        rng2.shuffle(others)
        for v in others:
            if len(adj[hub]) >= want_max:
                break
            adj[hub].add(v)
            adj[v].add(hub)
        g = Graph(n, ((u, v) for u in range(n) for v in adj[u] if u < v))
    return g


def run_trial(cfg: ExperimentConfig, idx: int) -> TrialRecord:
    import time as _time

    t0 = _time.monotonic()
    trial_seed = cfg.seed * 1_000_003 + idx
    rng = random.Random(repr(("trial", cfg.seed, idx)))
    k = cfg.k_values[idx % len(cfg.k_values)]
    if _is_planted_trial(cfg, k, idx):
        # a full tight instance: host and tree planted together
        g = gen_two_cliques_apex(k)
        t = gen_three_branch_tree(k)
        instance = "two_cliques_apex+three_branch"
    else:
        g = _host_for_trial(cfg, k, trial_seed, rng)
        t = gen_random_tree(k + 1, cfg.tree_max_degree, trial_seed)
        instance = f"{cfg.host_family}+{cfg.tree_family}"
    degree_checks = _template_for(cfg, g, k)
    template_ok = bool(degree_checks.get("min_ok") and degree_checks.get("max_ok"))

    stages: list = []
    pipeline_found = False
    oracle_status = "skipped"
    oracle_nodes = 0
    verdict = "inconclusive"
    consistency_failure = False

    if template_ok:
        for name, attempt in checks.pipeline_attempts(g, t):
            try:
                out = attempt()
            except PreconditionViolated:
                stages.append([name, "preconditions"])
                continue
            except EmbedNotFound as exc:
                stages.append([name, f"stuck:{exc.stage}"])
                continue
            ok, why = validate(g, t, out.embedding)
            if not ok:
                raise AssertionError(f"pipeline stage {name} produced invalid embedding: {why}")
            stages.append([name, "found"])
            pipeline_found = True
            break
        in_envelope = g.n <= cfg.envelope_n and t.k <= cfg.envelope_k
        if in_envelope:
            oracle = brute_force_embed(g, t, budget=cfg.oracle_budget)
            oracle_status = oracle.status
            oracle_nodes = oracle.nodes_explored
        if pipeline_found and oracle_status == "not_found":
            consistency_failure = True
            verdict = "inconclusive"
        elif pipeline_found or oracle_status == "found":
            verdict = "embedded"
        elif oracle_status == "not_found":
            verdict = "counterexample-candidate"
        else:
            verdict = "inconclusive"
    return TrialRecord(
        trial_index=idx,
        trial_seed=trial_seed,
        instance=instance,
        k=k,
        host_n=g.n,
        host_edges=g.edge_count,
        tree_edges=t.k,
        template_ok=template_ok,
        degree_checks={key: _jsonable_scalar(v) for key, v in degree_checks.items()},
        pipeline_stages=stages,
        pipeline_found=pipeline_found,
        oracle_status=oracle_status,
        oracle_nodes=oracle_nodes,
        verdict=verdict,
        consistency_failure=consistency_failure,
        wall_ms=int((_time.monotonic() - t0) * 1000),
    )


def _jsonable_scalar(v):
    if isinstance(v, bool) or isinstance(v, int) or isinstance(v, str):
        return v
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


@dataclass
class SweepResult:
    config: ExperimentConfig
    records: list[TrialRecord]
    summary: dict

    def to_jsonable(self, include_timing: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "config": self.config.to_jsonable(),
            "config_digest": self.config.digest(),
            "records": [r.to_jsonable(include_timing) for r in self.records],
            "summary": self.summary,
        }


def _trial_worker(payload: tuple) -> TrialRecord:
    cfg_json, idx = payload
    return run_trial(ExperimentConfig.from_jsonable(json.loads(cfg_json)), idx)


def run_sweep(cfg: ExperimentConfig, workers: int = 1) -> SweepResult:
    """Execute all trials (optionally in a process pool) and summarize.

    Records are sorted by trial index before emission, so the report does not
    depend on worker scheduling.
    """
    if workers > 1 and cfg.trials > 1:
        cfg_json = json.dumps(cfg.to_jsonable())
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_trial_worker, ((cfg_json, i) for i in range(cfg.trials))))
    else:
        records = [run_trial(cfg, i) for i in range(cfg.trials)]
    records.sort(key=lambda r: r.trial_index)
    counts: dict[str, int] = {}
    for r in records:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    summary = {
        "trials": len(records),
        "verdicts": dict(sorted(counts.items())),
        "template_violations": sum(1 for r in records if not r.template_ok),
        "pipeline_found": sum(1 for r in records if r.pipeline_found),
        "oracle_exhaustive_not_found": sum(1 for r in records if r.oracle_status == "not_found"),
        "consistency_failures": sum(1 for r in records if r.consistency_failure),
    }
    return SweepResult(cfg, records, summary)


def replay_candidates(cfg: ExperimentConfig, result: SweepResult) -> bool:
    """Re-derive every counterexample-candidate trial and confirm the oracle
    still proves non-containment (verdict soundness)."""
    for r in result.records:
        if r.verdict != "counterexample-candidate":
            continue
        fresh = run_trial(cfg, r.trial_index)
        if fresh.oracle_status != "not_found":
            return False
    return True


# ---------------------------------------------------------------------------
# Extremal verification


@dataclass
class ExtremalReport:
    k: int
    tight_min_degree: int
    tight_max_degree: int
    degrees_ok: bool
    avoids_tree: bool
    avoid_nodes: int
    grown_embeds: bool
    grown_nodes: int

    @property
    def ok(self) -> bool:
        return self.degrees_ok and self.avoids_tree and self.grown_embeds


def verify_extremal(k: int, budget: int = 10**9) -> ExtremalReport:
    """The tight host avoids the three-branch tree; one more vertex per clique
    flips the verdict.  Exhaustive on both sides (budget overruns raise)."""
    g = gen_two_cliques_apex(k)
    t = gen_three_branch_tree(k)
    degrees_ok = (
        g.min_degree() == (2 * k) // 3 - 1
        and g.min_degree() == 2 * k // 3 - 1
        and g.max_degree() >= k
    )
    avoid = brute_force_embed(g, t, budget=budget)
    if avoid.status == "budget_exhausted":
        raise OracleBudget(f"avoidance search for k={k} exceeded {budget} nodes")
    grown = brute_force_embed(gen_two_cliques_apex_grown(k), t, budget=budget)
    if grown.status == "budget_exhausted":
        raise OracleBudget(f"embed search for k={k} exceeded {budget} nodes")
    return ExtremalReport(
        k=k,
        tight_min_degree=g.min_degree(),
        tight_max_degree=g.max_degree(),
        degrees_ok=degrees_ok,
        avoids_tree=avoid.status == "not_found",
        avoid_nodes=avoid.nodes_explored,
        grown_embeds=grown.status == "found",
        grown_nodes=grown.nodes_explored,
    )


# ---------------------------------------------------------------------------
# Property suite


STATED_SCALES = {
    "periphery_monotonic": {"count": 200},
    "cut_density_cross": {"count": 60},
    "matching_bound": {"count": 1000},
    "even_walk_bound": {"count": 500},
    "diameter_bound": {"count": 500},
    "path_in_range": {"count": 150},
    "tree_splitting": {"count": 1000, "max_n": 200},
    "even_odd_exhaustive": {"count": 150},
    "msf": {"count": 1000, "max_n": 200},
    "msf_p3_paths": {"count": 100},
    "sum_partition_exhaustive": {},
    "greedy_total": {"count": 1000},
    "structured_embedders": {},
    "refine_contract": {"count": 100},
    "rich_independent": {"count": 200},
    "classify_accounting": {"count": 150},
}


def property_suite(seed: int = 0, trials: Optional[int] = None) -> list[checks.CheckResult]:
    """Run every module invariant; trials caps the per-invariant instance count
    (None = stated scales, 0 = nothing)."""
    if trials == 0:
        return []
    out = []
    for name, fn in checks.ALL_CHECKS.items():
        kwargs = dict(STATED_SCALES.get(name, {}))
        if "count" in kwargs:
            if trials is not None:
                kwargs["count"] = min(kwargs["count"], trials)
            kwargs["seed"] = seed
        out.append(fn(**kwargs))
    return out


def oracle_corpus_check(
    seed: int = 2024, max_tree_edges: int = 7, budget: int = 10**7
) -> checks.CheckResult:
    """Criterion-style corpus run: every stored host against every stored tree."""
    hosts = host_corpus(seed)
    trees = [t for t in all_trees_up_to(max_tree_edges + 1)]
    res = checks.check_oracle_agreement(hosts, trees, budget=budget)
    structured = checks.check_structured_embedders(budget=budget)
    res.runs += structured.runs
    res.failures += structured.failures
    res.notes.extend(structured.notes)
    return res


# ---------------------------------------------------------------------------
# Report emission


CSV_COLUMNS = [
    "trial_index",
    "trial_seed",
    "instance",
    "k",
    "host_n",
    "host_edges",
    "tree_edges",
    "template_ok",
    "pipeline_found",
    "oracle_status",
    "oracle_nodes",
    "verdict",
    "consistency_failure",
]


def render_report(result: SweepResult, fmt: str = "json", include_timing: bool = False) -> str:
    """Canonical serialization; JSON is byte-stable for equal configs."""
    if fmt == "json":
        return json.dumps(result.to_jsonable(include_timing), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for r in result.records:
            row = r.to_jsonable()
            lines.append(",".join(str(row[c]) for c in CSV_COLUMNS))
        return "\n".join(lines) + "\n"
    raise PreconditionViolated(f"unknown format {fmt!r}")


def emit_report(result: SweepResult, fmt: str, path: str, include_timing: bool = False) -> str:
    text = render_report(result, fmt, include_timing)
    with open(path, "w") as fh:
        fh.write(text)
    return path
