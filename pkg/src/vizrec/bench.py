"""Scripted-agent benchmark: drive sessions, mine their logs for exposure and
interaction metrics, and compare algorithms.

Agents stand in for human participants; results are reported as means,
standard deviations, and signed pairwise differences only.
"""

from __future__ import annotations

import csv
import io
import json
import random
import statistics
from dataclasses import dataclass, replace
from typing import Optional

from .dataset import Dataset
from .errors import InvalidPage, MalformedLog
from .session import HOVER_INTERACTION_THRESHOLD_MS, SessionManager

DEFAULT_POLICY_STEPS = 30
DEFAULT_TRIALS = 100

CSV_COLUMNS = ["algorithm", "dataset", "trial", "exposed_var_sets",
               "exposed_designs", "interacted_var_sets", "interacted_designs"]


@dataclass(frozen=True)
class AgentPolicy:
    kind: str = "random-walker"  # random-walker | breadth-seeker | depth-seeker
    promote_prob: float = 0.5
    bookmark_prob: float = 0.2
    hover_prob: float = 0.3
    steps: int = DEFAULT_POLICY_STEPS
    seed: int = 0

    def __post_init__(self):
        for p in (self.promote_prob, self.bookmark_prob, self.hover_prob):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")


def _counter_clock():
    """Deterministic millisecond clock for reproducible logs."""
    t = 0

    def tick() -> int:
        nonlocal t
        t += 1
        return t

    return tick


def run_agent(policy: AgentPolicy, algorithm: str, dataset_name: str,
              datasets: Optional[dict[str, Dataset]] = None) -> str:
    """Drive one session for `policy.steps` actions; returns the exported log."""
    if datasets is None:
        from .datasets_builtin import registry
        datasets = registry()
    manager = SessionManager(datasets, clock=_counter_clock())
    rng = random.Random(policy.seed)
    sid = manager.create_session(dataset_name, algorithm)

    for _ in range(policy.steps):
        page = manager.views(sid)["related"]
        items = page["items"]
        if policy.kind == "breadth-seeker":
            _step_breadth(manager, sid, items)
            continue
        if policy.kind == "depth-seeker":
            _step_depth(manager, sid, items)
            continue
        _step_random(manager, sid, items, page["has_more"], rng, policy)
    return manager.export_log(sid)


def _promote(manager: SessionManager, sid: str, item: dict) -> None:
    manager.promote(sid, item["spec"])


def _step_random(manager, sid, items, has_more, rng, policy) -> None:
    u = rng.random()
    if u < policy.promote_prob:
        if items:
            _promote(manager, sid, rng.choice(items))
    elif u < policy.promote_prob + policy.bookmark_prob:
        if items:
            manager.bookmark(sid, rng.choice(items)["spec"])
    elif u < policy.promote_prob + policy.bookmark_prob + policy.hover_prob:
        if items:
            manager.hover(sid, rng.choice(items)["spec"], rng.randint(100, 1500))
    else:
        if has_more:
            try:
                manager.load_more(sid)
            except InvalidPage:
                pass


def _seen_nodes(manager: SessionManager, sid: str) -> set[tuple]:
    session = manager.get(sid)
    return {tuple(ev.node) for ev in session.log
            if ev.kind == "specify" and ev.node is not None}


def _step_breadth(manager, sid, items) -> None:
    """Promote the lowest-ranked item whose variable set is unexplored."""
    seen = _seen_nodes(manager, sid)
    for item in reversed(items):
        if tuple(sorted(item["node"])) not in seen:
            _promote(manager, sid, item)
            return
    if items:
        _promote(manager, sid, items[-1])


def _step_depth(manager, sid, items) -> None:
    """Promote the item with the largest attribute count."""
    if not items:
        return
    best = max(items, key=lambda it: (len(it["node"]), -items.index(it)))
    _promote(manager, sid, best)


# ---------------------------------------------------------------------------
# Log analysis


def _design_id(spec_doc: dict) -> str:
    return json.dumps(spec_doc, sort_keys=True, separators=(",", ":"))


def _var_set(record: dict) -> tuple:
    return tuple(record.get("node") or ())


def compute_metrics(log_text: str,
                    hover_threshold_ms: int = HOVER_INTERACTION_THRESHOLD_MS) -> dict:
    """Unique exposed / interacted variable sets and visual designs."""
    exposed_sets, exposed_designs = set(), set()
    interacted_sets, interacted_designs = set(), set()
    for line in log_text.splitlines():
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            kind = record["kind"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise MalformedLog(line[:80]) from exc
        spec_doc = record.get("spec")
        if spec_doc is None:
            continue
        design, varset = _design_id(spec_doc), _var_set(record)
        if kind == "exposed":
            exposed_sets.add(varset)
            exposed_designs.add(design)
        elif kind in ("specify", "bookmark", "unbookmark") or (
                kind == "hover" and record.get("duration_ms", 0) >= hover_threshold_ms):
            interacted_sets.add(varset)
            interacted_designs.add(design)
    return {
        "exposed_var_sets": len(exposed_sets),
        "exposed_designs": len(exposed_designs),
        "interacted_var_sets": len(interacted_sets),
        "interacted_designs": len(interacted_designs),
    }


def compare(algorithms: list[str], dataset_name: str, trials: int,
            policy: AgentPolicy,
            datasets: Optional[dict[str, Dataset]] = None) -> dict:
    """Run `trials` seeded agent runs per algorithm and aggregate.

    Returns {"rows": per-trial metric rows, "summary": per-algorithm
    mean/stddev, "differences": signed pairwise mean differences}.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows = []
    for algorithm in algorithms:
        for trial in range(trials):
            log_text = run_agent(replace(policy, seed=trial), algorithm,
                                 dataset_name, datasets)
            metrics = compute_metrics(log_text)
            rows.append({"algorithm": algorithm, "dataset": dataset_name,
                         "trial": trial, **metrics})

    metric_names = CSV_COLUMNS[3:]
    summary = {}
    for algorithm in algorithms:
        algo_rows = [r for r in rows if r["algorithm"] == algorithm]
        summary[algorithm] = {}
        for m in metric_names:
            vals = [r[m] for r in algo_rows]
            summary[algorithm][m] = {
                "mean": statistics.fmean(vals),
                "stddev": statistics.pstdev(vals) if len(vals) > 1 else 0.0,
            }

    differences = {}
    for a, b in _pairings(algorithms):
        differences[f"{a} - {b}"] = {
            m: summary[a][m]["mean"] - summary[b][m]["mean"]
            for m in metric_names
        }
    return {"rows": rows, "summary": summary, "differences": differences}


def _pairings(algorithms: list[str]) -> list[tuple[str, str]]:
    """BFS-vs-DFS and Dziban-vs-CompassQL pairs present in the run."""
    pairs = []
    for bfs, dfs in (("compassql-bfs", "compassql-dfs"),
                     ("dziban-bfs", "dziban-dfs")):
        if bfs in algorithms and dfs in algorithms:
            pairs.append((bfs, dfs))
    for dz, cq in (("dziban-bfs", "compassql-bfs"),
                   ("dziban-dfs", "compassql-dfs")):
        if dz in algorithms and cq in algorithms:
            pairs.append((dz, cq))
    return pairs


def to_csv(report: dict) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in report["rows"]:
        writer.writerow(row)
    return out.getvalue()


def summary_table(report: dict) -> str:
    lines = [f"{'algorithm':<18}" + "".join(f"{m:>22}" for m in CSV_COLUMNS[3:])]
    for algorithm, metrics in report["summary"].items():
        cells = "".join(
            f"{metrics[m]['mean']:>14.2f} ±{metrics[m]['stddev']:>6.2f}"
            for m in CSV_COLUMNS[3:])
        lines.append(f"{algorithm:<18}{cells}")
    if report["differences"]:
        lines.append("")
        lines.append("pairwise mean differences:")
        for pair, diffs in report["differences"].items():
            detail = ", ".join(f"{m}={v:+.2f}" for m, v in diffs.items())
            lines.append(f"  {pair}: {detail}")
    return "\n".join(lines)
