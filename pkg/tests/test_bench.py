import json

import pytest

from vizrec.bench import (AgentPolicy, compare, compute_metrics, run_agent,
                          summary_table, to_csv)
from vizrec.errors import MalformedLog
from vizrec.session import SessionManager


@pytest.fixture
def six_registry(six_fields):
    return {"six": six_fields}


class TestRunAgent:
    def test_single_step_random_walker(self, six_registry):
        log = run_agent(AgentPolicy(steps=1, seed=0), "compassql-bfs", "six",
                        six_registry)
        records = [json.loads(line) for line in log.splitlines()]
        assert sum(1 for r in records if r["kind"] == "exposed") >= 5
        non_exposure = [r for r in records if r["kind"] != "exposed"]
        assert len(non_exposure) <= 1

    def test_same_seed_byte_identical(self, six_registry):
        a = run_agent(AgentPolicy(steps=10, seed=3), "dziban-bfs", "six", six_registry)
        b = run_agent(AgentPolicy(steps=10, seed=3), "dziban-bfs", "six", six_registry)
        assert a == b

    def test_steps_must_be_positive(self):
        with pytest.raises(ValueError):
            AgentPolicy(steps=0)

    def test_depth_seeker_reaches_three_attrs_in_two_promotions(self, six_registry):
        log = run_agent(AgentPolicy(kind="depth-seeker", steps=2, seed=0),
                        "dziban-dfs", "six", six_registry)
        specifies = [json.loads(l) for l in log.splitlines()
                     if json.loads(l)["kind"] == "specify"]
        assert len(specifies) == 2
        assert len(specifies[-1]["node"]) == 3


class TestComputeMetrics:
    def _exposed(self, node, design):
        return json.dumps({"ts": 1, "kind": "exposed", "node": node,
                           "spec": {"mark": design, "encoding": {}}})

    def test_unique_variable_sets(self):
        log = "\n".join(self._exposed(n, "bar") for n in
                        [["A"], ["A", "B"], ["A", "C"], ["A", "B"]])
        assert compute_metrics(log)["exposed_var_sets"] == 3

    def test_designs_vs_sets(self):
        log = "\n".join([self._exposed(["A"], "bar"), self._exposed(["A"], "point")])
        m = compute_metrics(log)
        assert m["exposed_designs"] == 2 and m["exposed_var_sets"] == 1

    def test_hover_threshold(self):
        spec = {"mark": "bar", "encoding": {}}
        lines = [
            json.dumps({"ts": 1, "kind": "exposed", "node": ["A"], "spec": spec}),
            json.dumps({"ts": 2, "kind": "hover", "node": ["A"], "spec": spec,
                        "duration_ms": 300}),
            json.dumps({"ts": 3, "kind": "hover", "node": ["A"], "spec": spec,
                        "duration_ms": 700}),
        ]
        m = compute_metrics("\n".join(lines))
        assert m["interacted_designs"] == 1
        m_strict = compute_metrics("\n".join(lines[:2] +
                                             [lines[2].replace("700", "400")]))
        assert m_strict["interacted_designs"] == 0

    def test_malformed_log(self):
        with pytest.raises(MalformedLog):
            compute_metrics("this is not json")

    def test_round_trip_matches_live_session(self, six_registry):
        log = run_agent(AgentPolicy(steps=8, seed=1), "compassql-bfs", "six",
                        six_registry)
        # re-parse and re-serialize: identical metrics
        reparsed = "\n".join(json.dumps(json.loads(l), sort_keys=True,
                                        separators=(",", ":"))
                             for l in log.splitlines())
        assert compute_metrics(log) == compute_metrics(reparsed)


class TestCompare:
    def test_single_trial_single_algorithm(self, six_registry):
        report = compare(["compassql-bfs"], "six", 1, AgentPolicy(steps=3),
                         six_registry)
        assert len(report["rows"]) == 1
        assert "compassql-bfs" in report["summary"]

    def test_interacted_never_exceeds_exposed(self, six_registry):
        report = compare(["compassql-bfs", "dziban-dfs"], "six", 5,
                         AgentPolicy(steps=10), six_registry)
        for row in report["rows"]:
            assert row["interacted_var_sets"] <= row["exposed_var_sets"]
            assert row["interacted_designs"] <= row["exposed_designs"]
            assert row["exposed_designs"] >= row["exposed_var_sets"]

    def test_csv_reproducible(self, six_registry):
        args = (["compassql-bfs", "compassql-dfs"], "six", 3, AgentPolicy(steps=5))
        a = to_csv(compare(*args, six_registry))
        b = to_csv(compare(*args, six_registry))
        assert a == b
        assert a.splitlines()[0] == ("algorithm,dataset,trial,exposed_var_sets,"
                                     "exposed_designs,interacted_var_sets,"
                                     "interacted_designs")

    def test_pairwise_differences_present(self, six_registry):
        report = compare(["compassql-bfs", "compassql-dfs", "dziban-bfs",
                          "dziban-dfs"], "six", 2, AgentPolicy(steps=5),
                         six_registry)
        assert "compassql-bfs - compassql-dfs" in report["differences"]
        assert "dziban-bfs - compassql-bfs" in report["differences"]
        table = summary_table(report)
        assert "pairwise mean differences" in table
