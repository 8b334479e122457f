import copy
import json
import math

import pytest

from nclp import (
    SUITE_NAMES,
    SuiteConfig,
    UsageError,
    generate_instance,
    report_to_json,
    run_suite,
)
from nclp.serialize import algebra_to_json, jordan_to_json

SMALL = SuiteConfig(seed=7, n_instances=6)


def test_suite_names_fixed():
    assert SUITE_NAMES == (
        "clarkson", "sip", "roundtrip", "corners", "orthoiso",
        "kadison-infty", "adversarial",
    )


def test_config_rejects_bad_grids():
    with pytest.raises(UsageError):
        SuiteConfig(p_grid=(2.0,))
    with pytest.raises(UsageError):
        SuiteConfig(p_grid=(0.5,))
    with pytest.raises(UsageError):
        SuiteConfig(p_grid=())
    with pytest.raises(UsageError):
        SuiteConfig(max_dim=0)
    with pytest.raises(UsageError):
        SuiteConfig(n_instances=0)


def test_generate_instance_contract():
    for seed in range(20):
        inst = generate_instance(SMALL, seed)
        assert sorted(inst.source.dims) == sorted(inst.target.dims)
        assert sum(inst.source.dims) <= SMALL.max_dim
        assert inst.source.n_blocks <= SMALL.max_blocks
        assert all(0.5 <= w <= 2.0 for w in inst.source.weights)
        assert all(0.5 <= w <= 2.0 for w in inst.target.weights)
        assert inst.p in SMALL.p_grid
        assert inst.jordan.source == inst.source
        assert inst.jordan.target == inst.target


def test_generate_instance_deterministic():
    a = generate_instance(SMALL, 123)
    b = generate_instance(SMALL, 123)
    doc_a = {"src": algebra_to_json(a.source), "j": jordan_to_json(a.jordan), "p": str(a.p)}
    doc_b = {"src": algebra_to_json(b.source), "j": jordan_to_json(b.jordan), "p": str(b.p)}
    assert json.dumps(doc_a, sort_keys=True) == json.dumps(doc_b, sort_keys=True)


def test_degenerate_floor():
    cfg = SuiteConfig(seed=0, max_blocks=1, max_dim=1, n_instances=4)
    inst = generate_instance(cfg, 0)
    assert inst.source.dims == (1,) and inst.target.dims == (1,)
    report = run_suite("all", cfg)
    assert report.passed, [r.failures for r in report.results if not r.passed]


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_each_suite_passes_small(name):
    report = run_suite(name, SMALL)
    assert report.passed, report.results[0].failures
    assert report.results[0].name == name
    assert report.results[0].n_cases > 0


def test_unknown_suite():
    with pytest.raises(UsageError):
        run_suite("nonsense", SMALL)


def test_all_runs_every_suite():
    report = run_suite("all", SMALL)
    assert tuple(r.name for r in report.results) == SUITE_NAMES
    assert report.passed


def test_report_deterministic():
    r1 = report_to_json(run_suite("all", SMALL))
    r2 = report_to_json(run_suite("all", SMALL))
    for r in (r1, r2):
        for s in r["suites"]:
            s.pop("wall_time_s")
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_report_schema():
    report = run_suite("clarkson", SMALL)
    doc = report_to_json(report)
    assert doc["schema"] == "nclp-suite-report/1"
    assert doc["config"]["seed"] == 7
    assert doc["config"]["p_grid"] == [1.0, 1.5, 3.0, 4.0, "inf"]
    suite = doc["suites"][0]
    for key in ("name", "passed", "n_cases", "worst_residual", "worst_seed",
                "wall_time_s", "extra", "failures"):
        assert key in suite
    json.dumps(doc)  # must be plain-JSON serializable


def test_worst_seed_replays():
    report = run_suite("roundtrip", SMALL)
    seed = report.results[0].worst_seed
    inst = generate_instance(SMALL, seed)
    assert inst.p in SMALL.p_grid
