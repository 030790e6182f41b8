import json

import pytest

from bindet.errors import PreconditionError
from bindet.indexsets import leq
from bindet.verify import SHAPES, SUITE_NAMES, InstanceGen, run_suite


def test_draws_are_deterministic():
    a, b = InstanceGen(seed=11), InstanceGen(seed=11)
    for shape in SHAPES:
        for t in range(20):
            assert a.draw(t, shape) == b.draw(t, shape)


def test_seeds_differ():
    a, b = InstanceGen(seed=1), InstanceGen(seed=2)
    assert [a.draw(t, "J_leq_I") for t in range(10)] != [b.draw(t, "J_leq_I") for t in range(10)]


@pytest.mark.parametrize("shape", SHAPES)
def test_draws_respect_bounds(shape):
    gen = InstanceGen(seed=3, max_d=5, max_index=15)
    for t in range(50):
        inst = gen.draw(t, shape)
        if shape != "nullspace_family":
            assert 1 <= len(inst.rows) == len(inst.cols) <= 5
            assert inst.rows.last <= 15 and inst.cols.last <= 15
        if shape in ("J_leq_I", "rows_interval"):
            assert leq(inst.cols, inst.rows)
        if shape in ("rows_interval", "both_intervals"):
            assert inst.rows.is_interval()
        if shape in ("cols_interval", "both_intervals"):
            assert inst.cols.is_interval()


def test_nullspace_family_shape():
    gen = InstanceGen(seed=4, max_d=6, max_index=12)
    for t in range(40):
        inst = gen.draw(t, "nullspace_family")
        assert len(inst.rows) == len(inst.cols) + 1
        assert inst.rows.is_interval() and inst.cols.first == 0


def test_unknown_suite_and_shape():
    with pytest.raises(PreconditionError):
        run_suite("no-such-suite", InstanceGen(), 1)
    with pytest.raises(PreconditionError):
        InstanceGen(shape="blob")


@pytest.mark.parametrize("name", [n for n in SUITE_NAMES if not n.endswith("-exhaustive")])
def test_every_suite_passes_small(name):
    report = run_suite(name, InstanceGen(seed=5, max_d=4, max_index=12), 25)
    assert report.passed, report.failures[:3]
    json.dumps(report.to_json())


def test_reports_reproduce():
    gen = InstanceGen(seed=9, max_d=5, max_index=15)
    a = run_suite("oracle-equivalence", gen, 40)
    b = run_suite("oracle-equivalence", gen, 40)
    assert (a.trials, a.failures, a.notes) == (b.trials, b.failures, b.notes)


def test_workers_do_not_change_results():
    gen = InstanceGen(seed=9, max_d=5, max_index=15)
    a = run_suite("interchange", gen, 60)
    b = run_suite("interchange", gen, 60, workers=4)
    assert (a.trials, a.failures, a.notes) == (b.trials, b.failures, b.notes)


def test_coverage_note_lists_closed_forms():
    report = run_suite("oracle-equivalence", InstanceGen(seed=2), 120)
    assert {"moh", "rows_interval", "cols_interval", "size_reduction"} <= set(report.notes["coverage"])


def test_pi_product_note_names_a_reading():
    report = run_suite("pi-product", InstanceGen(seed=6), 30)
    assert report.notes["always_matching"] == ["strict"]


def test_failure_carries_replay(monkeypatch):
    import bindet.verify as verify

    monkeypatch.setattr(verify, "det_bareiss", lambda M: -1)
    report = run_suite("positivity", InstanceGen(seed=1, max_d=3, max_index=6), 3)
    assert len(report.failures) == 3
    replay = report.failures[0].replay
    assert replay.startswith("bindet det --rows ")
    assert "--cols" in replay
    assert "rows" in report.failures[0].instance


def test_exhaustive_suites_small():
    gen = InstanceGen(max_d=3, max_index=6)
    for name in ("positivity-exhaustive", "max-rank-exhaustive", "counting-identity-exhaustive"):
        report = run_suite(name, gen, 0)
        assert report.passed and report.trials > 0
