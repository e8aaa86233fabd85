import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heurobench import (
    Always,
    At,
    Domain,
    Each,
    OnImprovement,
    ProblemMetadata,
    Targets,
    TriggerSet,
    get_problem,
)
from heurobench.core import LogRecord
from heurobench.triggers import trigger_from_dict, trigger_set_from_config

MAX_MD = ProblemMetadata.boolean(1, "OneMax", 4, 1)


def drive(trigger, best_values, direction_md=MAX_MD):
    """Feed a best-so-far sequence; return the evaluation indices that fired."""
    trigger.on_run_start(direction_md)
    fired = []
    prev = None
    for t, best in enumerate(best_values, start=1):
        improved = prev is None or best > prev
        record = LogRecord(t, best, best if prev is None else max(best, prev), improved)
        if trigger.fires(record):
            fired.append(t)
        prev = record.raw_y_best
    return fired


def test_always():
    assert drive(Always(), [1, 1, 1]) == [1, 2, 3]


def test_on_improvement_example():
    # maximizing, best sequence 3,3,5: fires at t=1 and t=3 only
    assert drive(OnImprovement(), [3, 3, 5]) == [1, 3]


def test_each_example():
    assert drive(Each(10), list(range(25))) == [10, 20]


def test_each_does_not_fire_at_one():
    assert 1 not in drive(Each(2), [0] * 10)
    assert drive(Each(1), [0] * 3) == [1, 2, 3]
    with pytest.raises(ValueError):
        Each(0)


def test_at():
    assert drive(At([3, 5]), [0] * 8) == [3, 5]
    with pytest.raises(ValueError):
        At([])
    with pytest.raises(ValueError):
        At([0])
    with pytest.raises(ValueError):
        At([2, 2])


def test_targets_example():
    # maximizing, best sequence 1,3,5 with thresholds {2,4}
    assert drive(Targets([2.0, 4.0]), [1, 3, 5]) == [2, 3]
    # and never again within the same run
    trig = Targets([2.0])
    assert drive(trig, [1, 3, 3, 3]) == [2]
    # cleared at next run start
    assert drive(trig, [1, 3, 3, 3]) == [2]


def test_targets_minimize():
    md = get_problem(Domain.CONTINUOUS, 1, 1, 2).metadata
    trig = Targets([10.0])
    trig.on_run_start(md)
    assert not trig.fires(LogRecord(1, 50.0, 50.0, True))
    assert trig.fires(LogRecord(2, 9.0, 9.0, True))
    assert not trig.fires(LogRecord(3, 1.0, 1.0, True))


def test_targets_multiple_thresholds_single_eval():
    trig = Targets([1.0, 2.0, 3.0])
    trig.on_run_start(MAX_MD)
    assert trig.fires(LogRecord(1, 5.0, 5.0, True))
    assert not trig.fires(LogRecord(2, 5.0, 5.0, False))


@given(st.lists(st.integers(0, 30), min_size=1, max_size=50), st.integers(0, 3))
@settings(max_examples=200, deadline=None)
def test_targets_fire_at_most_once_per_run(values, which):
    thresholds = [[5.0], [5.0, 15.0], [0.0], [2.0, 7.0, 29.0]][which]
    trig = Targets(thresholds)
    trig.on_run_start(MAX_MD)
    best = -float("inf")
    fires = 0
    for t, v in enumerate(values, start=1):
        best = max(best, float(v))
        if trig.fires(LogRecord(t, float(v), best, False)):
            fires += 1
    assert fires <= len(thresholds)


def test_trigger_set_or_superset():
    seq = list(np.random.default_rng(3).integers(0, 20, 40))
    t1 = drive(TriggerSet([Each(3)]), seq)
    t12 = drive(TriggerSet([Each(3), At([5, 7])]), seq)
    assert set(t1) <= set(t12)


def test_trigger_set_polls_all_members():
    # a Targets member must consume its threshold even when Always already fired
    targets = Targets([2.0])
    ts = TriggerSet([Always(), targets])
    ts.on_run_start(MAX_MD)
    assert ts.fires(LogRecord(1, 3.0, 3.0, True))
    assert targets._fired == [True]


def test_trigger_set_requires_members():
    with pytest.raises(ValueError):
        TriggerSet([])


def test_trigger_from_dict():
    assert isinstance(trigger_from_dict({"type": "always"}), Always)
    assert isinstance(trigger_from_dict({"type": "on_improvement"}), OnImprovement)
    assert trigger_from_dict({"type": "each", "k": 5}).k == 5
    assert trigger_from_dict({"type": "at", "points": [1, 2]}).points == {1, 2}
    assert trigger_from_dict({"type": "targets", "values": [1.5]}).values == (1.5,)
    with pytest.raises(ValueError):
        trigger_from_dict({"type": "nope"})
    with pytest.raises(ValueError):
        trigger_from_dict({"type": "each"})
    with pytest.raises(ValueError):
        trigger_from_dict({"type": "each", "k": 2, "bogus": 1})
    ts = trigger_set_from_config([{"type": "always"}, {"type": "each", "k": 2}])
    assert len(ts.triggers) == 2
