import pytest

from alexandroff import classify as cls
from alexandroff.reproductions import EXAMPLES, EXP_GRID_T, circle_point, run_example
from alexandroff.rational import Rat


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_example_reproduces(name):
    rep = run_example(name, seed=2, samples=300)
    failed = [k for k, ok in rep.expectations.items() if not ok]
    assert not failed


def test_unknown_example():
    with pytest.raises(KeyError):
        run_example("nope")


def test_circle_points_are_on_the_circle():
    for t in EXP_GRID_T:
        c, s = circle_point(t)
        assert c * c + s * s == 1


def test_exp_grid_negative_part():
    rep = run_example("exp-grid", samples=100)
    assert rep.results["max_negative_part"] == Rat(404681, 323761)
    assert rep.results["product"].q == 1


def test_cap2_witness():
    rep = run_example("cap2", samples=100)
    assert rep.results["two_in_range"] and not rep.results["two_dominated"]
    assert isinstance(rep.results["classification"].witness, cls.RangeMismatch)
