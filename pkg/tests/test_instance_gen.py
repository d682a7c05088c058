import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from envyfree import GenSpec, generate, spec_suite
from envyfree.formats import instance_to_dict
from envyfree.instance_gen import DISTRIBUTIONS, InvalidSpec, SplitMix64

GOLDEN = Path(__file__).parent / "golden"


def test_splitmix64_reference_vector():
    # published reference outputs for seed 1234567
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(3)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423]


def test_uniform_int_golden():
    inst = generate(GenSpec(3, "uniform_int", 1, 100, seed=42))
    golden = json.loads((GOLDEN / "gen_n3_uniform_int_seed42.json").read_text())
    assert instance_to_dict(inst) == golden
    assert inst.budgets == (14.0, 92.0, 59.0)
    assert inst.qualities == (65.0, 51.0, 63.0)


def test_tie_heavy_has_few_levels():
    inst = generate(GenSpec(4, "tie_heavy", 1, 10, seed=7, distinct_values=2))
    assert set(inst.budgets) <= {1.0, 10.0}
    assert set(inst.qualities) <= {1.0, 10.0}


def test_near_degenerate_has_one_outlier():
    inst = generate(GenSpec(2, "near_degenerate", 5, 9, seed=0))
    assert sum(b != 5 for b in inst.budgets) == 1
    assert sum(q != 5 for q in inst.qualities) == 1


@pytest.mark.parametrize("kwargs", [
    dict(n=0),
    dict(n=3, low=0),
    dict(n=3, low=5, high=4),
    dict(n=3, distinct_values=0),
    dict(n=3, distribution="gaussian"),
    dict(n=3, seed=-1),
    dict(n=3, low=1.2, high=1.8),
])
def test_invalid_specs(kwargs):
    with pytest.raises(InvalidSpec):
        GenSpec(**kwargs)


specs = st.builds(
    GenSpec,
    n=st.integers(1, 40),
    distribution=st.sampled_from(DISTRIBUTIONS),
    low=st.integers(1, 100),
    high=st.integers(100, 10**6),
    seed=st.integers(0, 2**64 - 1),
    distinct_values=st.integers(1, 6),
)


@given(specs)
def test_generate_is_deterministic_and_in_range(spec):
    inst = generate(spec)
    assert inst == generate(spec)
    assert inst.n == spec.n
    for x in inst.budgets + inst.qualities:
        assert spec.low <= x <= spec.high
    if spec.distribution == "uniform_int":
        assert inst.is_integral()
    if spec.distribution == "tie_heavy":
        assert len(set(inst.budgets)) <= spec.distinct_values


@given(specs)
def test_spec_json_round_trip(spec):
    assert GenSpec.from_dict(json.loads(json.dumps(spec.to_dict()))) == spec


def test_spec_suite_mixes_families():
    suite = spec_suite(40, seed=3)
    assert suite == spec_suite(40, seed=3)
    assert {s.distribution for s in suite} == set(DISTRIBUTIONS)
    assert all(2 <= s.n <= 64 for s in suite)
    for s in suite:
        if s.distribution != "uniform_real":
            assert generate(s).is_integral()


def test_integer_suite_only():
    suite = spec_suite(20, 1, 6, seed=1, families=("uniform_int", "tie_heavy"))
    assert {s.distribution for s in suite} == {"uniform_int", "tie_heavy"}
