import random

import pytest

from speccalc.c0 import inner_product, sup_norm
from speccalc.field import ZERO
from speccalc.spectral import spectrum_of
from speccalc.suites import (
    SUITES,
    compact_with_spectrum,
    random_distinct,
    random_opsy,
    random_system,
    run_suite,
)


def test_random_systems_are_orthonormal():
    rng = random.Random(3)
    for m in range(1, 7):
        system = random_system(rng, m)
        assert len(system) == m
        for i, y in enumerate(system.members):
            assert sup_norm(y).exponent == 0
            for z in system.members[i + 1:]:
                assert inner_product(y, z) == ZERO


def test_compact_with_spectrum_sizes():
    rng = random.Random(4)
    for points in range(1, 6):
        for _ in range(5):
            assert len(spectrum_of(compact_with_spectrum(rng, points, 5))) == points


def test_random_distinct_values():
    vals = random_distinct(random.Random(5), 6)
    assert len(set(vals)) == 6 and ZERO not in vals


def test_random_opsy_reaches_cancellation_cases():
    rng = random.Random(6)
    hits = 0
    for _ in range(100):
        S = random_opsy(rng, 4)
        nonzero = [v for v in S.lam if not v.is_zero()]
        if nonzero and not S.alpha.is_zero():
            hits += S.alpha.valuation() == min(v.valuation() for v in nonzero)
    assert hits > 10


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_runs_pass_and_repeat(name):
    a = run_suite(name, seed=11, max_rank=3, trials=3)
    b = run_suite(name, seed=11, max_rank=3, trials=3)
    assert a.ok
    assert {k: (c.passed, c.failed) for k, c in a.checks.items()} == {k: (c.passed, c.failed) for k, c in b.checks.items()}


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
