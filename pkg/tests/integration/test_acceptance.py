"""
Acceptance campaigns: seeded, exact, and slow.

Run with ``pytest -m slow``.
"""

from fractions import Fraction

import numpy as np
import pytest

from online_mssc.adversary import random_instance
from online_mssc.dlm import AlgState, DivisorMode, serve
from online_mssc.harness import ExperimentConfig, campaign, run_lowerbound
from online_mssc.offline import (
    best_fixed_permutation,
    derive_mtfb_from_opt,
    greedy_mtfb,
    opt_dynamic_bruteforce,
)
from online_mssc.potentials import PotentialParams, audit_instance

pytestmark = [pytest.mark.integration, pytest.mark.slow]


def _random_sizes(index: int, max_n: int, max_r: int, max_m: int) -> tuple[int, int, int]:
    rng = np.random.default_rng(10_000 + index)
    n = int(rng.integers(1, max_n + 1))
    r = int(rng.integers(1, min(max_r, n) + 1))
    m = int(rng.integers(0, max_m + 1))
    return n, r, m


def _invariant_campaign():
    """The 1,000 seeded instances every budget and fetch check runs on."""
    for index in range(1000):
        n, r, m = _random_sizes(index, max_n=50, max_r=8, max_m=200)
        distribution = "zipf" if index % 2 else "uniform"
        yield index, random_instance(n, r, m, distribution=distribution, seed=index)


def test_budget_invariants_on_random_instances():
    for index, instance in _invariant_campaign():
        n = instance.n
        state = AlgState(instance.initial, mode=DivisorMode.PER_REQUEST, strict=True)
        for request in instance.requests:
            report = serve(state, request)
            assert report.cascade_iterations <= n
            assert all(
                state.budgets[z] < state.pi.position(z) for z in range(n)
            ), f"instance {index}"


def test_fetches_and_non_negativity_are_audited():
    for index, instance in _invariant_campaign():
        params = PotentialParams.for_r(instance.r)
        report = audit_instance(instance, greedy_mtfb(instance), params, keep_passing=False)
        assert report.summary.failures == 0, (index, report.records[:3])
        assert report.summary.telescoping_ok


def test_stage_inequalities_against_offline_from_opt():
    config = ExperimentConfig(
        command="audit", n=6, r=2, m=6, baseline="mtfb_from_opt", seed=0
    )
    rows = campaign(config, count=500, workers=1)
    config = config.model_copy(update={"n": 5, "r": 3, "seed": 500})
    rows += campaign(config, count=500, workers=1)
    assert len(rows) == 1000
    failing = [row for row in rows if not row.passed]
    assert failing == []


def test_stage_one_coefficient_for_r2():
    assert PotentialParams.for_r(2).stage1_coefficient == 1280


def test_offline_four_approximation_and_static_bound():
    config = ExperimentConfig(command="oracle", n=5, r=3, m=6, seed=0)
    rows = campaign(config, count=500, workers=1)
    for row in rows:
        assert row.off_star <= 4 * row.opt
        assert row.off_star_within_four_opt
        assert row.static_bound_ok
        assert row.oracle_chain_ok
        assert row.opt <= row.dlm


def test_best_fixed_is_optimal_among_fixed_lists():
    for seed in range(50):
        instance = random_instance(4, 2, 6, seed=seed, initial="shuffled")
        sigma, best = best_fixed_permutation(instance)
        opt = opt_dynamic_bruteforce(instance)
        assert best <= instance.access_costs(instance.initial)
        assert derive_mtfb_from_opt(instance, opt).total <= 4 * opt.cost
        assert instance.access_costs(sigma) == best


@pytest.mark.parametrize(
    "r,c", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (5, 2)]
)
def test_lower_bound_reproduction(r, c):
    report = run_lowerbound(
        ExperimentConfig(command="lowerbound", r=r, c=c, phases=20)
    )
    n = r * r + c * r
    assert report.n == n
    for record in report.records:
        assert record.alg_cost >= (c + r) * (n - r)
        assert record.off_cost <= 3 * c + 3 * r
        assert record.structure_ok
    assert report.ratio >= Fraction(r * r, 3)
    assert report.ratio_with_setup <= report.ratio
    assert report.passed
