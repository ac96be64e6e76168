"""Acceptance suite: one test per criterion, each printing its PASS/FAIL
lines with the measured value against the stated tolerance, plus the stated
runtime budget."""

import time

from freebound.verify import (
    Report,
    check_burgers,
    check_degenerations,
    check_density_suite,
    check_exact_identities,
    check_limit_shape,
    check_q_symmetry,
    check_rate_functional,
    check_resolvent,
    check_sampler_tv,
    check_tsscpp,
)

SEED = 2024


def run_criterion(check, budget_s, *args):
    report = Report()
    t0 = time.time()
    check(report, *args)
    elapsed = time.time() - t0
    for line in report.lines():
        print(line)
    print(f"      runtime {elapsed:.1f}s (budget {budget_s}s)")
    assert elapsed < budget_s
    assert all(c.passed for c in report.checks), "\n".join(report.lines())


def test_criterion_1_exact_identity_suite():
    run_criterion(check_exact_identities, 60)


def test_criterion_2_q_symmetry():
    run_criterion(check_q_symmetry, 30)


def test_criterion_3_sampler_tv():
    run_criterion(check_sampler_tv, 120, SEED)


def test_criterion_4_limit_shape():
    run_criterion(check_limit_shape, 300, SEED)


def test_criterion_5_density_suite():
    run_criterion(check_density_suite, 60, SEED)


def test_criterion_6_degenerations():
    run_criterion(check_degenerations, 60)


def test_criterion_7_resolvent():
    run_criterion(check_resolvent, 120, SEED)


def test_criterion_8_burgers():
    run_criterion(check_burgers, 60, SEED)


def test_criterion_9_tsscpp_triangle():
    run_criterion(check_tsscpp, 10)


def test_rate_functional_spot_checks():
    run_criterion(check_rate_functional, 120)
