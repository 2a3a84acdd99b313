"""Exhaustive small-window sweeps behind the verify subcommand."""

import pytest

from linedyn import (
    SizeGuardError,
    build_line_window,
    run_theorem_suite,
    verify_interval_lemma,
    verify_lefschetz_fixed_points,
    verify_no_high_periods,
    verify_period_two_structure,
)
from linedyn.verify import THEOREM_SUITES, _functional_cycle_lengths


def test_functional_cycle_lengths():
    assert _functional_cycle_lengths({0: 0}) == {1}
    assert _functional_cycle_lengths({0: 1, 1: 0}) == {2}
    assert _functional_cycle_lengths({0: 1, 1: 0, 2: 2, 3: 2}) == {1, 2}
    assert _functional_cycle_lengths({0: 1, 1: 2, 2: 0}) == {3}


def test_no_high_periods_small_windows():
    r = verify_no_high_periods(build_line_window(-1, 1))
    assert r.passed
    assert r.theorem == "no-period-3"
    assert r.corpus_size == 11
    assert r.checks == 11
    assert r.violations == ()
    assert verify_no_high_periods(build_line_window(-2, 2)).corpus_size == 99


def test_period_two_structure_small_windows():
    r = verify_period_two_structure(build_line_window(-2, 2))
    assert r.passed
    assert r.corpus_size == 99
    assert r.details["maps_with_two_cycle"] == 17


def test_interval_lemma_small_windows():
    r = verify_interval_lemma(build_line_window(-1, 1))
    assert r.passed
    assert r.corpus_size == 11
    # six ordered endpoint pairs inside a three point window
    assert r.details["pairs_per_map"] == 6
    assert r.checks == 66


def test_lefschetz_sweep_small():
    r = verify_lefschetz_fixed_points(max_size=3)
    assert r.passed
    assert r.corpus_size == 452
    assert r.checks == 38
    assert r.details["fixed_point_free_maps"] == 38
    assert r.details["vietoris_like_fixed_point_free"] == 0
    by_window = r.details["fixed_point_free_by_window"]
    assert by_window["[0,1]"] == 1
    assert by_window["[0,2]"] == 18
    # the two boundary parities contribute identical counts
    assert by_window["[1,2]"] == 1
    assert by_window["[1,3]"] == 18


def test_lefschetz_sweep_crosscheck_path():
    r = verify_lefschetz_fixed_points(max_size=3, crosscheck_stride=7)
    assert r.passed
    assert r.details["crosschecked"] > 0


def test_verify_result_json():
    r = verify_no_high_periods(build_line_window(-1, 1))
    j = r.to_json()
    assert j["passed"] is True
    assert j["theorem"] == "no-period-3"
    assert j["corpus_size"] == 11


def test_run_theorem_suite_dispatch():
    assert sorted(THEOREM_SUITES) == [
        "interval-lemma",
        "lefschetz",
        "no-period-3",
        "period-2-structure",
    ]
    r = run_theorem_suite("no-period-3", 1)
    assert r.passed and r.corpus_size == 11
    with pytest.raises(ValueError):
        run_theorem_suite("bogus", 1)
    with pytest.raises(SizeGuardError):
        run_theorem_suite("no-period-3", None)


def test_size_guard_on_large_windows():
    with pytest.raises(SizeGuardError):
        verify_no_high_periods(build_line_window(-7, 7))
    with pytest.raises(SizeGuardError):
        verify_interval_lemma(build_line_window(-7, 7))
