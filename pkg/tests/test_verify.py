from greedytheta.qtorus import ConventionConfig, ExchangeSide
from greedytheta.verify import (Check, Suite, SuiteReport, calibrate, check_convention,
                                density_suite, pair_counts, run_suite)
from greedytheta.dyckpath import cluster_path


def test_calibration_picks_one_convention():
    report = calibrate()
    assert report.ok
    assert report.chosen == ConventionConfig(1, ExchangeSide.NEW_ON_LEFT)
    assert report.hv_sign == 1
    assert report.to_json() == calibrate().to_json()


def test_mirror_convention_fails_only_the_prefactor():
    row = check_convention(ConventionConfig(-1, ExchangeSide.NEW_ON_RIGHT))
    assert row.bar_invariant and row.exchange_ok and row.rupel_hv_signs == (1,)
    assert not row.printed_prefactor and not row.passes


def test_informational_checks_do_not_fail_a_suite():
    rep = SuiteReport("Bases", "x", [Check("a", {}, True), Check("b", {}, False, informational=True)])
    assert rep.ok and rep.to_json()["failed"] == 0


def test_density_counts():
    # r = 3, n = 5: P(8, 3) has 365 pairs of which one is not positive
    assert pair_counts(cluster_path(3, 5), 3) == (365, 364)
    assert all(c.passed for c in density_suite())


def test_small_suites_pass():
    for suite in (Suite.BIJECTION_MM, Suite.BASES):
        assert run_suite(suite, max_m=4).ok
    assert run_suite(Suite.BIJECTION_NEG, r=2, max_n=5).ok
