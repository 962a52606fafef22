from unittest import mock

from scipy import special

from infomarket import dist
from infomarket.validate import SUITES, validate


def test_healthy_build_passes_every_suite():
    code, reports = validate("all")
    failed = [r.name for r in reports if not r.passed]
    assert code == 0, failed
    assert len(reports) > 60


def test_market_suite_includes_sampling_crosscheck():
    _, reports = validate("market")
    assert any(r.name.startswith("sampling-modes n=8") for r in reports)
    assert any(r.name.startswith("sampling-modes n=64") for r in reports)


def test_corrupted_gamma_fails_full_validation():
    corrupted = lambda z: special.gamma(z) * (1 + 1e-4)  # noqa: E731
    with mock.patch.object(dist, "_gamma", corrupted):
        code, reports = validate("all")
    assert code != 0
    assert any(not r.passed for r in reports)


def test_corrupted_log_gamma_fails_dist_suite():
    corrupted = lambda z: special.gammaln(z) * (1 + 1e-4)  # noqa: E731
    with mock.patch.object(dist, "_gammaln", corrupted):
        code, _ = validate("dist")
    assert code != 0


def test_every_module_has_a_suite():
    assert set(SUITES) == {"dist", "market", "welfare", "asymptotics", "oracles", "expcli"}
