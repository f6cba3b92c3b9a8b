import pytest
from hamcrest import assert_that, equal_to, is_
from pydantic import ValidationError

from lambek_lke.settings import ProofOptions, ProverSettings


def test_defaults() -> None:
    options = ProverSettings().proof_options()
    assert_that(options, equal_to(ProofOptions()))


def test_environment_overrides_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("LKE_RESOURCE_LIMIT", "50")
    monkeypatch.setenv("LKE_BETA_ENABLED", "false")
    monkeypatch.setenv("LKE_ORACLE_DEPTH", "3")
    settings = ProverSettings()
    assert_that(settings.oracle_depth, equal_to(3))
    options = settings.proof_options()
    assert_that(options.resource_limit, equal_to(50))
    assert_that(options.beta_enabled, is_(False))


def test_flags_win_over_the_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("LKE_RESOURCE_LIMIT", "50")
    options = ProverSettings().proof_options(resource_limit=7, beta_enabled=None)
    assert_that(options.resource_limit, equal_to(7))
    assert_that(options.beta_enabled, is_(True))


def test_invalid_limits_are_rejected() -> None:
    with pytest.raises(ValidationError):
        _ = ProofOptions(resource_limit=0)


def test_residual_fallback_is_off_by_default() -> None:
    assert_that(ProofOptions().residual_fallback, is_(False))
    assert_that(ProverSettings().proof_options().residual_fallback, is_(False))


def test_search_budget_from_the_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("LKE_SEARCH_BUDGET", "12")
    assert_that(ProverSettings().proof_options().search_budget, equal_to(12))
    assert_that(ProverSettings().proof_options(search_budget=3).search_budget, equal_to(3))
