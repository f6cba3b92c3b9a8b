from pydantic import BaseModel, ConfigDict, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ProofOptions(BaseModel):
    """Limits and switches for one proof search."""

    model_config = ConfigDict(frozen=True)

    leq_budget: int = Field(default=64, ge=1)
    normalize_depth: int = Field(default=32, ge=1)
    resource_limit: int = Field(default=10000, ge=1)
    beta_enabled: bool = True
    beta_depth: int | None = Field(default=None, ge=0)
    max_substitutions: int = Field(default=32, ge=1)
    search_budget: int = Field(default=5000, ge=1)
    residual_fallback: bool = False
    count_invariance: bool = True


class ProverSettings(BaseSettings):
    """Prover configuration read from ``LKE_``-prefixed environment variables."""

    model_config = SettingsConfigDict(env_prefix="LKE_")

    leq_budget: int = 64
    normalize_depth: int = 32
    resource_limit: int = 10000
    beta_enabled: bool = True
    beta_depth: int | None = None
    max_substitutions: int = 32
    search_budget: int = 5000
    residual_fallback: bool = False
    oracle_depth: int = 2
    count_invariance: bool = True

    def proof_options(self, **overrides: int | bool | None) -> ProofOptions:
        """Builds the options for one search, letting command-line flags win over the environment.

        Args:
            **overrides: Option values to use instead of the configured ones; None values are ignored.

        Returns:
            ProofOptions: The frozen options.
        """
        values = self.model_dump(exclude={"oracle_depth"})
        values.update({key: value for key, value in overrides.items() if value is not None})
        return ProofOptions.model_validate(values)
