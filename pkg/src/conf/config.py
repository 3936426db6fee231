from pydantic_settings import BaseSettings, SettingsConfigDict

VERSION = "0.1.0"


class Settings(BaseSettings):
    automorphism_limit: int = 10
    enumeration_limit: int = 12
    brute_force_max_edges: int = 24
    stable_set_limit: int = 20
    k_realizability_limit: int = 8
    facet_edge_limit: int = 12
    allow_large: bool = False
    threads: int = 0
    seed: int = 7
    state_tolerance: float = 1e-12
    violation_tolerance: float = 1e-9
    max_denominator: int = 10 ** 9
    search_budget: int = 10_000
    search_restarts: int = 8
    sqlalchemy_database_url: str = 'sqlite:///./polytopes.db'
    log_level: str = 'INFO'

    model_config = SettingsConfigDict(env_prefix="EVENTGRAPH_", env_file=".env", env_file_encoding="utf-8")


settings = Settings()
