from rank2roots.shared.config import Environment, Settings


def get_test_settings(**overrides) -> Settings:
    """Settings with test values; keyword arguments override single fields."""
    values = dict(
        ENVIRONMENT=Environment.TEST,
        DEBUG=True,
        LOG_LEVEL="DEBUG",
        BATCH_WORKERS=1,
    )
    values.update(overrides)
    return Settings(**values)
