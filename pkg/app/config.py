from pydantic_settings import BaseSettings

class Settings(BaseSettings):
    MESSAGE: str = "Cayley Automaton Toolkit"
    MAX_ELEMENTS: int = 100_000
    MAX_LENGTH: int = 12
    CROSSCHECK_MAX_SIZE: int = 4
    LOG_LEVEL: str = "WARNING"

    class Config:
        env_file = ".env"
        env_prefix = "CAYLEY_"
        extra = "ignore"

settings = Settings()
