from dataclasses import dataclass
import os

from dotenv import find_dotenv, load_dotenv

# Load .env before the class body reads environment variables
_dotenv_path = find_dotenv(usecwd=True)
if _dotenv_path:
    load_dotenv(_dotenv_path)


def _env_bool(name: str, default: bool = False) -> bool:
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


@dataclass
class Settings:
    _instance = None

    #application keys
    app_name = os.environ.get('APP_NAME', 'logderiv')
    logging_level = os.environ.get('LOGGING_LEVEL', 'WARNING')
    app_logging_level = os.environ.get('APP_LOGGING_LEVEL', 'WARNING')
    log_format = os.environ.get('LOG_FORMAT', 'json')
    log_file = os.environ.get('LOG_FILE')

    # oracle keys
    oracle_order = _env_int('ORACLE_ORDER', 40)
    oracle_slack = _env_int('ORACLE_SLACK', 8)

    # groebner keys
    chain_criterion = _env_bool('CHAIN_CRITERION')
    verify_groebner = _env_bool('VERIFY_GROEBNER')
    eliminant_workers = _env_int('ELIMINANT_WORKERS', 4)

    # base field keys
    max_prime = _env_int('MAX_PRIME', 2**63 - 1)
    infinite_perfect_field = _env_bool('INFINITE_PERFECT_FIELD')

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def reload(self):
        Settings._instance = None
        return Settings()


SETTINGS = Settings()
