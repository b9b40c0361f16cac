from configparser import ConfigParser
import os

from Helpers import parse_rational

config = ConfigParser()
config.read(os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config.ini'))


def _csv(key, section='SAMPLES'):
    return [x.strip() for x in config[section][key].split(',') if x.strip()]


def _rationals(key, section='SAMPLES'):
    return tuple(parse_rational(x) for x in _csv(key, section))


def _pairs(key, section='SAMPLES'):
    # "2:3, 1:-1" -> ((2, 3), (1, -1))
    pairs = []
    for item in _csv(key, section):
        left, right = item.split(':')
        pairs.append((parse_rational(left), parse_rational(right)))
    return tuple(pairs)


class DefaultConfig:
    MAX_N = int(config['DEFAULTS']['max_n'])
    ORDER = int(config['DEFAULTS']['order'])
    WORKERS = int(config['DEFAULTS']['workers'])
    ORACLE_LIMIT = int(config['DEFAULTS']['oracle_limit'])

    LAMBDA_SAMPLES = _rationals('lambdas')
    RS_SAMPLES = _pairs('rs')
    A_SAMPLES = _rationals('a')

    RANDOM_SEED = int(config['CHECKS']['random_seed'])
    RANDOM_VECTORS = int(config['CHECKS']['random_vectors'])
    DELTA_SERIES = int(config['CHECKS']['delta_series'])
    SERIES_ORDER = int(config['CHECKS']['series_order'])
    UMBRAL_MAX_N = int(config['CHECKS']['umbral_max_n'])

    LOG_LEVEL = config['LOGGING']['level']


class TestConfig(DefaultConfig):
    MAX_N = int(config['TEST']['max_n'])
    WORKERS = 1
    LOG_LEVEL = 'WARNING'


def get_config():
    cfg_name = os.getenv("UMBRAL_CONFIG", "Default")
    return globals()[f"{cfg_name}Config"]
