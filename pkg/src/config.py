import copy
import logging
import os
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, Any] = {
    'solver': {
        'epsilon': '1',
        'separator': 'recursive',
        'budget': 10 ** 7,
        'prune': False,
        'workers': 1,
    },
    'limits': {
        'exact_svd': 20,
        'exhaustive_separator': 16,
        'verify_exhaustive': 12,
    },
    'separator': {
        'base_size': 4,
        'min_pair_fraction': '1/10',
        'seed_limit': 64,
    },
    'output': {
        'format': 'text',
    },
    'logging': {
        'level': 'INFO',
    },
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_yaml(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        raise FileNotFoundError(f"Config file {path} not found. Create it from config.example.yaml")
    with open(path, 'r', encoding='utf-8') as f:
        return yaml.safe_load(f) or {}


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Defaults, then config.yaml (or SVD_CONFIG / the explicit path), then env overrides.

    An explicit path that does not exist is an error; the implicit config.yaml is optional.
    """
    explicit = path or os.getenv('SVD_CONFIG')
    if explicit:
        config = _merge(DEFAULTS, load_yaml(explicit))
    elif os.path.exists('config.yaml'):
        config = _merge(DEFAULTS, load_yaml('config.yaml'))
    else:
        config = copy.deepcopy(DEFAULTS)
    if os.getenv('SVD_BUDGET'):
        config['solver']['budget'] = int(os.environ['SVD_BUDGET'])
    if os.getenv('SVD_WORKERS'):
        config['solver']['workers'] = int(os.environ['SVD_WORKERS'])
    if os.getenv('SVD_LOG_LEVEL'):
        config['logging']['level'] = os.environ['SVD_LOG_LEVEL']
    return config
