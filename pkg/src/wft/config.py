"""Runtime limits: baked-in defaults, overridable via a WFT_CONFIG file."""

import copy
import json
import os

from .errors import MalformedInput

DEFAULTS = {
    "leq_star_cap": 500000,
    "antichain_cap": 500000,
    "exhaustive_coloring_cap": 70000,
    "family_exhaustive_cap": 4096,
    "subtree_enum_cap": 400000,
    "oracle_caps": {
        "depth": 3,
        "width": 9,
        "worlds": 4,
        "rounds": 4,
        "instances": 250000,
    },
}


def load():
    """Defaults merged with the JSON file named by WFT_CONFIG, if any."""
    cfg = copy.deepcopy(DEFAULTS)
    path = os.environ.get("WFT_CONFIG")
    if path:
        try:
            with open(path) as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise MalformedInput("cannot read config file", path=path,
                                 detail=str(exc))
        if not isinstance(user, dict):
            raise MalformedInput("config file must hold a JSON object",
                                 path=path)
        _merge(cfg, user)
    return cfg


def _merge(base, over):
    for key, val in over.items():
        if isinstance(val, dict) and isinstance(base.get(key), dict):
            _merge(base[key], val)
        else:
            base[key] = val


def get(key, default=None):
    return load().get(key, default)
