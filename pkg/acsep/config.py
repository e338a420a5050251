"""Run settings.

Sources are tested in particular order and priority (higher to lower):
- overrides passed as kwargs (command-line flags)
- YML config file (`acsep.yml` in the working dir, or an explicit path)
- model defaults
"""

import logging
import pathlib as pth
import typing as t

import pydantic as pd
from ruamel.yaml import YAML as _YAML

from .acs import AcsMethod
from .oracle import OracleLimits
from .triangulation import Method

yaml = _YAML(typ='safe')
log = logging.getLogger(__name__)

DEFAULT_CONFIG = pth.Path('acsep.yml')


class ConfigError(Exception):
    pass


class Settings(pd.BaseModel):
    model_config = pd.ConfigDict(extra='forbid', frozen=True)

    triangulation: Method = Method.MMAF
    lister: AcsMethod = AcsMethod.HEURISTIC
    jobs: int = pd.Field(default=0, ge=0)       # 0 = cpu count
    round_cap: int = pd.Field(default=0, ge=0)  # 0 = n rounds
    verify_triangulations: bool = True
    oracle: OracleLimits = OracleLimits()
    log_level: t.Literal['DEBUG', 'INFO', 'WARNING', 'ERROR'] = 'INFO'

    @pd.field_validator('lister')
    @classmethod
    def _pairwise_lister(cls, v: AcsMethod) -> AcsMethod:
        if v not in (AcsMethod.HEURISTIC, AcsMethod.STANDARD):
            raise ValueError(f'lister must be heuristic or standard, got {v}')
        return v


def _read_yaml(configfile: pth.Path) -> dict:
    try:
        cfg = yaml.load(configfile)
    except FileNotFoundError as exc:
        raise exc
    except Exception:
        raise ConfigError(f'Config file "{configfile}" is not valid YML config')

    cfg = cfg if cfg is not None else {}
    if not isinstance(cfg, dict):
        raise ConfigError(f'Config file "{configfile}" must hold a mapping')
    log.debug(f'Loaded config {configfile}:\n{cfg}')
    return cfg


def load_settings(configfile: pth.Path | str | None = None, **overrides) -> Settings:
    """An explicit `configfile` must exist; the default one is optional.

    Overrides set to None are ignored so unset command-line flags fall through.
    """
    cfg = {}
    if configfile is not None:
        cfg = _read_yaml(pth.Path(configfile))
    else:
        try:
            cfg = _read_yaml(DEFAULT_CONFIG)
        except FileNotFoundError:
            pass

    overrides = {k: v for k, v in overrides.items() if v is not None}
    if 'oracle' in overrides and isinstance(cfg.get('oracle'), dict):
        overrides['oracle'] = cfg['oracle'] | dict(overrides['oracle'])
    try:
        return Settings.model_validate(cfg | overrides)
    except pd.ValidationError as exc:
        raise ConfigError(f'Invalid settings: {exc}') from exc
