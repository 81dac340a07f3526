import abc
import os
from pydantic import ConfigDict, BaseModel
from typing import Any, TypeVar, Callable


M = TypeVar("M", bound=BaseModel)
Tuple1Type = tuple[str]
Tuple2Type = tuple[str, str]
Tuple1or2Type = Tuple1Type | Tuple2Type
EpilogueHandlerType = Callable[[int, float], None]
PrologueHandlerType = Callable[[Any], None]
ExceptionHandlerType = Callable[[BaseException], int]

JSON_CONFIG_ENV_VAR = "FRANKCERT_JSON_CONFIG"


class Cmd(BaseModel):
    """
    A subcommand. Fields are the options, `run` writes the JSON result.

    Errors are reported by raising a FrankcertError, the runner maps it to the exit code.
    """

    @abc.abstractmethod
    def run(self) -> None: ...


class CliConfig(ConfigDict, total=False):
    """Preset keys that live in a Cmd's model_config next to the pydantic ones"""

    # the option is --{cli_json_key}
    cli_json_key: str
    cli_json_enable: bool
    cli_json_config_env_var: str
    cli_json_config_path: str | None
    # missing preset file is an error (True) or a warning (False)
    cli_json_validate_path: bool


_DEFAULTS: dict[str, Any] = {
    "cli_json_key": "json-config",
    "cli_json_enable": False,
    "cli_json_config_env_var": JSON_CONFIG_ENV_VAR,
    "cli_json_config_path": None,
    "cli_json_validate_path": True,
}


def _get_cli_config_from_model(cls: type[M]) -> CliConfig:
    d = {k: cls.model_config.get(k, v) for k, v in _DEFAULTS.items()}
    # precedence: commandline > env var > model_config
    d["cli_json_config_path"] = os.environ.get(
        d["cli_json_config_env_var"], d["cli_json_config_path"]
    )
    return CliConfig(**d)  # type: ignore[typeddict-item]
