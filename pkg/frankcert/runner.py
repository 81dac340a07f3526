"""
Bridge from pydantic `Cmd` models to argparse, plus the runner that
maps exceptions to the exit-code protocol (see errors.py).
"""

import collections
import datetime
import sys
import traceback
import logging
import types
import typing
from copy import deepcopy
from typing import Any, Mapping, Callable

import pydantic
from pydantic.fields import FieldInfo
from argparse import ArgumentDefaultsHelpFormatter

from .core import Cmd, Tuple1or2Type
from .core import EpilogueHandlerType, PrologueHandlerType, ExceptionHandlerType
from .core import CliConfig, _get_cli_config_from_model
from .errors import FailedExecutionException
from .utils import load_json_object, resolve_path
from .argparse import CustomArgumentParser, TerminalEagerCommand
from .argparse import _parser_add_help, _parser_add_version

log = logging.getLogger(__name__)

CmdKlassT = type[Cmd]
SubCmdKlassT = Mapping[str, CmdKlassT]

NOT_PROVIDED = ...


def _is_sequence(annotation: Any) -> bool:
    LIST_TYPES: list[type] = [list, typing.List, collections.abc.MutableSequence]
    SET_TYPES: list[type] = [set, typing.Set, collections.abc.MutableSet]
    FROZEN_SET_TYPES: list[type] = [frozenset, typing.FrozenSet, collections.abc.Set]
    ALL_SEQ = set(LIST_TYPES + SET_TYPES + FROZEN_SET_TYPES)

    # Optional[list[T]] shows up as a Union, look through it
    args = typing.get_args(annotation)
    if typing.get_origin(annotation) in (typing.Union, types.UnionType):
        return any(_is_sequence(a) for a in args if a is not type(None))
    return getattr(annotation, "__origin__", "NOTFOUND") in ALL_SEQ


def _is_flag(field_info: FieldInfo) -> bool:
    return field_info.annotation is bool and field_info.default is False


@pydantic.validate_call
def _process_tuple(tuple_one_or_two: Tuple1or2Type, long_arg: str) -> Tuple1or2Type:
    """
    Normalize the custom `cli` spelling of a field

    ("-s",)          -> ("-s", long_arg)
    ("--max-edges",) -> ("--max-edges",)
    ("input_path",)  -> ("input_path",) positional
    """
    lx: list[str] = list(tuple_one_or_two)

    nx = len(lx)
    if nx == 1:
        if lx[0].startswith("-") and len(lx[0]) == 2:
            return lx[0], long_arg
        return (lx[0],)
    elif nx == 2:
        return lx[0], lx[1]
    else:
        raise ValueError(
            f"Unsupported format for `{tuple_one_or_two}` type={type(tuple_one_or_two)}. Expected 1 or 2 tuple."
        )


def _add_pydantic_field_to_parser(
    parser: CustomArgumentParser,
    field_id: str,
    field_info: FieldInfo,
    override_value: Any = ...,
    long_prefix: str = "--",
) -> CustomArgumentParser:
    """
    :param field_id: Global Id used to store
    :param field_info: FieldInfo from Pydantic
    :param override_value: override the default value defined in the Field (from JSON preset)

    alpha: str                  -> *required* --alpha abc
    alpha: str | None = None    ->            --alpha abc
    alpha: bool = False         ->            --alpha (store_true flag)
    alpha: bool = True          ->            --alpha false (Pydantic casting)
    xs: list[str]               -> *required* --xs 1 --xs 2 (one value per flag)
    cli=("input_path",)         -> positional
    """

    default_long_arg = "".join([long_prefix, field_id])
    extra = field_info.json_schema_extra
    cli_custom_: Tuple1or2Type = (
        (default_long_arg,)
        if not isinstance(extra, dict)
        else extra.get("cli", (default_long_arg,))  # type: ignore
    )
    cli_short_long: Tuple1or2Type = _process_tuple(cli_custom_, default_long_arg)

    is_required = field_info.is_required()
    default_value = field_info.default
    is_sequence = _is_sequence(field_info.annotation)

    # A value loaded from the JSON preset makes a required field optional
    if override_value is not NOT_PROVIDED:
        default_value = override_value
        is_required = False

    cfield_info = deepcopy(field_info)
    cfield_info.json_schema_extra = None
    help_ = (
        field_info.description
        if field_info.description
        else "".join(["Field(", cfield_info.__repr_str__(", "), ")"])
    )

    if not cli_short_long[0].startswith("-"):
        # argparse refuses dest= for positionals, the name is the dest
        parser.add_argument(cli_short_long[0], help=help_)
        return parser

    if _is_flag(field_info):
        parser.add_argument(
            *cli_short_long,
            help=help_,
            default=default_value,
            dest=field_id,
            action="store_true",
        )
        return parser

    # one value per flag so a list option never swallows a positional
    shape_kw = {"action": "append"} if is_sequence else {}
    parser.add_argument(
        *cli_short_long,
        help=help_,
        default=default_value,
        dest=field_id,
        required=is_required,
        **shape_kw,  # type: ignore
    )

    return parser


def _add_pydantic_class_to_parser(
    p: CustomArgumentParser, cmd: CmdKlassT, default_overrides: dict[str, Any]
) -> CustomArgumentParser:
    for ix, field in cmd.model_fields.items():
        override_value = default_overrides.get(ix, NOT_PROVIDED)
        _add_pydantic_field_to_parser(p, ix, field, override_value=override_value)
    return p


def _get_error_exit_code(ex: BaseException, default_exit_code: int = 1) -> int:
    if isinstance(ex, FailedExecutionException):
        exit_code = ex.exit_code
    else:
        exit_code = default_exit_code
    return exit_code


def default_exception_handler(ex: BaseException) -> int:
    """
    Maps/Transforms the Exception type to an integer exit code
    """
    sys.stderr.write(str(ex) + "\n")
    exc_type, exc_value, exc_traceback = sys.exc_info()
    traceback.print_tb(exc_traceback, file=sys.stderr)
    return _get_error_exit_code(ex, 1)


def default_minimal_exception_handler(ex: BaseException) -> int:
    """
    Only write a terse error message. Don't output the entire stacktrace
    """
    sys.stderr.write(str(ex) + "\n")
    return _get_error_exit_code(ex, 1)


def default_epilogue_handler(exit_code: int, run_time_sec: float) -> None:
    pass


def default_prologue_handler(opts: Any) -> None:
    """
    Hook called with the validated Cmd instance before Cmd.run().

    This is the place to setup logging.
    """
    pass


def _runner(
    args: list[str],
    setup_hook: Callable[[list[str]], dict[str, Any]],
    to_parser_with_overrides: Callable[[dict[str, Any]], CustomArgumentParser],
    exception_handler: ExceptionHandlerType,
    prologue_handler: PrologueHandlerType,
    epilogue_handler: EpilogueHandlerType,
) -> int:
    """
    Parse the args, build the Cmd, call the prologue, run, and map
    the outcome to an exit code.
    """

    def now() -> datetime.datetime:
        return datetime.datetime.now()

    # The prologue (logging) hook can only run after the Cmd is validated,
    # so errors before that point go straight to the exception handler
    started_at = now()
    try:
        custom_default_values: dict[str, Any] = setup_hook(args)

        parser: CustomArgumentParser = to_parser_with_overrides(custom_default_values)

        pargs = parser.parse_args(args)

        cmd_cls: type[Cmd] = pargs.cmd

        d = pargs.__dict__

        # Drop the namespace entries that are not fields (cmd, json_config, ...)
        pure_keys = cmd_cls.model_fields.keys()
        pure_d = {k: v for k, v in d.items() if k in pure_keys}

        cmd = cmd_cls(**pure_d)

        prologue_handler(cmd)
        out = cmd.run()
        if out is not None:
            log.warning("Cmd.run() should return None or raise an exception.")
        exit_code = 0
    except TerminalEagerCommand:
        exit_code = 0
    except Exception as e:
        exit_code = exception_handler(e)

    dt = now() - started_at
    epilogue_handler(exit_code, dt.total_seconds())
    return exit_code


def _parser_add_arg_json_file(
    p: CustomArgumentParser, cli_config: CliConfig
) -> CustomArgumentParser:
    required = cli_config["cli_json_validate_path"]

    def validator(path: str) -> str | None:
        return resolve_path(path, required=required)

    env_var = cli_config["cli_json_config_env_var"]
    path = cli_config["cli_json_config_path"]
    p.add_argument(
        f"--{cli_config['cli_json_key']}",
        default=path,
        type=validator,
        help=f"JSON file of option defaults, also read from ${env_var} (default:{path})",
    )
    return p


def _json_preset_config(cmds: SubCmdKlassT) -> CliConfig | None:
    # one preset key for the whole program, taken from the first subcommand enabling it
    for cmd in cmds.values():
        c = _get_cli_config_from_model(cmd)
        if c["cli_json_enable"]:
            return c
    return None


def load_json_preset(args: list[str], cli_config: CliConfig) -> dict[str, Any]:
    """Pre-parse only the preset option, other args (and eager ones) are left alone"""
    c = CliConfig(**{**cli_config, "cli_json_validate_path": False})  # type: ignore[typeddict-item]
    p = _parser_add_arg_json_file(CustomArgumentParser(add_help=False), c)
    known, _ = p.parse_known_args(args)
    path = getattr(known, c["cli_json_key"].replace("-", "_"), None)
    if path is None:
        return {}
    d = load_json_object(path)
    log.debug(f"Loaded preset overrides {d} from {path}")
    return d


def _to_subparser(
    cmds: SubCmdKlassT,
    *,
    description: str | None = None,
    version: str | None = None,
    overrides: dict[str, Any] | None = None,
) -> CustomArgumentParser:
    p = CustomArgumentParser(
        description=description, formatter_class=ArgumentDefaultsHelpFormatter
    )
    sp = p.add_subparsers(
        dest="commands", help="Subcommands", parser_class=CustomArgumentParser
    )
    sp.required = True

    for name, cmd in cmds.items():
        log.debug(f"Adding subcommand {name} with {cmd}")
        spx: CustomArgumentParser = sp.add_parser(name, help=cmd.__doc__, add_help=False)
        _add_pydantic_class_to_parser(spx, cmd, overrides or {})
        cli_config = _get_cli_config_from_model(cmd)
        if cli_config["cli_json_enable"]:
            _parser_add_arg_json_file(spx, cli_config)
        _parser_add_help(spx)
        spx.set_defaults(cmd=cmd)

    if version is not None:
        _parser_add_version(p, version)
    return p


def to_runner(
    cmds: SubCmdKlassT,
    *,
    description: str | None = None,
    version: str | None = None,
    exception_handler: ExceptionHandlerType = default_exception_handler,
    prologue_handler: PrologueHandlerType = default_prologue_handler,
    epilogue_handler: EpilogueHandlerType = default_epilogue_handler,
) -> Callable[[list[str]], int]:
    """Build func(args) -> exit code for a mapping of subcommand name to Cmd"""
    if not isinstance(cmds, Mapping) or not cmds:
        raise ValueError(f"Expected a non-empty mapping of subcommands, got {cmds}")

    preset = _json_preset_config(cmds)

    def setup_hook(args: list[str]) -> dict[str, Any]:
        return {} if preset is None else load_json_preset(args, preset)

    def to_parser(overrides: dict[str, Any]) -> CustomArgumentParser:
        return _to_subparser(
            cmds, description=description, version=version, overrides=overrides
        )

    def f(args: list[str]) -> int:
        return _runner(
            args,
            setup_hook,
            to_parser,
            exception_handler,
            prologue_handler,
            epilogue_handler,
        )

    return f


def run_and_exit(
    cmds: SubCmdKlassT,
    *,
    args: list[str] | None = None,
    **kwargs: Any,
) -> typing.NoReturn:
    """Run with sys.argv (or `args`) and exit with the mapped exit code"""
    f = to_runner(cmds, **kwargs)
    sys.exit(f(sys.argv[1:] if args is None else args))
