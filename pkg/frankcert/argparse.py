"""
argparse glue for frankcert: no sys.exit calls, every parser failure is a UsageError (exit 1)
"""

import sys
import typing as T
from argparse import ArgumentParser, SUPPRESS, Action

from .errors import UsageError


class TerminalEagerCommand(Exception):
    """--help or --version has printed its text and the run should stop with exit 0"""


class _EagerAction(Action):
    """Print something to stdout then stop parsing"""

    def __init__(
        self,
        option_strings: T.Sequence[str],
        render: T.Callable[[ArgumentParser], str],
        dest: str = SUPPRESS,
        default: T.Any = SUPPRESS,
        help: str | None = None,
    ):
        super().__init__(
            option_strings=option_strings,
            dest=dest,
            default=default,
            nargs=0,
            help=help,
        )
        self.render = render

    def __call__(self, parser, namespace, values, option_string=None):
        sys.stdout.write(self.render(parser))
        sys.stdout.flush()
        raise TerminalEagerCommand(f"{option_string} completed")


def _render_version(version: str) -> T.Callable[[ArgumentParser], str]:
    def f(parser: ArgumentParser) -> str:
        formatter = parser._get_formatter()
        formatter.add_text(version)
        return formatter.format_help()

    return f


class CustomArgumentParser(ArgumentParser):
    def error(self, message: str) -> T.NoReturn:  # type: ignore
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status: int = 0, message: str | None = None) -> T.NoReturn:  # type: ignore
        if status != 0:
            raise UsageError(f"{self.prog}: exited with status {status} {message or ''}".rstrip())
        raise TerminalEagerCommand(message or "")


def _parser_add_help(p: CustomArgumentParser) -> CustomArgumentParser:
    p.add_argument(
        "--help",
        help="Print Help and Exit",
        action=_EagerAction,
        render=lambda parser: parser.format_help(),
    )
    return p


def _parser_add_version(parser: ArgumentParser, version: str) -> ArgumentParser:
    parser.add_argument(
        "--version",
        help="Print the frankcert version and Exit",
        action=_EagerAction,
        render=_render_version(version),
    )
    return parser
