import io
import os
import shlex
import unittest
from contextlib import redirect_stdout
from typing import Callable as F, Mapping

from frankcert import (
    __version__,
    Cmd,
    to_runner,
    default_prologue_handler,
    default_epilogue_handler,
    PrologueHandlerType,
    EpilogueHandlerType,
    ExceptionHandlerType,
)
from frankcert.cli import exception_handler as cli_exception_handler

# Petersen needs 2^14 orientations in the exact oracle, opt in for the slow corpus
FULL_CORPUS = os.environ.get("FRANKCERT_FULL_CORPUS", "0") == "1"


# Making this name a bit odd (from TestConfig)
# to get around Pytest complaining that
# it can't collect the "Test"
class HarnessConfig:
    def __init__(
        self,
        cmds: Mapping[str, type[Cmd]],
        prologue: PrologueHandlerType = default_prologue_handler,
        epilogue: EpilogueHandlerType = default_epilogue_handler,
        exception_handler: ExceptionHandlerType = cli_exception_handler,
        version: str | None = __version__,
    ):
        self.cmds = cmds
        self.prologue = prologue
        self.epilogue = epilogue
        self.exception_handler = exception_handler
        self.version = version


class _TestHarness(unittest.TestCase):
    CONFIG: HarnessConfig

    def _runner(self) -> F[[list[str]], int]:
        return to_runner(
            self.CONFIG.cmds,
            version=self.CONFIG.version,
            exception_handler=self.CONFIG.exception_handler,
            prologue_handler=self.CONFIG.prologue,
            epilogue_handler=self.CONFIG.epilogue,
        )

    def run_config(self, args: str | list[str], exit_code: int = 0) -> str:
        """Run the CLI in-process, check the exit code and return stdout"""
        xs = shlex.split(args) if isinstance(args, str) else args
        buf = io.StringIO()
        with redirect_stdout(buf):
            _exit_code = self._runner()(xs)
        self.assertEqual(_exit_code, exit_code, msg=f"args={xs} stdout={buf.getvalue()}")
        return buf.getvalue()
