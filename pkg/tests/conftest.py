# tests/conftest.py
from typing import Callable, Tuple

import pytest

from manage import main


@pytest.fixture
def run_cli(capsys) -> Callable[..., Tuple[int, str]]:
    """Runs the command line in-process and returns (exit code, stdout)."""

    def _run(*argv: str) -> Tuple[int, str]:
        code = main(list(argv))
        return code, capsys.readouterr().out

    return _run
