import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from importlib.resources import files

import jsonschema
import pytest

from minorbranch.cli import main


def run_cli(*argv):
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main([str(a) for a in argv])
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


def load_schema(name):
    return json.loads((files("minorbranch") / "schemas" / name).read_text())


def validate(obj, name):
    jsonschema.Draft202012Validator(load_schema(name)).validate(obj)


@pytest.fixture
def cli():
    return run_cli


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
