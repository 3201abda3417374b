import io
import os
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

import chc
from chc.cli import main as cli_main

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def tetra():
    return chc.generate_fixture("tetrahedron")


@pytest.fixture(scope="session")
def octa():
    return chc.generate_fixture("octahedron")


@pytest.fixture(scope="session")
def icosa():
    return chc.generate_fixture("icosahedron")


@pytest.fixture(scope="session")
def cyclic7():
    return chc.generate_fixture("cyclic7_torus")


@pytest.fixture(scope="session")
def grid33():
    return chc.generate_fixture("torus_grid", a=3, b=3)


def run_cli(*argv, env=None):
    """Run the CLI in process. Returns (exit code, stdout, stderr)."""
    saved = {}
    if env:
        for k, v in env.items():
            saved[k] = os.environ.get(k)
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v
    out, err = io.StringIO(), io.StringIO()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            code = cli_main(list(argv))
    finally:
        for k, v in saved.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v
    return code, out.getvalue(), err.getvalue()
