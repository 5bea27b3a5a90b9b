import shutil
import subprocess

import pytest

from kexport.chain import ChainSpec
from kexport import model_engine


@pytest.fixture(scope="session")
def kvqe():
    """Runner for the downstream consumer CLI; the exporter talks to it only
    through files and subprocesses."""
    exe = shutil.which("kvqe")
    if exe is None:
        pytest.skip("kvqe CLI not on PATH")

    def run(*args, cwd=None):
        return subprocess.run([exe, *args], capture_output=True, text=True, cwd=cwd)

    return run


@pytest.fixture(scope="session")
def chain2():
    """Small fixture: 1x1x2 mesh, fast enough for exact cross checks."""
    return model_engine.solve(ChainSpec(r=1.0, mesh=(1, 1, 2)))


@pytest.fixture(scope="session")
def chain4():
    return model_engine.solve(ChainSpec(r=1.0, mesh=(1, 1, 4)))
