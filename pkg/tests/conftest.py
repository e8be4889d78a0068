"""Pytest configuration and shared fixtures."""

import json
import sys
import tempfile
from pathlib import Path

import pytest

# Add scripts directory to path for imports
scripts_dir = Path(__file__).parent.parent / "scripts"
sys.path.insert(0, str(scripts_dir))

FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"

from machines.library import (  # noqa: E402
    conditional_permutation,
    inclusion_example,
    permutation_transducer,
    shift_transducer,
)
from machines.signatures import generator  # noqa: E402


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield tmpdir


@pytest.fixture
def temp_project_dir(temp_dir):
    """Create a temporary project directory."""
    project_dir = Path(temp_dir) / "test_project"
    project_dir.mkdir()
    return str(project_dir)


@pytest.fixture
def fixtures_dir():
    return FIXTURES_DIR


@pytest.fixture
def inclusion():
    """Six-state binary machine in L_2 = K_2 that is not in D_2."""
    return inclusion_example()


@pytest.fixture
def shift2():
    return shift_transducer(2)


@pytest.fixture
def gen23():
    """T(2, 3) for n = 6."""
    return generator(6, 2, 3)


@pytest.fixture
def gen32():
    """T(3, 2) for n = 6."""
    return generator(6, 3, 2)


@pytest.fixture
def swap3():
    """Letter transposition 0 <-> 1 on three letters."""
    return permutation_transducer(3, [1, 0, 2])


@pytest.fixture
def cond3():
    """Swap 1 and 2 whenever the previous letter was 0."""
    return conditional_permutation(3, 0, [0, 2, 1])


@pytest.fixture
def conveyor_spec(temp_dir):
    """A letterwise conveyor description written to disk."""
    spec = {"n": 2, "w": "0,1", "U": ["0,0", "1,1"], "form": "letterwise", "permutation": [1, 0]}
    path = Path(temp_dir) / "flip.json"
    with open(path, 'w') as f:
        json.dump(spec, f)
    return str(path)


@pytest.fixture
def default_config():
    """Return the default configuration."""
    return {
        "bounds": {
            "depth": None,
            "remainder": None,
            "max_k": None,
            "nd_check_length": None,
            "nd_check_cap": 10,
        },
        "suite": {"pool_size": 30, "seed": 20240611, "samples": 50},
        "log_file": False,
        "log_dir": None,
        "debug": False,
    }
