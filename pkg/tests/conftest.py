from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def samples_dir() -> Path:
    return REPO_ROOT / "samples"
