import os
from pathlib import Path

import pytest


def dataset_location() -> Path | None:
    """Directory with the Spence SRG dataset files, if the user provided one."""
    env = os.environ.get("SRGINV_DATASET")
    if env and Path(env).exists():
        return Path(env)
    default = Path(__file__).resolve().parent.parent / "data" / "spence"
    if default.exists():
        return default
    return None


@pytest.fixture
def dataset_dir() -> Path:
    loc = dataset_location()
    if loc is None:
        pytest.skip(
            "Spence SRG dataset not found; set SRGINV_DATASET to the dataset "
            "directory to run the dataset reproduction criteria"
        )
    return loc
