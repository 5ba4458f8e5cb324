import os
from pathlib import Path

import pytest


@pytest.fixture
def mobydick_path():
    """Path to the Moby Dick corpus, or skip when it is not available."""
    candidate = os.environ.get("CPDIST_MOBYDICK")
    if candidate and Path(candidate).is_file():
        return Path(candidate)
    default = Path(__file__).resolve().parent.parent / "data" / "mobydick.txt"
    if default.is_file():
        return default
    pytest.skip(
        "Moby Dick corpus not present; run scripts/fetch_mobydick.py (needs network) "
        "or point CPDIST_MOBYDICK at a plain-text copy"
    )
