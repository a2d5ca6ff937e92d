import os
from pathlib import Path

import pytest

# persistent repo-local cache so the expensive exact counts survive reruns
os.environ.setdefault("RADSUM_CACHE_DIR", str(Path(__file__).resolve().parent.parent / ".radsum-cache"))


@pytest.fixture(scope="session")
def zero_table():
    from radsum.zeta import load_default_zeros

    return load_default_zeros()
