import os

import pytest


@pytest.fixture(autouse=True, scope="session")
def isolated_cache(tmp_path_factory):
    """Keep character-table cache files out of the working tree."""
    cache = tmp_path_factory.mktemp("kronlab-cache")
    old = os.environ.get("KRONLAB_CACHE")
    os.environ["KRONLAB_CACHE"] = str(cache)
    yield cache
    if old is None:
        os.environ.pop("KRONLAB_CACHE", None)
    else:
        os.environ["KRONLAB_CACHE"] = old
