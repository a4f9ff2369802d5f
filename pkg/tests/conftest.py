import pathlib
import sys

import pytest

SRC = pathlib.Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))


@pytest.fixture(scope="session")
def root_cache():
    """Session-wide certified RootSets keyed by degree (default precision).

    Solves are expensive at large n; every test that needs certified roots
    goes through here so the n=2..80 campaign happens at most once.
    """
    from lemnizeros.analysis import certified_roots_range
    from lemnizeros.numerics import PrecisionConfig

    cache: dict[int, object] = {}
    cfg = PrecisionConfig()

    def get(ns):
        missing = sorted(set(ns) - cache.keys())
        if missing:
            cache.update(certified_roots_range(missing, cfg))
        return {n: cache[n] for n in ns}

    return get
