import pytest

from combinatorics import characters
from combinatorics.partitions import Partition
from config.settings import config
from oracle.group_table import wreath_group_table, wreath_involution


@pytest.fixture
def restore_config():
    """Snapshot the global config and put it back after the test"""
    saved = config.as_dict()
    yield config
    config.apply(saved)


@pytest.fixture
def cache_dir(tmp_path, restore_config):
    """A persistent character cache in a temporary directory"""
    config.apply({"CACHE_DIR": str(tmp_path)})
    cache = characters.configure_cache(tmp_path)
    yield tmp_path
    cache.close()
    characters.configure_cache(None)


@pytest.fixture(scope="session")
def order8_group():
    """S_2 wr Z_2 as a multiplication table, with m's index"""
    group = wreath_group_table(2)
    return group, wreath_involution(group)


def P(text: str) -> Partition:
    return Partition.parse(text)
