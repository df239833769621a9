from math import factorial

import pytest

from combinatorics import characters
from combinatorics.characters import CharacterCache, character, character_table
from combinatorics.partitions import dimension, enumerate_partitions
from utils.errors import BudgetExceeded, PartitionError

from conftest import P


def test_known_values():
    assert character(P("2+1"), P("3")) == -1
    assert character(P("2+1"), P("2+1")) == 0
    assert character(P("2+1"), P("1+1+1")) == 2
    assert character(P("1+1+1"), P("2+1")) == -1


def test_s3_table():
    table = character_table(3)
    assert table.shapes == (P("3"), P("2+1"), P("1+1+1"))
    assert table.values == ((1, 1, 1), (-1, 0, 2), (1, -1, 1))
    assert table.class_sizes == (2, 3, 1)


def test_s1_table():
    table = character_table(1)
    assert table.values == ((1,),)


@pytest.mark.parametrize("n", range(1, 9))
def test_orthogonality(n):
    table = character_table(n)
    table.check_row_orthogonality()
    table.check_column_orthogonality()
    table.check_dimensions()


@pytest.mark.parametrize("n", range(1, 11))
def test_sum_of_squared_dimensions(n):
    assert sum(dimension(shape) ** 2 for shape in enumerate_partitions(n)) == factorial(n)


def test_size_mismatch():
    with pytest.raises(PartitionError):
        character(P("2+1"), P("2+2"))


def test_budget_refusal(restore_config):
    restore_config.apply({"MAX_CHARACTER_N": 5})
    with pytest.raises(BudgetExceeded) as info:
        character_table(6)
    assert info.value.budget == "max_character_n"


def test_cache_persists_tables(cache_dir):
    first = character_table(5)
    assert (cache_dir / "characters.db").exists()
    # a fresh cache on the same directory loads instead of recomputing
    fresh = CharacterCache(cache_dir / "characters.db")
    try:
        loaded = fresh._load(5)
        assert loaded is not None
        assert loaded.values == first.values
        assert fresh._load(6) is None
    finally:
        fresh.close()


def test_configure_cache_memory_only(restore_config):
    cache = characters.configure_cache(None)
    assert cache.db_path is None
    assert cache.table(4).n == 4
