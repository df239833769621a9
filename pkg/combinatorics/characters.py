"""
Exact characters of S_n by the Murnaghan-Nakayama rim-hook recursion, full
character tables, and the shared (optionally persistent) table cache.
"""
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from config.settings import config
from combinatorics.partitions import (
    CycleType, Partition, Shape, class_size, dimension, enumerate_partitions,
    identity_type, remove_rim_hooks,
)
from utils.errors import BudgetExceeded, CharacterTableError, PartitionError
from utils.logging_utils import get_logger

logger = get_logger(__name__)


@lru_cache(maxsize=None)
def _murnaghan_nakayama(shape: tuple, cycles: tuple) -> int:
    # memo key: (diagram, remaining cycles, largest first)
    if not cycles:
        return 1
    k, rest = cycles[0], cycles[1:]
    total = 0
    for remaining, leg in remove_rim_hooks(Partition(shape), k):
        term = _murnaghan_nakayama(tuple(remaining), rest)
        total += -term if leg % 2 else term
    return total


def character(shape: Shape, cycle_type: CycleType) -> int:
    """chi_lambda at the class of the given cycle type"""
    if shape.n != cycle_type.n:
        raise PartitionError(f"Size mismatch: shape {shape} has n={shape.n}, class {cycle_type} has n={cycle_type.n}")
    # strip the longest cycles first: long ribbons are rare and prune fastest
    return _murnaghan_nakayama(tuple(shape), tuple(sorted(cycle_type, reverse=True)))


@dataclass(frozen=True)
class CharacterTable:
    """Character table of S_n; rows are shapes, columns cycle types, both reverse-lex"""
    n: int
    shapes: tuple
    classes: tuple
    values: tuple  # values[i][j] = chi_{shapes[i]}(classes[j])
    class_sizes: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "class_sizes", tuple(class_size(c) for c in self.classes))
        object.__setattr__(self, "_shape_index", {s: i for i, s in enumerate(self.shapes)})
        object.__setattr__(self, "_class_index", {c: j for j, c in enumerate(self.classes)})

    @property
    def order(self) -> int:
        return factorial(self.n)

    def shape_index(self, shape: Shape) -> int:
        return self._shape_index[shape]

    def class_index(self, cycle_type: CycleType) -> int:
        return self._class_index[cycle_type]

    def value(self, shape: Shape, cycle_type: CycleType) -> int:
        return self.values[self._shape_index[shape]][self._class_index[cycle_type]]

    def row(self, shape: Shape) -> tuple:
        return self.values[self._shape_index[shape]]

    def entries(self) -> dict:
        return {
            (shape, cls): self.values[i][j]
            for i, shape in enumerate(self.shapes)
            for j, cls in enumerate(self.classes)
        }

    def check_row_orthogonality(self):
        """(1/n!) sum_c |c| chi_s chi_t = [s = t], exactly"""
        for i in range(len(self.shapes)):
            for k in range(i, len(self.shapes)):
                total = sum(size * a * b for size, a, b in zip(self.class_sizes, self.values[i], self.values[k]))
                expected = self.order if i == k else 0
                if total != expected:
                    raise CharacterTableError(
                        f"Row orthogonality fails for {self.shapes[i]}, {self.shapes[k]}: {total} != {expected}"
                    )

    def check_column_orthogonality(self):
        """sum_lambda chi_lambda(c)^2 |c| = n! for every class c"""
        for j, size in enumerate(self.class_sizes):
            total = size * sum(row[j] ** 2 for row in self.values)
            if total != self.order:
                raise CharacterTableError(f"Column orthogonality fails at {self.classes[j]}: {total} != {self.order}")

    def check_dimensions(self):
        identity = self._class_index[identity_type(self.n)]
        for i, shape in enumerate(self.shapes):
            if self.values[i][identity] != dimension(shape):
                raise CharacterTableError(f"chi_{shape}(1) != d_{shape}")


def compute_character_table(n: int) -> CharacterTable:
    partitions = enumerate_partitions(n)
    values = tuple(tuple(character(shape, cls) for cls in partitions) for shape in partitions)
    return CharacterTable(n, partitions, partitions, values)


class CharacterCache:
    """
    Process-wide store of character tables.

    Tables are computed once per n under a re-entrant lock and shared read-only.
    With a cache directory configured, completed tables are read from and
    written to the SQLite character cache.
    """

    def __init__(self, db_path=None):
        self.lock = threading.RLock()
        self.tables = {}
        self.db_path = db_path
        self._manager = None

    def _database(self):
        if self.db_path is None:
            return None
        if self._manager is None:
            from database.connection import DatabaseManager, init_database
            self._manager = DatabaseManager(self.db_path)
            init_database(self._manager)
        return self._manager

    def table(self, n: int) -> CharacterTable:
        with self.lock:
            if n in self.tables:
                return self.tables[n]
            table = self._load(n)
            if table is None:
                logger.debug(f"Computing S_{n} character table")
                table = compute_character_table(n)
                self._store(table)
            self.tables[n] = table
            return table

    def _load(self, n: int):
        manager = self._database()
        if manager is None:
            return None
        from database.connection import load_table
        stored = load_table(manager, n)
        if stored is None:
            return None
        partitions = enumerate_partitions(n)
        try:
            values = tuple(
                tuple(stored[(str(shape), str(cls))] for cls in partitions) for shape in partitions
            )
        except KeyError:
            logger.warning(f"Incomplete cached table for n={n}, recomputing")
            return None
        logger.info(f"Loaded S_{n} character table from cache")
        return CharacterTable(n, partitions, partitions, values)

    def _store(self, table: CharacterTable):
        manager = self._database()
        if manager is None:
            return
        from database.connection import store_table
        store_table(manager, table.n, {(str(s), str(c)): v for (s, c), v in table.entries().items()})

    def close(self):
        with self.lock:
            if self._manager is not None:
                self._manager.close_all()
                self._manager = None


character_cache = CharacterCache(config.cache_path)


def configure_cache(cache_dir):
    """Point the shared cache at a directory (None for memory only)"""
    global character_cache
    from pathlib import Path
    character_cache.close()
    db_path = Path(cache_dir) / "characters.db" if cache_dir else None
    character_cache = CharacterCache(db_path)
    return character_cache


def require_character_budget(n: int):
    if n > config.MAX_CHARACTER_N:
        logger.warning(f"Refusing exact S_{n} work above MAX_CHARACTER_N={config.MAX_CHARACTER_N}")
        raise BudgetExceeded("max_character_n", n, config.MAX_CHARACTER_N)


def character_table(n: int) -> CharacterTable:
    require_character_budget(n)
    return character_cache.table(n)
