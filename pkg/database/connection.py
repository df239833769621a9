"""
Character cache database: connection pool, initialization and table persistence
"""
import queue
import sqlite3
import threading
from contextlib import contextmanager
from pathlib import Path

from utils.logging_utils import get_logger
from database.schema import SCHEMA_VERSION, TABLES, INDEXES

logger = get_logger(__name__)


class DatabaseManager:
    """A thread-safe SQLite connection pool manager"""
    def __init__(self, db_path, pool_size=2):
        self.db_path = Path(db_path)
        self.pool_size = pool_size
        self.pool = queue.Queue(maxsize=pool_size)
        self.lock = threading.Lock()
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self._create_pool()

    def _create_pool(self):
        """Creates the connection pool"""
        for _ in range(self.pool_size):
            self.pool.put(self._create_connection())

    def _create_connection(self):
        """Creates a new database connection"""
        try:
            conn = sqlite3.connect(
                self.db_path,
                timeout=10.0,
                check_same_thread=False
            )
            conn.row_factory = sqlite3.Row
            conn.execute("PRAGMA journal_mode = DELETE")
            conn.execute("PRAGMA synchronous = NORMAL")
            return conn
        except sqlite3.Error as e:
            logger.error(f"Database error: {e}")
            raise

    @contextmanager
    def get_connection(self):
        """Get a connection from the pool"""
        conn = self.pool.get()
        try:
            yield conn
        finally:
            self.pool.put(conn)

    def close_all(self):
        """Close all connections in the pool"""
        with self.lock:
            while not self.pool.empty():
                conn = self.pool.get()
                conn.close()


def init_database(manager: DatabaseManager):
    """Create the cache tables; a stale schema version is dropped and rebuilt"""
    try:
        with manager.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(TABLES["schema_meta"])
            cursor.execute("SELECT value FROM schema_meta WHERE key = 'version'")
            row = cursor.fetchone()
            if row is not None and int(row["value"]) != SCHEMA_VERSION:
                logger.warning(f"Character cache schema {row['value']} != {SCHEMA_VERSION}, rebuilding")
                for table_name in TABLES:
                    cursor.execute(f"DROP TABLE IF EXISTS {table_name}")

            for table_name, table_sql in TABLES.items():
                logger.debug(f"Creating table: {table_name}")
                cursor.execute(table_sql)

            for index_sql in INDEXES:
                cursor.execute(index_sql)

            cursor.execute(
                "INSERT OR REPLACE INTO schema_meta (key, value) VALUES ('version', ?)",
                (str(SCHEMA_VERSION),),
            )
            conn.commit()
            logger.info(f"Character cache initialized at {manager.db_path}")

    except Exception as e:
        logger.error(f"Failed to initialize character cache: {e}")
        raise


def load_table(manager: DatabaseManager, n: int):
    """Return {(shape, cycle_type): value} for a completed table, else None"""
    with manager.get_connection() as conn:
        cursor = conn.cursor()
        cursor.execute("SELECT entries FROM completed_tables WHERE n = ?", (n,))
        if cursor.fetchone() is None:
            return None
        cursor.execute(
            "SELECT shape, cycle_type, value FROM character_values WHERE n = ?", (n,)
        )
        return {(row["shape"], row["cycle_type"]): int(row["value"]) for row in cursor.fetchall()}


def store_table(manager: DatabaseManager, n: int, entries: dict):
    """Persist {(shape, cycle_type): value} (string keys) as a completed table"""
    with manager.get_connection() as conn:
        cursor = conn.cursor()
        cursor.executemany(
            "INSERT OR REPLACE INTO character_values (n, shape, cycle_type, value) VALUES (?, ?, ?, ?)",
            [(n, shape, cycle_type, str(value)) for (shape, cycle_type), value in entries.items()],
        )
        cursor.execute(
            "INSERT OR REPLACE INTO completed_tables (n, entries) VALUES (?, ?)",
            (n, len(entries)),
        )
        conn.commit()
    logger.info(f"Stored character table for n={n} ({len(entries)} entries)")
