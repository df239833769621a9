SCHEMA_VERSION = 1

TABLES = {
    "schema_meta": """
        CREATE TABLE IF NOT EXISTS schema_meta (
            key TEXT PRIMARY KEY,
            value TEXT NOT NULL
        )
    """,
    "character_values": """
        CREATE TABLE IF NOT EXISTS character_values (
            n INTEGER NOT NULL CHECK(n >= 0),
            shape TEXT NOT NULL,
            cycle_type TEXT NOT NULL,
            value TEXT NOT NULL,
            PRIMARY KEY (n, shape, cycle_type)
        )
    """,
    "completed_tables": """
        CREATE TABLE IF NOT EXISTS completed_tables (
            n INTEGER PRIMARY KEY,
            entries INTEGER NOT NULL,
            created_at DATETIME DEFAULT CURRENT_TIMESTAMP
        )
    """,
}

INDEXES = [
    "CREATE INDEX IF NOT EXISTS idx_character_values_n ON character_values(n)",
]
