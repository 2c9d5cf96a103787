"""
SQLite implementation of the report archive.
"""
import json
import sqlite3
import threading
from typing import Any, Dict, List, Optional

from utils.serialization import dumps

from .storage_interface import RunArchive


class SQLiteRunArchive(RunArchive):
    """
    SQLite-backed archive of CLI runs.
    """

    def __init__(self, db_path: str = "nondisturb_runs.db"):
        """
        Open (and create if needed) the archive.

        Args:
            db_path: Path to the SQLite database file, or ":memory:"
        """
        self.db_path = db_path
        self.conn = sqlite3.connect(db_path, check_same_thread=False)
        self.conn.row_factory = sqlite3.Row
        self._lock = threading.Lock()
        self._initialize_database()

    def _initialize_database(self):
        cursor = self.conn.cursor()
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                command TEXT NOT NULL,
                seed INTEGER,
                config TEXT NOT NULL,
                report TEXT NOT NULL,
                value REAL,
                created_at DATETIME DEFAULT CURRENT_TIMESTAMP
            )
        """)
        cursor.execute("""
            CREATE INDEX IF NOT EXISTS idx_runs_command
            ON runs(command, created_at DESC)
        """)
        self.conn.commit()

    @staticmethod
    def _row(row: sqlite3.Row) -> Dict[str, Any]:
        run = dict(row)
        run['config'] = json.loads(run['config'])
        run['report'] = json.loads(run['report'])
        return run

    def insert_run(self, command: str, seed: Optional[int], config: Dict[str, Any],
                   report: Dict[str, Any], value: Optional[float] = None) -> int:
        with self._lock:
            cursor = self.conn.cursor()
            cursor.execute("""
                INSERT INTO runs (command, seed, config, report, value)
                VALUES (?, ?, ?, ?, ?)
            """, (command, seed, dumps(config), dumps(report), value))
            self.conn.commit()
            return cursor.lastrowid

    def get_run(self, run_id: int) -> Optional[Dict[str, Any]]:
        cursor = self.conn.cursor()
        cursor.execute("SELECT * FROM runs WHERE id = ?", (run_id,))
        row = cursor.fetchone()
        return self._row(row) if row is not None else None

    def search_runs(self, command: str, limit: int = 10, offset: int = 0) -> List[Dict[str, Any]]:
        cursor = self.conn.cursor()
        cursor.execute("""
            SELECT * FROM runs
            WHERE command = ?
            ORDER BY created_at DESC, id DESC
            LIMIT ? OFFSET ?
        """, (command, limit, offset))
        return [self._row(r) for r in cursor.fetchall()]

    def get_recent_runs(self, limit: int = 20) -> List[Dict[str, Any]]:
        cursor = self.conn.cursor()
        cursor.execute("""
            SELECT * FROM runs
            ORDER BY created_at DESC, id DESC
            LIMIT ?
        """, (limit,))
        return [self._row(r) for r in cursor.fetchall()]

    def best_value(self, command: str, seed: Optional[int] = None) -> Optional[float]:
        cursor = self.conn.cursor()
        if seed is None:
            cursor.execute("SELECT MIN(value) FROM runs WHERE command = ?", (command,))
        else:
            cursor.execute("SELECT MIN(value) FROM runs WHERE command = ? AND seed = ?", (command, seed))
        row = cursor.fetchone()
        return row[0] if row is not None else None

    def count_runs(self) -> int:
        cursor = self.conn.cursor()
        cursor.execute("SELECT COUNT(*) FROM runs")
        return cursor.fetchone()[0]

    def close(self):
        self.conn.close()

    def __del__(self):
        try:
            self.conn.close()
        except Exception:
            pass
