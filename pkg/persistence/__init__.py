from .storage_interface import RunArchive
from .sqlite_store import SQLiteRunArchive

__all__ = [
    'RunArchive',
    'SQLiteRunArchive'
]
