"""
Abstract interface for report archives.
"""
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional


class RunArchive(ABC):
    """
    Stores CLI reports together with the seed and configuration that produced them.
    """

    @abstractmethod
    def insert_run(self, command: str, seed: Optional[int], config: Dict[str, Any],
                   report: Dict[str, Any], value: Optional[float] = None) -> int:
        """
        Archive one report.

        Args:
            command: CLI command that produced the report
            seed: Root seed of the run (None for deterministic commands)
            config: Configuration echo
            report: Full report document
            value: Headline value (e.g. an MR total), if the command has one

        Returns:
            ID of the archived run
        """
        pass

    @abstractmethod
    def get_run(self, run_id: int) -> Optional[Dict[str, Any]]:
        """
        Retrieve one archived run, or None if the ID is unknown.
        """
        pass

    @abstractmethod
    def search_runs(self, command: str, limit: int = 10, offset: int = 0) -> List[Dict[str, Any]]:
        """
        Runs of one command, most recent first.

        Args:
            command: Command name
            limit: Page size
            offset: Number of runs to skip

        Returns:
            List of run dictionaries
        """
        pass

    @abstractmethod
    def get_recent_runs(self, limit: int = 20) -> List[Dict[str, Any]]:
        pass

    @abstractmethod
    def best_value(self, command: str, seed: Optional[int] = None) -> Optional[float]:
        """
        Smallest archived headline value of a command (optionally for one seed).
        """
        pass
