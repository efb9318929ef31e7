"""
File storage module for char1

This module provides thread-safe reading and writing of the JSON and CSV
artifacts produced and consumed by the command-line tools.
"""

import csv
import json
import os
import logging
import threading
from typing import Any, Iterable, List, Optional, Sequence

from core.errors import ValidationError

# Initialize logger
logger = logging.getLogger(__name__)

# Thread lock for file operations
file_locks = {}
_locks_guard = threading.Lock()


def get_file_lock(file_path: str) -> threading.RLock:
    """Get a lock for a specific file to ensure thread safety."""
    key = os.path.abspath(file_path)
    with _locks_guard:
        if key not in file_locks:
            file_locks[key] = threading.RLock()
        return file_locks[key]


def ensure_directory_exists(file_path: str) -> None:
    """Ensure the directory for a file exists."""
    directory = os.path.dirname(file_path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory, exist_ok=True)
        logger.info(f"Created directory: {directory}")


def load_json_file(file_path: str, default: Any = None) -> Any:
    """
    Load data from a JSON file with thread safety.

    Args:
        file_path: Path to the JSON file
        default: Value returned when the file does not exist

    Returns:
        Loaded data or default value

    Raises:
        ValidationError: if the file exists but is not valid JSON
    """
    with get_file_lock(file_path):
        if not os.path.exists(file_path):
            if default is None:
                raise ValidationError(f"File not found: {file_path}")
            logger.info(f"File not found: {file_path}, returning default value")
            return default
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            logger.error(f"Error decoding JSON from {file_path}: {e}")
            raise ValidationError(f"Malformed JSON in {file_path}: {e}") from e


def save_json_file(file_path: str, data: Any) -> None:
    """
    Save data to a JSON file with thread safety.

    Args:
        file_path: Path to the JSON file
        data: Data to save
    """
    with get_file_lock(file_path):
        ensure_directory_exists(file_path)
        with open(file_path, 'w', encoding='utf-8') as f:
            json.dump(data, f, ensure_ascii=False, indent=2)
            f.write("\n")
    logger.info(f"Wrote {file_path}")


def write_csv_rows(file_path: str, columns: Sequence[str], rows: Iterable[Sequence[Any]],
                   header_line: Optional[str] = None) -> int:
    """
    Write rows to a CSV file, optionally preceded by a ``#`` comment line.

    Args:
        file_path: Destination path
        columns: Column names written as the first CSV record
        rows: Row values; each value is written with ``str``
        header_line: Provenance comment written before the column record

    Returns:
        Number of data rows written
    """
    count = 0
    with get_file_lock(file_path):
        ensure_directory_exists(file_path)
        with open(file_path, 'w', encoding='utf-8', newline='') as f:
            if header_line:
                f.write(f"# {header_line}\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([str(v) for v in row])
                count += 1
    logger.info(f"Wrote {count} rows to {file_path}")
    return count


def read_csv_rows(file_path: str) -> List[dict]:
    """Read a CSV file written by ``write_csv_rows``, skipping comment lines."""
    with get_file_lock(file_path):
        if not os.path.exists(file_path):
            raise ValidationError(f"File not found: {file_path}")
        with open(file_path, 'r', encoding='utf-8', newline='') as f:
            lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))
