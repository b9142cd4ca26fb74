"""
Utility functions for braidcheck
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Iterable, Optional

from dotenv import load_dotenv
from pydantic import BaseModel

load_dotenv()


def setup_logging(level: Optional[str] = None):
    """Setup logging configuration"""
    level_name = (level or os.getenv("LOG_LEVEL", "WARNING")).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(),
            logging.FileHandler('braidcheck.log') if os.getenv('ENVIRONMENT') == 'production' else logging.NullHandler()
        ],
        force=True,
    )


def to_json(record: Any) -> str:
    """Serialize a model or plain value as one compact JSON line"""
    if isinstance(record, BaseModel):
        return record.model_dump_json(by_alias=True)
    return json.dumps(record, separators=(",", ":"))


def write_json_lines(path: str, records: Iterable[Any]) -> int:
    """Write one JSON document per line; returns the number of lines written"""
    target = Path(path)
    count = 0
    try:
        with target.open("w", encoding="utf-8") as handle:
            for record in records:
                handle.write(to_json(record) + "\n")
                count += 1
    except OSError as e:
        logging.error(f"Failed to write {target}: {str(e)}")
        raise
    return count
