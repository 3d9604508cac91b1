# ------------------------------
# Services's utils
# ------------------------------

import hashlib
import json
import logging
from pathlib import Path
from typing import Any

import pandas as pd

from services.constants import CERTIFICATE_INDENT
from services.errors import InputError, InvariantViolation, ParseError

logger = logging.getLogger(__name__)


def enforce_schema(df: pd.DataFrame, schema: dict, strict: bool = True) -> pd.DataFrame:
    '''
      Enforce a schema on a DataFrame.

      Args:
          df: DataFrame to enforce schema on
          schema: dict of {column: dtype}
          strict: if True, raise error if columns are missing

      Returns:
          DataFrame with schema applied
    '''
    missing = set(schema) - set(df.columns)
    extra = set(df.columns) - set(schema)

    if missing:
        msg = f"Missing expected columns: {missing}"
        if strict:
            raise InvariantViolation("summary schema", msg)
        logger.warning(msg)

    if extra:
        logger.warning(f"Unexpected extra columns: {extra}")

    for col, dtype in schema.items():
        if col in df.columns:
            df[col] = df[col].astype(dtype)
    return df[[c for c in schema if c in df.columns] + sorted(extra)]


def enforce_document_schema(document: Any, schema: dict, name: str = "document") -> dict:
    '''
      Check a parsed JSON document against {field: (type(s), required)}.

      Missing required fields and mistyped fields raise ParseError naming the
      field; unknown fields are only logged.
    '''
    if not isinstance(document, dict):
        raise ParseError(f"{name} must be a JSON object")
    for key, (expected, required) in schema.items():
        if key not in document:
            if required:
                raise ParseError(f"{name} is missing a required field", field=key)
            continue
        if not isinstance(document[key], expected) or isinstance(document[key], bool):
            raise ParseError(f"{name} has a field of the wrong type", field=key)
    extra = set(document) - set(schema)
    if extra:
        logger.warning(f"Unexpected extra fields in {name}: {sorted(extra)}")
    return document


def read_file(file_path: str) -> str:
    '''
      Read text from a file.
    '''
    try:
        with open(file_path, 'r', encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InputError(f"Cannot read {file_path}: {e}")


def read_json(file_path: str) -> Any:
    """Parse a JSON file; syntax errors become ParseError with the line number."""
    text = read_file(file_path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {file_path}: {e.msg}", line=e.lineno)


def write_file(text: str, file_path: str) -> str:
    '''
      Write text to a file.
    '''
    try:
        Path(file_path).parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, 'w', encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise InputError(f"Cannot write {file_path}: {e}")
    logger.info(f"Wrote text to {file_path}")
    return file_path


def canonical_json(data: Any) -> str:
    """Stable key order, fixed indent, UTF-8 kept readable."""
    return json.dumps(data, sort_keys=True, indent=CERTIFICATE_INDENT, ensure_ascii=False)


def digest(data: Any) -> str:
    compact = json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return "sha256:" + hashlib.sha256(compact.encode("utf-8")).hexdigest()
