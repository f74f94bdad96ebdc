# report_utils.py

import json
import logging
import os
from datetime import datetime
from fractions import Fraction
from typing import Any, Dict, List

import numpy as np

from src.exact_linalg import fraction_str, vector_to_json

logger = logging.getLogger(__name__)


def get_report_path(base_dir, command):
    """
    Generate a timestamped file path for saving a report.
    """
    timestamp = datetime.now().strftime("%Y%m%d-%H%M%S")
    file_name = f"REPORT_{command}_{timestamp}.json"
    return os.path.join(os.path.expanduser(base_dir), file_name)


def _json_default(value):
    """Serialise exact scalars and numpy values that json does not know."""
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, np.ndarray):
        return vector_to_json(value) if value.dtype == object else value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError(f"Cannot serialise {type(value).__name__}")


def to_json_text(report: Dict) -> str:
    return json.dumps(report, indent=2, default=_json_default)


def save_report(report: Dict, base_dir, command) -> str:
    """
    Write the report as JSON into a timestamped file and return its path.
    """
    path = get_report_path(base_dir, command)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_json_text(report))
    logger.info(f"Report saved to {path}")
    return path


def render_text(value: Any, indent: int = 0) -> str:
    """
    Human-readable rendering of the same report object used for JSON.
    """
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item and not _is_flat(item):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and not _is_flat(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return "\n".join(lines)


def _is_flat(item) -> bool:
    if isinstance(item, dict):
        return False
    return all(not isinstance(x, (dict, list)) for x in item)


def _scalar(item) -> str:
    if isinstance(item, list):
        return "[" + ", ".join(_scalar(x) for x in item) + "]"
    if isinstance(item, dict):
        return "{}"
    if isinstance(item, Fraction):
        return fraction_str(item)
    if item is None:
        return "none"
    return str(item)


_WITNESS_FIELDS = ("triple", "element", "candidates", "witness", "what", "size", "limit",
                   "source", "field", "identity", "module", "expected", "got", "position")


def error_report(error: BaseException) -> Dict:
    """
    Structured form of an exception: kind, message and the witness attributes it carries.
    """
    witness = {}
    for name in _WITNESS_FIELDS:
        if hasattr(error, name):
            witness[name] = getattr(error, name)
    residual = getattr(error, "residual", None)
    if residual is not None:
        witness["residual"] = vector_to_json(residual)
    return {"error": type(error).__name__, "message": str(error), "witness": witness}
