"""
Reading semigroups from Cayley-table JSON, generator JSON and corpus names.
"""
import json
import logging
import os
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Union

from src.semigroup_core import (FiniteInverseSemigroup, FiniteSemigroup, brandt, cyclic_group,
                                generated_inverse_semigroup, max_semilattice,
                                meet_semilattice_nondirected, symmetric_inverse_monoid,
                                truncated_add_monoid, validate)

# Add parent directory to path to import config
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))
from config import MAX_VALIDATION_SIZE

logger = logging.getLogger(__name__)


class ParseError(ValueError):
    """Input that is not well-formed JSON in one of the accepted layouts."""

    def __init__(self, source: str, detail: str, field: Optional[str] = None) -> None:
        where = f"{source}: field {field!r}" if field else source
        super().__init__(f"{where}: {detail}")
        self.source = source
        self.field = field
        self.detail = detail


CORPUS: Dict[str, Callable[..., FiniteSemigroup]] = {
    "max_semilattice": max_semilattice,
    "cyclic_group": cyclic_group,
    "brandt": brandt,
    "truncated_add_monoid": truncated_add_monoid,
    "symmetric_inverse_monoid": symmetric_inverse_monoid,
    "meet_semilattice_nondirected": meet_semilattice_nondirected,
}


def corpus_semigroup(label: str) -> FiniteInverseSemigroup:
    """Build a corpus member from "name" or "name:parameter".

    Raises:
        ParseError: unknown name or malformed parameter
        ValidationError: the member is not an inverse semigroup
    """
    name, _, param = label.partition(":")
    if name not in CORPUS:
        raise ParseError(label, f"unknown corpus semigroup (known: {', '.join(sorted(CORPUS))})")
    constructor = CORPUS[name]
    if name == "meet_semilattice_nondirected":
        if param:
            raise ParseError(label, "takes no parameter")
        S = constructor()
    else:
        try:
            S = constructor(int(param))
        except ValueError as e:
            if not param.lstrip("-").isdigit():
                raise ParseError(label, "expected an integer parameter") from None
            raise
    if not isinstance(S, FiniteInverseSemigroup):
        # raises NotInverse with the first offending element
        S = validate(S.table, name=S.name, elements=S.elements)
    return S


def _require(data: Dict, key: str, kind, source: str):
    if key not in data:
        raise ParseError(source, "missing", key)
    if not isinstance(data[key], kind):
        raise ParseError(source, f"expected {getattr(kind, '__name__', kind)}", key)
    return data[key]


def parse_cayley(data: Dict, source: str = "<input>",
                 max_size: int = MAX_VALIDATION_SIZE) -> FiniteInverseSemigroup:
    table = _require(data, "table", list, source)
    n = len(table)
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(source, f"row {i} does not have {n} entries (ragged table)", "table")
        if any(not isinstance(x, int) or isinstance(x, bool) for x in row):
            raise ParseError(source, f"row {i} has a non-integer entry", "table")
    elements = data.get("elements")
    if elements is not None and (not isinstance(elements, list)
                                 or any(not isinstance(e, str) for e in elements)):
        raise ParseError(source, "expected a list of strings", "elements")
    star = data.get("star")
    if star is not None and (not isinstance(star, list)
                             or any(not isinstance(x, int) for x in star)):
        raise ParseError(source, "expected a list of integers", "star")
    name = data.get("name", Path(source).stem)
    return validate(table, star, str(name), elements, max_size)


def parse_generators(data: Dict, source: str = "<input>",
                     max_size: int = MAX_VALIDATION_SIZE) -> FiniteInverseSemigroup:
    degree = _require(data, "degree", int, source)
    generators = _require(data, "generators", list, source)
    for i, g in enumerate(generators):
        if not isinstance(g, list) or len(g) != degree:
            raise ParseError(source, f"generator {i} must list {degree} images", "generators")
        if any(x is not None and (not isinstance(x, int) or isinstance(x, bool)) for x in g):
            raise ParseError(source, f"generator {i} has an image that is neither int nor null",
                             "generators")
    try:
        return generated_inverse_semigroup(degree, generators, data.get("name"), max_size)
    except ValueError as e:
        if type(e) is ValueError:
            raise ParseError(source, str(e), "generators") from None
        raise


def ingest(path: Union[str, Path], format: str = "auto",
           max_size: int = MAX_VALIDATION_SIZE) -> FiniteInverseSemigroup:
    """Read a semigroup description file.

    Args:
        path: JSON file
        format: "cayley", "generators" or "auto" (decided by the keys present)
        max_size: size guard passed to validation

    Raises:
        ParseError: unreadable file, invalid JSON (with line and column) or bad fields
        ValidationError: the table is not an inverse semigroup
    """
    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(source, f"cannot read file ({e.strerror})") from None
    except UnicodeDecodeError as e:
        raise ParseError(f"{source}:byte {e.start}", "not valid UTF-8") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}:{e.lineno}:{e.colno}", e.msg) from None
    if not isinstance(data, dict):
        raise ParseError(source, "top level must be a JSON object")
    if format == "auto":
        format = "cayley" if "table" in data else "generators" if "generators" in data else None
        if format is None:
            raise ParseError(source, "neither a 'table' nor a 'generators' field")
    logger.debug(f"Ingesting {source} as {format} JSON")
    if format == "cayley":
        return parse_cayley(data, source, max_size)
    if format == "generators":
        return parse_generators(data, source, max_size)
    raise ParseError(source, f"unknown format {format!r}")
