"""Reading input documents and writing canonical JSON.

An input is either one series::

    {"vars": ["x", "y"], "terms": [{"c": "1", "e": [1, 1]}, ...], "exact": true}

or an ideal given by generators, each carrying its own ``exact`` flag or
``truncation_degree``::

    {"vars": ["x", "y"], "generators": [{"terms": [...], "exact": true}, ...]}

Errors are :class:`ParseError` with a position: ``file:line:col`` for JSON
syntax and ``file $.path.to[3].field`` for everything after that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

from .core import Series
from .errors import ParseError


@dataclass(frozen=True)
class Problem:
    variables: tuple[str, ...]
    generators: tuple[Series, ...]
    principal: bool          # the document used the single-series form

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def exact(self) -> bool:
        return all(g.exact for g in self.generators)


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("loctrop").joinpath("schemas", name).read_text(encoding="utf-8")
    return json.loads(text)


def _pointer(path) -> str:
    out = "$"
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _validate_schema(doc: Any, source: str):
    import jsonschema

    validator = jsonschema.Draft202012Validator(load_schema("input.schema.json"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        # report the deepest error, which is usually the most specific one
        err = max(errors, key=lambda e: len(e.absolute_path))
        raise ParseError(err.message, f"{source} {_pointer(err.absolute_path)}")


def _series(rec: dict, n: int, source: str, path: tuple) -> Series:
    has_trunc = "truncation_degree" in rec
    if has_trunc == ("exact" in rec):
        raise ParseError('give exactly one of "truncation_degree" and "exact": true',
                         f"{source} {_pointer(path)}")
    D = rec["truncation_degree"] if has_trunc else None
    terms: dict = {}
    for i, t in enumerate(rec["terms"]):
        where = f"{source} {_pointer(path + ('terms', i))}"
        num, _, den = t["c"].partition("/")
        if den and int(den) == 0:
            raise ParseError("zero denominator", where + ".c")
        e = tuple(t["e"])
        if len(e) != n:
            raise ParseError(f"exponent has {len(e)} entries, expected {n}", where + ".e")
        if D is not None and sum(e) > D:
            raise ParseError(f"term of degree {sum(e)} exceeds truncation degree {D}", where + ".e")
        if e in terms:
            raise ParseError(f"repeated exponent {list(e)}", where + ".e")
        terms[e] = Fraction(t["c"])
    return Series(n, terms, D)


def parse_document(doc: Any, source: str = "<input>") -> Problem:
    _validate_schema(doc, source)
    variables = tuple(doc["vars"])
    if len(set(variables)) != len(variables):
        raise ParseError("variable names must be distinct", f"{source} $.vars")
    n = len(variables)
    if "terms" in doc:
        gens = (_series(doc, n, source, ()),)
        return Problem(variables, gens, True)
    gens = tuple(_series(g, n, source, ("generators", i)) for i, g in enumerate(doc["generators"]))
    return Problem(variables, gens, False)


def parse_text(text: str, source: str = "<input>") -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
    return parse_document(doc, source)


def load_problem(path: str | Path) -> Problem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read input: {exc.strerror}", str(path)) from None
    return parse_text(text, str(path))


def series_document(f: Series, variables) -> dict:
    doc = {"vars": list(variables), "terms": f.term_list()}
    if f.exact:
        doc["exact"] = True
    else:
        doc["truncation_degree"] = f.truncation
    return doc


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
