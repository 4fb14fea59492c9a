"""Problem-spec files: Poisson matrix, Christoffel data and truncation order.

::

    {"dimension": 2, "poisson": [["0", "1"], ["-1", "0"]],
     "christoffel": {"1,1,1": "1"}, "truncation": 8}

Christoffel keys are lower indices; each value is copied to every
permutation of its key and absent entries are zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations

from .errors import ProblemSpecError
from .poly import PolySyntaxError, parse_poly
from .structure import validate_connection, validate_structure

DEFAULT_TRUNCATION = 6


@dataclass
class Problem:
    dimension: int
    poisson: list
    christoffel: dict
    truncation: int
    notes: list = field(default_factory=list)

    def structure(self):
        return validate_structure(self.poisson)

    def connection(self, structure=None):
        st = structure or self.structure()
        return validate_connection(st, self.christoffel)


def _parse_key(key, d):
    try:
        idx = tuple(int(s) for s in str(key).split(","))
    except ValueError:
        raise ProblemSpecError(f"christoffel key {key!r} is not of the form 'a,b,c'") from None
    if len(idx) != 3 or not all(1 <= i <= d for i in idx):
        raise ProblemSpecError(f"christoffel key {key!r} out of range for dimension {d}")
    return idx


def symmetrize_christoffel(raw, d):
    """Spread each entry over all permutations of its indices.

    Returns ``(table, notes)``; conflicting values for permutations of one
    index set raise :class:`ProblemSpecError`.
    """
    table = {}
    given = {}
    notes = []
    for key, text in (raw or {}).items():
        idx = _parse_key(key, d)
        try:
            val = parse_poly(str(text), d)
        except PolySyntaxError as exc:
            raise ProblemSpecError(f"christoffel {key}: {exc}") from None
        canon = tuple(sorted(idx))
        if canon in given and given[canon][1] != val:
            raise ProblemSpecError(
                f"christoffel entries {given[canon][0]} and {idx} are permutations with different values")
        given.setdefault(canon, (idx, val))
    for canon, (idx, val) in sorted(given.items()):
        perms = sorted(set(permutations(canon)))
        for p in perms:
            table[p] = val
        if len(perms) > 1:
            notes.append("christoffel " + ",".join(map(str, idx)) + " symmetrized over "
                         + " ".join(",".join(map(str, p)) for p in perms))
    return table, notes


def parse_problem(obj):
    if not isinstance(obj, dict):
        raise ProblemSpecError("problem spec must be a JSON object")
    for k in ("dimension", "poisson"):
        if k not in obj:
            raise ProblemSpecError(f"missing field {k!r}")
    d = obj["dimension"]
    if not isinstance(d, int) or d <= 0:
        raise ProblemSpecError("dimension must be a positive integer")
    rows = obj["poisson"]
    if not isinstance(rows, list) or len(rows) != d or any(not isinstance(r, list) or len(r) != d for r in rows):
        raise ProblemSpecError(f"poisson must be a {d}x{d} matrix")
    try:
        P = [[parse_poly(str(e), d) for e in row] for row in rows]
    except PolySyntaxError as exc:
        raise ProblemSpecError(f"poisson entry: {exc}") from None
    raw_gamma = obj.get("christoffel", {})
    if not isinstance(raw_gamma, dict):
        raise ProblemSpecError("christoffel must be an object keyed by 'a,b,c'")
    table, notes = symmetrize_christoffel(raw_gamma, d)
    N = obj.get("truncation", DEFAULT_TRUNCATION)
    if not isinstance(N, int) or N < 3:
        raise ProblemSpecError("truncation must be an integer >= 3")
    return Problem(d, P, table, N, notes)


def load_problem(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ProblemSpecError(f"{path}: invalid JSON ({exc})") from None
    return parse_problem(obj)
