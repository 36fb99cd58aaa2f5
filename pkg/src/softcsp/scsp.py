"""Soft constraint satisfaction problems and their solution semantics.

A problem is a set of constraints over one semiring plus a set of
*interface* names.  Its solution combines every constraint and hides all
non-interface names, leaving a constraint over (at most) the interface;
the *best level of consistency* hides everything and leaves the single
best value the problem can achieve.

The JSON problem format::

    {
      "semiring": "wcsp",
      "domain": ["red", "blue", "green"],
      "interface": ["x", "y"],
      "constraints": [
        {"support": ["x", "y"],
         "rows": [{"assign": ["red", "red"], "value": "inf"}, ...]}
      ]
    }

``"inf"`` encodes the weighted infinity.  Tables must be total.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, FrozenSet, Tuple

from .constraints import Name, SoftConstraint, combine, hide, make_constraint, unit_constraint
from .errors import FormatError, InputError, InstanceMismatchError
from .semiring import SemiringSpec, SemiringValue, lookup


@dataclass(frozen=True)
class SCSPProblem:
    spec: SemiringSpec
    domain: Tuple[Any, ...]
    constraints: Tuple[SoftConstraint, ...]
    interface: FrozenSet[Name]

    def __post_init__(self):
        for c in self.constraints:
            if c.spec.key != self.spec.key:
                raise InstanceMismatchError(
                    f"constraint over {c.spec.key!r} in a {self.spec.key!r} "
                    f"problem"
                )
            if set(c.domain) != set(self.domain):
                raise InstanceMismatchError(
                    "constraint domain differs from the problem domain"
                )


def _combination(problem: SCSPProblem) -> SoftConstraint:
    # Fold pairwise left-to-right over constraints sorted by support; the
    # order is semantically irrelevant, sorting just pins intermediates.
    acc = unit_constraint(problem.spec, problem.domain)
    for c in sorted(problem.constraints, key=lambda c: c.support):
        acc = combine(acc, c)
    return acc


def solve(problem: SCSPProblem) -> SoftConstraint:
    """Combine all constraints, then hide every non-interface name.

    Hiding proceeds in ascending name order; by the hiding-commutation law
    the order cannot change the result.  The result's minimal support is a
    subset of the interface.
    """
    acc = _combination(problem)
    for name in sorted(set(acc.support) - set(problem.interface)):
        acc = hide(name, acc)
    return acc


def blevel(problem: SCSPProblem) -> SemiringValue:
    """The best level of consistency: the solution with every name hidden."""
    acc = _combination(problem)
    for name in sorted(acc.support):
        acc = hide(name, acc)
    return acc.table[()]


def problem_from_json(data: Any) -> SCSPProblem:
    """Validate and build a problem from parsed JSON."""
    if not isinstance(data, dict):
        raise FormatError("problem file must contain a JSON object")
    for field_name in ("semiring", "domain", "interface", "constraints"):
        if field_name not in data:
            raise FormatError(f"problem file is missing {field_name!r}")
    spec = lookup(data["semiring"])
    domain = data["domain"]
    if not isinstance(domain, list) or not domain:
        raise FormatError('"domain" must be a non-empty list')
    interface = data["interface"]
    if not isinstance(interface, list) or not all(isinstance(n, str) for n in interface):
        raise FormatError('"interface" must be a list of names')
    raw_constraints = data["constraints"]
    if not isinstance(raw_constraints, list):
        raise FormatError('"constraints" must be a list')

    constraints = []
    for index, entry in enumerate(raw_constraints):
        where = f"constraints[{index}]"
        if not isinstance(entry, dict) or "support" not in entry or "rows" not in entry:
            raise FormatError(f'{where} must be an object with "support" and "rows"')
        support = entry["support"]
        if not isinstance(support, list) or not all(isinstance(n, str) for n in support):
            raise FormatError(f'{where}.support must be a list of names')
        rows = entry["rows"]
        if not isinstance(rows, list):
            raise FormatError(f"{where}.rows must be a list")
        table = {}
        for row_index, row in enumerate(rows):
            if not isinstance(row, dict) or "assign" not in row or "value" not in row:
                raise FormatError(
                    f'{where}.rows[{row_index}] must be an object with '
                    f'"assign" and "value"'
                )
            assign = row["assign"]
            if not isinstance(assign, list):
                raise FormatError(f"{where}.rows[{row_index}].assign must be a list")
            key = tuple(assign)
            if key in table:
                raise FormatError(f"{where}.rows[{row_index}]: duplicate "
                                  f"assignment {assign!r}")
            table[key] = row["value"]
        try:
            constraints.append(make_constraint(spec, domain, support, table))
        except InputError as exc:
            raise FormatError(f"{where}: {exc}") from exc

    return SCSPProblem(spec=spec, domain=tuple(domain),
                       constraints=tuple(constraints),
                       interface=frozenset(interface))


def load_problem(path: str | Path) -> SCSPProblem:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    try:
        return problem_from_json(data)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc
