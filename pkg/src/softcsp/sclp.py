"""Logic programs with semiring-valued facts and their fixpoint semantics.

A program is a list of clauses ``head :- body`` over one semiring, where a
body is either a list of atoms, a semiring value (the clause is then a
fact stating the cost/level of its head), or empty (read as the best
value).  Programs declare a finite constant universe; grounding replaces
each clause by all instantiations of its variables over that universe.

The semantics is bottom-up: an interpretation maps every ground atom to a
semiring value (missing atoms count as the worst value), and one step of
the consequence operator recomputes each atom as the semiring sum, over
its defining clauses, of the product of the body values.  Iterating from
the all-worst interpretation climbs monotonically to the least fixpoint;
with exact arithmetic the fixpoint test is plain equality.

Program text format (one clause per line)::

    #semiring wcsp
    #constants a,b,c.
    s(X) :- p(X,Y).
    t(a) :- 2.
    q(a).

Identifiers starting with an uppercase letter or ``_`` are variables;
``%`` starts a comment.  Terms must be constants or variables: function
symbols are recognised and rejected.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from .errors import (
    EmptyUniverseError,
    FunctionSymbolError,
    InputError,
    NonConvergenceError,
    ParseError,
)
from .semiring import SemiringSpec, SemiringValue, format_value, lookup, sr_plus, sr_times


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: Tuple[str, ...] = ()

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(self.args)})"


def is_variable(term: str) -> bool:
    return bool(term) and (term[0].isupper() or term[0] == "_")


@dataclass(frozen=True)
class Clause:
    """``head :- body`` with the body split into atoms and/or a value.

    Facts carry their value in ``body_value`` and have no body atoms; an
    empty body (no atoms, no value) is the unconditional best-value fact,
    because the product over zero atoms is the multiplicative unit.
    """

    head: Atom
    body_atoms: Tuple[Atom, ...] = ()
    body_value: Optional[SemiringValue] = None

    def __post_init__(self):
        if self.body_value is not None and self.body_atoms:
            raise ValueError("a clause body is either atoms or a value, not both")

    def atoms(self) -> Iterable[Atom]:
        yield self.head
        yield from self.body_atoms

    def variables(self) -> FrozenSet[str]:
        return frozenset(t for atom in self.atoms() for t in atom.args
                         if is_variable(t))

    def is_ground(self) -> bool:
        return not self.variables()

    def __str__(self):
        if self.body_value is not None:
            return f"{self.head} :- {format_value(self.body_value)}."
        if self.body_atoms:
            return f"{self.head} :- {', '.join(map(str, self.body_atoms))}."
        return f"{self.head}."


@dataclass(frozen=True)
class Program:
    spec: SemiringSpec
    clauses: Tuple[Clause, ...]
    constants: Tuple[str, ...]
    goal: Tuple[Atom, ...] = ()


Interpretation = Dict[Atom, SemiringValue]


def _substitute_atom(atom: Atom, binding: Dict[str, str]) -> Atom:
    return Atom(atom.predicate,
                tuple(binding.get(t, t) for t in atom.args))


def ground(program: Program) -> Program:
    """Replace every clause by all instantiations of its variables."""
    clauses = []
    for clause in program.clauses:
        variables = sorted(clause.variables())
        if not variables:
            clauses.append(clause)
            continue
        if not program.constants:
            raise EmptyUniverseError(
                f"clause '{clause}' has variables but the constant universe "
                f"is empty"
            )
        for values in itertools.product(program.constants, repeat=len(variables)):
            binding = dict(zip(variables, values))
            clauses.append(Clause(
                head=_substitute_atom(clause.head, binding),
                body_atoms=tuple(_substitute_atom(a, binding)
                                 for a in clause.body_atoms),
                body_value=clause.body_value,
            ))
    return Program(spec=program.spec, clauses=tuple(clauses),
                   constants=program.constants, goal=program.goal)


def atom_universe(program: Program) -> Tuple[Atom, ...]:
    """Every instantiation over the constants of every program predicate."""
    signatures = sorted({(a.predicate, len(a.args))
                         for clause in program.clauses
                         for a in clause.atoms()})
    atoms = []
    for predicate, arity in signatures:
        for args in itertools.product(program.constants, repeat=arity):
            atoms.append(Atom(predicate, args))
    return tuple(atoms)


def bottom(program: Program) -> Interpretation:
    """The worst interpretation: every ground atom at the semiring zero."""
    zero = program.spec.zero
    return {atom: zero for atom in atom_universe(program)}


def tp_step(program: Program, interp: Interpretation) -> Interpretation:
    """One application of the immediate-consequence operator.

    Each ground atom becomes the sum over its defining clauses of the
    product of the body values under ``interp``; atoms with no defining
    clause stay at zero.  ``program`` must be ground.
    """
    spec = program.spec
    zero = spec.zero
    one = spec.one
    by_head: Dict[Atom, list] = {}
    for clause in program.clauses:
        if not clause.is_ground():
            raise ValueError("tp_step requires a ground program")
        by_head.setdefault(clause.head, []).append(clause)

    new: Interpretation = {}
    for atom in atom_universe(program):
        value = zero
        for clause in by_head.get(atom, ()):
            if clause.body_value is not None:
                contribution = clause.body_value
            else:
                contribution = one
                for body_atom in clause.body_atoms:
                    contribution = sr_times(spec, contribution,
                                            interp.get(body_atom, zero))
            value = sr_plus(spec, value, contribution)
        new[atom] = value
    return new


@dataclass(frozen=True)
class LfpResult:
    """A reached fixpoint plus the number of steps that built it.

    ``iterations`` is the k for which k applications of the consequence
    operator to the bottom interpretation produce the fixpoint (the k+1-th
    application confirms it).
    """

    interpretation: Interpretation = field(repr=False)
    iterations: int


def default_max_iters(program: Program) -> int:
    return 10 * len(atom_universe(program)) + 10


def lfp(program: Program, max_iters: Optional[int] = None) -> LfpResult:
    """Iterate the consequence operator from bottom until it stabilises.

    Raises :class:`NonConvergenceError`, carrying the last two
    interpretations, if no fixpoint is found within ``max_iters``
    applications.
    """
    if max_iters is None:
        max_iters = default_max_iters(program)
    if max_iters < 1:
        raise InputError("max_iters must be at least 1")
    previous = bottom(program)
    for step in range(max_iters):
        current = tp_step(program, previous)
        if current == previous:
            return LfpResult(interpretation=current, iterations=step)
        previous = current
    last = tp_step(program, previous)
    raise NonConvergenceError(
        f"no fixpoint within {max_iters} iterations",
        previous=previous, last=last,
    )


def eval_goal(program: Program, goal: Optional[Iterable[Atom]] = None,
              max_iters: Optional[int] = None) -> SemiringValue:
    """Ground, compute the fixpoint, and multiply the goal atoms' values.

    Atoms over unknown predicates or constants evaluate to zero, matching
    the bottom default.  The empty goal is the empty product, i.e. one.
    """
    goal_atoms = tuple(goal) if goal is not None else program.goal
    for atom in goal_atoms:
        bad = [t for t in atom.args if is_variable(t)]
        if bad:
            raise ParseError(f"goal atom {atom} is not ground ({bad[0]} is a variable)")
    grounded = ground(program)
    result = lfp(grounded, max_iters=max_iters)
    spec = program.spec
    value = spec.one
    for atom in goal_atoms:
        value = sr_times(spec, value,
                         result.interpretation.get(atom, spec.zero))
    return value


# --- program text parsing ---------------------------------------------------

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_VALUE = re.compile(r"^(inf|true|false|\d+(\.\d+)?|\d+/\d+)$")


def _strip_comment(line: str) -> str:
    cut = line.find("%")
    return line if cut < 0 else line[:cut]


def _split_top(text: str, line_no: int) -> list:
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses", line_no)
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError("unbalanced parentheses", line_no)
    parts.append("".join(current).strip())
    return parts


def parse_atom(text: str, line_no: Optional[int] = None) -> Atom:
    """Parse ``pred`` or ``pred(t1,...,tn)`` with constant/variable terms."""
    text = text.strip()
    match = re.match(r"^([a-z][A-Za-z0-9_]*)\s*(\((.*)\))?$", text, re.DOTALL)
    if not match:
        raise ParseError(f"malformed atom {text!r}", line_no)
    predicate, _, arg_text = match.groups()
    if arg_text is None:
        return Atom(predicate)
    args = []
    for term in _split_top(arg_text, line_no or 0):
        if "(" in term or ")" in term:
            raise FunctionSymbolError(
                f"term {term!r} uses a function symbol; only constants and "
                f"variables are supported", line_no)
        if not _IDENT.match(term):
            raise ParseError(f"malformed term {term!r}", line_no)
        args.append(term)
    return Atom(predicate, tuple(args))


def _parse_value(raw: str, spec: SemiringSpec) -> SemiringValue:
    if raw in ("inf", "true", "false") or "/" in raw or "." in raw:
        return spec.value(raw)
    return spec.value(int(raw))


def _parse_clause(text: str, spec: SemiringSpec, line_no: int) -> Clause:
    if ":-" in text:
        head_text, body_text = text.split(":-", 1)
        head = parse_atom(head_text, line_no)
        body_text = body_text.strip()
        if not body_text:
            raise ParseError("empty body after ':-'", line_no)
        parts = _split_top(body_text, line_no)
        if len(parts) == 1 and _VALUE.match(parts[0]):
            return Clause(head=head, body_value=_parse_value(parts[0], spec))
        atoms = tuple(parse_atom(p, line_no) for p in parts)
        return Clause(head=head, body_atoms=atoms)
    return Clause(head=parse_atom(text, line_no))


def parse_goal(text: str) -> Tuple[Atom, ...]:
    """Parse a goal: one or more comma-separated ground atoms."""
    stripped = text.strip().rstrip(".")
    if stripped.startswith(":-"):
        stripped = stripped[2:].strip()
    if not stripped:
        raise ParseError("empty goal")
    atoms = tuple(parse_atom(p) for p in _split_top(stripped, 0))
    for atom in atoms:
        for term in atom.args:
            if is_variable(term):
                raise ParseError(f"goal atom {atom} is not ground "
                                 f"({term} is a variable)")
    return atoms


def parse_program(text: str) -> Program:
    """Parse program text into an (ungrounded) :class:`Program`.

    Requires a ``#semiring`` directive; ``#constants`` declares the
    Herbrand universe and must cover every constant used in the clauses.
    """
    spec: Optional[SemiringSpec] = None
    constants: Tuple[str, ...] = ()
    saw_constants = False
    pending: list = []

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw_line).strip()
        if not line:
            continue
        if line.startswith("#semiring"):
            key = line[len("#semiring"):].strip().rstrip(".").strip()
            try:
                spec = lookup(key)
            except Exception as exc:
                raise ParseError(str(exc), line_no) from None
            continue
        if line.startswith("#constants"):
            body = line[len("#constants"):].strip().rstrip(".")
            names = [n.strip() for n in body.split(",") if n.strip()]
            for name in names:
                if not _IDENT.match(name) or is_variable(name):
                    raise ParseError(f"bad constant {name!r}", line_no)
            constants = tuple(dict.fromkeys(names))
            saw_constants = True
            continue
        if line.startswith("#"):
            raise ParseError(f"unknown directive {line.split()[0]!r}", line_no)
        if not line.endswith("."):
            raise ParseError("clause does not end with '.'", line_no)
        pending.append((line[:-1].strip(), line_no))

    if spec is None:
        raise ParseError("program is missing a #semiring directive")
    if not saw_constants:
        raise ParseError("program is missing a #constants directive")

    clauses = []
    for clause_text, line_no in pending:
        try:
            clause = _parse_clause(clause_text, spec, line_no)
        except ParseError:
            raise
        except Exception as exc:
            raise ParseError(str(exc), line_no) from exc
        for atom in clause.atoms():
            for term in atom.args:
                if not is_variable(term) and term not in constants:
                    raise ParseError(
                        f"constant {term!r} is not declared in #constants",
                        line_no)
        clauses.append(clause)

    return Program(spec=spec, clauses=tuple(clauses), constants=constants)
