import itertools
import json
import random

import pytest

from softcsp import (
    INF,
    Permutation,
    SCSPProblem,
    blevel,
    combine,
    hide,
    load_problem,
    lookup,
    permute,
    problem_from_json,
    solve,
    sr_eq,
    sr_plus,
    sr_times,
    unit_constraint,
)
from softcsp.errors import FormatError, InstanceMismatchError

from conftest import FIXTURES, random_constraint, specs
from oracles import oracle_scsp
from test_constraints import COLORS, WCSP, coloring_constraints


def coloring_problem(interface=("x", "y")):
    return SCSPProblem(spec=WCSP, domain=COLORS,
                       constraints=tuple(coloring_constraints()),
                       interface=frozenset(interface))


class TestColoringExample:
    def test_solution_table(self):
        solution = solve(coloring_problem())
        assert solution.support == ("x", "y")
        for a, b in itertools.product(COLORS, repeat=2):
            expected = INF if a == b else 4
            assert solution.evaluate({"x": a, "y": b}).payload == expected

    def test_blevel(self):
        assert blevel(coloring_problem()).payload == 4

    def test_blevel_of_zero_constraint_problem(self):
        from softcsp import zero_constraint
        problem = SCSPProblem(spec=WCSP, domain=COLORS,
                              constraints=(zero_constraint(WCSP, COLORS),),
                              interface=frozenset())
        assert blevel(problem).payload == INF


class TestEdgeCases:
    def test_empty_constraint_set_solves_to_unit(self):
        problem = SCSPProblem(spec=WCSP, domain=COLORS, constraints=(),
                              interface=frozenset({"x"}))
        assert solve(problem) == unit_constraint(WCSP, COLORS)
        assert blevel(problem).payload == 0

    def test_interface_covering_all_supports_means_no_hiding(self):
        problem = coloring_problem(interface=("x", "y", "z"))
        c_xy, c_yz, c_zx = coloring_constraints()
        assert solve(problem) == combine(combine(c_xy, c_yz), c_zx)

    def test_mixed_semirings_rejected(self):
        with pytest.raises(InstanceMismatchError):
            SCSPProblem(spec=lookup("fcsp"), domain=COLORS,
                        constraints=tuple(coloring_constraints()),
                        interface=frozenset())


class TestProblemFile:
    def test_fixture_round_trip(self):
        problem = load_problem(FIXTURES / "coloring.json")
        assert problem.spec.key == "wcsp"
        assert problem.interface == {"x", "y"}
        assert blevel(problem).payload == 4
        assert solve(problem) == solve(coloring_problem())

    def test_missing_field(self):
        with pytest.raises(FormatError):
            problem_from_json({"semiring": "wcsp", "domain": ["a"],
                               "interface": []})

    def test_incomplete_table(self):
        data = {"semiring": "wcsp", "domain": ["a", "b"], "interface": [],
                "constraints": [{"support": ["x"],
                                 "rows": [{"assign": ["a"], "value": 1}]}]}
        with pytest.raises(FormatError):
            problem_from_json(data)

    def test_duplicate_row(self):
        row = {"assign": ["a"], "value": 1}
        data = {"semiring": "wcsp", "domain": ["a"], "interface": [],
                "constraints": [{"support": ["x"], "rows": [row, dict(row)]}]}
        with pytest.raises(FormatError, match="duplicate"):
            problem_from_json(data)

    def test_unknown_semiring(self):
        data = {"semiring": "nosuch", "domain": ["a"], "interface": [],
                "constraints": []}
        with pytest.raises(Exception):
            problem_from_json(data)

    def test_inf_encoding(self, tmp_path):
        data = {"semiring": "wcsp", "domain": ["a"], "interface": ["x"],
                "constraints": [{"support": ["x"],
                                 "rows": [{"assign": ["a"], "value": "inf"}]}]}
        path = tmp_path / "p.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        problem = load_problem(path)
        assert solve(problem).evaluate({"x": "a"}).payload == INF


def _random_problem(rng, spec):
    domain = ("d0", "d1", "d2")[: rng.randint(1, 3)]
    names = ("n1", "n2", "n3", "n4")
    constraints = tuple(random_constraint(rng, spec, domain, names)
                        for _ in range(rng.randint(0, 4)))
    all_names = {n for c in constraints for n in c.support}
    interface = frozenset(n for n in all_names if rng.random() < 0.5)
    return SCSPProblem(spec=spec, domain=domain, constraints=constraints,
                       interface=interface)


@pytest.mark.parametrize("spec", specs(), ids=lambda s: s.key)
def test_hiding_order_is_irrelevant(spec):
    rng = random.Random(f"hideorder-{spec.key}")
    for _ in range(40):
        problem = _random_problem(rng, spec)
        acc = unit_constraint(spec, problem.domain)
        for c in problem.constraints:
            acc = combine(acc, c)
        hidden = sorted(set(acc.support) - problem.interface)
        rng.shuffle(hidden)
        shuffled = acc
        for name in hidden:
            shuffled = hide(name, shuffled)
        assert shuffled == solve(problem)


@pytest.mark.parametrize("spec", specs(), ids=lambda s: s.key)
def test_blevel_is_solution_fully_hidden(spec):
    rng = random.Random(f"blevel-{spec.key}")
    for _ in range(40):
        problem = _random_problem(rng, spec)
        solution = solve(problem)
        for name in sorted(solution.support):
            solution = hide(name, solution)
        assert sr_eq(spec, solution.table[()], blevel(problem))


@pytest.mark.parametrize("spec", specs(), ids=lambda s: s.key)
def test_against_full_enumeration(spec):
    rng = random.Random(f"oracle-{spec.key}")
    for _ in range(40):
        problem = _random_problem(rng, spec)
        raw = [(c.support, c.table) for c in problem.constraints]
        iface, rows = oracle_scsp(spec, problem.domain, raw,
                                  problem.interface, sr_times, sr_plus)
        solution = solve(problem)
        assert set(solution.support) <= set(problem.interface)
        for key, value in rows.items():
            eta = dict(zip(iface, key))
            assert sr_eq(spec, solution.evaluate(eta), value)
