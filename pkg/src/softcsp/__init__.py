"""Semiring-based soft constraint solving and multi-criteria EV planning.

The package is layered the way the formalism is:

* :mod:`softcsp.semiring` -- c-semiring instances and exact value arithmetic
* :mod:`softcsp.frontier` -- non-dominated (time, energy) cost sets
* :mod:`softcsp.constraints` -- soft constraints with hiding and renaming
* :mod:`softcsp.scsp` -- constraint problems, solutions and best levels
* :mod:`softcsp.sclp` -- valued logic programs and fixpoint evaluation
* :mod:`softcsp.roadnet` -- road networks and the trip optimizer
* :mod:`softcsp.journey` -- appointment sequences, charging, journeys
* :mod:`softcsp.cli` -- the ``softcsp`` command
"""

from .constraints import (
    Permutation,
    SoftConstraint,
    combine,
    constant_constraint,
    csum,
    fusion,
    hide,
    make_constraint,
    permute,
    support,
    unit_constraint,
    zero_constraint,
)
from .errors import SoftcspError
from .frontier import (
    STRICT,
    WEAK,
    CostFrontier,
    FrontierItem,
    frontier_filter,
    frontier_times,
    frontier_union,
    strictly_dominates,
    weakly_dominates,
)
from .journey import (
    Appointment,
    ChargingPolicy,
    ChargingStation,
    JourneySolution,
    best_journeys,
    enumerate_journeys,
    new_soc,
    time_sum,
)
from .roadnet import (
    RoadNetwork,
    TripSolution,
    best_paths,
    enumerate_paths,
    load_network,
    network_from_json,
    parse_network,
)
from .scsp import SCSPProblem, blevel, load_problem, problem_from_json, solve
from .sclp import (
    Atom,
    Clause,
    Program,
    eval_goal,
    ground,
    lfp,
    parse_goal,
    parse_program,
    tp_step,
)
from .semiring import (
    INF,
    CostPair,
    SemiringSpec,
    SemiringValue,
    format_value,
    instance_catalog,
    lookup,
    sr_eq,
    sr_leq,
    sr_plus,
    sr_times,
)

__version__ = "0.1.0"
