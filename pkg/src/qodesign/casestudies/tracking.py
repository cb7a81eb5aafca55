"""Target-tracking pipeline: a sensor stage feeding a processing stage.

Two formulations of the same system:

* a cost formulation, where each stage reports the dollar cost of providing
  a functionality from a resource and stages compose by series;
* a boolean formulation over explicit budget grids, where the composite
  answers "is (power, budget) enough for k targets" and Pareto fronts of
  minimal feasible resources can be read off directly.

The processing budget grid in the boolean model contains every finite
processing cost, so the two formulations agree exactly: a pair is feasible
iff the composite cost is within the budget.
"""

from __future__ import annotations

import math

from ..categories import chain_category, pair_name, tensor
from ..model import ModelDocument
from ..problems import build_problem, pareto_front

POWER_LEVELS = ("5W", "10W", "20W")
QUALITY_LEVELS = ("Low", "High")
TARGET_LEVELS = ("1tgt", "2tgt", "3tgt")

# Dollar cost of reaching a tracking quality from a power level; missing
# combinations are infeasible.
SENSOR_COST = {
    ("5W", "Low"): 30.0,
    ("10W", "Low"): 20.0,
    ("10W", "High"): 50.0,
    ("20W", "Low"): 10.0,
    ("20W", "High"): 30.0,
}

# Dollar cost of tracking k targets from a quality level.
PROC_COST = {
    ("Low", "1tgt"): 40.0,
    ("Low", "2tgt"): 70.0,
    ("High", "1tgt"): 10.0,
    ("High", "2tgt"): 30.0,
    ("High", "3tgt"): 50.0,
}

DEFAULT_BUDGETS = (40, 60, 70, 80, 100)


def _cost_rows(table, rows, cols):
    return [[table.get((r, c), math.inf) for c in cols] for r in rows]


def tracking_model() -> ModelDocument:
    """Cost formulation: two stages in series over the cost quantale."""
    from ..quantales import cost_quantale

    doc = ModelDocument("tracking")
    q = doc.add_quantale("C", cost_quantale())
    power = doc.add_category("Power", chain_category(q, POWER_LEVELS), ("chain",))
    quality = doc.add_category("Quality", chain_category(q, QUALITY_LEVELS), ("chain",))
    targets = doc.add_category("Targets", chain_category(q, TARGET_LEVELS), ("chain",))

    sensor = build_problem(
        power, quality, _cost_rows(SENSOR_COST, POWER_LEVELS, QUALITY_LEVELS)
    )
    proc = build_problem(
        quality, targets, _cost_rows(PROC_COST, QUALITY_LEVELS, TARGET_LEVELS)
    )
    doc.add_problem("sensor", sensor, "Power", "Quality")
    doc.add_problem("proc", proc, "Quality", "Targets")
    doc.add_diagram("tracking", ("series", "sensor", "proc"))
    doc.add_query(
        "two_targets_at_10W",
        diagram="tracking",
        resource="10W",
        functionality="2tgt",
    )
    doc.add_sweep("operating_points", diagram="tracking")
    return doc


def _proc_budget_grid() -> tuple:
    return tuple(sorted({int(v) for v in PROC_COST.values()}))


def tracking_bool_model(budget_grid=DEFAULT_BUDGETS) -> ModelDocument:
    """Boolean formulation over explicit budget grids.

    Resources are (power, total budget) pairs; the mid interface carries the
    quality level together with the budget handed to the processing stage.
    """
    from ..quantales import bool_quantale

    doc = ModelDocument("tracking_bool")
    q = doc.add_quantale("B", bool_quantale())
    budgets = tuple(int(b) for b in budget_grid)
    proc_budgets = _proc_budget_grid()

    doc.add_category("Power", chain_category(q, POWER_LEVELS), ("chain",))
    doc.add_category(
        "Budget", chain_category(q, tuple(str(b) for b in budgets)), ("chain",)
    )
    doc.add_category("Quality", chain_category(q, QUALITY_LEVELS), ("chain",))
    doc.add_category(
        "ProcBudget",
        chain_category(q, tuple(str(b) for b in proc_budgets)),
        ("chain",),
    )
    doc.add_category("Targets", chain_category(q, TARGET_LEVELS), ("chain",))
    resources = doc.add_tensor_category("Resources", "Power", "Budget")
    mid = doc.add_tensor_category("Mid", "Quality", "ProcBudget")
    targets = doc.categories["Targets"]

    sensor_rows = []
    for p in POWER_LEVELS:
        for b in budgets:
            row = []
            for m in QUALITY_LEVELS:
                for bp in proc_budgets:
                    row.append(SENSOR_COST.get((p, m), math.inf) + bp <= b)
            sensor_rows.append(row)
    proc_rows = []
    for m in QUALITY_LEVELS:
        for bp in proc_budgets:
            proc_rows.append(
                [PROC_COST.get((m, t), math.inf) <= bp for t in TARGET_LEVELS]
            )

    doc.add_problem(
        "sensor_within",
        build_problem(resources, mid, sensor_rows),
        "Resources",
        "Mid",
    )
    doc.add_problem(
        "proc_within", build_problem(mid, targets, proc_rows), "Mid", "Targets"
    )
    doc.add_diagram("tracking", ("series", "sensor_within", "proc_within"))
    doc.add_query(
        "two_targets_at_10W_80",
        diagram="tracking",
        resource=pair_name("10W", "80"),
        functionality="2tgt",
    )
    doc.add_sweep("feasible", diagram="tracking")
    return doc


def tracking_pareto(doc: ModelDocument = None) -> dict:
    """Minimal feasible (power, budget) pairs for each target count."""
    if doc is None:
        doc = tracking_bool_model()
    composed = doc.compose("tracking")
    return {t: pareto_front(composed, t) for t in TARGET_LEVELS}
