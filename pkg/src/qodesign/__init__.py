"""Design problems enriched in a quantale: build, compose, query.

The package models "how much resource does this functionality cost" tables
as profunctors enriched in a commutative quantale, composes them in series,
in parallel, and through feedback loops, moves them between quantales along
lax maps, and loads whole systems from a declarative model-file format.
"""

from .errors import (
    CategoryError,
    CodesignError,
    CompositionError,
    LaxityError,
    ModelError,
    ProblemError,
    QuantaleError,
)
from .values import QValue, float_tol
from .quantales import (
    Quantale,
    bool_quantale,
    check_laws,
    compatible,
    cost_quantale,
    fuzz_quantale,
    internal_hom,
    make_builtin,
    make_powerset,
    make_product,
    nat_quantale,
    pace_quantale,
)
from .categories import (
    QCategory,
    build_category,
    chain_category,
    check_category_axioms,
    discrete_category,
    from_order,
    nat_category,
    nat_grid_category,
    pair_name,
    pushforward,
    tensor,
)
from .problems import (
    DesignProblem,
    build_problem,
    check_bimodule,
    check_bimodule_via_hom,
    evaluate,
    identity_problem,
    parallel,
    pareto_front,
    series,
    series_breakdown,
    trace,
    upward_closure,
    validate_via_hom,
)
from .lax import (
    LAX_VERDICTS,
    Catalog,
    CatalogPart,
    GridClassification,
    LaxMap,
    LaxityReport,
    builtin_lax,
    catalog_problem,
    check_lax,
    classify_cost_to_bool,
    hetero_parallel,
    hetero_series,
    hetero_trace,
    implementation_series,
    implementation_series_problems,
    pair_elt,
    pushforward_problem,
)
from .model import (
    ModelDocument,
    NodeStat,
    QueryResult,
    ResultTable,
    build_document,
    load_model,
    loads,
    parse_model,
)

__version__ = "0.1.0"

__all__ = [
    "CategoryError",
    "Catalog",
    "CatalogPart",
    "CodesignError",
    "CompositionError",
    "DesignProblem",
    "GridClassification",
    "LAX_VERDICTS",
    "LaxMap",
    "LaxityError",
    "LaxityReport",
    "ModelDocument",
    "ModelError",
    "NodeStat",
    "ProblemError",
    "QCategory",
    "QValue",
    "Quantale",
    "QuantaleError",
    "QueryResult",
    "ResultTable",
    "bool_quantale",
    "build_category",
    "build_document",
    "build_problem",
    "builtin_lax",
    "catalog_problem",
    "chain_category",
    "check_bimodule",
    "check_bimodule_via_hom",
    "check_category_axioms",
    "check_laws",
    "check_lax",
    "classify_cost_to_bool",
    "compatible",
    "cost_quantale",
    "discrete_category",
    "evaluate",
    "float_tol",
    "from_order",
    "fuzz_quantale",
    "hetero_parallel",
    "hetero_series",
    "hetero_trace",
    "identity_problem",
    "implementation_series",
    "implementation_series_problems",
    "internal_hom",
    "load_model",
    "loads",
    "make_builtin",
    "make_powerset",
    "make_product",
    "nat_category",
    "nat_grid_category",
    "nat_quantale",
    "pace_quantale",
    "pair_elt",
    "pair_name",
    "parallel",
    "pareto_front",
    "parse_model",
    "pushforward",
    "pushforward_problem",
    "series",
    "series_breakdown",
    "tensor",
    "trace",
    "upward_closure",
    "validate_via_hom",
    "__version__",
]
