"""Property testing for bounded-degree graphs via lazy walks and collision
statistics, with oracle query accounting, derandomized coin streams, hard
instance generators, and an exact verification lab for the underlying
expectation algebra."""

from .graphs import (
    BOTTOM,
    BoundedDegreeGraph,
    QueryLedger,
    is_bipartite_exact,
    neighbor_query,
    vertex_expansion_exact,
)
from .kwise import KWiseFamily, build_family, eval_bit, eval_symbol, verify_kwise_exhaustive
from .testers import (
    MODE_KWISE,
    MODE_RANDOM,
    BipartiteParams,
    ExpansionParams,
    TesterVerdict,
    test_bipartiteness,
    test_expansion,
)
from .walkkernel import kernel_name

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "BoundedDegreeGraph",
    "QueryLedger",
    "is_bipartite_exact",
    "neighbor_query",
    "vertex_expansion_exact",
    "KWiseFamily",
    "build_family",
    "eval_bit",
    "eval_symbol",
    "verify_kwise_exhaustive",
    "MODE_KWISE",
    "MODE_RANDOM",
    "BipartiteParams",
    "ExpansionParams",
    "TesterVerdict",
    "test_bipartiteness",
    "test_expansion",
    "kernel_name",
    "__version__",
]
