"""Association statistics for contingency tables under explicit expectation models."""

from .bounds import (
    BudgetExceeded,
    MaxCertificate,
    PhiScan,
    certify_max,
    compositions,
    count_tables,
    enumerate_tables,
    extremal_table,
    sup_phi_square_scan,
)
from .measures import (
    INDEPENDENCE,
    UNIFORM,
    DegenerateDimensionError,
    FixedGiven,
    FixedUniform,
    IndependenceMargins,
    ModelError,
    StatResult,
    chi_square,
    compute_all,
    cramers_v,
    expected_counts,
    mean_square_contingency,
    model_from_name,
    modified_v,
)
from .simulation import (
    IncludeExtremal,
    MultinomialUniform,
    SimulationConfig,
    SimulationReport,
    StatSummary,
    UniformComposition,
    generate_table,
    histogram,
    run_simulation,
    six_number_summary,
)
from .svg import render_histogram_svg
from .tables import (
    ContingencyTable,
    ProbabilityTable,
    TableError,
    margins,
    parse_table,
    serialize,
    to_probability,
)

__version__ = "0.1.0"
