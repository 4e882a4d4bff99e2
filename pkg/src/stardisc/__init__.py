"""Star discrepancy of random point sets: probability bounds, covers and checks."""

from .bounds import (
    AuditReport,
    TailBoundResult,
    TheoremConstants,
    audit_proof,
    bernstein_tail_generic,
    bernstein_tail_k,
    build_constants,
    coefficient,
    coefficient_table,
    corollary_bound,
    hoeffding_tail,
    inverse_discrepancy_existence,
    inverse_discrepancy_theorem,
    theorem_bound,
)
from .core import (
    AnchoredBox,
    BoxDifference,
    Point,
    PointSet,
    box_difference_measure,
    count_closed,
    count_strict,
    volume,
)
from .covers import (
    Bracket,
    BracketingCover,
    ChainDecomposition,
    DeltaCover,
    bracketing_cardinality_bound,
    build_chain,
    class_cardinality_bound,
    cover_cardinality_bound,
    enumerate_chain_classes,
    equidistant_bracketing_cover,
    equidistant_cover,
    sandwich_check,
)
from .discrepancy import (
    DiscrepancyResult,
    discrepancy_at,
    star_discrepancy_cover,
    star_discrepancy_exact,
)
from .errors import CapacityError, InputError, StarDiscError, TrivialRegimeError
from .montecarlo import (
    ExperimentConfig,
    ExperimentReport,
    binomial_ci,
    generate_uniform,
    run_experiment,
)

__version__ = "0.1.0"
