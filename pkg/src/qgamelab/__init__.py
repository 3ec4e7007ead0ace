"""qgamelab: a workbench for quantum game theory.

Dense linear algebra for small qudit registers, a string-diagram
language with spider semantics, EWL quantization of strategic games,
and Bayesian games with classical or quantum advice viewed as Bell
tests.
"""

from .bayes import (
    CHSH_PHASES,
    MERMIN_SETTINGS,
    BayesianGame,
    BellExpression,
    ClassicalAdvice,
    ClassicalOptimum,
    ConditionalDistribution,
    EquilibriumReport,
    MerminReport,
    PolytopeVerdict,
    QuantumAdvice,
    average_payoff,
    bell_value,
    certify_payoff_inequality,
    chsh_expression,
    chsh_game,
    chsh_quantum_advice,
    classical_bound,
    classical_conditional,
    classical_optimum,
    conditional_of,
    equivalence_of_conditionals,
    ghz_phase_distribution,
    ghz_state,
    is_advised_equilibrium,
    mermin_expression,
    mermin_game,
    mermin_inequivalence,
    mermin_quantum_advice,
    parity,
    payoff_polytope_check,
    phase_basis,
    quantum_conditional,
)
from .diagrams import (
    ObservableStructure,
    PhaseElement,
    classical_points,
    evaluate,
    ghz_state_map,
    measure,
    parse,
    pretty,
    spider_map,
    typecheck,
)
from .errors import (
    DiagramSyntaxError,
    DimensionLimitError,
    DomainMismatchError,
    EmbeddingError,
    EnumerationLimitError,
    FormatError,
    GameLabError,
    NormalizationError,
    ShapeMismatchError,
    UnboundBoxError,
    UnitarityError,
    UnsupportedDimensionError,
    WireCountError,
)
from .ewl import (
    PD_PAYOFFS,
    ProfileResult,
    QuantumGameSpec,
    StrategicFormGame,
    ewl_entangler,
    ewl_strategy,
    ewl_strategy_grid,
    final_state,
    pareto_optimal,
    payoff_table,
    payoffs,
    pd_quantum,
    play,
    prisoners_dilemma,
    pure_nash,
    quantize,
    to_strategic_form,
)
from .linalg import (
    BUILTIN_GATES,
    LinearMap,
    StateVector,
    born_probabilities,
    compose,
    dagger,
    from_matrix,
    identity,
    ket,
    set_dimension_limit,
    states_phase_equal,
    tensor,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_GATES",
    "BayesianGame",
    "BellExpression",
    "CHSH_PHASES",
    "ClassicalAdvice",
    "ClassicalOptimum",
    "ConditionalDistribution",
    "DiagramSyntaxError",
    "DimensionLimitError",
    "DomainMismatchError",
    "EmbeddingError",
    "EnumerationLimitError",
    "EquilibriumReport",
    "FormatError",
    "GameLabError",
    "LinearMap",
    "MERMIN_SETTINGS",
    "MerminReport",
    "NormalizationError",
    "ObservableStructure",
    "PD_PAYOFFS",
    "PhaseElement",
    "PolytopeVerdict",
    "ProfileResult",
    "QuantumAdvice",
    "QuantumGameSpec",
    "ShapeMismatchError",
    "StateVector",
    "StrategicFormGame",
    "UnboundBoxError",
    "UnitarityError",
    "UnsupportedDimensionError",
    "WireCountError",
    "average_payoff",
    "bell_value",
    "born_probabilities",
    "certify_payoff_inequality",
    "chsh_expression",
    "chsh_game",
    "chsh_quantum_advice",
    "classical_bound",
    "classical_conditional",
    "classical_optimum",
    "classical_points",
    "compose",
    "conditional_of",
    "dagger",
    "equivalence_of_conditionals",
    "evaluate",
    "ewl_entangler",
    "ewl_strategy",
    "ewl_strategy_grid",
    "final_state",
    "from_matrix",
    "ghz_phase_distribution",
    "ghz_state",
    "ghz_state_map",
    "identity",
    "is_advised_equilibrium",
    "ket",
    "measure",
    "mermin_expression",
    "mermin_game",
    "mermin_inequivalence",
    "mermin_quantum_advice",
    "pareto_optimal",
    "parity",
    "parse",
    "payoff_polytope_check",
    "payoff_table",
    "payoffs",
    "pd_quantum",
    "phase_basis",
    "play",
    "pretty",
    "prisoners_dilemma",
    "pure_nash",
    "quantize",
    "quantum_conditional",
    "set_dimension_limit",
    "spider_map",
    "states_phase_equal",
    "tensor",
    "to_strategic_form",
    "typecheck",
]
