"""Boolean matrix multiplication reduced to context-free parsing."""
from .bmatrix import BooleanMatrix, four_russians_bmm, matrices_equal, naive_bmm, random_matrix
from .grammar import Grammar, Production, grammar_size, is_cnf, validate_grammar
from .parsing import (
    Chart,
    InputString,
    chart_parse_general,
    cky_parse,
    consistency_filter,
    oracle_query,
    recognizes,
)
from .reduction import (
    ReductionArtifacts,
    ReductionPlan,
    build_grammar,
    build_grammar_cnf,
    build_string,
    decode_index,
    encode_index,
    extract_product,
    multiply_via_parsing,
    plan,
    run_reduction,
)

__version__ = "0.1.0"
