"""Boolean networks: update rules, transition matrices and K-map reconstruction."""

from .boolfn import (
    And,
    BoolExpr,
    Const,
    MintermForm,
    Not,
    Or,
    TruthTable,
    Var,
    Xor,
    eval_expr,
    format_expr,
    minterm_form,
    minterm_to_expr,
    parse_expr,
    structure_matrix,
    truth_table,
)
from .minimize import minimize, sop_to_expr
from .network import BooleanNetwork, net_kmap, step, to_matrix, to_matrix_oracle
from .reconstruct import (
    bitplane,
    cheng_reduce,
    dependence_oracle,
    matrix_kmap,
    reconstruct_kmap,
    reconstruct_minimal,
)
from .stp import DenseMatrix, LogicalMatrix, LogicalVector, delta, kron, stp, stp_logical

__version__ = "0.1.0"
