"""Tensor-train decomposition toolkit.

Dense contraction kernels, TT-tensors with tracked orthogonality, TT-SVD and
rounding, alternating single/double/triple/multi-core update sweeps (dense
and TT-format data), and an experiment layer for signal denoising, patch
image denoising, and single-mixture source separation.
"""

from .core import (
    AccuracyBudget,
    FixedRanks,
    SvdResult,
    fold,
    leading_eig,
    left_contract,
    reshape,
    right_contract,
    train_contract,
    truncated_svd,
    unfold,
)
from .tt import (
    SubTT,
    TTTensor,
    orthogonalize_core,
    orthogonalize_up_to,
    sub_tt,
    tt_full,
    tt_norm,
    tt_rank_sum,
    validate,
)
from .decomp import Tucker2Result, tt_round, tt_svd, tucker2
from .amcu import (
    ContractionCache,
    SweepSchedule,
    adcu,
    amcu,
    ascu_one_side,
    ascu_two_side,
    atcu,
    block_error,
    contract_block,
    init_cores,
    trailing_ranks,
    unit_vector_cores,
)
from .amcu_tt import (
    BoundaryCache,
    amcu_tt,
    boundary_update,
    contract_block_tt,
    reduced_svd_block,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyBudget",
    "FixedRanks",
    "SvdResult",
    "fold",
    "leading_eig",
    "left_contract",
    "reshape",
    "right_contract",
    "train_contract",
    "truncated_svd",
    "unfold",
    "SubTT",
    "TTTensor",
    "orthogonalize_core",
    "orthogonalize_up_to",
    "sub_tt",
    "tt_full",
    "tt_norm",
    "tt_rank_sum",
    "validate",
    "Tucker2Result",
    "tt_round",
    "tt_svd",
    "tucker2",
    "ContractionCache",
    "SweepSchedule",
    "adcu",
    "amcu",
    "ascu_one_side",
    "ascu_two_side",
    "atcu",
    "block_error",
    "contract_block",
    "init_cores",
    "trailing_ranks",
    "unit_vector_cores",
    "BoundaryCache",
    "amcu_tt",
    "boundary_update",
    "contract_block_tt",
    "reduced_svd_block",
    "__version__",
]
