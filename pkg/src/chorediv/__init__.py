"""Fair division of indivisible chores under binary supermodular costs."""

from .algorithms import (add_and_fix, add_and_fix_run, cost_min_partial_alloc, ef1_and_efficient,
                         lorenz_dominating, min_social_cost, minimax_share, minimax_shares,
                         mms_and_efficient, social_cost_min)
from .costs import (Cardinality, CostOracle, CoverageMax, PartitionComplement, Table, Threshold,
                    marginal, validate_binary_marginals, validate_supermodular)
from .fairness import (FairnessWitness, Lorenz, is_beta_efkx, is_ef1, is_efx, is_mms_fair,
                       lorenz_compare, social_cost)
from .instance import Allocation, Instance
from .io import builtin_allocation, builtin_instance, parse_instance, serialize_instance
from .matroid import MatroidView, kfold_union_rank, matroid_partition

__version__ = "0.1.0"
