"""Finite well-founded trees over the prefix order: subtree calculus,
partition procedures, approximation systems, and forcing games."""

from .errors import DomainError, MalformedInput
from .trees import (Ordering, SurrogateParams, WfTree, below_front,
                    clears_obstructions, compare, depth, restrict,
                    tree_from_json, tree_to_json, validate_cwt)
from .subtrees import (LeqStarVerdict, SbWitness, af_decide, check_psb,
                       check_sb, filter_member, ideal_member, is_front,
                       leq_star, leq_star_by_fronts, projection)

__version__ = "0.1.0"
