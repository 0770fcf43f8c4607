"""Skew categories of partitions, words in free products of Z2, and their linear maps."""

from .closure import ClosureBounds, ClosureTruncation, classic_closure, member_exact, skew_closure
from .linmap import LinMap, t, t_hat
from .partitions import (
    CAP, CUP, EMPTY, IDENTITY, PRIMARY, Partition, coarsenings, compose, delta, delta_hat, ind,
    involution, ker, rotate, tensor,
)
from .skew import (
    BlockPairing, compatible, conditioned_compose, connected_tensor,
    enumerate_connected_conditioned_compositions, enumerate_connected_tensors, loop_factors,
)
from .words import (
    QuotientOracle, SearchOracle, Verdict, Word, is_strongly_invariant, lift_member, reduce,
    word_of_partition, partition_of_word,
)

__version__ = "0.1.0"
